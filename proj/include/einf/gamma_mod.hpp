#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "einf/fincat.hpp"
#include "einf/intlinalg.hpp"
#include "einf/sigma_rep.hpp"

namespace einf {

enum class Spine { Gamma, Omega };
enum class Variance { Left, Right };

// A functor on the spine up to degree N, given by generator matrices.
// Left: F(phi) is rank(tgt) x rank(src). Right: T(phi) is rank(src) x rank(tgt).
// Omega modules carry only perm and omega.
struct Module {
    Spine spine = Spine::Gamma;
    Variance variance = Variance::Left;
    Coeff coeff = Coeff::Z();
    int N = 0;
    std::vector<int> ranks;                   // degrees 0..N
    std::vector<std::vector<IMat>> perm;      // perm[n][i-1] = s_i on degree n
    std::vector<IMat> lambda, omega, tau;     // indexed by the generator's n
    std::function<SparseMatrix(const FinMap&)> direct;  // optional closed form
    std::string name;

    int rank(int n) const { return n >= 0 && n <= N ? ranks[n] : 0; }
    // evaluation along the generator word, or the closed form when present
    const SparseMatrix& eval(const FinMap& phi) const;
    IMat eval_dense(const FinMap& phi) const;
    IMat eval_word(const FinMap& phi) const;  // always from the generator matrices

    void fill_generators();  // from direct
    void check_shapes() const;

    struct Cache {
        std::mutex mu;
        std::unordered_map<FinMap, std::unique_ptr<SparseMatrix>, FinMapHash> table;
    };
    std::shared_ptr<Cache> cache = std::make_shared<Cache>();
};

IMat to_imat(const SparseMatrix& m);
SparseMatrix to_sparse(const IMat& m);

Module make_module(Spine spine, Variance v, Coeff c, std::vector<int> ranks, std::vector<std::vector<IMat>> perm, std::vector<IMat> lambda, std::vector<IMat> omega, std::vector<IMat> tau, std::string name = "");
Module module_from_direct(Spine spine, Variance v, Coeff c, int N, std::vector<int> ranks, std::function<SparseMatrix(const FinMap&)> f, std::string name);

Module zero_module(Spine spine, Variance v, int N, Coeff c = Coeff::Z());
// transposed matrices, opposite variance
Module dual_module(const Module& m);
// the same functor with values above degree n replaced by zero; only valid
// on maps that do not raise cardinality
Module truncate_height(const Module& m, int n);
Module restrict_degree(const Module& m, int N);
Module direct_sum(const Module& a, const Module& b);
// new bases in each degree: F'(phi) = B_tgt F(phi) B_src^{-1}
Module change_basis(const Module& m, const std::vector<IMat>& b, const std::vector<IMat>& b_inv);

struct FunctorialityReport {
    bool ok = true;
    i64 checked = 0;
    std::string failure;  // first mismatch, naming the generator
};

FunctorialityReport validate_functoriality(const Module& m);

// Cross-effect: left modules take the joint kernel of F(r_a), right modules
// the cokernel of the sum of T(r_a). basis[k] holds the chosen basis of cr F[k]
// inside F[k] (left) or the projection F[k] -> cr F[k] (right).
struct CrossEffect {
    Module module;
    std::vector<std::vector<std::vector<mpz_class>>> basis;
};

CrossEffect cross_effect_with_basis(const Module& f);
Module cross_effect(const Module& f);

// the Gamma module with value the sum over subsets X of L(|X|)
Module sharp(const Module& l, std::optional<int> N = std::nullopt);
// position of the (X, j) basis vector of sharp(L)[n]
int sharp_index(const Module& l, int n, const std::vector<int>& X, int j);
// theta: L[n] -> sharp(L)[n] (left) or sharp(L)[n] -> L[n] (right), component X = n
std::vector<IMat> theta(const Module& l);
// sharp(cr F)[n] -> F[n], (X, j) -> F(i_X) b_j
std::vector<IMat> sharp_cross_iso(const Module& f);

Module module_t(int N, Coeff c = Coeff::Z());
Module module_varpi(int N, Coeff c = Coeff::Z());
// K Gamma([m], -), a left module
Module representable(int m, int N, Coeff c = Coeff::Z());
// Omega module concentrated in degree n
Module concentrated(int n, const SigmaRep& rep, int N, Coeff c = Coeff::Z());
// sharp of the Omega module concentrated in degree n with value M or Ind M
Module one_line_module(int n, const SigmaRep& m, bool induced, int N, Variance v = Variance::Left, Coeff c = Coeff::Z());
// Omega module K{surjections n -> m} for m >= a, zero below a
Module truncated_representable(int n, int a, int N, Coeff c = Coeff::Z());

struct GradedModule {
    std::vector<std::pair<int, Module>> members;  // (internal degree, right Gamma module)

    const Module* at(int j) const;
};

// Associative commutative unital ring on K^r: mult[i][j] = coordinates of e_i e_j.
struct RingTable {
    int rank = 0;
    std::vector<std::vector<std::vector<i64>>> mult;
    std::vector<i64> unit;
};

void check_ring(const RingTable& r);
// right module Hom(R^{(k+1)}, K): the dual of the Loday functor with coefficients in R
Module loday_dual(const RingTable& r, int N, Coeff c = Coeff::Z());
GradedModule loday_module(const RingTable& r, int N, const std::vector<int>& internal_degrees, Coeff c = Coeff::Z());
RingTable ring_integers();
RingTable ring_product(int copies);
RingTable ring_dual_numbers();  // K[x]/(x^2)

}  // namespace einf
