#pragma once

#include <Eigen/Dense>

#include <vector>

#include "einf/fincat.hpp"
#include "einf/intlinalg.hpp"

namespace einf {

using IMat = Eigen::Matrix<i64, Eigen::Dynamic, Eigen::Dynamic>;

enum class Side { Left, Right };

// Matrices of the adjacent transpositions s_1..s_{n-1}. A left representation
// multiplies along a word, a right one along the reversed word.
struct SigmaRep {
    int n = 0;
    int rank = 0;
    Side side = Side::Left;
    std::vector<IMat> gens;

    SigmaRep() = default;
    SigmaRep(int n, int rank, Side side, std::vector<IMat> gens, bool check = true);

    void validate() const;
    IMat element(const FinMap& perm) const;
};

SigmaRep trivial_rep(int n, int rank = 1, Side side = Side::Left);
SigmaRep sign_rep(int n, Side side = Side::Left);
SigmaRep regular_rep(int n, Side side = Side::Left);
// permutation action on 1..n
SigmaRep natural_rep(int n, Side side = Side::Left);
SigmaRep zero_rep(int n, Side side = Side::Left);
SigmaRep dual(const SigmaRep& r);
SigmaRep with_side(SigmaRep r, Side s);
SigmaRep direct_sum(const SigmaRep& a, const SigmaRep& b);

// Top reduced homology of the nerve of non-trivial partitions with the
// relabelling action, on a Hermite basis of the cycle lattice.
SigmaRep superlie(int n);

// conjugacy classes by cycle type, identity first
std::vector<std::vector<int>> cycle_types(int n);
FinMap class_representative(const std::vector<int>& type);
std::vector<i64> character(const SigmaRep& r);
std::vector<i64> regular_character(int n, i64 multiplicity = 1);

SigmaRep restrict_rep(const SigmaRep& r, int m);
SigmaRep induce(const SigmaRep& m, int n);

std::vector<AbelianGroupInvariants> tor_sigma(const SigmaRep& a, const SigmaRep& b, int q_max, const Coeff& c = Coeff::Z());
std::vector<AbelianGroupInvariants> ext_sigma(const SigmaRep& a, const SigmaRep& b, int q_max, const Coeff& c = Coeff::Z());
ChainComplex tor_complex(const SigmaRep& a, const SigmaRep& b, int q_max, const Coeff& c = Coeff::Z(), bool normalized = true);

}  // namespace einf
