#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "einf/gamma_mod.hpp"
#include "einf/simplicial.hpp"

namespace einf {

// A complex of free modules over the spine: each generator ("shape") sits at
// a height k and stands for a copy of F[k]. A boundary term (target, coef, map)
// contributes coef * F(map) into the target's copy; map -1 is the identity.
struct ShapeTerm {
    int target;
    i64 coef;
    int map;
};

struct ShapeComplex {
    std::map<int, std::vector<int>> height;  // degree -> per shape
    std::map<int, std::vector<int>> level;   // height + width
    std::map<int, std::vector<int>> width;   // trailing isomorphisms
    std::map<int, std::vector<std::vector<ShapeTerm>>> bd;  // degree q -> per shape, into degree q-1
    std::map<int, std::vector<std::string>> label;
    std::vector<FinMap> maps;

    size_t count(int q) const;
    int add_map(const FinMap& f);
};

struct ModuleComplex {
    ChainComplex complex;
    std::map<int, std::vector<std::pair<int, int>>> basis;  // (shape, value index)
    std::map<int, std::vector<int>> level;
    std::map<int, std::vector<int>> height;
};

// chains C_q = sum over shapes of F[height]; right modules enter through their duals
ModuleComplex tensor(const ShapeComplex& s, const Module& f, const Coeff& c);
// cochains Hom(shapes, T) for a right module T, stored as a cochain complex
ChainComplex hom_complex(const ShapeComplex& s, const Module& t, const Coeff& c);

// strict chains of canonical surjections k -> ... -> 1
std::vector<std::vector<FinMap>> strict_canonical_chains(int k);
std::vector<std::vector<FinMap>> top_chains(int k);
std::vector<FinMap> pullback_chain(const std::vector<FinMap>& chain, int k, const FinMap& sigma);

// Chains of non-identity surjections f_1..f_q with f_i : S_i -> S_{i-1}, S_0 = 1.
// with_splitting adds the face that splits S_1 into singletons.
ShapeComplex nerve_shapes(int max_height, int max_degree, bool with_splitting, const std::vector<char>& heights_used);

// The reduced model: (k, strict canonical chain, permutations sigma_1..sigma_r)
// at level k + r and degree m + r.
struct ReducedShape {
    int k = 1;
    std::vector<FinMap> chain;
    std::vector<FinMap> sigma;
    auto operator<=>(const ReducedShape&) const = default;
};

struct ReducedTerm {
    ReducedShape target;
    i64 coef;
    std::optional<FinMap> map;
};

std::vector<ReducedTerm> reduced_boundary(const ReducedShape& g, bool normalized = true, bool splitting = true);
ShapeComplex reduced_shapes(int max_height, int max_level, int max_degree, bool normalized, bool splitting, const std::vector<char>& heights_used);

struct RWComplex {
    ModuleComplex mc;
    bool reduced = false;
    int exact_through = 0;  // homology is exact in degrees <= this
};

RWComplex rw_complex(const Module& f, int deg_max, bool reduced, const Coeff& c);
ChainComplex rw_cochains(const Module& t, int deg_max, const Coeff& c);
FilteredComplex diagonal_filtration(const RWComplex& r);

// two-sided bar complex B(varpi, Omega, L) with S_0 = 1
ChainComplex bar_complex_omega(const Module& l, int deg_max, const Coeff& c);
ModuleComplex bar_module_complex(const Module& l, int deg_max, const Coeff& c);
int superlie_dual_rank(int k);

// S_k*: saturated kernel of the inner faces on top chains, Hermite rows
struct SuperlieDual {
    int k = 1;
    std::vector<std::vector<FinMap>> chains;
    std::map<std::vector<FinMap>, int> index;
    std::vector<std::vector<mpz_class>> basis;

    SigmaRep right_action() const;  // pullback of chains, as a right representation
};

const SuperlieDual& superlie_dual(int k);

// The collapsed E^1 complex: shapes (k, basis index of S_k*, sigma_1..sigma_r)
// in degree k - 1 + r, tensored with F.
struct XiComplex {
    ModuleComplex mc;
    std::map<int, std::vector<std::string>> label;  // per shape
};

XiComplex xi_complex(const Module& f, int n_max, const Coeff& c, bool normalized = false);

std::map<int, AbelianGroupInvariants> stable_pi_all(const Module& f, int n_max, const Coeff& c);
AbelianGroupInvariants stable_pi(const Module& f, int n, const Coeff& c);
std::map<int, AbelianGroupInvariants> stable_pi_co_all(const Module& t, int n_max, const Coeff& c);
AbelianGroupInvariants stable_pi_co(const Module& t, int n, const Coeff& c);
// the same groups through the bar complex of the cross-effect
std::map<int, AbelianGroupInvariants> stable_pi_bar(const Module& f, int n_max, const Coeff& c);
std::map<int, AbelianGroupInvariants> stable_pi_co_bar(const Module& t, int n_max, const Coeff& c);

std::vector<char> heights_with_values(const Module& f);

}  // namespace einf
