#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "einf/stable.hpp"

namespace einf {

// One page of a spectral sequence. Pages of filtered complexes are computed
// at the level of dimensions (free ranks); e2 tables carry full groups.
struct SpectralPage {
    int r = 0;
    std::map<std::pair<int, int>, AbelianGroupInvariants> table;
    std::vector<std::pair<int, int>> fringe;  // flagged positions
    std::string convention;

    i64 rank_at(int p, int q) const;
    std::vector<std::pair<int, int>> support() const;
};

// E^r of the filtration by basis levels, indexed (p, n) = (level, total degree).
// r < 0 gives E^infinity. Ranks are over the complex's field (over Q for Z).
std::map<std::pair<int, int>, i64> page_dims(const FilteredComplex& fc, int r, int n_max);

struct BicomplexResult {
    std::vector<SpectralPage> pages;  // E^1 .. E^page_max, indexed (s, t)
    std::map<std::pair<int, int>, i64> tor_dims;  // Tor_t^{Sigma_{s+1}}(S*_{s+1}, cr F(s+1))
    std::map<int, i64> abutment;  // homology ranks by total degree
    bool tor_matches = true;      // first page against tor_dims
};

// The bar complex of cr F filtered by s + 1 = the source of the last
// non-isomorphism. Each column carries both bicomplex directions, so the
// first page of this filtration is already the Tor term.
BicomplexResult bicomplex_ss(const Module& f, int page_max, int window, const Coeff& c);

struct CollapseReport {
    bool e1_on_line = true;
    bool e2_is_einf = true;
    bool abutment_matches = true;
    std::map<std::pair<int, int>, i64> e1, e2, einf;  // (p, n)
    std::vector<std::string> findings;

    bool pass() const { return e1_on_line && e2_is_einf && abutment_matches; }
};

CollapseReport diagonal_collapse_check(const Module& f, int window, const Coeff& c);

// E_2^{p,q} = pi^{p-1} pi_{q-2} C for 1 <= p <= p_max, 2 <= q <= q_max
SpectralPage e2_table(const GradedModule& c, int p_max, int q_max, const Coeff& coeff);

struct ObstructionReport {
    std::map<int, AbelianGroupInvariants> existence;   // n >= 3: pi^n pi_{n-2} C
    std::map<int, AbelianGroupInvariants> uniqueness;  // n >= 2: pi^n pi_{n-1} C
    std::string existence_verdict;
    std::string uniqueness_verdict;
    bool finite = false;
    std::vector<int> candidates;  // n with a nonzero existence group
    Coeff coeff;
};

ObstructionReport obstruction_groups(const GradedModule& c, int n_max, const Coeff& coeff);
bool convergence_finiteness(const GradedModule& c);

}  // namespace einf
