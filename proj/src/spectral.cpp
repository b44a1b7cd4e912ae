#include "einf/spectral.hpp"

#include <algorithm>
#include <climits>

namespace einf {

i64 SpectralPage::rank_at(int p, int q) const
{
    auto it = table.find({p, q});
    return it == table.end() ? 0 : it->second.free_rank;
}

std::vector<std::pair<int, int>> SpectralPage::support() const
{
    std::vector<std::pair<int, int>> out;
    for (auto& [pq, g] : table)
        if (!g.is_zero())
            out.push_back(pq);
    return out;
}

namespace {

// ranks of boundary blocks: rows with level > a, columns with level <= b
class BlockRanks {
public:
    explicit BlockRanks(const FilteredComplex& fc) : fc_(fc) {}

    i64 operator()(int n, int a, int b)
    {
        auto key = std::make_tuple(n, a, b);
        auto it = cache_.find(key);
        if (it != cache_.end())
            return it->second;
        i64 r = 0;
        auto dit = fc_.complex.d.find(n);
        if (dit != fc_.complex.d.end() && fc_.level.count(n) && fc_.level.count(n - 1)) {
            std::vector<int> rows, cols;
            const auto& lr = fc_.level.at(n - 1);
            const auto& lc = fc_.level.at(n);
            for (size_t i = 0; i < lr.size(); ++i)
                if (lr[i] > a)
                    rows.push_back(int(i));
            for (size_t j = 0; j < lc.size(); ++j)
                if (lc[j] <= b)
                    cols.push_back(int(j));
            if (!rows.empty() && !cols.empty()) {
                Coeff c = fc_.complex.coeff.ring == Ring::Z ? Coeff::Q() : fc_.complex.coeff;
                r = rank(submatrix(dit->second, rows, cols), c);
            }
        }
        cache_[key] = r;
        return r;
    }

    i64 filtered_dim(int n, int p) const
    {
        auto it = fc_.level.find(n);
        if (it == fc_.level.end())
            return 0;
        return std::count_if(it->second.begin(), it->second.end(), [&](int l) { return l <= p; });
    }

private:
    const FilteredComplex& fc_;
    std::map<std::tuple<int, int, int>, i64> cache_;
};

}  // namespace

std::map<std::pair<int, int>, i64> page_dims(const FilteredComplex& fc, int r, int n_max)
{
    int lo = INT_MAX, hi = INT_MIN;
    for (auto& [n, lv] : fc.level)
        for (int l : lv) {
            lo = std::min(lo, l);
            hi = std::max(hi, l);
        }
    std::map<std::pair<int, int>, i64> out;
    if (lo > hi)
        return out;
    if (r < 0)
        r = hi - lo + 2;
    BlockRanks R(fc);
    const int none = lo - 1 - r;
    // Z^r_p = F_p minus rank of the part landing above p - r
    auto Z = [&](int s, int p, int n) { return R.filtered_dim(n, p) - R(n, p - s, p); };
    // B^s_p = F_p intersected with d(F_{p+s})
    auto B = [&](int s, int p, int n) { return R(n + 1, none, p + s) - R(n + 1, p, p + s); };
    for (auto& [n, lv] : fc.level) {
        if (n > n_max)
            continue;
        for (int p = lo; p <= hi; ++p) {
            i64 e = r == 0 ? R.filtered_dim(n, p) - R.filtered_dim(n, p - 1) : Z(r, p, n) - Z(r - 1, p - 1, n) - B(r - 1, p, n) + B(r, p - 1, n);
            if (e)
                out[{p, n}] = e;
        }
    }
    return out;
}

BicomplexResult bicomplex_ss(const Module& f, int page_max, int window, const Coeff& c)
{
    if (f.variance != Variance::Left || f.spine != Spine::Gamma)
        fail("the bicomplex sequence takes a left Gamma module");
    if (f.N < window + 2)
        insufficient("window " + std::to_string(window) + " needs module degree " + std::to_string(window + 2) + ", the module stops at " + std::to_string(f.N));
    Module l = cross_effect(f);
    ModuleComplex mc = bar_module_complex(l, window, c);
    FilteredComplex fc{mc.complex, {}};
    for (auto& [n, hs] : mc.height)
        for (int h : hs)
            fc.level[n].push_back(h - 1);
    BicomplexResult out;
    for (int r = 1; r <= page_max; ++r) {
        SpectralPage pg;
        pg.r = r;
        pg.convention = "(s, t), total degree s + t, d_r: E^r_{s,t} -> E^r_{s-r,t+r-1}";
        for (auto& [pn, v] : page_dims(fc, r, window))
            pg.table[{pn.first, pn.second - pn.first}].free_rank = v;
        out.pages.push_back(pg);
    }
    for (auto& [pn, v] : page_dims(fc, -1, window))
        out.abutment[pn.second] += v;
    Coeff field = c.ring == Ring::Z ? Coeff::Q() : c;
    for (int k = 1; k <= window + 1; ++k) {
        int s = k - 1;
        if (l.rank(k) == 0)
            continue;
        SigmaRep lk = k >= 2 ? SigmaRep(k, l.rank(k), Side::Left, l.perm[k]) : trivial_rep(1, l.rank(1));
        SigmaRep sk = k >= 2 ? superlie_dual(k).right_action() : trivial_rep(1, 1, Side::Right);
        auto tor = tor_sigma(sk, lk, window - s, field);
        for (int t = 0; t <= window - s; ++t)
            if (tor[t].free_rank)
                out.tor_dims[{s, t}] = tor[t].free_rank;
    }
    if (page_max >= 1) {
        std::map<std::pair<int, int>, i64> got;
        for (auto& [st, g] : out.pages[0].table)
            if (st.first + st.second <= window && g.free_rank)
                got[st] = g.free_rank;
        out.tor_matches = got == out.tor_dims;
    }
    return out;
}

CollapseReport diagonal_collapse_check(const Module& f, int window, const Coeff& c)
{
    CollapseReport rep;
    if (f.variance == Variance::Right) {
        // the cochain complex is the transpose; page ranks over a field agree
        return diagonal_collapse_check(dual_module(f), window, c);
    }
    RWComplex rw = rw_complex(f, window, true, c);
    FilteredComplex fc = diagonal_filtration(rw);
    rep.e1 = page_dims(fc, 1, window);
    rep.e2 = page_dims(fc, 2, window);
    rep.einf = page_dims(fc, -1, window);
    for (auto& [pn, v] : rep.e1)
        if (pn.second != pn.first - 1) {
            rep.e1_on_line = false;
            rep.findings.push_back("E1 at level " + std::to_string(pn.first) + ", degree " + std::to_string(pn.second) + " has rank " + std::to_string(v));
        }
    if (rep.e2 != rep.einf) {
        rep.e2_is_einf = false;
        rep.findings.push_back("E2 and E-infinity differ");
    }
    auto pi = stable_pi_all(f, window, c.ring == Ring::Z ? Coeff::Q() : c);
    for (int n = 0; n <= window; ++n) {
        i64 tot = 0;
        for (auto& [pn, v] : rep.e2)
            if (pn.second == n)
                tot += v;
        if (tot != pi[n].free_rank) {
            rep.abutment_matches = false;
            rep.findings.push_back("degree " + std::to_string(n) + ": E2 total " + std::to_string(tot) + " against stable homotopy rank " + std::to_string(pi[n].free_rank));
        }
    }
    return rep;
}

namespace {

const Module* member_with_degree(const GradedModule& c, int j, int need)
{
    const Module* m = c.at(j);
    if (!m)
        return nullptr;
    bool zero = std::all_of(m->ranks.begin(), m->ranks.end(), [](int r) { return r == 0; });
    if (zero)
        return nullptr;
    if (m->variance != Variance::Right)
        fail("member at internal degree " + std::to_string(j) + " must be a right module");
    if (m->N < need)
        insufficient("member at internal degree " + std::to_string(j) + " is given up to degree " + std::to_string(m->N) + ", needs " + std::to_string(need));
    return m;
}

}  // namespace

SpectralPage e2_table(const GradedModule& c, int p_max, int q_max, const Coeff& coeff)
{
    SpectralPage pg;
    pg.r = 2;
    pg.convention = "(p, q) = pi^{p-1} pi_{q-2} C, d_r: E_r^{p,q} -> E_r^{p+r,q+r-1}";
    for (int q = 2; q <= q_max; ++q) {
        const Module* m = member_with_degree(c, q - 2, p_max + 1);
        std::map<int, AbelianGroupInvariants> co;
        if (m && p_max >= 1)
            co = stable_pi_co_all(*m, p_max - 1, coeff);
        for (int p = 1; p <= p_max; ++p) {
            pg.table[{p, q}] = m ? co[p - 1] : AbelianGroupInvariants{};
            if (p == q)
                pg.fringe.emplace_back(p, q);
        }
    }
    return pg;
}

bool convergence_finiteness(const GradedModule& c)
{
    for (auto& [j, m] : c.members) {
        if (m.coeff.ring == Ring::Fp)
            continue;
        if (std::any_of(m.ranks.begin(), m.ranks.end(), [](int r) { return r != 0; }))
            return false;
    }
    return true;
}

ObstructionReport obstruction_groups(const GradedModule& c, int n_max, const Coeff& coeff)
{
    ObstructionReport rep;
    rep.coeff = coeff;
    std::map<int, int> top;  // internal degree -> highest cohomotopy degree needed
    for (int n = 3; n <= n_max; ++n)
        top[n - 2] = std::max(top[n - 2], n);
    for (int n = 2; n <= n_max; ++n)
        top[n - 1] = std::max(top[n - 1], n);
    std::map<int, std::map<int, AbelianGroupInvariants>> co;
    for (auto& [j, deg] : top) {
        const Module* m = member_with_degree(c, j, deg + 2);
        if (m)
            co[j] = stable_pi_co_all(*m, deg, coeff);
    }
    auto group = [&](int j, int n) {
        auto it = co.find(j);
        return it == co.end() ? AbelianGroupInvariants{} : it->second[n];
    };
    for (int n = 3; n <= n_max; ++n) {
        rep.existence[n] = group(n - 2, n);
        if (!rep.existence[n].is_zero())
            rep.candidates.push_back(n);
    }
    bool unique_groups = true;
    for (int n = 2; n <= n_max; ++n) {
        rep.uniqueness[n] = group(n - 1, n);
        unique_groups = unique_groups && rep.uniqueness[n].is_zero();
    }
    rep.finite = convergence_finiteness(c);
    if (rep.candidates.empty())
        rep.existence_verdict = "unobstructed";
    else {
        std::string s = "potential obstruction at n =";
        for (int n : rep.candidates)
            s += " " + std::to_string(n);
        rep.existence_verdict = s;
    }
    if (!unique_groups)
        rep.uniqueness_verdict = "not determined by primary obstructions";
    else
        rep.uniqueness_verdict = rep.finite ? "unique" : "inconclusive";
    return rep;
}

}  // namespace einf
