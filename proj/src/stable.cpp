#include "einf/stable.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "einf/parallel.hpp"

namespace einf {

size_t ShapeComplex::count(int q) const
{
    auto it = height.find(q);
    return it == height.end() ? 0 : it->second.size();
}

int ShapeComplex::add_map(const FinMap& f)
{
    for (size_t i = 0; i < maps.size(); ++i)
        if (maps[i] == f)
            return int(i);
    maps.push_back(f);
    return int(maps.size()) - 1;
}

namespace {

using Chain = std::vector<FinMap>;

std::string chain_key(const Chain& ch)
{
    std::string s;
    for (auto& f : ch) {
        s.push_back(char(f.src));
        for (int v : f.img)
            s.push_back(char(v));
    }
    return s;
}

// map table with hashed lookup; ShapeComplex::add_map is linear
struct MapTable {
    ShapeComplex* s;
    std::unordered_map<FinMap, int, FinMapHash> idx;

    int operator()(const FinMap& f)
    {
        if (is_identity(f))
            return -1;
        auto it = idx.find(f);
        if (it != idx.end())
            return it->second;
        s->maps.push_back(f);
        int id = int(s->maps.size()) - 1;
        idx.emplace(f, id);
        return id;
    }
};

i64 sgn(int e) { return e % 2 ? -1 : 1; }

int chain_top(const Chain& ch) { return ch.empty() ? 1 : ch.back().src; }

struct Face0 {
    Chain arrows;
    FinMap rs;
    int size;
};

// restriction of the chain to the fibre over each point of S_1
std::vector<Face0> face0(const Chain& ch)
{
    std::vector<Face0> out;
    int q = int(ch.size());
    int s1 = ch[0].src;
    for (int s = 1; s <= s1; ++s) {
        std::vector<std::vector<int>> pre(q + 1);
        pre[1] = {s};
        for (int j = 2; j <= q; ++j) {
            const FinMap& f = ch[j - 1];
            for (int x = 1; x <= f.src; ++x)
                if (std::binary_search(pre[j - 1].begin(), pre[j - 1].end(), f(x)))
                    pre[j].push_back(x);
        }
        Face0 r;
        for (int j = 2; j <= q; ++j) {
            const FinMap& f = ch[j - 1];
            std::vector<int> img;
            for (int x : pre[j])
                img.push_back(int(std::lower_bound(pre[j - 1].begin(), pre[j - 1].end(), f(x)) - pre[j - 1].begin()) + 1);
            r.arrows.push_back(make_map(int(pre[j].size()), int(pre[j - 1].size()), img));
        }
        const auto& top = pre[q];
        std::vector<int> img(ch.back().src, 0);
        for (size_t i = 0; i < top.size(); ++i)
            img[top[i] - 1] = int(i) + 1;
        r.size = int(top.size());
        r.rs = make_map(ch.back().src, r.size, img);
        out.push_back(std::move(r));
    }
    return out;
}

const std::vector<FinMap>& nonidentity_surjections(int n, int m)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<FinMap>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& v = cache[{n, m}];
    if (v.empty())
        for (auto& f : enumerate_surjections(n, m))
            if (!is_identity(f))
                v.push_back(f);
    return v;
}

const std::vector<FinMap>& permutations_of(int k, bool with_identity)
{
    static std::mutex mu;
    static std::map<std::pair<int, bool>, std::vector<FinMap>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& v = cache[{k, with_identity}];
    if (v.empty())
        for (auto& p : enumerate_permutations(k))
            if (with_identity || !is_identity(p))
                v.push_back(p);
    return v;
}

void sigma_tuples(int k, int r, bool with_identity, const std::function<void(const Chain&)>& fn)
{
    const auto& ps = permutations_of(k, with_identity);
    Chain cur;
    std::function<void()> rec = [&] {
        if (int(cur.size()) == r) {
            fn(cur);
            return;
        }
        for (auto& p : ps) {
            cur.push_back(p);
            rec();
            cur.pop_back();
        }
    };
    rec();
}

std::string show_chain(const Chain& ch)
{
    std::string s = "(";
    for (size_t i = 0; i < ch.size(); ++i)
        s += (i ? "," : "") + to_string(ch[i]);
    return s + ")";
}

void check_heights(const Module& f, int h)
{
    if (f.N < h)
        insufficient("module is given up to degree " + std::to_string(f.N) + ", the computation needs degree " + std::to_string(h));
}

}  // namespace

std::vector<char> heights_with_values(const Module& f)
{
    std::vector<char> h(f.N + 1, 0);
    for (int n = 0; n <= f.N; ++n)
        h[n] = f.rank(n) > 0;
    return h;
}

// ---------------------------------------------------------------- tensoring

ModuleComplex tensor(const ShapeComplex& s, const Module& f, const Coeff& c)
{
    if (f.variance != Variance::Left)
        fail("chains take a left module; dualize a right module first");
    ModuleComplex out;
    std::map<int, std::vector<i64>> offset;
    std::map<int, i64> dims;
    for (auto& [q, hs] : s.height) {
        auto& off = offset[q];
        i64 tot = 0;
        for (size_t i = 0; i < hs.size(); ++i) {
            off.push_back(tot);
            int r = f.rank(hs[i]);
            for (int x = 0; x < r; ++x) {
                out.basis[q].emplace_back(int(i), x);
                out.level[q].push_back(s.level.at(q)[i]);
                out.height[q].push_back(hs[i]);
            }
            tot += r;
        }
        dims[q] = tot;
    }
    std::vector<const SparseMatrix*> mats;
    for (auto& m : s.maps)
        mats.push_back(&f.eval(m));
    std::map<int, SparseMatrix> d;
    for (auto& [q, bd] : s.bd) {
        if (!dims.count(q - 1) || dims[q] == 0 || dims[q - 1] == 0)
            continue;
        const auto& hs = s.height.at(q);
        const auto& off = offset[q - 1];
        int nt = thread_count();
        std::vector<SparseMatrix> parts(std::max(1, nt));
        std::vector<std::pair<long, long>> ranges(parts.size(), {0, 0});
        parallel_chunks(long(hs.size()), [&](long b, long e, int w) {
            SparseMatrix part(static_cast<int>(dims[q - 1]), 0);
            for (long i = b; i < e; ++i) {
                int r = f.rank(hs[i]);
                for (int x = 0; x < r; ++x) {
                    SparseVec col;
                    for (auto& t : bd[i]) {
                        if (t.map < 0) {
                            col.emplace_back(int(off[t.target] + x), t.coef);
                            continue;
                        }
                        const SparseMatrix& m = *mats[t.map];
                        for (i64 p = m.colptr[x]; p < m.colptr[x + 1]; ++p)
                            col.emplace_back(int(off[t.target] + m.rowind[p]), t.coef * m.val[p]);
                    }
                    if (c.ring == Ring::Fp)
                        for (auto& [rr, v] : col)
                            v %= c.p;
                    part.append_column(std::move(col));
                }
            }
            parts[w] = std::move(part);
            ranges[w] = {b, e};
        });
        std::vector<int> order;
        for (size_t w = 0; w < parts.size(); ++w)
            if (ranges[w].second > ranges[w].first)
                order.push_back(int(w));
        std::sort(order.begin(), order.end(), [&](int a, int b) { return ranges[a].first < ranges[b].first; });
        SparseMatrix m(static_cast<int>(dims[q - 1]), 0);
        for (int w : order)
            m.append_columns(parts[w]);
        d[q] = std::move(m);
    }
    i64 total = 0;
    for (auto& [q, n] : dims)
        total += n;
    out.complex = ChainComplex(c, dims, std::move(d), total < 20000);
    return out;
}

ChainComplex hom_complex(const ShapeComplex& s, const Module& t, const Coeff& c)
{
    if (t.variance != Variance::Right)
        fail("cochains take a right module");
    ModuleComplex mc = tensor(s, dual_module(t), c);
    std::map<int, SparseMatrix> delta;
    for (auto& [q, m] : mc.complex.d)
        delta[q - 1] = transpose(m);
    return make_cochain_complex(c, mc.complex.dims, std::move(delta), false);
}

// ---------------------------------------------------------------- chains

std::vector<std::vector<FinMap>> strict_canonical_chains(int k)
{
    static std::mutex mu;
    static std::map<int, std::vector<Chain>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end())
        return it->second;
    std::vector<Chain> out;
    std::function<void(int, Chain)> rec = [&](int top, Chain suffix) {
        if (top == 1) {
            out.push_back(suffix);
            return;
        }
        for (auto& c : enumerate_set_partitions(top)) {
            if (c.tgt == top)
                continue;
            Chain next{c};
            next.insert(next.end(), suffix.begin(), suffix.end());
            rec(c.tgt, next);
        }
    };
    rec(k, {});
    cache[k] = out;
    return out;
}

std::vector<std::vector<FinMap>> top_chains(int k)
{
    std::vector<Chain> out;
    for (auto& ch : strict_canonical_chains(k))
        if (int(ch.size()) == k - 1)
            out.push_back(ch);
    return out;
}

namespace {

// composites k -> S_j
std::vector<FinMap> composites(const Chain& ch, int k)
{
    int m = int(ch.size());
    std::vector<FinMap> comps(m + 1);
    comps[m] = identity_map(k);
    for (int j = m; j >= 1; --j)
        comps[j - 1] = compose(ch[j - 1], comps[j]);
    return comps;
}

Chain canonical_chain_from_composites(const std::vector<FinMap>& comps)
{
    int m = int(comps.size()) - 1;
    std::vector<std::vector<int>> labels;
    for (auto& c : comps) {
        std::vector<int> lab(c.tgt + 1, 0), out;
        int next = 0;
        for (int v : c.img) {
            if (!lab[v])
                lab[v] = ++next;
            out.push_back(lab[v]);
        }
        labels.push_back(out);
    }
    Chain arrows;
    for (int j = 1; j <= m; ++j) {
        int sz = *std::max_element(labels[j].begin(), labels[j].end());
        int tz = *std::max_element(labels[j - 1].begin(), labels[j - 1].end());
        std::vector<int> img(sz, 0);
        for (size_t x = 0; x < labels[j].size(); ++x)
            img[labels[j][x] - 1] = labels[j - 1][x];
        arrows.push_back(make_map(sz, tz, img));
    }
    return arrows;
}

}  // namespace

std::vector<FinMap> pullback_chain(const std::vector<FinMap>& chain, int k, const FinMap& sigma)
{
    auto comps = composites(chain, k);
    for (auto& c : comps)
        c = compose(c, sigma);
    return canonical_chain_from_composites(comps);
}

ShapeComplex nerve_shapes(int max_height, int max_degree, bool with_splitting, const std::vector<char>& heights_used)
{
    auto used = [&](int h) { return h < int(heights_used.size()) && heights_used[h]; };
    ShapeComplex s;
    std::map<int, std::vector<Chain>> chains;
    Chain cur;
    std::function<void(int)> rec = [&](int size) {
        int q = int(cur.size());
        if (used(size))
            chains[q].push_back(cur);
        if (q == max_degree)
            return;
        for (int t = std::max(size, q == 0 ? 2 : size); t <= max_height; ++t)
            for (auto& f : nonidentity_surjections(t, size)) {
                cur.push_back(f);
                rec(t);
                cur.pop_back();
            }
    };
    rec(1);
    std::map<int, std::unordered_map<std::string, int>> index;
    for (int q = 0; q <= max_degree; ++q) {
        auto& hs = s.height[q];
        auto& lv = s.level[q];
        auto& wd = s.width[q];
        for (auto& ch : chains[q]) {
            index[q].emplace(chain_key(ch), int(hs.size()));
            int w = 0;
            while (w < q && is_bijection(ch[q - 1 - w]))
                ++w;
            hs.push_back(chain_top(ch));
            wd.push_back(w);
            lv.push_back(chain_top(ch) + w);
        }
    }
    MapTable table{&s, {}};
    for (int q = 1; q <= max_degree; ++q) {
        auto& bd = s.bd[q];
        const auto& idx = index[q - 1];
        auto find = [&](const Chain& ch) -> int {
            auto it = idx.find(chain_key(ch));
            if (it != idx.end())
                return it->second;
            if (used(chain_top(ch)))
                internal_fail("face " + show_chain(ch) + " is missing from the chain table");
            return -1;
        };
        for (auto& ch : chains[q]) {
            std::vector<ShapeTerm> terms;
            if (with_splitting)
                for (auto& f0 : face0(ch)) {
                    if (std::any_of(f0.arrows.begin(), f0.arrows.end(), is_identity))
                        continue;
                    int t = find(f0.arrows);
                    if (t >= 0)
                        terms.push_back({t, 1, table(f0.rs)});
                }
            for (size_t i = 1; i < ch.size(); ++i) {
                FinMap g = compose(ch[i - 1], ch[i]);
                if (is_identity(g))
                    continue;
                Chain nc(ch.begin(), ch.begin() + i - 1);
                nc.push_back(g);
                nc.insert(nc.end(), ch.begin() + i + 1, ch.end());
                int t = find(nc);
                if (t >= 0)
                    terms.push_back({t, sgn(int(i)), -1});
            }
            Chain nc(ch.begin(), ch.end() - 1);
            int t = find(nc);
            if (t >= 0)
                terms.push_back({t, sgn(q), table(ch.back())});
            bd.push_back(std::move(terms));
        }
    }
    return s;
}

// ---------------------------------------------------------------- reduced model

std::vector<ReducedTerm> reduced_boundary(const ReducedShape& g, bool normalized, bool splitting)
{
    std::vector<ReducedTerm> out;
    int k = g.k;
    const Chain& ch = g.chain;
    const Chain& sig = g.sigma;
    int m = int(ch.size()), r = int(sig.size());
    if (m >= 1 && splitting) {
        Chain all = ch;
        all.insert(all.end(), sig.begin(), sig.end());
        for (auto& f0 : face0(all)) {
            Chain nc(f0.arrows.begin(), f0.arrows.begin() + (m - 1));
            Chain ns(f0.arrows.begin() + (m - 1), f0.arrows.end());
            if (std::any_of(nc.begin(), nc.end(), is_identity))
                continue;
            if (normalized && std::any_of(ns.begin(), ns.end(), is_identity))
                continue;
            if (nc.empty() && f0.size != 1)
                continue;
            out.push_back({ReducedShape{f0.size, nc, ns}, 1, f0.rs});
        }
    }
    for (int i = 1; i < m; ++i) {
        Chain nc(ch.begin(), ch.begin() + i - 1);
        nc.push_back(compose(ch[i - 1], ch[i]));
        nc.insert(nc.end(), ch.begin() + i + 1, ch.end());
        out.push_back({ReducedShape{k, nc, sig}, sgn(i), std::nullopt});
    }
    if (m >= 1) {
        std::vector<Chain> rows{ch};
        for (auto& s : sig)
            rows.push_back(pullback_chain(rows.back(), k, s));
        Chain betas;
        for (int j = 0; j < r; ++j) {
            const FinMap& cprev = rows[j].back();
            const FinMap& ccur = rows[j + 1].back();
            std::vector<int> beta(ccur.tgt, 0);
            for (int e = 1; e <= k; ++e)
                beta[ccur(e) - 1] = cprev(sig[j](e));
            betas.push_back(make_map(ccur.tgt, ccur.tgt, beta));
        }
        if (!normalized || !std::any_of(betas.begin(), betas.end(), is_identity)) {
            Chain nc(ch.begin(), ch.end() - 1);
            out.push_back({ReducedShape{ch.back().tgt, nc, betas}, sgn(m), rows.back().back()});
        }
    }
    if (r >= 1) {
        i64 e = sgn(m);
        out.push_back({ReducedShape{k, pullback_chain(ch, k, sig[0]), Chain(sig.begin() + 1, sig.end())}, e, std::nullopt});
        for (int j = 1; j < r; ++j) {
            FinMap t = compose(sig[j - 1], sig[j]);
            if (normalized && is_identity(t))
                continue;
            Chain ns(sig.begin(), sig.begin() + j - 1);
            ns.push_back(t);
            ns.insert(ns.end(), sig.begin() + j + 1, sig.end());
            out.push_back({ReducedShape{k, ch, ns}, e * sgn(j), std::nullopt});
        }
        out.push_back({ReducedShape{k, ch, Chain(sig.begin(), sig.end() - 1)}, e * sgn(r), sig.back()});
    }
    return out;
}

namespace {

std::string shape_key(const ReducedShape& g)
{
    std::string s(1, char(g.k));
    s += chain_key(g.chain);
    s.push_back('|');
    s += chain_key(g.sigma);
    return s;
}

std::string show_shape(const ReducedShape& g)
{
    return "k=" + std::to_string(g.k) + " " + show_chain(g.chain) + " | " + show_chain(g.sigma);
}

}  // namespace

ShapeComplex reduced_shapes(int max_height, int max_level, int max_degree, bool normalized, bool splitting, const std::vector<char>& heights_used)
{
    auto used = [&](int h) { return h < int(heights_used.size()) && heights_used[h]; };
    ShapeComplex s;
    std::map<int, std::vector<ReducedShape>> shapes;
    for (int k = 1; k <= max_height; ++k) {
        if (!used(k))
            continue;
        for (auto& ch : strict_canonical_chains(k)) {
            int m = int(ch.size());
            for (int r = 0; k + r <= max_level && m + r <= max_degree; ++r) {
                if (normalized && k == 1 && r > 0)
                    break;
                sigma_tuples(k, r, !normalized, [&](const Chain& sig) { shapes[m + r].push_back({k, ch, sig}); });
            }
        }
    }
    std::map<int, std::unordered_map<std::string, int>> index;
    for (auto& [q, v] : shapes)
        for (auto& g : v) {
            index[q].emplace(shape_key(g), int(s.height[q].size()));
            s.height[q].push_back(g.k);
            s.level[q].push_back(g.k + int(g.sigma.size()));
            s.width[q].push_back(int(g.sigma.size()));
            s.label[q].push_back(show_shape(g));
        }
    MapTable table{&s, {}};
    for (auto& [q, v] : shapes) {
        if (q == 0)
            continue;
        auto& bd = s.bd[q];
        for (auto& g : v) {
            std::vector<ShapeTerm> terms;
            for (auto& t : reduced_boundary(g, normalized, splitting)) {
                auto it = index[q - 1].find(shape_key(t.target));
                if (it == index[q - 1].end()) {
                    if (used(t.target.k))
                        internal_fail("boundary leaves the reduced complex at " + show_shape(t.target));
                    continue;
                }
                terms.push_back({it->second, t.coef, t.map ? table(*t.map) : -1});
            }
            bd.push_back(std::move(terms));
        }
    }
    return s;
}

RWComplex rw_complex(const Module& f, int deg_max, bool reduced, const Coeff& c)
{
    if (f.variance != Variance::Left)
        fail("rw_complex takes a left module; use rw_cochains for a right module");
    if (f.spine != Spine::Gamma)
        fail("rw_complex takes a Gamma module");
    int h = deg_max + 2;
    check_heights(f, h);
    auto used = heights_with_values(f);
    RWComplex r;
    r.reduced = reduced;
    r.exact_through = deg_max;
    ShapeComplex s = reduced ? reduced_shapes(h, h, deg_max + 1, true, true, used) : nerve_shapes(h, deg_max + 1, true, used);
    r.mc = tensor(s, f, c);
    return r;
}

ChainComplex rw_cochains(const Module& t, int deg_max, const Coeff& c)
{
    if (t.variance != Variance::Right)
        fail("rw_cochains takes a right module");
    int h = deg_max + 2;
    check_heights(t, h);
    return hom_complex(reduced_shapes(h, h, deg_max + 1, true, true, heights_with_values(t)), t, c);
}

FilteredComplex diagonal_filtration(const RWComplex& r)
{
    if (!r.reduced)
        fail("the diagonal filtration is defined on the reduced complex only");
    FilteredComplex fc{r.mc.complex, r.mc.level};
    return fc;
}

ModuleComplex bar_module_complex(const Module& l, int deg_max, const Coeff& c)
{
    if (l.variance != Variance::Left)
        fail("the bar complex takes a left module");
    int h = deg_max + 2;
    check_heights(l, h);
    return tensor(nerve_shapes(h, deg_max + 1, false, heights_with_values(l)), l, c);
}

ChainComplex bar_complex_omega(const Module& l, int deg_max, const Coeff& c) { return bar_module_complex(l, deg_max, c).complex; }

// ---------------------------------------------------------------- Xi

const SuperlieDual& superlie_dual(int k)
{
    static std::mutex mu;
    static std::map<int, std::unique_ptr<SuperlieDual>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[k];
    if (slot)
        return *slot;
    auto d = std::make_unique<SuperlieDual>();
    d->k = k;
    d->chains = top_chains(k);
    for (size_t i = 0; i < d->chains.size(); ++i)
        d->index[d->chains[i]] = int(i);
    int n = int(d->chains.size());
    if (k <= 2) {
        d->basis.assign(n, std::vector<mpz_class>(n, 0));
        for (int i = 0; i < n; ++i)
            d->basis[i][i] = 1;
    }
    else {
        std::map<Chain, int> lower;
        for (auto& ch : strict_canonical_chains(k))
            if (int(ch.size()) == k - 2)
                lower.emplace(ch, int(lower.size()));
        SparseMatrix m(int(lower.size()), 0);
        for (auto& ch : d->chains) {
            SparseVec col;
            for (int i = 1; i < k - 1; ++i) {
                Chain nc(ch.begin(), ch.begin() + i - 1);
                nc.push_back(compose(ch[i - 1], ch[i]));
                nc.insert(nc.end(), ch.begin() + i + 1, ch.end());
                col.emplace_back(lower.at(nc), sgn(i));
            }
            m.append_column(std::move(col));
        }
        d->basis = kernel_hnf(m);
    }
    slot = std::move(d);
    return *slot;
}

int superlie_dual_rank(int k) { return int(superlie_dual(k).basis.size()); }

SigmaRep SuperlieDual::right_action() const
{
    int r = int(basis.size());
    std::vector<IMat> gens;
    for (int i = 1; i < k; ++i) {
        std::vector<int> img(k);
        for (int x = 1; x <= k; ++x)
            img[x - 1] = x == i ? i + 1 : x == i + 1 ? i : x;
        FinMap s = make_map(k, k, img);
        IMat g = IMat::Zero(r, r);
        for (int b = 0; b < r; ++b) {
            std::vector<mpz_class> v(chains.size(), 0);
            for (size_t c = 0; c < chains.size(); ++c)
                if (basis[b][c] != 0)
                    v[index.at(pullback_chain(chains[c], k, s))] += basis[b][c];
            auto co = hermite_coordinates(basis, v);
            for (int a = 0; a < r; ++a)
                g(a, b) = co[a].get_si();
        }
        gens.push_back(g);
    }
    return SigmaRep(k, r, Side::Right, gens);
}

XiComplex xi_complex(const Module& f, int n_max, const Coeff& c, bool normalized)
{
    if (f.variance != Variance::Left || f.spine != Spine::Gamma)
        fail("xi_complex takes a left Gamma module");
    int top = n_max + 1;
    check_heights(f, top + 1);
    struct XShape {
        int k, j;
        Chain sigma;
    };
    std::map<int, std::vector<XShape>> shapes;
    std::map<int, std::map<std::pair<int, std::string>, int>> family;  // (k, sigma) -> first shape
    for (int q = 0; q <= top; ++q)
        for (int k = 1; k <= q + 1; ++k) {
            int r = q - (k - 1);
            if (f.rank(k) == 0 || (normalized && k == 1 && r > 0))
                continue;
            int rk = superlie_dual_rank(k);
            sigma_tuples(k, r, !normalized, [&](const Chain& sig) {
                family[q][{k, chain_key(sig)}] = int(shapes[q].size());
                for (int j = 0; j < rk; ++j)
                    shapes[q].push_back({k, j, sig});
            });
        }
    XiComplex out;
    std::map<int, i64> dims;
    std::map<int, std::vector<i64>> offset;
    for (auto& [q, v] : shapes) {
        i64 tot = 0;
        for (size_t i = 0; i < v.size(); ++i) {
            offset[q].push_back(tot);
            for (int x = 0; x < f.rank(v[i].k); ++x) {
                out.mc.basis[q].emplace_back(int(i), x);
                out.mc.level[q].push_back(q + 1);
                out.mc.height[q].push_back(v[i].k);
            }
            tot += f.rank(v[i].k);
            out.label[q].push_back("k=" + std::to_string(v[i].k) + " z" + std::to_string(v[i].j) + " | " + show_chain(v[i].sigma));
        }
        dims[q] = tot;
    }
    std::map<int, SparseMatrix> d;
    for (int q = 1; q <= top; ++q) {
        if (!dims.count(q) || !dims.count(q - 1))
            continue;
        SparseMatrix m(static_cast<int>(dims[q - 1]), 0);
        const auto& v = shapes[q];
        size_t i = 0;
        while (i < v.size()) {
            int k = v[i].k;
            const Chain& sig = v[i].sigma;
            int lvl = k + int(sig.size());
            const SuperlieDual& sd = superlie_dual(k);
            int rk = int(sd.basis.size());
            // boundary of each top chain of this family
            std::vector<std::vector<ReducedTerm>> terms(sd.chains.size());
            for (size_t ci = 0; ci < sd.chains.size(); ++ci)
                terms[ci] = reduced_boundary(ReducedShape{k, sd.chains[ci], sig}, normalized, true);
            for (int j = 0; j < rk; ++j) {
                const auto& z = sd.basis[j];
                for (int x = 0; x < f.rank(k); ++x) {
                    // (k', sigma', y) -> vector over top chains of k'
                    std::map<std::tuple<int, std::string, int>, std::vector<mpz_class>> acc;
                    std::map<std::tuple<std::string, int>, mpz_class> same;
                    for (size_t ci = 0; ci < sd.chains.size(); ++ci) {
                        if (z[ci] == 0)
                            continue;
                        for (auto& t : terms[ci]) {
                            int tl = t.target.k + int(t.target.sigma.size());
                            SparseVec img;
                            if (t.map) {
                                const SparseMatrix& fm = f.eval(*t.map);
                                for (i64 p = fm.colptr[x]; p < fm.colptr[x + 1]; ++p)
                                    img.emplace_back(fm.rowind[p], fm.val[p]);
                            }
                            else
                                img.emplace_back(x, 1);
                            if (tl == lvl) {
                                for (auto& [y, a] : img)
                                    same[{shape_key(t.target), y}] += z[ci] * mpz_class(std::to_string(t.coef * a));
                                continue;
                            }
                            if (tl != lvl - 1)
                                continue;
                            int k2 = t.target.k;
                            if (int(t.target.chain.size()) != k2 - 1)
                                internal_fail("d1 leaves the top chains");
                            const SuperlieDual& sd2 = superlie_dual(k2);
                            int pos = sd2.index.at(t.target.chain);
                            std::string sk = chain_key(t.target.sigma);
                            for (auto& [y, a] : img) {
                                auto& vec = acc[{k2, sk, y}];
                                if (vec.empty())
                                    vec.assign(sd2.chains.size(), 0);
                                vec[pos] += z[ci] * mpz_class(std::to_string(t.coef * a));
                            }
                        }
                    }
                    for (auto& [key, val] : same)
                        if (val != 0)
                            internal_fail("level-preserving part does not vanish on a superlie cycle");
                    SparseVec col;
                    for (auto& [key, vec] : acc) {
                        auto& [k2, sk, y] = key;
                        auto fit = family[q - 1].find({k2, sk});
                        if (fit == family[q - 1].end()) {
                            if (f.rank(k2) == 0)
                                continue;
                            internal_fail("d1 target missing from the collapsed complex");
                        }
                        auto co = hermite_coordinates(superlie_dual(k2).basis, vec);
                        for (size_t j2 = 0; j2 < co.size(); ++j2) {
                            if (co[j2] == 0)
                                continue;
                            if (!co[j2].fits_slong_p())
                                internal_fail("coefficient overflow in the collapsed complex");
                            i64 val = co[j2].get_si();
                            if (c.ring == Ring::Fp)
                                val %= c.p;
                            col.emplace_back(int(offset[q - 1][fit->second + j2] + y), val);
                        }
                    }
                    m.append_column(std::move(col));
                }
            }
            i += rk;
        }
        d[q] = std::move(m);
    }
    i64 total = 0;
    for (auto& [q, n] : dims)
        total += n;
    out.mc.complex = ChainComplex(c, dims, std::move(d), total < 20000);
    return out;
}

// ---------------------------------------------------------------- homotopy

std::map<int, AbelianGroupInvariants> stable_pi_all(const Module& f, int n_max, const Coeff& c)
{
    if (f.variance == Variance::Right)
        fail("stable_pi takes a left module; use stable_pi_co for a right module");
    XiComplex x = xi_complex(f, n_max, c);
    std::map<int, AbelianGroupInvariants> out;
    for (int n = 0; n <= n_max; ++n)
        out[n] = homology_in_degree(x.mc.complex, n);
    return out;
}

AbelianGroupInvariants stable_pi(const Module& f, int n, const Coeff& c) { return stable_pi_all(f, n, c).at(n); }

std::map<int, AbelianGroupInvariants> stable_pi_co_all(const Module& t, int n_max, const Coeff& c)
{
    if (t.variance != Variance::Right)
        fail("stable_pi_co takes a right module");
    XiComplex x = xi_complex(dual_module(t), n_max, c);
    std::map<int, SparseMatrix> delta;
    for (auto& [q, m] : x.mc.complex.d)
        delta[q - 1] = transpose(m);
    ChainComplex co = make_cochain_complex(c, x.mc.complex.dims, std::move(delta), false);
    std::map<int, AbelianGroupInvariants> out;
    for (int n = 0; n <= n_max; ++n)
        out[n] = cohomology_in_degree(co, n);
    return out;
}

AbelianGroupInvariants stable_pi_co(const Module& t, int n, const Coeff& c) { return stable_pi_co_all(t, n, c).at(n); }

std::map<int, AbelianGroupInvariants> stable_pi_bar(const Module& f, int n_max, const Coeff& c)
{
    ChainComplex b = bar_complex_omega(cross_effect(f), n_max, c);
    std::map<int, AbelianGroupInvariants> out;
    for (int n = 0; n <= n_max; ++n)
        out[n] = homology_in_degree(b, n);
    return out;
}

std::map<int, AbelianGroupInvariants> stable_pi_co_bar(const Module& t, int n_max, const Coeff& c)
{
    if (t.variance != Variance::Right)
        fail("stable_pi_co takes a right module");
    ChainComplex b = bar_complex_omega(cross_effect(dual_module(t)), n_max, c);
    std::map<int, SparseMatrix> delta;
    for (auto& [q, m] : b.d)
        delta[q - 1] = transpose(m);
    ChainComplex co = make_cochain_complex(c, b.dims, std::move(delta), false);
    std::map<int, AbelianGroupInvariants> out;
    for (int n = 0; n <= n_max; ++n)
        out[n] = cohomology_in_degree(co, n);
    return out;
}

}  // namespace einf
