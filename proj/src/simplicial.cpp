#include "einf/simplicial.hpp"

#include <algorithm>

namespace einf {

void SemiSimplicialSet::check_face_identities() const
{
    for (int d = 2; d <= dim(); ++d)
        for (size_t s = 0; s < labels[d].size(); ++s)
            for (int j = 1; j <= d; ++j)
                for (int i = 0; i < j; ++i) {
                    int a = faces[d][s][j], b = faces[d][s][i];
                    // degenerate simplices are not stored, so their faces are unknown
                    if (a < 0 || b < 0)
                        continue;
                    if (faces[d - 1][a][i] != faces[d - 1][b][j - 1])
                        internal_fail("face identity fails in dimension " + std::to_string(d));
                }
}

void SemiSimplicialSet::check_action() const
{
    if (action.elements.empty())
        return;
    for (int d = 1; d <= dim(); ++d) {
        auto it = action.act.find(d), lo = action.act.find(d - 1);
        if (it == action.act.end() || lo == action.act.end())
            continue;
        for (size_t g = 0; g < action.elements.size(); ++g)
            for (size_t s = 0; s < labels[d].size(); ++s)
                for (int i = 0; i <= d; ++i) {
                    int f = faces[d][s][i];
                    int gs = it->second[g][s].first;
                    int lhs = f < 0 ? -1 : lo->second[g][f].first;
                    int rhs = faces[d][gs][i];
                    if (lhs != rhs)
                        internal_fail("group action does not commute with faces");
                }
    }
}

void FilteredComplex::check() const
{
    for (auto& [q, m] : complex.d) {
        auto src = level.find(q), tgt = level.find(q - 1);
        if (src == level.end() || tgt == level.end())
            continue;
        for (int j = 0; j < m.cols; ++j)
            for (i64 k = m.colptr[j]; k < m.colptr[j + 1]; ++k)
                if (tgt->second[m.rowind[k]] > src->second[j])
                    internal_fail("boundary raises filtration level");
    }
}

namespace {

SemiSimplicialSet from_labels(std::vector<std::vector<std::vector<int>>> labels, bool allow_degenerate)
{
    SemiSimplicialSet x;
    x.labels = std::move(labels);
    for (auto& v : x.labels)
        std::sort(v.begin(), v.end());
    x.faces.resize(x.labels.size());
    for (int d = 1; d < int(x.labels.size()); ++d) {
        std::map<std::vector<int>, int> index;
        for (size_t s = 0; s < x.labels[d - 1].size(); ++s)
            index[x.labels[d - 1][s]] = int(s);
        x.faces[d].resize(x.labels[d].size());
        for (size_t s = 0; s < x.labels[d].size(); ++s) {
            auto& lab = x.labels[d][s];
            for (int i = 0; i <= d; ++i) {
                std::vector<int> f(lab);
                f.erase(f.begin() + i);
                auto it = index.find(f);
                if (it == index.end()) {
                    if (!allow_degenerate)
                        internal_fail("missing face");
                    x.faces[d][s].push_back(-1);
                }
                else
                    x.faces[d][s].push_back(it->second);
            }
        }
    }
    return x;
}

}  // namespace

SemiSimplicialSet nerve_of_poset(int elements, const std::function<bool(int, int)>& less, int max_dim)
{
    for (int a = 0; a < elements; ++a) {
        if (less(a, a))
            fail("order relation is not strict");
        for (int b = 0; b < elements; ++b)
            if (less(a, b) && less(b, a))
                fail("order relation has a cycle");
    }
    std::vector<std::vector<std::vector<int>>> labels(max_dim + 1);
    std::vector<int> chain;
    std::function<void()> rec = [&]() {
        labels[chain.size() - 1].push_back(chain);
        if (int(chain.size()) > max_dim)
            return;
        for (int b = 0; b < elements; ++b)
            if (less(chain.back(), b)) {
                chain.push_back(b);
                rec();
                chain.pop_back();
            }
    };
    for (int a = 0; a < elements; ++a) {
        chain = {a};
        rec();
    }
    while (labels.size() > 1 && labels.back().empty())
        labels.pop_back();
    if (elements == 0)
        labels.clear();
    SemiSimplicialSet x = from_labels(std::move(labels), false);
    x.check_face_identities();
    return x;
}

SemiSimplicialSet nerve_of_groupoid_skeleton(int k, int p)
{
    auto perms = enumerate_permutations(k);
    const int G = int(perms.size());
    std::vector<std::vector<std::vector<int>>> labels(p + 1);
    std::vector<int> t;
    std::function<void()> rec = [&]() {
        labels[t.size() - 1].push_back(t);
        if (int(t.size()) > p)
            return;
        for (int g = 0; g < G; ++g)
            if (g != t.back()) {
                t.push_back(g);
                rec();
                t.pop_back();
            }
    };
    for (int g = 0; g < G; ++g) {
        t = {g};
        rec();
    }
    SemiSimplicialSet x = from_labels(std::move(labels), true);
    std::map<FinMap, int> idx;
    for (int g = 0; g < G; ++g)
        idx[perms[g]] = g;
    x.action.k = k;
    x.action.elements = perms;
    for (int d = 0; d <= x.dim(); ++d) {
        std::map<std::vector<int>, int> index;
        for (size_t s = 0; s < x.labels[d].size(); ++s)
            index[x.labels[d][s]] = int(s);
        auto& a = x.action.act[d];
        a.assign(G, {});
        for (int h = 0; h < G; ++h)
            for (auto& lab : x.labels[d]) {
                std::vector<int> img;
                for (int g : lab)
                    img.push_back(idx[compose(perms[h], perms[g])]);
                a[h].emplace_back(index.at(img), 1);
            }
    }
    x.check_face_identities();
    x.check_action();
    return x;
}

SemiSimplicialSet barycentric_subdivision(const SemiSimplicialSet& x)
{
    // vertices: all simplices (d, s); order: tau < tau' when tau is a proper face of tau'
    std::vector<std::pair<int, int>> verts;
    std::map<std::pair<int, int>, int> vid;
    for (int d = 0; d <= x.dim(); ++d)
        for (size_t s = 0; s < x.count(d); ++s) {
            vid[{d, int(s)}] = int(verts.size());
            verts.emplace_back(d, int(s));
        }
    std::vector<std::vector<char>> rel(verts.size(), std::vector<char>(verts.size(), 0));
    for (size_t v = 0; v < verts.size(); ++v) {
        auto [d, s] = verts[v];
        std::vector<int> cur{s};
        for (int e = d; e > 0; --e) {
            std::vector<int> next;
            for (int c : cur)
                for (int f : x.faces[e][c])
                    if (f >= 0)
                        next.push_back(f);
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            cur = next;
            for (int f : cur)
                rel[vid[{e - 1, f}]][v] = 1;
        }
    }
    return nerve_of_poset(int(verts.size()), [&](int a, int b) { return rel[a][b] != 0; }, std::max(0, x.dim()));
}

SemiSimplicialSet flag_subcomplex(const SemiSimplicialSet& x, const std::vector<char>& vertex_in)
{
    std::vector<std::vector<std::vector<int>>> labels(x.labels.size());
    // simplices whose vertex labels (nerve chains) are all selected
    for (int d = 0; d <= x.dim(); ++d)
        for (auto& lab : x.labels[d]) {
            bool ok = true;
            for (int v : lab)
                ok = ok && vertex_in[v];
            if (ok)
                labels[d].push_back(lab);
        }
    while (!labels.empty() && labels.back().empty())
        labels.pop_back();
    return from_labels(std::move(labels), false);
}

ChainComplex chain_complex(const SemiSimplicialSet& x, const Coeff& c, bool augmented)
{
    std::map<int, i64> dims;
    std::map<int, SparseMatrix> d;
    for (int q = 0; q <= x.dim(); ++q)
        dims[q] = i64(x.count(q));
    if (augmented) {
        dims[-1] = 1;
        SparseMatrix e(1, 0);
        for (size_t s = 0; s < x.count(0); ++s)
            e.append_column({{0, 1}});
        d[0] = e;
    }
    for (int q = 1; q <= x.dim(); ++q) {
        SparseMatrix m(static_cast<int>(x.count(q - 1)), 0);
        for (size_t s = 0; s < x.count(q); ++s) {
            SparseVec v;
            for (int i = 0; i <= q; ++i)
                if (x.faces[q][s][i] >= 0)
                    v.emplace_back(x.faces[q][s][i], i % 2 ? -1 : 1);
            m.append_column(std::move(v));
        }
        d[q] = std::move(m);
    }
    ChainComplex cc(c, dims, d);
    cc.augmented = augmented;
    return cc;
}

ChainComplex relative_chain_complex(const SemiSimplicialSet& x, const std::vector<std::vector<char>>& sub, const Coeff& c)
{
    ChainComplex full = chain_complex(x, c, false);
    std::map<int, std::vector<int>> s;
    for (int q = 0; q <= x.dim(); ++q)
        for (size_t i = 0; i < x.count(q); ++i)
            if (q < int(sub.size()) && sub[q][i])
                s[q].push_back(int(i));
    return quotient_complex(full, s).complex;
}

TensorComplex prism_product(const ChainComplex& a, const ChainComplex& b)
{
    if (!(a.coeff == b.coeff))
        fail("prism_product needs a common coefficient ring");
    TensorComplex t;
    std::map<int, std::map<std::pair<int, int>, std::pair<int, int>>> pos;  // degree -> (i, offset)
    std::map<int, i64> dims;
    for (auto& [i, na] : a.dims)
        for (auto& [j, nb] : b.dims) {
            int n = i + j;
            auto& lab = t.labels[n];
            for (int x = 0; x < na; ++x)
                for (int y = 0; y < nb; ++y) {
                    lab.emplace_back(x, y);
                    t.left_degree[n].push_back(i);
                }
            dims[n] += na * nb;
        }
    // block offsets in the order of generation
    std::map<int, std::map<int, i64>> offset;  // degree -> left degree -> offset
    for (auto& [n, ld] : t.left_degree)
        for (size_t k = 0; k < ld.size(); ++k)
            if (!offset[n].count(ld[k]))
                offset[n][ld[k]] = i64(k);
    std::map<int, SparseMatrix> da_of, db_of;
    for (auto& [i, na] : a.dims)
        da_of[i] = a.boundary(i);
    for (auto& [j, nb] : b.dims)
        db_of[j] = b.boundary(j);
    std::map<int, SparseMatrix> d;
    for (auto& [n, lab] : t.labels) {
        if (!dims.count(n - 1))
            continue;
        SparseMatrix m(static_cast<int>(dims[n - 1]), 0);
        for (size_t k = 0; k < lab.size(); ++k) {
            int i = t.left_degree[n][k], j = n - i;
            auto [x, y] = lab[k];
            SparseVec v;
            if (a.dims.count(i - 1) && a.dim(i - 1)) {
                const SparseMatrix& da = da_of[i];
                i64 nb = b.dim(j);
                for (i64 e = da.colptr[x]; e < da.colptr[x + 1]; ++e)
                    v.emplace_back(int(offset[n - 1][i - 1] + i64(da.rowind[e]) * nb + y), da.val[e]);
            }
            if (b.dims.count(j - 1) && b.dim(j - 1)) {
                const SparseMatrix& db = db_of[j];
                i64 nb1 = b.dim(j - 1);
                int s = i % 2 ? -1 : 1;
                for (i64 e = db.colptr[y]; e < db.colptr[y + 1]; ++e)
                    v.emplace_back(int(offset[n - 1][i] + i64(x) * nb1 + db.rowind[e]), s * db.val[e]);
            }
            m.append_column(std::move(v));
        }
        d[n] = std::move(m);
    }
    t.complex = ChainComplex(a.coeff, dims, d);
    return t;
}

QuotientResult quotient_complex(const ChainComplex& c, const std::map<int, std::vector<int>>& sub)
{
    std::map<int, std::vector<char>> in;
    for (auto& [q, n] : c.dims)
        in[q].assign(n, 0);
    for (auto& [q, v] : sub)
        for (int i : v)
            in.at(q).at(i) = 1;
    for (auto& [q, m] : c.d)
        for (int j = 0; j < m.cols; ++j)
            if (in[q][j])
                for (i64 k = m.colptr[j]; k < m.colptr[j + 1]; ++k)
                    if (!in[q - 1][m.rowind[k]])
                        fail("subcomplex is not closed under the boundary");
    QuotientResult r;
    std::map<int, std::vector<int>> newidx;
    std::map<int, i64> dims;
    for (auto& [q, flags] : in) {
        newidx[q].assign(flags.size(), -1);
        for (size_t i = 0; i < flags.size(); ++i)
            if (!flags[i]) {
                newidx[q][i] = int(r.kept[q].size());
                r.kept[q].push_back(int(i));
            }
        dims[q] = i64(r.kept[q].size());
    }
    std::map<int, SparseMatrix> d;
    for (auto& [q, m] : c.d) {
        SparseMatrix nm(static_cast<int>(dims[q - 1]), 0);
        for (int j : r.kept[q]) {
            SparseVec v;
            for (i64 k = m.colptr[j]; k < m.colptr[j + 1]; ++k) {
                int t = newidx[q - 1][m.rowind[k]];
                if (t >= 0)
                    v.emplace_back(t, m.val[k]);
            }
            nm.append_column(std::move(v));
        }
        d[q] = std::move(nm);
    }
    r.complex = ChainComplex(c.coeff, dims, d);
    r.complex.augmented = c.augmented;
    return r;
}

namespace {

struct Orbits {
    std::vector<int> reps;                     // representative per orbit
    std::vector<std::tuple<int, int, int>> of; // basis index -> (orbit, element g, sign) with s = sign * g.rep
};

Orbits free_orbits(const std::vector<std::vector<std::pair<int, int>>>& act, size_t n)
{
    Orbits o;
    o.of.assign(n, {-1, -1, 0});
    for (size_t s = 0; s < n; ++s) {
        if (std::get<0>(o.of[s]) >= 0)
            continue;
        int id = int(o.reps.size());
        o.reps.push_back(int(s));
        for (size_t g = 0; g < act.size(); ++g) {
            auto [t, sign] = act[g][s];
            if (std::get<0>(o.of[t]) >= 0)
                fail("equivariant cochains require free action");
            o.of[t] = {id, int(g), sign};
        }
    }
    return o;
}

}  // namespace

ChainComplex equivariant_cochains(const ChainComplex& c, const SigmaAction& a, const SigmaRep& m)
{
    if (m.n != a.k)
        fail("representation and action are for different symmetric groups");
    SigmaRep ml = with_side(m, Side::Left);
    std::vector<IMat> rho;
    for (auto& g : a.elements)
        rho.push_back(ml.element(g));
    std::map<int, Orbits> orb;
    for (auto& [q, n] : c.dims) {
        if (!n)
            continue;
        auto it = a.act.find(q);
        if (it == a.act.end())
            fail("action missing in degree " + std::to_string(q));
        orb[q] = free_orbits(it->second, size_t(n));
    }
    const int r = m.rank;
    std::map<int, i64> dims;
    for (auto& [q, o] : orb)
        dims[q] = i64(o.reps.size()) * r;
    std::map<int, SparseMatrix> delta;
    for (auto& [q, o] : orb) {
        // delta^{q-1}: C^{q-1} -> C^q, (delta f)(rep) = f(d rep)
        if (!orb.count(q - 1))
            continue;
        auto& lo = orb[q - 1];
        SparseMatrix bd = c.boundary(q);
        std::vector<SparseVec> rows(dims[q]);
        for (size_t i = 0; i < o.reps.size(); ++i) {
            int s = o.reps[i];
            for (i64 k = bd.colptr[s]; k < bd.colptr[s + 1]; ++k) {
                auto [orbit, g, sign] = lo.of[bd.rowind[k]];
                i64 coef = bd.val[k] * sign;
                for (int x = 0; x < r; ++x)
                    for (int y = 0; y < r; ++y)
                        if (rho[g](x, y))
                            rows[i * r + x].emplace_back(orbit * r + y, coef * rho[g](x, y));
            }
        }
        SparseMatrix rowsm(static_cast<int>(dims[q - 1]), 0);
        for (auto& v : rows)
            rowsm.append_column(v);
        delta[q - 1] = transpose(rowsm);
    }
    return make_cochain_complex(c.coeff, dims, delta);
}

std::vector<i64> lefschetz_character(const ChainComplex& c, const SigmaAction& a)
{
    std::map<FinMap, int> idx;
    for (size_t g = 0; g < a.elements.size(); ++g)
        idx[a.elements[g]] = int(g);
    std::vector<i64> out;
    for (auto& type : cycle_types(a.k)) {
        int g = idx.at(class_representative(type));
        i64 tr = 0;
        for (auto& [q, n] : c.dims) {
            if (!n)
                continue;
            auto& act = a.act.at(q)[g];
            i64 t = 0;
            for (i64 s = 0; s < n; ++s)
                if (act[s].first == s)
                    t += act[s].second;
            tr += (q % 2 == 0 ? 1 : -1) * t;
        }
        out.push_back(tr);
    }
    return out;
}

}  // namespace einf
