#include "einf/sigma_rep.hpp"

#include <algorithm>

#include "einf/operad.hpp"

namespace einf {

SigmaRep::SigmaRep(int n_, int rank_, Side side_, std::vector<IMat> gens_, bool check) : n(n_), rank(rank_), side(side_), gens(std::move(gens_))
{
    if (check)
        validate();
}

void SigmaRep::validate() const
{
    if (int(gens.size()) != std::max(0, n - 1))
        fail("a representation of Sigma_" + std::to_string(n) + " needs " + std::to_string(std::max(0, n - 1)) + " generator matrices");
    IMat I = IMat::Identity(rank, rank);
    for (auto& g : gens)
        if (g.rows() != rank || g.cols() != rank)
            fail("generator matrix has wrong shape");
    for (int i = 0; i + 1 < n; ++i) {
        if (gens[i] * gens[i] != I)
            fail("s_" + std::to_string(i + 1) + " does not square to 1");
        if (i + 2 < n) {
            IMat a = gens[i] * gens[i + 1];
            if (a * a * a != I)
                fail("braid relation fails at s_" + std::to_string(i + 1));
        }
        for (int j = i + 2; j + 1 < n; ++j)
            if (gens[i] * gens[j] != gens[j] * gens[i])
                fail("s_" + std::to_string(i + 1) + " and s_" + std::to_string(j + 1) + " do not commute");
    }
}

IMat SigmaRep::element(const FinMap& perm) const
{
    if (perm.src != n)
        fail("group element of the wrong symmetric group");
    IMat m = IMat::Identity(rank, rank);
    auto w = permutation_word(perm);
    if (side == Side::Right)
        std::reverse(w.begin(), w.end());
    for (auto& g : w)
        m = m * gens[g.i - 1];
    return m;
}

SigmaRep trivial_rep(int n, int rank, Side side)
{
    return SigmaRep(n, rank, side, std::vector<IMat>(std::max(0, n - 1), IMat::Identity(rank, rank)));
}

SigmaRep sign_rep(int n, Side side)
{
    return SigmaRep(n, 1, side, std::vector<IMat>(std::max(0, n - 1), -IMat::Identity(1, 1)));
}

SigmaRep zero_rep(int n, Side side) { return SigmaRep(n, 0, side, std::vector<IMat>(std::max(0, n - 1), IMat(0, 0))); }

SigmaRep regular_rep(int n, Side side)
{
    auto perms = enumerate_permutations(n);
    std::map<FinMap, int> idx;
    for (size_t i = 0; i < perms.size(); ++i)
        idx[perms[i]] = int(i);
    const int r = int(perms.size());
    std::vector<IMat> gens;
    for (int i = 1; i < n; ++i) {
        FinMap s = generator_map(Generator{Generator::Perm, n, i});
        IMat m = IMat::Zero(r, r);
        for (int g = 0; g < r; ++g) {
            FinMap h = side == Side::Left ? compose(s, perms[g]) : compose(perms[g], s);
            m(idx[h], g) = 1;
        }
        gens.push_back(m);
    }
    return SigmaRep(n, r, side, gens);
}

SigmaRep natural_rep(int n, Side side)
{
    std::vector<IMat> gens;
    for (int i = 1; i < n; ++i) {
        IMat m = IMat::Identity(n, n);
        m.row(i - 1).swap(m.row(i));
        gens.push_back(m);
    }
    return SigmaRep(n, n, side, gens);
}

SigmaRep dual(const SigmaRep& r)
{
    std::vector<IMat> g;
    for (auto& m : r.gens)
        g.push_back(m.transpose());
    return SigmaRep(r.n, r.rank, r.side, g, false);
}

SigmaRep with_side(SigmaRep r, Side s)
{
    r.side = s;
    return r;
}

SigmaRep direct_sum(const SigmaRep& a, const SigmaRep& b)
{
    if (a.n != b.n)
        fail("direct sum of representations of different groups");
    std::vector<IMat> g;
    for (int i = 0; i + 1 < a.n; ++i) {
        IMat m = IMat::Zero(a.rank + b.rank, a.rank + b.rank);
        m.topLeftCorner(a.rank, a.rank) = a.gens[i];
        m.bottomRightCorner(b.rank, b.rank) = b.gens[i];
        g.push_back(m);
    }
    return SigmaRep(a.n, a.rank + b.rank, a.side, g, false);
}

SigmaRep superlie(int n)
{
    if (n < 1)
        fail("superlie needs n >= 1");
    if (n <= 2)
        return trivial_rep(n);
    PartitionComplex pc = partition_complex(n);
    const int t = n - 3;
    ChainComplex c = chain_complex(pc.boundary, Coeff::Z(), true);
    auto basis = kernel_hnf(c.boundary(t));
    const int r = int(basis.size());
    auto& labels = pc.boundary.labels[t];
    std::map<std::vector<int>, int> index;
    for (size_t s = 0; s < labels.size(); ++s)
        index[labels[s]] = int(s);
    // boundary vertex -> element, element -> boundary vertex
    std::map<SetPartition, int> bvert;
    for (size_t v = 0; v < pc.boundary_to_P_vertex.size(); ++v)
        bvert[pc.elements[pc.boundary_to_P_vertex[v]]] = int(v);
    std::vector<IMat> gens;
    for (int i = 1; i < n; ++i) {
        FinMap s = generator_map(Generator{Generator::Perm, n, i});
        std::vector<int> image(labels.size());
        for (size_t x = 0; x < labels.size(); ++x) {
            std::vector<int> lab;
            for (int v : labels[x])
                lab.push_back(bvert.at(act(s, pc.elements[pc.boundary_to_P_vertex[v]])));
            image[x] = index.at(lab);
        }
        IMat m(r, r);
        for (int j = 0; j < r; ++j) {
            std::vector<mpz_class> v(labels.size(), 0);
            for (size_t x = 0; x < labels.size(); ++x)
                v[image[x]] = basis[j][x];
            auto co = hermite_coordinates(basis, v);
            for (int k = 0; k < r; ++k)
                m(k, j) = co[k].get_si();
        }
        gens.push_back(m);
    }
    return SigmaRep(n, r, Side::Left, gens);
}

std::vector<std::vector<int>> cycle_types(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int maxpart) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(left, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    std::sort(out.begin(), out.end());
    return out;
}

FinMap class_representative(const std::vector<int>& type)
{
    int n = 0;
    for (int p : type)
        n += p;
    FinMap f = identity_map(n);
    int start = 1;
    for (int p : type) {
        for (int x = start; x < start + p - 1; ++x)
            f.img[x - 1] = x + 1;
        f.img[start + p - 2] = start;
        start += p;
    }
    return f;
}

std::vector<i64> character(const SigmaRep& r)
{
    std::vector<i64> ch;
    for (auto& t : cycle_types(r.n))
        ch.push_back(r.element(class_representative(t)).trace());
    return ch;
}

std::vector<i64> regular_character(int n, i64 multiplicity)
{
    std::vector<i64> ch(cycle_types(n).size(), 0);
    ch[0] = factorial(n) * multiplicity;
    return ch;
}

SigmaRep restrict_rep(const SigmaRep& r, int m)
{
    if (m > r.n || m < 0)
        fail("restriction to a larger group");
    std::vector<IMat> g(r.gens.begin(), r.gens.begin() + std::max(0, m - 1));
    return SigmaRep(m, r.rank, r.side, g, false);
}

SigmaRep induce(const SigmaRep& M, int n)
{
    const int m = M.n;
    if (m > n)
        fail("induction to a smaller group");
    SigmaRep ml = with_side(M, Side::Left);
    // left cosets g Sigma_m, indexed by the tuple (g(m+1), ..., g(n))
    std::vector<std::vector<int>> tails;
    std::vector<int> cur;
    std::vector<char> used(n + 1, 0);
    std::function<void()> rec = [&]() {
        if (int(cur.size()) == n - m) {
            tails.push_back(cur);
            return;
        }
        for (int v = 1; v <= n; ++v)
            if (!used[v]) {
                used[v] = 1;
                cur.push_back(v);
                rec();
                cur.pop_back();
                used[v] = 0;
            }
    };
    rec();
    std::map<std::vector<int>, int> tidx;
    std::vector<FinMap> reps;
    for (size_t c = 0; c < tails.size(); ++c) {
        tidx[tails[c]] = int(c);
        FinMap g{n, n, std::vector<int>(n)};
        std::vector<char> u(n + 1, 0);
        for (int j = 0; j < n - m; ++j) {
            g.img[m + j] = tails[c][j];
            u[tails[c][j]] = 1;
        }
        int pos = 0;
        for (int v = 1; v <= n; ++v)
            if (!u[v])
                g.img[pos++] = v;
        reps.push_back(g);
    }
    const int C = int(reps.size()), r = M.rank;
    std::vector<IMat> gens;
    for (int i = 1; i < n; ++i) {
        FinMap s = generator_map(Generator{Generator::Perm, n, i});
        IMat big = IMat::Zero(C * r, C * r);
        for (int c = 0; c < C; ++c) {
            FinMap sg = compose(s, reps[c]);
            std::vector<int> tail(sg.img.begin() + m, sg.img.end());
            int c2 = tidx.at(tail);
            FinMap h = compose(inverse_permutation(reps[c2]), sg);
            FinMap hm{m, m, std::vector<int>(h.img.begin(), h.img.begin() + m)};
            big.block(c2 * r, c * r, r, r) = m ? ml.element(hm) : IMat::Identity(r, r);
        }
        gens.push_back(big);
    }
    return SigmaRep(n, C * r, M.side, gens);
}

namespace {

struct GroupTable {
    std::vector<FinMap> elems;
    std::vector<std::vector<int>> mul;  // mul[a][b] = a o b
    int identity = 0;
    std::vector<int> nonid;
};

GroupTable group_table(int n)
{
    GroupTable t;
    t.elems = enumerate_permutations(n);
    std::map<FinMap, int> idx;
    for (size_t i = 0; i < t.elems.size(); ++i)
        idx[t.elems[i]] = int(i);
    t.mul.assign(t.elems.size(), std::vector<int>(t.elems.size()));
    for (size_t a = 0; a < t.elems.size(); ++a)
        for (size_t b = 0; b < t.elems.size(); ++b)
            t.mul[a][b] = idx[compose(t.elems[a], t.elems[b])];
    t.identity = idx[identity_map(n)];
    for (size_t i = 0; i < t.elems.size(); ++i)
        if (int(i) != t.identity)
            t.nonid.push_back(int(i));
    return t;
}

i64 ipow(i64 b, int e)
{
    i64 r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

}  // namespace

ChainComplex tor_complex(const SigmaRep& a_, const SigmaRep& b_, int q_max, const Coeff& c, bool normalized)
{
    if (a_.n != b_.n)
        fail("Tor needs representations of the same group");
    SigmaRep a = with_side(a_, Side::Right), b = with_side(b_, Side::Left);
    GroupTable gt = group_table(a.n);
    std::vector<int> letters = normalized ? gt.nonid : std::vector<int>();
    if (!normalized)
        for (size_t i = 0; i < gt.elems.size(); ++i)
            letters.push_back(int(i));
    std::vector<int> pos(gt.elems.size(), -1);
    for (size_t i = 0; i < letters.size(); ++i)
        pos[letters[i]] = int(i);
    const i64 L = i64(letters.size()), ra = a.rank, rb = b.rank;
    std::vector<IMat> ra_of, rb_of;
    for (auto& g : gt.elems) {
        ra_of.push_back(a.element(g));
        rb_of.push_back(b.element(g));
    }
    std::map<int, i64> dims;
    for (int q = 0; q <= q_max + 1; ++q)
        dims[q] = ra * ipow(L, q) * rb;
    std::map<int, SparseMatrix> d;
    for (int q = 1; q <= q_max + 1; ++q) {
        SparseMatrix m(static_cast<int>(dims[q - 1]), 0);
        const i64 T = ipow(L, q), T1 = ipow(L, q - 1);
        std::vector<int> w(q);
        for (i64 x = 0; x < ra; ++x)
            for (i64 t = 0; t < T; ++t) {
                i64 tt = t;
                for (int i = q - 1; i >= 0; --i) {
                    w[i] = letters[tt % L];
                    tt /= L;
                }
                auto encode = [&](const std::vector<int>& v) {
                    i64 e = 0;
                    for (int g : v)
                        e = e * L + pos[g];
                    return e;
                };
                std::vector<int> tail(w.begin() + 1, w.end()), head(w.begin(), w.end() - 1);
                i64 etail = encode(tail), ehead = encode(head);
                for (i64 y = 0; y < rb; ++y) {
                    SparseVec v;
                    for (i64 x2 = 0; x2 < ra; ++x2) {
                        i64 coef = ra_of[w[0]](x2, x);
                        if (coef)
                            v.emplace_back(int((x2 * T1 + etail) * rb + y), coef);
                    }
                    for (int i = 1; i < q; ++i) {
                        int g = gt.mul[w[i - 1]][w[i]];
                        if (pos[g] < 0)
                            continue;
                        std::vector<int> u(w.begin(), w.end());
                        u[i - 1] = g;
                        u.erase(u.begin() + i);
                        v.emplace_back(int((x * T1 + encode(u)) * rb + y), i % 2 ? -1 : 1);
                    }
                    int s = q % 2 ? -1 : 1;
                    for (i64 y2 = 0; y2 < rb; ++y2) {
                        i64 coef = rb_of[w[q - 1]](y2, y);
                        if (coef)
                            v.emplace_back(int((x * T1 + ehead) * rb + y2), s * coef);
                    }
                    m.append_column(std::move(v));
                }
            }
        // columns were generated in (x, t, y) order, which is the basis order
        d[q] = std::move(m);
    }
    return ChainComplex(c, dims, d);
}

std::vector<AbelianGroupInvariants> tor_sigma(const SigmaRep& a, const SigmaRep& b, int q_max, const Coeff& c)
{
    ChainComplex cc = tor_complex(a, b, q_max, c);
    std::vector<AbelianGroupInvariants> out;
    for (int q = 0; q <= q_max; ++q)
        out.push_back(homology_in_degree(cc, q));
    return out;
}

std::vector<AbelianGroupInvariants> ext_sigma(const SigmaRep& a_, const SigmaRep& b_, int q_max, const Coeff& c)
{
    if (a_.n != b_.n)
        fail("Ext needs representations of the same group");
    SigmaRep a = with_side(a_, Side::Left), b = with_side(b_, Side::Left);
    GroupTable gt = group_table(a.n);
    auto& letters = gt.nonid;
    std::vector<int> pos(gt.elems.size(), -1);
    for (size_t i = 0; i < letters.size(); ++i)
        pos[letters[i]] = int(i);
    const i64 L = i64(letters.size()), ra = a.rank, rb = b.rank;
    std::vector<IMat> ra_of, rb_of;
    for (auto& g : gt.elems) {
        ra_of.push_back(a.element(g));
        rb_of.push_back(b.element(g));
    }
    std::map<int, i64> dims;
    for (int q = 0; q <= q_max + 1; ++q)
        dims[q] = ipow(L, q) * ra * rb;
    auto encode = [&](const std::vector<int>& v) {
        i64 e = 0;
        for (int g : v)
            e = e * L + pos[g];
        return e;
    };
    std::map<int, SparseMatrix> delta;
    for (int q = 0; q <= q_max; ++q) {
        // rows of delta^q indexed by (t', x, y) in degree q+1, columns (t, x, y) in degree q
        const i64 T = ipow(L, q + 1);
        SparseMatrix rowsm(static_cast<int>(dims[q]), 0);
        std::vector<int> w(q + 1);
        for (i64 t = 0; t < T; ++t) {
            i64 tt = t;
            for (int i = q; i >= 0; --i) {
                w[i] = letters[tt % L];
                tt /= L;
            }
            std::vector<int> tail(w.begin() + 1, w.end()), head(w.begin(), w.end() - 1);
            i64 etail = encode(tail), ehead = encode(head);
            for (i64 x = 0; x < ra; ++x)
                for (i64 y = 0; y < rb; ++y) {
                    SparseVec v;
                    for (i64 y2 = 0; y2 < rb; ++y2)
                        if (rb_of[w[0]](y, y2))
                            v.emplace_back(int((etail * ra + x) * rb + y2), rb_of[w[0]](y, y2));
                    for (int i = 1; i <= q; ++i) {
                        int g = gt.mul[w[i - 1]][w[i]];
                        if (pos[g] < 0)
                            continue;
                        std::vector<int> u(w.begin(), w.end());
                        u[i - 1] = g;
                        u.erase(u.begin() + i);
                        v.emplace_back(int((encode(u) * ra + x) * rb + y), i % 2 ? -1 : 1);
                    }
                    int s = (q + 1) % 2 ? -1 : 1;
                    for (i64 x2 = 0; x2 < ra; ++x2)
                        if (ra_of[w[q]](x2, x))
                            v.emplace_back(int((ehead * ra + x2) * rb + y), s * ra_of[w[q]](x2, x));
                    rowsm.append_column(std::move(v));
                }
        }
        delta[q] = transpose(rowsm);
    }
    ChainComplex cc = make_cochain_complex(c, dims, delta);
    std::vector<AbelianGroupInvariants> out;
    for (int q = 0; q <= q_max; ++q)
        out.push_back(cohomology_in_degree(cc, q));
    return out;
}

}  // namespace einf
