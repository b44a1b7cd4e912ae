#include "einf/operad.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace einf {

std::vector<std::vector<int>> SetPartition::block_list() const
{
    std::vector<std::vector<int>> b(blocks());
    for (int x = 1; x <= n(); ++x)
        b[rgs.img[x - 1] - 1].push_back(x);
    return b;
}

bool SetPartition::has_block(const std::vector<int>& b) const
{
    for (auto& blk : block_list())
        if (blk == b)
            return true;
    return false;
}

bool refines(const SetPartition& a, const SetPartition& b)
{
    if (a.n() != b.n())
        fail("partitions of different sets");
    // every block of a lies in a block of b
    std::vector<int> to(a.blocks() + 1, 0);
    for (int x = 1; x <= a.n(); ++x) {
        int ab = a.rgs.img[x - 1], bb = b.rgs.img[x - 1];
        if (to[ab] == 0)
            to[ab] = bb;
        else if (to[ab] != bb)
            return false;
    }
    return true;
}

SetPartition act(const FinMap& sigma, const SetPartition& p)
{
    return SetPartition{canonical_form(compose(p.rgs, inverse_permutation(sigma)))};
}

namespace {

std::vector<std::vector<std::pair<int, int>>> nerve_action(const SemiSimplicialSet& x, int d, const std::vector<FinMap>& perms, const std::vector<SetPartition>& verts)
{
    std::map<SetPartition, int> vidx;
    for (size_t v = 0; v < verts.size(); ++v)
        vidx[verts[v]] = int(v);
    std::map<std::vector<int>, int> index;
    for (size_t s = 0; s < x.labels[d].size(); ++s)
        index[x.labels[d][s]] = int(s);
    std::vector<std::vector<std::pair<int, int>>> a(perms.size());
    for (size_t g = 0; g < perms.size(); ++g)
        for (auto& lab : x.labels[d]) {
            std::vector<int> img;
            for (int v : lab)
                img.push_back(vidx.at(act(perms[g], verts[v])));
            a[g].emplace_back(index.at(img), 1);
        }
    return a;
}

SemiSimplicialSet partition_nerve(const std::vector<SetPartition>& verts, int n, int max_dim)
{
    SemiSimplicialSet x = nerve_of_poset(int(verts.size()), [&](int a, int b) { return a != b && refines(verts[a], verts[b]); }, max_dim);
    x.action.k = n;
    x.action.elements = enumerate_permutations(n);
    for (int d = 0; d <= x.dim(); ++d)
        x.action.act[d] = nerve_action(x, d, x.action.elements, verts);
    x.check_action();
    return x;
}

}  // namespace

PartitionComplex partition_complex(int n)
{
    if (n < 2)
        fail("partition complexes need n >= 2");
    PartitionComplex pc;
    pc.n = n;
    for (auto& f : enumerate_set_partitions(n))
        if (f.tgt < n) {
            pc.elements.push_back(SetPartition{f});
            pc.nontrivial.push_back(f.tgt > 1);
        }
    pc.P = partition_nerve(pc.elements, n, n - 2);
    std::vector<SetPartition> inner;
    for (size_t v = 0; v < pc.elements.size(); ++v)
        if (pc.nontrivial[v]) {
            inner.push_back(pc.elements[v]);
            pc.boundary_to_P_vertex.push_back(int(v));
        }
    pc.boundary = partition_nerve(inner, n, std::max(0, n - 3));
    return pc;
}

std::map<int, AbelianGroupInvariants> partition_boundary_homology(int n, const Coeff& c)
{
    PartitionComplex pc = partition_complex(n);
    return homology(chain_complex(pc.boundary, c, true));
}

std::map<int, AbelianGroupInvariants> partition_quotient_homology(int n, const Coeff& c)
{
    PartitionComplex pc = partition_complex(n);
    // simplices of P lying in the boundary: chains avoiding the indiscrete partition
    std::vector<std::vector<char>> sub(pc.P.labels.size());
    for (int d = 0; d <= pc.P.dim(); ++d)
        for (auto& lab : pc.P.labels[d]) {
            bool in = true;
            for (int v : lab)
                in = in && pc.nontrivial[v];
            sub[d].push_back(in);
        }
    return homology(relative_chain_complex(pc.P, sub, c));
}

namespace {

int block_mask(const std::vector<int>& b)
{
    int m = 0;
    for (int x : b)
        m |= 1 << (x - 1);
    return m;
}

}  // namespace

FaceDecomposition face_decomposition(int n)
{
    if (n < 3)
        fail("face decomposition needs n >= 3");
    FaceDecomposition fd;
    fd.n = n;
    for (int m = 1; m < (1 << n) - 1; ++m) {
        int c = __builtin_popcount(unsigned(m));
        if (c >= 2)
            fd.blocks.push_back(m);
    }
    std::stable_sort(fd.blocks.begin(), fd.blocks.end(), [](int a, int b) { return __builtin_popcount(unsigned(a)) < __builtin_popcount(unsigned(b)); });
    const int B = int(fd.blocks.size());
    auto compatible = [&](int a, int b) {
        int x = fd.blocks[a], y = fd.blocks[b];
        return (x & y) == 0 || (x & y) == x || (x & y) == y;
    };
    std::vector<std::vector<int>> trees;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int from) {
        if (!cur.empty())
            trees.push_back(cur);
        for (int b = from; b < B; ++b) {
            bool ok = true;
            for (int a : cur)
                ok = ok && compatible(a, b);
            if (ok) {
                cur.push_back(b);
                rec(b + 1);
                cur.pop_back();
            }
        }
    };
    rec(0);
    const int top = n - 3;
    fd.cells.resize(top + 1);
    for (auto& t : trees) {
        const int e = int(t.size());
        for (int s = 1; s < (1 << e); ++s) {
            std::vector<int> full;
            for (int i = 0; i < e; ++i)
                if (s >> i & 1)
                    full.push_back(t[i]);
            fd.cells[e - int(full.size())].emplace_back(t, full);
        }
    }
    std::vector<std::map<std::pair<std::vector<int>, std::vector<int>>, int>> index(top + 1);
    std::map<int, i64> dims;
    for (int d = 0; d <= top; ++d) {
        std::sort(fd.cells[d].begin(), fd.cells[d].end());
        for (size_t c = 0; c < fd.cells[d].size(); ++c)
            index[d][fd.cells[d][c]] = int(c);
        dims[d] = i64(fd.cells[d].size());
    }
    // cube boundary: each free edge goes to length 1 or is contracted
    std::map<int, SparseMatrix> bd;
    for (int d = 1; d <= top; ++d) {
        SparseMatrix m(static_cast<int>(dims[d - 1]), 0);
        for (auto& [t, full] : fd.cells[d]) {
            SparseVec v;
            int j = 0;
            for (int b : t) {
                if (std::binary_search(full.begin(), full.end(), b))
                    continue;
                int sign = j++ % 2 ? -1 : 1;
                std::vector<int> full2(full);
                full2.insert(std::lower_bound(full2.begin(), full2.end(), b), b);
                v.emplace_back(index[d - 1].at({t, full2}), sign);
                std::vector<int> t2(t);
                t2.erase(std::find(t2.begin(), t2.end(), b));
                v.emplace_back(index[d - 1].at({t2, full}), -sign);
            }
            m.append_column(std::move(v));
        }
        bd[d] = std::move(m);
    }
    fd.complex = ChainComplex(Coeff::Z(), dims, bd);
    for (int b = 0; b < B; ++b) {
        Face face;
        for (int x = 1; x <= n; ++x)
            if (fd.blocks[b] >> (x - 1) & 1)
                face.M.push_back(x);
        face.cells.resize(top + 1);
        for (int d = 0; d <= top; ++d)
            for (auto& c : fd.cells[d])
                face.cells[d].push_back(std::binary_search(c.second.begin(), c.second.end(), b));
        fd.faces.push_back(std::move(face));
    }
    fd.double_boundary.resize(top + 1);
    for (int d = 0; d <= top; ++d)
        for (auto& c : fd.cells[d])
            fd.double_boundary[d].push_back(c.second.size() >= 2);
    return fd;
}

DelDelReport deldel_wedge_check(int n, int bar_level, std::optional<std::vector<std::vector<int>>> decompositions)
{
    if (n < 3)
        fail("the wedge decomposition needs n >= 3");
    if (bar_level < 0)
        fail("bar level must be non-negative");
    DelDelReport r;
    r.n = n;
    r.bar_level = bar_level;
    FaceDecomposition fd = face_decomposition(n);
    std::map<int, std::vector<int>> sub;
    for (size_t d = 0; d < fd.double_boundary.size(); ++d)
        for (size_t c = 0; c < fd.double_boundary[d].size(); ++c)
            if (fd.double_boundary[d][c])
                sub[int(d)].push_back(int(c));
    r.lhs = homology(quotient_complex(fd.complex, sub).complex);
    i64 lhs = 0;
    bool concentrated = true;
    for (auto& [q, h] : r.lhs) {
        if (h.is_zero())
            continue;
        if (q != n - 3 || !h.is_free())
            concentrated = false;
        lhs += h.free_rank;
    }
    std::vector<std::vector<int>> ms;
    if (decompositions)
        ms = *decompositions;
    else
        for (auto& f : fd.faces)
            ms.push_back(f.M);
    std::map<int, i64> tops;
    auto quotient_rank = [&](int j) {
        if (!tops.count(j)) {
            auto h = partition_quotient_homology(j);
            i64 t = 0;
            for (auto& [q, g] : h)
                if (q == j - 2)
                    t = g.free_rank;
            tops[j] = t;
        }
        return tops[j];
    };
    i64 rhs = 0;
    for (auto& m : ms) {
        int s = int(m.size());
        if (s < 2 || s > n - 1)
            fail("block sizes must lie between 2 and n-1");
        rhs += quotient_rank(s) * quotient_rank(n - s + 1);
    }
    i64 g = factorial(n);
    r.layer_count = g;
    for (int i = 0; i < bar_level; ++i)
        r.layer_count *= g - 1;
    r.lhs_rank = lhs * r.layer_count;
    r.rhs_rank = rhs * r.layer_count;
    r.match = concentrated && r.lhs_rank == r.rhs_rank;
    return r;
}

TreeFiltrationQuotient tree_filtration_quotient(int k, int p, const Coeff& c)
{
    if (k < 2)
        fail("tree filtration quotients need k >= 2");
    if (p < 0)
        fail("skeleton degree must be non-negative");
    PartitionComplex pc = partition_complex(k);
    SemiSimplicialSet q = nerve_of_groupoid_skeleton(k, p);
    ChainComplex a = chain_complex(pc.P, c);
    ChainComplex b = chain_complex(q, c);
    TensorComplex t = prism_product(a, b);
    std::map<int, std::vector<int>> sub;
    for (auto& [deg, labs] : t.labels)
        for (size_t s = 0; s < labs.size(); ++s) {
            int i = t.left_degree[deg][s];
            auto [x, y] = labs[s];
            bool in_boundary = true;
            for (int v : pc.P.labels[i][x])
                in_boundary = in_boundary && pc.nontrivial[v];
            if (in_boundary || deg - i < p)
                sub[deg].push_back(int(s));
        }
    QuotientResult qr = quotient_complex(t.complex, sub);
    TreeFiltrationQuotient out;
    out.k = k;
    out.p = p;
    out.complex = qr.complex;
    out.action.k = k;
    out.action.elements = pc.P.action.elements;
    const size_t G = out.action.elements.size();
    for (auto& [deg, kept] : qr.kept) {
        std::map<std::tuple<int, int, int>, int> pos;
        for (size_t s = 0; s < kept.size(); ++s) {
            auto [x, y] = t.labels[deg][kept[s]];
            pos[{t.left_degree[deg][kept[s]], x, y}] = int(s);
        }
        auto& prov = out.provenance[deg];
        auto& a_ = out.action.act[deg];
        a_.assign(G, {});
        for (int s : kept) {
            int i = t.left_degree[deg][s];
            auto [x, y] = t.labels[deg][s];
            prov.emplace_back(pc.P.labels[i][x], q.labels[deg - i][y]);
            for (size_t g = 0; g < G; ++g) {
                int x2 = pc.P.action.act.at(i)[g][x].first;
                int y2 = q.action.act.at(deg - i)[g][y].first;
                a_[g].emplace_back(pos.at({i, x2, y2}), 1);
            }
        }
    }
    return out;
}

}  // namespace einf
