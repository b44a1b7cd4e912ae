#include <doctest.h>

#include <memory>
#include <random>

#include "einf/operad.hpp"

using namespace einf;

namespace {

// random poset on 0..n-1 by a random upper-triangular relation, closed transitively;
// cone_top adds n as a maximum
std::function<bool(int, int)> random_poset(int n, std::mt19937_64& rng, bool cone_top)
{
    auto rel = std::make_shared<std::vector<std::vector<char>>>(n + 1, std::vector<char>(n + 1, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            (*rel)[i][j] = rng() % 3 == 0;
    if (cone_top)
        for (int i = 0; i < n; ++i)
            (*rel)[i][n] = 1;
    for (int k = 0; k <= n; ++k)
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                if ((*rel)[i][k] && (*rel)[k][j])
                    (*rel)[i][j] = 1;
    return [rel](int a, int b) { return bool((*rel)[a][b]); };
}

}  // namespace

TEST_CASE("nerves of posets with a maximum are acyclic")
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + int(rng() % 5);
        auto less = random_poset(n, rng, true);
        SemiSimplicialSet x = nerve_of_poset(n + 1, less, n);
        x.check_face_identities();
        auto h = homology(chain_complex(x, Coeff::Z(), true));
        for (auto& [q, g] : h)
            if (q < n)
                CHECK_MESSAGE(g.is_zero(), "degree " << q << ": " << g.to_string());
    }
}

TEST_CASE("prism product satisfies the Leibniz rule")
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 8; ++trial) {
        auto a = chain_complex(nerve_of_poset(4, random_poset(4, rng, false), 3));
        auto b = chain_complex(nerve_of_poset(3, random_poset(3, rng, false), 2));
        TensorComplex t = prism_product(a, b);
        t.complex.check_square_zero();
        for (auto& [q, labels] : t.labels) {
            if (q == 0)
                continue;
            SparseMatrix d = t.complex.boundary(q);
            const auto& lower = t.labels[q - 1];
            for (size_t col = 0; col < labels.size(); ++col) {
                int p = t.left_degree[q][col], i = labels[col].first, j = labels[col].second;
                std::map<int, i64> want;
                auto put = [&](int pa, int ia, int jb, i64 c) {
                    for (size_t r = 0; r < lower.size(); ++r)
                        if (t.left_degree[q - 1][r] == pa && lower[r].first == ia && lower[r].second == jb)
                            want[int(r)] += c;
                };
                if (p > 0)
                    for (auto& [ia, c] : a.boundary(p).column(i))
                        put(p - 1, ia, j, c);
                if (q - p > 0)
                    for (auto& [jb, c] : b.boundary(q - p).column(j))
                        put(p, i, jb, (p % 2 ? -1 : 1) * c);
                std::map<int, i64> got;
                for (auto& [r, c] : d.column(int(col)))
                    got[r] += c;
                std::erase_if(want, [](auto& e) { return e.second == 0; });
                REQUIRE(got == want);
            }
        }
    }
}

TEST_CASE("partition complexes")
{
    for (int n = 2; n <= 5; ++n) {
        PartitionComplex pc = partition_complex(n);
        pc.P.check_face_identities();
        pc.boundary.check_face_identities();
        pc.P.check_action();
        pc.boundary.check_action();
        // the whole lattice of non-discrete partitions is a cone on the indiscrete partition
        auto hp = homology(chain_complex(pc.P, Coeff::Z(), true));
        for (auto& [q, g] : hp)
            CHECK(g.is_zero());
        auto hb = partition_boundary_homology(n);
        for (auto& [q, g] : hb)
            CHECK((q == n - 3 ? g.free_rank == factorial(n - 1) && g.is_free() : g.is_zero()));
    }
}

TEST_CASE("permutations fix the indiscrete partition and respect refinement")
{
    for (int n = 2; n <= 5; ++n) {
        PartitionComplex pc = partition_complex(n);
        for (auto& s : enumerate_permutations(n)) {
            for (auto& a : pc.elements) {
                if (a.blocks() == 1)
                    CHECK(act(s, a) == a);
                for (auto& b : pc.elements)
                    CHECK(refines(a, b) == refines(act(s, a), act(s, b)));
            }
        }
    }
}

TEST_CASE("tree filtration quotients are Sigma-free")
{
    for (auto [k, p] : std::vector<std::pair<int, int>>{{2, 1}, {3, 0}, {3, 1}, {4, 0}}) {
        auto t = tree_filtration_quotient(k, p);
        auto h = homology(t.complex);
        i64 total = 0;
        int deg = -1;
        for (auto& [q, g] : h)
            if (!g.is_zero()) {
                CHECK(g.is_free());
                total += g.free_rank;
                deg = q;
            }
        REQUIRE(total % factorial(k) == 0);
        auto chi = lefschetz_character(t.complex, t.action);
        CHECK(chi == regular_character(k, (deg % 2 ? -1 : 1) * total / factorial(k)));
    }
}
