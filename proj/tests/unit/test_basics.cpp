#include <doctest.h>

#include "einf/operad.hpp"

using namespace einf;

namespace {

AbelianGroupInvariants free_ab(i64 r) { return {r, {}}; }
[[maybe_unused]] AbelianGroupInvariants cyclic2() { return {0, {2}}; }

}  // namespace

TEST_CASE("partition homology, small n")
{
    auto h2 = partition_boundary_homology(2);
    CHECK(h2[-1] == free_ab(1));
    auto h4 = partition_boundary_homology(4);
    CHECK(h4[1] == free_ab(6));
    CHECK(h4[0].is_zero());
    auto q5 = partition_quotient_homology(5);
    CHECK(q5[3] == free_ab(24));
    CHECK(q5[2].is_zero());
    auto f6 = partition_boundary_homology(5, Coeff::Fp(2));
    CHECK(f6[2].free_rank == 24);
}

TEST_CASE("partition complex sizes")
{
    // non-discrete partitions: Bell(n) - 1
    std::vector<size_t> bell = {1, 1, 2, 5, 15, 52};
    for (int n = 2; n <= 5; ++n)
        CHECK(partition_complex(n).elements.size() == bell[n] - 1);
    CHECK(partition_complex(4).boundary.count(0) == 13);
    CHECK(partition_complex(4).boundary.count(1) == 18);
}

TEST_CASE("superlie characters")
{
    CHECK(superlie(1).rank == 1);
    CHECK((character(superlie(3)) == std::vector<i64>{2, 0, -1}));
    CHECK((character(superlie(4)) == std::vector<i64>{6, 0, -2, 0, 0}));
    for (int n = 3; n <= 5; ++n)
        CHECK(superlie(n).rank == factorial(n - 1));
}

TEST_CASE("boundary of tree space decomposes into faces")
{
    for (int n = 3; n <= 5; ++n) {
        auto r = deldel_wedge_check(n);
        CHECK_MESSAGE(r.match, "n=" << n << " " << r.lhs_rank << " vs " << r.rhs_rank);
    }
}

TEST_CASE("tree space boundary is a wedge of spheres")
{
    // (n-1)! spheres of dimension n-3, unreduced; for n = 3 that is three points
    for (int n = 3; n <= 5; ++n) {
        auto h = homology(face_decomposition(n).complex);
        for (auto& [q, g] : h) {
            i64 want = (q == n - 3 ? factorial(n - 1) : 0) + (q == 0 ? 1 : 0);
            CHECK_MESSAGE(g == free_ab(want), "n=" << n << " q=" << q);
        }
    }
}

TEST_CASE("tree filtration quotients, per-orbit ranks")
{
    // (k-1)! (k!-1)^p generators per free orbit
    auto t = tree_filtration_quotient(3, 0);
    CHECK(homology(t.complex)[1] == free_ab(12));
    auto t2 = tree_filtration_quotient(3, 2);
    CHECK(homology(t2.complex)[3] == free_ab(300));
    auto eq = cohomology(equivariant_cochains(t2.complex, t2.action, trivial_rep(3, 1, Side::Right)));
    CHECK(eq[3] == free_ab(50));
}
