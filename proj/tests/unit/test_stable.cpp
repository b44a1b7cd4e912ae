#include <doctest.h>

#include "einf/spectral.hpp"

using namespace einf;

namespace {

const Coeff kField = Coeff::Fp(1000003);

AbelianGroupInvariants at(const std::map<int, AbelianGroupInvariants>& m, int n)
{
    auto it = m.find(n);
    return it == m.end() ? AbelianGroupInvariants{} : it->second;
}

AbelianGroupInvariants Z(i64 r) { return {r, {}}; }
AbelianGroupInvariants Z2() { return {0, {2}}; }

}  // namespace

TEST_CASE("superlie duals")
{
    CHECK(superlie_dual_rank(2) == 1);
    CHECK(superlie_dual_rank(3) == 2);
    CHECK(superlie_dual_rank(4) == 6);
    CHECK(superlie_dual(4).right_action().rank == 6);
}

TEST_CASE("one-line module on the trivial representation of Sigma_2")
{
    // not induced: pi_1 = Z, pi_2 = Z/2
    auto f = one_line_module(2, trivial_rep(2), false, 5);
    auto xi = stable_pi_all(f, 3, Coeff::Z());
    auto bar = stable_pi_bar(f, 3, Coeff::Z());
    for (auto* m : {&xi, &bar}) {
        CHECK(at(*m, 0).is_zero());
        CHECK(at(*m, 1) == Z(1));
        CHECK(at(*m, 2) == Z2());
        CHECK(at(*m, 3).is_zero());
    }
    // the reduced complex over a large prime loses the 2-torsion
    auto red = homology(rw_complex(f, 2, true, kField).mc.complex);
    CHECK(at(red, 1).free_rank == 1);
    CHECK(at(red, 2).is_zero());
    // the full complex at height 3 computes degree 1
    auto full = homology(rw_complex(truncate_height(f, 3), 1, false, kField).mc.complex);
    CHECK(at(full, 1).free_rank == 1);
}

TEST_CASE("induced one-line module")
{
    auto f = one_line_module(3, regular_rep(2), true, 5);
    CHECK(at(stable_pi_all(f, 3, Coeff::Z()), 2) == Z(2));
    CHECK(at(stable_pi_bar(f, 3, Coeff::Z()), 2) == Z(2));
}

TEST_CASE("cohomotopy of right modules")
{
    for (auto& t : {sharp(module_varpi(5)), module_t(5)}) {
        auto co = stable_pi_co_all(t, 3, Coeff::Z());
        CHECK(at(co, 0) == Z(1));
        for (int n = 1; n <= 3; ++n)
            CHECK(at(co, n).is_zero());
        auto direct = cohomology(rw_cochains(t, 3, Coeff::Z()));
        for (int n = 0; n <= 3; ++n)
            CHECK(at(direct, n) == at(co, n));
        auto bar = stable_pi_co_bar(t, 3, Coeff::Z());
        for (int n = 0; n <= 3; ++n)
            CHECK(at(bar, n) == at(co, n));
    }
}

TEST_CASE("representable module is resolved by the full complex")
{
    auto h = homology(rw_complex(representable(2, 4), 2, false, Coeff::Z()).mc.complex);
    CHECK(at(h, 0) == Z(2));
    CHECK(at(h, 1).is_zero());
    CHECK(at(h, 2).is_zero());
}

TEST_CASE("insufficient degrees are reported")
{
    auto f = one_line_module(2, trivial_rep(2), false, 4);
    try {
        stable_pi_all(f, 3, Coeff::Z());
        FAIL("no error");
    }
    catch (const Error& e) {
        CHECK(e.kind == ErrorKind::Insufficient);
    }
}

TEST_CASE("diagonal collapse and the bicomplex first page")
{
    for (auto& f : {one_line_module(2, trivial_rep(2), false, 5), one_line_module(3, regular_rep(2), true, 5),
                    sharp(truncated_representable(3, 2, 5))}) {
        CHECK(diagonal_collapse_check(f, 3, kField).pass());
        CHECK(bicomplex_ss(f, 3, 3, kField).tor_matches);
    }
    auto b = bicomplex_ss(sharp(truncated_representable(3, 2, 5)), 2, 3, kField);
    CHECK(b.pages[0].rank_at(1, 0) == 3);
    CHECK(b.pages[0].rank_at(2, 0) == 2);
    CHECK(b.pages[1].rank_at(1, 0) == 1);
}

TEST_CASE("E2 table of a single one-line member")
{
    GradedModule g;
    g.members.emplace_back(1, one_line_module(4, trivial_rep(3), true, 5, Variance::Right));
    auto pg = e2_table(g, 4, 5, Coeff::Z());
    CHECK((pg.support() == std::vector<std::pair<int, int>>{{4, 3}}));
    CHECK(std::find(pg.fringe.begin(), pg.fringe.end(), std::make_pair(3, 3)) != pg.fringe.end());
    auto rep = obstruction_groups(g, 4, Coeff::Z());
    CHECK(rep.existence_verdict == "potential obstruction at n = 3");
    CHECK(rep.uniqueness_verdict == "inconclusive");
    CHECK(!rep.finite);
}
