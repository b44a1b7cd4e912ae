#include <doctest.h>

#include "einf/sigma_rep.hpp"

using namespace einf;

namespace {

AbelianGroupInvariants free_ab(i64 r) { return {r, {}}; }
[[maybe_unused]] AbelianGroupInvariants cyclic2() { return {0, {2}}; }

}  // namespace

TEST_CASE("superlie restricts to the regular representation")
{
    for (int n = 2; n <= 5; ++n) {
        SigmaRep s = superlie(n);
        s.validate();
        CHECK(s.rank == factorial(n - 1));
        CHECK(character(restrict_rep(s, n - 1)) == regular_character(n - 1));
    }
}

TEST_CASE("builtin representations satisfy the Coxeter presentation")
{
    for (int n = 1; n <= 5; ++n) {
        for (auto& r : {trivial_rep(n), sign_rep(n), regular_rep(n), natural_rep(n), trivial_rep(n, 3)})
            CHECK_NOTHROW(r.validate());
        CHECK(character(regular_rep(n)) == regular_character(n));
    }
}

TEST_CASE("Shapiro: Tor over Sigma_n with an induced argument")
{
    // Tor^{Sigma_n}(A, Ind M) = Tor^{Sigma_{n-1}}(Res A, M)
    for (int n = 2; n <= 4; ++n) {
        std::vector<SigmaRep> as = {trivial_rep(n, 1, Side::Right), sign_rep(n, Side::Right), natural_rep(n, Side::Right)};
        std::vector<SigmaRep> ms = {trivial_rep(n - 1), sign_rep(n - 1)};
        for (auto& a : as)
            for (auto& m : ms) {
                auto big = tor_sigma(a, induce(m, n), 3);
                auto small = tor_sigma(restrict_rep(a, n - 1), m, 3);
                for (int q = 0; q <= 3; ++q)
                    CHECK_MESSAGE(big[q] == small[q], "n=" << n << " q=" << q << ": " << big[q].to_string() << " vs " << small[q].to_string());
            }
    }
}

TEST_CASE("group homology of Sigma_2 with trivial coefficients")
{
    auto t = tor_sigma(trivial_rep(2, 1, Side::Right), trivial_rep(2), 4);
    CHECK(t[0] == free_ab(1));
    CHECK(t[1] == cyclic2());
    CHECK(t[2].is_zero());
    CHECK(t[3] == cyclic2());
}
