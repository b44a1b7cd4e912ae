#include <doctest.h>

#include <random>

#include "einf/fincat.hpp"

using namespace einf;

namespace {

// inclusion-exclusion count of surjections from n onto m
i64 surjection_count(int n, int m)
{
    i64 s = 0;
    for (int j = 0; j <= m; ++j) {
        i64 p = 1;
        for (int i = 0; i < n; ++i)
            p *= m - j;
        s += (j % 2 ? -1 : 1) * binomial(m, j) * p;
    }
    return s;
}

FinMap random_gamma_map(int n, int m, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(0, m);
    std::vector<int> img(n);
    for (auto& x : img)
        x = d(rng);
    return make_map(n, m, img);
}

}  // namespace

TEST_CASE("surjection counts match inclusion-exclusion")
{
    for (int n = 0; n <= 6; ++n)
        for (int m = 0; m <= 6; ++m)
            CHECK(i64(enumerate_surjections(n, m).size()) == surjection_count(n, m));
}

TEST_CASE("gamma factorizations recompose, sources up to 5")
{
    for (int n = 0; n <= 5; ++n)
        for (int m = 0; m <= 4; ++m)
            for (auto& f : enumerate_gamma_maps(n, m)) {
                auto fac = factorize_gamma(f);
                REQUIRE(fac.recompose() == f);
            }
}

TEST_CASE("gamma words recompose")
{
    for (int n = 0; n <= 4; ++n)
        for (int m = 0; m <= 4; ++m)
            for (auto& f : enumerate_gamma_maps(n, m)) {
                FinMap g = identity_map(m);
                for (auto& x : gamma_word(f))
                    g = compose(g, generator_map(x));
                CHECK(g == f);
            }
}

TEST_CASE("composition is associative and unital")
{
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) {
            auto ab = enumerate_gamma_maps(a, b);
            for (auto& f : ab) {
                CHECK(compose(identity_map(b), f) == f);
                CHECK(compose(f, identity_map(a)) == f);
            }
        }
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> size(0, 5);
    for (int trial = 0; trial < 2000; ++trial) {
        int a = size(rng), b = size(rng), c = size(rng), d = size(rng);
        FinMap f = random_gamma_map(a, b, rng), g = random_gamma_map(b, c, rng), h = random_gamma_map(c, d, rng);
        REQUIRE(compose(h, compose(g, f)) == compose(compose(h, g), f));
    }
}

TEST_CASE("canonical forms keep fibres")
{
    for (int n = 1; n <= 5; ++n)
        for (int m = 1; m <= n; ++m)
            for (auto& f : enumerate_surjections(n, m)) {
                FinMap c = canonical_form(f);
                CHECK(is_canonical_surjection(c));
                for (int x = 1; x <= n; ++x)
                    for (int y = 1; y <= n; ++y)
                        CHECK((f(x) == f(y)) == (c(x) == c(y)));
            }
}
