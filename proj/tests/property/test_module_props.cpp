#include <doctest.h>

#include "../common/corpus.hpp"
#include "einf/json_io.hpp"
#include "einf/parallel.hpp"
#include "einf/spectral.hpp"

using namespace einf;
using namespace einf::testing;

namespace {

const Coeff kField = Coeff::Fp(1000003);

AbelianGroupInvariants at(const std::map<int, AbelianGroupInvariants>& m, int n)
{
    auto it = m.find(n);
    return it == m.end() ? AbelianGroupInvariants{} : it->second;
}

}  // namespace

TEST_CASE("corpus modules are functors")
{
    for (auto s : corpus_seeds()) {
        Module f = restrict_degree(random_gamma_module(s), 4);
        auto r = validate_functoriality(f);
        CHECK_MESSAGE(r.ok, f.name << ": " << r.failure);
        CHECK(validate_functoriality(cross_effect(f)).ok);
    }
}

TEST_CASE("builtins are functors")
{
    std::vector<Module> ms = {module_t(4), module_varpi(4), sharp(module_varpi(4)), representable(2, 4),
                              one_line_module(2, sign_rep(2), false, 4), one_line_module(3, regular_rep(2), true, 4),
                              one_line_module(3, trivial_rep(2), true, 4, Variance::Right), sharp(truncated_representable(3, 2, 4)),
                              loday_dual(ring_dual_numbers(), 4), loday_dual(ring_product(2), 3)};
    for (auto& m : ms) {
        auto r = validate_functoriality(m);
        CHECK_MESSAGE(r.ok, m.name << ": " << r.failure);
    }
}

TEST_CASE("cross-effect after sharp is the identity")
{
    for (auto s : corpus_seeds()) {
        Module l = cross_effect(restrict_degree(random_gamma_module(s), 4));
        std::mt19937_64 rng(s);
        Module l2 = conjugate_randomly(l, rng);
        CHECK(same_module(cross_effect(sharp(l2)), l2));
    }
}

TEST_CASE("sharp after cross-effect is naturally isomorphic to the identity")
{
    for (auto s : corpus_seeds()) {
        Module f = restrict_degree(random_gamma_module(s), 4);
        CHECK(is_isomorphism(f, sharp(cross_effect(f)), sharp_cross_iso(f)));
    }
}

TEST_CASE("theta is a split injection of Omega modules")
{
    for (auto s : corpus_seeds()) {
        Module l = cross_effect(restrict_degree(random_gamma_module(s), 4));
        Module sl = sharp(l);
        auto th = theta(l);
        for (int n = 0; n <= l.N; ++n) {
            // the X = n component gives an integral left inverse
            IMat proj = th[n].transpose();
            CHECK(proj * th[n] == IMat::Identity(l.rank(n), l.rank(n)));
        }
        for (auto& g : generators_up_to(l.N, Spine::Omega)) {
            FinMap f = generator_map(g);
            CHECK(sl.eval_dense(f) * th[f.src] == th[f.tgt] * l.eval_dense(f));
        }
    }
}

TEST_CASE("right theta is a split surjection")
{
    Module l = dual_module(cross_effect(restrict_degree(random_gamma_module(41), 4)));
    auto th = theta(l);
    for (int n = 0; n <= l.N; ++n)
        CHECK(th[n] * th[n].transpose() == IMat::Identity(l.rank(n), l.rank(n)));
}

TEST_CASE("json round trip")
{
    for (auto s : {11, 62, 79}) {
        Module f = random_gamma_module(s);
        json j = module_to_json(f);
        j["schema_version"] = kSchemaVersion;
        CHECK(same_module(module_from_json(j), f));
    }
}

TEST_CASE("three routes agree on part of the corpus")
{
    // the full corpus runs in the acceptance binary
    for (auto s : {11, 62, 79}) {
        Module f = random_gamma_module(s);
        auto red = homology(rw_complex(f, 3, true, kField).mc.complex);
        auto bar = stable_pi_bar(f, 3, kField);
        auto xi = stable_pi_all(f, 3, kField);
        for (int n = 0; n <= 3; ++n) {
            CHECK(at(red, n) == at(xi, n));
            CHECK(at(bar, n) == at(xi, n));
        }
    }
}

TEST_CASE("stable homotopy is invariant under change of basis and additive")
{
    Module a = random_gamma_module(62), b = random_gamma_module(79);
    std::mt19937_64 rng(3);
    auto pa = stable_pi_all(a, 2, Coeff::Z()), pb = stable_pi_all(b, 2, Coeff::Z());
    auto pc = stable_pi_all(conjugate_randomly(a, rng), 2, Coeff::Z());
    auto ps = stable_pi_all(direct_sum(a, b), 2, Coeff::Z());
    for (int n = 0; n <= 2; ++n) {
        CHECK(pa[n] == pc[n]);
        CHECK(ps[n].free_rank == pa[n].free_rank + pb[n].free_rank);
        CHECK(ps[n].torsion.size() == pa[n].torsion.size() + pb[n].torsion.size());
    }
}

TEST_CASE("reduced inclusion is a quasi-isomorphism on small modules")
{
    for (auto s : {62, 79, 126}) {
        Module f = truncate_height(random_gamma_module(s), 4);
        auto red = homology(rw_complex(f, 3, true, kField).mc.complex);
        auto full = homology(rw_complex(f, 3, false, kField).mc.complex);
        for (int n = 0; n <= 3; ++n)
            CHECK(at(red, n) == at(full, n));
    }
}

TEST_CASE("diagonal collapse")
{
    for (auto s : {11, 37, 62}) {
        auto r = diagonal_collapse_check(random_gamma_module(s), 3, kField);
        CHECK(r.pass());
    }
}

TEST_CASE("results do not depend on the thread count")
{
    Module f = random_gamma_module(41);
    set_thread_count(1);
    auto one = stable_pi_all(f, 3, Coeff::Z());
    set_thread_count(3);
    auto three = stable_pi_all(f, 3, Coeff::Z());
    set_thread_count(0);
    CHECK(one == three);
}
