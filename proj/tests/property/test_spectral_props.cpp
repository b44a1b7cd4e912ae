#include <doctest.h>

#include "../common/corpus.hpp"
#include "einf/spectral.hpp"

using namespace einf;

namespace {

const Coeff kField = Coeff::Fp(1000003);

}  // namespace

TEST_CASE("E2 entries agree with cochains of the full complex")
{
    GradedModule g;
    g.members.emplace_back(0, one_line_module(2, sign_rep(2), false, 5, Variance::Right));
    g.members.emplace_back(1, one_line_module(3, trivial_rep(2), true, 5, Variance::Right));
    g.members.emplace_back(2, dual_module(sharp(cross_effect(einf::testing::random_gamma_module(62)))));
    SpectralPage pg = e2_table(g, 3, 4, Coeff::Z());
    for (auto& [j, m] : g.members) {
        auto co = cohomology(rw_cochains(m, 2, Coeff::Z()));
        for (int p = 1; p <= 3; ++p) {
            auto it = co.find(p - 1);
            AbelianGroupInvariants want = it == co.end() ? AbelianGroupInvariants{} : it->second;
            CHECK_MESSAGE((pg.table[{p, j + 2}] == want), "p=" << p << " q=" << j + 2);
        }
    }
}

TEST_CASE("zero graded module gives a zero table")
{
    GradedModule g;
    for (int j = 0; j <= 2; ++j)
        g.members.emplace_back(j, zero_module(Spine::Gamma, Variance::Right, 5));
    SpectralPage pg = e2_table(g, 4, 4, Coeff::Z());
    CHECK(pg.support().empty());
    auto rep = obstruction_groups(g, 3, Coeff::Z());
    CHECK(rep.existence_verdict == "unobstructed");
    CHECK(rep.uniqueness_verdict == "unique");
}

TEST_CASE("convergence finiteness")
{
    GradedModule fp;
    fp.members.emplace_back(0, one_line_module(2, trivial_rep(2), false, 4, Variance::Right, Coeff::Fp(3)));
    CHECK(convergence_finiteness(fp));
    GradedModule z;
    z.members.emplace_back(0, one_line_module(2, trivial_rep(2), false, 4, Variance::Right));
    CHECK(!convergence_finiteness(z));
    CHECK(convergence_finiteness(GradedModule{}));
}

TEST_CASE("bicomplex sequence: support and first page")
{
    for (auto s : {11, 62, 126}) {
        Module f = einf::testing::random_gamma_module(s);
        int bound = 0;
        Module l = cross_effect(f);
        for (int k = 0; k <= l.N; ++k)
            if (l.rank(k))
                bound = k;
        BicomplexResult b = bicomplex_ss(f, 3, 3, kField);
        CHECK(b.tor_matches);
        for (auto& pg : b.pages)
            for (auto& [st, g] : pg.table) {
                if (g.is_zero())
                    continue;
                CHECK(st.second >= 0);
                CHECK(st.first + 1 <= bound);
            }
        // pages shrink and the last one carries the abutment
        for (size_t r = 1; r < b.pages.size(); ++r) {
            i64 prev = 0, cur = 0;
            for (auto& [st, g] : b.pages[r - 1].table)
                prev += g.free_rank;
            for (auto& [st, g] : b.pages[r].table)
                cur += g.free_rank;
            CHECK(cur <= prev);
        }
        auto pi = stable_pi_all(f, 3, kField);
        for (int n = 0; n <= 3; ++n) {
            auto it = b.abutment.find(n);
            CHECK((it == b.abutment.end() ? 0 : it->second) == pi[n].free_rank);
        }
    }
}

TEST_CASE("page ranks are consistent under the level filtration")
{
    // E^0 sums to the complex and E^infinity sums to the homology
    Module f = einf::testing::random_gamma_module(37);
    RWComplex rw = rw_complex(f, 3, true, kField);
    FilteredComplex fc = diagonal_filtration(rw);
    auto e0 = page_dims(fc, 0, 3), einf_ = page_dims(fc, -1, 3);
    auto h = homology(rw.mc.complex);
    for (int n = 0; n <= 3; ++n) {
        i64 a = 0, b = 0;
        for (auto& [pn, v] : e0)
            if (pn.second == n)
                a += v;
        for (auto& [pn, v] : einf_)
            if (pn.second == n)
                b += v;
        CHECK(a == rw.mc.complex.dim(n));
        CHECK(b == h[n].free_rank);
    }
}
