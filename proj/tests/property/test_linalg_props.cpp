#include <doctest.h>

#include <random>

#include "einf/intlinalg.hpp"

using namespace einf;

namespace {

DenseZ random_matrix(int r, int c, std::mt19937_64& rng, int bound = 4)
{
    std::uniform_int_distribution<int> d(-bound, bound);
    DenseZ m(r, std::vector<mpz_class>(c));
    for (auto& row : m)
        for (auto& x : row)
            x = d(rng);
    return m;
}

// fraction-free determinant
mpz_class det(DenseZ a)
{
    int n = int(a.size());
    mpz_class prev = 1, sign = 1;
    for (int k = 0; k < n; ++k) {
        int p = k;
        while (p < n && a[p][k] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != k) {
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (int(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// gcd of all k x k minors
mpz_class minor_gcd(const DenseZ& m, int k)
{
    int r = int(m.size()), c = r ? int(m[0].size()) : 0;
    std::vector<std::vector<int>> rs, cs;
    std::vector<int> cur;
    subsets(r, k, 0, cur, rs);
    subsets(c, k, 0, cur, cs);
    mpz_class g = 0;
    for (auto& ri : rs)
        for (auto& ci : cs) {
            DenseZ s(k, std::vector<mpz_class>(k));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    s[i][j] = m[ri[i]][ci[j]];
            mpz_class d = det(s);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        }
    return g;
}

SparseMatrix to_sparse(const DenseZ& m, int cols)
{
    std::vector<std::vector<i64>> rows;
    for (auto& r : m) {
        rows.emplace_back();
        for (auto& x : r)
            rows.back().push_back(x.get_si());
    }
    if (rows.empty())
        return SparseMatrix(0, cols);
    return SparseMatrix::from_dense(rows);
}

// random complex C2 -> C1 -> C0 with d1 d2 = 0: d2 = K * R for K spanning ker d1
ChainComplex random_complex(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> dim(1, 5);
    int c0 = dim(rng), c1 = dim(rng), c2 = dim(rng);
    DenseZ d1 = random_matrix(c0, c1, rng, 2);
    for (auto& row : d1)
        if (rng() % 3 == 0)
            for (auto& x : row)
                x *= 2;
    SparseMatrix s1 = to_sparse(d1, c1);
    auto ker = kernel_hnf(s1);
    DenseZ d2(c1, std::vector<mpz_class>(c2));
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int j = 0; j < c2; ++j)
        for (auto& v : ker) {
            mpz_class a = coef(rng);
            for (int i = 0; i < c1; ++i)
                d2[i][j] += a * v[i];
        }
    return ChainComplex(Coeff::Z(), {{0, c0}, {1, c1}, {2, c2}}, {{1, s1}, {2, to_sparse(d2, c2)}});
}

}  // namespace

TEST_CASE("Smith form: U M V = D and invariant factors against minors")
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> size(1, 6);
    for (int trial = 0; trial < 60; ++trial) {
        int r = size(rng), c = size(rng);
        if (r * c > 20)
            c = std::max(1, 20 / r);
        DenseZ m = random_matrix(r, c, rng);
        if (trial % 4 == 0)  // force some rank deficiency
            m[0] = m[r - 1];
        SmithForm s = smith_normal_form(m);
        REQUIRE(multiply(multiply(s.U, m), s.V) == s.D);
        CHECK(abs(det(s.U)) == 1);
        CHECK(abs(det(s.V)) == 1);
        auto f = invariant_factors(m);
        mpz_class prod = 1;
        for (int k = 1; k <= std::min(r, c); ++k) {
            mpz_class g = minor_gcd(m, k);
            if (k <= int(f.size())) {
                prod *= f[k - 1];
                CHECK(abs(prod) == g);
            }
            else
                CHECK(g == 0);
        }
    }
}

TEST_CASE("homology over Q has the free ranks of homology over Z")
{
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 80; ++trial) {
        ChainComplex z = random_complex(rng);
        ChainComplex q = z;
        q.coeff = Coeff::Q();
        auto hz = homology(z), hq = homology(q);
        for (int n = 0; n <= 2; ++n) {
            CHECK(hz[n].free_rank == hq[n].free_rank);
            CHECK(hq[n].torsion.empty());
        }
        i64 alt = 0;
        for (int n = 0; n <= 2; ++n)
            alt += (n % 2 ? -1 : 1) * hq[n].free_rank;
        CHECK(euler_characteristic(z) == alt);
    }
}

TEST_CASE("ranks over F_p agree with universal coefficients")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        ChainComplex z = random_complex(rng);
        ChainComplex f = z;
        f.coeff = Coeff::Fp(2);
        auto hz = homology(z), hf = homology(f);
        for (int n = 0; n <= 2; ++n) {
            // dim H_n(C; F_2) = rank H_n + #even torsion in H_n + #even torsion in H_{n-1}
            auto even = [&](int k) {
                i64 e = 0;
                for (auto& t : hz[k].torsion)
                    e += mpz_even_p(t.get_mpz_t()) ? 1 : 0;
                return e;
            };
            i64 want = hz[n].free_rank + even(n) + (n > 0 ? even(n - 1) : 0);
            CHECK(hf[n].free_rank == want);
        }
    }
}

TEST_CASE("saturated kernels")
{
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        DenseZ m = random_matrix(3, 6, rng, 3);
        SparseMatrix s = to_sparse(m, 6);
        auto ker = kernel_hnf(s);
        CHECK(i64(ker.size()) == 6 - rank(s, Coeff::Q()));
        for (auto& v : ker)
            for (int i = 0; i < 3; ++i) {
                mpz_class acc = 0;
                for (int j = 0; j < 6; ++j)
                    acc += m[i][j] * v[j];
                CHECK(acc == 0);
            }
        // saturation: the kernel lattice has no torsion cokernel
        if (!ker.empty()) {
            DenseZ kd(ker.begin(), ker.end());
            auto f = invariant_factors(kd);
            for (auto& x : f)
                CHECK(abs(x) == 1);
        }
    }
}
