#pragma once

#include <random>
#include <string>
#include <vector>

#include "einf/gamma_mod.hpp"

namespace einf::testing {

// Random unimodular integer matrix with its inverse: a product of
// elementary row operations and sign flips.
inline std::pair<IMat, IMat> random_unimodular(int n, std::mt19937_64& rng, int steps = 6)
{
    IMat a = IMat::Identity(n, n), inv = IMat::Identity(n, n);
    if (n < 2)
        return {a, inv};
    std::uniform_int_distribution<int> pick(0, n - 1), mult(-2, 2);
    for (int s = 0; s < steps; ++s) {
        int i = pick(rng), j = pick(rng);
        if (i == j) {
            a.row(i) *= -1;
            inv.col(i) *= -1;
            continue;
        }
        i64 c = mult(rng);
        a.row(i) += c * a.row(j);
        inv.col(j) -= c * inv.col(i);
    }
    return {a, inv};
}

inline Module conjugate_randomly(const Module& m, std::mt19937_64& rng)
{
    std::vector<IMat> b, b_inv;
    for (int n = 0; n <= m.N; ++n) {
        auto [u, v] = random_unimodular(m.rank(n), rng);
        b.push_back(u);
        b_inv.push_back(v);
    }
    return change_basis(m, b, b_inv);
}

inline SigmaRep small_rep(int n, std::mt19937_64& rng)
{
    if (n <= 1)
        return trivial_rep(n == 0 ? 1 : n);
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
        return trivial_rep(n);
    case 1:
        return sign_rep(n);
    default:
        return n <= 3 ? regular_rep(n) : natural_rep(n);
    }
}

// Gamma modules up to degree N = 5 whose cross-effect vanishes above 4:
// sums of one-line modules and truncated representables, then a random
// unimodular change of basis in every degree.
inline Module random_gamma_module(std::uint64_t seed, Coeff c = Coeff::Z())
{
    std::mt19937_64 rng(seed);
    const int N = 5;
    int pieces = std::uniform_int_distribution<int>(1, 2)(rng);
    Module sum = zero_module(Spine::Gamma, Variance::Left, N, c);
    for (int i = 0; i < pieces; ++i) {
        Module piece = sum;
        if (std::uniform_int_distribution<int>(0, 2)(rng) < 2) {
            int n = std::uniform_int_distribution<int>(1, 3)(rng);
            bool induced = n >= 2 && std::uniform_int_distribution<int>(0, 1)(rng);
            piece = one_line_module(n, small_rep(induced ? n - 1 : n, rng), induced, N, Variance::Left, c);
        }
        else {
            int n = std::uniform_int_distribution<int>(2, 3)(rng);
            piece = sharp(truncated_representable(n, 1, N, c));
        }
        sum = direct_sum(sum, piece);
    }
    Module out = conjugate_randomly(sum, rng);
    out.name = "random-" + std::to_string(seed);
    return out;
}

inline std::vector<Generator> generators_up_to(int N, Spine spine)
{
    std::vector<Generator> out;
    for (int n = 0; n <= N; ++n) {
        for (int i = 1; i < n; ++i)
            out.push_back({Generator::Perm, n, i});
        if (n >= 1 && n < N)
            out.push_back({Generator::Omega, n});
        if (spine == Spine::Gamma && n < N) {
            out.push_back({Generator::Lambda, n});
            out.push_back({Generator::Tau, n});
        }
    }
    return out;
}

// equal ranks and equal matrices on every generator
inline bool same_module(const Module& a, const Module& b)
{
    if (a.ranks != b.ranks || a.spine != b.spine || a.variance != b.variance)
        return false;
    for (auto& g : generators_up_to(a.N, a.spine)) {
        FinMap f = generator_map(g);
        if (a.eval_dense(f) != b.eval_dense(f))
            return false;
    }
    return true;
}

// iso[n]: b[n] -> a[n] is invertible over Z and intertwines every generator
inline bool is_isomorphism(const Module& a, const Module& b, const std::vector<IMat>& iso)
{
    for (int n = 0; n <= a.N; ++n) {
        if (iso[n].rows() != a.rank(n) || iso[n].cols() != b.rank(n))
            return false;
        if (a.rank(n) == 0)
            continue;
        RankInfo ri = rank_info(to_sparse(iso[n]), Coeff::Z());
        if (ri.rank != a.rank(n) || !ri.torsion.empty())
            return false;
    }
    for (auto& g : generators_up_to(a.N, a.spine)) {
        FinMap f = generator_map(g);
        if (a.eval_dense(f) * iso[f.src] != iso[f.tgt] * b.eval_dense(f))
            return false;
    }
    return true;
}

inline std::vector<std::uint64_t> corpus_seeds()
{
    return {11, 23, 37, 41, 58, 62, 79, 83, 97, 104, 115, 126};
}

}  // namespace einf::testing
