#pragma once

#include <functional>
#include <string>
#include <vector>

#include "einf/common.hpp"

namespace einf {

// A map of spine objects. Points are 1..src; img[x-1] is the image of x,
// with 0 the basepoint of a Gamma object. Omega maps never take the value 0.
struct FinMap {
    int src = 0;
    int tgt = 0;
    std::vector<int> img;

    int operator()(int x) const { return x == 0 ? 0 : img[x - 1]; }
    auto operator<=>(const FinMap&) const = default;
    bool operator==(const FinMap&) const = default;
};

using GammaMap = FinMap;
using OmegaMap = FinMap;

struct FinMapHash {
    size_t operator()(const FinMap& f) const;
};

std::string to_string(const FinMap& f);

FinMap identity_map(int n);
FinMap make_map(int src, int tgt, std::vector<int> img);
bool is_identity(const FinMap& f);
bool is_surjection(const FinMap& f);
bool is_injective(const FinMap& f);
bool is_bijection(const FinMap& f);
bool hits_basepoint(const FinMap& f);

// f after g
FinMap compose(const FinMap& f, const FinMap& g);
FinMap inverse_permutation(const FinMap& p);

std::vector<FinMap> enumerate_surjections(int n, int m);
std::vector<FinMap> enumerate_gamma_maps(int n, int m);
std::vector<FinMap> enumerate_permutations(int n);
// surjections n -> m with blocks numbered in order of their least element
std::vector<FinMap> enumerate_set_partitions(int n);
bool is_canonical_surjection(const FinMap& f);
// the canonical surjection with the same fibres
FinMap canonical_form(const FinMap& f);

struct Generator {
    enum Kind { Perm, Lambda, Omega, Tau };
    Kind kind;
    int n;   // Perm: s_i on [n]; Lambda: [n]->[n+1]; Omega, Tau: [n+1]->[n]
    int i = 0;
    bool operator==(const Generator&) const = default;
};

std::string to_string(const Generator& g);
FinMap generator_map(const Generator& g);

// phi = w[0] o w[1] o ... o w[last]
std::vector<Generator> gamma_word(const FinMap& phi);
std::vector<Generator> permutation_word(const FinMap& p);

struct GammaFactorization {
    FinMap pre_iso;
    FinMap tau_part;
    FinMap omega_part;
    FinMap lambda_part;
    FinMap post_iso;

    FinMap recompose() const;
};

GammaFactorization factorize_gamma(const FinMap& phi);

}  // namespace einf
