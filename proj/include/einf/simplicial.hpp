#pragma once

#include <functional>
#include <map>
#include <vector>

#include "einf/fincat.hpp"
#include "einf/intlinalg.hpp"
#include "einf/sigma_rep.hpp"

namespace einf {

// Action of Sigma_k on a graded basis: act[q][g][s] = (image index, sign),
// g indexing enumerate_permutations(k).
struct SigmaAction {
    int k = 0;
    std::vector<FinMap> elements;
    std::map<int, std::vector<std::vector<std::pair<int, int>>>> act;
};

// Nondegenerate simplices with face tables. A face of -1 is degenerate and
// vanishes in normalized chains.
struct SemiSimplicialSet {
    std::vector<std::vector<std::vector<int>>> labels;  // labels[d][s]
    std::vector<std::vector<std::vector<int>>> faces;   // faces[d][s][i], d >= 1
    SigmaAction action;                                 // optional, act keyed by dimension

    int dim() const { return int(labels.size()) - 1; }
    size_t count(int d) const { return d >= 0 && d < int(labels.size()) ? labels[d].size() : 0; }
    void check_face_identities() const;
    void check_action() const;
};

struct FilteredComplex {
    ChainComplex complex;
    std::map<int, std::vector<int>> level;

    void check() const;
};

struct TensorComplex {
    ChainComplex complex;
    std::map<int, std::vector<std::pair<int, int>>> labels;  // degree -> (index in A, index in B)
    std::map<int, std::vector<int>> left_degree;
};

SemiSimplicialSet nerve_of_poset(int elements, const std::function<bool(int, int)>& less, int max_dim);
SemiSimplicialSet nerve_of_groupoid_skeleton(int k, int p);
// the flag complex of sd(X): chains of simplices under the face relation
SemiSimplicialSet barycentric_subdivision(const SemiSimplicialSet& x);
SemiSimplicialSet flag_subcomplex(const SemiSimplicialSet& x, const std::vector<char>& vertex_in);

ChainComplex chain_complex(const SemiSimplicialSet& x, const Coeff& c = Coeff::Z(), bool augmented = false);
// relative chains C(X)/C(A) where A is given as simplex subsets per dimension
ChainComplex relative_chain_complex(const SemiSimplicialSet& x, const std::vector<std::vector<char>>& sub, const Coeff& c = Coeff::Z());

TensorComplex prism_product(const ChainComplex& a, const ChainComplex& b);

struct QuotientResult {
    ChainComplex complex;
    std::map<int, std::vector<int>> kept;  // new index -> old index
};

QuotientResult quotient_complex(const ChainComplex& c, const std::map<int, std::vector<int>>& sub);

// Hom over Sigma_k from a complex with free action into a representation
ChainComplex equivariant_cochains(const ChainComplex& c, const SigmaAction& a, const SigmaRep& m);
std::vector<i64> lefschetz_character(const ChainComplex& c, const SigmaAction& a);

}  // namespace einf
