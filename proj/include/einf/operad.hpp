#pragma once

#include <optional>
#include <vector>

#include "einf/simplicial.hpp"

namespace einf {

// A set partition of 1..n stored as its restricted-growth string
// (blocks numbered in order of least element).
struct SetPartition {
    FinMap rgs;

    int n() const { return rgs.src; }
    int blocks() const { return rgs.tgt; }
    std::vector<std::vector<int>> block_list() const;
    bool has_block(const std::vector<int>& b) const;
    auto operator<=>(const SetPartition&) const = default;
};

// finer-or-equal: a refines b (discrete partition initial, indiscrete final)
bool refines(const SetPartition& a, const SetPartition& b);
SetPartition act(const FinMap& sigma, const SetPartition& p);

struct PartitionComplex {
    int n = 0;
    std::vector<SetPartition> elements;  // non-discrete partitions, lexicographic
    std::vector<char> nontrivial;
    SemiSimplicialSet P;
    SemiSimplicialSet boundary;
    std::vector<int> boundary_to_P_vertex;  // vertex index of boundary in elements
};

PartitionComplex partition_complex(int n);
std::map<int, AbelianGroupInvariants> partition_boundary_homology(int n, const Coeff& c = Coeff::Z());
// reduced homology of P_n / dP_n
std::map<int, AbelianGroupInvariants> partition_quotient_homology(int n, const Coeff& c = Coeff::Z());

struct Face {
    std::vector<int> M;  // the block grafted below; N is the complement
    std::vector<std::vector<char>> cells;  // per dimension, membership
};

// Cell structure on the boundary of tree space: internal edge lengths in
// [0,1] with at least one edge of length 1. A cell is a tree (a pairwise
// compatible set of blocks) together with the nonempty set of its edges of
// length 1; its dimension is the number of remaining edges.
struct FaceDecomposition {
    int n = 0;
    std::vector<int> blocks;  // bitmasks of subsets with 2 <= size <= n-1
    std::vector<std::vector<std::pair<std::vector<int>, std::vector<int>>>> cells;  // (tree, full-length edges)
    ChainComplex complex;
    std::vector<Face> faces;  // face M: cells where the edge M has length 1
    std::vector<std::vector<char>> double_boundary;  // cells with two edges of length 1
};

FaceDecomposition face_decomposition(int n);

struct DelDelReport {
    int n = 0;
    int bar_level = 0;
    std::map<int, AbelianGroupInvariants> lhs;  // H(dT layer / ddT layer)
    i64 lhs_rank = 0;
    i64 rhs_rank = 0;
    i64 layer_count = 0;  // nondegenerate bar simplices at this level
    bool match = false;
};

// decompositions: the blocks M to sum over on the right-hand side; all
// 2 <= |M| <= n-1 when omitted
DelDelReport deldel_wedge_check(int n, int bar_level = 0, std::optional<std::vector<std::vector<int>>> decompositions = std::nullopt);

struct TreeFiltrationQuotient {
    int k = 0;
    int p = 0;
    ChainComplex complex;
    std::map<int, std::vector<std::pair<std::vector<int>, std::vector<int>>>> provenance;  // (P chain, Q tuple)
    SigmaAction action;
};

TreeFiltrationQuotient tree_filtration_quotient(int k, int p, const Coeff& c = Coeff::Z());

}  // namespace einf
