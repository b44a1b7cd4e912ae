#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "einf/common.hpp"

namespace einf {

enum class Ring { Z, Q, Fp };

struct Coeff {
    Ring ring = Ring::Z;
    i64 p = 0;

    static Coeff Z() { return {Ring::Z, 0}; }
    static Coeff Q() { return {Ring::Q, 0}; }
    static Coeff Fp(i64 p);
    static Coeff parse(const std::string& s);  // "z", "q", "fp:<prime>"
    std::string name() const;
    bool is_field() const { return ring != Ring::Z; }
    bool operator==(const Coeff&) const = default;
};

using SparseVec = std::vector<std::pair<int, i64>>;

// Compressed sparse columns; rows sorted within each column, no stored zeros.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<i64> colptr{0};
    std::vector<int> rowind;
    std::vector<i64> val;

    SparseMatrix() = default;
    SparseMatrix(int r, int c);  // zero matrix

    // entries may be unsorted and repeated; they are merged
    void append_column(SparseVec entries);
    void append_columns(const SparseMatrix& block);
    i64 nnz() const { return colptr.back(); }
    SparseVec column(int j) const;
    i64 at(int r, int c) const;
    bool is_zero() const { return nnz() == 0; }

    static SparseMatrix from_dense(const std::vector<std::vector<i64>>& rows_of);
    std::vector<std::vector<i64>> to_dense() const;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix transpose(const SparseMatrix& a);
SparseMatrix reduce_mod(const SparseMatrix& a, i64 p);
// rows and columns kept in the given order
SparseMatrix submatrix(const SparseMatrix& a, const std::vector<int>& rows, const std::vector<int>& cols);
bool is_zero_mod(const SparseMatrix& a, const Coeff& c);

using DenseZ = std::vector<std::vector<mpz_class>>;

DenseZ to_dense_z(const SparseMatrix& a);
DenseZ identity_z(int n);
DenseZ multiply(const DenseZ& a, const DenseZ& b);

struct SmithForm {
    DenseZ U, D, V;  // U * M * V = D
};

SmithForm smith_normal_form(const DenseZ& m);
std::vector<mpz_class> invariant_factors(const DenseZ& m);

struct AbelianGroupInvariants {
    i64 free_rank = 0;
    std::vector<mpz_class> torsion;  // d1 | d2 | ..., each > 1

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool is_free() const { return torsion.empty(); }
    std::string to_string(const Coeff& c = Coeff::Z()) const;
    bool operator==(const AbelianGroupInvariants& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
};

struct RankInfo {
    i64 rank = 0;
    std::vector<mpz_class> torsion;  // non-unit invariant factors (Z only)
};

// Rank and non-unit invariant factors. Over Fp entries are reduced first.
// stop_at > 0 ends elimination once that rank is reached.
RankInfo rank_info(const SparseMatrix& m, const Coeff& c, i64 stop_at = 0);
i64 rank(const SparseMatrix& m, const Coeff& c);

// Saturated Z-kernel in Hermite form: rows of the result are basis vectors,
// leading entries positive and strictly increasing in position, entries
// above each leading entry reduced into [0, lead).
std::vector<std::vector<mpz_class>> kernel_hnf(const SparseMatrix& m);
std::vector<std::vector<mpz_class>> hermite_rows(std::vector<std::vector<mpz_class>> rows);
// coordinates of v in a Hermite basis; fails if v is outside the lattice
std::vector<mpz_class> hermite_coordinates(const std::vector<std::vector<mpz_class>>& basis, std::vector<mpz_class> v);
std::vector<int> hermite_pivots(const std::vector<std::vector<mpz_class>>& basis);

AbelianGroupInvariants homology_at(const SparseMatrix& d_in, const SparseMatrix& d_out, const Coeff& c = Coeff::Z());

// Homological complex: d.at(q) maps degree q to degree q-1.
// Cochain complexes are stored with degrees negated (see cohomological flag).
struct ChainComplex {
    Coeff coeff;
    std::map<int, i64> dims;
    std::map<int, SparseMatrix> d;
    bool cohomological = false;
    bool augmented = false;

    ChainComplex() = default;
    ChainComplex(Coeff c, std::map<int, i64> dims, std::map<int, SparseMatrix> d, bool check = true);

    i64 dim(int q) const;
    SparseMatrix boundary(int q) const;  // zero matrix of the right shape when absent
    int min_degree() const;
    int max_degree() const;
    void check_square_zero() const;
    // cochain view: degree q of the cochain complex is stored at -q
    i64 codim(int q) const { return dim(-q); }
};

ChainComplex make_cochain_complex(Coeff c, std::map<int, i64> dims, std::map<int, SparseMatrix> delta, bool check = true);

std::map<int, AbelianGroupInvariants> homology(const ChainComplex& c);
AbelianGroupInvariants homology_in_degree(const ChainComplex& c, int q);
// cohomology of a complex made by make_cochain_complex
std::map<int, AbelianGroupInvariants> cohomology(const ChainComplex& c);
AbelianGroupInvariants cohomology_in_degree(const ChainComplex& c, int q);
i64 euler_characteristic(const ChainComplex& c);

std::string export_complex(const ChainComplex& c);

}  // namespace einf
