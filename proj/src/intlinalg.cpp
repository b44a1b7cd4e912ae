#include "einf/intlinalg.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace einf {

Coeff Coeff::Fp(i64 p)
{
    if (p < 2 || p > (i64(1) << 31))
        fail("prime out of range");
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0)
            fail("fp coefficient needs a prime, got " + std::to_string(p));
    return {Ring::Fp, p};
}

Coeff Coeff::parse(const std::string& s)
{
    if (s == "z" || s == "Z")
        return Z();
    if (s == "q" || s == "Q")
        return Q();
    if (s.rfind("fp:", 0) == 0) {
        i64 p = 0;
        try {
            p = std::stoll(s.substr(3));
        }
        catch (...) {
            throw Error(ErrorKind::Usage, "bad coefficient tag " + s);
        }
        return Fp(p);
    }
    throw Error(ErrorKind::Usage, "coefficient must be z, q or fp:<prime>, got " + s);
}

std::string Coeff::name() const
{
    switch (ring) {
    case Ring::Z:
        return "Z";
    case Ring::Q:
        return "Q";
    case Ring::Fp:
        return "F_" + std::to_string(p);
    }
    return "?";
}

SparseMatrix::SparseMatrix(int r, int c) : rows(r), cols(c), colptr(c + 1, 0) {}

void SparseMatrix::append_column(SparseVec e)
{
    std::sort(e.begin(), e.end(), [](auto& a, auto& b) { return a.first < b.first; });
    size_t i = 0;
    while (i < e.size()) {
        int r = e[i].first;
        i64 v = 0;
        while (i < e.size() && e[i].first == r)
            v += e[i++].second;
        if (v) {
            if (r < 0 || r >= rows)
                internal_fail("row index out of range in append_column");
            rowind.push_back(r);
            val.push_back(v);
        }
    }
    colptr.push_back(i64(rowind.size()));
    ++cols;
}

void SparseMatrix::append_columns(const SparseMatrix& b)
{
    if (b.rows != rows)
        internal_fail("append_columns: row mismatch");
    i64 base = nnz();
    rowind.insert(rowind.end(), b.rowind.begin(), b.rowind.end());
    val.insert(val.end(), b.val.begin(), b.val.end());
    for (int j = 0; j < b.cols; ++j)
        colptr.push_back(base + b.colptr[j + 1]);
    cols += b.cols;
}

SparseVec SparseMatrix::column(int j) const
{
    SparseVec v;
    for (i64 k = colptr[j]; k < colptr[j + 1]; ++k)
        v.emplace_back(rowind[k], val[k]);
    return v;
}

i64 SparseMatrix::at(int r, int c) const
{
    auto b = rowind.begin() + colptr[c], e = rowind.begin() + colptr[c + 1];
    auto it = std::lower_bound(b, e, r);
    if (it != e && *it == r)
        return val[it - rowind.begin()];
    return 0;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<i64>>& a)
{
    int r = int(a.size()), c = r ? int(a[0].size()) : 0;
    SparseMatrix m(r, 0);
    for (int j = 0; j < c; ++j) {
        SparseVec v;
        for (int i = 0; i < r; ++i)
            if (a[i][j])
                v.emplace_back(i, a[i][j]);
        m.append_column(std::move(v));
    }
    return m;
}

std::vector<std::vector<i64>> SparseMatrix::to_dense() const
{
    std::vector<std::vector<i64>> a(rows, std::vector<i64>(cols, 0));
    for (int j = 0; j < cols; ++j)
        for (i64 k = colptr[j]; k < colptr[j + 1]; ++k)
            a[rowind[k]][j] = val[k];
    return a;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.cols != b.rows)
        internal_fail("multiply: shape mismatch");
    SparseMatrix c(a.rows, 0);
    std::vector<__int128> acc(a.rows, 0);
    std::vector<int> touched;
    for (int j = 0; j < b.cols; ++j) {
        for (i64 k = b.colptr[j]; k < b.colptr[j + 1]; ++k) {
            int m = b.rowind[k];
            __int128 bv = b.val[k];
            for (i64 l = a.colptr[m]; l < a.colptr[m + 1]; ++l) {
                int r = a.rowind[l];
                if (acc[r] == 0)
                    touched.push_back(r);
                acc[r] += bv * a.val[l];
                if (acc[r] == 0)
                    acc[r] = 0;
            }
        }
        SparseVec v;
        for (int r : touched) {
            if (acc[r] != 0) {
                if (acc[r] > INT64_MAX || acc[r] < INT64_MIN)
                    internal_fail("multiply: entry overflow");
                v.emplace_back(r, i64(acc[r]));
            }
            acc[r] = 0;
        }
        touched.clear();
        c.append_column(std::move(v));
    }
    return c;
}

SparseMatrix transpose(const SparseMatrix& a)
{
    std::vector<SparseVec> cols(a.rows);
    for (int j = 0; j < a.cols; ++j)
        for (i64 k = a.colptr[j]; k < a.colptr[j + 1]; ++k)
            cols[a.rowind[k]].emplace_back(j, a.val[k]);
    SparseMatrix t(a.cols, 0);
    for (auto& v : cols)
        t.append_column(std::move(v));
    return t;
}

SparseMatrix reduce_mod(const SparseMatrix& a, i64 p)
{
    SparseMatrix r(a.rows, 0);
    for (int j = 0; j < a.cols; ++j) {
        SparseVec v;
        for (i64 k = a.colptr[j]; k < a.colptr[j + 1]; ++k) {
            i64 x = ((a.val[k] % p) + p) % p;
            if (x)
                v.emplace_back(a.rowind[k], x);
        }
        r.append_column(std::move(v));
    }
    return r;
}

SparseMatrix submatrix(const SparseMatrix& a, const std::vector<int>& rows, const std::vector<int>& cols)
{
    std::vector<int> pos(a.rows, -1);
    for (size_t i = 0; i < rows.size(); ++i)
        pos[rows[i]] = int(i);
    SparseMatrix s(static_cast<int>(rows.size()), 0);
    for (int j : cols) {
        SparseVec v;
        for (i64 k = a.colptr[j]; k < a.colptr[j + 1]; ++k)
            if (pos[a.rowind[k]] >= 0)
                v.emplace_back(pos[a.rowind[k]], a.val[k]);
        s.append_column(std::move(v));
    }
    return s;
}

bool is_zero_mod(const SparseMatrix& a, const Coeff& c)
{
    for (i64 v : a.val)
        if (c.ring == Ring::Fp ? v % c.p != 0 : v != 0)
            return false;
    return true;
}

DenseZ to_dense_z(const SparseMatrix& a)
{
    DenseZ m(a.rows, std::vector<mpz_class>(a.cols, 0));
    for (int j = 0; j < a.cols; ++j)
        for (i64 k = a.colptr[j]; k < a.colptr[j + 1]; ++k)
            m[a.rowind[k]][j] = mpz_class(std::to_string(a.val[k]));
    return m;
}

DenseZ identity_z(int n)
{
    DenseZ m(n, std::vector<mpz_class>(n, 0));
    for (int i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

DenseZ multiply(const DenseZ& a, const DenseZ& b)
{
    size_t r = a.size(), k = b.size(), c = k ? b[0].size() : 0;
    DenseZ m(r, std::vector<mpz_class>(c, 0));
    for (size_t i = 0; i < r; ++i)
        for (size_t l = 0; l < k; ++l)
            if (a[i][l] != 0)
                for (size_t j = 0; j < c; ++j)
                    m[i][j] += a[i][l] * b[l][j];
    return m;
}

namespace {

// Smith form by minimal-absolute-value pivoting with gcd reduction of the pivot row and column.
void smith_in_place(DenseZ& a, DenseZ* U, DenseZ* V)
{
    const size_t R = a.size(), C = R ? a[0].size() : 0;
    auto swap_rows = [&](size_t i, size_t j) {
        std::swap(a[i], a[j]);
        if (U)
            std::swap((*U)[i], (*U)[j]);
    };
    auto swap_cols = [&](size_t i, size_t j) {
        for (auto& row : a)
            std::swap(row[i], row[j]);
        if (V)
            for (auto& row : *V)
                std::swap(row[i], row[j]);
    };
    auto row_addmul = [&](size_t dst, size_t src, const mpz_class& f) {  // row dst -= f * row src
        for (size_t j = 0; j < C; ++j)
            if (a[src][j] != 0)
                a[dst][j] -= f * a[src][j];
        if (U)
            for (size_t j = 0; j < (*U)[0].size(); ++j)
                if ((*U)[src][j] != 0)
                    (*U)[dst][j] -= f * (*U)[src][j];
    };
    auto col_addmul = [&](size_t dst, size_t src, const mpz_class& f) {
        for (size_t i = 0; i < R; ++i)
            if (a[i][src] != 0)
                a[i][dst] -= f * a[i][src];
        if (V)
            for (size_t i = 0; i < V->size(); ++i)
                if ((*V)[i][src] != 0)
                    (*V)[i][dst] -= f * (*V)[i][src];
    };
    for (size_t t = 0; t < std::min(R, C); ++t) {
        while (true) {
            size_t bi = R, bj = C;
            mpz_class best = 0;
            for (size_t i = t; i < R; ++i)
                for (size_t j = t; j < C; ++j)
                    if (a[i][j] != 0 && (bi == R || abs(a[i][j]) < best)) {
                        best = abs(a[i][j]);
                        bi = i;
                        bj = j;
                    }
            if (bi == R)
                return;
            swap_rows(t, bi);
            swap_cols(t, bj);
            bool clean = true;
            for (size_t i = t + 1; i < R; ++i)
                if (a[i][t] != 0) {
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                    row_addmul(i, t, q);
                    if (a[i][t] != 0)
                        clean = false;
                }
            for (size_t j = t + 1; j < C; ++j)
                if (a[t][j] != 0) {
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                    col_addmul(j, t, q);
                    if (a[t][j] != 0)
                        clean = false;
                }
            if (!clean)
                continue;
            size_t bad = R;
            for (size_t i = t + 1; i < R && bad == R; ++i)
                for (size_t j = t + 1; j < C; ++j)
                    if (a[i][j] != 0 && !mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == R)
                break;
            row_addmul(t, bad, -1);
        }
        if (a[t][t] < 0) {
            for (size_t j = 0; j < C; ++j)
                a[t][j] = -a[t][j];
            if (U)
                for (auto& x : (*U)[t])
                    x = -x;
        }
    }
}

}  // namespace

SmithForm smith_normal_form(const DenseZ& m)
{
    SmithForm s;
    s.D = m;
    size_t R = m.size(), C = R ? m[0].size() : 0;
    s.U = identity_z(int(R));
    s.V = identity_z(int(C));
    smith_in_place(s.D, &s.U, &s.V);
    return s;
}

std::vector<mpz_class> invariant_factors(const DenseZ& m)
{
    DenseZ a = m;
    smith_in_place(a, nullptr, nullptr);
    std::vector<mpz_class> out;
    for (size_t i = 0; i < std::min(a.size(), a.empty() ? 0 : a[0].size()); ++i)
        if (a[i][i] != 0)
            out.push_back(a[i][i]);
    return out;
}

std::string AbelianGroupInvariants::to_string(const Coeff& c) const
{
    std::string base = c.ring == Ring::Z ? "Z" : (c.ring == Ring::Q ? "Q" : "F" + std::to_string(c.p));
    std::vector<std::string> parts;
    if (free_rank == 1)
        parts.push_back(base);
    else if (free_rank > 1)
        parts.push_back(base + "^" + std::to_string(free_rank));
    for (auto& t : torsion)
        parts.push_back("Z/" + t.get_str());
    if (parts.empty())
        return "0";
    std::string s = parts[0];
    for (size_t i = 1; i < parts.size(); ++i)
        s += " + " + parts[i];
    return s;
}

namespace {

struct Overflow {};

struct ModOps {
    using T = i64;
    i64 p;
    T from(i64 v) const { return ((v % p) + p) % p; }
    static bool zero(T a) { return a == 0; }
    static bool unit(T a) { return a != 0; }
    T inv(T a) const
    {
        i64 r = 1, b = a, e = p - 2;
        while (e) {
            if (e & 1)
                r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    }
    T mul(T a, T b) const { return a * b % p; }
    // a - f*b
    T submul(T a, T f, T b) const
    {
        i64 r = (a - f * b % p) % p;
        return r < 0 ? r + p : r;
    }
    T neg(T a) const { return a ? p - a : 0; }
    static mpz_class big(T a) { return mpz_class(std::to_string(a)); }
};

struct CheckedOps {
    using T = i64;
    T from(i64 v) const { return v; }
    static bool zero(T a) { return a == 0; }
    static bool unit(T a) { return a == 1 || a == -1; }
    T inv(T a) const { return a; }
    T mul(T a, T b) const
    {
        T r;
        if (__builtin_mul_overflow(a, b, &r))
            throw Overflow{};
        return r;
    }
    T submul(T a, T f, T b) const
    {
        T m = mul(f, b), r;
        if (__builtin_sub_overflow(a, m, &r))
            throw Overflow{};
        return r;
    }
    T neg(T a) const
    {
        if (a == INT64_MIN)
            throw Overflow{};
        return -a;
    }
    static mpz_class big(T a) { return mpz_class(std::to_string(a)); }
};

struct BigOps {
    using T = mpz_class;
    T from(i64 v) const { return mpz_class(std::to_string(v)); }
    static bool zero(const T& a) { return a == 0; }
    static bool unit(const T& a) { return a == 1 || a == -1; }
    T inv(const T& a) const { return a; }
    T mul(const T& a, const T& b) const { return a * b; }
    T submul(const T& a, const T& f, const T& b) const { return a - f * b; }
    T neg(const T& a) const { return -a; }
    static mpz_class big(const T& a) { return a; }
};

// Left-looking elimination with unit pivots. The matrix becomes I_K (+) R after
// unimodular row and column operations; R collects columns without a unit entry.
template <class Ops>
class Eliminator {
public:
    using T = typename Ops::T;
    using Vec = std::vector<std::pair<int, T>>;

    Eliminator(Ops ops, int rows, bool track) : ops_(ops), rows_(rows), track_(track), row_piv_(rows, -1), acc_(rows), mark_(rows, 0) {}

    void push(const SparseVec& col, int j)
    {
        Vec v;
        for (auto& [r, x] : col) {
            T y = ops_.from(x);
            if (!Ops::zero(y))
                v.emplace_back(r, y);
        }
        Vec combo;
        if (track_)
            combo.emplace_back(j, T(1));
        push_vec(std::move(v), std::move(combo));
    }

    // re-reduce residual columns until no new pivots appear
    void settle()
    {
        while (true) {
            size_t before = piv_.size();
            std::vector<Vec> res = std::move(residual_);
            std::vector<Vec> rc = std::move(residual_combo_);
            residual_.clear();
            residual_combo_.clear();
            for (size_t i = 0; i < res.size(); ++i)
                push_vec(std::move(res[i]), track_ ? std::move(rc[i]) : Vec{});
            if (piv_.size() == before)
                break;
        }
    }

    i64 unit_rank() const { return i64(piv_.size()); }
    const std::vector<Vec>& residual() const { return residual_; }
    const std::vector<Vec>& residual_combo() const { return residual_combo_; }
    const std::vector<Vec>& kernel() const { return kernel_; }
    bool is_pivot_row(int r) const { return row_piv_[r] >= 0; }

private:
    void push_vec(Vec v, Vec combo)
    {
        std::priority_queue<int, std::vector<int>, std::greater<int>> heap;
        std::vector<int> touched;
        for (auto& [r, x] : v) {
            acc_[r] = x;
            mark_[r] = 1;
            touched.push_back(r);
            if (row_piv_[r] >= 0)
                heap.push(row_piv_[r]);
        }
        std::map<int, T> cmb;
        if (track_)
            for (auto& [c, x] : combo)
                cmb[c] = x;
        int last = -1;
        while (!heap.empty()) {
            int id = heap.top();
            heap.pop();
            if (id == last)
                continue;
            last = id;
            int pr = piv_row_[id];
            if (Ops::zero(acc_[pr]))
                continue;
            T f = ops_.mul(acc_[pr], piv_inv_[id]);
            for (auto& [r, x] : piv_[id]) {
                if (!mark_[r]) {
                    mark_[r] = 1;
                    touched.push_back(r);
                    acc_[r] = T(0);
                }
                acc_[r] = ops_.submul(acc_[r], f, x);
                int q = row_piv_[r];
                if (q > id && !Ops::zero(acc_[r]))
                    heap.push(q);
            }
            if (track_)
                for (auto& [c, x] : piv_combo_[id]) {
                    T& y = cmb[c];
                    y = ops_.submul(y, f, x);
                }
        }
        Vec out;
        int best = -1;
        for (int r : touched) {
            if (!Ops::zero(acc_[r])) {
                out.emplace_back(r, acc_[r]);
                if (Ops::unit(acc_[r]) && row_piv_[r] < 0 && r > best)
                    best = r;
            }
            acc_[r] = T(0);
            mark_[r] = 0;
        }
        Vec newcombo;
        if (track_)
            for (auto& [c, x] : cmb)
                if (!Ops::zero(x))
                    newcombo.emplace_back(c, x);
        if (out.empty()) {
            if (track_)
                kernel_.push_back(std::move(newcombo));
            return;
        }
        std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
        if (best >= 0) {
            int id = int(piv_.size());
            T pv{};
            for (auto& [r, x] : out)
                if (r == best)
                    pv = x;
            piv_.push_back(std::move(out));
            piv_row_.push_back(best);
            piv_inv_.push_back(ops_.inv(pv));
            row_piv_[best] = id;
            if (track_)
                piv_combo_.push_back(std::move(newcombo));
            return;
        }
        residual_.push_back(std::move(out));
        if (track_)
            residual_combo_.push_back(std::move(newcombo));
    }

    Ops ops_;
    int rows_;
    bool track_;
    std::vector<Vec> piv_;
    std::vector<int> piv_row_;
    std::vector<T> piv_inv_;
    std::vector<Vec> piv_combo_;
    std::vector<int> row_piv_;
    std::vector<T> acc_;
    std::vector<char> mark_;
    std::vector<Vec> residual_, residual_combo_, kernel_;
};

template <class Ops>
DenseZ residual_matrix(const Eliminator<Ops>& e, int rows)
{
    std::vector<int> pos(rows, -1);
    int nr = 0;
    for (auto& col : e.residual())
        for (auto& [r, x] : col)
            if (pos[r] < 0)
                pos[r] = nr++;
    DenseZ R(nr, std::vector<mpz_class>(e.residual().size(), 0));
    for (size_t j = 0; j < e.residual().size(); ++j)
        for (auto& [r, x] : e.residual()[j])
            R[pos[r]][j] = Ops::big(x);
    return R;
}

template <class Ops>
RankInfo rank_with(Ops ops, const SparseMatrix& m, i64 stop_at)
{
    Eliminator<Ops> e(ops, m.rows, false);
    for (int j = 0; j < m.cols; ++j) {
        e.push(m.column(j), j);
        if (stop_at > 0 && e.unit_rank() >= stop_at)
            break;
    }
    e.settle();
    RankInfo info;
    info.rank = e.unit_rank();
    if (!e.residual().empty()) {
        for (auto& f : invariant_factors(residual_matrix(e, m.rows))) {
            ++info.rank;
            if (abs(f) != 1)
                info.torsion.push_back(abs(f));
        }
    }
    std::sort(info.torsion.begin(), info.torsion.end());
    return info;
}

}  // namespace

RankInfo rank_info(const SparseMatrix& m, const Coeff& c, i64 stop_at)
{
    if (c.ring == Ring::Fp)
        return rank_with(ModOps{c.p}, m, stop_at);
    RankInfo r;
    try {
        r = rank_with(CheckedOps{}, m, stop_at);
    }
    catch (Overflow&) {
        r = rank_with(BigOps{}, m, stop_at);
    }
    if (c.ring == Ring::Q)
        r.torsion.clear();
    return r;
}

i64 rank(const SparseMatrix& m, const Coeff& c) { return rank_info(m, c).rank; }

std::vector<std::vector<mpz_class>> hermite_rows(std::vector<std::vector<mpz_class>> rows)
{
    if (rows.empty())
        return rows;
    const size_t n = rows[0].size();
    size_t top = 0;
    std::vector<size_t> lead;
    for (size_t c = 0; c < n && top < rows.size(); ++c) {
        while (true) {
            size_t best = rows.size();
            for (size_t i = top; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])))
                    best = i;
            if (best == rows.size())
                break;
            std::swap(rows[top], rows[best]);
            bool done = true;
            for (size_t i = top + 1; i < rows.size(); ++i)
                if (rows[i][c] != 0) {
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[top][c].get_mpz_t());
                    for (size_t j = c; j < n; ++j)
                        if (rows[top][j] != 0)
                            rows[i][j] -= q * rows[top][j];
                    if (rows[i][c] != 0)
                        done = false;
                }
            if (done)
                break;
        }
        if (rows[top][c] == 0)
            continue;
        if (rows[top][c] < 0)
            for (auto& x : rows[top])
                x = -x;
        for (size_t i = 0; i < top; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[top][c].get_mpz_t());
            if (q != 0)
                for (size_t j = c; j < n; ++j)
                    rows[i][j] -= q * rows[top][j];
        }
        lead.push_back(c);
        ++top;
    }
    rows.resize(top);
    return rows;
}

std::vector<int> hermite_pivots(const std::vector<std::vector<mpz_class>>& basis)
{
    std::vector<int> p;
    for (auto& row : basis) {
        size_t c = 0;
        while (c < row.size() && row[c] == 0)
            ++c;
        p.push_back(int(c));
    }
    return p;
}

std::vector<mpz_class> hermite_coordinates(const std::vector<std::vector<mpz_class>>& basis, std::vector<mpz_class> v)
{
    std::vector<mpz_class> coords(basis.size(), 0);
    auto piv = hermite_pivots(basis);
    for (size_t i = 0; i < basis.size(); ++i) {
        int c = piv[i];
        if (v[c] == 0)
            continue;
        if (!mpz_divisible_p(v[c].get_mpz_t(), basis[i][c].get_mpz_t()))
            fail("vector is not in the lattice");
        mpz_class q = v[c] / basis[i][c];
        coords[i] = q;
        for (size_t j = c; j < v.size(); ++j)
            if (basis[i][j] != 0)
                v[j] -= q * basis[i][j];
    }
    for (auto& x : v)
        if (x != 0)
            fail("vector is not in the lattice");
    return coords;
}

namespace {

template <class Ops>
std::vector<std::vector<mpz_class>> kernel_with(Ops ops, const SparseMatrix& m)
{
    Eliminator<Ops> e(ops, m.rows, true);
    for (int j = 0; j < m.cols; ++j)
        e.push(m.column(j), j);
    e.settle();
    std::vector<std::vector<mpz_class>> rows;
    for (auto& combo : e.kernel()) {
        std::vector<mpz_class> v(m.cols, 0);
        for (auto& [c, x] : combo)
            v[c] = Ops::big(x);
        rows.push_back(std::move(v));
    }
    if (!e.residual().empty()) {
        DenseZ R = residual_matrix(e, m.rows);
        SmithForm s = smith_normal_form(R);
        size_t nc = e.residual().size(), rk = 0;
        for (size_t i = 0; i < std::min(s.D.size(), nc); ++i)
            if (s.D[i][i] != 0)
                ++rk;
        for (size_t k = rk; k < nc; ++k) {
            std::vector<mpz_class> v(m.cols, 0);
            for (size_t j = 0; j < nc; ++j)
                if (s.V[j][k] != 0)
                    for (auto& [c, x] : e.residual_combo()[j])
                        v[c] += s.V[j][k] * Ops::big(x);
            rows.push_back(std::move(v));
        }
    }
    return rows;
}

}  // namespace

std::vector<std::vector<mpz_class>> kernel_hnf(const SparseMatrix& m)
{
    std::vector<std::vector<mpz_class>> rows;
    try {
        rows = kernel_with(CheckedOps{}, m);
    }
    catch (Overflow&) {
        rows = kernel_with(BigOps{}, m);
    }
    return hermite_rows(std::move(rows));
}

AbelianGroupInvariants homology_at(const SparseMatrix& d_in, const SparseMatrix& d_out, const Coeff& c)
{
    if (d_in.rows != d_out.cols)
        fail("not a complex: shapes do not compose");
    if (d_in.cols && d_out.rows && !is_zero_mod(multiply(d_out, d_in), c))
        fail("not a complex");
    RankInfo out = rank_info(d_out, c);
    RankInfo in = rank_info(d_in, c);
    AbelianGroupInvariants h;
    h.free_rank = d_in.rows - out.rank - in.rank;
    h.torsion = c.ring == Ring::Z ? in.torsion : std::vector<mpz_class>{};
    return h;
}

ChainComplex::ChainComplex(Coeff c, std::map<int, i64> dims_, std::map<int, SparseMatrix> d_, bool check)
    : coeff(c), dims(std::move(dims_)), d(std::move(d_))
{
    for (auto& [q, m] : d) {
        if (m.cols != dim(q) || m.rows != dim(q - 1))
            internal_fail("boundary shape mismatch in degree " + std::to_string(q));
    }
    if (check)
        check_square_zero();
}

i64 ChainComplex::dim(int q) const
{
    auto it = dims.find(q);
    return it == dims.end() ? 0 : it->second;
}

SparseMatrix ChainComplex::boundary(int q) const
{
    auto it = d.find(q);
    if (it != d.end())
        return it->second;
    return SparseMatrix(int(dim(q - 1)), int(dim(q)));
}

int ChainComplex::min_degree() const
{
    for (auto& [q, n] : dims)
        if (n)
            return q;
    return 0;
}

int ChainComplex::max_degree() const
{
    for (auto it = dims.rbegin(); it != dims.rend(); ++it)
        if (it->second)
            return it->first;
    return 0;
}

void ChainComplex::check_square_zero() const
{
    for (auto& [q, m] : d) {
        auto it = d.find(q - 1);
        if (it == d.end() || m.cols == 0 || it->second.rows == 0)
            continue;
        if (!is_zero_mod(multiply(it->second, m), coeff))
            internal_fail("d^2 != 0 at degree " + std::to_string(q));
    }
}

ChainComplex make_cochain_complex(Coeff c, std::map<int, i64> dims, std::map<int, SparseMatrix> delta, bool check)
{
    std::map<int, i64> nd;
    for (auto& [q, n] : dims)
        nd[-q] = n;
    std::map<int, SparseMatrix> dd;
    // delta^q : C^q -> C^{q+1} becomes d_{-q} : C_{-q} -> C_{-q-1}
    for (auto& [q, m] : delta)
        dd[-q] = m;
    ChainComplex cc(c, std::move(nd), std::move(dd), check);
    cc.cohomological = true;
    return cc;
}

AbelianGroupInvariants homology_in_degree(const ChainComplex& c, int q)
{
    RankInfo out = c.dim(q - 1) && c.dim(q) ? rank_info(c.boundary(q), c.coeff) : RankInfo{};
    RankInfo in = c.dim(q + 1) && c.dim(q) ? rank_info(c.boundary(q + 1), c.coeff) : RankInfo{};
    AbelianGroupInvariants h;
    h.free_rank = c.dim(q) - out.rank - in.rank;
    if (c.coeff.ring == Ring::Z)
        h.torsion = in.torsion;
    return h;
}

std::map<int, AbelianGroupInvariants> homology(const ChainComplex& c)
{
    std::map<int, RankInfo> ranks;
    for (auto& [q, m] : c.d)
        if (m.rows && m.cols)
            ranks[q] = rank_info(m, c.coeff);
    std::map<int, AbelianGroupInvariants> h;
    for (auto& [q, n] : c.dims) {
        AbelianGroupInvariants g;
        i64 out = ranks.count(q) ? ranks[q].rank : 0;
        i64 in = ranks.count(q + 1) ? ranks[q + 1].rank : 0;
        g.free_rank = n - out - in;
        if (c.coeff.ring == Ring::Z && ranks.count(q + 1))
            g.torsion = ranks[q + 1].torsion;
        h[q] = g;
    }
    return h;
}

std::map<int, AbelianGroupInvariants> cohomology(const ChainComplex& c)
{
    std::map<int, AbelianGroupInvariants> h;
    for (auto& [q, g] : homology(c))
        h[-q] = g;
    return h;
}

AbelianGroupInvariants cohomology_in_degree(const ChainComplex& c, int q) { return homology_in_degree(c, -q); }

i64 euler_characteristic(const ChainComplex& c)
{
    i64 e = 0;
    for (auto& [q, n] : c.dims)
        e += (q % 2 == 0 ? 1 : -1) * n;
    return e;
}

std::string export_complex(const ChainComplex& c)
{
    std::ostringstream os;
    os << "coeff " << c.coeff.name() << "\n";
    for (auto& [q, n] : c.dims)
        os << "dim " << q << " " << n << "\n";
    for (auto& [q, m] : c.d) {
        os << "boundary " << q << " " << m.rows << " " << m.cols << " " << m.nnz() << "\n";
        for (int j = 0; j < m.cols; ++j)
            for (i64 k = m.colptr[j]; k < m.colptr[j + 1]; ++k)
                os << m.rowind[k] << " " << j << " " << m.val[k] << "\n";
    }
    return os.str();
}

}  // namespace einf
