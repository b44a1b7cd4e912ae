#include "einf/gamma_mod.hpp"

#include <algorithm>
#include <numeric>

namespace einf {

IMat to_imat(const SparseMatrix& m)
{
    IMat d = IMat::Zero(m.rows, m.cols);
    for (int j = 0; j < m.cols; ++j)
        for (i64 k = m.colptr[j]; k < m.colptr[j + 1]; ++k)
            d(m.rowind[k], j) = m.val[k];
    return d;
}

SparseMatrix to_sparse(const IMat& m)
{
    SparseMatrix s(int(m.rows()), 0);
    for (int j = 0; j < m.cols(); ++j) {
        SparseVec v;
        for (int i = 0; i < m.rows(); ++i)
            if (m(i, j))
                v.emplace_back(i, m(i, j));
        s.append_column(std::move(v));
    }
    return s;
}

namespace {

SparseMatrix sparse_identity(int n)
{
    SparseMatrix s(n, 0);
    for (int i = 0; i < n; ++i)
        s.append_column({{i, 1}});
    return s;
}

const IMat& generator_matrix(const Module& m, const Generator& g)
{
    switch (g.kind) {
    case Generator::Perm:
        return m.perm[g.n][g.i - 1];
    case Generator::Lambda:
        return m.lambda[g.n];
    case Generator::Omega:
        return m.omega[g.n];
    default:
        return m.tau[g.n];
    }
}

void check_map(const Module& m, const FinMap& phi)
{
    if (phi.src > m.N || phi.tgt > m.N)
        insufficient("module " + (m.name.empty() ? std::string("value") : m.name) + " is tabulated up to degree " + std::to_string(m.N) + " but degree " +
                     std::to_string(std::max(phi.src, phi.tgt)) + " is required");
    if (m.spine == Spine::Omega && !is_surjection(phi))
        fail("an Omega module is evaluated on a map that is not a surjection");
}

std::vector<Generator> generators_from(const Module& m, int deg)
{
    std::vector<Generator> g;
    for (int i = 1; i < deg; ++i)
        g.push_back(Generator{Generator::Perm, deg, i});
    if (m.spine == Spine::Gamma) {
        if (deg + 1 <= m.N)
            g.push_back(Generator{Generator::Lambda, deg, 0});
        if (deg >= 1)
            g.push_back(Generator{Generator::Tau, deg - 1, 0});
    }
    if (deg >= 2)
        g.push_back(Generator{Generator::Omega, deg - 1, 0});
    return g;
}

}  // namespace

IMat Module::eval_word(const FinMap& phi) const
{
    check_map(*this, phi);
    auto w = gamma_word(phi);
    if (variance == Variance::Left) {
        IMat r = IMat::Identity(rank(phi.tgt), rank(phi.tgt));
        for (auto& g : w)
            r = r * generator_matrix(*this, g);
        return r;
    }
    IMat r = IMat::Identity(rank(phi.src), rank(phi.src));
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        r = r * generator_matrix(*this, *it);
    return r;
}

const SparseMatrix& Module::eval(const FinMap& phi) const
{
    {
        std::lock_guard<std::mutex> lock(cache->mu);
        auto it = cache->table.find(phi);
        if (it != cache->table.end())
            return *it->second;
    }
    check_map(*this, phi);
    SparseMatrix s;
    if (direct)
        s = direct(phi);
    else {
        // sparse product along the word
        auto w = gamma_word(phi);
        if (variance == Variance::Left) {
            s = sparse_identity(rank(phi.tgt));
            for (auto& g : w)
                s = multiply(s, to_sparse(generator_matrix(*this, g)));
        }
        else {
            s = sparse_identity(rank(phi.src));
            for (auto it = w.rbegin(); it != w.rend(); ++it)
                s = multiply(s, to_sparse(generator_matrix(*this, *it)));
        }
    }
    std::lock_guard<std::mutex> lock(cache->mu);
    auto& slot = cache->table[phi];
    if (!slot)
        slot = std::make_unique<SparseMatrix>(std::move(s));
    return *slot;
}

IMat Module::eval_dense(const FinMap& phi) const { return to_imat(eval(phi)); }

void Module::fill_generators()
{
    perm.assign(N + 1, {});
    lambda.assign(std::max(N, 0), IMat());
    omega.assign(std::max(N, 0), IMat());
    tau.assign(std::max(N, 0), IMat());
    for (int n = 0; n <= N; ++n) {
        for (int i = 1; i < n; ++i)
            perm[n].push_back(to_imat(direct(generator_map(Generator{Generator::Perm, n, i}))));
        if (n + 1 > N)
            continue;
        if (spine == Spine::Gamma) {
            lambda[n] = to_imat(direct(generator_map(Generator{Generator::Lambda, n, 0})));
            tau[n] = to_imat(direct(generator_map(Generator{Generator::Tau, n, 0})));
        }
        if (n >= 1)
            omega[n] = to_imat(direct(generator_map(Generator{Generator::Omega, n, 0})));
    }
}

void Module::check_shapes() const
{
    if (N < 0)
        fail("max_degree must be non-negative");
    if (int(ranks.size()) != N + 1)
        fail("expected " + std::to_string(N + 1) + " ranks");
    for (int r : ranks)
        if (r < 0)
            fail("ranks must be non-negative");
    auto shape = [&](const IMat& m, int src, int tgt, const std::string& what) {
        int rows = variance == Variance::Left ? rank(tgt) : rank(src);
        int cols = variance == Variance::Left ? rank(src) : rank(tgt);
        if (m.rows() != rows || m.cols() != cols)
            fail(what + " has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" +
                 std::to_string(cols));
    };
    if (int(perm.size()) != N + 1)
        fail("perm needs one list per degree");
    for (int n = 0; n <= N; ++n) {
        if (int(perm[n].size()) != std::max(0, n - 1))
            fail("perm[" + std::to_string(n) + "] needs " + std::to_string(std::max(0, n - 1)) + " matrices");
        for (int i = 1; i < n; ++i)
            shape(perm[n][i - 1], n, n, "perm[" + std::to_string(n) + "][" + std::to_string(i - 1) + "]");
    }
    if (spine == Spine::Gamma) {
        if (int(lambda.size()) != N || int(tau.size()) != N)
            fail("lambda and tau need one matrix per degree below max_degree");
        for (int n = 0; n < N; ++n) {
            shape(lambda[n], n, n + 1, "lambda[" + std::to_string(n) + "]");
            shape(tau[n], n + 1, n, "tau[" + std::to_string(n) + "]");
        }
    }
    if (int(omega.size()) != N)
        fail("omega needs one entry per degree below max_degree");
    for (int n = 1; n < N; ++n)
        shape(omega[n], n + 1, n, "omega[" + std::to_string(n) + "]");
}

Module make_module(Spine spine, Variance v, Coeff c, std::vector<int> ranks, std::vector<std::vector<IMat>> perm, std::vector<IMat> lambda, std::vector<IMat> omega,
                   std::vector<IMat> tau, std::string name)
{
    Module m;
    m.spine = spine;
    m.variance = v;
    m.coeff = c;
    m.N = int(ranks.size()) - 1;
    m.ranks = std::move(ranks);
    m.perm = std::move(perm);
    m.lambda = std::move(lambda);
    m.omega = std::move(omega);
    m.tau = std::move(tau);
    m.name = std::move(name);
    m.check_shapes();
    return m;
}

Module module_from_direct(Spine spine, Variance v, Coeff c, int N, std::vector<int> ranks, std::function<SparseMatrix(const FinMap&)> f, std::string name)
{
    Module m;
    m.spine = spine;
    m.variance = v;
    m.coeff = c;
    m.N = N;
    m.ranks = std::move(ranks);
    m.direct = std::move(f);
    m.name = std::move(name);
    m.fill_generators();
    return m;
}

namespace {

SparseMatrix zero_shape(const Module& m, const FinMap& phi)
{
    int rows = m.variance == Variance::Left ? m.rank(phi.tgt) : m.rank(phi.src);
    int cols = m.variance == Variance::Left ? m.rank(phi.src) : m.rank(phi.tgt);
    return SparseMatrix(rows, cols);
}

}  // namespace

Module zero_module(Spine spine, Variance v, int N, Coeff c)
{
    return module_from_direct(spine, v, c, N, std::vector<int>(N + 1, 0), [](const FinMap&) { return SparseMatrix(0, 0); }, "zero");
}

Module dual_module(const Module& m)
{
    Module d;
    d.spine = m.spine;
    d.variance = m.variance == Variance::Left ? Variance::Right : Variance::Left;
    d.coeff = m.coeff;
    d.N = m.N;
    d.ranks = m.ranks;
    d.name = m.name.empty() ? "" : "dual(" + m.name + ")";
    auto tr = [](const IMat& x) { return IMat(x.transpose()); };
    d.perm = m.perm;
    for (auto& v : d.perm)
        for (auto& x : v)
            x = tr(x);
    for (auto& x : m.lambda)
        d.lambda.push_back(tr(x));
    for (auto& x : m.omega)
        d.omega.push_back(tr(x));
    for (auto& x : m.tau)
        d.tau.push_back(tr(x));
    if (m.direct) {
        Module src = m;
        d.direct = [src](const FinMap& phi) { return transpose(src.eval(phi)); };
    }
    return d;
}

Module truncate_height(const Module& m, int n)
{
    Module src = m;
    std::vector<int> ranks(m.ranks);
    for (int k = n + 1; k <= m.N; ++k)
        ranks[k] = 0;
    Module t;
    t.spine = m.spine;
    t.variance = m.variance;
    t.coeff = m.coeff;
    t.N = m.N;
    t.ranks = ranks;
    t.name = m.name + "|<=" + std::to_string(n);
    t.direct = [src, n, t](const FinMap& phi) {
        if (phi.src > n || phi.tgt > n)
            return zero_shape(t, phi);
        return src.eval(phi);
    };
    t.fill_generators();
    return t;
}

Module restrict_degree(const Module& m, int N)
{
    if (N > m.N)
        insufficient("cannot extend a module from degree " + std::to_string(m.N) + " to " + std::to_string(N));
    Module r = m;
    r.N = N;
    r.ranks.resize(N + 1);
    r.perm.resize(N + 1);
    r.omega.resize(N);
    if (r.spine == Spine::Gamma) {
        r.lambda.resize(N);
        r.tau.resize(N);
    }
    r.cache = std::make_shared<Module::Cache>();
    if (m.direct) {
        Module src = m;
        r.direct = [src](const FinMap& phi) { return src.eval(phi); };
    }
    return r;
}

Module direct_sum(const Module& a, const Module& b)
{
    if (a.spine != b.spine || a.variance != b.variance)
        fail("direct sum of modules of different kinds");
    int N = std::min(a.N, b.N);
    std::vector<int> ranks;
    for (int n = 0; n <= N; ++n)
        ranks.push_back(a.rank(n) + b.rank(n));
    Module sa = a, sb = b;
    return module_from_direct(a.spine, a.variance, a.coeff, N, ranks,
                              [sa, sb](const FinMap& phi) {
                                  const SparseMatrix& x = sa.eval(phi);
                                  const SparseMatrix& y = sb.eval(phi);
                                  SparseMatrix s(x.rows + y.rows, 0);
                                  for (int j = 0; j < x.cols; ++j)
                                      s.append_column(x.column(j));
                                  for (int j = 0; j < y.cols; ++j) {
                                      SparseVec v = y.column(j);
                                      for (auto& e : v)
                                          e.first += x.rows;
                                      s.append_column(std::move(v));
                                  }
                                  return s;
                              },
                              "(" + a.name + "+" + b.name + ")");
}

Module change_basis(const Module& m, const std::vector<IMat>& b, const std::vector<IMat>& b_inv)
{
    Module r;
    r.spine = m.spine;
    r.variance = m.variance;
    r.coeff = m.coeff;
    r.N = m.N;
    r.ranks = m.ranks;
    r.name = m.name;
    for (int n = 0; n <= m.N; ++n)
        if (b[n] * b_inv[n] != IMat::Identity(m.rank(n), m.rank(n)))
            fail("basis change is not invertible in degree " + std::to_string(n));
    Module src = m;
    r.direct = [src, b, b_inv](const FinMap& phi) {
        IMat x = src.eval_dense(phi);
        if (src.variance == Variance::Left)
            return to_sparse(b[phi.tgt] * x * b_inv[phi.src]);
        return to_sparse(b[phi.src] * x * b_inv[phi.tgt]);
    };
    r.fill_generators();
    // keep only the tabulated presentation
    r.direct = nullptr;
    return r;
}

FunctorialityReport validate_functoriality(const Module& m)
{
    FunctorialityReport rep;
    std::unordered_map<FinMap, SparseMatrix, FinMapHash> word;
    auto W = [&](const FinMap& phi) -> const SparseMatrix& {
        auto it = word.find(phi);
        if (it == word.end())
            it = word.emplace(phi, to_sparse(m.eval_word(phi))).first;
        return it->second;
    };
    auto same = [](const SparseMatrix& a, const SparseMatrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.colptr == b.colptr && a.rowind == b.rowind && a.val == b.val;
    };
    for (int n = 0; n <= m.N && rep.ok; ++n)
        for (int k = 0; k <= m.N && rep.ok; ++k) {
            auto maps = m.spine == Spine::Gamma ? enumerate_gamma_maps(n, k) : enumerate_surjections(n, k);
            for (auto& phi : maps) {
                if (m.direct && !same(W(phi), m.direct(phi))) {
                    rep.ok = false;
                    rep.failure = "generator word disagrees with the closed form at " + to_string(phi);
                    break;
                }
                for (auto& g : generators_from(m, k)) {
                    FinMap gm = generator_map(g);
                    FinMap c = compose(gm, phi);
                    SparseMatrix prod = m.variance == Variance::Left ? multiply(W(gm), W(phi)) : multiply(W(phi), W(gm));
                    ++rep.checked;
                    if (!same(W(c), prod)) {
                        rep.ok = false;
                        rep.failure = "relation F(" + to_string(g) + " o phi) = F(" + to_string(g) + ") F(phi) fails at phi = " + to_string(phi);
                        break;
                    }
                }
                if (!rep.ok)
                    break;
            }
        }
    return rep;
}

namespace {

// r_a : [k] -> [k-1] sends a to the basepoint and keeps the order of the rest
FinMap collapse_point(int k, int a)
{
    FinMap f{k, k - 1, std::vector<int>(k)};
    for (int x = 1; x <= k; ++x)
        f.img[x - 1] = x < a ? x : (x == a ? 0 : x - 1);
    return f;
}

std::vector<mpz_class> column_mpz(const SparseMatrix& m, const std::vector<mpz_class>& v)
{
    std::vector<mpz_class> out(m.rows, 0);
    for (int j = 0; j < m.cols; ++j) {
        if (v[j] == 0)
            continue;
        for (i64 k = m.colptr[j]; k < m.colptr[j + 1]; ++k)
            out[m.rowind[k]] += v[j] * m.val[k];
    }
    return out;
}

}  // namespace

CrossEffect cross_effect_with_basis(const Module& f)
{
    if (f.spine != Spine::Gamma)
        fail("cross-effect needs a Gamma module");
    if (f.variance == Variance::Right) {
        for (int k = 1; k <= f.N; ++k) {
            if (!f.rank(k) || !f.rank(k - 1))
                continue;
            SparseMatrix stack(f.rank(k), 0);
            for (int a = 1; a <= k; ++a)
                stack.append_columns(f.eval(collapse_point(k, a)));
            if (!rank_info(stack, Coeff::Z()).torsion.empty())
                fail("cokernel of the cross-effect has torsion in degree " + std::to_string(k) + "; values must be free");
        }
        CrossEffect ce = cross_effect_with_basis(dual_module(f));
        ce.module = dual_module(ce.module);
        ce.module.name = f.name.empty() ? "" : "cr(" + f.name + ")";
        return ce;
    }
    CrossEffect ce;
    std::vector<int> ranks;
    for (int k = 0; k <= f.N; ++k) {
        SparseMatrix stack(0, f.rank(k));
        if (k >= 1 && f.rank(k - 1)) {
            std::vector<SparseVec> cols(f.rank(k));
            int off = 0;
            for (int a = 1; a <= k; ++a) {
                const SparseMatrix& r = f.eval(collapse_point(k, a));
                for (int j = 0; j < r.cols; ++j)
                    for (i64 e = r.colptr[j]; e < r.colptr[j + 1]; ++e)
                        cols[j].emplace_back(off + r.rowind[e], r.val[e]);
                off += r.rows;
            }
            stack = SparseMatrix(off, 0);
            for (auto& c : cols)
                stack.append_column(std::move(c));
        }
        std::vector<std::vector<mpz_class>> basis;
        if (stack.rows == 0) {
            for (int i = 0; i < f.rank(k); ++i) {
                std::vector<mpz_class> e(f.rank(k), 0);
                e[i] = 1;
                basis.push_back(e);
            }
        }
        else
            basis = kernel_hnf(stack);
        ranks.push_back(int(basis.size()));
        ce.basis.push_back(std::move(basis));
    }
    Module src = f;
    auto bases = ce.basis;
    ce.module = module_from_direct(Spine::Omega, Variance::Left, f.coeff, f.N, ranks,
                                   [src, bases](const FinMap& phi) {
                                       const SparseMatrix& m = src.eval(phi);
                                       auto& bs = bases[phi.src];
                                       auto& bt = bases[phi.tgt];
                                       SparseMatrix out(int(bt.size()), 0);
                                       for (auto& b : bs) {
                                           auto co = hermite_coordinates(bt, column_mpz(m, b));
                                           SparseVec v;
                                           for (size_t i = 0; i < co.size(); ++i)
                                               if (co[i] != 0) {
                                                   if (!co[i].fits_slong_p())
                                                       internal_fail("cross-effect coordinate overflow");
                                                   v.emplace_back(int(i), co[i].get_si());
                                               }
                                           out.append_column(std::move(v));
                                       }
                                       return out;
                                   },
                                   f.name.empty() ? "" : "cr(" + f.name + ")");
    return ce;
}

Module cross_effect(const Module& f) { return cross_effect_with_basis(f).module; }

namespace {

struct SharpLayout {
    std::vector<int> offset;  // by subset mask
    int rank = 0;
};

SharpLayout sharp_layout(const Module& l, int n)
{
    SharpLayout s;
    s.offset.assign(size_t(1) << n, -1);
    std::vector<int> masks((size_t(1) << n));
    std::iota(masks.begin(), masks.end(), 0);
    // by size, then lexicographic on the sorted element list
    auto elems = [](int m) {
        std::vector<int> e;
        for (int x = 0; m >> x; ++x)
            if (m >> x & 1)
                e.push_back(x + 1);
        return e;
    };
    std::sort(masks.begin(), masks.end(), [&](int a, int b) {
        int ca = __builtin_popcount(unsigned(a)), cb = __builtin_popcount(unsigned(b));
        if (ca != cb)
            return ca < cb;
        return elems(a) < elems(b);
    });
    for (int m : masks) {
        s.offset[m] = s.rank;
        s.rank += l.rank(__builtin_popcount(unsigned(m)));
    }
    return s;
}

}  // namespace

int sharp_index(const Module& l, int n, const std::vector<int>& X, int j)
{
    int m = 0;
    for (int x : X)
        m |= 1 << (x - 1);
    return sharp_layout(l, n).offset[m] + j;
}

Module sharp(const Module& l, std::optional<int> N_)
{
    if (l.spine != Spine::Omega)
        fail("sharp needs an Omega module");
    if (l.variance == Variance::Right) {
        Module s = dual_module(sharp(dual_module(l), N_));
        s.name = l.name.empty() ? "" : "sharp(" + l.name + ")";
        return s;
    }
    int N = N_ ? *N_ : l.N;
    // an Omega module tabulated to degree l.N is extended by zero
    Module lz = l;
    if (N > l.N) {
        std::vector<int> ranks(l.ranks);
        ranks.resize(N + 1, 0);
        Module src = l;
        lz = module_from_direct(Spine::Omega, Variance::Left, l.coeff, N, ranks,
                                [src](const FinMap& phi) {
                                    if (phi.src > src.N || phi.tgt > src.N)
                                        return SparseMatrix(phi.tgt <= src.N ? src.rank(phi.tgt) : 0, phi.src <= src.N ? src.rank(phi.src) : 0);
                                    return src.eval(phi);
                                },
                                l.name);
    }
    std::vector<SharpLayout> layouts;
    std::vector<int> ranks;
    for (int n = 0; n <= N; ++n) {
        layouts.push_back(sharp_layout(lz, n));
        ranks.push_back(layouts.back().rank);
    }
    return module_from_direct(Spine::Gamma, Variance::Left, l.coeff, N, ranks,
                              [lz, layouts](const FinMap& phi) {
                                  const int n = phi.src, m = phi.tgt;
                                  SparseMatrix out(layouts[m].rank, 0);
                                  std::vector<SparseVec> cols(layouts[n].rank);
                                  for (int X = 0; X < (1 << n); ++X) {
                                      int s = __builtin_popcount(unsigned(X));
                                      if (!lz.rank(s))
                                          continue;
                                      int Y = 0;
                                      bool dead = false;
                                      std::vector<int> xs;
                                      for (int x = 1; x <= n; ++x)
                                          if (X >> (x - 1) & 1) {
                                              xs.push_back(x);
                                              if (phi.img[x - 1] == 0)
                                                  dead = true;
                                              else
                                                  Y |= 1 << (phi.img[x - 1] - 1);
                                          }
                                      if (dead)
                                          continue;
                                      int t = __builtin_popcount(unsigned(Y));
                                      if (!lz.rank(t))
                                          continue;
                                      FinMap f{s, t, std::vector<int>(s)};
                                      for (int i = 0; i < s; ++i)
                                          f.img[i] = __builtin_popcount(unsigned(Y & ((1 << phi.img[xs[i] - 1]) - 1)));
                                      const SparseMatrix& lf = lz.eval(f);
                                      for (int j = 0; j < lf.cols; ++j)
                                          for (i64 e = lf.colptr[j]; e < lf.colptr[j + 1]; ++e)
                                              cols[layouts[n].offset[X] + j].emplace_back(layouts[m].offset[Y] + lf.rowind[e], lf.val[e]);
                                  }
                                  for (auto& c : cols)
                                      out.append_column(std::move(c));
                                  return out;
                              },
                              l.name.empty() ? "" : "sharp(" + l.name + ")");
}

std::vector<IMat> theta(const Module& l)
{
    if (l.variance == Variance::Right) {
        auto t = theta(dual_module(l));
        for (auto& x : t)
            x = IMat(x.transpose());
        return t;
    }
    std::vector<IMat> out;
    for (int n = 0; n <= l.N; ++n) {
        SharpLayout s = sharp_layout(l, n);
        IMat m = IMat::Zero(s.rank, l.rank(n));
        int off = s.offset[(1 << n) - 1];
        for (int j = 0; j < l.rank(n); ++j)
            m(off + j, j) = 1;
        out.push_back(m);
    }
    return out;
}

std::vector<IMat> sharp_cross_iso(const Module& f)
{
    if (f.variance == Variance::Right) {
        auto t = sharp_cross_iso(dual_module(f));
        for (auto& x : t)
            x = IMat(x.transpose());
        return t;
    }
    CrossEffect ce = cross_effect_with_basis(f);
    std::vector<IMat> out;
    for (int n = 0; n <= f.N; ++n) {
        SharpLayout s = sharp_layout(ce.module, n);
        IMat m = IMat::Zero(f.rank(n), s.rank);
        for (int X = 0; X < (1 << n); ++X) {
            int k = __builtin_popcount(unsigned(X));
            if (!ce.module.rank(k))
                continue;
            FinMap inc{k, n, {}};
            for (int x = 1; x <= n; ++x)
                if (X >> (x - 1) & 1)
                    inc.img.push_back(x);
            IMat fi = f.eval_dense(inc);
            for (int j = 0; j < ce.module.rank(k); ++j) {
                Eigen::Matrix<i64, Eigen::Dynamic, 1> b(f.rank(k));
                for (int i = 0; i < f.rank(k); ++i)
                    b(i) = ce.basis[k][j][i].get_si();
                m.col(s.offset[X] + j) = fi * b;
            }
        }
        out.push_back(m);
    }
    return out;
}

Module module_t(int N, Coeff c)
{
    std::vector<int> ranks(N + 1);
    std::iota(ranks.begin(), ranks.end(), 0);
    return module_from_direct(Spine::Gamma, Variance::Right, c, N, ranks,
                              [](const FinMap& phi) {
                                  SparseMatrix m(phi.src, 0);
                                  std::vector<SparseVec> cols(phi.tgt);
                                  for (int x = 1; x <= phi.src; ++x)
                                      if (phi.img[x - 1])
                                          cols[phi.img[x - 1] - 1].emplace_back(x - 1, 1);
                                  for (auto& v : cols)
                                      m.append_column(std::move(v));
                                  return m;
                              },
                              "t");
}

Module module_varpi(int N, Coeff c)
{
    std::vector<int> ranks(N + 1, 0);
    if (N >= 1)
        ranks[1] = 1;
    return module_from_direct(Spine::Omega, Variance::Right, c, N, ranks,
                              [](const FinMap& phi) {
                                  if (phi.src == 1 && phi.tgt == 1)
                                      return SparseMatrix::from_dense({{1}});
                                  return SparseMatrix(phi.src == 1 ? 1 : 0, phi.tgt == 1 ? 1 : 0);
                              },
                              "varpi");
}

Module representable(int m, int N, Coeff c)
{
    std::vector<int> ranks;
    for (int n = 0; n <= N; ++n) {
        i64 r = 1;
        for (int i = 0; i < m; ++i)
            r *= n + 1;
        ranks.push_back(int(r));
    }
    return module_from_direct(Spine::Gamma, Variance::Left, c, N, ranks,
                              [m, ranks](const FinMap& phi) {
                                  // basis: maps g : [m] -> [n], indexed by their image table in base n+1
                                  const int n = phi.src, k = phi.tgt;
                                  SparseMatrix out(ranks[k], 0);
                                  std::vector<int> g(m, 0);
                                  for (int idx = 0; idx < ranks[n]; ++idx) {
                                      int t = idx;
                                      for (int i = m - 1; i >= 0; --i) {
                                          g[i] = t % (n + 1);
                                          t /= n + 1;
                                      }
                                      int target = 0;
                                      for (int i = 0; i < m; ++i)
                                          target = target * (k + 1) + phi(g[i]);
                                      out.append_column({{target, 1}});
                                  }
                                  return out;
                              },
                              "KGamma([" + std::to_string(m) + "],-)");
}

Module concentrated(int n, const SigmaRep& rep, int N, Coeff c)
{
    if (rep.n != n)
        fail("representation is for Sigma_" + std::to_string(rep.n) + ", not Sigma_" + std::to_string(n));
    std::vector<int> ranks(N + 1, 0);
    if (n <= N)
        ranks[n] = rep.rank;
    SigmaRep r = with_side(rep, Side::Left);
    return module_from_direct(Spine::Omega, Variance::Left, c, N, ranks,
                              [r, n](const FinMap& phi) {
                                  if (phi.src == n && phi.tgt == n)
                                      return to_sparse(r.element(phi));
                                  return SparseMatrix(phi.tgt == n ? r.rank : 0, phi.src == n ? r.rank : 0);
                              },
                              "line" + std::to_string(n));
}

Module one_line_module(int n, const SigmaRep& m, bool induced, int N, Variance v, Coeff c)
{
    if (n < 0)
        fail("degree must be non-negative");
    if (induced && m.n != n - 1)
        fail("an induced one-line module needs a representation of Sigma_" + std::to_string(n - 1));
    if (!induced && m.n != n)
        fail("a one-line module needs a representation of Sigma_" + std::to_string(n));
    SigmaRep r = induced ? induce(m, n) : m;
    if (v == Variance::Right) {
        Module left = sharp(concentrated(n, dual(r), N, c), N);
        Module d = dual_module(left);
        d.name = "oneline" + std::to_string(n) + "*";
        return d;
    }
    Module s = sharp(concentrated(n, r, N, c), N);
    s.name = "oneline" + std::to_string(n);
    return s;
}

Module truncated_representable(int n, int a, int N, Coeff c)
{
    std::vector<std::vector<FinMap>> basis(N + 1);
    std::vector<int> ranks(N + 1, 0);
    for (int m = 0; m <= N; ++m)
        if (m >= a && m <= n) {
            basis[m] = enumerate_surjections(n, m);
            ranks[m] = int(basis[m].size());
        }
    std::vector<std::map<FinMap, int>> index(N + 1);
    for (int m = 0; m <= N; ++m)
        for (size_t i = 0; i < basis[m].size(); ++i)
            index[m][basis[m][i]] = int(i);
    return module_from_direct(Spine::Omega, Variance::Left, c, N, ranks,
                              [basis, index, ranks](const FinMap& phi) {
                                  SparseMatrix out(ranks[phi.tgt], 0);
                                  for (auto& g : basis[phi.src]) {
                                      if (ranks[phi.tgt] == 0) {
                                          out.append_column({});
                                          continue;
                                      }
                                      out.append_column({{index[phi.tgt].at(compose(phi, g)), 1}});
                                  }
                                  return out;
                              },
                              "surj" + std::to_string(n) + ">=" + std::to_string(a));
}

const Module* GradedModule::at(int j) const
{
    for (auto& [d, m] : members)
        if (d == j)
            return &m;
    return nullptr;
}

namespace {

std::vector<i64> ring_mul(const RingTable& r, const std::vector<i64>& a, const std::vector<i64>& b)
{
    std::vector<i64> out(r.rank, 0);
    for (int i = 0; i < r.rank; ++i)
        if (a[i])
            for (int j = 0; j < r.rank; ++j)
                if (b[j])
                    for (int k = 0; k < r.rank; ++k)
                        out[k] += a[i] * b[j] * r.mult[i][j][k];
    return out;
}

std::vector<i64> unit_vector(int r, int i)
{
    std::vector<i64> e(r, 0);
    e[i] = 1;
    return e;
}

}  // namespace

void check_ring(const RingTable& r)
{
    if (r.rank < 1 || int(r.mult.size()) != r.rank || int(r.unit.size()) != r.rank)
        fail("ring table has the wrong shape");
    for (auto& row : r.mult) {
        if (int(row.size()) != r.rank)
            fail("ring table has the wrong shape");
        for (auto& v : row)
            if (int(v.size()) != r.rank)
                fail("ring table has the wrong shape");
    }
    for (int i = 0; i < r.rank; ++i) {
        auto ei = unit_vector(r.rank, i);
        if (ring_mul(r, r.unit, ei) != ei)
            fail("ring table: the unit is not a unit");
        for (int j = 0; j < r.rank; ++j) {
            if (r.mult[i][j] != r.mult[j][i])
                fail("ring table is not commutative");
            auto ej = unit_vector(r.rank, j);
            for (int k = 0; k < r.rank; ++k) {
                auto ek = unit_vector(r.rank, k);
                if (ring_mul(r, ring_mul(r, ei, ej), ek) != ring_mul(r, ei, ring_mul(r, ej, ek)))
                    fail("ring table is not associative");
            }
        }
    }
}

Module loday_dual(const RingTable& ring, int N, Coeff c)
{
    check_ring(ring);
    const int r = ring.rank;
    std::vector<int> ranks;
    for (int k = 0; k <= N; ++k) {
        i64 x = 1;
        for (int i = 0; i <= k; ++i)
            x *= r;
        ranks.push_back(int(x));
    }
    // R (x) R^(x)k with phi multiplying the factors of each fibre
    Module left = module_from_direct(Spine::Gamma, Variance::Left, c, N, ranks,
                                     [ring, r, ranks](const FinMap& phi) {
                                         const int n = phi.src, m = phi.tgt;
                                         SparseMatrix out(ranks[m], 0);
                                         std::vector<int> idx(n + 1);
                                         for (int b = 0; b < ranks[n]; ++b) {
                                             int t = b;
                                             for (int i = n; i >= 0; --i) {
                                                 idx[i] = t % r;
                                                 t /= r;
                                             }
                                             std::vector<std::vector<i64>> f(m + 1, ring.unit);
                                             f[0] = unit_vector(r, idx[0]);
                                             for (int x = 1; x <= n; ++x)
                                                 f[phi.img[x - 1]] = ring_mul(ring, f[phi.img[x - 1]], unit_vector(r, idx[x]));
                                             std::map<int, i64> v{{0, 1}};
                                             for (int j = 0; j <= m; ++j) {
                                                 std::map<int, i64> w;
                                                 for (auto& [pos, coef] : v)
                                                     for (int i = 0; i < r; ++i)
                                                         if (f[j][i])
                                                             w[pos * r + i] += coef * f[j][i];
                                                 v = std::move(w);
                                             }
                                             SparseVec col;
                                             for (auto& [pos, coef] : v)
                                                 if (coef)
                                                     col.emplace_back(pos, coef);
                                             out.append_column(std::move(col));
                                         }
                                         return out;
                                     },
                                     "loday");
    Module d = dual_module(left);
    d.name = "loday*";
    return d;
}

GradedModule loday_module(const RingTable& r, int N, const std::vector<int>& internal_degrees, Coeff c)
{
    GradedModule g;
    for (int j : internal_degrees)
        g.members.emplace_back(j, loday_dual(r, N, c));
    return g;
}

RingTable ring_integers()
{
    return RingTable{1, {{{1}}}, {1}};
}

RingTable ring_product(int copies)
{
    RingTable r;
    r.rank = copies;
    r.mult.assign(copies, std::vector<std::vector<i64>>(copies, std::vector<i64>(copies, 0)));
    for (int i = 0; i < copies; ++i)
        r.mult[i][i][i] = 1;
    r.unit.assign(copies, 1);
    return r;
}

RingTable ring_dual_numbers()
{
    RingTable r;
    r.rank = 2;
    r.mult = {{{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}};
    r.unit = {1, 0};
    return r;
}

}  // namespace einf
