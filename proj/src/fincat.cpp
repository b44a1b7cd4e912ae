#include "einf/fincat.hpp"

#include <algorithm>
#include <numeric>

namespace einf {

size_t FinMapHash::operator()(const FinMap& f) const
{
    size_t h = size_t(f.src) * 1315423911u + size_t(f.tgt);
    for (int v : f.img)
        h = h * 31 + size_t(v) + 0x9e3779b9;
    return h;
}

std::string to_string(const FinMap& f)
{
    std::string s = "[";
    for (size_t i = 0; i < f.img.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(f.img[i]);
    }
    return s + "]:" + std::to_string(f.src) + "->" + std::to_string(f.tgt);
}

FinMap identity_map(int n)
{
    FinMap f{n, n, std::vector<int>(n)};
    std::iota(f.img.begin(), f.img.end(), 1);
    return f;
}

FinMap make_map(int src, int tgt, std::vector<int> img)
{
    if (int(img.size()) != src)
        fail("map table has wrong length");
    for (int v : img)
        if (v < 0 || v > tgt)
            fail("map value out of range");
    return FinMap{src, tgt, std::move(img)};
}

bool is_identity(const FinMap& f)
{
    if (f.src != f.tgt)
        return false;
    for (int x = 0; x < f.src; ++x)
        if (f.img[x] != x + 1)
            return false;
    return true;
}

bool is_surjection(const FinMap& f)
{
    std::vector<char> hit(f.tgt + 1, 0);
    for (int v : f.img) {
        if (v == 0)
            return false;
        hit[v] = 1;
    }
    for (int y = 1; y <= f.tgt; ++y)
        if (!hit[y])
            return false;
    return true;
}

bool is_injective(const FinMap& f)
{
    std::vector<char> hit(f.tgt + 1, 0);
    for (int v : f.img) {
        if (v == 0 || hit[v])
            return false;
        hit[v] = 1;
    }
    return true;
}

bool is_bijection(const FinMap& f) { return f.src == f.tgt && is_injective(f); }

bool hits_basepoint(const FinMap& f) { return std::find(f.img.begin(), f.img.end(), 0) != f.img.end(); }

FinMap compose(const FinMap& f, const FinMap& g)
{
    if (g.tgt != f.src)
        fail("non-composable");
    FinMap h{g.src, f.tgt, std::vector<int>(g.src)};
    for (int x = 0; x < g.src; ++x)
        h.img[x] = f(g.img[x]);
    return h;
}

FinMap inverse_permutation(const FinMap& p)
{
    FinMap q{p.src, p.src, std::vector<int>(p.src)};
    for (int x = 0; x < p.src; ++x)
        q.img[p.img[x] - 1] = x + 1;
    return q;
}

std::vector<FinMap> enumerate_gamma_maps(int n, int m)
{
    std::vector<FinMap> out;
    std::vector<int> t(n, 0);
    while (true) {
        out.push_back(FinMap{n, m, t});
        int i = n - 1;
        while (i >= 0 && t[i] == m)
            t[i--] = 0;
        if (i < 0)
            break;
        ++t[i];
    }
    return out;
}

std::vector<FinMap> enumerate_surjections(int n, int m)
{
    std::vector<FinMap> out;
    if (n < 0 || m < 0)
        return out;
    if (m == 0 || n == 0) {
        if (n == 0 && m == 0)
            out.push_back(FinMap{0, 0, {}});
        return out;
    }
    if (m > n)
        return out;
    std::vector<int> t(n, 1);
    while (true) {
        FinMap f{n, m, t};
        if (is_surjection(f))
            out.push_back(std::move(f));
        int i = n - 1;
        while (i >= 0 && t[i] == m)
            t[i--] = 1;
        if (i < 0)
            break;
        ++t[i];
    }
    return out;
}

std::vector<FinMap> enumerate_permutations(int n)
{
    std::vector<FinMap> out;
    FinMap p = identity_map(n);
    do
        out.push_back(p);
    while (std::next_permutation(p.img.begin(), p.img.end()));
    return out;
}

std::vector<FinMap> enumerate_set_partitions(int n)
{
    std::vector<FinMap> out;
    if (n == 0) {
        out.push_back(FinMap{0, 0, {}});
        return out;
    }
    std::vector<int> t(n, 1), mx(n, 1);
    while (true) {
        out.push_back(FinMap{n, mx[n - 1], t});
        int i = n - 1;
        while (i > 0 && t[i] == mx[i - 1] + 1)
            --i;
        if (i == 0)
            break;
        ++t[i];
        mx[i] = std::max(mx[i - 1], t[i]);
        for (int j = i + 1; j < n; ++j) {
            t[j] = 1;
            mx[j] = mx[j - 1];
        }
    }
    return out;
}

bool is_canonical_surjection(const FinMap& f)
{
    int mx = 0;
    for (int v : f.img) {
        if (v > mx + 1 || v == 0)
            return false;
        mx = std::max(mx, v);
    }
    return mx == f.tgt;
}

FinMap canonical_form(const FinMap& f)
{
    std::vector<int> lab(f.tgt + 1, 0);
    int next = 0;
    FinMap c{f.src, 0, std::vector<int>(f.src)};
    for (int x = 0; x < f.src; ++x) {
        int v = f.img[x];
        if (v == 0)
            fail("canonical_form needs an unbased map");
        if (!lab[v])
            lab[v] = ++next;
        c.img[x] = lab[v];
    }
    c.tgt = next;
    return c;
}

std::string to_string(const Generator& g)
{
    switch (g.kind) {
    case Generator::Perm:
        return "s_" + std::to_string(g.i) + "@" + std::to_string(g.n);
    case Generator::Lambda:
        return "lambda_" + std::to_string(g.n);
    case Generator::Omega:
        return "omega_" + std::to_string(g.n);
    case Generator::Tau:
        return "tau_" + std::to_string(g.n);
    }
    return "?";
}

FinMap generator_map(const Generator& g)
{
    switch (g.kind) {
    case Generator::Perm: {
        FinMap f = identity_map(g.n);
        std::swap(f.img[g.i - 1], f.img[g.i]);
        return f;
    }
    case Generator::Lambda: {
        FinMap f = identity_map(g.n);
        f.tgt = g.n + 1;
        return f;
    }
    case Generator::Omega: {
        FinMap f = identity_map(g.n + 1);
        f.tgt = g.n;
        f.img[g.n] = g.n;
        return f;
    }
    case Generator::Tau: {
        FinMap f = identity_map(g.n + 1);
        f.tgt = g.n;
        f.img[g.n] = 0;
        return f;
    }
    }
    return {};
}

std::vector<Generator> permutation_word(const FinMap& p)
{
    // p = p' o s_i at each descent i; p' has one inversion fewer
    std::vector<Generator> rev;
    FinMap q = p;
    while (true) {
        int i = 0;
        while (i + 1 < q.src && q.img[i] < q.img[i + 1])
            ++i;
        if (i + 1 >= q.src)
            break;
        std::swap(q.img[i], q.img[i + 1]);
        rev.push_back(Generator{Generator::Perm, q.src, i + 1});
    }
    return std::vector<Generator>(rev.rbegin(), rev.rend());
}

namespace {

// bijection c of [n] with c(a) = n-1, c(b) = n (b may be 0 meaning only a -> n),
// remaining points kept in order
FinMap move_to_end(int n, int a, int b)
{
    FinMap c{n, n, std::vector<int>(n)};
    int pos = 0;
    for (int x = 1; x <= n; ++x)
        if (x != a && x != b)
            c.img[x - 1] = ++pos;
    if (b) {
        c.img[a - 1] = n - 1;
        c.img[b - 1] = n;
    }
    else
        c.img[a - 1] = n;
    return c;
}

void append(std::vector<Generator>& w, const std::vector<Generator>& v) { w.insert(w.end(), v.begin(), v.end()); }

}  // namespace

std::vector<Generator> gamma_word(const FinMap& phi)
{
    const int n = phi.src, m = phi.tgt;
    std::vector<Generator> w;
    int z = 0;
    for (int x = n; x >= 1; --x)
        if (phi.img[x - 1] == 0) {
            z = x;
            break;
        }
    if (z) {
        FinMap c = move_to_end(n, z, 0);
        FinMap rest{n - 1, m, std::vector<int>(n - 1)};
        for (int x = 1; x <= n; ++x)
            if (x != z)
                rest.img[c.img[x - 1] - 1] = phi.img[x - 1];
        w = gamma_word(rest);
        w.push_back(Generator{Generator::Tau, n - 1});
        append(w, permutation_word(c));
        return w;
    }
    std::vector<int> first(m + 1, 0);
    for (int x = 1; x <= n; ++x) {
        int v = phi.img[x - 1];
        if (first[v]) {
            int a = first[v], b = x;
            FinMap c = move_to_end(n, a, b);
            FinMap rest{n - 1, m, std::vector<int>(n - 1)};
            for (int y = 1; y <= n; ++y)
                if (y != b)
                    rest.img[c.img[y - 1] - 1] = phi.img[y - 1];
            w = gamma_word(rest);
            w.push_back(Generator{Generator::Omega, n - 1});
            append(w, permutation_word(c));
            return w;
        }
        first[v] = x;
    }
    // injective, basepoint-free: phi = sigma o lambda_{m-1} o ... o lambda_n o pi
    std::vector<int> image(phi.img);
    std::sort(image.begin(), image.end());
    FinMap pi{n, n, std::vector<int>(n)};
    for (int x = 0; x < n; ++x)
        pi.img[x] = int(std::lower_bound(image.begin(), image.end(), phi.img[x]) - image.begin()) + 1;
    FinMap sigma{m, m, std::vector<int>(m)};
    std::vector<char> used(m + 1, 0);
    for (int j = 0; j < n; ++j) {
        sigma.img[j] = image[j];
        used[image[j]] = 1;
    }
    int pos = n;
    for (int y = 1; y <= m; ++y)
        if (!used[y])
            sigma.img[pos++] = y;
    w = permutation_word(sigma);
    for (int k = m - 1; k >= n; --k)
        w.push_back(Generator{Generator::Lambda, k});
    append(w, permutation_word(pi));
    return w;
}

FinMap GammaFactorization::recompose() const
{
    return compose(post_iso, compose(lambda_part, compose(omega_part, compose(tau_part, pre_iso))));
}

GammaFactorization factorize_gamma(const FinMap& phi)
{
    const int n = phi.src, m = phi.tgt;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 1);
    // points with nonzero image first, sorted by image; basepoint-bound points last
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        int va = phi.img[a - 1], vb = phi.img[b - 1];
        if ((va == 0) != (vb == 0))
            return va != 0;
        return va < vb;
    });
    GammaFactorization f;
    f.pre_iso = FinMap{n, n, std::vector<int>(n)};
    for (int p = 0; p < n; ++p)
        f.pre_iso.img[order[p] - 1] = p + 1;
    int live = 0;
    for (int v : phi.img)
        live += v != 0;
    f.tau_part = FinMap{n, live, std::vector<int>(n, 0)};
    for (int p = 0; p < live; ++p)
        f.tau_part.img[p] = p + 1;
    std::vector<int> image;
    for (int p = 0; p < live; ++p)
        image.push_back(phi.img[order[p] - 1]);
    std::vector<int> distinct = image;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const int k = int(distinct.size());
    f.omega_part = FinMap{live, k, std::vector<int>(live)};
    for (int p = 0; p < live; ++p)
        f.omega_part.img[p] = int(std::lower_bound(distinct.begin(), distinct.end(), image[p]) - distinct.begin()) + 1;
    f.lambda_part = FinMap{k, m, distinct};
    f.post_iso = identity_map(m);
    return f;
}

}  // namespace einf
