#include "einf/json_io.hpp"

#include <fstream>

namespace einf {

namespace {

[[noreturn]] void schema(const std::string& ptr, const std::string& msg)
{
    throw Error(ErrorKind::Schema, (ptr.empty() ? "/" : ptr) + ": " + msg);
}

const json& field(const json& j, const std::string& key, const std::string& where)
{
    if (!j.is_object())
        schema(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        schema(where + "/" + key, "required field is missing");
    return *it;
}

int as_int(const json& j, const std::string& where, int lo = INT32_MIN)
{
    if (!j.is_number_integer())
        schema(where, "expected an integer");
    i64 v = j.get<i64>();
    if (v < lo || v > INT32_MAX)
        schema(where, "integer out of range");
    return int(v);
}

IMat as_matrix(const json& j, int rows, int cols, const std::string& where)
{
    if (!j.is_array())
        schema(where, "expected a row-major integer matrix");
    if (int(j.size()) != rows)
        schema(where, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
    IMat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const json& row = j[r];
        std::string w = where + "/" + std::to_string(r);
        if (!row.is_array() || int(row.size()) != cols)
            schema(w, "expected a row of " + std::to_string(cols) + " integers");
        for (int c = 0; c < cols; ++c) {
            if (!row[c].is_number_integer())
                schema(w + "/" + std::to_string(c), "expected an integer");
            m(r, c) = row[c].get<i64>();
        }
    }
    return m;
}

json matrix_json(const IMat& m)
{
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

void check_version(const json& j)
{
    const json& v = field(j, "schema_version", "");
    if (as_int(v, "/schema_version") != kSchemaVersion)
        schema("/schema_version", "unsupported version, expected " + std::to_string(kSchemaVersion));
}

Coeff coeff_of(const json& j, const std::string& where)
{
    if (!j.contains("coeff"))
        return Coeff::Z();
    const json& c = j["coeff"];
    if (!c.is_string())
        schema(where + "/coeff", "expected z, q or fp:<prime>");
    try {
        return Coeff::parse(c.get<std::string>());
    }
    catch (Error& e) {
        schema(where + "/coeff", e.what());
    }
}

Variance variance_of(const json& j, const std::string& where, Variance def)
{
    if (!j.contains("variance"))
        return def;
    const json& v = j["variance"];
    if (v == "left")
        return Variance::Left;
    if (v == "right")
        return Variance::Right;
    schema(where + "/variance", "expected \"left\" or \"right\"");
}

SigmaRep rep_from_json(const json& j, int n, const std::string& where)
{
    std::string kind;
    int rank = 1;
    if (j.is_string())
        kind = j.get<std::string>();
    else if (j.is_object()) {
        kind = field(j, "kind", where).is_string() ? j["kind"].get<std::string>() : "";
        if (j.contains("rank"))
            rank = as_int(j["rank"], where + "/rank", 0);
    }
    else
        schema(where, "expected a representation name or object");
    if (kind == "trivial")
        return trivial_rep(n, rank);
    if (kind == "sign")
        return sign_rep(n);
    if (kind == "regular")
        return regular_rep(n);
    if (kind == "natural")
        return natural_rep(n);
    if (kind == "zero")
        return zero_rep(n);
    if (kind == "superlie")
        return superlie(n);
    if (kind == "matrices") {
        int r = as_int(field(j, "rank", where), where + "/rank", 0);
        const json& g = field(j, "gens", where);
        if (!g.is_array() || int(g.size()) != std::max(0, n - 1))
            schema(where + "/gens", "expected " + std::to_string(std::max(0, n - 1)) + " matrices");
        std::vector<IMat> gens;
        for (int i = 0; i + 1 < n; ++i)
            gens.push_back(as_matrix(g[i], r, r, where + "/gens/" + std::to_string(i)));
        try {
            return SigmaRep(n, r, Side::Left, gens);
        }
        catch (Error& e) {
            schema(where + "/gens", e.what());
        }
    }
    schema(where + "/kind", "unknown representation \"" + kind + "\"");
}

Module builtin_from_json(const json& j, const std::string& where)
{
    const json& b = field(j, "builtin", where);
    if (!b.is_string())
        schema(where + "/builtin", "expected a builtin name");
    std::string name = b.get<std::string>();
    int N = as_int(field(j, "max_degree", where), where + "/max_degree", 0);
    Coeff c = coeff_of(j, where);
    Variance v = variance_of(j, where, Variance::Left);
    auto need = [&](const char* key, int lo) { return as_int(field(j, key, where), where + "/" + key, lo); };
    if (name == "t")
        return module_t(N, c);
    if (name == "varpi")
        return module_varpi(N, c);
    if (name == "varpi_sharp")
        return sharp(module_varpi(N, c));
    if (name == "zero")
        return zero_module(Spine::Gamma, v, N, c);
    if (name == "representable") {
        Module m = representable(need("m", 0), N, c);
        return v == Variance::Right ? dual_module(m) : m;
    }
    if (name == "one_line") {
        int n = need("n", 1);
        bool induced = j.value("induced", false);
        if (induced && n < 2)
            schema(where + "/n", "an induced one-line module needs n >= 2");
        SigmaRep rep = rep_from_json(field(j, "rep", where), induced ? n - 1 : n, where + "/rep");
        return one_line_module(n, rep, induced, N, v, c);
    }
    if (name == "truncated_representable") {
        Module m = sharp(truncated_representable(need("n", 1), need("a", 1), N, c));
        return v == Variance::Right ? dual_module(m) : m;
    }
    schema(where + "/builtin", "unknown builtin \"" + name + "\"");
}

RingTable ring_from_json(const json& j, const std::string& where)
{
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "integers")
            return ring_integers();
        if (s == "dual_numbers")
            return ring_dual_numbers();
        if (s.rfind("product:", 0) == 0)
            return ring_product(std::stoi(s.substr(8)));
        schema(where, "unknown ring \"" + s + "\"");
    }
    RingTable r;
    r.rank = as_int(field(j, "rank", where), where + "/rank", 1);
    const json& mult = field(j, "mult", where);
    if (!mult.is_array() || int(mult.size()) != r.rank)
        schema(where + "/mult", "expected rank x rank x rank table");
    for (int a = 0; a < r.rank; ++a) {
        IMat m = as_matrix(mult[a], r.rank, r.rank, where + "/mult/" + std::to_string(a));
        std::vector<std::vector<i64>> row(r.rank, std::vector<i64>(r.rank));
        for (int b = 0; b < r.rank; ++b)
            for (int c = 0; c < r.rank; ++c)
                row[b][c] = m(b, c);
        r.mult.push_back(row);
    }
    const json& unit = field(j, "unit", where);
    if (!unit.is_array() || int(unit.size()) != r.rank)
        schema(where + "/unit", "expected " + std::to_string(r.rank) + " coordinates");
    for (int a = 0; a < r.rank; ++a)
        r.unit.push_back(as_int(unit[a], where + "/unit/" + std::to_string(a)));
    try {
        check_ring(r);
    }
    catch (Error& e) {
        schema(where, e.what());
    }
    return r;
}

}  // namespace

Module module_from_json(const json& j, const std::string& where)
{
    if (where.empty())
        check_version(j);
    if (j.contains("builtin"))
        return builtin_from_json(j, where);
    Spine spine = Spine::Gamma;
    if (j.contains("spine")) {
        if (j["spine"] == "omega")
            spine = Spine::Omega;
        else if (j["spine"] != "gamma")
            schema(where + "/spine", "expected \"gamma\" or \"omega\"");
    }
    Variance v = variance_of(j, where, Variance::Left);
    if (!j.contains("variance"))
        schema(where + "/variance", "required field is missing");
    Coeff c = coeff_of(j, where);
    int N = as_int(field(j, "max_degree", where), where + "/max_degree", 0);
    const json& vals = field(j, "values", where);
    if (!vals.is_array() || int(vals.size()) != N + 1)
        schema(where + "/values", "expected " + std::to_string(N + 1) + " ranks (degrees 0.." + std::to_string(N) + ")");
    std::vector<int> ranks;
    for (int n = 0; n <= N; ++n)
        ranks.push_back(as_int(vals[n], where + "/values/" + std::to_string(n), 0));
    auto rank = [&](int n) { return ranks[n]; };
    auto shape = [&](int src, int tgt) {
        return v == Variance::Left ? std::make_pair(rank(tgt), rank(src)) : std::make_pair(rank(src), rank(tgt));
    };
    auto mat = [&](const json& m, int src, int tgt, const std::string& w) {
        auto [r, cc] = shape(src, tgt);
        return as_matrix(m, r, cc, w);
    };
    const json& perm = field(j, "perm", where);
    if (!perm.is_array() || int(perm.size()) != N + 1)
        schema(where + "/perm", "expected one list of matrices per degree 0.." + std::to_string(N));
    std::vector<std::vector<IMat>> P(N + 1);
    for (int n = 0; n <= N; ++n) {
        std::string w = where + "/perm/" + std::to_string(n);
        if (!perm[n].is_array() || int(perm[n].size()) != std::max(0, n - 1))
            schema(w, "expected " + std::to_string(std::max(0, n - 1)) + " matrices (s_1..s_{n-1})");
        for (int i = 0; i + 1 < n; ++i)
            P[n].push_back(mat(perm[n][i], n, n, w + "/" + std::to_string(i)));
    }
    auto list = [&](const char* key, int src_off, int tgt_off, bool skip0) {
        std::vector<IMat> out;
        std::string w = where + "/" + key;
        const json& a = field(j, key, where);
        if (!a.is_array() || int(a.size()) != N)
            schema(w, "expected " + std::to_string(N) + " entries (generator index 0.." + std::to_string(N - 1) + ")");
        for (int n = 0; n < N; ++n) {
            if (skip0 && n == 0) {
                out.push_back(IMat(0, 0));
                continue;
            }
            out.push_back(mat(a[n], n + src_off, n + tgt_off, w + "/" + std::to_string(n)));
        }
        return out;
    };
    std::vector<IMat> lambda, tau, omega = list("omega", 1, 0, true);
    if (spine == Spine::Gamma) {
        lambda = list("lambda", 0, 1, false);
        tau = list("tau", 1, 0, false);
    }
    Module m = make_module(spine, v, c, ranks, P, lambda, omega, tau, j.value("name", std::string("module")));
    auto rep = validate_functoriality(m);
    if (!rep.ok)
        fail("module" + (where.empty() ? std::string() : " at " + where) + " is not a functor: " + rep.failure);
    return m;
}

GradedModule graded_from_json(const json& j)
{
    check_version(j);
    GradedModule g;
    if (j.contains("loday")) {
        const json& l = j["loday"];
        RingTable r = ring_from_json(field(l, "ring", "/loday"), "/loday/ring");
        int N = as_int(field(l, "max_degree", "/loday"), "/loday/max_degree", 0);
        const json& ds = field(l, "internal_degrees", "/loday");
        if (!ds.is_array())
            schema("/loday/internal_degrees", "expected a list of integers");
        std::vector<int> degs;
        for (size_t i = 0; i < ds.size(); ++i)
            degs.push_back(as_int(ds[i], "/loday/internal_degrees/" + std::to_string(i)));
        return loday_module(r, N, degs, coeff_of(l, "/loday"));
    }
    const json& members = field(j, "graded", "");
    if (!members.is_array())
        schema("/graded", "expected a list of members");
    for (size_t i = 0; i < members.size(); ++i) {
        std::string w = "/graded/" + std::to_string(i);
        int d = as_int(field(members[i], "internal_degree", w), w + "/internal_degree");
        if (g.at(d))
            schema(w + "/internal_degree", "internal degree " + std::to_string(d) + " appears twice");
        Module m = module_from_json(members[i], w);
        if (m.variance != Variance::Right)
            schema(w + "/variance", "graded members are right modules");
        g.members.emplace_back(d, std::move(m));
    }
    return g;
}

json module_to_json(const Module& m)
{
    json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = m.name;
    j["spine"] = m.spine == Spine::Gamma ? "gamma" : "omega";
    j["variance"] = m.variance == Variance::Left ? "left" : "right";
    j["coeff"] = m.coeff.name();
    j["max_degree"] = m.N;
    j["values"] = m.ranks;
    json perm = json::array();
    for (int n = 0; n <= m.N; ++n) {
        json l = json::array();
        for (auto& g : m.perm[n])
            l.push_back(matrix_json(g));
        perm.push_back(l);
    }
    j["perm"] = perm;
    auto list = [&](const std::vector<IMat>& v, bool skip0) {
        json l = json::array();
        for (size_t n = 0; n < v.size(); ++n)
            l.push_back(skip0 && n == 0 ? json(nullptr) : matrix_json(v[n]));
        return l;
    };
    j["omega"] = list(m.omega, true);
    if (m.spine == Spine::Gamma) {
        j["lambda"] = list(m.lambda, false);
        j["tau"] = list(m.tau, false);
    }
    return j;
}

json graded_to_json(const GradedModule& g)
{
    json j;
    j["schema_version"] = kSchemaVersion;
    json members = json::array();
    for (auto& [d, m] : g.members) {
        json e = module_to_json(m);
        e.erase("schema_version");
        e["internal_degree"] = d;
        members.push_back(e);
    }
    j["graded"] = members;
    return j;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Usage, "cannot open " + path);
    try {
        return json::parse(in);
    }
    catch (json::parse_error& e) {
        schema("", std::string("not valid JSON: ") + e.what());
    }
}

Module load_module(const std::string& path) { return module_from_json(read_json_file(path)); }

GradedModule load_graded(const std::string& path) { return graded_from_json(read_json_file(path)); }

json invariants_to_json(const AbelianGroupInvariants& g)
{
    json j;
    j["free_rank"] = g.free_rank;
    json t = json::array();
    for (auto& d : g.torsion)
        t.push_back(d.get_str());
    j["torsion"] = t;
    return j;
}

}  // namespace einf
