#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "einf/json_io.hpp"
#include "einf/operad.hpp"
#include "einf/parallel.hpp"
#include "einf/spectral.hpp"

using namespace einf;

namespace {

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> text;  // summary lines for the text format only
    json extra;                     // structured payload for the json format
};

struct Options {
    std::string coeff = "z";
    std::string format = "text";
    int threads = 0;
    bool dry_run = false;
    int verbose = 0;
    bool coeff_given = false;
};

Coeff parse_coeff(const std::string& s)
{
    try {
        return Coeff::parse(s);
    }
    catch (Error& e) {
        throw Error(ErrorKind::Usage, e.what());
    }
}

// File coefficients win when --coeff is absent; integral files may be
// reduced to any field, other mismatches are refused.
Coeff resolve_coeff(const Coeff& flag, bool given, const Coeff& file)
{
    if (!given)
        return file;
    if (file == flag || file.ring == Ring::Z)
        return flag;
    throw Error(ErrorKind::Usage, "--coeff " + flag.name() + " conflicts with the file's coefficients " + file.name());
}

Coeff graded_coeff(const GradedModule& g)
{
    for (auto& [d, m] : g.members)
        if (m.coeff.ring != Ring::Z)
            return m.coeff;
    return Coeff::Z();
}

std::string join(const std::vector<i64>& v)
{
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string csv_cell(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string o = "\"";
    for (char ch : s)
        o += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return o + "\"";
}

void emit(const Report& r, const Options& o, double seconds)
{
    if (o.format == "json") {
        json j;
        j["command"] = r.command;
        json meta = json::object();
        for (auto& [k, v] : r.meta)
            meta[k] = v;
        j["meta"] = meta;
        j["columns"] = r.columns;
        j["rows"] = r.rows;
        if (!r.extra.is_null())
            j["data"] = r.extra;
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (o.format == "csv") {
        for (size_t i = 0; i < r.columns.size(); ++i)
            std::cout << (i ? "," : "") << csv_cell(r.columns[i]);
        std::cout << "\n";
        for (auto& row : r.rows) {
            for (size_t i = 0; i < row.size(); ++i)
                std::cout << (i ? "," : "") << csv_cell(row[i]);
            std::cout << "\n";
        }
        return;
    }
    std::cout << r.command << "\n";
    for (auto& [k, v] : r.meta)
        std::cout << "  " << k << ": " << v << "\n";
    for (auto& l : r.text)
        std::cout << l << "\n";
    if (!r.columns.empty()) {
        std::vector<size_t> w(r.columns.size());
        for (size_t i = 0; i < w.size(); ++i)
            w[i] = r.columns[i].size();
        for (auto& row : r.rows)
            for (size_t i = 0; i < row.size() && i < w.size(); ++i)
                w[i] = std::max(w[i], row[i].size());
        auto line = [&](const std::vector<std::string>& cells) {
            for (size_t i = 0; i < cells.size(); ++i)
                std::cout << (i ? "  " : "") << std::left << std::setw(int(w[i])) << cells[i];
            std::cout << "\n";
        };
        line(r.columns);
        for (auto& row : r.rows)
            line(row);
    }
    std::cout << "  time: " << std::fixed << std::setprecision(3) << seconds << " s\n";
}

std::string group_str(const AbelianGroupInvariants& g, const Coeff& c) { return g.to_string(c); }

std::string subscript(int q)
{
    std::string s = std::to_string(q);
    return s.size() > 1 ? "{" + s + "}" : s;
}

// ---------------------------------------------------------------- commands

Report cmd_partition(int n, const Coeff& c, int max_n, const Options& o)
{
    if (n < 2 || n > max_n)
        throw Error(ErrorKind::Usage, "--n must lie in 2.." + std::to_string(max_n));
    Report r;
    r.command = "partition";
    r.meta = {{"n", std::to_string(n)}, {"coeff", c.name()}};
    PartitionComplex pc = partition_complex(n);
    std::string counts;
    for (int d = 0; d <= pc.boundary.dim(); ++d)
        counts += (d ? " " : "") + std::to_string(pc.boundary.count(d));
    r.meta.emplace_back("simplices of dP_n by dimension", counts.empty() ? "none" : counts);
    r.meta.emplace_back("non-discrete partitions", std::to_string(pc.elements.size()));
    if (o.dry_run) {
        r.text.push_back("plan: reduced homology of the nerve of non-trivial partitions and of P_n/dP_n");
        return r;
    }
    r.columns = {"complex", "degree", "group"};
    r.text.push_back("reduced homology of dP_" + std::to_string(n) + ":");
    for (auto& [q, g] : partition_boundary_homology(n, c)) {
        if (g.is_zero())
            continue;
        r.rows.push_back({"boundary", std::to_string(q), group_str(g, c)});
        r.text.push_back("  H~_" + subscript(q) + " = " + group_str(g, c));
    }
    r.text.push_back("reduced homology of P_" + std::to_string(n) + "/dP_" + std::to_string(n) + ":");
    for (auto& [q, g] : partition_quotient_homology(n, c)) {
        if (g.is_zero())
            continue;
        r.rows.push_back({"quotient", std::to_string(q), group_str(g, c)});
        r.text.push_back("  H~_" + subscript(q) + " = " + group_str(g, c));
    }
    return r;
}

Report cmd_superlie(int n, bool check, bool dump, const Options& o)
{
    if (n < 1 || n > 6)
        throw Error(ErrorKind::Usage, "--n must lie in 1..6");
    Report r;
    r.command = "superlie";
    r.meta = {{"n", std::to_string(n)}};
    if (o.dry_run) {
        r.text.push_back("plan: top homology of the nerve of non-trivial partitions of " + std::to_string(n) + " with the relabelling action");
        return r;
    }
    SigmaRep s = superlie(n);
    auto ch = character(s);
    r.meta.emplace_back("rank", std::to_string(s.rank));
    r.meta.emplace_back("character", join(ch));
    r.columns = {"check", "value", "verdict"};
    r.rows.push_back({"character", join(ch), ""});
    if (check) {
        if (n <= 1) {
            r.rows.push_back({"restriction", "n/a", "n/a"});
            r.text.push_back("restriction to Sigma_0: n/a");
        }
        else {
            auto res = character(restrict_rep(s, n - 1));
            bool ok = res == regular_character(n - 1);
            r.rows.push_back({"restriction", join(res), ok ? "PASS" : "FAIL"});
            r.text.push_back("restriction to Sigma_" + std::to_string(n - 1) + ": " + join(res) + " " + (ok ? "PASS" : "FAIL"));
        }
    }
    if (dump) {
        json gens = json::array();
        for (auto& g : s.gens) {
            json m = json::array();
            for (int i = 0; i < g.rows(); ++i) {
                json row = json::array();
                for (int j = 0; j < g.cols(); ++j)
                    row.push_back(g(i, j));
                m.push_back(row);
            }
            gens.push_back(m);
        }
        r.extra["generators"] = gens;
        if (o.format == "text")
            r.text.push_back("generators: " + gens.dump());
    }
    return r;
}

Report cmd_tree_quotient(int k, int p, const Coeff& c, const Options& o)
{
    if (k < 2 || k > 4 || p < 0 || p > 3)
        throw Error(ErrorKind::Usage, "supported range: 2 <= k <= 4, 0 <= p <= 3");
    Report r;
    r.command = "tree-quotient";
    i64 per_orbit = factorial(k - 1);
    for (int i = 0; i < p; ++i)
        per_orbit *= factorial(k) - 1;
    r.meta = {{"k", std::to_string(k)}, {"p", std::to_string(p)}, {"coeff", c.name()}, {"predicted degree", std::to_string(p + k - 2)},
              {"predicted rank", std::to_string(per_orbit * factorial(k))}, {"predicted rank per free orbit", std::to_string(per_orbit)}};
    if (o.dry_run)
        return r;
    auto tq = tree_filtration_quotient(k, p, c);
    r.columns = {"degree", "group"};
    for (auto& [q, g] : homology(tq.complex))
        if (!g.is_zero())
            r.rows.push_back({std::to_string(q), group_str(g, c)});
    return r;
}

Report cmd_cross_effect(const std::string& path, const Options& o)
{
    Module f = load_module(path);
    Report r;
    r.command = "cross-effect";
    r.meta = {{"module", f.name}, {"variance", f.variance == Variance::Left ? "left" : "right"}, {"max_degree", std::to_string(f.N)}};
    if (o.dry_run)
        return r;
    if (f.spine != Spine::Gamma)
        fail("cross-effect takes a Gamma module");
    Module l = cross_effect(f);
    r.columns = {"degree", "rank F", "rank cr F"};
    for (int n = 0; n <= f.N; ++n)
        r.rows.push_back({std::to_string(n), std::to_string(f.rank(n)), std::to_string(l.rank(n))});
    Module back = sharp(l);
    bool ok = back.ranks == f.ranks;
    r.meta.emplace_back("sharp(cr F) ranks match", ok ? "yes" : "no");
    r.extra["cross_effect"] = module_to_json(l);
    return r;
}

Report cmd_stable_pi(const std::string& path, int n_max, bool cross_check, const Coeff& flag, const Options& o)
{
    if (n_max < 0)
        throw Error(ErrorKind::Usage, "--max-degree must be non-negative");
    Module f = load_module(path);
    Coeff c = resolve_coeff(flag, o.coeff_given, f.coeff);
    bool right = f.variance == Variance::Right;
    Report r;
    r.command = "stable-pi";
    r.meta = {{"module", f.name}, {"variance", right ? "right (cohomotopy)" : "left (homotopy)"}, {"coeff", c.name()}, {"required max_degree", std::to_string(n_max + 2)}};
    if (f.spine != Spine::Gamma)
        fail("stable-pi takes a Gamma module");
    if (f.N < n_max + 2)
        insufficient("degrees up to " + std::to_string(n_max) + " need the module up to degree N = " + std::to_string(n_max + 2) + ", the file stops at " + std::to_string(f.N));
    if (o.dry_run) {
        i64 total = 0;
        for (int q = 0; q <= n_max + 1; ++q)
            for (int k = 1; k <= q + 1; ++k) {
                i64 shapes = factorial(k - 1);
                for (int i = 0; i < q - (k - 1); ++i)
                    shapes *= factorial(k);
                total += shapes * f.rank(k);
            }
        r.text.push_back("plan: collapsed complex in degrees 0.." + std::to_string(n_max + 1) + ", about " + std::to_string(total) + " basis elements");
        return r;
    }
    auto xi = right ? stable_pi_co_all(f, n_max, c) : stable_pi_all(f, n_max, c);
    std::map<int, AbelianGroupInvariants> bar;
    if (cross_check)
        bar = right ? stable_pi_co_bar(f, n_max, c) : stable_pi_bar(f, n_max, c);
    r.columns = {"n", right ? "pi^n" : "pi_n"};
    if (cross_check) {
        r.columns.push_back("bar route");
        r.columns.push_back("agreement");
    }
    for (int n = 0; n <= n_max; ++n) {
        std::vector<std::string> row{std::to_string(n), group_str(xi[n], c)};
        if (cross_check) {
            row.push_back(group_str(bar[n], c));
            row.push_back(xi[n] == bar[n] ? "AGREE" : "DISAGREE");
        }
        r.rows.push_back(row);
    }
    return r;
}

Report cmd_e2(const std::string& path, int p_max, int q_max, const Coeff& flag, const Options& o)
{
    GradedModule g = load_graded(path);
    Coeff c = resolve_coeff(flag, o.coeff_given, graded_coeff(g));
    Report r;
    r.command = "e2";
    r.meta = {{"p_max", std::to_string(p_max)}, {"q_max", std::to_string(q_max)}, {"coeff", c.name()}, {"entry", "E_2^{p,q} = pi^{p-1} pi_{q-2} C"}};
    if (o.dry_run)
        return r;
    SpectralPage pg = e2_table(g, p_max, q_max, c);
    r.columns = {"p", "q", "group", "fringe"};
    for (auto& [pq, grp] : pg.table) {
        bool fr = std::find(pg.fringe.begin(), pg.fringe.end(), pq) != pg.fringe.end();
        r.rows.push_back({std::to_string(pq.first), std::to_string(pq.second), group_str(grp, c), fr ? "yes" : ""});
    }
    std::string sup;
    for (auto& [p, q] : pg.support())
        sup += "(" + std::to_string(p) + "," + std::to_string(q) + ") ";
    r.meta.emplace_back("nonzero entries", sup.empty() ? "none" : sup);
    return r;
}

Report cmd_obstructions(const std::string& path, int n_max, const Coeff& flag, const Options& o)
{
    GradedModule g = load_graded(path);
    Coeff c = resolve_coeff(flag, o.coeff_given, graded_coeff(g));
    Report r;
    r.command = "obstructions";
    r.meta = {{"n_max", std::to_string(n_max)}, {"coeff", c.name()}};
    if (o.dry_run)
        return r;
    auto rep = obstruction_groups(g, n_max, c);
    r.columns = {"n", "existence pi^n pi_{n-2} C", "uniqueness pi^n pi_{n-1} C"};
    for (int n = 2; n <= n_max; ++n)
        r.rows.push_back({std::to_string(n), n >= 3 ? group_str(rep.existence[n], c) : "", group_str(rep.uniqueness[n], c)});
    r.meta.emplace_back("existence", rep.existence_verdict);
    r.meta.emplace_back("uniqueness", rep.uniqueness_verdict);
    r.meta.emplace_back("finite coefficients (complete convergence)", rep.finite ? "true" : "false");
    r.meta.emplace_back("scope", "primary obstructions only");
    return r;
}

Report cmd_validate(const std::string& module_path, const std::string& graded_path, const Options&)
{
    Report r;
    r.command = "validate";
    r.columns = {"member", "variance", "max_degree", "values", "checked maps"};
    auto row = [&](const std::string& name, const Module& m) {
        auto v = validate_functoriality(m);
        std::string vals;
        for (int x : m.ranks)
            vals += (vals.empty() ? "" : " ") + std::to_string(x);
        r.rows.push_back({name, m.variance == Variance::Left ? "left" : "right", std::to_string(m.N), vals, std::to_string(v.checked)});
    };
    if (!module_path.empty())
        row("module", load_module(module_path));
    if (!graded_path.empty())
        for (auto& [d, m] : load_graded(graded_path).members)
            row("internal degree " + std::to_string(d), m);
    if (module_path.empty() && graded_path.empty())
        throw Error(ErrorKind::Usage, "validate needs --module or --graded");
    r.meta.emplace_back("verdict", "valid");
    return r;
}

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::Usage:
        return 2;
    case ErrorKind::Schema:
        return 3;
    case ErrorKind::Insufficient:
        return 4;
    case ErrorKind::Internal:
        return 5;
    case ErrorKind::Domain:
        return 1;
    }
    return 5;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact computations for E-infinity obstruction theory"};
    app.require_subcommand(1);
    Options o;
    auto* coeff_opt = app.add_option("--coeff", o.coeff, "coefficients: z, q or fp:<prime> (default: the input file's, else z)");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "csv", "json"}))->capture_default_str();
    app.add_option("--threads", o.threads, "worker threads (default: EINF_THREADS or all cores)")->check(CLI::NonNegativeNumber);
    app.add_flag("--dry-run", o.dry_run, "validate inputs and print the plan only");
    app.add_flag("-v,--verbose", o.verbose, "more output on stderr");

    int n = 0, max_n = 7, k = 0, p = 0, n_max = 3, p_max = 4, q_max = 5;
    bool check_restriction = false, dump = false, cross_check = false;
    std::string module_file, graded_file;

    auto* part = app.add_subcommand("partition", "homology of the partition complexes");
    part->add_option("--n", n, "number of points")->required();
    part->add_option("--max-n", max_n, "largest n accepted")->capture_default_str();

    auto* sl = app.add_subcommand("superlie", "the superlie representation");
    sl->add_option("--n", n)->required();
    sl->add_flag("--check-restriction", check_restriction, "compare the restriction with the regular character");
    sl->add_flag("--dump", dump, "print generator matrices");

    auto* tq = app.add_subcommand("tree-quotient", "homology of a filtration quotient of tree space");
    tq->add_option("--k", k)->required();
    tq->add_option("--p", p)->required();

    auto* ce = app.add_subcommand("cross-effect", "cross-effect of a Gamma module");
    ce->add_option("--module", module_file)->required()->check(CLI::ExistingFile);

    auto* sp = app.add_subcommand("stable-pi", "stable homotopy (left) or cohomotopy (right) of a Gamma module");
    sp->add_option("--module", module_file)->required()->check(CLI::ExistingFile);
    sp->add_option("--max-degree", n_max, "largest n")->capture_default_str();
    sp->add_flag("--cross-check", cross_check, "also compute through the bar complex of the cross-effect");

    auto* e2 = app.add_subcommand("e2", "E_2 table of the obstruction spectral sequence");
    e2->add_option("--graded", graded_file)->required()->check(CLI::ExistingFile);
    e2->add_option("--p-max", p_max)->capture_default_str();
    e2->add_option("--q-max", q_max)->capture_default_str();

    auto* ob = app.add_subcommand("obstructions", "obstruction groups for E-infinity structures");
    ob->add_option("--graded", graded_file)->required()->check(CLI::ExistingFile);
    ob->add_option("--n-max", n_max)->capture_default_str();

    auto* va = app.add_subcommand("validate", "check a module or graded module file");
    va->add_option("--module", module_file)->check(CLI::ExistingFile);
    va->add_option("--graded", graded_file)->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (o.threads > 0)
            set_thread_count(o.threads);
        o.coeff_given = coeff_opt->count() > 0;
        Coeff c = parse_coeff(o.coeff);
        auto t0 = std::chrono::steady_clock::now();
        Report r;
        if (*part)
            r = cmd_partition(n, c, max_n, o);
        else if (*sl)
            r = cmd_superlie(n, check_restriction, dump, o);
        else if (*tq)
            r = cmd_tree_quotient(k, p, c, o);
        else if (*ce)
            r = cmd_cross_effect(module_file, o);
        else if (*sp)
            r = cmd_stable_pi(module_file, n_max, cross_check, c, o);
        else if (*e2)
            r = cmd_e2(graded_file, p_max, q_max, c, o);
        else if (*ob)
            r = cmd_obstructions(graded_file, n_max, c, o);
        else if (*va)
            r = cmd_validate(module_file, graded_file, o);
        if (o.dry_run)
            r.meta.emplace_back("dry run", "no computation performed");
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        emit(r, o, secs);
        if (o.verbose)
            std::cerr << "threads: " << thread_count() << "\n";
        return 0;
    }
    catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind);
    }
    catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 5;
    }
}
