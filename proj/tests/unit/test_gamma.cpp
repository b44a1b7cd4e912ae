#include <doctest.h>

#include "einf/gamma_mod.hpp"
#include "einf/json_io.hpp"

using namespace einf;

TEST_CASE("builtin modules and their cross-effects")
{
    auto t = module_t(4);
    CHECK(validate_functoriality(t).ok);
    CHECK((t.ranks == std::vector<int>{0, 1, 2, 3, 4}));
    CHECK((cross_effect(t).ranks == std::vector<int>{0, 1, 0, 0, 0}));
    CHECK((sharp(module_varpi(4)).ranks == std::vector<int>{0, 1, 2, 3, 4}));
    auto rep = representable(2, 3);
    CHECK(validate_functoriality(rep).ok);
    // based maps 2 -> n: (n+1)^2
    CHECK((rep.ranks == std::vector<int>{1, 4, 9, 16}));
    // cr of the representable: maps hitting every non-basepoint element, sum_k (-1)^k C(n,k) (n-k+1)^2
    CHECK((cross_effect(rep).ranks == std::vector<int>{1, 3, 2, 0}));
    auto ol = one_line_module(3, regular_rep(2), true, 4);
    CHECK(validate_functoriality(ol).ok);
    CHECK((cross_effect(ol).ranks == std::vector<int>{0, 0, 0, 6, 0}));
    auto ld = loday_dual(ring_dual_numbers(), 3);
    CHECK(validate_functoriality(ld).ok);
    CHECK((ld.ranks == std::vector<int>{2, 4, 8, 16}));
}

TEST_CASE("functoriality failures name the relation")
{
    auto bad = module_t(4);
    bad.direct = nullptr;
    bad.cache = std::make_shared<Module::Cache>();
    bad.tau[2](0, 0) = 5;
    auto r = validate_functoriality(bad);
    CHECK(!r.ok);
    CHECK(r.failure.find("tau") != std::string::npos);
}

TEST_CASE("module files")
{
    json ok = json::parse(R"({"schema_version": 1, "builtin": "one_line", "n": 2, "rep": "trivial", "max_degree": 4})");
    Module m = module_from_json(ok);
    CHECK((m.ranks == std::vector<int>{0, 0, 1, 3, 6}));

    auto schema_error = [](const std::string& text) {
        try {
            module_from_json(json::parse(text));
        }
        catch (const Error& e) {
            CHECK(e.kind == ErrorKind::Schema);
            return std::string(e.what());
        }
        FAIL("no error");
        return std::string();
    };
    CHECK(schema_error(R"({"builtin": "zero", "max_degree": 3})").rfind("/schema_version", 0) == 0);
    CHECK(schema_error(R"({"schema_version": 2, "builtin": "zero", "max_degree": 3})").rfind("/schema_version", 0) == 0);
    CHECK(schema_error(R"({"schema_version": 1, "builtin": "one_line", "n": "x", "max_degree": 3})").rfind("/n", 0) == 0);
    CHECK(schema_error(R"({"schema_version": 1, "builtin": "nope", "max_degree": 3})").rfind("/builtin", 0) == 0);
    CHECK(schema_error(R"({"schema_version": 1, "variance": "left", "max_degree": 1, "values": [0]})").rfind("/values", 0) == 0);

    json explicit_t = module_to_json(module_t(3));
    explicit_t["schema_version"] = 1;
    explicit_t["tau"][2][0][0] = 7;
    try {
        module_from_json(explicit_t);
        FAIL("accepted a non-functor");
    }
    catch (const Error& e) {
        CHECK(e.kind == ErrorKind::Domain);
    }
}

TEST_CASE("graded files")
{
    json g = json::parse(R"({"schema_version": 1, "graded": [
        {"internal_degree": 1, "builtin": "zero", "max_degree": 3, "variance": "right"}]})");
    CHECK(graded_from_json(g).members.size() == 1);
    json l = json::parse(R"({"schema_version": 1, "loday": {"ring": "product:2", "max_degree": 3, "internal_degrees": [0, 2]}})");
    auto lg = graded_from_json(l);
    REQUIRE(lg.members.size() == 2);
    CHECK(lg.at(2) != nullptr);
    CHECK(lg.at(1) == nullptr);
}
