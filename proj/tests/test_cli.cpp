#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qseries/cli.hpp"
#include "qseries/registry.hpp"

using namespace qs;

namespace {

struct Outcome {
    int code;
    std::string out, err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Outcome call(std::vector<std::string> args) {
    args.insert(args.begin(), "qseries");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_catalog(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p.string();
}

const char* wrong_record = R"([toy]
theorem = 2U
params = 1/2 1/2 1/2 1/2
e = 1/2
lhs_num = q^(1/2)
lhs_den = q
rhs = q^n
classical_value = 1
classical_term = 1/((n-2)*2^n)
)";

} // namespace

TEST_CASE("list") {
    Outcome o = call({"list", "--json"});
    REQUIRE(o.code == 0);
    nlohmann::json j = o.json();
    REQUIRE(j.is_array());
    CHECK(j.size() >= 38);
    for (const auto& row : j) {
        CHECK(row.contains("id"));
        CHECK(row.contains("theorem"));
        CHECK(row.contains("root"));
        CHECK(row.contains("classical_limit"));
    }
    CHECK(call({"list", "--json", "--section", "3"}).json().size() == 34);
    CHECK(call({"--json", "list", "--section", "4"}).json().size() == j.size() - 34);

    Outcome human = call({"list"});
    CHECK(human.code == 0);
    CHECK(std::count(human.out.begin(), human.out.end(), '\n') == static_cast<long>(j.size()));
    CHECK(call({"list", "--section", "5"}).code == 2);
}

TEST_CASE("verify one record") {
    Outcome o = call({"verify", "g1x5pp", "--order", "200", "--json"});
    CHECK(o.code == 0);
    nlohmann::json j = o.json();
    CHECK(j["status"] == "verified");
    CHECK(j["id"] == "g1x5pp");
    CHECK(j["order"] == 200);
    CHECK_FALSE(j.contains("elapsed_ms"));
    CHECK(o.err.find("elapsed_ms") != std::string::npos);

    Outcome again = call({"verify", "g1x5pp", "--order", "200", "--json"});
    CHECK(again.out == o.out);

    Outcome human = call({"verify", "v3x1a", "--order", "24"});
    CHECK(human.code == 0);
    CHECK(human.out.find("verified") != std::string::npos);
}

TEST_CASE("unknown ids and usage errors exit 2") {
    Outcome o = call({"verify", "no-such-record"});
    CHECK(o.code == 2);
    CHECK(o.out.empty());
    CHECK(o.err.find("no-such-record") != std::string::npos);

    Outcome j = call({"--json", "verify", "no-such-record"});
    CHECK(j.code == 2);
    CHECK(j.json()["error"]["kind"] == "UnknownId");

    CHECK(call({"limit", "nope"}).code == 2);
    CHECK(call({"bisect", "nope"}).code == 2);
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"verify", "g1x5pp", "--order", "abc"}).code == 2);
    CHECK(call({"verify", "g1x5pp", "--order", "-4"}).code == 2);
    CHECK(call({"oracle", "jackson", "--n", "2"}).code == 2);
    CHECK(call({"oracle", "jackson", "--n", "2", "--r", "x/y"}).code == 2);
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("catalog override and failures exit 1") {
    std::string path = temp_catalog("qseries_cli_wrong.txt", wrong_record);
    Outcome v = call({"--catalog", path, "verify", "toy", "--order", "24", "--json"});
    CHECK(v.code == 1);
    CHECK(v.json()["status"] != "verified");

    Outcome l = call({"--catalog", path, "--json", "limit", "toy"});
    CHECK(l.code == 1);
    CHECK(l.json()["error"]["kind"] == "DegenerateTerm");

    Outcome all = call({"--catalog", path, "verify-all", "--order", "24"});
    CHECK(all.code == 1);
    CHECK(all.out.find("0/1 verified") != std::string::npos);

    std::string broken = temp_catalog("qseries_cli_broken.txt", "[x]\ntheorem = 9Z\n");
    Outcome b = call({"--catalog", broken, "--json", "list"});
    CHECK(b.code == 2);
    CHECK(b.json()["error"]["kind"] == "CatalogError");

    const char* saved = std::getenv("QSERIES_CATALOG");
    std::string restore = saved ? saved : "";
    setenv("QSERIES_CATALOG", path.c_str(), 1);
    Outcome env = call({"list", "--json"});
    if (saved)
        setenv("QSERIES_CATALOG", restore.c_str(), 1);
    else
        unsetenv("QSERIES_CATALOG");
    CHECK(env.json().size() == 1);
}

TEST_CASE("verify-all summary is deterministic") {
    Outcome a = call({"verify-all", "--order", "12", "--json"});
    Outcome b = call({"verify-all", "--order", "12", "--json", "--parallel"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    nlohmann::json j = a.json();
    CHECK(j["total"] == load_catalog(default_catalog_path()).records.size());
    CHECK(j["counts"]["verified"] == j["total"]);
}

TEST_CASE("limit command") {
    Outcome o = call({"limit", "g1x5pp", "--terms", "40", "--digits", "60", "--json"});
    CHECK(o.code == 0);
    nlohmann::json j = o.json();
    CHECK(j["id"] == "g1x5pp");
    CHECK(j["terms"] == 40);
    CHECK(j["digits"] == 60);
    CHECK(j["declared_base"] == "1/16");
    CHECK(j["within_bound"] == true);
    CHECK(call({"limit", "g1x5pp", "--terms", "40", "--digits", "60", "--json"}).out == o.out);
    CHECK(call({"limit", "g1x5pp", "--terms", "2"}).code == 2);
}

TEST_CASE("bisect command") {
    Outcome o = call({"bisect", "v1x3", "--json"});
    CHECK(o.code == 0);
    nlohmann::json j = o.json();
    CHECK(j["case"] == "v1x3");
    CHECK(j["sign"] == "-");
    CHECK(j["degree"] == 6);
    CHECK(j["plus_consistent"] == false);

    Outcome s = call({"bisect", "v3x1", "--max-deg", "7", "--json"});
    CHECK(s.code == 0);
    CHECK(s.json()["degree"] == 6);
}

TEST_CASE("jackson oracle") {
    Outcome o = call({"--json", "oracle", "jackson", "--n", "0", "--r", "2/3"});
    CHECK(o.code == 0);
    nlohmann::json j = o.json();
    CHECK(j["lhs"] == "1");
    CHECK(j["rhs"] == "1");
    CHECK(j["equal"] == true);

    for (const char* r : {"1/2", "3/5"}) {
        Outcome k = call({"--json", "oracle", "jackson", "--n", "5", "--r", r, "--params", "7:1", "-2:4", "3:6", "1/5:3"});
        CHECK(k.code == 0);
        CHECK(k.json()["equal"] == true);
    }
    CHECK(call({"oracle", "jackson", "--n", "-1", "--r", "1/2"}).code == 2);
}
