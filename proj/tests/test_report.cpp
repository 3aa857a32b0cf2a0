#include "doctest.h"

#include <algorithm>

#include "dzh/errors.hpp"
#include "report.hpp"

using namespace dzh;
using namespace dzh::report;

TEST_CASE("config validation")
{
    Config c;
    CHECK_NOTHROW(c.validate());
    c.q = 7;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = Config{};
    c.precision = 15;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = Config{};
    c.format = "xml";
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = Config{};
    c.window.max_word = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    CHECK_THROWS_AS(parse_variant("both-ish"), ConfigError);
    CHECK_THROWS_AS(run_all(Config{}, {"nonsense"}), ConfigError);
}

TEST_CASE("json report is deterministic and well formed")
{
    Config c;
    std::vector<std::string> sections{"residue", "genericity", "cocycle", "algebra"};
    std::string a = emit_json(run_all(c, sections));
    std::string b = emit_json(run_all(c, sections));
    CHECK(a == b);
    auto j = nlohmann::json::parse(a);
    REQUIRE(j.contains("config"));
    REQUIRE(j.contains("checks"));
    REQUIRE(j.contains("summary"));
    CHECK(j["config"]["q"] == 5);
    CHECK(j["config"]["action_convention"].get<std::string>().find("right") != std::string::npos);
    for (const auto& k : j["checks"]) {
        for (const char* key : {"id", "module", "anchor", "inputs", "expected", "got", "status"}) CHECK(k.contains(key));
        CHECK(!k["anchor"].get<std::string>().empty());
        std::string st = k["status"];
        CHECK((st == "pass" || st == "fail" || st == "skipped" || st == "skipped-out-of-scope"));
    }
    CHECK(j["summary"]["total"] == j["checks"].size());
    CHECK(j["summary"]["fail"] == 0);
    CHECK(j.dump(2) + "\n" == a);
}

TEST_CASE("variant filtering")
{
    Config c;
    c.variants = VariantSelection::Parahoric;
    Report r = run_all(c, {"cocycle", "epsilon"});
    bool saw_skip = false, saw_run = false;
    for (const auto& k : r.checks) {
        if (k.id.find(".stabilizer") != std::string::npos) {
            CHECK(k.status == Status::Skipped);
            saw_skip = true;
        }
        if (k.id.find(".parahoric") != std::string::npos) {
            CHECK(k.status == Status::Pass);
            saw_run = true;
        }
    }
    CHECK(saw_skip);
    CHECK(saw_run);
    CHECK(r.all_passed());
}

TEST_CASE("text report has one line per check plus a header")
{
    Config c;
    Report r = run_all(c, {"residue", "genericity", "lattice"});
    std::string t = emit_text(r);
    CHECK(static_cast<std::size_t>(std::count(t.begin(), t.end(), '\n')) == r.checks.size() + 1);
    CHECK(t.find("✓ residue.char_sum_eta_squares") != std::string::npos);
    CHECK(r.count(Status::OutOfScope) == 2);
}

TEST_CASE("full default run passes")
{
    Report r = run_all(Config{});
    CHECK(r.count(Status::Fail) == 0);
    CHECK(r.count(Status::Pass) > 70);
    const auto& names = section_names();
    CHECK(names.front() == "residue");
    CHECK(names.back() == "algebra");
}

TEST_CASE("structure constants csv")
{
    Config c;
    c.variants = VariantSelection::Stabilizer;
    c.window = Window{2, 1};
    std::string csv = dump_constants_csv(c);
    CHECK(csv.rfind("u,v,uv,re,im\n", 0) == 0);
    // 5 words x 3 central parts, all pairs, plus header
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 15 * 15 + 1);
    c.variants = VariantSelection::Both;
    CHECK(dump_constants_csv(c).rfind("variant,u,v,uv,re,im\n", 0) == 0);
}
