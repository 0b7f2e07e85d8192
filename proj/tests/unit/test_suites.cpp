#include "helpers.hpp"
#include "voa/suites.hpp"

#include "json.hpp"

using namespace voa::suites;

TEST_CASE("suite registry") {
    const auto& names = suite_names();
    for (const char* n : {"jacobi-n4", "appendix-a", "appendix-b", "appendix-c", "decoupling", "coset",
                          "limit-closure", "cc-tables", "gf-counts"})
        CHECK(std::find(names.begin(), names.end(), n) != names.end());
    CHECK_THROWS_AS(run_suite("nosuchsuite"), UnknownSuite);
}

TEST_CASE("suite reports are deterministic") {
    SuiteOptions serial;
    serial.serial = true;
    auto a = run_suite("gf-counts");
    auto b = run_suite("gf-counts", serial);
    REQUIRE(a.cases.size() == b.cases.size());
    CHECK(a.ok());
    for (std::size_t i = 0; i < a.cases.size(); ++i) CHECK(case_json(a.id, a.cases[i], false) == case_json(b.id, b.cases[i], false));
    CHECK(summary_json(a) == summary_json(b));

    auto line = nlohmann::json::parse(case_json(a.id, a.cases[0], false));
    for (const char* key : {"suiteId", "caseId", "kind", "status", "level", "exceptionalLevels", "residualSummary"})
        CHECK(line.contains(key));
    CHECK_FALSE(line.contains("elapsed"));
    CHECK(nlohmann::json::parse(case_json(a.id, a.cases[0], true)).contains("elapsed"));

    auto summary = nlohmann::json::parse(summary_json(a));
    CHECK(summary["status"] == "pass");
    CHECK(summary["cases"] == a.cases.size());
    CHECK(summary["version"] == kVersion);
}

TEST_CASE("skipped cases do not fail a suite") {
    SuiteResult r;
    r.id = "x";
    r.cases.resize(2);
    r.cases[0].status = CaseStatus::Pass;
    r.cases[1].status = CaseStatus::Skip;
    CHECK(r.ok());
    r.cases[1].status = CaseStatus::Fail;
    CHECK_FALSE(r.ok());
    CHECK(r.count(CaseStatus::Pass) == 1);
}

TEST_CASE("cc-tables suite") {
    auto r = run_suite("cc-tables");
    CHECK(r.ok());
    CHECK(r.count(CaseStatus::Fail) == 0);
    CHECK(r.count(CaseStatus::Pass) >= 20);
}

TEST_CASE("property suite") {
    auto cases = property_cases();
    CHECK(cases.size() >= 20);
    for (const auto& c : cases) {
        CAPTURE(c.id);
        CAPTURE(c.note);
        CHECK(c.status == CaseStatus::Pass);
    }
}
