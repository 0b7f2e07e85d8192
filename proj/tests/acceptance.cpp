// Acceptance run: one PASS/FAIL line per criterion.
// Exit status is 0 once every criterion has been evaluated; with --strict it is the number of
// failed criteria.

#include "voa/algebra_lib.hpp"
#include "voa/suites.hpp"

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>

using namespace voa;
using suites::CaseResult;
using suites::CaseStatus;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", s);
    return buf;
}

bool starts_with(const std::string& s, const std::string& p) { return s.compare(0, p.size(), p) == 0; }

/// Cases whose id starts with one of the prefixes: all must pass and there must be `expected`.
Outcome select(const suites::SuiteResult& r, const std::vector<std::string>& prefixes, std::size_t expected) {
    std::size_t n = 0, passed = 0;
    std::string failed;
    for (const auto& c : r.cases) {
        bool hit = false;
        for (const auto& p : prefixes) hit = hit || starts_with(c.id, p);
        if (!hit) continue;
        ++n;
        if (c.status == CaseStatus::Pass) ++passed;
        else failed += (failed.empty() ? "" : ", ") + c.id;
    }
    Outcome o;
    o.pass = n == expected && passed == n;
    o.detail = std::to_string(passed) + "/" + std::to_string(expected) + " cases pass";
    if (n != expected) o.detail += " (found " + std::to_string(n) + ")";
    if (!failed.empty()) o.detail += "; failing: " + failed;
    return o;
}

Outcome whole(const suites::SuiteResult& r, std::size_t expected) { return select(r, {""}, expected); }

}  // namespace

int main(int argc, char** argv) {
    bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
    int failures = 0;
    auto report = [&](int id, const std::string& title, const std::function<Outcome()>& run) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("error: ") + e.what();
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << ": " << o.detail << " ["
                  << fmt_seconds(seconds_since(t0)) << "]" << std::endl;
    };
    auto timed_suite = [](const std::string& name, double limit, const std::function<Outcome(const suites::SuiteResult&)>& f) {
        auto t0 = std::chrono::steady_clock::now();
        auto r = suites::run_suite(name);
        double s = seconds_since(t0);
        Outcome o = f(r);
        if (s > limit) {
            o.pass = false;
            o.detail += "; over the " + fmt_seconds(limit) + " budget";
        }
        return o;
    };

    report(1, "Jacobi identity for all 512 ordered generator triples of n4 at symbolic k", [&] {
        return timed_suite("jacobi-n4", 300, [](const auto& r) { return whole(r, 512); });
    });
    report(2, "the 7 decoupling relations of the first appendix vanish at symbolic k", [&] {
        return timed_suite("appendix-a", 600, [](const auto& r) { return whole(r, 7); });
    });
    report(3, "the 14 singular fields of the U(1)-orbifold at their levels", [&] {
        return timed_suite("appendix-b", 1e9, [](const auto& r) { return whole(r, 14); });
    });
    report(4, "the 13 singular fields of the Z/2-orbifold at their levels", [&] {
        return timed_suite("appendix-c", 1e9, [](const auto& r) { return whole(r, 13); });
    });
    suites::SuiteResult decoupling;
    report(5, "exceptional levels {16}, {4}, {0} and the U_{n+3,0} coefficient for n = 1..4", [&] {
        decoupling = suites::run_suite("decoupling");
        return select(decoupling, {"z2/", "omega/", "sl2-U["}, 3 + 4 + 5);
    });
    report(6, "Sigma-family relation coefficients for n = 1, 2 and the sl2 expansions for n = 0, 1, 2", [&] {
        return select(decoupling, {"sigma-relation/", "sl2-expansion/"}, 12 + 6);
    });
    report(7, "counting series for N = 2, l = 0, 1, 2 against direct counts, and the reduced series", [&] {
        return timed_suite("gf-counts", 1e9, [](const auto& r) { return whole(r, 6); });
    });
    report(8, "coset Virasoro field, commutant conditions and the sixth-order pole of w~", [&] {
        return timed_suite("coset", 1e9, [](const auto& r) { return whole(r, 9); });
    });
    report(9, "w^0..w^5 close under OPE and the 16 products of p and m are members", [&] {
        return timed_suite("limit-closure", 900, [](const auto& r) { return whole(r, 18); });
    });
    report(10, "central-charge coincidences for n = 3..6", [&] {
        return timed_suite("cc-tables", 1e9, [](const auto& r) {
            Outcome o = select(r, {"principal-W/", "parafermion-", "subregular-"}, 28);
            // The one degenerate family member is reported as skip, not pass.
            std::size_t skipped = r.count(CaseStatus::Skip);
            o.pass = r.ok() && r.count(CaseStatus::Pass) == 27 && skipped == 1;
            o.detail = std::to_string(r.count(CaseStatus::Pass)) + " pass, " + std::to_string(skipped) +
                       " degenerate (third subregular family at n = 3)";
            return o;
        });
    });
    report(11, "vertex-algebra invariants, brute-force mode oracle and automorphism checks", [&] {
        suites::SuiteResult r{"properties", suites::property_cases()};
        return whole(r, r.cases.size());
    });
    report(12, "weight-2 singular search in the U(1)-orbifold finds k = -3/2 with the expected witness", [&] {
        auto spec = algebra::preset("n4");
        engine::Context ctx(spec);
        lab::Evaluator ev(ctx);
        std::vector<terms::Field> gens;
        for (const auto& e : lab::generator_preset("u1")) gens.push_back(ev.eval(e));
        auto rep = lab::singular_search(spec, terms::Weight::integer(2), lab::ChargePredicate::exact(0), gens);
        auto want = ev.eval("4 U[0,0] - 2 T - 2 d J + NO(J, J)");
        Outcome o;
        std::string levels;
        for (const auto& l : rep.exceptional) {
            levels += (levels.empty() ? "" : ", ") + l.level.str();
            if (l.level != terms::Rational(-3, 2)) continue;
            for (const auto& w : l.witnesses) {
                const auto& [m, c] = *want.begin();
                auto ratio = w.coefficient(m) / c;
                if (!ratio.is_zero() && w == want * ratio) o.pass = true;
            }
        }
        o.detail = "exceptional levels {" + levels + "}" + (o.pass ? ", witness proportional" : ", no proportional witness");
        return o;
    });

    std::cout << (12 - failures) << "/12 criteria pass" << std::endl;
    return strict ? failures : 0;
}
