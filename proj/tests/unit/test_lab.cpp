#include "helpers.hpp"

#include <functional>
#include <map>
#include <random>

using namespace testing;
using voa::lab::ChargePredicate;
using voa::lab::Evaluator;
using voa::lab::enumerate_basis;
using voa::algebra::preset;
using voa::engine::Context;

namespace {

Field at(const Field& f, const Rational& q) { return voa::lab::evaluate_field(f, q); }

std::vector<Field> eval_all(Evaluator& ev, const std::vector<std::string>& exprs) {
    std::vector<Field> out;
    for (const auto& e : exprs) out.push_back(ev.eval(e));
    return out;
}

// Counts of PBW monomials by (twice weight, charge), computed as a product of
// one-factor generating functions: even factors any multiplicity, odd ones at most once.
std::map<std::pair<int, int>, long> oracle_counts(const voa::terms::GeneratorSet& gens, int maxTwice) {
    std::map<std::pair<int, int>, long> dp{{{0, 0}, 1}};
    for (std::size_t g = 0; g < gens.size(); ++g) {
        for (int d = 0;; ++d) {
            int w = gens[g].weight.twice + 2 * d;
            if (w > maxTwice) break;
            if (w == 0) continue;
            int maxMult = gens.odd(static_cast<int>(g)) ? 1 : maxTwice / w;
            std::map<std::pair<int, int>, long> next;
            for (const auto& [key, c] : dp)
                for (int r = 0; r <= maxMult && key.first + r * w <= maxTwice; ++r)
                    next[{key.first + r * w, key.second + r * gens[g].charge}] += c;
            dp = std::move(next);
        }
    }
    return dp;
}

// Sigma^(l) words with N-l bosons (non-increasing derivative orders) and l fermions
// (strictly decreasing), counted by twice the weight.
std::map<int, long> sigma_counts(int N, int l, int maxTwice) {
    std::map<int, long> out;
    std::function<void(int, int, int, int, bool)> rec = [&](int left, int bound, int twice, int fermionsLeft, bool bosons) {
        if (twice > maxTwice) return;
        if (left == 0) {
            if (bosons) {
                rec(fermionsLeft, maxTwice, twice, 0, false);
            } else {
                ++out[twice];
            }
            return;
        }
        for (int d = 0; d <= bound; ++d) {
            int w = twice + (bosons ? 2 : 3) + 2 * d;
            if (w > maxTwice) break;
            rec(left - 1, bosons ? d : d - 1, w, fermionsLeft, bosons);
        }
    };
    rec(N - l, maxTwice, 0, l, true);
    return out;
}

}  // namespace

TEST_CASE("charge predicates") {
    CHECK(ChargePredicate::any().accepts(5));
    CHECK(ChargePredicate::exact(0).accepts(0));
    CHECK_FALSE(ChargePredicate::exact(0).accepts(2));
    CHECK(ChargePredicate::modulo(2, 0).accepts(-4));
    CHECK_FALSE(ChargePredicate::modulo(2, 0).accepts(-3));
    CHECK(ChargePredicate::modulo(3, 1).accepts(-2));
}

TEST_CASE("enumerate_basis examples") {
    auto sl2 = preset("affine_sl2");
    const auto& g = sl2.gens();
    auto w1 = enumerate_basis(g, Weight::integer(1));
    CHECK(w1.size() == 3);
    auto p = [&](const std::string& s) { return parse(s, g).begin()->first; };
    auto w20 = enumerate_basis(g, Weight::integer(2), ChargePredicate::exact(0));
    CHECK(w20 == std::vector<Monomial>{p("d J"), p("NO(J, J)"), p("NO(Jp, Jm)")});
    // charge is additive with Jp = +1, so the charge-positive part of weight 2 splits as
    // {d Jp, NO(J, Jp)} at charge 1 and {NO(Jp, Jp)} at charge 2
    auto w21 = enumerate_basis(g, Weight::integer(2), ChargePredicate::exact(1));
    CHECK(w21 == std::vector<Monomial>{p("d Jp"), p("NO(J, Jp)")});
    auto w22 = enumerate_basis(g, Weight::integer(2), ChargePredicate::exact(2));
    CHECK(w22 == std::vector<Monomial>{p("NO(Jp, Jp)")});
    CHECK(enumerate_basis(g, Weight::integer(0)) == std::vector<Monomial>{Monomial{}});
}

TEST_CASE("enumerate_basis matches a counting oracle on n4 up to weight 6") {
    auto n4 = preset("n4");
    auto expect = oracle_counts(n4.gens(), 12);
    for (int twice = 0; twice <= 12; ++twice) {
        auto all = enumerate_basis(n4.gens(), Weight{twice});
        std::map<int, long> byCharge;
        std::set<Monomial, voa::terms::MonomialLess> seen;
        for (const auto& m : all) {
            CHECK(voa::terms::is_canonical(m, n4.gens()));
            CHECK(voa::terms::weight(m, n4.gens()) == Weight{twice});
            CHECK(seen.insert(m).second);
            ++byCharge[voa::terms::charge(m, n4.gens())];
        }
        for (int q = -6; q <= 6; ++q) {
            CAPTURE(twice);
            CAPTURE(q);
            long want = expect.count({twice, q}) ? expect[{twice, q}] : 0;
            CHECK(byCharge[q] == want);
            CHECK(static_cast<long>(enumerate_basis(n4.gens(), Weight{twice}, ChargePredicate::exact(q)).size()) == want);
        }
    }
}

TEST_CASE("strong_gen_gf matches brute force") {
    for (int N = 1; N <= 3; ++N)
        for (int l = 0; l <= N; ++l) {
            auto gf = voa::lab::strong_gen_gf(N, l, 10);
            auto brute = sigma_counts(N, l, 20);
            CAPTURE(N);
            CAPTURE(l);
            CHECK(gf.offset.twice == 2 * N + l * l);
            for (std::size_t i = 0; i < gf.coeffs.size(); ++i) {
                int twice = gf.offset.twice + 2 * static_cast<int>(i);
                CHECK(gf.coeffs[i] == (brute.count(twice) ? brute[twice] : 0));
            }
            for (const auto& [twice, c] : brute)
                if (twice <= 20) CHECK(twice >= gf.offset.twice);
        }
    // reduced series for N = 2
    auto r0 = voa::lab::strong_gen_gf(2, 0, 12).reduced;
    auto r1 = voa::lab::strong_gen_gf(2, 1, 12).reduced;
    auto r2 = voa::lab::strong_gen_gf(2, 2, 12).reduced;
    for (std::size_t i = 0; i < r0.size(); ++i) CHECK(r0[i] == (i % 2 == 0 ? 1 : 0));  // weights 2, 4, 6, ...
    for (std::size_t i = 0; i < r1.size(); ++i) CHECK(r1[i] == 1);                    // 5/2, 7/2, ...
    for (std::size_t i = 0; i < r2.size(); ++i) CHECK(r2[i] == (i % 2 == 0 ? 1 : 0));  // 4, 6, 8, ...
    CHECK(voa::lab::strong_gen_gf(2, 1, 12).offset == Weight{5});
    CHECK(voa::lab::strong_gen_gf(2, 2, 12).offset == Weight::integer(4));
}

TEST_CASE("decoupling U[4,0] in the affine sl2 orbifold") {
    auto spec = preset("affine_sl2");
    Context ctx(spec);
    Evaluator ev(ctx);
    Field target = ev.eval("U[4,0]");
    auto gens = eval_all(ev, {"J", "U[0,0]", "U[1,0]", "U[2,0]", "U[3,0]"});
    auto sol = voa::lab::decouple(ctx, target, gens);
    REQUIRE(sol);
    CHECK(sol->exceptionalLevels == std::set<Rational>{Rational(0)});
    CHECK(sol->residualFactors.empty());

    // substituting the coefficients reproduces the target exactly
    voa::lab::WordSpace space(ctx, gens);
    Field back;
    for (std::size_t i = 0; i < sol->words.size(); ++i) back.add_scaled(space.expand(sol->words[i]), sol->coefficients[i]);
    CHECK(back == target);

    // exceptional level: infeasible at k = 0, feasible at k = 1
    CHECK_FALSE(voa::lab::decouple(ctx, target, gens, voa::lab::DecoupleMode::at(Rational(0))));
    CHECK(voa::lab::decouple(ctx, target, gens, voa::lab::DecoupleMode::at(Rational(1))));

    CHECK_THROWS_AS(voa::lab::decouple(ctx, target, {target}), voa::lab::LabError);
    CHECK_THROWS_AS(voa::lab::decouple(ctx, ev.eval("U[4,0] + J"), gens), voa::lab::LabError);
}

TEST_CASE("decoupling in the Z/2 orbifold") {
    auto spec = preset("n4");
    Context ctx(spec);
    Evaluator ev(ctx);
    std::vector<Field> gens;
    for (const auto& g : eval_all(ev, voa::lab::generator_preset("z2")))
        if (voa::lab::field_grade(g, spec.gens()).weight < Weight::integer(4)) gens.push_back(g);
    auto u20 = voa::lab::decouple(ctx, ev.eval("U[2,0]"), gens);
    REQUIRE(u20);
    CHECK(u20->exceptionalLevels == std::set<Rational>{Rational(16)});
    auto s = voa::lab::decouple(ctx, ev.eval("Sigma1p[2,0]"), gens);
    REQUIRE(s);
    CHECK(s->exceptionalLevels == std::set<Rational>{Rational(4)});
}

TEST_CASE("singular_check") {
    auto spec = preset("n4");
    Context sym(spec);
    Evaluator ev(sym);
    auto u1 = eval_all(ev, voa::lab::generator_preset("u1"));
    auto z2 = eval_all(ev, voa::lab::generator_preset("z2"));
    Field v = ev.eval("4*U[0,0] - 2*T - 2*d J + NO(J, J)");
    CHECK(voa::lab::singular_check(spec, v, u1, Rational(-3, 2)).singular);
    CHECK_FALSE(voa::lab::singular_check(spec, v, u1, Rational(1)).singular);

    Field s0 = ev.eval("Sigma0p[0,0]");
    CHECK(voa::lab::singular_check(spec, s0, z2, Rational(1)).singular);
    auto generic = voa::lab::singular_check(spec, s0, z2, std::nullopt);
    CHECK_FALSE(generic.singular);
    // Jm_(1) NO(Jp, Jp) does not vanish at generic k
    CHECK_FALSE(sym.nth_product(Field::generator(Jm), s0, 1).is_zero());

    CHECK(voa::lab::first_lowering_index(Weight::integer(2)) == 2);
    CHECK(voa::lab::first_lowering_index(Weight{3}) == 1);
}

TEST_CASE("singular_search") {
    auto spec = preset("n4");
    Context sym(spec);
    Evaluator ev(sym);
    auto u1 = eval_all(ev, voa::lab::generator_preset("u1"));
    auto rep = voa::lab::singular_search(spec, Weight::integer(2), ChargePredicate::exact(0), u1);
    CHECK(rep.generic.empty());
    REQUIRE(rep.levels().count(Rational(-3, 2)) == 1);
    Field expect = at(ev.eval("4*U[0,0] - 2*T - 2*d J + NO(J, J)"), Rational(-3, 2));
    Context atq(spec.specialize(Rational(-3, 2)));
    for (const auto& e : rep.exceptional) {
        std::vector<Field> g;
        for (const auto& x : u1) g.push_back(at(x, e.level));
        Context c(spec.specialize(e.level));
        for (const auto& w : e.witnesses) {
            CAPTURE(e.level);
            CHECK(voa::lab::singular_check(c, w, g).singular);
        }
        if (e.level == Rational(-3, 2)) {
            REQUIRE(e.witnesses.size() == 1);
            // proportional to the expected field
            const auto& w = e.witnesses[0];
            auto [m, c0] = *expect.begin();
            CHECK(w * c0 == expect * w.coefficient(m));
        }
    }

    auto none = voa::lab::singular_search(spec, Weight::integer(0), ChargePredicate::exact(0), u1);
    CHECK(none.generic.empty());
    CHECK(none.exceptional.empty());
}

TEST_CASE("singular field at k = 1 in the Z/2 orbifold") {
    auto spec = preset("n4");
    Context sym(spec);
    Evaluator ev(sym);
    auto z2 = eval_all(ev, voa::lab::generator_preset("z2"));
    auto rep = voa::lab::singular_search(spec, Weight::integer(2), ChargePredicate::exact(2), z2);
    bool found = false;
    for (const auto& e : rep.exceptional)
        if (e.level == Rational(1))
            for (const auto& w : e.witnesses)
                if (w.size() == 1 && w.begin()->first == ev.eval("NO(Jp, Jp)").begin()->first) found = true;
    CHECK(found);
}

TEST_CASE("in_generated_ideal is not trivially true") {
    auto spec = preset("n4");
    Rational q(-3, 2);
    Context ctx(spec.specialize(q));
    Evaluator ev(ctx, q);
    auto u1 = eval_all(ev, voa::lab::generator_preset("u1"));
    Field seed = ev.eval("4*U[0,0] - 2*T - 2*d J + NO(J, J)");
    CHECK(voa::lab::in_generated_ideal(ctx, {seed}, u1, ctx.nth_product(u1[0], seed, 1)));
    CHECK(voa::lab::in_generated_ideal(ctx, {seed}, u1, ctx.normal_order(u1[0], seed)));
    CHECK_FALSE(voa::lab::in_generated_ideal(ctx, {seed}, u1, ev.eval("T")));
    CHECK_FALSE(voa::lab::in_generated_ideal(ctx, {seed}, u1, ev.eval("U[0,0]")));
}

TEST_CASE("orbifold charge closure") {
    auto spec = preset("n4");
    Context ctx(spec);
    Evaluator ev(ctx);
    auto pred = ChargePredicate::modulo(2, 0);
    std::vector<Field> fs = eval_all(ev, {"J", "Sigma0p[0,0]", "Sigma1m[0,0]", "U[1,0]", "NO(Jm, Gm)"});
    for (const auto& a : fs)
        for (const auto& b : fs)
            for (int n = -1; n < 5; ++n)
                for (const auto& [gr, part] : voa::terms::grade(ctx.nth_product(a, b, n), spec.gens()))
                    CHECK(pred.accepts(gr.charge));
}

TEST_CASE("commutant of affine sl2 in n4") {
    auto spec = preset("n4");
    Context ctx(spec);
    Evaluator ev(ctx);
    auto sub = eval_all(ev, {"J", "Jp", "Jm"});
    CHECK(voa::lab::commutant_basis(ctx, sub, Weight::integer(1)).empty());

    Field L = voa::algebra::sugawara_vector(ctx);
    Field tc = Field::generator(T) - L;
    auto w2 = voa::lab::commutant_basis(ctx, sub, Weight::integer(2));
    REQUIRE(w2.size() == 1);
    CHECK(voa::lab::singular_check(ctx, tc, sub).singular);
    for (const auto& g : sub)
        for (int n = 0; n < 3; ++n) CHECK(ctx.nth_product(g, tc, n).is_zero());
    CHECK(voa::lab::central_charge(ctx, tc) == S("3*k*(3+2*k)/(2+k)"));
    CHECK(voa::lab::central_charge(ctx, Field::generator(T)) == S("6*k"));

    Field wt = ev.eval("NO(Gp, Gm) + NO(Qp, Qm) - d T");
    for (const auto& g : sub)
        for (int n = 0; n < 4; ++n) CHECK(ctx.nth_product(g, wt, n).is_zero());
    CHECK(ctx.nth_product(wt, wt, 5) == vac(S("(8+4*k)*k*(3+2*k)/(2+k)")));
    CHECK_THROWS_AS(voa::lab::central_charge(ctx, wt), voa::lab::NotVirasoro);
}

TEST_CASE("central charge coincidences") {
    auto c = S("3*k*(3+2*k)/(2+k)");
    for (int n = 3; n <= 6; ++n) {
        CHECK(c.evaluate_at(Rational(-(n + 2), 2)) == Rational(-3 * (n - 1) * (n + 2), n - 2));
        CHECK(c.evaluate_at(Rational(n)) == Rational(3 * n * (3 + 2 * n), 2 + n));
        CHECK(c.evaluate_at(Rational(-n)) == Rational(-3 * n * (2 * n - 3), n - 2));
    }
}

TEST_CASE("closure in the weight 3/2 limit algebra") {
    auto spec = preset("limit_Godd4");
    Context ctx(spec);
    Evaluator ev(ctx);
    std::vector<Field> w;
    for (int j = 0; j < 6; ++j) w.push_back(ev.eval("w[" + std::to_string(j) + "]"));
    voa::lab::Closure cl(ctx, w, Weight::integer(9));
    cl.run();
    CHECK(cl.added().empty());
    CHECK(cl.products_checked() > 0);
    CHECK(cl.member(ev.eval("NO(p[0], m[0])")));
    CHECK_FALSE(cl.member(ev.eval("p[0]")));

    // a single generator does not close: its self-products produce new fields
    voa::lab::Closure one(ctx, {w[1]}, Weight::integer(6));
    one.run();
    CHECK_FALSE(one.added().empty());
}

TEST_CASE("identity verification") {
    auto spec = preset("affine_sl2");
    Context ctx(spec);
    CHECK(voa::lab::verify_identity(ctx, "1 - 1").pass);
    CHECK(voa::lab::verify_identity(ctx, "NO(Jp, Jm) - NO(Jm, Jp) - d J").pass);
    auto bad = voa::lab::verify_identity(ctx, "NO(Jp, Jm) - NO(Jm, Jp)");
    CHECK_FALSE(bad.pass);
    CHECK(bad.residual == Field::generator(0, 1));
    CHECK(voa::lab::verify_identity(ctx, "d U[0,0] - U[1,0] - U[0,1]").pass);
    CHECK_THROWS_AS(voa::lab::verify_identity(ctx, "U[0,0] +"), voa::exactq::ParseError);
    CHECK_THROWS_AS(voa::lab::verify_identity(ctx, "Nope[1]"), voa::lab::UnknownField);
}

TEST_CASE("identity files") {
    voa::lab::IdentityRunner runner(preset("affine_sl2"));
    auto res = runner.run(
        "case quasi\n"
        "assert_zero NO(Jp, Jm) - NO(Jm, Jp)\n"
        "    - d J\n"
        "x := U[0,0]\n"
        "case def\n"
        "assert_zero x - NO(Jp, Jm)\n"
        "case wrong\n"
        "assert_zero x\n",
        "t/");
    REQUIRE(res.size() == 3);
    CHECK(res[0].id == "t/quasi");
    CHECK(res[0].status == voa::lab::CaseStatus::Pass);
    CHECK(res[1].status == voa::lab::CaseStatus::Pass);
    CHECK(res[2].status == voa::lab::CaseStatus::Fail);
    CHECK_FALSE(res[2].residual.empty());
    CHECK_THROWS_AS(voa::lab::IdentityRunner::validate("frobnicate x\n"), voa::lab::InputError);
}
