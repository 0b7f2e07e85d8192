#include "helpers.hpp"

#include <random>

using namespace testing;
using voa::exactq::ArithmeticError;
using voa::exactq::PoleError;
using voa::exactq::rational_roots;

namespace {

LevelPoly poly(std::initializer_list<long> ascending) {
    std::vector<Rational> c;
    for (long x : ascending) c.emplace_back(x);
    return LevelPoly(c);
}

// Random scalar p/q with small integer coefficients, q nonzero.
LevelScalar random_scalar(std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-4, 4), deg(0, 2);
    auto rp = [&](bool nonzero) {
        for (;;) {
            std::vector<Rational> c;
            int d = deg(rng);
            for (int i = 0; i <= d; ++i) c.emplace_back(coef(rng));
            LevelPoly p(c);
            if (!nonzero || !p.is_zero()) return p;
        }
    };
    return LevelScalar::normalize(rp(false), rp(true));
}

}  // namespace

TEST_CASE("rational canonical form") {
    Rational a(6, -4);
    CHECK(a.str() == "-3/2");
    CHECK(Rational(0, 5).str() == "0");
    CHECK(Rational(0, 5).denominator() == 1);
    CHECK(Rational::parse("-10/4") == Rational(-5, 2));
    CHECK_THROWS_AS((void)(Rational(1) / Rational(0)), ArithmeticError);
}

TEST_CASE("normalize cancels common factors") {
    // (2k^2 + 4k)/(k + 2) = 2k
    auto s = LevelScalar::normalize(poly({0, 4, 2}), poly({2, 1}));
    CHECK(s == LevelScalar::k() * LevelScalar(2));
    CHECK(s.is_polynomial());
    CHECK(LevelScalar::normalize(poly({0, 1}), poly({1})) == LevelScalar::k());

    // 3k(3+2k)/(2+k): numerator 6k^2+9k over monic k+2
    auto c = LevelScalar::normalize(poly({0, 9, 6}), poly({2, 1}));
    CHECK(c.numerator() == poly({0, 9, 6}));
    CHECK(c.denominator() == poly({2, 1}));

    // scaling top and bottom leaves the canonical form unchanged; denominator becomes monic
    auto d = LevelScalar::normalize(poly({0, 27, 18}), poly({6, 3}));
    CHECK(d == c);
    CHECK(d.denominator().leading() == Rational(1));
    CHECK(LevelScalar::normalize(d.numerator(), d.denominator()) == d);
    CHECK_THROWS_AS(LevelScalar::normalize(poly({1}), LevelPoly()), ArithmeticError);
}

TEST_CASE("evaluate_at") {
    LevelScalar sixk = S("6*k");
    CHECK(sixk.evaluate_at(Rational(1)) == Rational(6));
    CHECK(sixk.evaluate_at(Rational(-5, 2)) == Rational(-15));
    LevelScalar c = S("3*k*(3+2*k)/(2+k)");
    CHECK(c.evaluate_at(Rational(1)) == Rational(5));
    try {
        (void)c.evaluate_at(Rational(-2));
        FAIL("expected a pole error");
    } catch (const PoleError& e) {
        CHECK(std::string(e.what()).find("k+2") != std::string::npos);
    }
}

TEST_CASE("rational_roots") {
    auto r = rational_roots(poly({16, -1}));
    CHECK(r.roots == std::vector<Rational>{Rational(16)});
    CHECK(r.residual.empty());

    r = rational_roots(poly({0, 2, 1}));
    CHECK(r.roots == std::vector<Rational>{Rational(-2), Rational(0)});
    CHECK(r.residual.empty());

    r = rational_roots(poly({1, 0, 1}));
    CHECK(r.roots.empty());
    REQUIRE(r.residual.size() == 1);
    CHECK(r.residual[0] == poly({1, 0, 1}));

    // (2k+3)^2 (k-1) (k^2-2): roots with multiplicity, and the product reconstructs p up to a constant
    LevelPoly p = poly({3, 2}) * poly({3, 2}) * poly({-1, 1}) * poly({-2, 0, 1});
    r = rational_roots(p);
    CHECK(r.roots == std::vector<Rational>{Rational(-3, 2), Rational(-3, 2), Rational(1)});
    LevelPoly back(Rational(1));
    for (const auto& q : r.roots) back = back * LevelPoly(std::vector<Rational>{-q, Rational(1)});
    for (const auto& f : r.residual) back = back * f;
    CHECK(back.monic() == p.monic());

    CHECK_THROWS_AS(rational_roots(LevelPoly()), ArithmeticError);
}

TEST_CASE("scalar parse and print round trip") {
    for (const char* t : {"(2*k+3)/(k+2)", "-5/2", "k", "k^3-1/3", "0", "1/(k^2+1)"}) {
        auto s = S(t);
        CHECK(S(s.str()) == s);
    }
    CHECK(S("(2*k+3)/(k+2)") == S("(4*k+6)/(2*k+4)"));
    CHECK(S("k^2") == S("k*k"));
    CHECK_THROWS_AS(S("k^"), voa::exactq::ParseError);
    CHECK_THROWS_AS(S("(k+1"), voa::exactq::ParseError);
}

TEST_CASE("field axioms on random scalars") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        auto a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == LevelScalar(0));
        if (!a.is_zero()) CHECK(a * a.inverse() == LevelScalar(1));
        // canonical form invariants
        CHECK(a.denominator().leading() == Rational(1));
        CHECK(voa::exactq::gcd(a.numerator(), a.denominator()).is_constant());
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 9);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        auto a = random_scalar(rng), b = random_scalar(rng);
        Rational q(num(rng), den(rng));
        try {
            Rational x = a.evaluate_at(q), y = b.evaluate_at(q);
            CHECK((a + b).evaluate_at(q) == x + y);
            CHECK((a * b).evaluate_at(q) == x * y);
            if (!y.is_zero() && !b.is_zero()) CHECK((a / b).evaluate_at(q) == x / y);
            ++checked;
        } catch (const PoleError&) {
        }
    }
    CHECK(checked > 200);
}
