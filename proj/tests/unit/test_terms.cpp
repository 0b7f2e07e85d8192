#include "helpers.hpp"

#include <random>

using namespace testing;
using voa::terms::Factor;
using voa::terms::Grade;
using voa::terms::GeneratorSet;
using voa::terms::parse_field;
using voa::terms::print_field;

namespace {

const GeneratorSet& n4() {
    static const auto spec = voa::algebra::preset("n4");
    return spec.gens();
}

Monomial mono(std::initializer_list<std::pair<int, int>> fs) {
    Monomial m;
    for (auto [g, d] : fs) m.push_back(Factor{static_cast<std::uint16_t>(g), static_cast<std::uint16_t>(d)});
    return m;
}

}  // namespace

TEST_CASE("parse_field examples") {
    auto u20 = parse_field("NO(d^2 Jp, Jm)", n4());
    CHECK(u20.normalized);
    CHECK(u20.field == Field::monomial(mono({{Jp, 2}, {Jm, 0}})));

    CHECK(parse("1", n4()) == vac());

    auto two = parse("(2*k+3)/(k+2) T + NO(Qp, Qm)", n4());
    CHECK(two.size() == 2);
    CHECK(two.coefficient(mono({{T, 0}})) == S("(2*k+3)/(k+2)"));
    CHECK(two.coefficient(mono({{Qp, 0}, {Qm, 0}})) == LevelScalar(1));

    // out-of-order words are returned raw and flagged
    auto raw = parse_field("NO(Jm, Jp)", n4());
    CHECK_FALSE(raw.normalized);
}

TEST_CASE("parse_field errors") {
    CHECK_THROWS_AS(parse_field("NO(Jp, Xyz)", n4()), voa::terms::UnknownName);
    CHECK_THROWS_AS(parse_field("NO(Jp, Jm", n4()), voa::exactq::ParseError);
    CHECK_THROWS(parse_field("d^-1 J", n4()));
    try {
        parse_field("J + * T", n4());
        FAIL("expected a parse error");
    } catch (const voa::exactq::ParseError& e) {
        CHECK(e.position() > 0);
    }
}

TEST_CASE("print_field examples") {
    CHECK(print_field(vac(), n4()) == "1");
    CHECK(print_field(Field::monomial(mono({{Jp, 2}, {Jm, 0}})), n4()) == "NO(d^2 Jp, Jm)");
    Field half = gen(J, 1) * LevelScalar(Rational(-1, 2));
    auto text = print_field(half, n4());
    CHECK(text.find("-1/2") != std::string::npos);
    CHECK(parse(text, n4()) == half);
}

TEST_CASE("print/parse round trip on random canonical fields") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> g(0, 7), d(0, 3), len(0, 4), c(-9, 9);
    const char* coefs[] = {"k", "-1/2", "(2*k+3)/(k+2)", "k^2-7", "3"};
    for (int trial = 0; trial < 100; ++trial) {
        Field f;
        int terms = 1 + trial % 4;
        for (int t = 0; t < terms; ++t) {
            Monomial m;
            int n = len(rng);
            for (int i = 0; i < n; ++i) m.push_back(Factor{static_cast<std::uint16_t>(g(rng)), static_cast<std::uint16_t>(d(rng))});
            std::sort(m.begin(), m.end(), voa::terms::factor_before);
            if (!voa::terms::is_canonical(m, n4())) continue;
            f.add(m, S(coefs[static_cast<std::size_t>(t) % 5]) * LevelScalar(c(rng)));
        }
        auto text = print_field(f, n4());
        auto back = parse_field(text, n4());
        CHECK(back.normalized);
        CHECK(back.field == f);
        CHECK(print_field(back.field, n4()) == text);
    }
}

TEST_CASE("PBW order and odd squares") {
    // ascending generator, then descending derivative order
    CHECK(voa::terms::factor_before(Factor{J, 2}, Factor{J, 1}));
    CHECK(voa::terms::factor_before(Factor{J, 0}, Factor{Jp, 5}));
    CHECK(voa::terms::is_canonical(mono({{J, 1}, {J, 0}, {Jp, 0}}), n4()));
    CHECK_FALSE(voa::terms::is_canonical(mono({{Jp, 0}, {J, 0}}), n4()));
    CHECK(voa::terms::is_canonical(mono({{J, 0}, {J, 0}}), n4()));
    CHECK_FALSE(voa::terms::is_canonical(mono({{Gp, 0}, {Gp, 0}}), n4()));
    CHECK(voa::terms::is_canonical(mono({{Gp, 1}, {Gp, 0}}), n4()));

    voa::terms::MonomialLess less;
    Monomial a = mono({{J, 0}}), b = mono({{J, 0}, {J, 0}}), c = mono({{Jp, 0}});
    CHECK((less(a, b) != less(b, a)));
    CHECK((less(a, c) != less(c, a)));
    CHECK_FALSE(less(a, a));
}

TEST_CASE("derivative_raw") {
    CHECK(voa::terms::derivative_raw(vac()).is_zero());
    CHECK(voa::terms::derivative_raw(gen(J)) == gen(J, 1));
    // d U[0,0] = U[1,0] + U[0,1]
    Field u00 = Field::monomial(mono({{Jp, 0}, {Jm, 0}}));
    Field expect = Field::monomial(mono({{Jp, 1}, {Jm, 0}})) + Field::monomial(mono({{Jp, 0}, {Jm, 1}}));
    CHECK(voa::terms::derivative_raw(u00) == expect);
}

TEST_CASE("grade") {
    auto g = voa::terms::grade(parse("NO(Jp, Jm)", n4()), n4());
    REQUIRE(g.size() == 1);
    CHECK(g.begin()->first == Grade{Weight::integer(2), 0});

    g = voa::terms::grade(parse("NO(Jp, Jp)", n4()), n4());
    REQUIRE(g.size() == 1);
    CHECK(g.begin()->first == Grade{Weight::integer(2), 2});

    g = voa::terms::grade(parse("NO(Jp, Gm)", n4()), n4());
    REQUIRE(g.size() == 1);
    CHECK(g.begin()->first == Grade{Weight{5}, 0});

    // components sum back to the field
    Field mixed = parse("k*J + NO(Jp, Jp) - 2*d Gp + NO(Gp, Qm) + 1", n4());
    auto parts = voa::terms::grade(mixed, n4());
    CHECK(parts.size() == 5);
    Field sum;
    for (const auto& [gr, f] : parts) {
        sum += f;
        CHECK(voa::terms::homogeneous_grade(f, n4()) == gr);
    }
    CHECK(sum == mixed);
}

TEST_CASE("weight and charge are additive") {
    auto m = mono({{J, 1}, {Jp, 0}, {Gp, 2}, {Qm, 0}});
    CHECK(voa::terms::weight(m, n4()) == Weight{2 * 2 + 2 + 2 * 7 / 2 + 3});
    CHECK(voa::terms::weight(m, n4()).str() == "8");
    CHECK(voa::terms::charge(m, n4()) == 2);
    CHECK(voa::terms::parity(m, n4()) == voa::terms::Parity::Even);
    CHECK(voa::terms::weight(Monomial{}, n4()) == Weight{0});
}
