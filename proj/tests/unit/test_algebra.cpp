#include "helpers.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace testing;
using voa::algebra::load_algebra;
using voa::algebra::preset;
using voa::engine::AlgebraSpec;
using voa::engine::Context;

namespace {

Field product_or_zero(const AlgebraSpec& s, int a, int b, int n) {
    const Field* f = s.product(a, b, n);
    return f ? *f : Field();
}

// Same generators in the same order and identical pole tables.
void check_same_table(const AlgebraSpec& x, const AlgebraSpec& y) {
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(x.gens()[i].name == y.gens()[i].name);
        CHECK(x.gens()[i].weight == y.gens()[i].weight);
        CHECK(x.gens()[i].charge == y.gens()[i].charge);
        CHECK(x.gens()[i].parity == y.gens()[i].parity);
    }
    const int g = static_cast<int>(x.size());
    for (int a = 0; a < g; ++a)
        for (int b = 0; b < g; ++b)
            for (int n = 0; n < 6; ++n) {
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(n);
                CHECK(product_or_zero(x, a, b, n) == product_or_zero(y, a, b, n));
            }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("n4 preset") {
    auto n4 = preset("n4");
    REQUIRE(n4.size() == 8);
    const int charges[] = {0, 1, -1, 0, 1, -1, 0, 0};
    const char* names[] = {"J", "Jp", "Jm", "T", "Gp", "Gm", "Qp", "Qm"};
    for (int i = 0; i < 8; ++i) {
        CHECK(n4.gens()[static_cast<std::size_t>(i)].name == names[i]);
        CHECK(n4.gens()[static_cast<std::size_t>(i)].charge == charges[i]);
    }
    CHECK(n4.conformal() == T);
}

TEST_CASE("free field and limit presets") {
    auto bc = preset("bc(1)");
    REQUIRE(bc.size() == 2);
    CHECK(bc.gens().odd(0));
    CHECK(bc.gens().odd(1));
    CHECK(product_or_zero(bc, 0, 1, 0) == vac());

    auto lim = preset("limit_Godd4");
    const auto& g = lim.gens();
    int gp = g.index_of("Gp"), gm = g.index_of("Gm"), qp = g.index_of("Qp"), qm = g.index_of("Qm");
    CHECK(product_or_zero(lim, gp, gm, 2) == vac(LevelScalar(2)));
    CHECK(product_or_zero(lim, qp, qm, 2) == vac(LevelScalar(2)));
    int nonzero = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int n = 0; n < 4; ++n)
                if (!product_or_zero(lim, a, b, n).is_zero()) ++nonzero;
    CHECK(nonzero == 4);  // Gp Gm, Gm Gp, Qp Qm, Qm Qp at n = 2

    CHECK_THROWS(preset("nosuch"));
}

TEST_CASE("restrictions of n4") {
    auto n4 = preset("n4");
    check_same_table(n4.restrict_to({"J", "Jp", "Jm"}), preset("affine_sl2"));
    check_same_table(n4.restrict_to({"J", "T", "Gp", "Gm"}), preset("n2"));
}

TEST_CASE("every preset passes Jacobi and the identity automorphism") {
    for (auto name : voa::algebra::preset_names()) {
        if (auto pos = name.find("(n)"); pos != std::string::npos) name.replace(pos, 3, "(2)");
        CAPTURE(name);
        auto spec = preset(name);
        Context ctx(spec);
        CHECK(voa::engine::check_jacobi(ctx, Weight::integer(6)).ok());
        CHECK(voa::algebra::check_automorphism(ctx, voa::algebra::identity_map(spec)).ok());
    }
}

TEST_CASE("documents") {
    auto n4 = voa::algebra::load_algebra_file(std::string(VOA_DATA_DIR) + "/algebras/n4.alg");
    check_same_table(n4, preset("n4"));

    auto h = voa::algebra::load_algebra_file(std::string(VOA_DATA_DIR) + "/algebras/heisenberg1.alg");
    check_same_table(h, preset("heisenberg(1)"));

    // round trip through the document writer
    for (const char* name : {"n2", "affine_sl2", "beta_gamma(2)", "limit_T"}) {
        auto spec = preset(name);
        check_same_table(load_algebra(voa::algebra::to_document(spec)), spec);
    }

    const char* undeclared = R"({"name": "x", "generators": [{"name": "a", "parity": "even", "weight": "1", "charge": 0}],
        "opes": [{"left": "a", "right": "a", "poles": {"2": "b"}}]})";
    CHECK_THROWS_AS(load_algebra(undeclared), voa::terms::UnknownName);
    CHECK_THROWS(load_algebra("{\"generators\": [ }"));
}

TEST_CASE("sugawara vector") {
    auto spec = preset("affine_sl2");
    Context ctx(spec);
    Field L = voa::algebra::sugawara_vector(ctx);
    for (int g = 0; g < 3; ++g) {
        CHECK(ctx.nth_product(L, Field::generator(g), 1) == Field::generator(g));
        CHECK(ctx.nth_product(L, Field::generator(g), 0) == Field::generator(g, 1));
    }
    auto c = voa::lab::central_charge(ctx, L);
    CHECK(c == S("3*k/(k+2)"));
    CHECK(c.evaluate_at(Rational(1)) == Rational(1));
    CHECK_THROWS_AS((void)c.evaluate_at(Rational(-2)), voa::exactq::PoleError);
}

TEST_CASE("n4 automorphisms") {
    auto spec = preset("n4");
    Context ctx(spec);
    CHECK(voa::algebra::check_automorphism(ctx, voa::algebra::n4_theta(spec)).ok());
    CHECK(voa::algebra::check_automorphism(ctx, voa::algebra::n4_omega(spec, 1, 0, 0, 1)).ok());
    CHECK(voa::algebra::check_automorphism(ctx, voa::algebra::n4_omega(spec, 2, 3, 1, 2)).ok());
    CHECK(voa::algebra::check_automorphism(ctx, voa::algebra::n4_omega(spec, Rational(1, 2), Rational(-3), Rational(1, 3), Rational(0))).ok());
    auto det2 = voa::algebra::check_automorphism(ctx, voa::algebra::n4_omega(spec, 2, 0, 0, 1));
    CHECK_FALSE(det2.ok());
    // a sign flip on J alone is not an automorphism (J_(0) Jp = Jp)
    auto phi = voa::algebra::identity_map(spec);
    phi.images[J] = -phi.images[J];
    CHECK_FALSE(voa::algebra::check_automorphism(ctx, phi).ok());
}
