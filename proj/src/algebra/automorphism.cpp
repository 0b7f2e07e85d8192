#include "voa/algebra_lib.hpp"

namespace voa::algebra {

Field apply_map(Context& ctx, const GeneratorMap& phi, const Field& f) {
    Field out;
    for (const auto& [m, c] : f) {
        if (m.empty()) {
            out.add(m, c);
            continue;
        }
        Field acc = ctx.derivative(phi.images[m.back().gen], m.back().deriv);
        for (std::size_t i = m.size() - 1; i-- > 0;)
            acc = ctx.normal_order(ctx.derivative(phi.images[m[i].gen], m[i].deriv), acc);
        out.add_scaled(acc, c);
    }
    return out;
}

AutomorphismReport check_automorphism(Context& ctx, const GeneratorMap& phi) {
    AutomorphismReport rep;
    const auto& spec = ctx.spec();
    const int N = static_cast<int>(spec.size());
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            int top = engine::max_pole_index(Field::generator(a), Field::generator(b), spec.gens());
            for (int n = 0; n <= top; ++n) {
                Field lhs = ctx.nth_product(phi.images[a], phi.images[b], n);
                const Field* ab = spec.product(a, b, n);
                Field rhs = ab ? apply_map(ctx, phi, *ab) : Field();
                Field r = lhs - rhs;
                if (!r.is_zero()) rep.residuals.push_back({a, b, n, std::move(r)});
            }
        }
    return rep;
}

GeneratorMap identity_map(const AlgebraSpec& spec) {
    GeneratorMap m;
    for (std::size_t i = 0; i < spec.size(); ++i) m.images.push_back(Field::generator(static_cast<int>(i)));
    return m;
}

namespace {

Field gen(const AlgebraSpec& s, const char* name, long c = 1) {
    return Field::generator(s.gens().index_of(name), 0, LevelScalar(Rational(c)));
}

}  // namespace

GeneratorMap n4_theta(const AlgebraSpec& s) {
    GeneratorMap m = identity_map(s);
    auto set = [&](const char* n, Field f) { m.images[static_cast<std::size_t>(s.gens().index_of(n))] = std::move(f); };
    set("J", gen(s, "J", -1));
    set("Jp", gen(s, "Jm"));
    set("Jm", gen(s, "Jp"));
    set("Gp", gen(s, "Gm"));
    set("Gm", gen(s, "Gp"));
    set("Qp", gen(s, "Qm", -1));
    set("Qm", gen(s, "Qp", -1));
    return m;
}

GeneratorMap n4_omega(const AlgebraSpec& s, const Rational& a0, const Rational& a1, const Rational& b0,
                      const Rational& b1) {
    GeneratorMap m = identity_map(s);
    auto G = [&](const char* n, const Rational& c) { return Field::generator(s.gens().index_of(n), 0, LevelScalar(c)); };
    auto set = [&](const char* n, Field f) { m.images[static_cast<std::size_t>(s.gens().index_of(n))] = std::move(f); };
    set("Gp", G("Gp", a0) + G("Qm", a1));
    set("Qm", G("Gp", b0) + G("Qm", b1));
    set("Qp", G("Qp", a0) + G("Gm", -a1));
    set("Gm", G("Qp", -b0) + G("Gm", b1));
    return m;
}

}  // namespace voa::algebra
