#include "voa/ope_engine.hpp"

#include <algorithm>

namespace voa::engine {

namespace {

/// (-1)^d * n (n-1) ... (n-d+1): coefficient of g_(n-d) in (∂^d g)_(n).
Rational deriv_mode_coefficient(int d, int n) {
    Rational c(1);
    for (int i = 0; i < d; ++i) c *= Rational(n - i);
    return (d % 2 == 0) ? c : -c;
}

}  // namespace

int max_pole_index(const Field& a, const Field& b, const GeneratorSet& gens) {
    int best = -1;
    int wa = -1000000, wb = -1000000;
    for (const auto& [m, c] : a) wa = std::max(wa, terms::weight(m, gens).twice);
    for (const auto& [m, c] : b) wb = std::max(wb, terms::weight(m, gens).twice);
    if (a.is_zero() || b.is_zero()) return best;
    return Weight{wa + wb - 2}.floor();
}

Context::Context(AlgebraSpec spec) : spec_(std::move(spec)) {}

void Context::clear_cache() {
    modeCache_.clear();
    productCache_.clear();
    derivCache_.clear();
}

Field Context::factor_mode(const Factor& f, int n, const Monomial& state) {
    Rational c = deriv_mode_coefficient(f.deriv, n);
    if (c.is_zero()) return {};
    Field r = *mode_on(f.gen, n - f.deriv, state);
    if (!c.is_one()) r *= LevelScalar(c);
    return r;
}

Field Context::factor_mode(const Factor& f, int n, const Field& state) {
    Rational c = deriv_mode_coefficient(f.deriv, n);
    Field r;
    if (c.is_zero()) return r;
    for (const auto& [m, v] : state) r.add_scaled(*mode_on(f.gen, n - f.deriv, m), v * LevelScalar(c));
    return r;
}

Field Context::apply_mode(int gen, int m, const Field& state) {
    Field r;
    for (const auto& [mono, v] : state) r.add_scaled(*mode_on(gen, m, mono), v);
    return r;
}

Context::FieldPtr Context::mode_on(int g, int m, const Monomial& r) {
    static const FieldPtr zero = std::make_shared<const Field>();
    if (r.empty()) {
        if (m >= 0) return zero;
        int d = -1 - m;
        return std::make_shared<const Field>(
            Field::monomial(Monomial{Factor{static_cast<std::uint16_t>(g), static_cast<std::uint16_t>(d)}},
                            LevelScalar(Rational(1) / exactq::factorial(d))));
    }
    if ((spec_.gens()[static_cast<std::size_t>(g)].weight + weight(r) - (m + 1)).twice < 0) return zero;
    ModeKey key{g, m, r};
    if (auto it = modeCache_.find(key); it != modeCache_.end()) return it->second;

    const Factor head = r.front();
    const int h = head.gen;
    const int e = head.deriv;
    Monomial rest(r.begin() + 1, r.end());
    Field out;

    if (m < 0) {
        const int d = -1 - m;
        Factor f{static_cast<std::uint16_t>(g), static_cast<std::uint16_t>(d)};
        if (terms::factor_before(f, head) || (f == head && !odd(g))) {
            Monomial w;
            w.reserve(r.size() + 1);
            w.push_back(f);
            w.insert(w.end(), r.begin(), r.end());
            out.add(std::move(w), LevelScalar(Rational(1) / exactq::factorial(d)));
            auto p = std::make_shared<const Field>(std::move(out));
            modeCache_.emplace(std::move(key), p);
            return p;
        }
        if (f == head) {
            // g odd: g_(m) g_(m) = (1/2) [g_(m), g_(m)]
            Rational pre = exactq::factorial(e) / Rational(2);
            for (int j = 0; j < spec_.pole_slots(g, g); ++j) {
                const Field* t = spec_.product(g, g, j);
                if (!t) continue;
                Rational c = exactq::binomial(m, j) * pre;
                if (c.is_zero()) continue;
                out.add_scaled(product_field_monomial(*t, 2 * m - j, rest), LevelScalar(c));
            }
            auto p = std::make_shared<const Field>(std::move(out));
            modeCache_.emplace(std::move(key), p);
            return p;
        }
    }

    // g_(m) e! h_(-1-e) R' = e! ( [g_(m), h_(-1-e)] R' + sigma h_(-1-e) g_(m) R' )
    const Rational ef = exactq::factorial(e);
    for (int j = 0; j < spec_.pole_slots(g, h); ++j) {
        const Field* t = spec_.product(g, h, j);
        if (!t) continue;
        Rational c = exactq::binomial(m, j) * ef;
        if (c.is_zero()) continue;
        out.add_scaled(product_field_monomial(*t, m - 1 - e - j, rest), LevelScalar(c));
    }
    FieldPtr inner = mode_on(g, m, rest);
    if (!inner->is_zero()) {
        int sigma = (odd(g) && odd(h)) ? -1 : 1;
        Field moved;
        for (const auto& [mono, v] : *inner) moved.add_scaled(*mode_on(h, -1 - e, mono), v);
        out.add_scaled(moved, LevelScalar(ef * Rational(sigma)));
    }
    auto p = std::make_shared<const Field>(std::move(out));
    modeCache_.emplace(std::move(key), p);
    return p;
}

Field Context::product_field_monomial(const Field& x, int n, const Monomial& r) {
    Field out;
    for (const auto& [m, v] : x) out.add_scaled(*product_on(m, n, r), v);
    return out;
}

Context::FieldPtr Context::product_on(const Monomial& x, int n, const Monomial& r) {
    static const FieldPtr zero = std::make_shared<const Field>();
    if (x.empty()) return n == -1 ? std::make_shared<const Field>(Field::monomial(r)) : zero;
    // Weight truncation: the result has weight w(x)+w(r)-n-1 >= 0.
    Weight wx = weight(x), wr = weight(r);
    if ((wx + wr - (n + 1)).twice < 0) return zero;
    if (x.size() == 1) {
        Rational c = deriv_mode_coefficient(x[0].deriv, n);
        if (c.is_zero()) return zero;
        FieldPtr base = mode_on(x[0].gen, n - x[0].deriv, r);
        if (c.is_one()) return base;
        return std::make_shared<const Field>(*base * LevelScalar(c));
    }
    ProductKey key{x, n, r};
    if (auto it = productCache_.find(key); it != productCache_.end()) return it->second;

    // (:uY:)_(n) R = sum_j u_(-1-j) (Y_(n+j) R) + sigma sum_j Y_(n-1-j) (u_(j) R)
    const Factor u = x.front();
    Monomial y(x.begin() + 1, x.end());
    Monomial um{u};
    Weight wy = weight(y), wu = weight(um);
    Field out;
    const int jmax1 = (wy + wr).floor() - 1 - n;
    for (int j = 0; j <= jmax1; ++j) {
        FieldPtr inner = product_on(y, n + j, r);
        if (inner->is_zero()) continue;
        out += factor_mode(u, -1 - j, *inner);
    }
    Parity py = terms::parity(y, spec_.gens());
    int sigma = (odd(u.gen) && py == Parity::Odd) ? -1 : 1;
    const int jmax2 = (wu + wr).floor() - 1;
    for (int j = 0; j <= jmax2; ++j) {
        Field inner = factor_mode(u, j, r);
        if (inner.is_zero()) continue;
        Field acc;
        for (const auto& [mono, v] : inner) acc.add_scaled(*product_on(y, n - 1 - j, mono), v);
        out.add_scaled(acc, LevelScalar(sigma));
    }
    auto p = std::make_shared<const Field>(std::move(out));
    productCache_.emplace(std::move(key), p);
    return p;
}

Field Context::nth_product(const Field& a, const Field& b, int n) {
    Field out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) out.add_scaled(*product_on(ma, n, mb), ca * cb);
    return out;
}

OpeResult Context::ope(const Field& a, const Field& b) {
    OpeResult res;
    int top = max_pole_index(a, b, gens());
    for (int n = 0; n <= top; ++n) {
        Field f = nth_product(a, b, n);
        if (!f.is_zero()) res.poles.emplace(n, std::move(f));
    }
    return res;
}

Context::FieldPtr Context::derivative_on(const Monomial& r) {
    static const FieldPtr zero = std::make_shared<const Field>();
    if (r.empty()) return zero;
    if (auto it = derivCache_.find(r); it != derivCache_.end()) return it->second;
    // r = e! h_(-1-e) R';  ∂ r = e! ((e+1) h_(-2-e) R' + h_(-1-e) ∂R')
    const Factor head = r.front();
    Monomial rest(r.begin() + 1, r.end());
    const Rational ef = exactq::factorial(head.deriv);
    Field out = *mode_on(head.gen, -2 - head.deriv, rest) * LevelScalar(ef * Rational(head.deriv + 1));
    FieldPtr dr = derivative_on(rest);
    for (const auto& [m, v] : *dr) out.add_scaled(*mode_on(head.gen, -1 - head.deriv, m), v * LevelScalar(ef));
    auto p = std::make_shared<const Field>(std::move(out));
    derivCache_.emplace(r, p);
    return p;
}

Field Context::derivative(const Field& f) {
    Field out;
    for (const auto& [m, v] : f) out.add_scaled(*derivative_on(m), v);
    return out;
}

Field Context::derivative(const Field& f, int times) {
    Field r = f;
    for (int i = 0; i < times; ++i) r = derivative(r);
    return r;
}

Field Context::normalize(const Field& raw) {
    Field out;
    for (const auto& [m, v] : raw) {
        if (terms::is_canonical(m, gens())) {
            out.add(m, v);
            continue;
        }
        Field acc = Field::monomial(Monomial{m.back()});
        for (std::size_t i = m.size() - 1; i-- > 0;) {
            Field next;
            for (const auto& [mono, c] : acc) next.add_scaled(factor_mode(m[i], -1, mono), c);
            acc = std::move(next);
        }
        out.add_scaled(acc, v);
    }
    return out;
}

JacobiReport check_jacobi(const AlgebraSpec& spec, Weight maxWeight) {
    Context ctx(spec);
    return check_jacobi(ctx, maxWeight);
}

JacobiReport check_jacobi(Context& ctx, Weight maxWeight) {
    JacobiReport rep;
    const auto& gens = ctx.gens();
    const int N = static_cast<int>(gens.size());
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c) {
                if (gens[a].weight + gens[b].weight + gens[c].weight > maxWeight) continue;
                auto part = check_jacobi_triple(ctx, a, b, c);
                rep.checked += part.checked;
                for (auto& f : part.failures) rep.failures.push_back(std::move(f));
            }
    return rep;
}

JacobiReport check_jacobi_triple(Context& ctx, int a, int b, int c) {
    JacobiReport rep;
    const auto& gens = ctx.gens();
    Weight wa = gens[a].weight, wb = gens[b].weight, wc = gens[c].weight;
    Field A = Field::generator(a), B = Field::generator(b), C = Field::generator(c);
    int sigma = (gens.odd(a) && gens.odd(b)) ? -1 : 1;
    int nmax = (wb + wc).floor() - 1;
    for (int n = 0; n <= nmax; ++n) {
        Field bc = ctx.nth_product(B, C, n);
        int mmax = (wa + wb + wc).floor() - n - 1;
        for (int m = 0; m <= mmax; ++m) {
            Field lhs = ctx.nth_product(A, bc, m);
            lhs.add_scaled(ctx.nth_product(B, ctx.nth_product(A, C, m), n), LevelScalar(-sigma));
            Field rhs;
            for (int j = 0; j <= m; ++j) {
                Field ab = ctx.nth_product(A, B, j);
                if (ab.is_zero()) continue;
                rhs.add_scaled(ctx.nth_product(ab, C, m + n - j), LevelScalar(exactq::binomial(m, j)));
            }
            ++rep.checked;
            Field res = lhs - rhs;
            if (!res.is_zero()) rep.failures.push_back({a, b, c, m, n, std::move(res)});
        }
    }
    return rep;
}

}  // namespace voa::engine
