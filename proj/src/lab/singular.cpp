#include "span.hpp"

#include <algorithm>

namespace voa::lab {

int first_lowering_index(Weight genWeight) {
    // n > w - 1  <=>  2n > 2w - 2
    int n = (genWeight.twice - 2) / 2;
    while (2 * n <= genWeight.twice - 2) ++n;
    while (2 * (n - 1) > genWeight.twice - 2) --n;
    return n;
}

Field evaluate_field(const Field& f, const Rational& level) {
    return f.map_coefficients([&](const LevelScalar& c) { return LevelScalar(c.evaluate_at(level)); });
}

namespace {

Weight max_weight(const Field& f, const GeneratorSet& gens) {
    Weight w{-1000000};
    for (const auto& [m, c] : f) w = std::max(w, terms::weight(m, gens));
    return w;
}

}  // namespace

SingularCheck singular_check(Context& ctx, const Field& v, const std::vector<Field>& gens) {
    SingularCheck out;
    out.singular = true;
    if (v.is_zero()) return out;
    Weight wv = max_weight(v, ctx.gens());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Weight wg = field_grade(gens[i], ctx.gens()).weight;
        for (int n = first_lowering_index(wg); (wg + wv - (n + 1)).twice >= 0; ++n) {
            ++out.modesChecked;
            Field r = ctx.nth_product(gens[i], v, n);
            if (!r.is_zero()) {
                out.singular = false;
                out.failures.push_back({static_cast<int>(i), n, std::move(r)});
            }
        }
    }
    return out;
}

SingularCheck singular_check(const AlgebraSpec& spec, const Field& v, const std::vector<Field>& gens,
                             std::optional<Rational> level) {
    if (!level) {
        Context ctx(spec);
        return singular_check(ctx, v, gens);
    }
    Context ctx(spec.specialize(*level));
    std::vector<Field> g;
    g.reserve(gens.size());
    for (const auto& x : gens) g.push_back(evaluate_field(x, *level));
    return singular_check(ctx, evaluate_field(v, *level), g);
}

bool in_generated_ideal(Context& ctx, const std::vector<Field>& seeds, const std::vector<Field>& gens,
                        const Field& f) {
    if (f.is_zero()) return true;
    const GeneratorSet& amb = ctx.gens();
    const Weight top = field_grade(f, amb).weight;
    const Rational at0(0);  // coefficients are constants in a specialized context
    MonomialIndex index;
    std::map<int, Echelon<Rational>> layers;  // by twice the weight
    std::vector<Field> queue;
    auto insert = [&](const Field& x) {
        if (x.is_zero()) return;
        Weight w = field_grade(x, amb).weight;
        if (w > top) return;
        if (layers[w.twice].add(to_vector_at(x, index, at0)).independent) queue.push_back(x);
    };
    for (const auto& s : seeds) insert(s);

    std::vector<Weight> gw;
    for (const auto& g : gens) gw.push_back(field_grade(g, amb).weight);
    auto target = to_vector_at(f, index, at0);
    while (!queue.empty()) {
        if (layers[top.twice].contains(target)) return true;
        Field x = std::move(queue.back());
        queue.pop_back();
        const Weight wx = field_grade(x, amb).weight;
        insert(ctx.derivative(x));
        for (std::size_t i = 0; i < gens.size(); ++i) {
            // the product of index n has weight wg + wx - n - 1
            for (int n = (gw[i] + wx).floor() - 1; (gw[i] + wx - (n + 1)) <= top; --n)
                insert(ctx.nth_product(gens[i], x, n));
        }
    }
    return layers[top.twice].contains(target);
}

namespace {

/// For every basis monomial, the concatenated images under the selected modes.
struct ModeSystem {
    std::vector<SparseVec<LevelScalar>> columns;
};

ModeSystem mode_system(Context& ctx, const std::vector<Monomial>& basis, const std::vector<Field>& gens,
                       bool loweringOnly, Weight weight) {
    std::vector<std::pair<int, int>> modes;  // (gen, n)
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Weight wg = field_grade(gens[i], ctx.gens()).weight;
        int n0 = loweringOnly ? first_lowering_index(wg) : 0;
        for (int n = n0; (wg + weight - (n + 1)).twice >= 0; ++n) modes.emplace_back(static_cast<int>(i), n);
    }
    MonomialIndex index;
    ModeSystem sys;
    const int P = static_cast<int>(modes.size());
    for (const auto& b : basis) {
        Field state = Field::monomial(b);
        SparseVec<LevelScalar> col;
        for (int p = 0; p < P; ++p) {
            auto [gi, n] = modes[static_cast<std::size_t>(p)];
            Field r = ctx.nth_product(gens[static_cast<std::size_t>(gi)], state, n);
            for (const auto& [m, c] : r) col.emplace(index.id(m) * P + p, c);
        }
        sys.columns.push_back(std::move(col));
    }
    return sys;
}

SparseVec<Rational> eval_vec(const SparseVec<LevelScalar>& v, const Rational& q) {
    SparseVec<Rational> out;
    for (const auto& [i, c] : v) {
        Rational x = c.evaluate_at(q);
        if (!x.is_zero()) out.emplace(i, x);
    }
    return out;
}

std::vector<std::vector<LevelScalar>> kernel_of(const ModeSystem& sys, std::vector<LevelScalar>* pivots) {
    Echelon<LevelScalar> ech;
    for (const auto& c : sys.columns) {
        auto r = ech.add(c);
        if (r.independent && pivots) pivots->push_back(r.pivot);
    }
    std::vector<std::vector<LevelScalar>> out;
    for (const auto& [tag, dep] : ech.dependencies()) {
        std::vector<LevelScalar> v(sys.columns.size(), LevelScalar(0));
        v[static_cast<std::size_t>(tag)] = LevelScalar(1);
        for (const auto& [t, c] : dep) v[static_cast<std::size_t>(t)] = -c;
        out.push_back(std::move(v));
    }
    return out;
}

/// Scales a coefficient vector to coprime polynomial entries.
std::vector<LevelScalar> clear_denominators(std::vector<LevelScalar> v) {
    LevelPoly l(1);
    for (const auto& c : v) {
        if (c.is_zero()) continue;
        const auto& d = c.denominator();
        l = divmod(l * d, exactq::gcd(l, d)).first;
    }
    LevelPoly g;
    for (auto& c : v) {
        c *= LevelScalar(l);
        if (!c.is_zero()) g = exactq::gcd(g, c.numerator());
    }
    if (!g.is_zero() && g.degree() > 0)
        for (auto& c : v) c /= LevelScalar(g);
    return v;
}

Field combine(const std::vector<Monomial>& basis, const std::vector<LevelScalar>& x) {
    Field f;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (!x[i].is_zero()) f.add(basis[i], x[i]);
    return f;
}

}  // namespace

std::set<Rational> SingularReport::levels() const {
    std::set<Rational> s;
    for (const auto& e : exceptional) s.insert(e.level);
    return s;
}

SingularReport singular_search(const AlgebraSpec& spec, Weight weight, const ChargePredicate& pred,
                               const std::vector<Field>& gens) {
    SingularReport rep;
    rep.weight = weight;
    if (weight.twice <= 0) return rep;
    Context ctx(spec);
    rep.basis = enumerate_basis(spec.gens(), weight, pred);
    auto sys = mode_system(ctx, rep.basis, gens, true, weight);
    std::vector<LevelScalar> pivots;
    auto ker = kernel_of(sys, &pivots);
    for (auto& v : ker) {
        v = clear_denominators(std::move(v));
        rep.generic.push_back(combine(rep.basis, v));
    }

    std::vector<LevelPoly> polys;
    for (const auto& p : pivots) {
        polys.push_back(p.numerator());
        polys.push_back(p.denominator());
    }
    std::set<Rational> candidates;
    detail::split_roots(polys, candidates, rep.residualFactors);
    for (const Rational& q : candidates) {
        std::vector<SparseVec<Rational>> cols;
        try {
            for (const auto& c : sys.columns) cols.push_back(eval_vec(c, q));
        } catch (const exactq::PoleError&) {
            continue;
        }
        Echelon<Rational> at;
        for (const auto& c : cols) at.add(c);
        if (at.dependencies().size() <= ker.size()) continue;
        // Witnesses: kernel vectors at q outside the specialized generic kernel.
        Echelon<Rational> span;
        auto as_sparse = [](const std::vector<Rational>& v) {
            SparseVec<Rational> s;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!v[i].is_zero()) s.emplace(static_cast<int>(i), v[i]);
            return s;
        };
        for (const auto& g : ker) {
            std::vector<Rational> gv;
            for (const auto& c : clear_denominators(g)) gv.push_back(c.evaluate_at(q));
            span.add(as_sparse(gv));
        }
        SingularLevel lvl{q, {}};
        for (const auto& [tag, dep] : at.dependencies()) {
            std::vector<Rational> v(cols.size(), Rational(0));
            v[static_cast<std::size_t>(tag)] = Rational(1);
            for (const auto& [t, c] : dep) v[static_cast<std::size_t>(t)] = -c;
            if (!span.add(as_sparse(v)).independent) continue;
            Field f;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!v[i].is_zero()) f.add(rep.basis[i], LevelScalar(v[i]));
            lvl.witnesses.push_back(std::move(f));
        }
        rep.exceptional.push_back(std::move(lvl));
    }
    return rep;
}

std::vector<Field> commutant_basis(Context& ctx, const std::vector<Field>& subGens, Weight weight,
                                   const ChargePredicate& pred) {
    auto basis = enumerate_basis(ctx.gens(), weight, pred);
    auto sys = mode_system(ctx, basis, subGens, false, weight);
    std::vector<Field> out;
    for (auto& v : kernel_of(sys, nullptr)) out.push_back(combine(basis, clear_denominators(std::move(v))));
    return out;
}

}  // namespace voa::lab
