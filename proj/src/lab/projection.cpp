#include "span.hpp"

namespace voa::lab {

LevelScalar central_charge(Context& ctx, const Field& L) {
    auto ope = ctx.ope(L, L);
    auto pole = [&](int n) {
        auto it = ope.poles.find(n);
        return it == ope.poles.end() ? Field() : it->second;
    };
    if (pole(0) != ctx.derivative(L)) throw NotVirasoro("L_(0)L differs from dL");
    if (pole(1) != L * LevelScalar(2)) throw NotVirasoro("L_(1)L differs from 2L");
    if (!pole(2).is_zero()) throw NotVirasoro("L_(2)L is nonzero");
    for (const auto& [n, f] : ope.poles)
        if (n > 3) throw NotVirasoro("L has a pole of order above 4 with itself");
    Field top = pole(3);
    if (top.is_zero()) return LevelScalar(0);
    if (top.size() != 1 || !top.begin()->first.empty()) throw NotVirasoro("L_(3)L is not a multiple of the vacuum");
    return top.begin()->second * LevelScalar(2);
}

namespace {

bool is_pair(const Monomial& m, int a, int b) {
    return m.size() == 2 && m[0].gen == a && m[1].gen == b;
}

std::vector<Monomial> pair_space(const GeneratorSet& gens, int a, int b, Weight w) {
    std::vector<Monomial> out;
    int rest = w.twice - gens[static_cast<std::size_t>(a)].weight.twice - gens[static_cast<std::size_t>(b)].weight.twice;
    if (rest < 0 || rest % 2) return out;
    int total = rest / 2;
    bool odd = gens.odd(a);
    for (int i = total; i >= 0; --i) {
        int j = total - i;
        if (a == b && (i < j || (odd && i == j))) continue;
        out.push_back({{static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(i)},
                       {static_cast<std::uint16_t>(b), static_cast<std::uint16_t>(j)}});
    }
    return out;
}

}  // namespace

LevelScalar pair_projection(Context& ctx, const Field& f, int a, int b, const Monomial& target) {
    if (!is_pair(target, a, b) || !terms::is_canonical(target, ctx.gens()))
        throw LabError("projection target must be a PBW word in the chosen pair");
    Weight w = ctx.weight(target);
    MonomialIndex index;
    Echelon<LevelScalar> image;
    for (const auto& m : pair_space(ctx.gens(), a, b, w - 1)) {
        Field d = ctx.derivative(Field::monomial(m));
        Field part;
        for (const auto& [mm, c] : d)
            if (is_pair(mm, a, b)) part.add(mm, c);
        image.add(to_vector(part, index));
    }
    std::size_t quotientDim = pair_space(ctx.gens(), a, b, w).size() - image.rank();
    if (quotientDim != 1) throw LabError("pair quotient is not one-dimensional at this weight");
    Field part;
    for (const auto& [m, c] : f)
        if (is_pair(m, a, b) && ctx.weight(m) == w) part.add(m, c);
    auto t = image.express_residual(to_vector(Field::monomial(target), index));
    if (t.empty()) throw LabError("projection target lies in the derivative image");
    auto r = image.express_residual(to_vector(part, index));
    if (r.empty()) return LevelScalar(0);
    // Both residuals live in the one-dimensional complement.
    const auto& [col, tc] = *t.begin();
    auto it = r.find(col);
    if (it == r.end() || r.size() != t.size()) throw LabError("projection residual is not proportional to the target");
    return it->second / tc;
}

}  // namespace voa::lab
