#include "voa/invariant_lab.hpp"

#include <algorithm>
#include <functional>

namespace voa::lab {

ChargePredicate ChargePredicate::modulo(int n, int residue) {
    if (n < 1) throw LabError("modulus must be positive");
    return {Kind::Modulo, ((residue % n) + n) % n, n};
}

bool ChargePredicate::accepts(int charge) const {
    switch (kind) {
        case Kind::Any: return true;
        case Kind::Exact: return charge == value;
        case Kind::Modulo: return ((charge % modulus) + modulus) % modulus == value;
    }
    return false;
}

std::string ChargePredicate::str() const {
    switch (kind) {
        case Kind::Any: return "any";
        case Kind::Exact: return "charge=" + std::to_string(value);
        case Kind::Modulo: return "charge=" + std::to_string(value) + " mod " + std::to_string(modulus);
    }
    return {};
}

std::vector<Monomial> enumerate_basis(const GeneratorSet& gens, Weight weight, const ChargePredicate& pred) {
    std::vector<Monomial> out;
    if (weight.twice < 0) return out;
    std::vector<terms::Factor> factors;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if (gens[g].weight.twice <= 0) throw LabError("generator " + gens[g].name + " has non-positive weight");
        for (int d = 0; gens[g].weight.twice + 2 * d <= weight.twice; ++d)
            factors.push_back({static_cast<std::uint16_t>(g), static_cast<std::uint16_t>(d)});
    }
    std::sort(factors.begin(), factors.end(), terms::factor_before);

    Monomial cur;
    std::function<void(std::size_t, int, int)> rec = [&](std::size_t start, int remaining, int charge) {
        if (remaining == 0) {
            if (pred.accepts(charge)) out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < factors.size(); ++i) {
            const auto& f = factors[i];
            const auto& decl = gens[f.gen];
            int w = decl.weight.twice + 2 * f.deriv;
            if (w > remaining) continue;
            cur.push_back(f);
            bool odd = decl.parity == Parity::Odd;
            rec(odd ? i + 1 : i, remaining - w, charge + decl.charge);
            cur.pop_back();
        }
    };
    rec(0, weight.twice, 0);
    std::stable_sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return terms::MonomialLess{}(a, b);
    });
    return out;
}

GfSeries strong_gen_gf(int N, int l, int truncation) {
    if (N < 1 || l < 0 || l > N) throw LabError("strong_gen_gf needs N >= 1 and 0 <= l <= N");
    GfSeries s;
    s.offset = Weight{2 * N + l * l};
    int len = 0;
    if (2 * truncation >= s.offset.twice) len = (2 * truncation - s.offset.twice) / 2 + 1;
    std::vector<long long> c(static_cast<std::size_t>(len), 0);
    if (len > 0) c[0] = 1;
    auto divide = [&](int i) {  // multiply by 1/(1-q^i)
        for (int j = i; j < len; ++j) c[static_cast<std::size_t>(j)] += c[static_cast<std::size_t>(j - i)];
    };
    for (int i = 1; i <= N - l; ++i) divide(i);
    for (int j = 1; j <= l; ++j) divide(j);
    s.coeffs = c;
    s.reduced.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) s.reduced[i] = c[i] - (i > 0 ? c[i - 1] : 0);
    return s;
}

FieldGrade field_grade(const Field& f, const GeneratorSet& gens) {
    auto g = terms::homogeneous_grade(f, gens);
    auto p = terms::homogeneous_parity(f, gens);
    if (!g || !p) throw LabError("field is zero or not homogeneous in weight, charge and parity");
    return {g->weight, g->charge, *p};
}

}  // namespace voa::lab
