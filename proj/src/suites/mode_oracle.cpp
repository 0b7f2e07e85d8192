#include "voa/mode_oracle.hpp"

#include <stdexcept>

namespace voa::oracle {

namespace {

using terms::Rational;

Rational falling(int m, int d) {  // m (m-1) ... (m-d+1)
    Rational r(1);
    for (int i = 0; i < d; ++i) r *= Rational(m - i);
    return r;
}

Rational binom(int m, int j) {  // C(m, j) for any integer m
    return falling(m, j) / falling(j, j);
}

void add_into(ModeState& acc, const ModeState& s, const LevelScalar& c) {
    if (c.is_zero()) return;
    for (const auto& [w, v] : s) {
        auto& slot = acc[w];
        slot += v * c;
        if (slot.is_zero()) acc.erase(w);
    }
}

}  // namespace

ModeAlgebra::ModeAlgebra(const AlgebraSpec& spec) : spec_(engine::complete_table(spec)) {
    const int n = static_cast<int>(spec_.size());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int j = 0; j < spec_.pole_slots(a, b); ++j)
                if (const Field* f = spec_.product(a, b, j))
                    for (const auto& [m, c] : *f)
                        if (m.size() > 1) throw std::invalid_argument("mode oracle needs a linear OPE table");
}

// Negative modes first, by generator then mode; nonnegative modes sort last.
bool ModeAlgebra::less(std::pair<int, int> a, std::pair<int, int> b) const {
    bool an = a.second >= 0, bn = b.second >= 0;
    if (an != bn) return !an;
    return a < b;
}

std::vector<std::pair<std::pair<int, int>, LevelScalar>> ModeAlgebra::bracket(std::pair<int, int> x, std::pair<int, int> y,
                                                                              LevelScalar& scalar) const {
    std::vector<std::pair<std::pair<int, int>, LevelScalar>> out;
    scalar = LevelScalar(0);
    auto [a, m] = x;
    auto [b, p] = y;
    for (int j = 0; j < spec_.pole_slots(a, b); ++j) {
        const Field* f = spec_.product(a, b, j);
        if (!f) continue;
        // m may be negative, then C(m, j) is nonzero for every j; the table bounds j.
        LevelScalar cj(binom(m, j));
        int q = m + p - j;
        for (const auto& [mono, c] : *f) {
            if (mono.empty()) {
                if (q == -1) scalar += cj * c;
                continue;
            }
            // (∂^d g)_(q) = (-1)^d q (q-1) ... (q-d+1) g_(q-d)
            int d = mono[0].deriv;
            Rational coef = falling(q, d) * Rational(d % 2 == 0 ? 1 : -1);
            if (coef.is_zero()) continue;
            out.push_back({{mono[0].gen, q - d}, cj * c * LevelScalar(coef)});
        }
    }
    return out;
}

ModeState ModeAlgebra::insert(std::pair<int, int> x, const Key& word) {
    auto memoKey = std::make_pair(x, word);
    if (auto it = memo_.find(memoKey); it != memo_.end()) return it->second;
    ModeState out;
    if (word.empty()) {
        if (x.second < 0) out[{x}] = LevelScalar(1);
    } else {
        const auto y = word.front();
        const Key rest(word.begin() + 1, word.end());
        if (x == y && odd(x.first) && x.second < 0) {
            // x x = 1/2 [x, x] for odd x
            LevelScalar scalar;
            auto br = bracket(x, x, scalar);
            for (const auto& [z, c] : br) add_into(out, insert(z, rest), c * LevelScalar(Rational(1, 2)));
            if (!scalar.is_zero()) add_into(out, ModeState{{rest, LevelScalar(1)}}, scalar * LevelScalar(Rational(1, 2)));
        } else if (x.second < 0 && !less(y, x)) {
            Key w = word;
            w.insert(w.begin(), x);
            out[w] = LevelScalar(1);
        } else {
            // x y rest = ± y (x rest) + [x, y] rest
            int sign = odd(x.first) && odd(y.first) ? -1 : 1;
            for (const auto& [w, c] : insert(x, rest)) add_into(out, insert(y, w), c * LevelScalar(sign));
            LevelScalar scalar;
            for (const auto& [z, c] : bracket(x, y, scalar)) add_into(out, insert(z, rest), c);
            if (!scalar.is_zero()) add_into(out, ModeState{{rest, LevelScalar(1)}}, scalar);
        }
    }
    memo_.emplace(memoKey, out);
    return out;
}

ModeState ModeAlgebra::apply(int gen, int m, const ModeState& s) {
    ModeState out;
    for (const auto& [w, c] : s) add_into(out, insert({gen, m}, w), c);
    return out;
}

ModeState ModeAlgebra::apply(int gen, int d, int m, const ModeState& s) {
    Rational coef = falling(m, d) * Rational(d % 2 == 0 ? 1 : -1);
    if (coef.is_zero()) return {};
    ModeState out;
    add_into(out, apply(gen, m - d, s), LevelScalar(coef));
    return out;
}

ModeState ModeAlgebra::from_field(const Field& f) {
    ModeState out;
    for (const auto& [mono, c] : f) {
        // :F1 (F2 (... )): = F1_(-1) F2_(-1) ... |0>, and (∂^d g)_(-1) = d! g_(-d-1).
        ModeState s{{Key{}, LevelScalar(1)}};
        for (auto it = mono.rbegin(); it != mono.rend(); ++it) s = apply(it->gen, it->deriv, -1, s);
        add_into(out, s, c);
    }
    return out;
}

}  // namespace voa::oracle
