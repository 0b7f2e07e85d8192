#include "span.hpp"

#include <algorithm>

namespace voa::lab::detail {

bool all_constant(const Field& f) {
    return std::all_of(f.begin(), f.end(), [](const auto& t) { return t.second.is_constant(); });
}

const std::vector<Rational>& probe_levels() {
    static const std::vector<Rational> levels{Rational(1009, 17), Rational(-2003, 29), Rational(3001, 41)};
    return levels;
}

namespace {

std::optional<SparseVec<Rational>> try_vector_at(const Field& f, MonomialIndex& index, const Rational& q) {
    try {
        return to_vector_at(f, index, q);
    } catch (const exactq::PoleError&) {
        return std::nullopt;
    }
}

}  // namespace

std::optional<std::vector<Rational>> solve_in_span_at(const Field& target, const std::vector<const Field*>& cands,
                                                      const Rational& q) {
    MonomialIndex index;
    auto t = try_vector_at(target, index, q);
    if (!t) throw exactq::PoleError("target has a pole at k = " + q.str());
    Echelon<Rational> ech;
    std::vector<int> tagOf;  // echelon tag -> candidate index
    for (std::size_t i = 0; i < cands.size(); ++i) {
        auto v = try_vector_at(*cands[i], index, q);
        if (!v) continue;
        ech.add(*v);
        tagOf.push_back(static_cast<int>(i));
    }
    auto x = ech.express(*t);
    if (!x) return std::nullopt;
    std::vector<Rational> out(cands.size(), Rational(0));
    for (const auto& [tag, c] : *x) out[static_cast<std::size_t>(tagOf[static_cast<std::size_t>(tag)])] = c;
    return out;
}

namespace {

/// Thiele continued fraction a0 + (k - x0)/(a1 + (k - x1)/(a2 + ...)), built point by point.
class Thiele {
public:
    /// True when the current fraction already reproduces y at x.
    bool matches(const Rational& x, const Rational& y) const {
        if (a_.empty()) return false;
        auto v = evaluate(x);
        return v && *v == y;
    }
    /// Extends the fraction through (x, y); false if the point is unusable (infinite coefficient).
    bool add(const Rational& x, Rational y) {
        for (std::size_t j = 0; j < a_.size(); ++j) {
            Rational d = y - a_[j];
            if (d.is_zero()) return false;
            y = (x - xs_[j]) / d;
        }
        xs_.push_back(x);
        a_.push_back(std::move(y));
        return true;
    }
    std::optional<Rational> evaluate(const Rational& x) const {
        Rational v = a_.back();
        for (std::size_t j = a_.size() - 1; j-- > 0;) {
            if (v.is_zero()) return std::nullopt;
            v = a_[j] + (x - xs_[j]) / v;
        }
        return v;
    }
    LevelScalar function() const {
        LevelScalar v(a_.back());
        for (std::size_t j = a_.size() - 1; j-- > 0;) v = LevelScalar(a_[j]) + (LevelScalar::k() - LevelScalar(xs_[j])) / v;
        return v;
    }

private:
    std::vector<Rational> xs_, a_;
};

/// Sample levels 1, -1, 2, -2, ... shifted off the small integers where exceptional levels sit.
Rational sample_level(int i) {
    int m = i / 2 + 1;
    return Rational(i % 2 == 0 ? 7 * m + 3 : -(7 * m + 2), 5);
}

}  // namespace

std::optional<std::vector<LevelScalar>> interpolate_solution(const std::vector<SparseVec<LevelScalar>>& cols,
                                                             const SparseVec<LevelScalar>& rhs) {
    constexpr int kConfirm = 3;
    constexpr int kMaxSamples = 4000;
    const std::size_t r = cols.size();
    std::vector<Thiele> fits(r);
    std::vector<int> confirmed(r, 0);
    std::size_t done = 0;
    int failures = 0;
    for (int i = 0; i < kMaxSamples && done < r; ++i) {
        const Rational q = sample_level(i);
        Echelon<Rational> ech;
        bool usable = true;
        auto at = [&](const SparseVec<LevelScalar>& v, SparseVec<Rational>& out) {
            for (const auto& [c, s] : v) {
                Rational x = s.evaluate_at(q);
                if (!x.is_zero()) out.emplace(c, std::move(x));
            }
        };
        try {
            for (const auto& c : cols) {
                SparseVec<Rational> v;
                at(c, v);
                if (!ech.add(v).independent) {
                    usable = false;  // rank drops at q
                    break;
                }
            }
        } catch (const exactq::PoleError&) {
            usable = false;
        }
        if (!usable) continue;
        SparseVec<Rational> b;
        try {
            at(rhs, b);
        } catch (const exactq::PoleError&) {
            continue;
        }
        auto x = ech.express(b);
        if (!x) {
            if (++failures > 8) return std::nullopt;
            continue;
        }
        for (std::size_t j = 0; j < r; ++j) {
            if (confirmed[j] >= kConfirm) continue;
            Rational y(0);
            if (auto it = x->find(static_cast<int>(j)); it != x->end()) y = it->second;
            if (fits[j].matches(q, y)) {
                if (++confirmed[j] == kConfirm) ++done;
            } else {
                confirmed[j] = 0;
                fits[j].add(q, y);
            }
        }
    }
    if (done < r) return std::nullopt;
    std::vector<LevelScalar> out;
    out.reserve(r);
    for (const auto& f : fits) out.push_back(f.function());
    return out;
}

std::optional<std::vector<LevelScalar>> solve_in_span(const Field& target, const std::vector<const Field*>& cands) {
    bool constant = all_constant(target) &&
                    std::all_of(cands.begin(), cands.end(), [](const Field* f) { return all_constant(*f); });
    if (target.is_zero()) return std::vector<LevelScalar>(cands.size(), LevelScalar(0));
    if (constant) {
        auto x = solve_in_span_at(target, cands, Rational(0));
        if (!x) return std::nullopt;
        return std::vector<LevelScalar>(x->begin(), x->end());
    }
    for (const Rational& k0 : probe_levels()) {
        // Numeric pass picks independent candidates and pivot columns.
        MonomialIndex index;
        auto t = try_vector_at(target, index, k0);
        if (!t) continue;
        Echelon<Rational> ech;
        std::vector<int> independent;
        std::vector<int> pivotCols;
        bool pole = false;
        for (std::size_t i = 0; i < cands.size() && !pole; ++i) {
            auto v = try_vector_at(*cands[i], index, k0);
            if (!v) {
                pole = true;
                break;
            }
            auto r = ech.add(*v);
            if (r.independent) {
                independent.push_back(static_cast<int>(i));
                pivotCols.push_back(r.pivotColumn);
            }
        }
        if (pole) continue;
        if (!ech.contains(*t)) return std::nullopt;

        // Square system on the pivot columns, solved at sample levels; each coefficient is
        // rebuilt as a rational function of k and the result is checked exactly.
        std::sort(pivotCols.begin(), pivotCols.end());
        auto restrict = [&](const Field& f) {
            SparseVec<LevelScalar> v;
            for (const auto& [m, c] : f) {
                auto id = index.find(m);
                if (!id) continue;
                if (std::binary_search(pivotCols.begin(), pivotCols.end(), *id)) v.emplace(*id, c);
            }
            return v;
        };
        std::vector<SparseVec<LevelScalar>> cols;
        for (int i : independent) cols.push_back(restrict(*cands[static_cast<std::size_t>(i)]));
        auto rhs = restrict(target);
        auto x = interpolate_solution(cols, rhs);
        if (!x) continue;
        std::vector<LevelScalar> out(cands.size(), LevelScalar(0));
        Field check = target;
        for (std::size_t j = 0; j < x->size(); ++j) {
            if ((*x)[j].is_zero()) continue;
            auto ci = static_cast<std::size_t>(independent[j]);
            out[ci] = (*x)[j];
            check.add_scaled(*cands[ci], -(*x)[j]);
        }
        if (check.is_zero()) return out;
        // A non-zero check means k0 was special; the next probe level decides.
    }
    return std::nullopt;
}

void split_roots(const std::vector<LevelPoly>& polys, std::set<Rational>& roots, std::vector<LevelPoly>& residual) {
    for (const auto& p : polys) {
        if (p.degree() < 1) continue;
        auto rep = exactq::rational_roots(p);
        roots.insert(rep.roots.begin(), rep.roots.end());
        for (const auto& r : rep.residual)
            if (std::find(residual.begin(), residual.end(), r) == residual.end()) residual.push_back(r);
    }
}

std::vector<std::vector<LevelScalar>> kernel(const std::vector<Field>& images, std::vector<LevelScalar>* pivots) {
    MonomialIndex index;
    Echelon<LevelScalar> ech;
    for (const auto& f : images) {
        auto r = ech.add(to_vector(f, index));
        if (r.independent && pivots) pivots->push_back(r.pivot);
    }
    std::vector<std::vector<LevelScalar>> out;
    for (const auto& [tag, dep] : ech.dependencies()) {
        std::vector<LevelScalar> v(images.size(), LevelScalar(0));
        v[static_cast<std::size_t>(tag)] = LevelScalar(1);
        for (const auto& [t, c] : dep) v[static_cast<std::size_t>(t)] = -c;
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<std::vector<Rational>> kernel_at(const std::vector<Field>& images, const Rational& q) {
    MonomialIndex index;
    Echelon<Rational> ech;
    for (const auto& f : images) ech.add(to_vector_at(f, index, q));
    std::vector<std::vector<Rational>> out;
    for (const auto& [tag, dep] : ech.dependencies()) {
        std::vector<Rational> v(images.size(), Rational(0));
        v[static_cast<std::size_t>(tag)] = Rational(1);
        for (const auto& [t, c] : dep) v[static_cast<std::size_t>(t)] = -c;
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace voa::lab::detail
