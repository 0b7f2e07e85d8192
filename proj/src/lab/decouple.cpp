#include "span.hpp"

namespace voa::lab {

std::optional<DecouplingSolution> decouple(Context& ctx, const Field& target, const std::vector<Field>& gens,
                                           DecoupleMode mode) {
    auto grade = field_grade(target, ctx.gens());
    WordSpace space(ctx, gens);
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (space.gen_weight(static_cast<int>(i)) >= grade.weight)
            throw LabError("decoupling generators must have weight below the target");
    auto words = space.words(grade.weight, grade.charge, grade.parity);
    std::vector<const Field*> cands;
    cands.reserve(words.size());
    for (const auto& w : words) cands.push_back(&space.expand(w));

    DecouplingSolution sol;
    sol.candidateWords = words.size();
    if (mode.level) {
        Field t = evaluate_field(target, *mode.level);
        std::vector<Field> evaluated;
        evaluated.reserve(cands.size());
        std::vector<const Field*> ptrs;
        for (const Field* c : cands) {
            try {
                evaluated.push_back(evaluate_field(*c, *mode.level));
            } catch (const exactq::PoleError&) {
                evaluated.emplace_back();
            }
        }
        for (const auto& e : evaluated) ptrs.push_back(&e);
        auto x = detail::solve_in_span_at(t, ptrs, Rational(0));
        if (!x) return std::nullopt;
        for (std::size_t i = 0; i < x->size(); ++i) {
            if ((*x)[i].is_zero()) continue;
            sol.words.push_back(words[i]);
            sol.coefficients.emplace_back((*x)[i]);
        }
        sol.rank = sol.words.size();
        return sol;
    }

    auto x = detail::solve_in_span(target, cands);
    if (!x) return std::nullopt;
    std::vector<LevelPoly> dens;
    for (std::size_t i = 0; i < x->size(); ++i) {
        if ((*x)[i].is_zero()) continue;
        sol.words.push_back(words[i]);
        sol.coefficients.push_back((*x)[i]);
        dens.push_back((*x)[i].denominator());
    }
    sol.rank = sol.words.size();
    std::set<Rational> candidates;
    detail::split_roots(dens, candidates, sol.residualFactors);
    for (const Rational& q : candidates) {
        bool inSpan = false;
        try {
            inSpan = detail::solve_in_span_at(target, cands, q).has_value();
        } catch (const exactq::PoleError&) {
            inSpan = false;  // the target itself is singular there
        }
        if (!inSpan) sol.exceptionalLevels.insert(q);
    }
    return sol;
}

bool in_word_span(WordSpace& space, const Field& f, const GeneratorSet& ambient) {
    for (const auto& [g, part] : terms::grade(f, ambient)) {
        for (Parity p : {Parity::Even, Parity::Odd}) {
            Field sub;
            for (const auto& [m, c] : part)
                if (terms::parity(m, ambient) == p) sub.add(m, c);
            if (sub.is_zero()) continue;
            if (g.weight.twice == 0) {
                // Only the vacuum lives at weight 0; it belongs to every subalgebra.
                continue;
            }
            auto words = space.words(g.weight, g.charge, p);
            std::vector<const Field*> cands;
            for (const auto& w : words) cands.push_back(&space.expand(w));
            if (!detail::solve_in_span(sub, cands)) return false;
        }
    }
    return true;
}

}  // namespace voa::lab
