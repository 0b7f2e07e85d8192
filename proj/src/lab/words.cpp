#include "voa/invariant_lab.hpp"

#include <algorithm>

namespace voa::lab {

SparseVec<LevelScalar> to_vector(const Field& f, MonomialIndex& index) {
    SparseVec<LevelScalar> v;
    for (const auto& [m, c] : f) v.emplace(index.id(m), c);
    return v;
}

SparseVec<Rational> to_vector_at(const Field& f, MonomialIndex& index, const Rational& q) {
    SparseVec<Rational> v;
    for (const auto& [m, c] : f) {
        Rational x = c.evaluate_at(q);
        if (!x.is_zero()) v.emplace(index.id(m), x);
    }
    return v;
}

WordSpace::WordSpace(Context& ctx, std::vector<Field> gens) : ctx_(ctx) {
    for (auto& g : gens) add_generator(std::move(g));
}

void WordSpace::add_generator(Field g) {
    auto gr = field_grade(g, ctx_.gens());
    if (gr.weight.twice <= 0) throw LabError("word generators need positive weight");
    weights_.push_back(gr.weight);
    charges_.push_back(gr.charge);
    parities_.push_back(gr.parity);
    gens_.push_back(std::move(g));
}

void WordSpace::collect(Weight remaining, std::size_t startFactor, Word& cur, std::vector<Word>& out) const {
    if (remaining.twice == 0) {
        out.push_back(cur);
        return;
    }
    // Factors are visited in word order: generator ascending, derivative descending.
    for (std::size_t g = cur.empty() ? 0 : static_cast<std::size_t>(cur.back().gen); g < gens_.size(); ++g) {
        int maxD = (remaining.twice - weights_[g].twice) / 2;
        if (maxD < 0) continue;
        int top = maxD;
        if (!cur.empty() && static_cast<std::size_t>(cur.back().gen) == g) top = std::min(top, cur.back().deriv);
        for (int d = top; d >= 0; --d) {
            cur.push_back({static_cast<int>(g), d});
            collect(remaining - (weights_[g] + d), startFactor, cur, out);
            cur.pop_back();
        }
    }
}

std::vector<Word> WordSpace::words(Weight weight, const ChargePredicate& pred) const {
    std::vector<Word> all, out;
    Word cur;
    if (weight.twice > 0) collect(weight, 0, cur, all);
    for (auto& w : all) {
        int c = 0;
        for (const auto& f : w) c += charges_[static_cast<std::size_t>(f.gen)];
        if (pred.accepts(c)) out.push_back(std::move(w));
    }
    return out;
}

std::vector<Word> WordSpace::words(Weight weight, int charge, Parity parity) const {
    std::vector<Word> out;
    for (auto& w : words(weight, ChargePredicate::exact(charge))) {
        Parity p = Parity::Even;
        for (const auto& f : w) p = p + parities_[static_cast<std::size_t>(f.gen)];
        if (p == parity) out.push_back(std::move(w));
    }
    return out;
}

const Field& WordSpace::expand(const Word& w) {
    auto it = cache_.find(w);
    if (it != cache_.end()) return *it->second;
    Field head = ctx_.derivative(gens_[static_cast<std::size_t>(w[0].gen)], w[0].deriv);
    Field value;
    if (w.size() == 1) {
        value = std::move(head);
    } else {
        Word rest(w.begin() + 1, w.end());
        const Field& tail = expand(rest);
        value = ctx_.normal_order(head, tail);
    }
    return *cache_.emplace(w, std::make_shared<const Field>(std::move(value))).first->second;
}

std::string WordSpace::describe(const Word& w, const std::vector<std::string>& names) const {
    auto one = [&](const WordFactor& f) {
        std::string n = static_cast<std::size_t>(f.gen) < names.size() ? names[static_cast<std::size_t>(f.gen)]
                                                                       : "g" + std::to_string(f.gen);
        if (f.deriv == 0) return n;
        return (f.deriv == 1 ? std::string("d ") : "d^" + std::to_string(f.deriv) + " ") + n;
    };
    if (w.size() == 1) return one(w[0]);
    std::string s = "NO(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? ", " : "") + one(w[i]);
    return s + ")";
}

}  // namespace voa::lab
