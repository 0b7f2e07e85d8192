#include "span.hpp"

#include <deque>

namespace voa::lab {

Closure::Closure(Context& ctx, std::vector<Field> gens, Weight maxWeight)
    : ctx_(ctx), space_(ctx, std::move(gens)), maxWeight_(maxWeight) {
    initial_ = space_.gens().size();
}

std::vector<Field> Closure::added() const {
    return {space_.gens().begin() + static_cast<std::ptrdiff_t>(initial_), space_.gens().end()};
}

void Closure::run() {
    // Skew-symmetry and ∂-closure of the word span make the pairs i <= j sufficient.
    std::deque<std::pair<std::size_t, std::size_t>> pending;
    for (std::size_t j = 0; j < space_.gens().size(); ++j)
        for (std::size_t i = 0; i <= j; ++i) pending.emplace_back(i, j);
    while (!pending.empty()) {
        auto [i, j] = pending.front();
        pending.pop_front();
        Field a = space_.gens()[i];
        Field b = space_.gens()[j];
        Weight wa = space_.gen_weight(static_cast<int>(i));
        Weight wb = space_.gen_weight(static_cast<int>(j));
        for (int n = 0; (wa + wb - (n + 1)).twice > 0; ++n) {
            if (wa + wb - (n + 1) > maxWeight_) continue;
            Field p = ctx_.nth_product(a, b, n);
            if (p.is_zero()) continue;
            ++checked_;
            if (in_word_span(space_, p, ctx_.gens())) continue;
            space_.add_generator(std::move(p));
            std::size_t k = space_.gens().size() - 1;
            for (std::size_t m = 0; m <= k; ++m) pending.emplace_back(m, k);
        }
    }
}

bool Closure::member(const Field& f) { return in_word_span(space_, f, ctx_.gens()); }

}  // namespace voa::lab
