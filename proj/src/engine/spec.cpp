#include "voa/ope_engine.hpp"

#include <algorithm>

namespace voa::engine {

AlgebraSpec::AlgebraSpec(std::string name, GeneratorSet gens)
    : name_(std::move(name)), gens_(std::move(gens)),
      table_(gens_.size() * gens_.size()), supplied_(gens_.size() * gens_.size(), false) {}

void AlgebraSpec::set_product(int left, int right, int n, Field value) {
    if (n < 0) throw std::invalid_argument("OPE entries need n >= 0");
    auto& slot = table_[idx(left, right)];
    supplied_[idx(left, right)] = true;
    if (static_cast<int>(slot.size()) <= n) {
        if (value.is_zero()) return;
        slot.resize(static_cast<std::size_t>(n) + 1);
    }
    slot[static_cast<std::size_t>(n)] = std::move(value);
    while (!slot.empty() && slot.back().is_zero()) slot.pop_back();
}

void AlgebraSpec::mark_supplied(int left, int right) { supplied_[idx(left, right)] = true; }

void AlgebraSpec::clear_pair(int left, int right) {
    table_[idx(left, right)].clear();
    supplied_[idx(left, right)] = false;
}

const Field* AlgebraSpec::product(int left, int right, int n) const {
    const auto& slot = table_[idx(left, right)];
    if (n < 0 || n >= static_cast<int>(slot.size())) return nullptr;
    const Field& f = slot[static_cast<std::size_t>(n)];
    return f.is_zero() ? nullptr : &f;
}

AlgebraSpec AlgebraSpec::specialize(const Rational& q) const {
    AlgebraSpec out = *this;
    for (auto& slot : out.table_)
        for (auto& f : slot) f = f.map_coefficients([&](const LevelScalar& s) { return LevelScalar(s.evaluate_at(q)); });
    for (auto& slot : out.table_)
        while (!slot.empty() && slot.back().is_zero()) slot.pop_back();
    return out;
}

AlgebraSpec AlgebraSpec::restrict_to(const std::vector<std::string>& names) const {
    std::vector<int> old;
    std::vector<GeneratorDecl> decls;
    for (const auto& n : names) {
        old.push_back(gens_.index_of(n));
        decls.push_back(gens_[static_cast<std::size_t>(old.back())]);
    }
    std::vector<int> newIndex(gens_.size(), -1);
    for (std::size_t i = 0; i < old.size(); ++i) newIndex[static_cast<std::size_t>(old[i])] = static_cast<int>(i);
    AlgebraSpec out(name_ + "|restricted", GeneratorSet(decls));
    auto remap = [&](const Field& f) {
        Field r;
        for (const auto& [m, c] : f) {
            Monomial w;
            for (const auto& fa : m) {
                int ni = newIndex[fa.gen];
                if (ni < 0)
                    throw std::invalid_argument("restriction is not closed: entry uses generator '" + gens_[fa.gen].name + "'");
                w.push_back(Factor{static_cast<std::uint16_t>(ni), fa.deriv});
            }
            r.add(std::move(w), c);
        }
        return r;
    };
    for (std::size_t i = 0; i < old.size(); ++i)
        for (std::size_t j = 0; j < old.size(); ++j) {
            int a = old[i], b = old[j];
            if (supplied(a, b)) out.mark_supplied(static_cast<int>(i), static_cast<int>(j));
            for (int n = 0; n < pole_slots(a, b); ++n)
                if (const Field* f = product(a, b, n)) out.set_product(static_cast<int>(i), static_cast<int>(j), n, remap(*f));
        }
    if (conformal_ && newIndex[static_cast<std::size_t>(*conformal_)] >= 0)
        out.conformal_ = newIndex[static_cast<std::size_t>(*conformal_)];
    return out;
}

AlgebraSpec tensor(const AlgebraSpec& a, const AlgebraSpec& b) {
    std::vector<GeneratorDecl> decls = a.gens().decls();
    for (const auto& d : b.gens().decls()) decls.push_back(d);
    AlgebraSpec out(a.name() + "*" + b.name(), GeneratorSet(decls));
    int off = static_cast<int>(a.size());
    auto shift = [&](const Field& f) {
        Field r;
        for (const auto& [m, c] : f) {
            Monomial w = m;
            for (auto& fa : w) fa.gen = static_cast<std::uint16_t>(fa.gen + off);
            r.add(std::move(w), c);
        }
        return r;
    };
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
        for (int j = 0; j < static_cast<int>(a.size()); ++j) {
            if (a.supplied(i, j)) out.mark_supplied(i, j);
            for (int n = 0; n < a.pole_slots(i, j); ++n)
                if (const Field* f = a.product(i, j, n)) out.set_product(i, j, n, *f);
        }
    for (int i = 0; i < static_cast<int>(b.size()); ++i)
        for (int j = 0; j < static_cast<int>(b.size()); ++j) {
            if (b.supplied(i, j)) out.mark_supplied(i + off, j + off);
            for (int n = 0; n < b.pole_slots(i, j); ++n)
                if (const Field* f = b.product(i, j, n)) out.set_product(i + off, j + off, n, shift(*f));
        }
    if (a.conformal()) out.set_conformal(a.conformal());
    return out;
}

bool operator==(const AlgebraSpec& a, const AlgebraSpec& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto &x = a.gens()[i], &y = b.gens()[i];
        if (x.name != y.name || x.parity != y.parity || x.weight != y.weight || x.charge != y.charge) return false;
    }
    return a.table_ == b.table_ && a.conformal_ == b.conformal_;
}

namespace {

bool linear(const Field& f) {
    return std::all_of(f.begin(), f.end(), [](const auto& t) { return t.first.size() <= 1; });
}

/// b_(n)a from the a_(*)b entries: sigma * sum_j (-1)^{n+j+1} / j! * d^j (a_(n+j)b).
Field skew(Context& ctx, int a, int b, int n) {
    const auto& spec = ctx.spec();
    int sigma = (spec.gens().odd(a) && spec.gens().odd(b)) ? -1 : 1;
    Field out;
    for (int m = n; m < spec.pole_slots(a, b); ++m) {
        const Field* f = spec.product(a, b, m);
        if (!f) continue;
        int j = m - n;
        int sign = ((n + j + 1) % 2 == 0) ? 1 : -1;
        Field d = ctx.derivative(*f, j);
        out.add_scaled(d, LevelScalar(Rational(sign * sigma) / exactq::factorial(j)));
    }
    return out;
}

std::string pair_name(const AlgebraSpec& s, int a, int b) {
    return "(" + s.gens()[static_cast<std::size_t>(a)].name + ", " + s.gens()[static_cast<std::size_t>(b)].name + ")";
}

}  // namespace

AlgebraSpec complete_table(AlgebraSpec spec) {
    const int N = static_cast<int>(spec.size());
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int n = 0; n < spec.pole_slots(i, j); ++n)
                if (const Field* f = spec.product(i, j, n))
                    for (const auto& [m, c] : *f) {
                        if (!terms::is_canonical(m, spec.gens()))
                            throw std::invalid_argument("OPE entry for " + pair_name(spec, i, j) + " is not in PBW form");
                        auto w = terms::weight(m, spec.gens());
                        auto expect = spec.gens()[i].weight + spec.gens()[j].weight - (n + 1);
                        if (w != expect)
                            throw std::invalid_argument("OPE entry for " + pair_name(spec, i, j) + " at n=" + std::to_string(n) +
                                                        " has weight " + w.str() + ", expected " + expect.str());
                    }
    // Fill generator-linear entries first so that composite entries can use them when differentiated.
    for (int pass = 0; pass < 2; ++pass) {
        Context ctx(spec);
        std::vector<std::tuple<int, int, std::vector<Field>>> fills;
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                if (!spec.supplied(a, b) || spec.supplied(b, a)) continue;
                bool lin = true;
                for (int n = 0; n < spec.pole_slots(a, b); ++n)
                    if (const Field* f = spec.product(a, b, n); f && !linear(*f)) lin = false;
                if (pass == 0 && !lin) continue;
                std::vector<Field> col;
                for (int n = 0; n < spec.pole_slots(a, b); ++n) col.push_back(skew(ctx, a, b, n));
                fills.emplace_back(b, a, std::move(col));
            }
        for (auto& [b, a, col] : fills) {
            spec.mark_supplied(b, a);
            for (std::size_t n = 0; n < col.size(); ++n) spec.set_product(b, a, static_cast<int>(n), col[n]);
        }
    }
    Context ctx(spec);
    for (int a = 0; a < N; ++a)
        for (int b = a; b < N; ++b) {
            if (!spec.supplied(a, b) && !spec.supplied(b, a)) continue;
            if (!spec.supplied(a, b) || !spec.supplied(b, a))
                throw IncompleteTable("could not complete pair " + pair_name(spec, a, b));
            int slots = std::max(spec.pole_slots(a, b), spec.pole_slots(b, a));
            for (int n = 0; n < slots; ++n) {
                Field expect = skew(ctx, a, b, n);
                const Field* have = spec.product(b, a, n);
                Field h = have ? *have : Field();
                if (!(expect == h))
                    throw SkewViolation("skew-symmetry violated for pair " + pair_name(spec, b, a) + " at n=" +
                                        std::to_string(n) + ": expected " + terms::print_field(expect, spec.gens()) +
                                        ", table has " + terms::print_field(h, spec.gens()));
            }
        }
    return spec;
}

}  // namespace voa::engine
