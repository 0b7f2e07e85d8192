#include "internal.hpp"

#include "voa/algebra_lib.hpp"
#include "voa/mode_oracle.hpp"

#include <random>

namespace voa::suites {

namespace {

using detail::pass_if;
using detail::timed;
using terms::Field;
using terms::LevelScalar;
using terms::Monomial;
using terms::Rational;
using terms::Weight;

std::vector<Field> basis_fields(const terms::GeneratorSet& gens, int maxWeightTwice, int minWeightTwice = 1) {
    std::vector<Field> out;
    for (int t = minWeightTwice; t <= maxWeightTwice; ++t)
        for (const auto& m : lab::enumerate_basis(gens, Weight{t})) out.push_back(Field::monomial(m));
    return out;
}

std::string label(const Field& f, const terms::GeneratorSet& gens) { return terms::print_field(f, gens); }

}  // namespace

std::vector<CaseResult> property_cases(unsigned seed) {
    std::vector<CaseResult> out;
    const auto spec = algebra::preset("n4");
    engine::Context ctx(spec);
    const auto& gens = ctx.gens();
    const auto small = basis_fields(gens, 4);  // weights 1/2 .. 2

    out.push_back(timed("grading", "invariant", [&](CaseResult& r) {
        std::size_t n = 0;
        for (const auto& a : small)
            for (const auto& b : small) {
                auto ga = terms::homogeneous_grade(a, gens);
                auto gb = terms::homogeneous_grade(b, gens);
                auto pa = terms::homogeneous_parity(a, gens);
                auto pb = terms::homogeneous_parity(b, gens);
                for (int k = -2; k <= engine::max_pole_index(a, b, gens); ++k) {
                    Field p = ctx.nth_product(a, b, k);
                    ++n;
                    if (p.is_zero()) continue;
                    auto g = terms::homogeneous_grade(p, gens);
                    auto par = terms::homogeneous_parity(p, gens);
                    bool ok = g && par && g->weight == ga->weight + gb->weight - (k + 1) &&
                              g->charge == ga->charge + gb->charge && *par == *pa + *pb && terms::all_canonical(p, gens);
                    if (!ok) {
                        r.status = CaseStatus::Fail;
                        r.note = label(a, gens) + " (" + std::to_string(k) + ") " + label(b, gens);
                        return;
                    }
                }
            }
        r.status = CaseStatus::Pass;
        r.note = std::to_string(n) + " products";
    }));

    out.push_back(timed("truncation", "invariant", [&](CaseResult& r) {
        for (const auto& a : small)
            for (const auto& b : small) {
                int top = engine::max_pole_index(a, b, gens);
                for (int k = top + 1; k <= top + 2; ++k)
                    if (!ctx.nth_product(a, b, k).is_zero()) {
                        r.status = CaseStatus::Fail;
                        r.note = label(a, gens) + " (" + std::to_string(k) + ") " + label(b, gens) + " is nonzero";
                        return;
                    }
            }
        r.status = CaseStatus::Pass;
    }));

    out.push_back(timed("translation", "invariant", [&](CaseResult& r) {
        // (∂a)_(n) b = -n a_(n-1) b  and  ∂(a_(n) b) = (∂a)_(n) b + a_(n) ∂b
        for (const auto& a : small)
            for (const auto& b : small) {
                Field da = ctx.derivative(a), db = ctx.derivative(b);
                for (int k = -2; k <= engine::max_pole_index(a, b, gens) + 1; ++k) {
                    Field lhs1 = ctx.nth_product(da, b, k);
                    Field rhs1 = ctx.nth_product(a, b, k - 1) * LevelScalar(Rational(-k));
                    Field lhs2 = ctx.derivative(ctx.nth_product(a, b, k));
                    Field rhs2 = lhs1 + ctx.nth_product(a, db, k);
                    if (!(lhs1 == rhs1) || !(lhs2 == rhs2)) {
                        r.status = CaseStatus::Fail;
                        r.note = label(a, gens) + " (" + std::to_string(k) + ") " + label(b, gens);
                        return;
                    }
                }
            }
        r.status = CaseStatus::Pass;
    }));

    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-60, 60), den(1, 17);
    const auto tiny = basis_fields(gens, 3);
    for (int i = 0; i < 10; ++i) {
        Rational q(num(rng), den(rng));
        out.push_back(timed("evaluation/k=" + q.str(), "invariant", [&](CaseResult& r) {
            engine::Context at(spec.specialize(q));
            std::size_t n = 0;
            for (const auto& a : tiny)
                for (const auto& b : small)
                    for (int k = -2; k <= engine::max_pole_index(a, b, gens); ++k) {
                        ++n;
                        Field sym = lab::evaluate_field(ctx.nth_product(a, b, k), q);
                        Field num = at.nth_product(a, b, k);
                        if (!(sym == num)) {
                            r.status = CaseStatus::Fail;
                            r.note = label(a, gens) + " (" + std::to_string(k) + ") " + label(b, gens);
                            return;
                        }
                    }
            r.status = CaseStatus::Pass;
            r.note = std::to_string(n) + " products";
        }));
    }

    // Engine products against the brute-force mode algebra: a_(n) b for every generator a and
    // every PBW word b of weight <= 4.
    {
        oracle::ModeAlgebra modes(spec);
        const auto words = basis_fields(gens, 8, 0);
        for (int g = 0; g < static_cast<int>(gens.size()); ++g)
            out.push_back(timed("oracle/" + gens[static_cast<std::size_t>(g)].name, "oracle", [&](CaseResult& r) {
                Field a = Field::generator(g);
                std::size_t n = 0;
                for (const auto& b : words) {
                    auto state = modes.from_field(b);
                    for (int k = -2; k <= engine::max_pole_index(a, b, gens); ++k) {
                        ++n;
                        if (modes.from_field(ctx.nth_product(a, b, k)) != modes.apply(g, k, state)) {
                            r.status = CaseStatus::Fail;
                            r.note = label(a, gens) + " (" + std::to_string(k) + ") " + label(b, gens);
                            return;
                        }
                    }
                }
                r.status = CaseStatus::Pass;
                r.note = std::to_string(words.size()) + " words, " + std::to_string(n) + " products";
            }));
    }

    out.push_back(timed("automorphism/theta", "automorphism", [&](CaseResult& r) {
        r.status = pass_if(algebra::check_automorphism(ctx, algebra::n4_theta(spec)).ok());
    }));
    std::uniform_int_distribution<int> entry(-5, 5);
    for (int i = 0; i < 5; ++i) {
        // det [[a0, a1], [b0, b1]] = 1
        int a0 = 0;
        while (a0 == 0) a0 = entry(rng);
        Rational A0(a0), A1(entry(rng)), B0(entry(rng));
        Rational B1 = (Rational(1) + A1 * B0) / A0;
        out.push_back(timed("automorphism/omega-" + std::to_string(i + 1), "automorphism", [&](CaseResult& r) {
            r.status = pass_if(algebra::check_automorphism(ctx, algebra::n4_omega(spec, A0, A1, B0, B1)).ok());
            r.note = "[[" + A0.str() + ", " + A1.str() + "], [" + B0.str() + ", " + B1.str() + "]]";
        }));
    }
    out.push_back(timed("automorphism/det-2-rejected", "automorphism", [&](CaseResult& r) {
        auto rep = algebra::check_automorphism(ctx, algebra::n4_omega(spec, Rational(2), Rational(0), Rational(0), Rational(1)));
        r.status = pass_if(!rep.ok());
        r.note = std::to_string(rep.residuals.size()) + " violated products";
    }));
    return out;
}

}  // namespace voa::suites
