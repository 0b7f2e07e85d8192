#include "internal.hpp"

#include "voa/algebra_lib.hpp"

namespace voa::suites::detail {

namespace {

using terms::Field;
using terms::LevelScalar;
using terms::Rational;

LevelScalar q(long a, long b = 1) { return LevelScalar(Rational(a, b)); }
const LevelScalar K = LevelScalar::k();

struct Setup {
    engine::Context ctx{algebra::preset("n4")};
    lab::Evaluator ev{ctx};
    std::vector<Field> sl2{ev.eval("J"), ev.eval("Jp"), ev.eval("Jm")};
};

// Every nonnegative product of the sl2 currents with f vanishes.
void expect_commutes(Setup& s, const Field& f, CaseResult& r) {
    std::size_t modes = 0;
    for (std::size_t i = 0; i < s.sl2.size(); ++i) {
        int top = engine::max_pole_index(s.sl2[i], f, s.ctx.gens());
        for (int n = 0; n <= top; ++n) {
            ++modes;
            auto img = s.ctx.nth_product(s.sl2[i], f, n);
            if (img.is_zero()) continue;
            r.status = CaseStatus::Fail;
            static const char* names[] = {"J", "Jp", "Jm"};
            r.note = std::string(names[i]) + "_(" + std::to_string(n) + ") is nonzero";
            r.residual = lab::residual_terms(img, s.ctx.gens());
            return;
        }
    }
    r.status = CaseStatus::Pass;
    r.note = std::to_string(modes) + " modes vanish";
}

void expect_c(Setup& s, const Field& L, const LevelScalar& want, CaseResult& r) {
    auto c = lab::central_charge(s.ctx, L);
    r.status = pass_if(c == want);
    r.note = "c = " + c.str();
    if (!(c == want)) r.note += ", expected " + want.str();
}

}  // namespace

std::vector<Task> coset_tasks() {
    std::vector<Task> tasks;
    tasks.push_back([] {
        Setup s;
        Field T = s.ev.eval("T");
        Field sug = algebra::sugawara_vector(s.ctx);
        Field L = T - sug;
        // w~ = :G+G-: + :Q+Q-: - ∂T
        Field wt = s.ev.eval("NO(Gp, Gm) + NO(Qp, Qm) - d T");
        const LevelScalar cosetC = q(3) * K * (q(3) + q(2) * K) / (q(2) + K);
        std::vector<CaseResult> out;
        out.push_back(timed("sugawara/central-charge", "virasoro", [&](CaseResult& r) { expect_c(s, sug, q(3) * K / (K + q(2)), r); }));
        out.push_back(timed("T/central-charge", "virasoro", [&](CaseResult& r) { expect_c(s, T, q(6) * K, r); }));
        out.push_back(timed("T-sugawara/central-charge", "virasoro", [&](CaseResult& r) { expect_c(s, L, cosetC, r); }));
        out.push_back(timed("T-sugawara/commutes", "commutant", [&](CaseResult& r) { expect_commutes(s, L, r); }));
        out.push_back(timed("wtilde/commutes", "commutant", [&](CaseResult& r) { expect_commutes(s, wt, r); }));
        out.push_back(timed("wtilde/sixth-pole", "pole", [&](CaseResult& r) {
            Field p5 = s.ctx.nth_product(wt, wt, 5);
            Field want = Field::vacuum((q(8) + q(4) * K) * cosetC / q(3));
            r.status = pass_if(p5 == want);
            r.note = "w~_(5)w~ = (8+4k) c/3";
            if (r.status == CaseStatus::Fail) r.residual = lab::residual_terms(p5 - want, s.ctx.gens());
        }));
        return out;
    });
    // Generic coset of type W(2, 3^3, 4, 5^3, 6): dimensions 0, 1, 4 in weights 1, 2, 3.
    const std::vector<std::pair<int, std::size_t>> dims{{1, 0}, {2, 1}, {3, 4}};
    for (auto [w, want] : dims)
        tasks.push_back([w = w, want = want] {
            Setup s;
            std::vector<CaseResult> out;
            out.push_back(timed("commutant/weight=" + std::to_string(w), "dimension", [&](CaseResult& r) {
                auto basis = lab::commutant_basis(s.ctx, s.sl2, terms::Weight::integer(w));
                r.status = pass_if(basis.size() == want);
                r.note = "dimension " + std::to_string(basis.size()) + ", expected " + std::to_string(want);
            }));
            return out;
        });
    return tasks;
}

}  // namespace voa::suites::detail
