#include "internal.hpp"

#include "voa/algebra_lib.hpp"

#include <filesystem>

namespace voa::suites::detail {

namespace {

using lab::Evaluator;
using terms::Factor;
using terms::LevelScalar;
using terms::Monomial;
using terms::Rational;

std::string S(int x) { return std::to_string(x); }
LevelScalar q(long a, long b = 1) { return LevelScalar(Rational(a, b)); }
const LevelScalar K = LevelScalar::k();

Monomial pair(int a, int da, int b, int db) {
    return Monomial{Factor{static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(da)},
                    Factor{static_cast<std::uint16_t>(b), static_cast<std::uint16_t>(db)}};
}

void expect_scalar(CaseResult& r, const LevelScalar& got, const LevelScalar& want) {
    r.status = pass_if(got == want);
    r.note = "coefficient " + got.str();
    if (!(got == want)) r.note += ", expected " + want.str();
}

// c_{n+3}(ω_n) = (-1)^{n+1} k n(n+5) / (6(n+2)(n+3))
LevelScalar omega_coefficient(int n) {
    return q(n % 2 == 1 ? 1 : -1) * K * q(n * (n + 5), 6 * (n + 2) * (n + 3));
}

// ω_n = :U_{0,0}U_{1,n}: - :U_{0,n}U_{1,0}: and its canonical U_{n+3,0} coefficient.
Task omega_task(int n) {
    return [n] {
        engine::Context ctx(algebra::preset("affine_sl2"));
        Evaluator ev(ctx);
        int p = ctx.gens().index_of("Jp"), m = ctx.gens().index_of("Jm");
        std::vector<CaseResult> out;
        out.push_back(timed("omega/n=" + S(n), "coefficient", [&](CaseResult& r) {
            auto w = ev.eval("NO(U[0,0], U[1," + S(n) + "]) - NO(U[0," + S(n) + "], U[1,0])");
            expect_scalar(r, lab::pair_projection(ctx, w, p, m, pair(p, n + 3, m, 0)), omega_coefficient(n));
        }));
        return out;
    };
}

// U_{m,0} over {J, U_{0,0}, ..., U_{m-1,0}} in affine sl2: decouples for k != 0.
Task u_decouple_task(int mIndex) {
    return [mIndex] {
        engine::Context ctx(algebra::preset("affine_sl2"));
        Evaluator ev(ctx);
        std::vector<CaseResult> out;
        out.push_back(timed("sl2-U[" + S(mIndex) + ",0]", "decouples", [&](CaseResult& r) {
            std::vector<terms::Field> gens{ev.eval("J")};
            for (int i = 0; i < mIndex; ++i) gens.push_back(ev.eval("U[" + S(i) + ",0]"));
            auto sol = lab::decouple(ctx, ev.eval("U[" + S(mIndex) + ",0]"), gens);
            if (!sol) {
                r.status = CaseStatus::Fail;
                r.note = "no decoupling relation at generic k";
                return;
            }
            r.exceptionalLevels = sol->exceptionalLevels;
            r.status = pass_if(sol->exceptionalLevels == std::set<Rational>{Rational(0)});
            r.note = S(static_cast<int>(sol->words.size())) + " of " + S(static_cast<int>(sol->candidateWords)) +
                     " words; expected exceptional levels {0}";
        }));
        return out;
    };
}

// Quadratic parts of :U_{0,0}U_{1,n}: and :U_{0,n}U_{1,0}: in affine sl2: the coefficients of
// U_{1,n+2}, U_{2,n+1}, U_{3,n}, U_{n+3,0}, with no other :∂^a J+ ∂^b J-: of that weight.
Task uu_expansion_task(int n) {
    return [n] {
        engine::Context ctx(algebra::preset("affine_sl2"));
        Evaluator ev(ctx);
        int p = ctx.gens().index_of("Jp"), m = ctx.gens().index_of("Jm");
        const LevelScalar top = q(2, (n + 1) * (n + 2) * (n + 3));
        struct Row {
            std::string name, expr;
            std::map<int, LevelScalar> want;  // derivative count on J+ -> coefficient
        };
        std::vector<Row> rows(2);
        rows[0].name = "first";
        rows[0].expr = "NO(U[0,0], U[1," + S(n) + "])";
        rows[0].want[1] += q(2, n + 2) + K / q(n + 2);
        rows[0].want[2] += -q(1, n + 1);
        rows[0].want[3] += q(1) + K / q(3);
        rows[0].want[n + 3] += top;
        rows[1].name = "second";
        rows[1].expr = "NO(U[0," + S(n) + "], U[1,0])";
        rows[1].want[1] += q(2, n + 2) + K / q(2);
        rows[1].want[2] += q(-1);
        rows[1].want[n + 3] += top + q(n % 2 == 0 ? 1 : -1) * (q(1, n + 1) + K / q(n + 3));
        std::vector<CaseResult> out;
        for (const auto& row : rows)
            out.push_back(timed("sl2-expansion/" + row.name + "/n=" + S(n), "coefficients", [&](CaseResult& r) {
                auto f = ev.eval(row.expr);
                bool ok = true;
                for (int a = 0; a <= n + 3; ++a) {
                    LevelScalar got = f.coefficient(pair(p, a, m, n + 3 - a));
                    auto w = row.want.find(a);
                    LevelScalar want = w == row.want.end() ? LevelScalar(0) : w->second;
                    if (!(got == want)) {
                        ok = false;
                        r.residual.push_back("U[" + S(a) + "," + S(n + 3 - a) + "]: " + got.str() + " vs " + want.str());
                    }
                }
                r.status = pass_if(ok);
                r.note = "quadratic part of weight " + S(n + 5);
            }));
        return out;
    };
}

// Canonical leading coefficients of the six orbifold relations for the Σ families.
Task sigma_task(int n) {
    return [n] {
        engine::Context ctx(algebra::preset("n4"));
        Evaluator ev(ctx);
        int jp = ctx.gens().index_of("Jp"), gp = ctx.gens().index_of("Gp");
        const int sg = n % 2 == 0 ? 1 : -1;
        const LevelScalar N = q(n);
        struct Row {
            std::string name, lhs;
            int a, b, deriv;
            LevelScalar want;
        };
        std::vector<Row> rows{
            {"p0", "NO(U[" + S(2 * n) + ",0], Sigma0p[0,0]) - NO(U[0,0], Sigma0p[" + S(2 * n) + ",0])", jp, jp,
             2 * n + 2, q(-8 * n, 2 * n + 1) + K * q(n, 2 * n + 2)},
            {"q0", "NO(U[" + S(2 * n - 1) + ",0], Sigma0p[1,0]) - NO(U[0,0], Sigma0p[" + S(2 * n - 1) + ",1])", jp, jp,
             2 * n + 2, q(4, 3) + K * q(7 + 2 * n, 6 * (2 * n + 1))},
            {"p1", "NO(Sigma0p[" + S(n) + ",0], B[0,0]) - NO(U[" + S(n) + ",0], Sigma1p[0,0]) + NO(Sigma0p[" + S(n + 1) + ",0], Qp)",
             jp, gp, n + 2, q(2, n + 2) * ((N - q(1 + sg, n + 1)) + q(sg) * K / q(2))},
            {"q1", "NO(Sigma0p[" + S(n) + ",0], B[0,0]) - NO(U[0,0], Sigma1p[" + S(n) + ",0]) + NO(Sigma0p[" + S(n) + ",1], Qp)",
             jp, gp, n + 2,
             q(1, n + 2) * (q(-1, n + 1) * (q(4 * n + 5) + q(-sg) * q(2 * n + 1)) + K / q(2) * (N + q(2 * sg)))},
            {"p2", "NO(B[0,0], Sigma1p[" + S(2 * n - 1) + ",0]) - NO(Sigma1p[" + S(2 * n - 1) + ",1], Qp)", gp, gp,
             2 * n + 1, (q(2) + K) / q(2 * n + 1)},
            {"q2", "NO(B[" + S(2 * n - 1) + ",0], Sigma1p[0,0]) + 1/" + S(2 * n) + " NO(Sigma1p[0," + S(2 * n) + "], Qp)", gp,
             gp, 2 * n + 1, (q(2) - K) / q(2 * n + 1)},
        };
        std::vector<CaseResult> out;
        for (const auto& row : rows)
            out.push_back(timed("sigma-relation/" + row.name + "/n=" + S(n), "coefficient", [&](CaseResult& r) {
                auto f = ev.eval(row.lhs);
                expect_scalar(r, lab::pair_projection(ctx, f, row.a, row.b, pair(row.a, row.deriv, row.b, 0)), row.want);
            }));
        return out;
    };
}

}  // namespace

std::vector<Task> decoupling_tasks(const std::string& dataDir) {
    std::vector<Task> tasks;
    auto file = (std::filesystem::path(dataDir) / "identities" / "decoupling" / "z2.id").string();
    tasks.push_back([file] { return run_identity_file("n4", file); });
    for (int n = 1; n <= 4; ++n) tasks.push_back(omega_task(n));
    for (int m = 4; m <= 8; ++m) tasks.push_back(u_decouple_task(m));
    for (int n = 0; n <= 2; ++n) tasks.push_back(uu_expansion_task(n));
    for (int n = 1; n <= 2; ++n) tasks.push_back(sigma_task(n));
    return tasks;
}

}  // namespace voa::suites::detail
