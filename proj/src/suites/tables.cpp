#include "internal.hpp"

#include "voa/algebra_lib.hpp"

#include <functional>
#include <map>

namespace voa::suites::detail {

namespace {

using terms::Rational;

Rational r(long a, long b = 1) { return Rational(a, b); }

// Truncation curve of the U(1)-orbifold of the coset: c(k) = 3k(3+2k)/(2+k), λ = -1/16.
Rational c_orbifold(const Rational& k) { return r(3) * k * (r(3) + r(2) * k) / (r(2) + k); }

// Principal W-algebra of sl_n at level l: (n-1)(1 - n(n+1)(l+n-1)^2/(l+n)).
Rational c_principal(int n, const Rational& l) {
    Rational s = l + r(n);
    Rational t = s - r(1);
    return r(n - 1) * (r(1) - r(n * (n + 1)) * t * t / s);
}

// Generalized parafermions Com(V^l(gl_n), V^l(sl_{n+1})), rationally parametrized by l.
Rational c_parafermion(int n, const Rational& l) {
    return r(n) * (l - r(1)) * (r(1 + n) + r(2) * l) / ((r(n) + l) * (r(1 + n) + l));
}
Rational lambda_parafermion(int n, const Rational& l) {
    return (r(n) + l) * (r(1 + n) + l) / ((l - r(2)) * (r(2 * n) + l) * (r(2 + 2 * n) + r(3) * l));
}

// Heisenberg coset of the subregular W-algebra of sl_n: c(W^l(sl_n, f_subreg)) - 1.
Rational c_subregular_coset(int n, const Rational& l) {
    Rational s = l + r(n);
    return -(s * r(n - 1) - r(n)) * (s * r((n - 2) * n) - r(n * n - 1)) / s - r(1);
}

struct Family {
    std::string id;
    std::vector<Rational> levels;  ///< values of k
    std::vector<Rational> ells;    ///< levels of the target algebra
    Rational c;                    ///< stated central charge
    int target = 0;                ///< 0 principal W, 1 parafermion, 2 subregular coset
};

CaseResult check(const Family& f, int n) {
    return timed(f.id + "/n=" + std::to_string(n), "central-charge", [&](CaseResult& res) {
        std::vector<std::string> bad;
        for (const auto& k : f.levels)
            if (c_orbifold(k) != f.c) bad.push_back("c(k=" + k.str() + ") = " + c_orbifold(k).str());
        for (const auto& l : f.ells) {
            Rational c = f.target == 0 ? c_principal(n, l) : f.target == 1 ? c_parafermion(n, l) : c_subregular_coset(n, l);
            if (c != f.c) bad.push_back("target c(l=" + l.str() + ") = " + c.str());
            if (f.target == 1 && lambda_parafermion(n, l) != r(-1, 16))
                bad.push_back("lambda(l=" + l.str() + ") = " + lambda_parafermion(n, l).str());
        }
        res.status = pass_if(bad.empty());
        res.note = "c = " + f.c.str();
        res.residual = bad;
    });
}

}  // namespace

std::vector<Task> cc_table_tasks() {
    return {[] {
        std::vector<CaseResult> out;
        for (int n = 3; n <= 6; ++n) {
            const Rational N = r(n);
            std::vector<Family> fams{
                {"principal-W", {r(-(n + 2), 2), r(-2 * (n - 1), n - 2)}, {r(-n) + r(n - 2, n), r(-n) + r(n, n - 2)},
                 r(-3 * (n - 1) * (n + 2), n - 2), 0},
                {"parafermion-1", {N, r(-(3 + 2 * n), n + 2)}, {r(-2 * (1 + n))}, r(3 * n * (3 + 2 * n), 2 + n), 1},
                {"parafermion-2", {r(-(n - 3), n - 2), r(-n, n - 1)}, {r(-2)}, r(-3 * n * (n - 3), (n - 2) * (n - 1)), 1},
                {"parafermion-3", {r(n - 3, 3), r(-(3 + 2 * n), 3 + n)}, {r(-2 * n, 3)}, r((n - 3) * (3 + 2 * n), 3 + n), 1},
                {"subregular-1", {r(-n, 1 + n), r(-(3 + n), 2 + n)}, {r(-n) + r(2 + n, 1 + n)},
                 r(-3 * n * (3 + n), (1 + n) * (2 + n)), 2},
                {"subregular-2", {r(-n), r(3 - 2 * n, n - 2)}, {r(-n) + r(n - 2, n - 1)}, r(-3 * n * (2 * n - 3), n - 2), 2},
            };
            if (n != 3)
                fams.push_back({"subregular-3", {r(-(3 + n), 3), r(3 - 2 * n, n - 3)}, {r(-n) + r(n, n - 3)},
                                r(-(3 + n) * (2 * n - 3), n - 3), 2});
            for (const auto& f : fams) out.push_back(check(f, n));
            if (n == 3) {
                CaseResult skip;
                skip.id = "subregular-3/n=3";
                skip.kind = "central-charge";
                skip.status = CaseStatus::Skip;
                skip.note = "degenerate: k = -2 is critical and the second level and l have a pole at n = 3";
                out.push_back(skip);
            }
        }
        return out;
    }};
}

// Counting series against a direct count: multisets of N-l derivative orders for the even
// factors and sets of l distinct orders for the odd ones.
std::vector<Task> gf_tasks() {
    std::vector<Task> tasks;
    for (int l = 0; l <= 2; ++l)
        tasks.push_back([l] {
            constexpr int N = 2, trunc = 10;
            std::vector<CaseResult> out;
            auto series = lab::strong_gen_gf(N, l, trunc);
            out.push_back(timed("count/N=2,l=" + std::to_string(l), "series", [&](CaseResult& res) {
                std::map<int, long long> brute;  // twice the weight -> count
                const int even = N - l;
                std::function<void(int, int, int)> rec = [&](int pos, int minNext, int sum) {
                    if (pos == N) {
                        int twice = 2 * even + 3 * l + 2 * sum;
                        if (twice <= 2 * trunc) ++brute[twice];
                        return;
                    }
                    bool oddPart = pos >= even;
                    int start = pos == 0 || pos == even ? 0 : minNext;
                    for (int d = start; 2 * (sum + d) <= 2 * trunc; ++d) rec(pos + 1, oddPart ? d + 1 : d, sum + d);
                };
                rec(0, 0, 0);
                bool ok = true;
                for (std::size_t i = 0; i < series.coeffs.size(); ++i) {
                    int twice = series.offset.twice + 2 * static_cast<int>(i);
                    long long want = brute.count(twice) ? brute[twice] : 0;
                    if (series.coeffs[i] != want) {
                        ok = false;
                        res.residual.push_back("weight " + terms::Weight{twice}.str() + ": " +
                                               std::to_string(series.coeffs[i]) + " vs " + std::to_string(want));
                    }
                }
                for (const auto& [twice, cnt] : brute)
                    if (twice < series.offset.twice) ok = false;
                res.status = pass_if(ok);
                res.note = std::to_string(series.coeffs.size()) + " coefficients";
            }));
            out.push_back(timed("reduced/N=2,l=" + std::to_string(l), "series", [&](CaseResult& res) {
                // (1-q) times the series: sum q^{2n+2}, sum q^{n+5/2}, sum q^{2n+4}.
                bool ok = true;
                for (std::size_t i = 0; i < series.reduced.size(); ++i) {
                    long long want = l == 1 ? 1 : (i % 2 == 0 ? 1 : 0);
                    if (series.reduced[i] != want) ok = false;
                }
                const int lead[] = {4, 5, 8};
                ok = ok && series.offset.twice == lead[l];
                res.status = pass_if(ok);
                res.note = "offset " + series.offset.str();
            }));
            return out;
        });
    return tasks;
}

}  // namespace voa::suites::detail
