#include "internal.hpp"

#include "voa/algebra_lib.hpp"

namespace voa::suites::detail {

// w^0..w^5 in T ⊗ G_odd(4) close under OPE up to weight 12, the largest weight among the
// products :∂^a p^j ∂^b m^k: tested for membership.
std::vector<Task> limit_tasks() {
    return {[] {
        engine::Context ctx(engine::tensor(algebra::preset("limit_T"), algebra::preset("limit_Godd4")));
        lab::Evaluator ev(ctx);
        std::vector<terms::Field> w;
        for (int j = 0; j <= 5; ++j) w.push_back(ev.eval("w[" + std::to_string(j) + "]"));
        lab::Closure cl(ctx, w, terms::Weight::integer(12));
        std::vector<CaseResult> out;
        out.push_back(timed("closure/w0-w5", "closure", [&](CaseResult& r) {
            cl.run();
            r.status = pass_if(cl.added().empty());
            r.note = std::to_string(cl.products_checked()) + " products checked up to weight 12, " +
                     std::to_string(cl.added().size()) + " generators added";
        }));
        for (int a = 0; a <= 1; ++a)
            for (int b = 0; b <= 1; ++b)
                for (int j : {0, 2})
                    for (int k : {0, 2}) {
                        std::string e = "NO(d^" + std::to_string(a) + " p[" + std::to_string(j) + "], d^" +
                                        std::to_string(b) + " m[" + std::to_string(k) + "])";
                        out.push_back(timed("member/" + e, "membership", [&](CaseResult& r) {
                            r.status = pass_if(cl.member(ev.eval(e)));
                        }));
                    }
        // Control: a charged generator is not in the charge-zero subalgebra.
        out.push_back(timed("nonmember/p[0]", "membership", [&](CaseResult& r) {
            r.status = pass_if(!cl.member(ev.eval("p[0]")));
        }));
        return out;
    }};
}

}  // namespace voa::suites::detail
