#include "internal.hpp"

#include "voa/algebra_lib.hpp"

namespace voa::suites::detail {

// One task per left generator, each with its own context; 64 triples per task.
std::vector<Task> jacobi_tasks() {
    const auto n = static_cast<int>(algebra::preset("n4").size());
    std::vector<Task> tasks;
    for (int a = 0; a < n; ++a)
        tasks.push_back([a, n] {
            engine::Context ctx(algebra::preset("n4"));
            const auto& gens = ctx.gens();
            std::vector<CaseResult> out;
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    std::string id = gens[a].name + "," + gens[b].name + "," + gens[c].name;
                    out.push_back(timed(id, "jacobi", [&](CaseResult& r) {
                        auto rep = engine::check_jacobi_triple(ctx, a, b, c);
                        r.status = pass_if(rep.ok());
                        r.note = std::to_string(rep.checked) + " (m,n) pairs";
                        if (!rep.ok()) {
                            const auto& f = rep.failures.front();
                            r.note += ", first failure at m=" + std::to_string(f.m) + " n=" + std::to_string(f.n);
                            r.residual = lab::residual_terms(f.residual, gens);
                        }
                    }));
                }
            return out;
        });
    return tasks;
}

}  // namespace voa::suites::detail
