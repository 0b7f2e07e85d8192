#pragma once

#include "voa/suites.hpp"

#include <functional>

namespace voa::suites::detail {

using Task = std::function<std::vector<CaseResult>()>;

std::vector<Task> jacobi_tasks();
std::vector<Task> appendix_tasks(const std::string& dataDir, const std::string& sub);
std::vector<Task> decoupling_tasks(const std::string& dataDir);
std::vector<Task> coset_tasks();
std::vector<Task> limit_tasks();
std::vector<Task> cc_table_tasks();
std::vector<Task> gf_tasks();

/// Times fn, which fills in status and note.
CaseResult timed(std::string id, std::string kind, const std::function<void(CaseResult&)>& fn);
inline CaseStatus pass_if(bool ok) { return ok ? CaseStatus::Pass : CaseStatus::Fail; }

}  // namespace voa::suites::detail
