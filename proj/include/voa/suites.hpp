#pragma once

#include "voa/identity.hpp"

#include <string>
#include <vector>

namespace voa::suites {

using lab::CaseResult;
using lab::CaseStatus;

#ifdef VOA_DATA_DIR
inline constexpr const char* kDefaultDataDir = VOA_DATA_DIR;
#else
inline constexpr const char* kDefaultDataDir = "data";
#endif

inline constexpr const char* kVersion = "0.1.0";

struct SuiteOptions {
    std::string dataDir = kDefaultDataDir;
    bool serial = false;
};

struct SuiteResult {
    std::string id;
    std::vector<CaseResult> cases;
    /// Skipped cases do not count against the suite.
    bool ok() const;
    std::size_t count(CaseStatus s) const;
};

class UnknownSuite : public lab::LabError {
public:
    using LabError::LabError;
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts = {});

/// Runs one identity file against a preset algebra; case ids get the file stem as prefix.
std::vector<CaseResult> run_identity_file(const std::string& algebra, const std::string& path);

/// Vertex-algebra invariants on n4: grading, truncation, translation covariance, evaluation at
/// 10 random levels, engine products against the brute-force mode algebra for all words of
/// weight <= 4, and automorphism checks (θ, five det-1 maps, one det-2 map that must fail).
std::vector<CaseResult> property_cases(unsigned seed = 20240611);

/// One JSON object per case, then a summary object. Timing is omitted when timing is false.
std::string case_json(const std::string& suite, const CaseResult& c, bool timing = true);
std::string summary_json(const SuiteResult& r);

}  // namespace voa::suites
