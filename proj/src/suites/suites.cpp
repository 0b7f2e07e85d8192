#include "internal.hpp"

#include "voa/algebra_lib.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace voa::suites {

namespace fs = std::filesystem;

bool SuiteResult::ok() const { return count(CaseStatus::Fail) == 0; }

std::size_t SuiteResult::count(CaseStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(cases.begin(), cases.end(), [s](const CaseResult& c) { return c.status == s; }));
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"jacobi-n4",  "appendix-a",    "appendix-b",
                                                "appendix-c", "decoupling",    "coset",
                                                "limit-closure", "cc-tables", "gf-counts"};
    return names;
}

namespace detail {

CaseResult timed(std::string id, std::string kind, const std::function<void(CaseResult&)>& fn) {
    CaseResult r;
    r.id = std::move(id);
    r.kind = std::move(kind);
    auto start = std::chrono::steady_clock::now();
    try {
        fn(r);
    } catch (const std::exception& e) {
        r.status = CaseStatus::Fail;
        r.note = std::string("error: ") + e.what();
    }
    r.elapsedMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<Task> appendix_tasks(const std::string& dataDir, const std::string& sub) {
    fs::path dir = fs::path(dataDir) / "identities" / sub;
    if (!fs::is_directory(dir)) throw lab::InputError("missing data directory " + dir.string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".id") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<Task> tasks;
    for (const auto& f : files) tasks.push_back([f] { return run_identity_file("n4", f.string()); });
    return tasks;
}

}  // namespace detail

std::vector<CaseResult> run_identity_file(const std::string& algebra, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw lab::InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    lab::IdentityRunner runner(algebra::preset(algebra));
    return runner.run(ss.str(), fs::path(path).stem().string() + "/");
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
    using namespace detail;
    std::vector<Task> tasks;
    if (name == "jacobi-n4") tasks = jacobi_tasks();
    else if (name == "appendix-a") tasks = appendix_tasks(opts.dataDir, "appendix_a");
    else if (name == "appendix-b") tasks = appendix_tasks(opts.dataDir, "appendix_b");
    else if (name == "appendix-c") tasks = appendix_tasks(opts.dataDir, "appendix_c");
    else if (name == "decoupling") tasks = decoupling_tasks(opts.dataDir);
    else if (name == "coset") tasks = coset_tasks();
    else if (name == "limit-closure") tasks = limit_tasks();
    else if (name == "cc-tables") tasks = cc_table_tasks();
    else if (name == "gf-counts") tasks = gf_tasks();
    else throw UnknownSuite("unknown suite '" + name + "'");

    std::vector<std::vector<CaseResult>> out(tasks.size());
    std::vector<std::string> errors(tasks.size());
    auto runOne = [&](std::size_t i) {
        try {
            out[i] = tasks[i]();
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    };
    unsigned workers = opts.serial ? 1 : std::max(1u, std::thread::hardware_concurrency());
    if (workers <= 1 || tasks.size() <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) runOne(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < std::min<std::size_t>(workers, tasks.size()); ++w)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next++) < tasks.size();) runOne(i);
            });
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (!e.empty()) throw lab::InputError(e);

    SuiteResult r;
    r.id = name;
    for (auto& part : out)
        for (auto& c : part) r.cases.push_back(std::move(c));
    return r;
}

std::string case_json(const std::string& suite, const CaseResult& c, bool timing) {
    nlohmann::ordered_json j;
    j["suiteId"] = suite;
    j["caseId"] = c.id;
    j["kind"] = c.kind;
    j["status"] = lab::status_name(c.status);
    j["level"] = c.level ? nlohmann::ordered_json(c.level->str()) : nlohmann::ordered_json(nullptr);
    auto levels = nlohmann::ordered_json::array();
    for (const auto& q : c.exceptionalLevels) levels.push_back(q.str());
    j["exceptionalLevels"] = levels;
    j["residualSummary"] = c.residual;
    if (!c.note.empty()) j["note"] = c.note;
    if (timing) j["elapsed"] = static_cast<long long>(c.elapsedMs + 0.5);
    return j.dump();
}

std::string summary_json(const SuiteResult& r) {
    nlohmann::ordered_json j;
    j["suiteId"] = r.id;
    j["status"] = r.ok() ? "pass" : "fail";
    j["cases"] = r.cases.size();
    j["passed"] = r.count(CaseStatus::Pass);
    j["failed"] = r.count(CaseStatus::Fail);
    j["skipped"] = r.count(CaseStatus::Skip);
    j["version"] = kVersion;
    return j.dump();
}

}  // namespace voa::suites
