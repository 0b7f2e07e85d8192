// voa: command-line front end for the OPE engine and the verification suites.
// Exit codes: 0 pass, 1 verification failure, 2 usage or input error.

#include "voa/algebra_lib.hpp"
#include "voa/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace voa;
using json = nlohmann::ordered_json;
using voa::exactq::Rational;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A path to an algebra document, a file under data/algebras, or a preset name.
engine::AlgebraSpec load_spec(const std::string& arg) {
    if (fs::is_regular_file(arg)) return algebra::load_algebra_file(arg);
    fs::path shipped = fs::path(suites::kDefaultDataDir) / "algebras" / arg;
    if (fs::is_regular_file(shipped)) return algebra::load_algebra_file(shipped.string());
    std::string name = arg;
    if (fs::path(name).extension() == ".alg") name = fs::path(name).stem().string();
    try {
        return algebra::preset(name);
    } catch (const std::exception&) {
    }
    throw UsageError("no algebra document or preset named '" + arg + "'");
}

std::optional<Rational> parse_level(const std::string& s) {
    if (s.empty() || s == "generic") return std::nullopt;
    return Rational::parse(s);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

/// Generator list for singular/decouple: a preset name (u1, z2) or "expr; expr; ...".
std::vector<std::string> generator_exprs(const std::string& s) {
    if (s == "u1" || s == "z2") return lab::generator_preset(s);
    return split_list(s);
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot write " + path);
        }
    }
    void line(const std::string& s) { (file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout) << s << '\n'; }
    void line(const json& j) { line(j.dump()); }

private:
    std::ofstream file_;
};

/// A context with k specialized when a level is given, plus an evaluator bound to it.
struct Workspace {
    std::unique_ptr<engine::Context> ctx;
    std::unique_ptr<lab::Evaluator> ev;
    Workspace(const engine::AlgebraSpec& spec, std::optional<Rational> level)
        : ctx(std::make_unique<engine::Context>(level ? spec.specialize(*level) : spec)),
          ev(std::make_unique<lab::Evaluator>(*ctx, level)) {}
};

int report_cases(Output& out, const std::string& suite, const std::vector<lab::CaseResult>& cases, bool timing) {
    suites::SuiteResult r{suite, cases};
    for (const auto& c : r.cases) out.line(suites::case_json(suite, c, timing));
    out.line(suites::summary_json(r));
    return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vertex algebra OPE engine and verification suites"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string outPath;
    bool noTiming = false;
    app.add_option("--out", outPath, "write JSON lines here instead of standard output");
    app.add_flag("--no-timing", noTiming, "omit elapsed times, making reports byte-identical across runs");

    std::string algArg, idPath, expr, levelArg, left, right, target, gensArg, weightArg, chargeArg, modArg;
    std::string maxWeightArg, suiteName;
    bool serial = false;
    int trunc = 10;
    std::vector<int> gf;

    auto* verify = app.add_subcommand("verify", "verify an identity file, an expression, or the Jacobi identity");
    verify->add_option("algebra", algArg, "algebra document or preset")->required();
    verify->add_option("identities", idPath, "identity file");
    verify->add_option("--expr", expr, "expression that must normalize to zero");
    verify->add_option("--level", levelArg, "RATIONAL or generic");
    verify->add_option("--max-weight", maxWeightArg, "Jacobi check bound when no identity is given");

    auto* suite = app.add_subcommand("suite", "run a named verification suite");
    suite->add_option("name", suiteName, "suite name")->required();
    suite->add_flag("--serial", serial, "run cases sequentially");

    auto* enumerate = app.add_subcommand("enumerate", "list PBW monomials or counting-series coefficients");
    enumerate->add_option("algebra", algArg, "algebra document or preset");
    enumerate->add_option("--weight", weightArg, "weight, e.g. 2 or 5/2");
    enumerate->add_option("--charge", chargeArg, "exact charge");
    enumerate->add_option("--mod", modArg, "N,r: charge congruent to r mod N");
    enumerate->add_option("--gf", gf, "N l: strong generator counting series")->expected(2);
    enumerate->add_option("--trunc", trunc, "largest weight of the series");

    auto* ope = app.add_subcommand("ope", "print all poles of left(z) right(w)");
    ope->add_option("algebra", algArg, "algebra document or preset")->required();
    ope->add_option("--left", left)->required();
    ope->add_option("--right", right)->required();
    ope->add_option("--level", levelArg, "RATIONAL or generic");

    auto* decouple = app.add_subcommand("decouple", "write a field as a polynomial in lower generators");
    decouple->add_option("algebra", algArg, "algebra document or preset")->required();
    decouple->add_option("--target", target)->required();
    decouple->add_option("--gens", gensArg, "u1, z2 or 'expr; expr; ...' (lower-weight ones are used)")->required();
    decouple->add_option("--level", levelArg, "RATIONAL or generic");

    auto* singular = app.add_subcommand("singular", "check a field, or search a weight space, for singular vectors");
    singular->add_option("algebra", algArg, "algebra document or preset")->required();
    singular->add_option("--gens", gensArg, "u1, z2 or 'expr; expr; ...'")->required();
    singular->add_option("--expr", expr, "field to check (needs --level)");
    singular->add_option("--level", levelArg, "RATIONAL");
    singular->add_option("--weight", weightArg, "search weight");
    singular->add_option("--charge", chargeArg, "exact charge for the search");
    singular->add_option("--mod", modArg, "N,r for the search");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Output out(outPath);
        auto level = parse_level(levelArg);
        auto predicate = [&]() {
            if (!chargeArg.empty() && !modArg.empty()) throw UsageError("--charge and --mod are exclusive");
            if (!chargeArg.empty()) return lab::ChargePredicate::exact(std::stoi(chargeArg));
            if (!modArg.empty()) {
                auto comma = modArg.find(',');
                if (comma == std::string::npos) throw UsageError("--mod expects N,r");
                return lab::ChargePredicate::modulo(std::stoi(modArg.substr(0, comma)), std::stoi(modArg.substr(comma + 1)));
            }
            return lab::ChargePredicate::any();
        };

        if (*suite) {
            suites::SuiteOptions opts;
            opts.serial = serial;
            auto r = suites::run_suite(suiteName, opts);
            return report_cases(out, r.id, r.cases, !noTiming);
        }

        if (*verify) {
            auto spec = load_spec(algArg);
            if (!idPath.empty()) {
                auto text = read_file(idPath);
                lab::IdentityRunner runner(spec);
                return report_cases(out, "verify", runner.run(text), !noTiming);
            }
            if (!expr.empty()) {
                Workspace ws(spec, level);
                auto start = std::chrono::steady_clock::now();
                auto res = lab::verify_identity(*ws.ev, expr);
                lab::CaseResult c;
                c.id = "expr";
                c.kind = "zero";
                c.level = level;
                c.status = res.pass ? lab::CaseStatus::Pass : lab::CaseStatus::Fail;
                c.residual = lab::residual_terms(res.residual, ws.ctx->gens());
                c.elapsedMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                return report_cases(out, "verify", {c}, !noTiming);
            }
            auto completed = engine::complete_table(level ? spec.specialize(*level) : spec);
            terms::Weight bound{0};
            if (!maxWeightArg.empty()) {
                bound = terms::Weight::parse(maxWeightArg);
            } else {
                std::vector<terms::Weight> ws;
                for (const auto& g : completed.gens().decls()) ws.push_back(g.weight);
                std::sort(ws.rbegin(), ws.rend());
                for (std::size_t i = 0; i < std::min<std::size_t>(3, ws.size()); ++i) bound = bound + ws[i];
            }
            auto start = std::chrono::steady_clock::now();
            auto rep = engine::check_jacobi(completed, bound);
            lab::CaseResult c;
            c.id = "jacobi";
            c.kind = "jacobi";
            c.level = level;
            c.status = rep.ok() ? lab::CaseStatus::Pass : lab::CaseStatus::Fail;
            c.note = std::to_string(rep.checked) + " identities up to weight " + bound.str();
            if (!rep.ok()) c.residual = lab::residual_terms(rep.failures.front().residual, completed.gens());
            c.elapsedMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            return report_cases(out, "verify", {c}, !noTiming);
        }

        if (*enumerate) {
            if (!gf.empty()) {
                auto s = lab::strong_gen_gf(gf[0], gf[1], trunc);
                json j;
                j["N"] = gf[0];
                j["l"] = gf[1];
                j["offset"] = s.offset.str();
                j["coefficients"] = s.coeffs;
                j["reduced"] = s.reduced;
                out.line(j);
                return 0;
            }
            if (algArg.empty() || weightArg.empty()) throw UsageError("enumerate needs an algebra and --weight, or --gf N l");
            auto spec = load_spec(algArg);
            auto basis = lab::enumerate_basis(spec.gens(), terms::Weight::parse(weightArg), predicate());
            for (const auto& m : basis) out.line(json{{"monomial", terms::print_monomial(m, spec.gens())}});
            out.line(json{{"count", basis.size()}});
            return 0;
        }

        if (*ope) {
            Workspace ws(load_spec(algArg), level);
            auto res = ws.ctx->ope(ws.ev->eval(left), ws.ev->eval(right));
            json poles = json::object();
            for (auto it = res.poles.rbegin(); it != res.poles.rend(); ++it)
                poles[std::to_string(it->first)] = terms::print_field(it->second, ws.ctx->gens());
            out.line(json{{"left", left}, {"right", right}, {"poles", poles}});
            return 0;
        }

        if (*decouple) {
            auto spec = load_spec(algArg);
            Workspace ws(spec, std::nullopt);
            auto t = ws.ev->eval(target);
            auto tw = lab::field_grade(t, ws.ctx->gens()).weight;
            std::vector<terms::Field> gens;
            std::vector<std::string> used;
            for (const auto& e : generator_exprs(gensArg)) {
                auto g = ws.ev->eval(e);
                if (lab::field_grade(g, ws.ctx->gens()).weight < tw) {
                    gens.push_back(g);
                    used.push_back(e);
                }
            }
            auto mode = level ? lab::DecoupleMode::at(*level) : lab::DecoupleMode::symbolic();
            auto sol = lab::decouple(*ws.ctx, t, gens, mode);
            json j;
            j["target"] = target;
            j["level"] = level ? json(level->str()) : json("generic");
            j["decouples"] = sol.has_value();
            if (sol) {
                json terms = json::array();
                lab::WordSpace space(*ws.ctx, gens);
                for (std::size_t i = 0; i < sol->words.size(); ++i)
                    terms.push_back({{"coefficient", sol->coefficients[i].str()}, {"word", space.describe(sol->words[i], used)}});
                j["terms"] = terms;
                json exc = json::array();
                for (const auto& q : sol->exceptionalLevels) exc.push_back(q.str());
                j["exceptionalLevels"] = exc;
                json resid = json::array();
                for (const auto& p : sol->residualFactors) resid.push_back(p.str());
                j["unresolvedFactors"] = resid;
            }
            out.line(j);
            return sol ? 0 : 1;
        }

        if (*singular) {
            auto spec = load_spec(algArg);
            if (!expr.empty()) {
                if (!level) throw UsageError("singular --expr needs --level");
                Workspace ws(spec, level);
                std::vector<terms::Field> gens;
                for (const auto& e : generator_exprs(gensArg)) gens.push_back(ws.ev->eval(e));
                auto check = lab::singular_check(*ws.ctx, ws.ev->eval(expr), gens);
                lab::CaseResult c;
                c.id = "singular";
                c.kind = "singular";
                c.level = level;
                c.status = check.singular ? lab::CaseStatus::Pass : lab::CaseStatus::Fail;
                c.note = std::to_string(check.modesChecked) + " modes checked";
                if (!check.singular) c.residual = lab::residual_terms(check.failures.front().residual, ws.ctx->gens());
                return report_cases(out, "singular", {c}, !noTiming);
            }
            if (weightArg.empty()) throw UsageError("singular needs --expr with --level, or --weight");
            Workspace ws(spec, std::nullopt);
            std::vector<terms::Field> gens;
            for (const auto& e : generator_exprs(gensArg)) gens.push_back(ws.ev->eval(e));
            auto rep = lab::singular_search(spec, terms::Weight::parse(weightArg), predicate(), gens);
            json j;
            j["weight"] = rep.weight.str();
            j["basisSize"] = rep.basis.size();
            json generic = json::array();
            for (const auto& f : rep.generic) generic.push_back(terms::print_field(f, spec.gens()));
            j["generic"] = generic;
            json levels = json::array();
            for (const auto& l : rep.exceptional) {
                json w = json::array();
                for (const auto& f : l.witnesses) w.push_back(terms::print_field(f, spec.gens()));
                levels.push_back({{"level", l.level.str()}, {"witnesses", w}});
            }
            j["exceptional"] = levels;
            json resid = json::array();
            for (const auto& p : rep.residualFactors) resid.push_back(p.str());
            j["unresolvedFactors"] = resid;
            out.line(j);
            return 0;
        }
    } catch (const suites::UnknownSuite& e) {
        std::cerr << "voa: " << e.what() << '\n';
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "voa: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        // Parse errors, unknown fields, malformed documents and identity files.
        std::cerr << "voa: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
