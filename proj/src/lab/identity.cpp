#include "voa/identity.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace voa::lab {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

Rational parse_rational(const std::string& s) {
    try {
        return Rational::parse(s);
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
}

/// Splits "body @ k=q" or "body @ generic"; the level part is returned raw.
std::pair<std::string, std::string> split_at(const std::string& body) {
    auto p = body.rfind('@');
    if (p == std::string::npos) return {trim(body), ""};
    return {trim(body.substr(0, p)), trim(body.substr(p + 1))};
}

std::optional<Rational> parse_level(const std::string& spec, bool allowGeneric) {
    std::string s;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (allowGeneric && s == "generic") return std::nullopt;
    if (s.rfind("k=", 0) != 0) throw InputError("expected 'k=<rational>'" + std::string(allowGeneric ? " or 'generic'" : ""));
    return parse_rational(s.substr(2));
}

const char* kKeywords[] = {"case", "generators:", "assert_zero", "assert_singular", "assert_proportional",
                           "assert_decouples"};

void check_statement(const std::string& keyword, const std::string& body) {
    if (keyword == "define") return;
    if (keyword == "case") {
        if (body.empty()) throw InputError("case needs a name");
        return;
    }
    if (body.empty()) throw InputError(keyword + " needs an argument");
    if (keyword == "assert_singular") {
        auto [e, lvl] = split_at(body);
        if (e.empty()) throw InputError("assert_singular needs an expression");
        parse_level(lvl, false);
    } else if (keyword == "assert_proportional") {
        auto [e, lvl] = split_at(body);
        if (split_list(e, '~').size() != 2) throw InputError("assert_proportional needs 'lhs ~ rhs'");
        parse_level(lvl, false);
    } else if (keyword == "assert_decouples") {
        auto [e, rest] = split_at(body);
        if (e.empty()) throw InputError("assert_decouples needs a target");
        auto ex = rest.find("expect");
        parse_level(rest.substr(0, ex), true);
        if (ex != std::string::npos)
            for (const auto& q : split_list(rest.substr(ex + 6), ',')) parse_rational(q);
    }
}

}  // namespace

std::string status_name(CaseStatus s) {
    switch (s) {
        case CaseStatus::Pass: return "pass";
        case CaseStatus::Fail: return "fail";
        case CaseStatus::Skip: return "skip";
    }
    return "fail";
}

std::vector<std::string> generator_preset(const std::string& name) {
    if (name == "u1")
        return {"J", "Qp", "Qm", "T", "U[0,0]", "U[1,0]", "U[2,0]", "A[0,0]", "A[1,0]", "A[2,0]",
                "B[0,0]", "B[1,0]", "B[2,0]", "V[0,0]", "V[1,0]", "V[2,0]"};
    if (name == "z2")
        return {"H", "Qp", "Qm", "T", "U[0,0]", "U[1,0]", "A[0,0]", "A[1,0]", "B[0,0]", "B[1,0]", "V[0,0]",
                "V[1,0]", "Sigma0p[0,0]", "Sigma0m[0,0]", "Sigma1p[0,0]", "Sigma1m[0,0]", "Sigma0p[2,0]",
                "Sigma0m[2,0]", "Sigma1p[1,0]", "Sigma1m[1,0]", "Sigma2p[1,0]", "Sigma2m[1,0]"};
    throw InputError("unknown generator preset " + name);
}

std::vector<IdentityRunner::Statement> IdentityRunner::split(std::string_view text) {
    std::vector<Statement> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        if (std::isspace(static_cast<unsigned char>(line[0]))) {
            if (out.empty()) throw InputError("line " + std::to_string(no) + ": continuation without a statement");
            out.back().body += " " + trim(line);
            continue;
        }
        std::string t = trim(line);
        Statement s;
        s.line = no;
        auto def = t.find(":=");
        std::string first = t.substr(0, t.find_first_of(" \t"));
        bool keyword = std::find(std::begin(kKeywords), std::end(kKeywords), first) != std::end(kKeywords);
        if (!keyword && def != std::string::npos) {
            std::string name = trim(t.substr(0, def));
            if (!is_identifier(name)) throw InputError("line " + std::to_string(no) + ": bad definition name");
            s.keyword = "define";
            s.body = name + "\n" + trim(t.substr(def + 2));
        } else if (keyword) {
            s.keyword = first;
            s.body = trim(t.substr(first.size()));
        } else {
            throw InputError("line " + std::to_string(no) + ": unknown statement '" + first + "'");
        }
        out.push_back(std::move(s));
    }
    return out;
}

void IdentityRunner::validate(std::string_view text) {
    for (const auto& s : split(text)) {
        try {
            check_statement(s.keyword, s.body);
        } catch (const InputError& e) {
            throw InputError("line " + std::to_string(s.line) + ": " + e.what());
        }
    }
}

IdentityRunner::IdentityRunner(const AlgebraSpec& spec)
    : spec_(spec), symbolicCtx_(std::make_unique<Context>(spec)), symbolic_(std::make_unique<Evaluator>(*symbolicCtx_)) {}

Evaluator& IdentityRunner::at_level(const std::optional<Rational>& q) {
    if (!q) return *symbolic_;
    auto it = levels_.find(*q);
    if (it == levels_.end()) {
        auto ctx = std::make_unique<Context>(spec_.specialize(*q));
        auto ev = std::make_unique<Evaluator>(*ctx, *q);
        for (const auto& [name, value] : symbolic_->definitions()) {
            try {
                ev->define(name, evaluate_field(value, *q));
            } catch (const exactq::PoleError&) {
                auto d = std::find_if(definitions_.begin(), definitions_.end(), [&](const auto& p) { return p.first == name; });
                ev->define(name, ev->eval(d->second));
            }
        }
        it = levels_.emplace(*q, std::make_pair(std::move(ctx), std::move(ev))).first;
    }
    return *it->second.second;
}

std::vector<Field> IdentityRunner::generators_at(const std::optional<Rational>& q) {
    if (generatorExprs_.empty()) throw InputError("no generators declared before a singular or decoupling assertion");
    Evaluator& ev = at_level(q);
    std::vector<Field> out;
    for (const auto& e : generatorExprs_) out.push_back(ev.eval(e));
    return out;
}

std::vector<CaseResult> IdentityRunner::run(std::string_view text, const std::string& idPrefix) {
    auto stmts = split(text);
    for (const auto& s : stmts) {
        try {
            check_statement(s.keyword, s.body);
        } catch (const InputError& e) {
            throw InputError("line " + std::to_string(s.line) + ": " + e.what());
        }
    }

    std::vector<CaseResult> results;
    std::string pendingName;
    const GeneratorSet& gens = spec_.gens();
    for (const auto& s : stmts) {
        auto where = [&](const std::exception& e) {
            return InputError("line " + std::to_string(s.line) + ": " + e.what());
        };
        if (s.keyword == "case") {
            pendingName = s.body;
            continue;
        }
        if (s.keyword == "define") {
            auto nl = s.body.find('\n');
            std::string name = s.body.substr(0, nl), expr = s.body.substr(nl + 1);
            try {
                Field v = symbolic_->eval(expr);
                symbolic_->define(name, v);
                definitions_.emplace_back(name, expr);
                for (auto& [q, pair] : levels_) {
                    try {
                        pair.second->define(name, evaluate_field(v, q));
                    } catch (const exactq::PoleError&) {
                        pair.second->define(name, pair.second->eval(expr));
                    }
                }
            } catch (const exactq::ParseError& e) {
                throw where(e);
            } catch (const LabError& e) {
                throw where(e);
            }
            continue;
        }
        if (s.keyword == "generators:") {
            auto list = split_list(s.body, ';');
            if (list.size() == 1 && (list[0] == "u1" || list[0] == "z2"))
                generatorExprs_ = generator_preset(list[0]);
            else
                generatorExprs_ = list;
            continue;
        }

        CaseResult r;
        r.id = idPrefix + (pendingName.empty() ? "line" + std::to_string(s.line) : pendingName);
        pendingName.clear();
        r.kind = s.keyword.substr(7);
        auto start = std::chrono::steady_clock::now();
        try {
            if (s.keyword == "assert_zero") {
                auto res = verify_identity(*symbolic_, s.body);
                r.status = res.pass ? CaseStatus::Pass : CaseStatus::Fail;
                r.residual = residual_terms(res.residual, gens);
            } else if (s.keyword == "assert_singular" || s.keyword == "assert_proportional") {
                auto [e, lvl] = split_at(s.body);
                r.level = parse_level(lvl, false);
                Evaluator& ev = at_level(r.level);
                Field v;
                std::string propNote;
                bool propOk = true;
                if (s.keyword == "assert_proportional") {
                    auto parts = split_list(e, '~');
                    Field lhs = ev.eval(parts[0]);
                    v = ev.eval(parts[1]);
                    if (lhs.is_zero() || v.is_zero()) {
                        propOk = false;
                        propNote = lhs.is_zero() ? "left side vanishes" : "right side vanishes";
                    } else {
                        const auto& [m, c] = *v.begin();
                        LevelScalar ratio = lhs.coefficient(m) / c;
                        Field diff = lhs - v * ratio;
                        propOk = !ratio.is_zero() && diff.is_zero();
                        propNote = propOk ? "ratio " + ratio.str() : "sides are not proportional";
                        if (!propOk) r.residual = residual_terms(diff, gens);
                    }
                } else {
                    v = ev.eval(e);
                }
                auto gensAt = generators_at(r.level);
                auto check = singular_check(ev.context(), v, gensAt);
                bool nonzero = !v.is_zero();
                r.status = propOk && check.singular && nonzero ? CaseStatus::Pass : CaseStatus::Fail;
                std::ostringstream note;
                note << check.modesChecked << " modes checked";
                if (!nonzero) note << "; field vanishes";
                if (!propNote.empty()) note << "; " << propNote;
                if (!check.singular) {
                    note << "; " << check.failures.size() << " nonzero modes, first " << generatorExprs_[static_cast<std::size_t>(check.failures[0].gen)]
                         << " (" << check.failures[0].n << ")";
                    if (r.residual.empty()) r.residual = residual_terms(check.failures[0].residual, ev.context().gens());
                    const auto& seeds = earlier_[*r.level];
                    if (!seeds.empty()) {
                        bool inIdeal = std::all_of(check.failures.begin(), check.failures.end(), [&](const ModeFailure& m) {
                            return in_generated_ideal(ev.context(), seeds, gensAt, m.residual);
                        });
                        note << (inIdeal ? "; singular modulo the ideal of earlier fields at this level"
                                         : "; not shown singular modulo earlier fields at this level");
                    }
                }
                if (nonzero) earlier_[*r.level].push_back(v);
                r.note = note.str();
            } else if (s.keyword == "assert_decouples") {
                auto [e, rest] = split_at(s.body);
                auto ex = rest.find("expect");
                auto level = parse_level(rest.substr(0, ex), true);
                std::optional<std::set<Rational>> expected;
                if (ex != std::string::npos) {
                    expected.emplace();
                    for (const auto& q : split_list(rest.substr(ex + 6), ',')) expected->insert(parse_rational(q));
                }
                auto bar = split_list(e, '|');
                Field target = symbolic_->eval(bar[0]);
                std::vector<Field> g;
                std::vector<std::string> names;
                if (bar.size() > 1) {
                    names = split_list(bar[1], ';');
                } else {
                    names = generatorExprs_;
                    if (names.empty()) throw InputError("no generators declared");
                }
                Weight tw = field_grade(target, gens).weight;
                for (const auto& n : names) {
                    Field f = symbolic_->eval(n);
                    if (field_grade(f, gens).weight < tw) g.push_back(std::move(f));
                }
                auto sol = level ? decouple(*symbolicCtx_, target, g, DecoupleMode::at(*level))
                                 : decouple(*symbolicCtx_, target, g);
                r.level = level;
                if (!sol) {
                    r.status = CaseStatus::Fail;
                    r.note = "target is not in the span of words";
                } else {
                    r.exceptionalLevels = sol->exceptionalLevels;
                    bool ok = !expected || *expected == sol->exceptionalLevels;
                    r.status = ok ? CaseStatus::Pass : CaseStatus::Fail;
                    r.note = std::to_string(sol->words.size()) + " words used of " + std::to_string(sol->candidateWords);
                }
            }
        } catch (const exactq::ParseError& e) {
            throw where(e);
        } catch (const InputError& e) {
            throw where(e);
        } catch (const UnknownField& e) {
            throw where(e);
        }
        r.elapsedMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace voa::lab
