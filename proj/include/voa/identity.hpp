#pragma once

#include "voa/invariant_lab.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace voa::lab {

/// Unknown names or malformed indices in an expression.
class UnknownField : public LabError {
public:
    using LabError::LabError;
};

/// Evaluates field expressions against a context.
///
///   expr    := ['+'|'-'] term (('+'|'-') term)*
///   term    := power (('*'|'/'|juxtaposition) power)*
///   power   := primary ['^' integer]
///   primary := number | 'k' | '(' expr ')' | 'd' ['^' n] primary
///            | 'NO(' expr (',' expr)+ ')' | 'nth(' expr ',' expr ',' integer ')'
///            | name ['[' integer (',' integer)* ']']
///
/// NO is right-nested. Scalars standing alone mean multiples of the vacuum. Names resolve to
/// generators, then user definitions, then the built-in families
///   U[a,b] = NO(d^a Jp, d^b Jm)      V[a,b] = NO(d^a Gp, d^b Gm)
///   A[a,b] = NO(d^a Jp, d^b Gm)      B[a,b] = NO(d^a Jm, d^b Gp)
///   Sigma<i><p|m>[a1,...,aN]: the first N-i factors are J±, the remaining i are G±
///   H = J,  w[j] = NO(Gp, d^j Gm) + NO(Qp, d^j Qm),
///   m[j] = NO(Gp, d^j Qp) + NO(d^j Gp, Qp),  p[j] = NO(Gm, d^j Qm) + NO(d^j Gm, Qm).
class Evaluator {
public:
    /// With a level, the symbol k evaluates to that rational.
    explicit Evaluator(Context& ctx, std::optional<Rational> level = std::nullopt) : ctx_(ctx), level_(level) {}

    Context& context() { return ctx_; }
    void define(const std::string& name, Field value) { defs_[name] = std::move(value); }
    bool defined(const std::string& name) const { return defs_.count(name) > 0; }
    const std::map<std::string, Field>& definitions() const { return defs_; }

    /// Throws exactq::ParseError on syntax errors and UnknownField on unknown names.
    Field eval(std::string_view text);
    Field named(const std::string& name, const std::vector<int>& indices);

private:
    Context& ctx_;
    std::optional<Rational> level_;
    std::map<std::string, Field> defs_;
};

struct IdentityResult {
    bool pass = false;
    Field residual;
};

/// Asserts that expr normalizes to zero at symbolic k (or in whatever algebra ctx holds).
IdentityResult verify_identity(Evaluator& ev, std::string_view expr);
IdentityResult verify_identity(Context& ctx, std::string_view expr);

/// Named generator lists used by identity files.
std::vector<std::string> generator_preset(const std::string& name);

enum class CaseStatus { Pass, Fail, Skip };
std::string status_name(CaseStatus s);

struct CaseResult {
    std::string id;
    std::string kind;
    CaseStatus status = CaseStatus::Fail;
    std::optional<Rational> level;
    std::set<Rational> exceptionalLevels;
    std::vector<std::string> residual;  ///< first few residual monomials, printed
    std::string note;
    double elapsedMs = 0;
};

class InputError : public LabError {
public:
    using LabError::LabError;
};

/// Identity files: one statement per line, indented lines continue the previous one, '#' comments.
///   case NAME                                 id for the next assertion
///   name := expr
///   generators: u1 | z2 | expr; expr; ...
///   assert_zero expr
///   assert_singular expr @ k=q
///   assert_proportional lhs ~ rhs @ k=q       rhs singular and lhs a nonzero multiple of it
/// When a field at level q is not singular, the note says whether its nonzero mode images lie in
/// the ideal generated by the fields asserted earlier at q. The case still fails.
///   assert_decouples target [| g; g; ...] @ generic|k=q [expect q1, q2, ...]
class IdentityRunner {
public:
    explicit IdentityRunner(const AlgebraSpec& spec);

    /// Parses the whole file first (InputError on malformed statements), then runs it.
    std::vector<CaseResult> run(std::string_view text, const std::string& idPrefix = "");
    /// Parse-only validation.
    static void validate(std::string_view text);

private:
    struct Statement {
        std::size_t line = 0;
        std::string keyword;
        std::string body;
    };
    static std::vector<Statement> split(std::string_view text);

    Evaluator& at_level(const std::optional<Rational>& q);
    std::vector<Field> generators_at(const std::optional<Rational>& q);

    AlgebraSpec spec_;
    std::unique_ptr<Context> symbolicCtx_;
    std::unique_ptr<Evaluator> symbolic_;
    std::map<Rational, std::pair<std::unique_ptr<Context>, std::unique_ptr<Evaluator>>> levels_;
    std::vector<std::pair<std::string, std::string>> definitions_;  // replayed at each level
    std::vector<std::string> generatorExprs_;
    std::map<Rational, std::vector<Field>> earlier_;  // fields asserted singular so far, per level
};

/// Residual printing shared by reports: at most `limit` terms.
std::vector<std::string> residual_terms(const Field& f, const GeneratorSet& gens, std::size_t limit = 5);

}  // namespace voa::lab
