#pragma once

#include "voa/linalg.hpp"
#include "voa/ope_engine.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace voa::lab {

using engine::AlgebraSpec;
using engine::Context;
using exactq::LevelPoly;
using terms::GeneratorSet;
using terms::Parity;
using terms::Weight;

class LabError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ChargePredicate {
    enum class Kind { Any, Exact, Modulo };
    Kind kind = Kind::Any;
    int value = 0;    ///< exact charge, or the residue
    int modulus = 1;

    static ChargePredicate any() { return {}; }
    static ChargePredicate exact(int q) { return {Kind::Exact, q, 1}; }
    static ChargePredicate modulo(int n, int residue);

    bool accepts(int charge) const;
    std::string str() const;
};

/// PBW monomials of the given weight whose charge satisfies pred, ordered by length then PBW order.
std::vector<Monomial> enumerate_basis(const GeneratorSet& gens, Weight weight,
                                      const ChargePredicate& pred = ChargePredicate::any());

/// Counting series q^{N+l^2/2} prod_{i<=N-l} 1/(1-q^i) prod_{j<=l} 1/(1-q^j), truncated at weight <= truncation.
struct GfSeries {
    Weight offset;                   ///< weight of coefficient 0
    std::vector<long long> coeffs;   ///< coeffs[i] counts weight offset + i
    std::vector<long long> reduced;  ///< series times (1 - q)
};
GfSeries strong_gen_gf(int N, int l, int truncation);

// ---------------------------------------------------------------------------------------------
// Words in a list of (composite) generators.

/// One factor ∂^deriv of gens[gen].
struct WordFactor {
    int gen = 0;
    int deriv = 0;
    friend bool operator==(const WordFactor&, const WordFactor&) = default;
    friend auto operator<=>(const WordFactor&, const WordFactor&) = default;
};
using Word = std::vector<WordFactor>;

/// Normally ordered words in composite generators, expanded into the ambient PBW basis.
/// Words are sorted by generator index ascending, derivative descending, and right-nested.
class WordSpace {
public:
    WordSpace(Context& ctx, std::vector<Field> gens);

    const std::vector<Field>& gens() const { return gens_; }
    Weight gen_weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
    int gen_charge(int i) const { return charges_[static_cast<std::size_t>(i)]; }

    /// All words (of length >= 1) of exactly this weight and charge and parity.
    std::vector<Word> words(Weight weight, int charge, Parity parity) const;
    /// All words of this weight whose charge passes pred.
    std::vector<Word> words(Weight weight, const ChargePredicate& pred) const;
    const Field& expand(const Word& w);
    /// Appends a generator; existing word indices stay valid.
    void add_generator(Field g);
    std::string describe(const Word& w, const std::vector<std::string>& names) const;

private:
    void collect(Weight remaining, std::size_t startFactor, Word& cur, std::vector<Word>& out) const;

    Context& ctx_;
    std::vector<Field> gens_;
    std::vector<Weight> weights_;
    std::vector<int> charges_;
    std::vector<Parity> parities_;
    std::map<Word, std::shared_ptr<const Field>> cache_;
};

/// Homogeneous weight, charge and parity of a nonzero field; throws LabError otherwise.
struct FieldGrade {
    Weight weight;
    int charge = 0;
    Parity parity = Parity::Even;
};
FieldGrade field_grade(const Field& f, const GeneratorSet& gens);

// ---------------------------------------------------------------------------------------------
// Decoupling.

struct DecouplingSolution {
    std::vector<Word> words;                  ///< words with nonzero coefficient
    std::vector<LevelScalar> coefficients;    ///< target = sum coefficients[i] * words[i]
    std::set<Rational> exceptionalLevels;     ///< confirmed levels where the target leaves the span
    std::vector<LevelPoly> residualFactors;   ///< irreducible denominator factors without rational roots
    std::size_t candidateWords = 0;
    std::size_t rank = 0;
};

struct DecoupleMode {
    std::optional<Rational> level;  ///< nullopt: symbolic k
    static DecoupleMode symbolic() { return {}; }
    static DecoupleMode at(const Rational& q) { return {q}; }
};

/// Writes target as a normally ordered polynomial in gens and their derivatives, or nullopt
/// when the target is not in the span at generic k (resp. at the given level).
std::optional<DecouplingSolution> decouple(Context& ctx, const Field& target, const std::vector<Field>& gens,
                                           DecoupleMode mode = DecoupleMode::symbolic());

/// True when f lies in the span of words in gens of the same grade (symbolic k).
bool in_word_span(WordSpace& space, const Field& f, const GeneratorSet& ambient);

// ---------------------------------------------------------------------------------------------
// Singular vectors, commutants.

struct ModeFailure {
    int gen = 0;   ///< index into the generator list
    int n = 0;     ///< product index: gens[gen]_(n) v
    Field residual;
};

struct SingularCheck {
    bool singular = false;
    std::vector<ModeFailure> failures;
    std::size_t modesChecked = 0;
};

/// Smallest product index n for which g_(n) lowers weight, i.e. n > weight(g) - 1.
int first_lowering_index(Weight genWeight);

/// g_(n) v = 0 for every g in gens and every weight-lowering n. Fields are evaluated at
/// the level when one is given; ctx must then hold the specialized algebra.
SingularCheck singular_check(Context& ctx, const Field& v, const std::vector<Field>& gens);
SingularCheck singular_check(const AlgebraSpec& spec, const Field& v, const std::vector<Field>& gens,
                             std::optional<Rational> level);

Field evaluate_field(const Field& f, const Rational& level);

/// Whether f lies in the ideal generated by seeds inside the algebra strongly generated by gens,
/// at a specialized level. Only ideal elements reachable without passing above the weight of f
/// are generated, so `false` is not conclusive.
bool in_generated_ideal(Context& ctx, const std::vector<Field>& seeds, const std::vector<Field>& gens,
                        const Field& f);

struct SingularLevel {
    Rational level;
    std::vector<Field> witnesses;  ///< constant-coefficient singular fields beyond the generic ones
};

struct SingularReport {
    Weight weight;
    std::vector<Monomial> basis;        ///< ambient search space
    std::vector<Field> generic;         ///< singular fields at symbolic k
    std::vector<SingularLevel> exceptional;
    std::vector<LevelPoly> residualFactors;
    std::set<Rational> levels() const;
};

SingularReport singular_search(const AlgebraSpec& spec, Weight weight, const ChargePredicate& pred,
                               const std::vector<Field>& gens);

/// Fields of the given weight annihilated by every nonnegative mode of subGens (symbolic k).
std::vector<Field> commutant_basis(Context& ctx, const std::vector<Field>& subGens, Weight weight,
                                   const ChargePredicate& pred = ChargePredicate::any());

// ---------------------------------------------------------------------------------------------
// Subalgebra closure.

class Closure {
public:
    Closure(Context& ctx, std::vector<Field> gens, Weight maxWeight);

    /// Adds new generators until all n-th products of generators lie in the word span.
    void run();
    const std::vector<Field>& generators() const { return space_.gens(); }
    std::size_t initial_generators() const { return initial_; }
    /// Generators that had to be added beyond the initial ones.
    std::vector<Field> added() const;
    std::size_t products_checked() const { return checked_; }
    bool member(const Field& f);
    Weight max_weight() const { return maxWeight_; }

private:
    Context& ctx_;
    WordSpace space_;
    Weight maxWeight_;
    std::size_t initial_ = 0;
    std::size_t checked_ = 0;
};

// ---------------------------------------------------------------------------------------------
// Virasoro data and projections.

class NotVirasoro : public LabError {
public:
    using LabError::LabError;
};

/// 2 * (L_(3)L as a multiple of the vacuum), after checking L_(2)L = 0, L_(1)L = 2L, L_(0)L = ∂L.
LevelScalar central_charge(Context& ctx, const Field& L);

/// Coefficient of the quadratic part of f (words ∂^i a ∂^j b) on target, computed modulo the
/// ∂-image of the quadratic space one weight lower.
LevelScalar pair_projection(Context& ctx, const Field& f, int a, int b, const Monomial& target);

}  // namespace voa::lab
