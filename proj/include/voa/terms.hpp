#pragma once

#include "voa/exactq/level.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace voa::terms {

using exactq::LevelScalar;
using exactq::Rational;

/// Conformal weight in (1/2)Z, stored doubled.
struct Weight {
    int twice = 0;

    static Weight from_rational(const Rational& q);
    static Weight integer(int w) { return Weight{2 * w}; }
    static Weight parse(std::string_view text);
    Rational value() const { return Rational(twice, 2); }
    bool is_integer() const { return twice % 2 == 0; }
    /// Largest integer n with n <= weight.
    int floor() const { return twice >= 0 ? twice / 2 : -((-twice + 1) / 2); }
    int ceil() const { return -Weight{-twice}.floor(); }
    std::string str() const;

    friend Weight operator+(Weight a, Weight b) { return Weight{a.twice + b.twice}; }
    friend Weight operator-(Weight a, Weight b) { return Weight{a.twice - b.twice}; }
    friend Weight operator+(Weight a, int n) { return Weight{a.twice + 2 * n}; }
    friend Weight operator-(Weight a, int n) { return Weight{a.twice - 2 * n}; }
    friend auto operator<=>(Weight, Weight) = default;
};

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>(static_cast<int>(a) ^ static_cast<int>(b));
}

struct GeneratorDecl {
    std::string name;
    Parity parity = Parity::Even;
    Weight weight;
    int charge = 0;
};

/// Ordered generator declarations with name lookup.
class GeneratorSet {
public:
    GeneratorSet() = default;
    explicit GeneratorSet(std::vector<GeneratorDecl> decls);

    std::size_t size() const { return decls_.size(); }
    const GeneratorDecl& operator[](std::size_t i) const { return decls_[i]; }
    const std::vector<GeneratorDecl>& decls() const { return decls_; }
    std::optional<int> find(std::string_view name) const;
    /// Throws UnknownName.
    int index_of(std::string_view name) const;
    bool odd(int g) const { return decls_[static_cast<std::size_t>(g)].parity == Parity::Odd; }

private:
    std::vector<GeneratorDecl> decls_;
    std::unordered_map<std::string, int> index_;
};

class UnknownName : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// ∂^deriv of generator gen.
struct Factor {
    std::uint16_t gen = 0;
    std::uint16_t deriv = 0;
    friend bool operator==(const Factor&, const Factor&) = default;
};

/// PBW factor order: ascending generator, then descending derivative order.
inline bool factor_before(const Factor& a, const Factor& b) {
    return a.gen != b.gen ? a.gen < b.gen : a.deriv > b.deriv;
}

/// Right-nested normally ordered word; empty means the vacuum.
using Monomial = std::vector<Factor>;

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), factor_before);
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::size_t h = m.size();
        for (const auto& f : m) h = h * 1000003u ^ ((std::size_t{f.gen} << 16) | f.deriv);
        return h;
    }
};

Weight weight(const Monomial& m, const GeneratorSet& gens);
int charge(const Monomial& m, const GeneratorSet& gens);
Parity parity(const Monomial& m, const GeneratorSet& gens);
/// Sorted in PBW order with no repeated odd factor.
bool is_canonical(const Monomial& m, const GeneratorSet& gens);

/// Finite LevelScalar-linear combination of monomials; zero coefficients are never stored.
class Field {
public:
    using Map = std::map<Monomial, LevelScalar, MonomialLess>;

    Field() = default;
    static Field vacuum(const LevelScalar& c = LevelScalar(1));
    static Field generator(int gen, int deriv = 0, const LevelScalar& c = LevelScalar(1));
    static Field monomial(Monomial m, const LevelScalar& c = LevelScalar(1));

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Map::const_iterator begin() const { return terms_.begin(); }
    Map::const_iterator end() const { return terms_.end(); }
    const Map& terms() const { return terms_; }
    LevelScalar coefficient(const Monomial& m) const;

    void add(const Monomial& m, const LevelScalar& c);
    void add(Monomial&& m, const LevelScalar& c);
    /// this += c * other
    void add_scaled(const Field& other, const LevelScalar& c);

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(const LevelScalar& c);
    Field operator-() const;
    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(Field a, const LevelScalar& c) { return a *= c; }
    friend Field operator*(const LevelScalar& c, Field a) { return a *= c; }
    friend bool operator==(const Field& a, const Field& b) { return a.terms_ == b.terms_; }

    /// Applies fn to every coefficient (used for specialization at a level).
    Field map_coefficients(const std::function<LevelScalar(const LevelScalar&)>& fn) const;

private:
    Map terms_;
};

struct Grade {
    Weight weight;
    int charge = 0;
    friend auto operator<=>(const Grade&, const Grade&) = default;
};

std::map<Grade, Field> grade(const Field& f, const GeneratorSet& gens);
/// The single (weight, charge) of a nonzero homogeneous field, or nullopt.
std::optional<Grade> homogeneous_grade(const Field& f, const GeneratorSet& gens);
std::optional<Parity> homogeneous_parity(const Field& f, const GeneratorSet& gens);
bool all_canonical(const Field& f, const GeneratorSet& gens);

/// Leibniz rule across factors; output words are not re-sorted (see ope-engine derivative).
Field derivative_raw(const Field& f);

struct ParsedField {
    Field field;
    bool normalized = true;  ///< false when some word is not in PBW order
};

/// field := term (('+'|'-') term)*; term := [coef ['*']] factorExpr | coef;
/// factorExpr := 'NO(' factor (',' factor)* ')' | factor | '1'; factor := ['d' ['^' n]] name.
ParsedField parse_field(std::string_view text, const GeneratorSet& gens);
std::string print_monomial(const Monomial& m, const GeneratorSet& gens);
std::string print_field(const Field& f, const GeneratorSet& gens);
/// Coefficient formatting shared with other printers: bare for constants and k, parenthesized otherwise.
std::string coefficient_text(const LevelScalar& c);

}  // namespace voa::terms
