#pragma once

#include "voa/exactq/rational.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace voa::exactq {

/// Univariate polynomial in the level k with rational coefficients (ascending degree).
class LevelPoly {
public:
    LevelPoly() = default;
    LevelPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
    LevelPoly(long c) : LevelPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    explicit LevelPoly(std::vector<Rational> coeffs);

    static LevelPoly k();
    static LevelPoly monomial(const Rational& c, int degree);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    const std::vector<Rational>& coefficients() const { return c_; }
    Rational coeff(int i) const;
    const Rational& leading() const;
    Rational constant_term() const { return coeff(0); }

    Rational evaluate(const Rational& q) const;
    LevelPoly derivative() const;
    LevelPoly monic() const;
    /// Integer coefficients with gcd 1 and positive leading coefficient.
    LevelPoly primitive() const;

    LevelPoly operator-() const;
    LevelPoly& operator+=(const LevelPoly& o);
    LevelPoly& operator-=(const LevelPoly& o);
    LevelPoly& operator*=(const Rational& s);
    friend LevelPoly operator+(LevelPoly a, const LevelPoly& b) { return a += b; }
    friend LevelPoly operator-(LevelPoly a, const LevelPoly& b) { return a -= b; }
    friend LevelPoly operator*(const LevelPoly& a, const LevelPoly& b);
    friend LevelPoly operator*(LevelPoly a, const Rational& s) { return a *= s; }

    friend bool operator==(const LevelPoly& a, const LevelPoly& b) { return a.c_ == b.c_; }

    /// Compact form such as "6*k^2+9*k"; "0" for zero.
    std::string str() const;
    std::size_t hash() const;
    std::size_t term_count() const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Quotient and remainder; throws on division by zero.
std::pair<LevelPoly, LevelPoly> divmod(const LevelPoly& a, const LevelPoly& b);
/// Monic gcd (zero only if both inputs are zero).
LevelPoly gcd(const LevelPoly& a, const LevelPoly& b);

struct RootReport {
    std::vector<Rational> roots;       ///< sorted, with multiplicity
    std::vector<LevelPoly> residual;   ///< primitive factors of degree >= 2 without rational roots
};

RootReport rational_roots(const LevelPoly& p);

class PoleError : public ArithmeticError {
public:
    using ArithmeticError::ArithmeticError;
};

/// Element of Q(k) in canonical form: reduced, monic denominator.
class LevelScalar {
public:
    LevelScalar() : den_(1) {}
    LevelScalar(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
    LevelScalar(long c) : LevelScalar(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    LevelScalar(LevelPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)

    /// Canonicalizes num/den; throws ArithmeticError when den is zero.
    static LevelScalar normalize(const LevelPoly& num, const LevelPoly& den);
    static LevelScalar k() { return LevelScalar(LevelPoly::k()); }

    const LevelPoly& numerator() const { return num_; }
    const LevelPoly& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_one() && num_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_one(); }
    /// Requires is_constant().
    Rational constant() const;
    /// Degree of numerator plus degree of denominator; pivot heuristic.
    int complexity() const;
    /// Sign of the numerator's leading coefficient.
    int leading_sign() const;

    /// Throws PoleError naming the vanishing denominator factor.
    Rational evaluate_at(const Rational& q) const;

    LevelScalar operator-() const;
    LevelScalar& operator+=(const LevelScalar& o);
    LevelScalar& operator-=(const LevelScalar& o);
    LevelScalar& operator*=(const LevelScalar& o);
    LevelScalar& operator/=(const LevelScalar& o);
    LevelScalar inverse() const;
    friend LevelScalar operator+(LevelScalar a, const LevelScalar& b) { return a += b; }
    friend LevelScalar operator-(LevelScalar a, const LevelScalar& b) { return a -= b; }
    friend LevelScalar operator*(LevelScalar a, const LevelScalar& b) { return a *= b; }
    friend LevelScalar operator/(LevelScalar a, const LevelScalar& b) { return a /= b; }
    friend bool operator==(const LevelScalar& a, const LevelScalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    /// Parseable text, e.g. "(2*k+3)/(k+2)", "-5/2", "k".
    std::string str() const;
    std::size_t hash() const;

private:
    LevelScalar(LevelPoly n, LevelPoly d, bool) : num_(std::move(n)), den_(std::move(d)) {}
    LevelPoly num_;
    LevelPoly den_;
};

LevelScalar pow(const LevelScalar& s, unsigned exponent);

/// Parses the scalar syntax: rationals, k, + - * / ^, parentheses.
LevelScalar parse_scalar(std::string_view text);

/// Parses one multiplicative scalar term (no top-level + or -) starting at pos.
/// Used for field coefficients; stops before tokens that cannot continue a scalar.
LevelScalar parse_scalar_term_prefix(std::string_view text, std::size_t& pos);

/// True when text at pos starts a scalar atom (digit, k, or an opening parenthesis).
bool scalar_atom_ahead(std::string_view text, std::size_t pos);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

std::ostream& operator<<(std::ostream& os, const LevelPoly& p);
std::ostream& operator<<(std::ostream& os, const LevelScalar& s);

}  // namespace voa::exactq
