#include "voa/exactq/rational.hpp"

#include <cctype>
#include <functional>
#include <ostream>

namespace voa::exactq {

Rational::Rational(long n, long d) {
    if (d == 0) throw ArithmeticError("division by zero");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw ArithmeticError("division by zero");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    auto slash = s.find('/');
    auto digits = [&](std::size_t a, std::size_t b) {
        if (a >= b) return false;
        for (std::size_t i = a; i < b; ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    std::size_t numEnd = slash == std::string::npos ? s.size() : slash;
    if (!digits(start, numEnd) ||
        (slash != std::string::npos && !digits(slash + 1, s.size())))
        throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    mpz_class num(s.substr(start, numEnd - start), 10);
    if (s[0] == '-') num = -num;
    mpz_class den = 1;
    if (slash != std::string::npos) den = mpz_class(s.substr(slash + 1), 10);
    return Rational(num, den);
}

long Rational::to_long() const {
    if (!is_integer() || !v_.get_num().fits_slong_p())
        throw ArithmeticError("rational " + str() + " is not a machine integer");
    return v_.get_num().get_si();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw ArithmeticError("division by zero");
    v_ /= o.v_;
    return *this;
}

std::size_t Rational::hash() const {
    std::size_t h = 0;
    auto mix = [&h](const mpz_class& z) {
        const mpz_srcptr p = z.get_mpz_t();
        std::size_t n = mpz_size(p);
        h ^= std::hash<long>{}(static_cast<long>(mpz_sgn(p))) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        for (std::size_t i = 0; i < n; ++i)
            h ^= std::hash<mp_limb_t>{}(mpz_getlimbn(p, i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    mix(v_.get_num());
    mix(v_.get_den());
    return h;
}

Rational pow(const Rational& base, unsigned exponent) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.value().get_num_mpz_t(), exponent);
    mpz_pow_ui(d.get_mpz_t(), base.value().get_den_mpz_t(), exponent);
    return Rational(n, d);
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational binomial(long m, long j) {
    if (j < 0) return Rational(0);
    mpq_class r = 1;
    for (long i = 0; i < j; ++i) {
        r *= (m - i);
        r /= (i + 1);
    }
    return Rational(r);
}

Rational factorial(long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(r, 1);
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

}  // namespace voa::exactq
