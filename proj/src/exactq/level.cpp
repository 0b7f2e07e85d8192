#include "voa/exactq/level.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <ostream>
#include <set>

namespace voa::exactq {

// ---------------------------------------------------------------- LevelPoly

LevelPoly::LevelPoly(const Rational& c) {
    if (!c.is_zero()) c_.push_back(c);
}

LevelPoly::LevelPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

LevelPoly LevelPoly::k() { return monomial(Rational(1), 1); }

LevelPoly LevelPoly::monomial(const Rational& c, int degree) {
    LevelPoly p;
    if (c.is_zero()) return p;
    p.c_.assign(static_cast<std::size_t>(degree) + 1, Rational(0));
    p.c_.back() = c;
    return p;
}

void LevelPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational LevelPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
    return c_[static_cast<std::size_t>(i)];
}

const Rational& LevelPoly::leading() const {
    static const Rational zero(0);
    return c_.empty() ? zero : c_.back();
}

Rational LevelPoly::evaluate(const Rational& q) const {
    mpq_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= q.value();
        acc += it->value();
    }
    return Rational(acc);
}

LevelPoly LevelPoly::derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
    return LevelPoly(std::move(d));
}

LevelPoly LevelPoly::monic() const {
    if (is_zero() || leading().is_one()) return *this;
    LevelPoly r = *this;
    Rational inv = Rational(1) / leading();
    for (auto& c : r.c_) c *= inv;
    return r;
}

LevelPoly LevelPoly::primitive() const {
    if (is_zero()) return *this;
    mpz_class l = 1;
    for (const auto& c : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.value().get_den_mpz_t());
    std::vector<mpz_class> ints;
    mpz_class g = 0;
    for (const auto& c : c_) {
        mpz_class v = c.value().get_num() * (l / c.value().get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        ints.push_back(v);
    }
    if (sgn(ints.back()) < 0) g = -g;
    std::vector<Rational> out;
    for (auto& v : ints) out.emplace_back(mpz_class(v / g), mpz_class(1));
    return LevelPoly(std::move(out));
}

LevelPoly LevelPoly::operator-() const {
    LevelPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

LevelPoly& LevelPoly::operator+=(const LevelPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

LevelPoly& LevelPoly::operator-=(const LevelPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

LevelPoly& LevelPoly::operator*=(const Rational& s) {
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
}

LevelPoly operator*(const LevelPoly& a, const LevelPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.c_.size() == 1) return b * a.c_[0];
    if (b.c_.size() == 1) return a * b.c_[0];
    std::vector<mpq_class> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i].value() * b.c_[j].value();
    }
    std::vector<Rational> out;
    out.reserve(r.size());
    for (auto& v : r) out.emplace_back(std::move(v));
    return LevelPoly(std::move(out));
}

std::size_t LevelPoly::term_count() const {
    return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](const Rational& c) { return !c.is_zero(); }));
}

std::string LevelPoly::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int d = degree(); d >= 0; --d) {
        const Rational& c = c_[static_cast<std::size_t>(d)];
        if (c.is_zero()) continue;
        bool neg = c.sign() < 0;
        Rational a = neg ? -c : c;
        if (neg) out += "-";
        else if (!out.empty()) out += "+";
        if (d == 0) {
            out += a.str();
            continue;
        }
        if (!a.is_one()) out += a.str() + "*";
        out += "k";
        if (d > 1) out += "^" + std::to_string(d);
    }
    return out;
}

std::size_t LevelPoly::hash() const {
    std::size_t h = c_.size();
    for (const auto& c : c_) h ^= c.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::pair<LevelPoly, LevelPoly> divmod(const LevelPoly& a, const LevelPoly& b) {
    if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
    if (a.degree() < b.degree()) return {LevelPoly(), a};
    std::vector<mpq_class> r;
    for (const auto& c : a.coefficients()) r.push_back(c.value());
    const auto& bc = b.coefficients();
    int db = b.degree();
    mpq_class lead = b.leading().value();
    std::vector<mpq_class> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
    for (int i = a.degree(); i >= db; --i) {
        mpq_class f = r[static_cast<std::size_t>(i)] / lead;
        if (f == 0) continue;
        q[static_cast<std::size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * bc[static_cast<std::size_t>(j)].value();
    }
    std::vector<Rational> qv, rv;
    for (auto& v : q) qv.emplace_back(std::move(v));
    r.resize(static_cast<std::size_t>(db));
    for (auto& v : r) rv.emplace_back(std::move(v));
    return {LevelPoly(std::move(qv)), LevelPoly(std::move(rv))};
}

LevelPoly gcd(const LevelPoly& a, const LevelPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return LevelPoly(1);
    LevelPoly x = a.primitive(), y = b.primitive();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        LevelPoly r = divmod(x, y).second;
        x = std::move(y);
        y = r.is_zero() ? r : r.primitive();
    }
    return x.monic();
}

// ------------------------------------------------------------ rational roots

namespace {

mpz_class pollard_rho(const mpz_class& n) {
    if (n % 2 == 0) return 2;
    for (unsigned long c = 1; c < 50; ++c) {
        mpz_class x = 2, y = 2, d = 1;
        auto f = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            mpz_class diff = abs(x - y);
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n) return d;
    }
    return n;
}

void factor_into(mpz_class n, std::vector<mpz_class>& primes) {
    if (n <= 1) return;
    for (unsigned long p = 2; p < 100000 && mpz_class(p) * p <= n; ++p) {
        while (n % p == 0) {
            primes.emplace_back(p);
            n /= p;
        }
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
        primes.push_back(n);
        return;
    }
    mpz_class d = pollard_rho(n);
    if (d == n) {
        primes.push_back(n);
        return;
    }
    factor_into(d, primes);
    factor_into(n / d, primes);
}

std::vector<mpz_class> divisors(const mpz_class& n) {
    std::vector<mpz_class> primes;
    factor_into(abs(n), primes);
    std::sort(primes.begin(), primes.end());
    std::vector<mpz_class> divs{1};
    std::size_t i = 0;
    while (i < primes.size()) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        std::size_t base = divs.size();
        mpz_class pk = 1;
        for (std::size_t e = i; e < j; ++e) {
            pk *= primes[i];
            for (std::size_t t = 0; t < base; ++t) divs.push_back(divs[t] * pk);
        }
        i = j;
    }
    return divs;
}

}  // namespace

RootReport rational_roots(const LevelPoly& p) {
    if (p.is_zero()) throw ArithmeticError("zero polynomial: every level is a root");
    RootReport rep;
    LevelPoly rest = p.primitive();
    LevelPoly lin = LevelPoly(std::vector<Rational>{Rational(0), Rational(1)});
    while (!rest.is_constant() && rest.constant_term().is_zero()) {
        rep.roots.emplace_back(0);
        rest = divmod(rest, lin).first;
    }
    if (!rest.is_constant()) {
        auto ps = divisors(rest.constant_term().numerator());
        auto qs = divisors(rest.leading().numerator());
        std::set<Rational> candidates;
        for (const auto& a : ps)
            for (const auto& b : qs) {
                candidates.insert(Rational(a, b));
                candidates.insert(Rational(mpz_class(-a), b));
            }
        for (const auto& r : candidates) {
            while (!rest.is_constant() && rest.evaluate(r).is_zero()) {
                rep.roots.push_back(r);
                rest = divmod(rest, LevelPoly(std::vector<Rational>{-r, Rational(1)})).first;
            }
        }
    }
    std::sort(rep.roots.begin(), rep.roots.end());
    if (rest.is_constant()) return rep;
    // Square-free decomposition of what is left (Yun).
    LevelPoly f = rest.monic();
    LevelPoly a = gcd(f, f.derivative());
    LevelPoly b = divmod(f, a).first;
    LevelPoly c = divmod(f.derivative(), a).first;
    LevelPoly d = c - b.derivative();
    while (!b.is_constant()) {
        LevelPoly g = gcd(b, d);
        if (!g.is_constant()) rep.residual.push_back(g.primitive());
        b = divmod(b, g).first;
        c = divmod(d, g).first;
        d = c - b.derivative();
    }
    return rep;
}

// -------------------------------------------------------------- LevelScalar

LevelScalar LevelScalar::normalize(const LevelPoly& num, const LevelPoly& den) {
    if (den.is_zero()) throw ArithmeticError("division by zero");
    if (num.is_zero()) return {};
    if (den.is_constant()) return LevelScalar(num * (Rational(1) / den.leading()), LevelPoly(1), true);
    LevelPoly g = gcd(num, den);
    LevelPoly n = num, d = den;
    if (!g.is_one()) {
        n = divmod(num, g).first;
        d = divmod(den, g).first;
    }
    Rational inv = Rational(1) / d.leading();
    return LevelScalar(n * inv, d * inv, true);
}

Rational LevelScalar::constant() const {
    if (!is_constant()) throw ArithmeticError("scalar " + str() + " depends on k");
    return num_.coeff(0);
}

int LevelScalar::complexity() const { return std::max(num_.degree(), 0) + den_.degree(); }

int LevelScalar::leading_sign() const { return num_.leading().sign(); }

Rational LevelScalar::evaluate_at(const Rational& q) const {
    Rational d = den_.evaluate(q);
    if (d.is_zero()) {
        // Name the linear factor responsible when possible.
        std::string factor = "(" + den_.str() + ")";
        LevelPoly lin(std::vector<Rational>{-q, Rational(1)});
        if (den_.degree() > 1) factor = "(" + lin.str() + ")";
        throw PoleError("pole at k = " + q.str() + ": denominator factor " + factor + " vanishes");
    }
    return num_.evaluate(q) / d;
}

LevelScalar LevelScalar::operator-() const { return LevelScalar(-num_, den_, true); }

LevelScalar& LevelScalar::operator+=(const LevelScalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_.is_one() && o.den_.is_one()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) return *this = normalize(num_ + o.num_, den_);
    return *this = normalize(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

LevelScalar& LevelScalar::operator-=(const LevelScalar& o) { return *this += -o; }

LevelScalar& LevelScalar::operator*=(const LevelScalar& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = LevelScalar();
    if (den_.is_one() && o.den_.is_one()) {
        num_ = num_ * o.num_;
        return *this;
    }
    LevelPoly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
    LevelPoly n1 = g1.is_one() ? num_ : divmod(num_, g1).first;
    LevelPoly d2 = g1.is_one() ? o.den_ : divmod(o.den_, g1).first;
    LevelPoly n2 = g2.is_one() ? o.num_ : divmod(o.num_, g2).first;
    LevelPoly d1 = g2.is_one() ? den_ : divmod(den_, g2).first;
    LevelPoly d = d1 * d2;
    Rational inv = Rational(1) / d.leading();
    num_ = (n1 * n2) * inv;
    den_ = d * inv;
    return *this;
}

LevelScalar LevelScalar::inverse() const {
    if (is_zero()) throw ArithmeticError("division by zero");
    Rational inv = Rational(1) / num_.leading();
    return LevelScalar(den_ * inv, num_ * inv, true);
}

LevelScalar& LevelScalar::operator/=(const LevelScalar& o) { return *this *= o.inverse(); }

std::string LevelScalar::str() const {
    if (den_.is_one()) return num_.str();
    std::string n = num_.str();
    if (num_.term_count() > 1) n = "(" + n + ")";
    std::string d = den_.str();
    if (den_.term_count() > 1) d = "(" + d + ")";
    return n + "/" + d;
}

std::size_t LevelScalar::hash() const { return num_.hash() * 31 + den_.hash(); }

LevelScalar pow(const LevelScalar& s, unsigned exponent) {
    LevelScalar r(1);
    for (unsigned i = 0; i < exponent; ++i) r *= s;
    return r;
}

// ------------------------------------------------------------------ parsing

namespace {

class ScalarParser {
public:
    ScalarParser(std::string_view t, std::size_t p) : text(t), pos(p) {}

    LevelScalar expr() {
        skip();
        LevelScalar acc;
        bool first = true;
        while (true) {
            skip();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                // a sign is only part of this scalar if an atom follows
                std::size_t save = pos;
                sign = peek() == '-' ? -1 : 1;
                ++pos;
                skip();
                if (!scalar_atom_ahead(text, pos) && peek() != '-' && peek() != '+') {
                    pos = save;
                    break;
                }
            } else if (!first) {
                break;
            }
            LevelScalar t = term();
            acc += sign < 0 ? -t : t;
            first = false;
        }
        return acc;
    }

    std::string_view text;
    std::size_t pos;

    LevelScalar term() {
        LevelScalar acc = unary();
        while (true) {
            skip();
            char c = peek();
            if (c != '*' && c != '/') break;
            std::size_t save = pos;
            ++pos;
            skip();
            if (!scalar_atom_ahead(text, pos) && peek() != '-') {
                pos = save;
                break;
            }
            LevelScalar rhs = unary();
            if (c == '*') acc *= rhs;
            else {
                if (rhs.is_zero()) throw ParseError("division by zero", save);
                acc /= rhs;
            }
        }
        return acc;
    }

private:
    char peek() const { return pos < text.size() ? text[pos] : '\0'; }
    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    LevelScalar unary() {
        skip();
        if (peek() == '-') {
            ++pos;
            return -unary();
        }
        if (peek() == '+') {
            ++pos;
            return unary();
        }
        return power();
    }

    LevelScalar power() {
        LevelScalar base = atom();
        skip();
        if (peek() == '^') {
            ++pos;
            skip();
            std::size_t start = pos;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
            if (start == pos) throw ParseError("expected nonnegative integer exponent", pos);
            unsigned e = static_cast<unsigned>(std::stoul(std::string(text.substr(start, pos - start))));
            return exactq::pow(base, e);
        }
        return base;
    }

    LevelScalar atom() {
        skip();
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
            return LevelScalar(Rational(mpz_class(std::string(text.substr(start, pos - start)), 10), mpz_class(1)));
        }
        if (c == 'k' && !ident_char(pos + 1)) {
            ++pos;
            return LevelScalar::k();
        }
        if (c == '(') {
            std::size_t open = pos;
            ++pos;
            LevelScalar v = expr();
            skip();
            if (peek() != ')') throw ParseError("expected ')' to close '(' opened at " + std::to_string(open), pos);
            ++pos;
            return v;
        }
        throw ParseError(c == '\0' ? std::string("unexpected end of scalar") : std::string("unexpected character '") + c + "' in scalar", pos);
    }

    bool ident_char(std::size_t i) const {
        return i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_');
    }
};

}  // namespace

bool scalar_atom_ahead(std::string_view text, std::size_t pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) return false;
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '(') return true;
    if (c == 'k') {
        std::size_t n = pos + 1;
        return !(n < text.size() && (std::isalnum(static_cast<unsigned char>(text[n])) || text[n] == '_'));
    }
    return false;
}

LevelScalar parse_scalar_term_prefix(std::string_view text, std::size_t& pos) {
    ScalarParser p(text, pos);
    LevelScalar v = p.term();
    pos = p.pos;
    return v;
}

LevelScalar parse_scalar(std::string_view text) {
    ScalarParser p(text, 0);
    LevelScalar v = p.expr();
    std::size_t pos = p.pos;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw ParseError("trailing input in scalar", pos);
    return v;
}

std::ostream& operator<<(std::ostream& os, const LevelPoly& p) { return os << p.str(); }
std::ostream& operator<<(std::ostream& os, const LevelScalar& s) { return os << s.str(); }

}  // namespace voa::exactq
