#include "voa/terms.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace voa::terms {

using exactq::ParseError;

// ------------------------------------------------------------------ Weight

Weight Weight::from_rational(const Rational& q) {
    Rational t = q * Rational(2);
    if (!t.is_integer()) throw std::invalid_argument("weight " + q.str() + " is not in (1/2)Z");
    return Weight{static_cast<int>(t.to_long())};
}

Weight Weight::parse(std::string_view text) { return from_rational(Rational::parse(text)); }

std::string Weight::str() const {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

// ----------------------------------------------------------- GeneratorSet

GeneratorSet::GeneratorSet(std::vector<GeneratorDecl> decls) : decls_(std::move(decls)) {
    for (std::size_t i = 0; i < decls_.size(); ++i) {
        const auto& d = decls_[i];
        if (d.name.empty() || d.name == "d" || d.name == "k" || d.name == "NO")
            throw std::invalid_argument("reserved or empty generator name '" + d.name + "'");
        if (d.weight.twice <= 0)
            throw std::invalid_argument("generator '" + d.name + "' must have positive weight");
        if (!index_.emplace(d.name, static_cast<int>(i)).second)
            throw std::invalid_argument("duplicate generator name '" + d.name + "'");
    }
}

std::optional<int> GeneratorSet::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int GeneratorSet::index_of(std::string_view name) const {
    auto i = find(name);
    if (!i) throw UnknownName("unknown generator '" + std::string(name) + "'");
    return *i;
}

// ---------------------------------------------------------------- monomials

Weight weight(const Monomial& m, const GeneratorSet& gens) {
    Weight w;
    for (const auto& f : m) w = w + gens[f.gen].weight + static_cast<int>(f.deriv);
    return w;
}

int charge(const Monomial& m, const GeneratorSet& gens) {
    int c = 0;
    for (const auto& f : m) c += gens[f.gen].charge;
    return c;
}

Parity parity(const Monomial& m, const GeneratorSet& gens) {
    Parity p = Parity::Even;
    for (const auto& f : m) p = p + gens[f.gen].parity;
    return p;
}

bool is_canonical(const Monomial& m, const GeneratorSet& gens) {
    for (std::size_t i = 0; i + 1 < m.size(); ++i) {
        if (factor_before(m[i + 1], m[i])) return false;
        if (m[i] == m[i + 1] && gens.odd(m[i].gen)) return false;
    }
    return true;
}

// -------------------------------------------------------------------- Field

Field Field::vacuum(const LevelScalar& c) { return monomial({}, c); }

Field Field::generator(int gen, int deriv, const LevelScalar& c) {
    return monomial(Monomial{Factor{static_cast<std::uint16_t>(gen), static_cast<std::uint16_t>(deriv)}}, c);
}

Field Field::monomial(Monomial m, const LevelScalar& c) {
    Field f;
    f.add(std::move(m), c);
    return f;
}

LevelScalar Field::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? LevelScalar() : it->second;
}

void Field::add(const Monomial& m, const LevelScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Field::add(Monomial&& m, const LevelScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Field::add_scaled(const Field& other, const LevelScalar& c) {
    if (c.is_zero()) return;
    if (c.is_one()) {
        *this += other;
        return;
    }
    for (const auto& [m, v] : other.terms_) add(m, v * c);
}

Field& Field::operator+=(const Field& o) {
    for (const auto& [m, v] : o.terms_) add(m, v);
    return *this;
}

Field& Field::operator-=(const Field& o) {
    for (const auto& [m, v] : o.terms_) add(m, -v);
    return *this;
}

Field& Field::operator*=(const LevelScalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    if (c.is_one()) return *this;
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Field Field::operator-() const {
    Field r = *this;
    for (auto& [m, v] : r.terms_) v = -v;
    return r;
}

Field Field::map_coefficients(const std::function<LevelScalar(const LevelScalar&)>& fn) const {
    Field r;
    for (const auto& [m, v] : terms_) r.add(m, fn(v));
    return r;
}

std::map<Grade, Field> grade(const Field& f, const GeneratorSet& gens) {
    std::map<Grade, Field> out;
    for (const auto& [m, v] : f) out[Grade{weight(m, gens), charge(m, gens)}].add(m, v);
    return out;
}

std::optional<Grade> homogeneous_grade(const Field& f, const GeneratorSet& gens) {
    auto g = grade(f, gens);
    if (g.size() != 1) return std::nullopt;
    return g.begin()->first;
}

std::optional<Parity> homogeneous_parity(const Field& f, const GeneratorSet& gens) {
    std::optional<Parity> p;
    for (const auto& [m, v] : f) {
        Parity q = parity(m, gens);
        if (p && *p != q) return std::nullopt;
        p = q;
    }
    return p;
}

bool all_canonical(const Field& f, const GeneratorSet& gens) {
    return std::all_of(f.begin(), f.end(), [&](const auto& t) { return is_canonical(t.first, gens); });
}

Field derivative_raw(const Field& f) {
    Field r;
    for (const auto& [m, v] : f) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            Monomial w = m;
            ++w[i].deriv;
            r.add(std::move(w), v);
        }
    }
    return r;
}

// ----------------------------------------------------------------- printing

std::string coefficient_text(const LevelScalar& c) {
    std::string s = c.str();
    if (c.is_constant()) return s;
    if (c.is_polynomial() && c.numerator().term_count() == 1 && c.numerator().leading().is_one()) return s;
    if (!c.is_polynomial()) return s;
    return "(" + s + ")";
}

namespace {

std::string factor_text(const Factor& f, const GeneratorSet& gens) {
    std::string s;
    if (f.deriv == 1) s = "d ";
    else if (f.deriv > 1) s = "d^" + std::to_string(f.deriv) + " ";
    return s + gens[f.gen].name;
}

}  // namespace

std::string print_monomial(const Monomial& m, const GeneratorSet& gens) {
    if (m.empty()) return "1";
    if (m.size() == 1) return factor_text(m[0], gens);
    std::string s = "NO(";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ", ";
        s += factor_text(m[i], gens);
    }
    return s + ")";
}

std::string print_field(const Field& f, const GeneratorSet& gens) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : f) {
        bool neg = c.leading_sign() < 0;
        LevelScalar a = neg ? -c : c;
        if (first) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        first = false;
        if (m.empty()) {
            out += coefficient_text(a);
            continue;
        }
        if (!a.is_one()) out += coefficient_text(a) + " ";
        out += print_monomial(m, gens);
    }
    return out;
}

// ------------------------------------------------------------------ parsing

namespace {

class FieldParser {
public:
    FieldParser(std::string_view t, const GeneratorSet& g) : text(t), gens(g) {}

    ParsedField run() {
        ParsedField out;
        skip();
        if (pos == text.size()) throw ParseError("empty field expression", pos);
        bool first = true;
        while (true) {
            skip();
            if (pos == text.size()) break;
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos;
            } else if (!first) {
                throw ParseError("expected '+' or '-'", pos);
            }
            first = false;
            auto [m, c] = term();
            if (sign < 0) c = -c;
            if (!is_canonical(m, gens)) out.normalized = false;
            out.field.add(std::move(m), c);
        }
        return out;
    }

private:
    std::string_view text;
    const GeneratorSet& gens;
    std::size_t pos = 0;

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }
    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    std::string identifier() {
        skip();
        std::size_t start = pos;
        if (!ident_start(peek())) throw ParseError("expected identifier", pos);
        while (ident_char(peek())) ++pos;
        return std::string(text.substr(start, pos - start));
    }

    bool factor_ahead() {
        skip();
        return ident_start(peek()) && !(peek() == 'k' && !ident_char(pos + 1 < text.size() ? text[pos + 1] : '\0'));
    }

    std::pair<Monomial, LevelScalar> term() {
        skip();
        LevelScalar coef(1);
        bool haveCoef = false;
        if (exactq::scalar_atom_ahead(text, pos)) {
            std::size_t save = pos;
            coef = exactq::parse_scalar_term_prefix(text, pos);
            haveCoef = true;
            (void)save;
            skip();
            if (peek() == '*') {
                ++pos;
                skip();
            }
        }
        skip();
        if (!factor_ahead()) {
            if (!haveCoef) throw ParseError("expected term", pos);
            // a bare coefficient, or a coefficient followed by the vacuum literal 1
            return {Monomial{}, coef};
        }
        return {factor_expr(), coef};
    }

    Monomial factor_expr() {
        skip();
        std::size_t save = pos;
        std::string id = identifier();
        if (id == "NO") {
            skip();
            if (peek() != '(') throw ParseError("expected '(' after NO", pos);
            ++pos;
            Monomial m;
            while (true) {
                m.push_back(factor());
                skip();
                if (peek() == ',') {
                    ++pos;
                    continue;
                }
                if (peek() == ')') {
                    ++pos;
                    break;
                }
                throw ParseError("expected ',' or ')' in NO(...)", pos);
            }
            return m;
        }
        pos = save;
        return Monomial{factor()};
    }

    Factor factor() {
        skip();
        std::size_t start = pos;
        std::string id = identifier();
        int deriv = 0;
        if (id == "d") {
            deriv = 1;
            skip();
            if (peek() == '^') {
                ++pos;
                skip();
                if (peek() == '-') throw ParseError("negative derivative order", pos);
                std::size_t s = pos;
                while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
                if (s == pos) throw ParseError("expected derivative order", pos);
                deriv = std::stoi(std::string(text.substr(s, pos - s)));
            }
            start = pos;
            id = identifier();
        }
        auto g = gens.find(id);
        if (!g) throw UnknownName("unknown generator '" + id + "' at position " + std::to_string(start));
        return Factor{static_cast<std::uint16_t>(*g), static_cast<std::uint16_t>(deriv)};
    }
};

}  // namespace

ParsedField parse_field(std::string_view text, const GeneratorSet& gens) {
    return FieldParser(text, gens).run();
}

}  // namespace voa::terms
