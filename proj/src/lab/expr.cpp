#include "voa/identity.hpp"

#include <cctype>

namespace voa::lab {

using exactq::ParseError;

namespace {

struct Value {
    bool scalar = true;
    LevelScalar s{0};
    Field f;

    static Value of(LevelScalar x) { return {true, std::move(x), {}}; }
    static Value of(Field x) { return {false, LevelScalar(0), std::move(x)}; }
    Field field() const { return scalar ? (s.is_zero() ? Field() : Field::vacuum(s)) : f; }
};

class Parser {
public:
    Parser(Evaluator& ev, std::string_view text) : ev_(ev), t_(text) {}

    Field parse() {
        Value v = expr();
        skip();
        if (pos_ != t_.size()) fail("unexpected input");
        return v.field();
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip() {
        while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < t_.size() ? t_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    std::string ident_ahead() {
        skip();
        std::size_t p = pos_;
        if (p >= t_.size() || !(std::isalpha(static_cast<unsigned char>(t_[p])) || t_[p] == '_')) return {};
        while (p < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[p])) || t_[p] == '_')) ++p;
        return std::string(t_.substr(pos_, p - pos_));
    }
    int integer() {
        skip();
        bool neg = eat('-');
        skip();
        std::size_t p = pos_;
        while (p < t_.size() && std::isdigit(static_cast<unsigned char>(t_[p]))) ++p;
        if (p == pos_) fail("expected an integer");
        int v = std::stoi(std::string(t_.substr(pos_, p - pos_)));
        pos_ = p;
        return neg ? -v : v;
    }
    bool primary_ahead() {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || std::isalpha(static_cast<unsigned char>(c)) ||
               c == '_';
    }

    static Value add(Value a, const Value& b, bool minus) {
        if (a.scalar && b.scalar) return Value::of(minus ? a.s - b.s : a.s + b.s);
        Field f = a.field();
        if (minus)
            f -= b.field();
        else
            f += b.field();
        return Value::of(std::move(f));
    }
    Value mul(const Value& a, const Value& b) {
        if (a.scalar && b.scalar) return Value::of(a.s * b.s);
        if (a.scalar) return Value::of(b.f * a.s);
        if (b.scalar) return Value::of(a.f * b.s);
        fail("product of two fields; use NO(...)");
    }

    Value expr() {
        Value acc = Value::of(LevelScalar(0));
        bool minus = false;
        if (eat('-'))
            minus = true;
        else
            eat('+');
        acc = add(acc, term(), minus);
        for (;;) {
            if (eat('+'))
                acc = add(acc, term(), false);
            else if (eat('-'))
                acc = add(acc, term(), true);
            else
                return acc;
        }
    }

    Value term() {
        Value acc = power();
        for (;;) {
            if (eat('*')) {
                acc = mul(acc, power());
            } else if (eat('/')) {
                Value d = power();
                if (!d.scalar) fail("division by a field");
                if (d.s.is_zero()) fail("division by zero");
                acc = mul(acc, Value::of(d.s.inverse()));
            } else if (primary_ahead()) {
                acc = mul(acc, power());
            } else {
                return acc;
            }
        }
    }

    Value power() {
        Value base = primary();
        if (eat('^')) {
            int e = integer();
            if (!base.scalar) fail("power of a field");
            if (e < 0) return Value::of(exactq::pow(base.s.inverse(), static_cast<unsigned>(-e)));
            return Value::of(exactq::pow(base.s, static_cast<unsigned>(e)));
        }
        return base;
    }

    Value primary() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t p = pos_;
            while (p < t_.size() && std::isdigit(static_cast<unsigned char>(t_[p]))) ++p;
            Rational r = Rational::parse(t_.substr(pos_, p - pos_));
            pos_ = p;
            return Value::of(LevelScalar(r));
        }
        if (eat('(')) {
            Value v = expr();
            expect(')');
            return v;
        }
        std::string id = ident_ahead();
        if (id.empty()) fail("expected a scalar or field");
        pos_ += id.size();
        Context& ctx = ev_.context();
        if (id == "k") return Value::of(level_scalar_k());
        if (id == "d") {
            int times = 1;
            if (eat('^')) times = integer();
            if (times < 0) fail("negative derivative order");
            Value v = power_operand();
            if (v.scalar) return Value::of(times == 0 ? v.s : LevelScalar(0));
            return Value::of(ctx.derivative(v.f, times));
        }
        if (id == "NO" && peek() == '(') {
            expect('(');
            std::vector<Field> parts{expr().field()};
            while (eat(',')) parts.push_back(expr().field());
            expect(')');
            if (parts.size() < 2) fail("NO needs at least two arguments");
            Field acc = parts.back();
            for (std::size_t i = parts.size() - 1; i-- > 0;) acc = ctx.normal_order(parts[i], acc);
            return Value::of(std::move(acc));
        }
        if (id == "nth" && peek() == '(') {
            expect('(');
            Field a = expr().field();
            expect(',');
            Field b = expr().field();
            expect(',');
            int n = integer();
            expect(')');
            return Value::of(ctx.nth_product(a, b, n));
        }
        std::vector<int> idx;
        if (eat('[')) {
            idx.push_back(integer());
            while (eat(',')) idx.push_back(integer());
            expect(']');
        }
        return Value::of(ev_.named(id, idx));
    }

    /// Operand of d: a primary, so "d J + x" differentiates J only.
    Value power_operand() { return primary(); }

    LevelScalar level_scalar_k();

    Evaluator& ev_;
    std::string_view t_;
    std::size_t pos_ = 0;

public:
    std::optional<Rational> level;
};

LevelScalar Parser::level_scalar_k() { return level ? LevelScalar(*level) : LevelScalar::k(); }

}  // namespace

Field Evaluator::eval(std::string_view text) {
    Parser p(*this, text);
    p.level = level_;
    return p.parse();
}

Field Evaluator::named(const std::string& name, const std::vector<int>& idx) {
    const auto& gens = ctx_.gens();
    auto gen = [&](const char* n, int d) {
        auto g = gens.find(n);
        if (!g) throw UnknownField(std::string("algebra has no generator ") + n + " needed by " + name);
        return Field::generator(*g, d);
    };
    auto no = [&](Field a, const Field& b) { return ctx_.normal_order(a, b); };
    auto need = [&](std::size_t n) {
        if (idx.size() != n) throw UnknownField(name + " takes " + std::to_string(n) + " indices");
        for (int i : idx)
            if (i < 0) throw UnknownField(name + " needs nonnegative indices");
    };

    if (idx.empty()) {
        if (auto g = gens.find(name)) return Field::generator(*g);
        if (auto it = defs_.find(name); it != defs_.end()) return it->second;
        if (name == "H") return gen("J", 0);
        throw UnknownField("unknown name " + name);
    }
    if (auto it = defs_.find(name); it != defs_.end())
        throw UnknownField(name + " is a plain definition and takes no indices");
    if (name == "U" || name == "V" || name == "A" || name == "B") {
        need(2);
        static const std::map<std::string, std::pair<const char*, const char*>> pairs{
            {"U", {"Jp", "Jm"}}, {"V", {"Gp", "Gm"}}, {"A", {"Jp", "Gm"}}, {"B", {"Jm", "Gp"}}};
        const auto& [l, r] = pairs.at(name);
        return no(gen(l, idx[0]), gen(r, idx[1]));
    }
    if (name == "w" || name == "m" || name == "p") {
        need(1);
        int j = idx[0];
        if (name == "w") return no(gen("Gp", 0), gen("Gm", j)) + no(gen("Qp", 0), gen("Qm", j));
        if (name == "m") return no(gen("Gp", 0), gen("Qp", j)) + no(gen("Gp", j), gen("Qp", 0));
        return no(gen("Gm", 0), gen("Qm", j)) + no(gen("Gm", j), gen("Qm", 0));
    }
    if (name.size() == 7 && name.compare(0, 5, "Sigma") == 0 && std::isdigit(static_cast<unsigned char>(name[5])) &&
        (name[6] == 'p' || name[6] == 'm')) {
        int odd = name[5] - '0';
        int N = static_cast<int>(idx.size());
        if (odd > N) throw UnknownField(name + " needs at least " + std::to_string(odd) + " indices");
        need(idx.size());
        bool plus = name[6] == 'p';
        std::vector<Field> fs;
        for (int i = 0; i < N; ++i) {
            bool isG = i >= N - odd;
            fs.push_back(gen(isG ? (plus ? "Gp" : "Gm") : (plus ? "Jp" : "Jm"), idx[static_cast<std::size_t>(i)]));
        }
        Field acc = fs.back();
        for (std::size_t i = fs.size() - 1; i-- > 0;) acc = no(fs[i], acc);
        return acc;
    }
    throw UnknownField("unknown indexed name " + name);
}

IdentityResult verify_identity(Evaluator& ev, std::string_view expr) {
    IdentityResult r;
    r.residual = ev.eval(expr);
    r.pass = r.residual.is_zero();
    return r;
}

IdentityResult verify_identity(Context& ctx, std::string_view expr) {
    Evaluator ev(ctx);
    return verify_identity(ev, expr);
}

std::vector<std::string> residual_terms(const Field& f, const GeneratorSet& gens, std::size_t limit) {
    std::vector<std::string> out;
    for (const auto& [m, c] : f) {
        if (out.size() >= limit) break;
        out.push_back(terms::print_field(Field::monomial(m, c), gens));
    }
    return out;
}

}  // namespace voa::lab
