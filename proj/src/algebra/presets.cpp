#include "voa/algebra_lib.hpp"

#include <json.hpp>

#include <cctype>

namespace voa::algebra {

using nlohmann::json;

namespace {

struct Builder {
    json doc;

    explicit Builder(const std::string& name) {
        doc["name"] = name;
        doc["parameters"] = json::array({"k"});
        doc["generators"] = json::array();
        doc["conformal"] = nullptr;
        doc["opes"] = json::array();
    }
    Builder& gen(const std::string& n, bool odd, const std::string& w, int charge = 0) {
        doc["generators"].push_back({{"name", n}, {"parity", odd ? "odd" : "even"}, {"weight", w}, {"charge", charge}});
        return *this;
    }
    Builder& ope(const std::string& l, const std::string& r, json poles) {
        doc["opes"].push_back({{"left", l}, {"right", r}, {"poles", std::move(poles)}});
        return *this;
    }
    Builder& conformal(const std::string& n) {
        doc["conformal"] = n;
        return *this;
    }
};

void add_sl2(Builder& b) {
    b.gen("J", false, "1").gen("Jp", false, "1", 1).gen("Jm", false, "1", -1);
    b.ope("J", "J", {{"2", "2*k"}});
    b.ope("J", "Jp", {{"1", "2 Jp"}});
    b.ope("J", "Jm", {{"1", "-2 Jm"}});
    b.ope("Jp", "Jm", {{"2", "k"}, {"1", "J"}});
    b.ope("Jp", "Jp", json::object());
    b.ope("Jm", "Jm", json::object());
}

void add_virasoro(Builder& b, const std::vector<std::pair<std::string, std::string>>& others) {
    b.ope("T", "T", {{"4", "3*k"}, {"2", "2 T"}, {"1", "d T"}});
    for (const auto& [n, w] : others) b.ope("T", n, {{"2", w + " " + n}, {"1", "d " + n}});
}

json n4_doc(bool full) {
    Builder b(full ? "n4" : "n2");
    if (full) {
        add_sl2(b);
        b.gen("T", false, "2");
        b.gen("Gp", true, "3/2", 1).gen("Gm", true, "3/2", -1).gen("Qp", true, "3/2", 0).gen("Qm", true, "3/2", 0);
        add_virasoro(b, {{"J", "1"}, {"Jp", "1"}, {"Jm", "1"}, {"Gp", "3/2"}, {"Gm", "3/2"}, {"Qp", "3/2"}, {"Qm", "3/2"}});
        b.ope("J", "Gp", {{"1", "Gp"}});
        b.ope("J", "Gm", {{"1", "-Gm"}});
        b.ope("J", "Qp", {{"1", "-Qp"}});
        b.ope("J", "Qm", {{"1", "Qm"}});
        b.ope("Jp", "Gm", {{"1", "-Qm"}});
        b.ope("Jp", "Qp", {{"1", "Gp"}});
        b.ope("Jm", "Qm", {{"1", "-Gm"}});
        b.ope("Jm", "Gp", {{"1", "Qp"}});
        b.ope("Gp", "Qm", {{"2", "2 Jp"}, {"1", "d Jp"}});
        b.ope("Qp", "Gm", {{"2", "2 Jm"}, {"1", "d Jm"}});
        b.ope("Gp", "Gm", {{"3", "2*k"}, {"2", "J"}, {"1", "T + 1/2 d J"}});
        b.ope("Qp", "Qm", {{"3", "2*k"}, {"2", "-J"}, {"1", "T - 1/2 d J"}});
    } else {
        b.gen("J", false, "1").gen("T", false, "2");
        b.gen("Gp", true, "3/2", 1).gen("Gm", true, "3/2", -1);
        b.ope("J", "J", {{"2", "2*k"}});
        add_virasoro(b, {{"J", "1"}, {"Gp", "3/2"}, {"Gm", "3/2"}});
        b.ope("J", "Gp", {{"1", "Gp"}});
        b.ope("J", "Gm", {{"1", "-Gm"}});
        b.ope("Gp", "Gm", {{"3", "2*k"}, {"2", "J"}, {"1", "T + 1/2 d J"}});
    }
    b.conformal("T");
    return b.doc;
}

json free_doc(const std::string& family, int n) {
    Builder b(family + "(" + std::to_string(n) + ")");
    for (int i = 1; i <= n; ++i) {
        std::string s = std::to_string(i);
        if (family == "heisenberg") {
            b.gen("h" + s, false, "1");
        } else if (family == "symplectic_fermion") {
            b.gen("e" + s, true, "1").gen("f" + s, true, "1");
        } else if (family == "beta_gamma") {
            b.gen("beta" + s, false, "1/2").gen("gamma" + s, false, "1/2");
        } else {
            b.gen("b" + s, true, "1/2").gen("c" + s, true, "1/2");
        }
    }
    for (int i = 1; i <= n; ++i) {
        std::string s = std::to_string(i);
        if (family == "heisenberg") b.ope("h" + s, "h" + s, {{"2", "1"}});
        else if (family == "symplectic_fermion") b.ope("e" + s, "f" + s, {{"2", "1"}});
        else if (family == "beta_gamma") b.ope("beta" + s, "gamma" + s, {{"1", "1"}});
        else b.ope("b" + s, "c" + s, {{"1", "1"}});
    }
    return b.doc;
}

json doc_for(std::string_view full) {
    auto [name, n] = split_preset_name(full);
    if (name == "n4") return n4_doc(true);
    if (name == "n2") return n4_doc(false);
    if (name == "affine_sl2") {
        Builder b("affine_sl2");
        add_sl2(b);
        return b.doc;
    }
    if (name == "limit_T") {
        Builder b("limit_T");
        b.gen("T", false, "2").ope("T", "T", {{"4", "6"}});
        return b.doc;
    }
    if (name == "limit_Godd4") {
        Builder b("limit_Godd4");
        b.gen("Gp", true, "3/2", 1).gen("Gm", true, "3/2", -1).gen("Qp", true, "3/2", 1).gen("Qm", true, "3/2", -1);
        b.ope("Gp", "Gm", {{"3", "2"}}).ope("Qp", "Qm", {{"3", "2"}});
        return b.doc;
    }
    if (name == "heisenberg" || name == "symplectic_fermion" || name == "beta_gamma" || name == "bc") {
        if (n < 1) throw std::invalid_argument("preset rank must be >= 1");
        return free_doc(name, n);
    }
    throw std::invalid_argument("unknown preset '" + std::string(full) + "'");
}

}  // namespace

std::pair<std::string, int> split_preset_name(std::string_view name) {
    auto open = name.find('(');
    if (open == std::string_view::npos) return {std::string(name), 1};
    if (name.back() != ')') throw std::invalid_argument("malformed preset name '" + std::string(name) + "'");
    std::string arg(name.substr(open + 1, name.size() - open - 2));
    if (arg.empty() || !std::all_of(arg.begin(), arg.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw std::invalid_argument("preset parameter must be a positive integer");
    return {std::string(name.substr(0, open)), std::stoi(arg)};
}

std::vector<std::string> preset_names() {
    return {"heisenberg(n)", "symplectic_fermion(n)", "beta_gamma(n)", "bc(n)", "affine_sl2",
            "n2", "n4", "limit_T", "limit_Godd4"};
}

std::string preset_document(std::string_view name) { return doc_for(name).dump(2) + "\n"; }

AlgebraSpec preset(std::string_view name) { return load_algebra(doc_for(name).dump()); }

Field sugawara_vector(Context& ctx) {
    const auto& g = ctx.gens();
    Field J = Field::generator(g.index_of("J"));
    Field Jp = Field::generator(g.index_of("Jp"));
    Field Jm = Field::generator(g.index_of("Jm"));
    Field s = ctx.normal_order(J, J) * LevelScalar(Rational(1, 2));
    s += ctx.normal_order(Jp, Jm);
    s += ctx.normal_order(Jm, Jp);
    LevelScalar twoKh = LevelScalar(Rational(2)) * (LevelScalar::k() + LevelScalar(Rational(2)));
    return s * twoKh.inverse();
}

}  // namespace voa::algebra
