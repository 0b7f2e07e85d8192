#include "voa/algebra_lib.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace voa::algebra {

using nlohmann::json;
using terms::GeneratorDecl;
using terms::GeneratorSet;
using terms::Parity;
using terms::Weight;

namespace {

const json& need(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw DocumentError(where + ": missing key '" + key + "'");
    return *it;
}

std::string need_string(const json& j, const char* key, const std::string& where) {
    const json& v = need(j, key, where);
    if (!v.is_string()) throw DocumentError(where + ": '" + key + "' must be a string");
    return v.get<std::string>();
}

}  // namespace

AlgebraSpec load_algebra(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DocumentError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw DocumentError("algebra document must be a JSON object");
    std::string name = doc.contains("name") ? need_string(doc, "name", "document") : "algebra";
    if (doc.contains("parameters")) {
        for (const auto& p : doc["parameters"])
            if (!p.is_string() || p.get<std::string>() != "k")
                throw DocumentError("only the parameter \"k\" is supported");
    }
    std::vector<GeneratorDecl> decls;
    const json& gens = need(doc, "generators", "document");
    if (!gens.is_array()) throw DocumentError("'generators' must be an array");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::string where = "generators[" + std::to_string(i) + "]";
        const json& g = gens[i];
        GeneratorDecl d;
        d.name = need_string(g, "name", where);
        std::string par = g.contains("parity") ? need_string(g, "parity", where) : "even";
        if (par == "even") d.parity = Parity::Even;
        else if (par == "odd") d.parity = Parity::Odd;
        else throw DocumentError(where + ": parity must be \"even\" or \"odd\"");
        const json& w = need(g, "weight", where);
        try {
            d.weight = w.is_string() ? Weight::parse(w.get<std::string>()) : Weight::integer(w.get<int>());
        } catch (const std::exception& e) {
            throw DocumentError(where + ": bad weight: " + e.what());
        }
        if (g.contains("charge")) d.charge = g["charge"].get<int>();
        decls.push_back(std::move(d));
    }
    GeneratorSet set;
    try {
        set = GeneratorSet(std::move(decls));
    } catch (const std::invalid_argument& e) {
        throw DocumentError(e.what());
    }
    AlgebraSpec spec(name, set);
    if (doc.contains("conformal") && !doc["conformal"].is_null()) {
        std::string c = doc["conformal"].get<std::string>();
        auto idx = set.find(c);
        if (!idx) throw terms::UnknownName("conformal vector '" + c + "' is not a generator");
        spec.set_conformal(*idx);
    }
    if (doc.contains("opes")) {
        const json& opes = doc["opes"];
        for (std::size_t i = 0; i < opes.size(); ++i) {
            std::string where = "opes[" + std::to_string(i) + "]";
            const json& o = opes[i];
            int l = set.index_of(need_string(o, "left", where));
            int r = set.index_of(need_string(o, "right", where));
            spec.mark_supplied(l, r);
            if (!o.contains("poles")) continue;
            for (const auto& [key, val] : o["poles"].items()) {
                int order = 0;
                try {
                    std::size_t used = 0;
                    order = std::stoi(key, &used);
                    if (used != key.size()) throw std::invalid_argument(key);
                } catch (const std::exception&) {
                    throw DocumentError(where + ": pole order '" + key + "' is not an integer");
                }
                if (order < 1) throw DocumentError(where + ": pole order must be >= 1");
                if (!val.is_string()) throw DocumentError(where + ": pole " + key + " must be a string");
                terms::ParsedField pf;
                try {
                    pf = terms::parse_field(val.get<std::string>(), set);
                } catch (const exactq::ParseError& e) {
                    throw DocumentError(where + ", pole " + key + ": " + e.what() + " at position " +
                                        std::to_string(e.position()));
                }
                if (!pf.normalized) throw DocumentError(where + ", pole " + key + ": entry is not in PBW order");
                spec.set_product(l, r, order - 1, pf.field);
            }
        }
    }
    return engine::complete_table(std::move(spec));
}

AlgebraSpec load_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DocumentError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_algebra(ss.str());
}

std::string to_document(const AlgebraSpec& spec, bool supplied_only) {
    json doc;
    doc["name"] = spec.name();
    doc["parameters"] = json::array({"k"});
    json gens = json::array();
    for (const auto& d : spec.gens().decls())
        gens.push_back({{"name", d.name},
                        {"parity", d.parity == Parity::Odd ? "odd" : "even"},
                        {"weight", d.weight.str()},
                        {"charge", d.charge}});
    doc["generators"] = gens;
    doc["conformal"] = spec.conformal() ? json(spec.gens()[static_cast<std::size_t>(*spec.conformal())].name) : json(nullptr);
    json opes = json::array();
    const int N = static_cast<int>(spec.size());
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            if (supplied_only ? !spec.supplied(a, b) : spec.pole_slots(a, b) == 0) continue;
            json poles = json::object();
            for (int n = spec.pole_slots(a, b) - 1; n >= 0; --n)
                if (const Field* f = spec.product(a, b, n))
                    poles[std::to_string(n + 1)] = terms::print_field(*f, spec.gens());
            opes.push_back({{"left", spec.gens()[a].name}, {"right", spec.gens()[b].name}, {"poles", poles}});
        }
    doc["opes"] = opes;
    return doc.dump(2) + "\n";
}

}  // namespace voa::algebra
