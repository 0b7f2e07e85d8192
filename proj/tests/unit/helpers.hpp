#pragma once

#include "doctest.h"
#include "voa/algebra_lib.hpp"
#include "voa/identity.hpp"

#include <string>

namespace testing {

using voa::exactq::LevelPoly;
using voa::exactq::LevelScalar;
using voa::exactq::Rational;
using voa::terms::Field;
using voa::terms::Monomial;
using voa::terms::Weight;

// n4 generator indices
enum N4 { J = 0, Jp, Jm, T, Gp, Gm, Qp, Qm };

inline LevelScalar S(const std::string& text) { return voa::exactq::parse_scalar(text); }
inline Field gen(int g, int d = 0) { return Field::generator(g, d); }
inline Field vac(const LevelScalar& c = LevelScalar(1)) { return Field::vacuum(c); }

inline Field parse(const std::string& text, const voa::terms::GeneratorSet& gens) {
    return voa::terms::parse_field(text, gens).field;
}

}  // namespace testing

namespace doctest {
template <>
struct StringMaker<voa::exactq::LevelScalar> {
    static String convert(const voa::exactq::LevelScalar& s) { return s.str().c_str(); }
};
template <>
struct StringMaker<voa::exactq::Rational> {
    static String convert(const voa::exactq::Rational& s) { return s.str().c_str(); }
};
}  // namespace doctest
