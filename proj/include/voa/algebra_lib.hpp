#pragma once

#include "voa/ope_engine.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace voa::algebra {

using engine::AlgebraSpec;
using engine::Context;
using terms::Field;
using terms::LevelScalar;
using terms::Rational;

class DocumentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses a JSON algebra document and returns the completed, skew-checked spec.
AlgebraSpec load_algebra(std::string_view json_text);
AlgebraSpec load_algebra_file(const std::string& path);
/// Inverse of load_algebra for the supplied orientations (pole keys are pole orders n+1).
std::string to_document(const AlgebraSpec& spec, bool supplied_only = true);

/// heisenberg(n), symplectic_fermion(n), beta_gamma(n), bc(n), affine_sl2, n2, n4, limit_T, limit_Godd4.
/// "heisenberg" alone means n = 1.
AlgebraSpec preset(std::string_view name);
std::vector<std::string> preset_names();
/// Document text of a preset before completion (only the listed orientations).
std::string preset_document(std::string_view name);

/// (1/2 :JJ: + :Jp Jm: + :Jm Jp:) / (2(k+2)) for a spec containing J, Jp, Jm.
Field sugawara_vector(Context& ctx);

/// Images of the generators, indexed like spec.gens().
struct GeneratorMap {
    std::vector<Field> images;
};

/// Extends phi multiplicatively (and ∂-equivariantly) to a PBW field.
Field apply_map(Context& ctx, const GeneratorMap& phi, const Field& f);

struct AutomorphismResidual {
    int a, b, n;
    Field residual;
};

struct AutomorphismReport {
    std::vector<AutomorphismResidual> residuals;
    bool ok() const { return residuals.empty(); }
};

/// phi(a)_(n) phi(b) = phi(a_(n) b) for every generator pair and every n >= 0.
AutomorphismReport check_automorphism(Context& ctx, const GeneratorMap& phi);

GeneratorMap identity_map(const AlgebraSpec& spec);
/// J -> -J, Jp <-> Jm, Gp <-> Gm, Qp -> -Qm, Qm -> -Qp, T fixed.
GeneratorMap n4_theta(const AlgebraSpec& spec);
/// The SL2 action on the weight 3/2 fields; J, Jp, Jm, T fixed.
GeneratorMap n4_omega(const AlgebraSpec& spec, const Rational& a0, const Rational& a1, const Rational& b0,
                      const Rational& b1);

/// Parses "name(param)" into a name and an integer parameter (default 1).
std::pair<std::string, int> split_preset_name(std::string_view name);

}  // namespace voa::algebra
