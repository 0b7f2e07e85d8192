#pragma once

#include "voa/invariant_lab.hpp"

namespace voa::lab::detail {

bool all_constant(const Field& f);

/// Levels used for numeric rank probes.
const std::vector<Rational>& probe_levels();

/// Coefficients x with target = sum x[i] * cands[i] at symbolic k, or nullopt.
std::optional<std::vector<LevelScalar>> solve_in_span(const Field& target, const std::vector<const Field*>& cands);

/// Solves the square system sum x[j] * cols[j] = rhs over Q(k) from exact solutions at sample
/// levels (Thiele interpolation). The caller must verify the result; nullopt if it never settles.
std::optional<std::vector<LevelScalar>> interpolate_solution(const std::vector<SparseVec<LevelScalar>>& cols,
                                                             const SparseVec<LevelScalar>& rhs);

/// Same at k = q; candidates with a pole at q are left out (coefficient 0).
std::optional<std::vector<Rational>> solve_in_span_at(const Field& target, const std::vector<const Field*>& cands,
                                                      const Rational& q);

/// Rational roots (distinct) and the remaining irreducible factors of a product of polynomials.
void split_roots(const std::vector<LevelPoly>& polys, std::set<Rational>& roots, std::vector<LevelPoly>& residual);

/// Kernel of the map x -> sum x[i] * images[i]; each kernel vector is a coefficient list.
std::vector<std::vector<LevelScalar>> kernel(const std::vector<Field>& images, std::vector<LevelScalar>* pivots = nullptr);
std::vector<std::vector<Rational>> kernel_at(const std::vector<Field>& images, const Rational& q);

}  // namespace voa::lab::detail
