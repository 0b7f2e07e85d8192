#pragma once

#include "voa/ope_engine.hpp"

#include <map>
#include <vector>

namespace voa::oracle {

using engine::AlgebraSpec;
using terms::Field;
using terms::LevelScalar;

/// A mode g_(m) in product-index convention.
struct Mode {
    int gen = 0;
    int m = 0;
    friend bool operator==(const Mode&, const Mode&) = default;
};

/// Ordered mode word applied to the vacuum.
using ModeWord = std::vector<Mode>;
using ModeState = std::map<std::vector<std::pair<int, int>>, LevelScalar>;

/// Brute-force vacuum module of a linear OPE table (every a_(n)b of generators is a combination
/// of generators, their derivatives and the vacuum). States are PBW-sorted words of negative modes;
/// products are computed by commuting modes with [a_(m), b_(p)] = sum_j C(m,j) (a_(j)b)_(m+p-j).
/// Independent of the engine's normal-ordering code.
class ModeAlgebra {
public:
    /// Throws std::invalid_argument when the table is not linear.
    explicit ModeAlgebra(const AlgebraSpec& spec);

    /// Right-nested PBW field written as modes on the vacuum, sorted.
    ModeState from_field(const Field& f);
    /// g_(m) applied to a sorted state.
    ModeState apply(int gen, int m, const ModeState& s);
    /// (∂^d g)_(m) applied to a state.
    ModeState apply(int gen, int d, int m, const ModeState& s);

private:
    using Key = std::vector<std::pair<int, int>>;
    ModeState insert(std::pair<int, int> x, const Key& word);
    /// Supercommutator [x, y] as modes with coefficients; the vacuum part is returned in `scalar`.
    std::vector<std::pair<std::pair<int, int>, LevelScalar>> bracket(std::pair<int, int> x, std::pair<int, int> y,
                                                                     LevelScalar& scalar) const;
    bool less(std::pair<int, int> a, std::pair<int, int> b) const;
    bool odd(int g) const { return spec_.gens().odd(g); }

    AlgebraSpec spec_;
    std::map<std::pair<std::pair<int, int>, Key>, ModeState> memo_;
};

}  // namespace voa::oracle
