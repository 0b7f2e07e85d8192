#pragma once

#include "voa/terms.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace voa::engine {

using terms::Factor;
using terms::Field;
using terms::GeneratorDecl;
using terms::GeneratorSet;
using terms::LevelScalar;
using terms::Monomial;
using terms::Parity;
using terms::Rational;
using terms::Weight;

class IncompleteTable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SkewViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Generators plus the singular OPE data a_(n)b (n >= 0) for generator pairs.
class AlgebraSpec {
public:
    AlgebraSpec() = default;
    AlgebraSpec(std::string name, GeneratorSet gens);

    const std::string& name() const { return name_; }
    const GeneratorSet& gens() const { return gens_; }
    std::size_t size() const { return gens_.size(); }

    /// Sets a_(n)b for generators a = left, b = right; marks the orientation as supplied.
    void set_product(int left, int right, int n, Field value);
    /// Marks an orientation as supplied (possibly with no poles, i.e. regular).
    void mark_supplied(int left, int right);
    bool supplied(int left, int right) const { return supplied_[idx(left, right)]; }
    /// a_(n)b, or nullptr when zero.
    const Field* product(int left, int right, int n) const;
    /// Number of stored n-slots (largest n with data + 1).
    int pole_slots(int left, int right) const { return static_cast<int>(table_[idx(left, right)].size()); }
    void clear_pair(int left, int right);

    std::optional<int> conformal() const { return conformal_; }
    void set_conformal(std::optional<int> g) { conformal_ = g; }
    void set_name(std::string n) { name_ = std::move(n); }

    /// Every coefficient evaluated at k = q (throws PoleError on poles).
    AlgebraSpec specialize(const Rational& q) const;
    /// Sub-table on the named generators, in the given order.
    AlgebraSpec restrict_to(const std::vector<std::string>& names) const;
    /// Generator-disjoint tensor product; generator names must not clash.
    friend AlgebraSpec tensor(const AlgebraSpec& a, const AlgebraSpec& b);

    friend bool operator==(const AlgebraSpec& a, const AlgebraSpec& b);

private:
    std::size_t idx(int l, int r) const { return static_cast<std::size_t>(l) * gens_.size() + static_cast<std::size_t>(r); }
    std::string name_;
    GeneratorSet gens_;
    std::vector<std::vector<Field>> table_;
    std::vector<bool> supplied_;
    std::optional<int> conformal_;
};

AlgebraSpec tensor(const AlgebraSpec& a, const AlgebraSpec& b);

/// Fills missing orientations by skew-symmetry and checks supplied ones (also self pairs).
/// Pairs where neither orientation is supplied are regular.
AlgebraSpec complete_table(AlgebraSpec spec);

struct OpeResult {
    std::map<int, Field> poles;  ///< n -> a_(n)b, zero entries omitted
};

/// A computation context: a spec plus memo caches. Not thread-safe; use one per worker.
class Context {
public:
    explicit Context(AlgebraSpec spec);
    Context(const Context&) = delete;
    Context& operator=(const Context&) = delete;

    const AlgebraSpec& spec() const { return spec_; }
    const GeneratorSet& gens() const { return spec_.gens(); }

    Field nth_product(const Field& a, const Field& b, int n);
    Field normal_order(const Field& a, const Field& b) { return nth_product(a, b, -1); }
    OpeResult ope(const Field& a, const Field& b);
    Field derivative(const Field& f);
    Field derivative(const Field& f, int times);
    /// Rewrites arbitrary (right-nested) words into PBW normal form.
    Field normalize(const Field& raw);
    /// Mode g_(m) of a generator applied to a state.
    Field apply_mode(int gen, int m, const Field& state);
    /// Weight-homogeneity guaranteeing sum bounds.
    Weight weight(const Monomial& m) const { return terms::weight(m, spec_.gens()); }

    std::size_t cache_size() const { return modeCache_.size() + productCache_.size(); }
    void clear_cache();

private:
    struct ModeKey {
        int gen;
        int mode;
        Monomial state;
        bool operator==(const ModeKey&) const = default;
    };
    struct ModeKeyHash {
        std::size_t operator()(const ModeKey& k) const {
            return terms::MonomialHash{}(k.state) * 31 + static_cast<std::size_t>(k.gen) * 1315423911u +
                   static_cast<std::size_t>(k.mode + 1000) * 2654435761u;
        }
    };
    struct ProductKey {
        Monomial left;
        int n;
        Monomial right;
        bool operator==(const ProductKey&) const = default;
    };
    struct ProductKeyHash {
        std::size_t operator()(const ProductKey& k) const {
            return terms::MonomialHash{}(k.left) * 1000003u ^ terms::MonomialHash{}(k.right) * 31 ^
                   static_cast<std::size_t>(k.n + 1000) * 2654435761u;
        }
    };

    using FieldPtr = std::shared_ptr<const Field>;

    FieldPtr mode_on(int g, int m, const Monomial& r);
    FieldPtr product_on(const Monomial& x, int n, const Monomial& r);
    FieldPtr derivative_on(const Monomial& r);
    Field product_field_monomial(const Field& x, int n, const Monomial& r);
    /// (∂^d g)_(n) applied to a state.
    Field factor_mode(const Factor& f, int n, const Field& state);
    Field factor_mode(const Factor& f, int n, const Monomial& state);
    bool odd(int g) const { return spec_.gens().odd(g); }

    AlgebraSpec spec_;
    std::unordered_map<ModeKey, FieldPtr, ModeKeyHash> modeCache_;
    std::unordered_map<ProductKey, FieldPtr, ProductKeyHash> productCache_;
    std::unordered_map<Monomial, FieldPtr, terms::MonomialHash> derivCache_;
};

struct JacobiFailure {
    int a, b, c, m, n;
    Field residual;
};

struct JacobiReport {
    std::size_t checked = 0;
    std::vector<JacobiFailure> failures;
    bool ok() const { return failures.empty(); }
};

/// Commutator formula a_(m)(b_(n)c) - (-1)^{p(a)p(b)} b_(n)(a_(m)c) = sum_j C(m,j) (a_(j)b)_(m+n-j)c
/// over all generator triples whose total weight is at most maxWeight.
JacobiReport check_jacobi(const AlgebraSpec& spec, Weight maxWeight);
JacobiReport check_jacobi(Context& ctx, Weight maxWeight);
/// Every (m, n) for one ordered triple for which some side can be nonzero.
JacobiReport check_jacobi_triple(Context& ctx, int a, int b, int c);

/// Largest n such that a_(n)b can be nonzero for homogeneous parts of the inputs.
int max_pole_index(const Field& a, const Field& b, const GeneratorSet& gens);

}  // namespace voa::engine
