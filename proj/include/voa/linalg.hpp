#pragma once

#include "voa/terms.hpp"

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

namespace voa::lab {

using terms::Field;
using terms::LevelScalar;
using terms::Monomial;
using terms::Rational;

template <class T>
using SparseVec = std::map<int, T>;

/// Assigns dense ids to monomials so fields become sparse vectors.
class MonomialIndex {
public:
    int id(const Monomial& m) {
        auto [it, inserted] = ids_.try_emplace(m, static_cast<int>(monos_.size()));
        if (inserted) monos_.push_back(m);
        return it->second;
    }
    std::optional<int> find(const Monomial& m) const {
        auto it = ids_.find(m);
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }
    const Monomial& monomial(int id) const { return monos_[static_cast<std::size_t>(id)]; }
    std::size_t size() const { return monos_.size(); }

private:
    std::unordered_map<Monomial, int, terms::MonomialHash> ids_;
    std::vector<Monomial> monos_;
};

SparseVec<LevelScalar> to_vector(const Field& f, MonomialIndex& index);
/// Coefficients evaluated at k = q (throws PoleError).
SparseVec<Rational> to_vector_at(const Field& f, MonomialIndex& index, const Rational& q);

inline bool scalar_is_zero(const Rational& x) { return x.is_zero(); }
inline bool scalar_is_zero(const LevelScalar& x) { return x.is_zero(); }

/// Incremental row echelon form over Q or Q(k). Each stored row remembers which input
/// vectors it is a combination of, so membership tests can return coefficients.
template <class T>
class Echelon {
public:
    struct AddResult {
        bool independent = false;
        T pivot{};  ///< leading entry of the reduced vector before normalization
        int pivotColumn = -1;
    };

    /// Reduces v against the stored rows; the residual becomes a new row if nonzero.
    AddResult add(const SparseVec<T>& v) {
        int tag = static_cast<int>(inputs_++);
        SparseVec<T> combo{{tag, T(1)}};
        SparseVec<T> r = v;
        reduce(r, combo);
        AddResult res;
        if (r.empty()) {
            dependent_.emplace(tag, negate(combo, tag));
            return res;
        }
        res.independent = true;
        res.pivotColumn = r.begin()->first;
        res.pivot = r.begin()->second;
        T inv = T(1) / res.pivot;
        for (auto& [c, x] : r) x *= inv;
        for (auto& [c, x] : combo) x *= inv;
        rows_.emplace(res.pivotColumn, Row{std::move(r), std::move(combo)});
        independentTags_.push_back(tag);
        return res;
    }

    /// Coefficients c with v = sum c[tag] * input[tag], if v lies in the span.
    std::optional<SparseVec<T>> express(const SparseVec<T>& v) const {
        SparseVec<T> r = v;
        SparseVec<T> combo;
        reduce(r, combo);
        if (!r.empty()) return std::nullopt;
        for (auto& [t, x] : combo) x = -x;
        return combo;
    }

    bool contains(const SparseVec<T>& v) const { return express_residual(v).empty(); }
    SparseVec<T> express_residual(const SparseVec<T>& v) const {
        SparseVec<T> r = v, combo;
        reduce(r, combo);
        return r;
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t inputs() const { return inputs_; }
    const std::vector<int>& independent_tags() const { return independentTags_; }
    /// For an input that was dependent: its expression in terms of earlier inputs.
    const std::map<int, SparseVec<T>>& dependencies() const { return dependent_; }

private:
    struct Row {
        SparseVec<T> v;
        SparseVec<T> combo;  ///< row = sum combo[tag] * input[tag]
    };

    static void axpy(SparseVec<T>& y, const SparseVec<T>& x, const T& a) {
        for (const auto& [c, v] : x) {
            auto it = y.find(c);
            if (it == y.end()) {
                y.emplace(c, a * v);
            } else {
                it->second += a * v;
                if (scalar_is_zero(it->second)) y.erase(it);
            }
        }
    }

    /// r -= sum of multiples of stored rows; combo tracks the same operations.
    void reduce(SparseVec<T>& r, SparseVec<T>& combo) const {
        auto it = r.begin();
        while (it != r.end()) {
            auto row = rows_.find(it->first);
            if (row == rows_.end()) {
                ++it;
                continue;
            }
            int col = it->first;
            T a = -it->second;
            axpy(r, row->second.v, a);
            axpy(combo, row->second.combo, a);
            it = r.upper_bound(col);
        }
    }

    static SparseVec<T> negate(const SparseVec<T>& combo, int self) {
        // 0 = input[self] + sum_{t != self} combo[t] input[t]  =>  input[self] = -sum ...
        SparseVec<T> out;
        T s = combo.at(self);
        for (const auto& [t, x] : combo)
            if (t != self) out.emplace(t, -x / s);
        return out;
    }

    std::map<int, Row> rows_;
    std::map<int, SparseVec<T>> dependent_;
    std::vector<int> independentTags_;
    std::size_t inputs_ = 0;
};

}  // namespace voa::lab
