#pragma once

#include "rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace brstwb {

using SparseVector = std::map<std::size_t, Rational>;

inline void axpy(SparseVector& y, const Rational& a, const SparseVector& x) {
    for (const auto& [i, v] : x) {
        auto [it, inserted] = y.try_emplace(i, a * v);
        if (!inserted) {
            it->second += a * v;
            if (is_zero(it->second)) y.erase(it);
        }
    }
}

// Incremental row echelon form; each pivot row has a leading 1 at its smallest index.
class RowEchelon {
public:
    SparseVector reduce(SparseVector v) const {
        auto it = v.begin();
        while (it != v.end()) {
            auto p = pivots_.find(it->first);
            if (p == pivots_.end()) {
                ++it;
                continue;
            }
            std::size_t col = it->first;
            Rational f = it->second;
            axpy(v, -f, p->second);
            it = v.upper_bound(col);
        }
        return v;
    }

    // Returns the pivot column when v is independent of the rows so far.
    std::optional<std::size_t> insert(SparseVector v) {
        v = reduce(std::move(v));
        if (v.empty()) return std::nullopt;
        std::size_t lead = v.begin()->first;
        Rational inv = 1 / v.begin()->second;
        for (auto& [i, x] : v) x *= inv;
        pivots_.emplace(lead, std::move(v));
        return lead;
    }

    bool contains(const SparseVector& v) const { return reduce(v).empty(); }

    std::size_t rank() const noexcept { return pivots_.size(); }
    const std::map<std::size_t, SparseVector>& pivots() const noexcept { return pivots_; }

    // Clears every pivot column from all other rows.
    void back_substitute() {
        for (auto p = pivots_.rbegin(); p != pivots_.rend(); ++p) {
            SparseVector& row = p->second;
            auto it = row.upper_bound(p->first);
            while (it != row.end()) {
                auto q = pivots_.find(it->first);
                if (q == pivots_.end()) {
                    ++it;
                    continue;
                }
                std::size_t col = it->first;
                Rational f = it->second;
                axpy(row, -f, q->second);
                it = row.upper_bound(col);
            }
        }
    }

private:
    std::map<std::size_t, SparseVector> pivots_;
};

// Linear system assembled column by column: column k holds the coefficients of unknown k.
class ColumnSystem {
public:
    explicit ColumnSystem(std::size_t unknowns) : unknowns_(unknowns) {}

    void set(std::size_t row, std::size_t col, const Rational& value) {
        if (is_zero(value)) return;
        auto& r = rows_[row];
        auto [it, inserted] = r.try_emplace(col, value);
        if (!inserted) {
            it->second += value;
            if (is_zero(it->second)) r.erase(it);
        }
    }

    void set_rhs(std::size_t row, const Rational& value) { set(row, unknowns_, value); }

    std::size_t unknowns() const noexcept { return unknowns_; }

    // One solution with free unknowns set to zero, if consistent.
    std::optional<std::vector<Rational>> solve() const {
        RowEchelon ech;
        for (const auto& [r, row] : rows_) {
            auto lead = ech.insert(row);
            if (lead && *lead == unknowns_) return std::nullopt;
        }
        ech.back_substitute();
        std::vector<Rational> x(unknowns_, Rational(0));
        for (const auto& [col, row] : ech.pivots()) {
            auto it = row.find(unknowns_);
            if (it != row.end()) x[col] = it->second;
        }
        return x;
    }

    // Basis of the homogeneous solution space, one vector per free unknown in increasing order.
    std::vector<SparseVector> kernel() const {
        RowEchelon ech;
        for (const auto& [r, row] : rows_) {
            SparseVector h = row;
            h.erase(unknowns_);
            ech.insert(std::move(h));
        }
        ech.back_substitute();
        std::vector<SparseVector> basis;
        const auto& piv = ech.pivots();
        std::vector<bool> is_pivot(unknowns_, false);
        for (const auto& [col, row] : piv) is_pivot[col] = true;
        std::map<std::size_t, SparseVector> by_free;
        for (const auto& [col, row] : piv) {
            for (const auto& [j, v] : row) {
                if (j != col) by_free[j][col] = -v;
            }
        }
        for (std::size_t f = 0; f < unknowns_; ++f) {
            if (is_pivot[f]) continue;
            SparseVector v;
            v[f] = 1;
            auto it = by_free.find(f);
            if (it != by_free.end()) {
                for (const auto& [i, x] : it->second) v[i] = x;
            }
            basis.push_back(std::move(v));
        }
        return basis;
    }

private:
    std::size_t unknowns_;
    std::map<std::size_t, SparseVector> rows_;
};

inline std::size_t rank_of(const std::vector<SparseVector>& vectors) {
    RowEchelon ech;
    for (const auto& v : vectors) ech.insert(v);
    return ech.rank();
}

} // namespace brstwb
