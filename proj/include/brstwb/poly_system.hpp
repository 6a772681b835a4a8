#pragma once

#include "linear_algebra.hpp"
#include "supoly.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace brstwb {

// Linear equations whose unknowns multiply known polynomials; rows are (component, monomial).
class PolySystem {
public:
    explicit PolySystem(std::size_t unknowns) : sys_(unknowns) {}

    void add(std::size_t unknown, std::size_t component, const SuPoly& image) {
        for (const auto& [m, c] : image.terms()) sys_.set(row(component, m), unknown, c);
    }

    void add_rhs(std::size_t component, const SuPoly& target) {
        for (const auto& [m, c] : target.terms()) sys_.set_rhs(row(component, m), c);
    }

    // Requires the constant term of a component to vanish without fixing other monomials.
    void touch(std::size_t component, const Monomial& m) { row(component, m); }

    std::size_t unknowns() const noexcept { return sys_.unknowns(); }
    std::optional<std::vector<Rational>> solve() const { return sys_.solve(); }
    std::vector<SparseVector> kernel() const { return sys_.kernel(); }

private:
    struct RowLess {
        bool operator()(const std::pair<std::size_t, Monomial>& a,
                        const std::pair<std::size_t, Monomial>& b) const {
            if (a.first != b.first) return a.first < b.first;
            return MonomialOrder{}(a.second, b.second);
        }
    };

    std::size_t row(std::size_t component, const Monomial& m) {
        auto [it, inserted] = rows_.try_emplace({component, m}, rows_.size());
        return it->second;
    }

    std::map<std::pair<std::size_t, Monomial>, std::size_t, RowLess> rows_;
    ColumnSystem sys_;
};

// Monomials in the given even keys of total degree at most max_degree, in a fixed order.
inline std::vector<Monomial> monomials_up_to(std::vector<VarKey> keys, unsigned max_degree) {
    std::sort(keys.begin(), keys.end());
    std::vector<Monomial> out;
    Monomial cur;
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i == keys.size()) {
            out.push_back(cur);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            if (e > 0) cur.push_back({keys[i], e});
            self(self, i + 1, left - e);
            if (e > 0) cur.pop_back();
        }
    };
    rec(rec, 0, max_degree);
    std::stable_sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        return total_degree(a) < total_degree(b);
    });
    return out;
}

// Products of p distinct odd keys in increasing key order.
inline std::vector<Monomial> odd_products(std::vector<VarKey> keys, std::size_t p) {
    std::sort(keys.begin(), keys.end());
    std::vector<Monomial> out;
    Monomial cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == p) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < keys.size(); ++i) {
            cur.push_back({keys[i], 1});
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

} // namespace brstwb
