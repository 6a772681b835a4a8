#pragma once

#include "errors.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace brstwb {

struct GradingVector {
    int parity = 0;
    int ghost = 0;
    int rdeg = 0;
    int mdeg = 0;

    friend GradingVector operator+(const GradingVector& a, const GradingVector& b) {
        return {(a.parity + b.parity) % 2, a.ghost + b.ghost, a.rdeg + b.rdeg, a.mdeg + b.mdeg};
    }
    friend bool operator==(const GradingVector&, const GradingVector&) = default;
};

inline std::string to_string(const GradingVector& g) {
    return "(parity " + std::to_string(g.parity) + ", ghost " + std::to_string(g.ghost) +
           ", rdeg " + std::to_string(g.rdeg) + ", mdeg " + std::to_string(g.mdeg) + ")";
}

// Listed in global order.
enum class VarClass { coordinate, multiplier, parameter, ghost, momentum };

struct VarSpec {
    std::string name;
    GradingVector grading;
    VarClass kind = VarClass::coordinate;
};

inline VarSpec even_var(std::string name, VarClass kind = VarClass::coordinate) {
    return {std::move(name), {0, 0, 0, 0}, kind};
}

// Packs (base index, jet order); comparison of keys is the global order.
using VarKey = std::uint32_t;

inline constexpr int kOrderBits = 5;
inline constexpr int kMaxSupportedJetOrder = (1 << kOrderBits) - 1;
inline constexpr int kDefaultMaxJetOrder = 8;

inline constexpr VarKey make_key(std::size_t base, int order) {
    return static_cast<VarKey>((base << kOrderBits) | static_cast<unsigned>(order));
}
inline constexpr std::size_t key_base(VarKey k) { return k >> kOrderBits; }
inline constexpr int key_order(VarKey k) { return static_cast<int>(k & kMaxSupportedJetOrder); }

class Roster {
public:
    Roster(std::vector<VarSpec> vars, std::vector<std::pair<std::string, std::string>> pairs = {},
           int max_jet_order = kDefaultMaxJetOrder)
        : max_jet_order_(max_jet_order) {
        if (max_jet_order < 0 || max_jet_order > kMaxSupportedJetOrder) {
            throw JetOrderOverflow("jet order cap must lie in [0, " +
                                   std::to_string(kMaxSupportedJetOrder) + "]");
        }
        std::vector<std::size_t> idx(vars.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            const auto& va = vars[a];
            const auto& vb = vars[b];
            if (va.kind != vb.kind) return va.kind < vb.kind;
            if (va.kind == VarClass::ghost) return va.grading.ghost < vb.grading.ghost;
            return false;
        });
        for (std::size_t i : idx) {
            auto v = vars[i];
            v.grading.parity = ((v.grading.parity % 2) + 2) % 2;
            if (v.name.empty()) throw ShapeError("empty variable name");
            if (index_.count(v.name)) throw ShapeError("duplicate variable name '" + v.name + "'");
            if (jet_suffix_order(v.name) > 0) {
                throw ShapeError("variable name '" + v.name + "' collides with jet notation");
            }
            index_.emplace(v.name, vars_.size());
            vars_.push_back(std::move(v));
        }
        partner_.assign(vars_.size(), npos);
        is_position_.assign(vars_.size(), false);
        for (const auto& [pos, mom] : pairs) {
            auto p = find(pos);
            auto q = find(mom);
            if (!p || !q) throw PairingError("pairing refers to unknown variable " + pos + "/" + mom);
            if (partner_[*p] != npos || partner_[*q] != npos) {
                throw PairingError("variable paired twice: " + pos + "/" + mom);
            }
            partner_[*p] = *q;
            partner_[*q] = *p;
            is_position_[*p] = true;
            pairs_.emplace_back(*p, *q);
        }
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t size() const noexcept { return vars_.size(); }
    const VarSpec& base(std::size_t i) const { return vars_.at(i); }
    const std::vector<VarSpec>& bases() const noexcept { return vars_; }
    int max_jet_order() const noexcept { return max_jet_order_; }

    std::optional<std::size_t> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t require(std::string_view name) const {
        auto i = find(name);
        if (!i) throw ShapeError("roster has no variable '" + std::string(name) + "'");
        return *i;
    }

    VarKey key(std::string_view name, int order = 0) const { return make_key(require(name), order); }

    // Resolves "x", "x_t", "x_tt", ... to a jet key.
    std::optional<VarKey> lookup(std::string_view ident) const {
        if (auto i = find(ident)) return make_key(*i, 0);
        int k = jet_suffix_order(ident);
        if (k == 0) return std::nullopt;
        auto i = find(ident.substr(0, ident.size() - static_cast<std::size_t>(k) - 1));
        if (!i) return std::nullopt;
        if (k > max_jet_order_) {
            throw JetOrderOverflow("jet order " + std::to_string(k) + " exceeds cap " +
                                   std::to_string(max_jet_order_));
        }
        return make_key(*i, k);
    }

    std::string name_of(VarKey k) const {
        auto name = base(key_base(k)).name;
        int order = key_order(k);
        if (order > 0) name += "_" + std::string(static_cast<std::size_t>(order), 't');
        return name;
    }

    bool odd(VarKey k) const { return vars_[key_base(k)].grading.parity == 1; }
    const GradingVector& grading(VarKey k) const { return vars_[key_base(k)].grading; }

    bool paired() const noexcept { return !pairs_.empty(); }
    // (position index, momentum index) in declaration order.
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const noexcept { return pairs_; }
    std::size_t partner(std::size_t i) const { return partner_.at(i); }
    bool is_position(std::size_t i) const { return is_position_.at(i); }

    friend bool operator==(const Roster& a, const Roster& b) {
        if (&a == &b) return true;
        if (a.max_jet_order_ != b.max_jet_order_ || a.pairs_ != b.pairs_) return false;
        if (a.vars_.size() != b.vars_.size()) return false;
        for (std::size_t i = 0; i < a.vars_.size(); ++i) {
            const auto& u = a.vars_[i];
            const auto& v = b.vars_[i];
            if (u.name != v.name || !(u.grading == v.grading) || u.kind != v.kind) return false;
        }
        return true;
    }

private:
    // Number k of trailing 't' in a trailing "_t...t", else 0.
    static int jet_suffix_order(std::string_view s) {
        std::size_t k = 0;
        while (k < s.size() && s[s.size() - 1 - k] == 't') ++k;
        if (k == 0 || s.size() < k + 2) return 0;
        if (s[s.size() - 1 - k] != '_') return 0;
        return static_cast<int>(k);
    }

    std::vector<VarSpec> vars_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::size_t> partner_;
    std::vector<bool> is_position_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
    int max_jet_order_;
};

using RosterPtr = std::shared_ptr<const Roster>;

inline RosterPtr make_roster(std::vector<VarSpec> vars,
                             std::vector<std::pair<std::string, std::string>> pairs = {},
                             int max_jet_order = kDefaultMaxJetOrder) {
    return std::make_shared<const Roster>(std::move(vars), std::move(pairs), max_jet_order);
}

inline bool same_roster(const RosterPtr& a, const RosterPtr& b) {
    return a == b || (a && b && *a == *b);
}

} // namespace brstwb
