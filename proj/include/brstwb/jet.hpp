#pragma once

#include "expression.hpp"

#include <map>
#include <set>
#include <vector>

namespace brstwb {

inline SuPoly total_derivative(const SuPoly& f) {
    SuPoly out(f.roster());
    if (f.is_zero()) return out;
    const Roster& r = *f.roster();
    Monomial rest;
    Monomial prod;
    for (const auto& [m, c] : f.terms()) {
        for (const auto& fac : m) {
            int k = key_order(fac.var);
            if (k + 1 > r.max_jet_order()) {
                throw JetOrderOverflow("total derivative of " + r.name_of(fac.var) + " exceeds the jet order cap " +
                                       std::to_string(r.max_jet_order()));
            }
            long mult = derive_monomial(r, m, fac.var, Side::left, rest);
            Monomial next{{make_key(key_base(fac.var), k + 1), 1}};
            int s = multiply_monomials(r, next, rest, prod);
            if (s == 0) continue;
            out.add_term(prod, c * Rational(mult * s));
        }
    }
    return out;
}

inline SuPoly total_derivative(const SuPoly& f, int times) {
    SuPoly g = f;
    for (int i = 0; i < times; ++i) g = total_derivative(g);
    return g;
}

inline int jet_order_of(const SuPoly& f) {
    int k = 0;
    for (const auto& [m, c] : f.terms()) k = std::max(k, max_jet_order(m));
    return k;
}

inline SuPoly euler_derivative(const SuPoly& f, std::size_t base, Side side = Side::left) {
    SuPoly out(f.roster());
    if (f.is_zero()) return out;
    int top = jet_order_of(f);
    for (int k = top; k >= 0; --k) {
        // Horner form of sum_k (-D)^k d/dv_(k).
        out = -total_derivative(out);
        out += derive(f, make_key(base, k), side);
    }
    return out;
}

inline SuPoly euler_derivative(const SuPoly& f, std::string_view base_name, Side side = Side::left) {
    return euler_derivative(f, f.roster()->require(base_name), side);
}

inline bool is_total_derivative(const SuPoly& f) {
    if (f.is_zero()) return true;
    if (!is_zero(f.constant_term())) return false;
    const Roster& r = *f.roster();
    for (std::size_t b = 0; b < r.size(); ++b) {
        if (!euler_derivative(f, b).is_zero()) return false;
    }
    return true;
}

inline bool equals_mod_totald(const SuPoly& f, const SuPoly& g) { return is_total_derivative(f - g); }

// Integrand representative of a functional; equality is modulo total derivatives.
struct LocalFunctional {
    SuPoly integrand;

    friend bool operator==(const LocalFunctional& a, const LocalFunctional& b) {
        return equals_mod_totald(a.integrand, b.integrand);
    }
};

inline void require_pairing(const SuPoly& f) {
    if (!f.roster() || !f.roster()->paired()) {
        throw PairingError("roster declares no position/momentum pairing");
    }
}

inline SuPoly functional_poisson_bracket(const SuPoly& F, const SuPoly& G) {
    SuPoly out(F.roster() ? F.roster() : G.roster());
    out.adopt(G);
    if (F.is_zero() || G.is_zero()) return out;
    require_pairing(out);
    const Roster& r = *out.roster();
    for (const auto& [q, p] : r.pairs()) {
        SuPoly a = euler_derivative(F, p, Side::right) * euler_derivative(G, q, Side::left);
        SuPoly b = euler_derivative(F, q, Side::right) * euler_derivative(G, p, Side::left);
        out += a;
        if (r.base(q).grading.parity == 1) {
            out += b;
        } else {
            out -= b;
        }
    }
    return out;
}

inline LocalFunctional functional_poisson_bracket(const LocalFunctional& F, const LocalFunctional& G) {
    return {functional_poisson_bracket(F.integrand, G.integrand)};
}

// Characteristic per base variable; absent entries act as zero.
using Characteristics = std::map<std::size_t, SuPoly>;

// Prolonged evolutionary derivation: v_(k) -> D^k(Q_v), extended by the left Leibniz rule.
inline SuPoly apply_characteristics(const Characteristics& q, const SuPoly& f) {
    SuPoly out(f.roster());
    if (f.is_zero()) return out;
    std::map<VarKey, SuPoly> image;
    auto image_of = [&](VarKey v) -> const SuPoly* {
        auto it = image.find(v);
        if (it != image.end()) return &it->second;
        auto qt = q.find(key_base(v));
        if (qt == q.end() || qt->second.is_zero()) return nullptr;
        return &image.emplace(v, total_derivative(qt->second, key_order(v))).first->second;
    };
    std::set<VarKey> seen;
    for (const auto& [m, c] : f.terms()) {
        for (const auto& fac : m) seen.insert(fac.var);
    }
    for (VarKey v : seen) {
        const SuPoly* img = image_of(v);
        if (!img) continue;
        out += (*img) * derive_left(f, v);
    }
    return out;
}

inline Characteristics hamiltonian_characteristics(const SuPoly& F) {
    Characteristics out;
    if (F.is_zero()) return out;
    require_pairing(F);
    const Roster& r = *F.roster();
    for (const auto& [q, p] : r.pairs()) {
        SuPoly xq = euler_derivative(F, p, Side::right);
        SuPoly xp = euler_derivative(F, q, Side::right);
        if (r.base(q).grading.parity == 0) xp = -xp;
        if (!xq.is_zero()) out.emplace(q, std::move(xq));
        if (!xp.is_zero()) out.emplace(p, std::move(xp));
    }
    return out;
}

inline SuPoly evolutionary_field_apply(const SuPoly& F, const SuPoly& f) {
    if (F.is_zero()) return SuPoly(f.roster());
    return apply_characteristics(hamiltonian_characteristics(F), f);
}

inline SuPoly evolutionary_field_apply(const LocalFunctional& F, const SuPoly& f) {
    return evolutionary_field_apply(F.integrand, f);
}

} // namespace brstwb
