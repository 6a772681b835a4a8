#pragma once

#include "brst.hpp"

namespace brstwb {

struct WeakHamiltonianStructure {
    InvolutiveSystem core;
    SuPoly P;
    PolyMatrix Y;            // Y[a][alpha], 0-vectors
    PolyMatrix G;            // G[a][b], 1-vectors
    PolyMatrix W;            // W[alpha][beta], 1-vectors
    PolyMatrix M;            // M[alpha][a], 2-vectors
    std::vector<SuPoly> Z;   // Z[alpha], 1-vectors
    std::vector<SuPoly> N;   // N[a], 2-vectors
    std::vector<SuPoly> U;   // U[alpha], 2-vectors
    std::vector<SuPoly> S;   // S[a], 3-vectors
};

inline WeakHamiltonianStructure make_weak_structure(InvolutiveSystem core, SuPoly P) {
    WeakHamiltonianStructure w;
    const auto& fr = core.frame;
    std::size_t m = core.m();
    std::size_t l = core.l();
    w.P = P.is_zero() ? fr->zero() : std::move(P);
    w.Y = zero_matrix(fr, l, m);
    w.G = zero_matrix(fr, l, l);
    w.W = zero_matrix(fr, m, m);
    w.M = zero_matrix(fr, m, l);
    w.Z.assign(m, fr->zero());
    w.N.assign(l, fr->zero());
    w.U.assign(m, fr->zero());
    w.S.assign(l, fr->zero());
    w.core = std::move(core);
    return w;
}

inline void validate_weak_structure(const WeakHamiltonianStructure& w) {
    validate_system(w.core);
    const auto& fr = *w.core.frame;
    std::size_t m = w.core.m();
    std::size_t l = w.core.l();
    auto degree = [&](const SuPoly& p, int d, const std::string& what) {
        if (p.is_zero()) return;
        if (fr.eta_degree(p) != d) throw ShapeError(what + " must be a " + std::to_string(d) + "-vector");
    };
    auto shape = [&](std::size_t got, std::size_t want, const std::string& what) {
        if (got != want) throw ShapeError(what + " has the wrong number of entries");
    };
    degree(w.P, 2, "P");
    shape(w.Y.size(), l, "Y");
    shape(w.G.size(), l, "G");
    shape(w.W.size(), m, "W");
    shape(w.M.size(), m, "M");
    shape(w.Z.size(), m, "Z");
    shape(w.N.size(), l, "N");
    shape(w.U.size(), m, "U");
    shape(w.S.size(), l, "S");
    for (std::size_t a = 0; a < l; ++a) {
        shape(w.Y[a].size(), m, "Y");
        shape(w.G[a].size(), l, "G");
        for (const auto& y : w.Y[a]) degree(y, 0, "Y");
        for (const auto& g : w.G[a]) degree(g, 1, "G");
        degree(w.N[a], 2, "N");
        degree(w.S[a], 3, "S");
    }
    for (std::size_t al = 0; al < m; ++al) {
        shape(w.W[al].size(), m, "W");
        shape(w.M[al].size(), l, "M");
        for (const auto& x : w.W[al]) degree(x, 1, "W");
        for (const auto& x : w.M[al]) degree(x, 2, "M");
        degree(w.Z[al], 1, "Z");
        degree(w.U[al], 2, "U");
    }
}

struct WeakResiduals {
    std::vector<SuPoly> constraint;  // [T_a,P] + Y R + T G
    std::vector<SuPoly> gauge;       // [R_alpha,P] - W R + T M
    SuPoly drift;                    // [V,P] - Z R + T N
    SuPoly jacobi;                   // [P,P] - U R + T S
};

inline WeakResiduals weak_residuals(const WeakHamiltonianStructure& w) {
    const auto& s = w.core;
    WeakResiduals out;
    for (std::size_t a = 0; a < s.l(); ++a) {
        SuPoly r = schouten_bracket(s.T[a], w.P);
        for (std::size_t al = 0; al < s.m(); ++al) r += w.Y[a][al] * s.R[al];
        for (std::size_t b = 0; b < s.l(); ++b) r += s.T[b] * w.G[a][b];
        out.constraint.push_back(r);
    }
    for (std::size_t al = 0; al < s.m(); ++al) {
        SuPoly r = schouten_bracket(s.R[al], w.P);
        for (std::size_t be = 0; be < s.m(); ++be) r -= w.W[al][be] * s.R[be];
        for (std::size_t a = 0; a < s.l(); ++a) r += s.T[a] * w.M[al][a];
        out.gauge.push_back(r);
    }
    out.drift = schouten_bracket(s.V, w.P);
    out.jacobi = schouten_bracket(w.P, w.P);
    for (std::size_t al = 0; al < s.m(); ++al) {
        out.drift -= w.Z[al] * s.R[al];
        out.jacobi -= w.U[al] * s.R[al];
    }
    for (std::size_t a = 0; a < s.l(); ++a) {
        out.drift += s.T[a] * w.N[a];
        out.jacobi += s.T[a] * w.S[a];
    }
    return out;
}

inline Report check_weak_hamiltonian(const WeakHamiltonianStructure& w) {
    validate_weak_structure(w);
    Report rep;
    rep.command = "weak hamiltonian";
    auto res = weak_residuals(w);
    auto num = [](std::size_t i) { return std::to_string(i + 1); };
    for (std::size_t a = 0; a < res.constraint.size(); ++a) {
        const auto& r = res.constraint[a];
        rep.record("[T" + num(a) + ",P] + Y R + T G", format_canonical(r), r.is_zero());
    }
    for (std::size_t al = 0; al < res.gauge.size(); ++al) {
        const auto& r = res.gauge[al];
        rep.record("[R" + num(al) + ",P] - W R + T M", format_canonical(r), r.is_zero());
    }
    rep.record("[V,P] - Z R + T N", format_canonical(res.drift), res.drift.is_zero());
    rep.record("[P,P] - U R + T S", format_canonical(res.jacobi), res.jacobi.is_zero());
    return rep;
}

// Fills the witnesses of a bivector by bounded membership search; nullopt names the failing relation.
struct WitnessSearch {
    std::optional<WeakHamiltonianStructure> structure;
    std::string unresolved;
};

inline WitnessSearch complete_witnesses(WeakHamiltonianStructure w, unsigned degree_bound, bool require_jacobi = true) {
    const auto& s = w.core;
    const auto& fr = *s.frame;
    IdealSpec ideal = ideal_of(s);
    auto num = [](std::size_t i) { return std::to_string(i + 1); };
    for (std::size_t a = 0; a < s.l(); ++a) {
        auto x = ideal_membership_solve(schouten_bracket(s.T[a], w.P), ideal, fr, degree_bound);
        if (!x) return {std::nullopt, "[T" + num(a) + ",P]"};
        for (std::size_t al = 0; al < s.m(); ++al) w.Y[a][al] = -x->g[al];
        for (std::size_t b = 0; b < s.l(); ++b) w.G[a][b] = -x->f[b];
    }
    for (std::size_t al = 0; al < s.m(); ++al) {
        auto x = ideal_membership_solve(schouten_bracket(s.R[al], w.P), ideal, fr, degree_bound);
        if (!x) return {std::nullopt, "[R" + num(al) + ",P]"};
        w.W[al] = x->g;
        for (std::size_t a = 0; a < s.l(); ++a) w.M[al][a] = -x->f[a];
    }
    auto z = ideal_membership_solve(schouten_bracket(s.V, w.P), ideal, fr, degree_bound);
    if (!z) return {std::nullopt, "[V,P]"};
    w.Z = z->g;
    for (std::size_t a = 0; a < s.l(); ++a) w.N[a] = -z->f[a];
    auto u = ideal_membership_solve(schouten_bracket(w.P, w.P), ideal, fr, degree_bound);
    if (!u) {
        if (require_jacobi) return {std::nullopt, "[P,P]"};
    } else {
        w.U = u->g;
        for (std::size_t a = 0; a < s.l(); ++a) w.S[a] = -u->f[a];
    }
    return {std::move(w), {}};
}

struct Observable {
    SuPoly representative;
    PolyMatrix witness;  // witness[alpha][a]: R_alpha(O) = sum_a witness[alpha][a] T_a
};

inline SuPoly observable_defect(const InvolutiveSystem& s, const Observable& o, std::size_t al) {
    SuPoly r = schouten_bracket(s.R[al], o.representative);
    for (std::size_t a = 0; a < s.l(); ++a) r -= o.witness[al][a] * s.T[a];
    return r;
}

// Verifies the supplied witness.
inline Observable make_observable(const InvolutiveSystem& s, SuPoly rep, PolyMatrix witness) {
    const auto& fr = *s.frame;
    if (!rep.is_zero() && fr.eta_degree(rep) != 0) throw ShapeError("observable must be a function");
    Observable o{rep.is_zero() ? fr.zero() : std::move(rep), std::move(witness)};
    if (o.witness.empty()) o.witness = zero_matrix(s.frame, s.m(), s.l());
    for (std::size_t al = 0; al < s.m(); ++al) {
        if (!observable_defect(s, o, al).is_zero()) {
            throw ShapeError("observable witness fails for R" + std::to_string(al + 1));
        }
    }
    return o;
}

// Searches the witness within a degree bound.
inline std::optional<Observable> find_observable(const InvolutiveSystem& s, const SuPoly& rep, unsigned degree_bound) {
    PolyMatrix w = zero_matrix(s.frame, s.m(), s.l());
    IdealSpec even_only{s.T, {}};
    for (std::size_t al = 0; al < s.m(); ++al) {
        auto x = ideal_membership_solve(schouten_bracket(s.R[al], rep), even_only, *s.frame, degree_bound);
        if (!x) return std::nullopt;
        w[al] = x->f;
    }
    return make_observable(s, rep, std::move(w));
}

inline SuPoly derived_bracket(const SuPoly& P, const SuPoly& f, const SuPoly& g) {
    return schouten_bracket(schouten_bracket(P, f), g);
}

inline Observable derived_observable_bracket(const WeakHamiltonianStructure& w, const Observable& a,
                                             const Observable& b, unsigned witness_bound = 4) {
    SuPoly rep = derived_bracket(w.P, a.representative, b.representative);
    auto o = find_observable(w.core, rep, witness_bound);
    if (o) return *o;
    return {rep, {}};
}

inline SuPoly lagrange_cocycle_from_P(const PhaseSpace& ps, const WeakHamiltonianStructure& w) {
    SuPoly L = ps.tau(ps.embed(w.P));
    for (std::size_t al = 0; al < ps.m(); ++al) {
        L -= ps.lambda_bar(al) * ps.embed(w.Z[al]);
        for (std::size_t be = 0; be < ps.m(); ++be) {
            L -= ps.lambda(al) * ps.lambda_bar(be) * ps.embed(w.W[al][be]);
        }
        for (std::size_t a = 0; a < ps.l(); ++a) L += ps.lambda(al) * ps.eta_low(a) * ps.embed(w.M[al][a]);
    }
    for (std::size_t a = 0; a < ps.l(); ++a) {
        L += ps.eta_low(a) * ps.embed(w.N[a]);
        for (std::size_t al = 0; al < ps.m(); ++al) L += ps.embed(w.Y[a][al]) * ps.lambda_bar(al) * ps.eta_low_bar(a);
        for (std::size_t b = 0; b < ps.l(); ++b) L += ps.eta_low(b) * ps.eta_low_bar(a) * ps.embed(w.G[a][b]);
    }
    return L;
}

inline Report relative_cocycle_check(const PhaseSpace& ps, const SuPoly& L) {
    Report rep;
    rep.command = "relative cocycle";
    SuPoly d = koszul_tate_apply(ps, L);
    bool zero = is_total_derivative(d);
    rep.record("delta L mod D", zero ? "0" : format_canonical(d), zero);
    return rep;
}

} // namespace brstwb
