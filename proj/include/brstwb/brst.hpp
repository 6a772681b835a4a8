#pragma once

#include "phase_space.hpp"

namespace brstwb {

struct BRSTCharge {
    PhaseSpacePtr space;
    LocalFunctional functional;
    int max_rdeg_constructed = 0;

    const SuPoly& integrand() const noexcept { return functional.integrand; }
};

// Psi^alpha = 1/2 c^gamma c^beta B^alpha_{beta gamma}.
inline SuPoly psi(const PhaseSpace& ps, std::size_t al) {
    SuPoly out = ps.zero();
    for (std::size_t be = 0; be < ps.m(); ++be) {
        for (std::size_t ga = 0; ga < ps.m(); ++ga) {
            out += ps.ghost(ga) * ps.ghost(be) * ps.B(be, ga, al);
        }
    }
    return out * make_rational(1, 2);
}

// Theta^a = 1/2 c^beta c^gamma C^a_{beta gamma} + c^beta xib^b A^a_{beta b}.
inline SuPoly theta(const PhaseSpace& ps, std::size_t a) {
    SuPoly quad = ps.zero();
    for (std::size_t be = 0; be < ps.m(); ++be) {
        for (std::size_t ga = 0; ga < ps.m(); ++ga) quad += ps.ghost(be) * ps.ghost(ga) * ps.C(a, be, ga);
    }
    SuPoly out = quad * make_rational(1, 2);
    for (std::size_t be = 0; be < ps.m(); ++be) {
        for (std::size_t b = 0; b < ps.l(); ++b) out += ps.ghost(be) * ps.xi_bar(b) * ps.A(be, b, a);
    }
    return out;
}

// Coefficient of c^alpha in the charge, without the lamb_t term.
inline SuPoly gauge_block(const PhaseSpace& ps, std::size_t al) {
    SuPoly out = ps.zero();
    for (std::size_t i = 0; i < ps.n(); ++i) out += ps.R_i()[al][i] * ps.x_bar(i);
    for (std::size_t be = 0; be < ps.m(); ++be) out += ps.lambda_bar(be) * ps.E(al, be);
    for (std::size_t be = 0; be < ps.m(); ++be) {
        for (std::size_t ga = 0; ga < ps.m(); ++ga) out += ps.lambda(be) * ps.B(be, al, ga) * ps.lambda_bar(ga);
    }
    for (std::size_t a = 0; a < ps.l(); ++a) {
        for (std::size_t be = 0; be < ps.m(); ++be) out += ps.lambda(be) * ps.C(a, al, be) * ps.eta_low(a);
        out -= ps.F(a, al) * ps.eta_low(a);
        for (std::size_t b = 0; b < ps.l(); ++b) out -= ps.A(al, a, b) * ps.eta_low_bar(a) * ps.eta_low(b);
    }
    for (std::size_t j = 0; j < ps.n(); ++j) out -= ps.partial(ps.R_vec()[al], j) * ps.eta_up(j);
    return out;
}

// Coefficient of -xib^a in the charge, without the etac_t term.
inline SuPoly noether_block(const PhaseSpace& ps, std::size_t a) {
    SuPoly out = ps.zero();
    for (std::size_t b = 0; b < ps.l(); ++b) out += ps.eta_low(b) * ps.D(a, b);
    for (std::size_t al = 0; al < ps.m(); ++al) {
        for (std::size_t b = 0; b < ps.l(); ++b) out += ps.lambda(al) * ps.A(al, a, b) * ps.eta_low(b);
    }
    for (std::size_t i = 0; i < ps.n(); ++i) out -= ps.eta_up(i) * ps.partial(ps.T()[a], i);
    return out;
}

// xdot^i + V^i + lambda^alpha R^i_alpha.
inline SuPoly equation_of_motion(const PhaseSpace& ps, std::size_t i) {
    SuPoly out = ps.x(i, 1) + ps.V_i()[i];
    for (std::size_t al = 0; al < ps.m(); ++al) out += ps.lambda(al) * ps.R_i()[al][i];
    return out;
}

inline SuPoly boundary_integrand(const PhaseSpace& ps) {
    SuPoly out = ps.zero();
    for (std::size_t i = 0; i < ps.n(); ++i) out += ps.eta_bar(i) * equation_of_motion(ps, i);
    for (std::size_t a = 0; a < ps.l(); ++a) out += ps.eta_low_bar(a) * ps.T()[a];
    for (std::size_t al = 0; al < ps.m(); ++al) {
        out += ps.ghost(al) * (ps.lambda_bar(al, 1) + gauge_block(ps, al));
    }
    for (std::size_t a = 0; a < ps.l(); ++a) {
        out -= ps.xi_bar(a) * (noether_block(ps, a) + ps.eta_low(a, 1));
    }
    return out;
}

inline SuPoly second_order_integrand(const PhaseSpace& ps) {
    SuPoly out = ps.zero();
    for (std::size_t al = 0; al < ps.m(); ++al) {
        SuPoly p = psi(ps, al);
        out += ps.ghost_bar(al) * p;
        out += ps.lambda_bar(al) * ps.tau(p);
    }
    for (std::size_t a = 0; a < ps.l(); ++a) {
        SuPoly t = theta(ps, a);
        out += ps.xi_low(a) * t;
        out += ps.eta_low(a) * ps.tau(t);
    }
    return out;
}

inline void require_involutive(const PhaseSpace& ps) {
    Report inv = check_involutivity(ps.system());
    if (!inv.pass) {
        auto f = inv.failures().front();
        throw InvolutivityViolation(f.name + " = " + f.value);
    }
}

// Boundary terms only; the terms quadratic in ghosts are left to the master equation.
inline BRSTCharge build_boundary_charge(const PhaseSpacePtr& ps) {
    require_involutive(*ps);
    return {ps, {boundary_integrand(*ps)}, 1};
}

inline BRSTCharge build_classical_charge(const PhaseSpacePtr& ps) {
    require_involutive(*ps);
    return {ps, {boundary_integrand(*ps) + second_order_integrand(*ps)}, 2};
}

inline BRSTCharge build_classical_charge(const InvolutiveSystem& sys, int max_jet_order = kDefaultMaxJetOrder) {
    return build_classical_charge(make_phase_space(sys, max_jet_order));
}

inline Characteristics koszul_tate_characteristics(const PhaseSpace& ps) {
    Characteristics q;
    auto set = [&](const std::string& name, SuPoly value) {
        if (!value.is_zero()) q[ps.base(name)] = std::move(value);
    };
    const auto& xs = ps.system().frame->coordinates();
    for (std::size_t i = 0; i < ps.n(); ++i) set(PhaseSpace::eta(xs[i]), equation_of_motion(ps, i));
    for (std::size_t a = 0; a < ps.l(); ++a) set(PhaseSpace::etac(a), ps.T()[a]);
    for (std::size_t al = 0; al < ps.m(); ++al) {
        SuPoly v = ps.zero();
        for (std::size_t i = 0; i < ps.n(); ++i) v -= ps.eta_bar(i) * ps.R_i()[al][i];
        set(PhaseSpace::lamb(al), v);
    }
    for (std::size_t i = 0; i < ps.n(); ++i) {
        SuPoly v = ps.zero();
        for (std::size_t j = 0; j < ps.n(); ++j) {
            v -= ps.partial(ps.V_i()[j], i) * ps.eta_bar(j);
            for (std::size_t al = 0; al < ps.m(); ++al) {
                v -= ps.lambda(al) * ps.partial(ps.R_i()[al][j], i) * ps.eta_bar(j);
            }
        }
        for (std::size_t a = 0; a < ps.l(); ++a) v -= ps.eta_low_bar(a) * ps.partial(ps.T()[a], i);
        v += ps.eta_bar(i, 1);
        set(PhaseSpace::xb(xs[i]), v);
    }
    for (std::size_t a = 0; a < ps.l(); ++a) set(PhaseSpace::xi(a), -noether_block(ps, a) - ps.eta_low(a, 1));
    for (std::size_t al = 0; al < ps.m(); ++al) {
        set(PhaseSpace::cb(al), ps.lambda_bar(al, 1) + gauge_block(ps, al));
    }
    return q;
}

inline Characteristics longitudinal_characteristics(const PhaseSpace& ps) {
    Characteristics q;
    auto set = [&](const std::string& name, SuPoly value) {
        if (!value.is_zero()) q[ps.base(name)] = std::move(value);
    };
    const auto& xs = ps.system().frame->coordinates();
    const std::size_t n = ps.n();
    const std::size_t m = ps.m();
    const std::size_t l = ps.l();
    auto comp = [&](const SuPoly& v, std::size_t i) { return ps.d_eta_bar(v, i); };

    for (std::size_t i = 0; i < n; ++i) {
        SuPoly v = ps.zero();
        for (std::size_t al = 0; al < m; ++al) v += ps.ghost(al) * ps.R_i()[al][i];
        set(xs[i], v);
    }
    for (std::size_t al = 0; al < m; ++al) {
        SuPoly v = -ps.ghost(al, 1);
        for (std::size_t be = 0; be < m; ++be) {
            v += ps.ghost(be) * ps.E(be, al);
            for (std::size_t ga = 0; ga < m; ++ga) v += ps.ghost(ga) * ps.lambda(be) * ps.B(be, ga, al);
        }
        set(PhaseSpace::lam(al), v);
    }
    for (std::size_t al = 0; al < m; ++al) set(PhaseSpace::c(al), psi(ps, al));
    for (std::size_t i = 0; i < n; ++i) {
        SuPoly v = ps.zero();
        for (std::size_t a = 0; a < l; ++a) v += ps.xi_bar(a) * ps.partial(ps.T()[a], i);
        for (std::size_t al = 0; al < m; ++al) {
            for (std::size_t j = 0; j < n; ++j) v -= ps.ghost(al) * ps.partial(ps.R_i()[al][j], i) * ps.eta_bar(j);
        }
        set(PhaseSpace::etab(xs[i]), v);
    }
    for (std::size_t a = 0; a < l; ++a) set(PhaseSpace::xib(a), -theta(ps, a));
    for (std::size_t a = 0; a < l; ++a) {
        SuPoly v = ps.xi_bar(a, 1);
        for (std::size_t al = 0; al < m; ++al) {
            for (std::size_t be = 0; be < m; ++be) v += ps.ghost(al) * ps.lambda(be) * ps.C(a, al, be);
            v -= ps.ghost(al) * ps.F(a, al);
            for (std::size_t b = 0; b < l; ++b) v -= ps.ghost(al) * ps.A(al, b, a) * ps.eta_low_bar(b);
        }
        for (std::size_t b = 0; b < l; ++b) {
            v -= ps.xi_bar(b) * ps.D(b, a);
            for (std::size_t al = 0; al < m; ++al) v -= ps.xi_bar(b) * ps.lambda(al) * ps.A(al, b, a);
        }
        set(PhaseSpace::etacb(a), v);
    }
    for (std::size_t i = 0; i < n; ++i) {
        SuPoly v = ps.zero();
        for (std::size_t al = 0; al < m; ++al) v -= ps.ghost(al) * ps.partial(gauge_block(ps, al), i);
        for (std::size_t a = 0; a < l; ++a) v += ps.xi_bar(a) * ps.partial(noether_block(ps, a), i);
        set(PhaseSpace::xb(xs[i]), v);
    }
    for (std::size_t al = 0; al < m; ++al) {
        SuPoly v = ps.zero();
        for (std::size_t a = 0; a < l; ++a) {
            for (std::size_t b = 0; b < l; ++b) v += ps.xi_bar(a) * ps.A(al, a, b) * ps.eta_low(b);
        }
        for (std::size_t ga = 0; ga < m; ++ga) {
            for (std::size_t be = 0; be < m; ++be) v -= ps.ghost(ga) * ps.lambda_bar(be) * ps.B(al, ga, be);
            for (std::size_t a = 0; a < l; ++a) v -= ps.ghost(ga) * ps.C(a, ga, al) * ps.eta_low(a);
        }
        set(PhaseSpace::lamb(al), v);
    }
    for (std::size_t a = 0; a < l; ++a) {
        SuPoly v = ps.zero();
        for (std::size_t b = 0; b < l; ++b) {
            for (std::size_t be = 0; be < m; ++be) {
                v += ps.xi_low(b) * ps.ghost(be) * ps.A(be, a, b);
                for (std::size_t i = 0; i < n; ++i) {
                    v += ps.eta_low(b) * ps.ghost(be) * ps.eta_up(i) * ps.partial(ps.A(be, a, b), i);
                }
            }
        }
        set(PhaseSpace::xi(a), v);
    }
    for (std::size_t al = 0; al < m; ++al) {
        SuPoly v = ps.zero();
        for (std::size_t ga = 0; ga < m; ++ga) {
            for (std::size_t be = 0; be < m; ++be) {
                v += ps.ghost_bar(be) * ps.ghost(ga) * ps.B(al, ga, be);
                for (std::size_t i = 0; i < n; ++i) {
                    v -= ps.lambda_bar(be) * ps.ghost(ga) * ps.eta_up(i) * ps.partial(ps.B(al, ga, be), i);
                }
            }
            for (std::size_t a = 0; a < l; ++a) {
                const SuPoly& cv = ps.C(a, ga, al);
                v -= ps.xi_low(a) * ps.ghost(ga) * cv;
                for (std::size_t j = 0; j < n; ++j) {
                    v += ps.eta_low(a) * ps.ghost(ga) * ps.eta_up(j) * ps.partial(cv, j);
                }
                for (std::size_t i = 0; i < n; ++i) v += ps.eta_low(a) * ps.ghost(ga) * comp(cv, i) * ps.x_bar(i);
            }
        }
        for (std::size_t a = 0; a < l; ++a) {
            for (std::size_t b = 0; b < l; ++b) {
                v += ps.A(al, b, a) * ps.xi_bar(b) * ps.xi_low(a);
                for (std::size_t i = 0; i < n; ++i) {
                    v -= ps.eta_low(a) * ps.eta_up(i) * ps.partial(ps.A(al, b, a), i) * ps.xi_bar(b);
                }
            }
        }
        set(PhaseSpace::cb(al), v);
    }
    for (std::size_t i = 0; i < n; ++i) {
        SuPoly v = ps.zero();
        for (std::size_t al = 0; al < m; ++al) {
            for (std::size_t a = 0; a < l; ++a) {
                for (std::size_t be = 0; be < m; ++be) {
                    v -= ps.ghost(al) * ps.lambda(be) * comp(ps.C(a, al, be), i) * ps.eta_low(a);
                }
                v += ps.ghost(al) * comp(ps.F(a, al), i) * ps.eta_low(a);
            }
            for (std::size_t j = 0; j < n; ++j) v += ps.ghost(al) * ps.partial(ps.R_i()[al][i], j) * ps.eta_up(j);
        }
        set(PhaseSpace::eta(xs[i]), v);
    }
    for (std::size_t a = 0; a < l; ++a) {
        SuPoly v = ps.zero();
        for (std::size_t al = 0; al < m; ++al) {
            for (std::size_t b = 0; b < l; ++b) v += ps.ghost(al) * ps.A(al, a, b) * ps.eta_low(b);
        }
        set(PhaseSpace::etac(a), v);
    }
    return q;
}

inline SuPoly koszul_tate_apply(const PhaseSpace& ps, const SuPoly& f) {
    return apply_characteristics(koszul_tate_characteristics(ps), f);
}

inline SuPoly longitudinal_apply(const PhaseSpace& ps, const SuPoly& f) {
    return apply_characteristics(longitudinal_characteristics(ps), f);
}

// Components of {Omega, f} shifting the resolution degree of a homogeneous f by -1 and 0.
struct DifferentialSplit {
    SuPoly koszul_tate;
    SuPoly longitudinal;
    SuPoly rest;
};

inline DifferentialSplit split_brst_differential(const BRSTCharge& q, const SuPoly& f) {
    SuPoly s = evolutionary_field_apply(q.integrand(), f);
    DifferentialSplit out{s.roster() ? SuPoly(s.roster()) : SuPoly(), SuPoly(s.roster()), SuPoly(s.roster())};
    if (f.is_zero() || s.is_zero()) return out;
    int r = grading_of(f).rdeg;
    const Roster& ro = *s.roster();
    for (const auto& [m, c] : s.terms()) {
        int d = monomial_grading(ro, m).rdeg - r;
        if (d == -1) {
            out.koszul_tate.add_term(m, c);
        } else if (d == 0) {
            out.longitudinal.add_term(m, c);
        } else {
            out.rest.add_term(m, c);
        }
    }
    return out;
}

inline std::string format_mod_totald(const SuPoly& p) {
    return is_total_derivative(p) ? std::string("0") : format_canonical(p);
}

inline Report master_residual(const BRSTCharge& q, int rdeg_cutoff) {
    Report rep;
    rep.command = "master equation";
    SuPoly sq = functional_poisson_bracket(q.integrand(), q.integrand());
    for (int r = 0; r <= rdeg_cutoff; ++r) {
        SuPoly part = rdeg_component(sq, r);
        bool zero = is_total_derivative(part);
        rep.record("{Omega,Omega} at rdeg " + std::to_string(r), zero ? "0" : format_canonical(part), zero);
    }
    return rep;
}

inline std::vector<SuPoly> noether_identity_residual(const PhaseSpace& ps) {
    std::vector<SuPoly> out;
    for (std::size_t a = 0; a < ps.l(); ++a) {
        const SuPoly& t = ps.T()[a];
        SuPoly res = total_derivative(t);
        for (std::size_t i = 0; i < ps.n(); ++i) res -= ps.partial(t, i) * equation_of_motion(ps, i);
        for (std::size_t b = 0; b < ps.l(); ++b) {
            SuPoly coef = ps.D(a, b);
            for (std::size_t al = 0; al < ps.m(); ++al) coef += ps.lambda(al) * ps.A(al, a, b);
            res += coef * ps.T()[b];
        }
        out.push_back(res);
    }
    return out;
}

namespace detail {

// Phase-space monomials of jet order <= max_order with the given grading and total degree <= bound.
inline std::vector<Monomial> charge_ansatz(const Roster& r, const GradingVector& want, unsigned bound,
                                           int max_order = 1) {
    std::vector<VarKey> keys;
    for (std::size_t b = 0; b < r.size(); ++b) {
        for (int k = 0; k <= std::min(max_order, r.max_jet_order()); ++k) keys.push_back(make_key(b, k));
    }
    std::sort(keys.begin(), keys.end());
    std::vector<Monomial> out;
    Monomial cur;
    auto rec = [&](auto&& self, std::size_t i, unsigned left, GradingVector g) -> void {
        if (g.mdeg > want.mdeg) return;
        if (i == keys.size()) {
            if (g == want) out.push_back(cur);
            return;
        }
        self(self, i + 1, left, g);
        const auto& gv = r.grading(keys[i]);
        unsigned top = r.odd(keys[i]) ? 1u : left;
        GradingVector h = g;
        for (unsigned e = 1; e <= std::min(top, left); ++e) {
            h = h + gv;
            cur.push_back({keys[i], e});
            self(self, i + 1, left - e, h);
            cur.pop_back();
        }
    };
    rec(rec, 0, bound, GradingVector{});
    return out;
}

} // namespace detail

inline BRSTCharge extend_charge_hpt(const BRSTCharge& partial, int target_rdeg, unsigned degree_bound) {
    const PhaseSpace& ps = *partial.space;
    const RosterPtr& ro = ps.roster();
    BRSTCharge q = partial;
    bool changed = false;
    for (int r = 0; r <= target_rdeg; ++r) {
        for (int attempt = 0; attempt < 3; ++attempt) {
            SuPoly sq = functional_poisson_bracket(q.integrand(), q.integrand());
            SuPoly res = rdeg_component(sq, r);
            if (is_total_derivative(res)) break;
            if (attempt == 2) throw AnsatzExhausted(r, format_canonical(res));
            Characteristics s0 = hamiltonian_characteristics(q.integrand());
            std::vector<Monomial> ansatz;
            std::optional<std::vector<Rational>> sol;
            // Jet order 0 first; derivatives only when that fails.
            for (int order = 0; order <= 1 && !sol; ++order) {
                ansatz = detail::charge_ansatz(*ro, {1, 1, r + 1, 1}, degree_bound, order);
                if (ansatz.empty()) continue;
                PolySystem sys(ansatz.size());
                for (std::size_t k = 0; k < ansatz.size(); ++k) {
                    SuPoly x = SuPoly::monomial(ro, ansatz[k]);
                    SuPoly img = rdeg_component(apply_characteristics(s0, x), r) * Rational(2);
                    for (std::size_t b = 0; b < ro->size(); ++b) sys.add(k, b, euler_derivative(img, b));
                    sys.add(k, ro->size(), SuPoly::constant(ro, img.constant_term()));
                }
                for (std::size_t b = 0; b < ro->size(); ++b) sys.add_rhs(b, -euler_derivative(res, b));
                sys.add_rhs(ro->size(), SuPoly::constant(ro, -res.constant_term()));
                sol = sys.solve();
            }
            if (!sol) throw AnsatzExhausted(r, format_canonical(res));
            SuPoly corr(ro);
            for (std::size_t k = 0; k < ansatz.size(); ++k) corr.add_term(ansatz[k], (*sol)[k]);
            q.functional.integrand += corr;
            q.max_rdeg_constructed = std::max(q.max_rdeg_constructed, r + 1);
            changed = true;
        }
    }
    return changed ? q : partial;
}

} // namespace brstwb
