#pragma once

#include "weak_poisson.hpp"

#include <limits>

namespace brstwb {

// Ghost-extended target space: fields x, etac<a>, c<k> and their antifields.
class AntiRoster {
public:
    AntiRoster(std::vector<std::string> coordinates, std::size_t m, std::size_t l)
        : coords_(std::move(coordinates)), m_(m), l_(l) {
        std::vector<VarSpec> vars;
        std::vector<std::pair<std::string, std::string>> pairs;
        // Odd fields pair the other way round: (field, antifield) = 1.
        auto add_pair = [&](std::string f, GradingVector gf, VarClass kf, std::string a, GradingVector ga) {
            vars.push_back({f, gf, kf});
            vars.push_back({a, ga, VarClass::momentum});
            if (gf.parity != 0) {
                pairs.emplace_back(a, f);
            } else {
                pairs.emplace_back(f, a);
            }
        };
        for (const auto& x : coords_) add_pair(x, {0, 0, 0, 0}, VarClass::coordinate, xs(x), {1, 1, 0, 1});
        for (std::size_t a = 0; a < l_; ++a) add_pair(etac(a), {1, -1, 1, 0}, VarClass::ghost, etacs(a), {0, 2, 0, 1});
        for (std::size_t a = 0; a < m_; ++a) add_pair(c(a), {1, 1, 0, 0}, VarClass::ghost, cs(a), {0, 0, 1, 1});
        roster_ = make_roster(std::move(vars), std::move(pairs), 0);
    }

    static std::string xs(const std::string& x) { return "xs_" + x; }
    static std::string etac(std::size_t a) { return PhaseSpace::etac(a); }
    static std::string etacs(std::size_t a) { return "etacs" + std::to_string(a + 1); }
    static std::string c(std::size_t a) { return PhaseSpace::c(a); }
    static std::string cs(std::size_t a) { return "cs" + std::to_string(a + 1); }

    const RosterPtr& roster() const noexcept { return roster_; }
    const std::vector<std::string>& coordinates() const noexcept { return coords_; }
    std::size_t n() const noexcept { return coords_.size(); }
    std::size_t m() const noexcept { return m_; }
    std::size_t l() const noexcept { return l_; }

    SuPoly var(const std::string& name) const { return SuPoly::variable(roster_, name); }
    SuPoly zero() const { return SuPoly(roster_); }
    SuPoly parse(std::string_view text) const { return parse_expression(text, roster_); }

    // Polyvectors become functions of x and x*.
    SuPoly from_polyvector(const SuPoly& p) const {
        if (p.is_zero()) return zero();
        const Roster& src = *p.roster();
        return substitute(p, roster_, [&](VarKey k) {
            const std::string& name = src.base(key_base(k)).name;
            for (const auto& x : coords_) {
                if (name == x) return var(x);
                if (name == PolyvectorFrame::frame_name(x)) return var(xs(x));
            }
            throw ShapeError("no antispace image for '" + name + "'");
        });
    }

private:
    std::vector<std::string> coords_;
    std::size_t m_;
    std::size_t l_;
    RosterPtr roster_;
};

using AntiRosterPtr = std::shared_ptr<const AntiRoster>;

inline SuPoly antibracket(const SuPoly& f, const SuPoly& g) {
    if (f.roster() && g.roster() && !same_roster(f.roster(), g.roster())) throw RosterMismatch();
    return odd_bracket(f, g);
}

struct GeneratingPair {
    AntiRosterPtr anti;
    SuPoly S;
    SuPoly Gamma;
};

// S = etacs^a T_a + xs_i R^i_alpha c^alpha + P(x, xs), Gamma = xs_i V^i.
inline GeneratingPair default_generators(const InvolutiveSystem& sys, const SuPoly& P = SuPoly()) {
    auto anti = std::make_shared<const AntiRoster>(sys.frame->coordinates(), sys.m(), sys.l());
    SuPoly S = anti->zero();
    for (std::size_t a = 0; a < sys.l(); ++a) S += anti->var(AntiRoster::etacs(a)) * anti->from_polyvector(sys.T[a]);
    for (std::size_t al = 0; al < sys.m(); ++al) S += anti->from_polyvector(sys.R[al]) * anti->var(AntiRoster::c(al));
    if (!P.is_zero()) S += anti->from_polyvector(P);
    SuPoly G = anti->from_polyvector(sys.V);
    return {anti, S, G};
}

inline GeneratingPair default_generators(const WeakHamiltonianStructure& w) { return default_generators(w.core, w.P); }

inline Report check_generating_masters(const GeneratingPair& gp) {
    Report rep;
    rep.command = "generating masters";
    auto graded = [&](const SuPoly& f, int parity, int ghost, const std::string& what) {
        if (f.is_zero()) return;
        const Roster& r = *f.roster();
        for (const auto& [m, c] : f.terms()) {
            auto g = monomial_grading(r, m);
            if (g.parity != parity || g.ghost != ghost || g.mdeg <= 0) {
                rep.record_failure(what + " grading", format_monomial(r, m) + " has " + to_string(g));
                return;
            }
        }
    };
    graded(gp.S, 0, 2, "S");
    graded(gp.Gamma, 1, 1, "Gamma");
    SuPoly ss = antibracket(gp.S, gp.S);
    SuPoly sg = antibracket(gp.S, gp.Gamma);
    rep.record("(S,S)", format_canonical(ss), ss.is_zero());
    rep.record("(S,Gamma)", format_canonical(sg), sg.is_zero());
    return rep;
}

namespace detail {

struct ComponentImage {
    SuPoly zero;    // lowest component
    SuPoly weight;  // coefficient of theta
};

inline std::map<std::size_t, ComponentImage> component_images(const AntiRoster& anti, const PhaseSpace& ps) {
    std::map<std::size_t, ComponentImage> out;
    const Roster& r = *anti.roster();
    for (std::size_t i = 0; i < anti.n(); ++i) {
        out[r.require(anti.coordinates()[i])] = {ps.x(i), ps.eta_up(i)};
        out[r.require(AntiRoster::xs(anti.coordinates()[i]))] = {ps.eta_bar(i), ps.x_bar(i)};
    }
    for (std::size_t a = 0; a < anti.l(); ++a) {
        out[r.require(AntiRoster::etac(a))] = {ps.eta_low(a), -ps.xi_low(a)};
        out[r.require(AntiRoster::etacs(a))] = {ps.xi_bar(a), ps.eta_low_bar(a)};
    }
    for (std::size_t al = 0; al < anti.m(); ++al) {
        out[r.require(AntiRoster::c(al))] = {ps.ghost(al), -ps.lambda(al)};
        out[r.require(AntiRoster::cs(al))] = {ps.lambda_bar(al), ps.ghost_bar(al)};
    }
    return out;
}

inline void require_compatible(const AntiRoster& anti, const PhaseSpace& ps) {
    if (anti.coordinates() != ps.system().frame->coordinates() || anti.m() != ps.m() || anti.l() != ps.l()) {
        throw RosterMismatch();
    }
}

} // namespace detail

// Lowest superfield component of F.
inline SuPoly lowest_component(const AntiRoster& anti, const PhaseSpace& ps, const SuPoly& F) {
    detail::require_compatible(anti, ps);
    if (F.is_zero()) return ps.zero();
    auto img = detail::component_images(anti, ps);
    return substitute(F, ps.roster(), [&](VarKey k) { return img.at(key_base(k)).zero; });
}

// Integrand of h(F) = int dt dtheta F(phi(t,theta), phi*(t,theta)).
inline SuPoly superfield_integral(const AntiRoster& anti, const PhaseSpace& ps, const SuPoly& F) {
    detail::require_compatible(anti, ps);
    SuPoly out = ps.zero();
    if (F.is_zero()) return out;
    auto img = detail::component_images(anti, ps);
    auto low = [&](VarKey k) { return img.at(key_base(k)).zero; };
    for (std::size_t b = 0; b < anti.roster()->size(); ++b) {
        SuPoly d = derive_left(F, make_key(b, 0));
        if (d.is_zero()) continue;
        out += img.at(b).weight * substitute(d, ps.roster(), low);
    }
    return out;
}

// sum (-1)^eps phi*_0 d/dt phi_0.
inline SuPoly superfield_kinetic(const PhaseSpace& ps) {
    SuPoly out = ps.zero();
    for (std::size_t i = 0; i < ps.n(); ++i) out += ps.eta_bar(i) * ps.x(i, 1);
    for (std::size_t a = 0; a < ps.l(); ++a) out -= ps.xi_bar(a) * ps.eta_low(a, 1);
    for (std::size_t al = 0; al < ps.m(); ++al) out -= ps.lambda_bar(al) * ps.ghost(al, 1);
    return out;
}

inline BRSTCharge charge_from_generators(const GeneratingPair& gp, const PhaseSpacePtr& ps) {
    Report masters = check_generating_masters(gp);
    if (!masters.pass) {
        auto f = masters.failures().front();
        throw MasterViolation(f.name + " = " + f.value);
    }
    SuPoly omega = superfield_kinetic(*ps) + superfield_integral(*gp.anti, *ps, gp.S) +
                   lowest_component(*gp.anti, *ps, gp.Gamma);
    return {ps, {omega}, std::numeric_limits<int>::max()};
}

// Phase space with the dimensions of the pair; structure data left empty.
inline PhaseSpacePtr skeleton_phase_space(const AntiRoster& anti, int max_jet_order = kDefaultMaxJetOrder) {
    auto frame = make_frame(anti.coordinates());
    InvolutiveSystem sys = make_system(frame, frame->zero(), std::vector<SuPoly>(anti.m(), frame->zero()),
                                       std::vector<SuPoly>(anti.l(), frame->zero()));
    return make_phase_space(std::move(sys), max_jet_order);
}

inline BRSTCharge charge_from_generators(const GeneratingPair& gp) {
    return charge_from_generators(gp, skeleton_phase_space(*gp.anti));
}

// {Omega,Omega} over all degrees at once.
inline Report total_master_residual(const BRSTCharge& q) {
    Report rep;
    rep.command = "master equation";
    SuPoly sq = functional_poisson_bracket(q.integrand(), q.integrand());
    rep.record("{Omega,Omega}", format_mod_totald(sq), is_total_derivative(sq));
    return rep;
}

inline SuPoly momentum_component(const BRSTCharge& q, int mdeg) { return mdeg_component(q.integrand(), mdeg); }

// {...{Omega_n, a_1}, ..., a_n}; zero when Omega has no component of momentum degree n.
inline LocalFunctional multibracket(const BRSTCharge& q, std::size_t n, const std::vector<LocalFunctional>& args,
                                    std::vector<std::string>* warnings = nullptr) {
    if (args.size() != n) throw ShapeError("multibracket expects " + std::to_string(n) + " arguments");
    for (const auto& a : args) {
        if (!(mdeg_component(a.integrand, 0) == a.integrand)) {
            throw ShapeError("multibracket arguments must have momentum degree 0");
        }
    }
    SuPoly acc = momentum_component(q, static_cast<int>(n));
    if (acc.is_zero()) {
        if (warnings) warnings->push_back("charge has no momentum-degree " + std::to_string(n) + " component");
        return {q.space->zero()};
    }
    for (const auto& a : args) acc = functional_poisson_bracket(acc, a.integrand);
    return {acc};
}

inline LocalFunctional weak_antibracket(const BRSTCharge& q, const LocalFunctional& a, const LocalFunctional& b) {
    return multibracket(q, 2, {a, b});
}

// s_0 a = {Omega_1, a}.
inline LocalFunctional classical_differential(const BRSTCharge& q, const LocalFunctional& a) {
    return multibracket(q, 1, {a});
}

inline int functional_parity(const LocalFunctional& a) {
    const SuPoly& f = a.integrand;
    if (f.is_zero()) return 0;
    int e = -1;
    for (const auto& [m, c] : f.terms()) {
        int p = monomial_grading(*f.roster(), m).parity;
        if (e >= 0 && p != e) throw InhomogeneousError("functional mixes parities");
        e = p;
    }
    return e;
}

// (a,b) - (-1)^{e(a)e(b)} (b,a).
inline SuPoly antibracket_symmetry_residual(const BRSTCharge& q, const LocalFunctional& a, const LocalFunctional& b) {
    SuPoly ab = weak_antibracket(q, a, b).integrand;
    SuPoly ba = weak_antibracket(q, b, a).integrand;
    return (functional_parity(a) && functional_parity(b)) ? ab + ba : ab - ba;
}

// s_0(a,b) + (s_0 a, b) + (-1)^{e(a)} (a, s_0 b).
inline SuPoly leibniz_residual(const BRSTCharge& q, const LocalFunctional& a, const LocalFunctional& b) {
    SuPoly out = classical_differential(q, weak_antibracket(q, a, b)).integrand;
    out += weak_antibracket(q, classical_differential(q, a), b).integrand;
    SuPoly last = weak_antibracket(q, a, classical_differential(q, b)).integrand;
    if (functional_parity(a)) {
        out -= last;
    } else {
        out += last;
    }
    return out;
}

// Cyclic sum of double 2-brackets plus the deviation built from Omega_3.
inline SuPoly weak_jacobi_residual(const BRSTCharge& q, const LocalFunctional& a, const LocalFunctional& b,
                                   const LocalFunctional& c) {
    int ea = functional_parity(a);
    int eb = functional_parity(b);
    int ec = functional_parity(c);
    auto sign = [](int e) { return (e & 1) ? Rational(-1) : Rational(1); };
    auto br = [&](const LocalFunctional& u, const LocalFunctional& v) { return weak_antibracket(q, u, v); };
    SuPoly out = br(br(a, b), c).integrand;
    out += sign(eb * ec) * br(br(a, c), b).integrand;
    out += sign(ea * (eb + ec)) * br(br(b, c), a).integrand;
    auto tri = [&](const LocalFunctional& u, const LocalFunctional& v, const LocalFunctional& w) {
        return multibracket(q, 3, {u, v, w}).integrand;
    };
    auto s0 = [&](const LocalFunctional& u) { return classical_differential(q, u); };
    SuPoly delta = classical_differential(q, {tri(a, b, c)}).integrand;
    delta += tri(s0(a), b, c);
    delta += sign(ea * eb) * tri(a, s0(b), c);
    delta += sign((ea + eb) * ec) * tri(a, b, s0(c));
    return out + delta;
}

// {a,b} = ((S_2, a), b) on functions of momentum degree 0.
inline SuPoly weak_poisson_bracket(const GeneratingPair& gp, const SuPoly& a, const SuPoly& b) {
    SuPoly s2 = mdeg_component(gp.S, 2);
    return antibracket(antibracket(s2, a), b);
}

} // namespace brstwb
