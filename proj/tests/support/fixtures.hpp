#pragma once

#include <brstwb/workbench.hpp>

#include <random>
#include <string>
#include <vector>

namespace brstwb::testing {

inline InvolutiveSystem circle_system() {
    auto fr = make_frame({"x", "y"});
    auto s = make_system(fr, fr->zero(), {fr->parse("-y*etab_x + x*etab_y")}, {fr->parse("x^2 + y^2 - 1")});
    s.sigma_points = {{1, 0}, {0, 1}, {Rational(3, 5), Rational(4, 5)}};
    return s;
}

// Rotation drift on the plane, no gauge fields and no constraints.
inline InvolutiveSystem rotating_plane() {
    auto fr = make_frame({"x", "y"});
    return make_system(fr, fr->parse("y*etab_x - x*etab_y"), {}, {});
}

inline SuPoly plane_bivector(const InvolutiveSystem& s) { return s.frame->parse("etab_x*etab_y"); }

inline InvolutiveSystem free_plane() {
    auto fr = make_frame({"x", "y"});
    return make_system(fr, fr->zero(), {}, {});
}

// Gauge field with a drift that forces a correction beyond the classical charge.
inline InvolutiveSystem correction_system() {
    auto fr = make_frame({"x1", "x2", "x3"});
    auto s = make_system(fr, fr->parse("x3*etab_x2"),
                         {fr->parse("etab_x1 + x3^3*etab_x3"), fr->parse("etab_x2 + x2*x3^2*etab_x3")},
                         {fr->parse("x3")});
    auto found = discover_structure(std::move(s), 3);
    return *found.system;
}

// Uniform pick from a list of variable keys with bounded degree and coefficients.
class PolyGenerator {
public:
    PolyGenerator(RosterPtr roster, std::vector<VarKey> keys, unsigned seed)
        : roster_(std::move(roster)), keys_(std::move(keys)), rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Monomial monomial(unsigned max_degree) {
        SuPoly p = SuPoly::constant(roster_, 1);
        unsigned d = static_cast<unsigned>(uniform(0, static_cast<int>(max_degree)));
        for (unsigned i = 0; i < d; ++i) {
            p = p * SuPoly::variable(roster_, keys_[static_cast<std::size_t>(uniform(0, static_cast<int>(keys_.size()) - 1))]);
        }
        return p.is_zero() ? Monomial{} : p.terms().begin()->first;
    }

    // parity < 0 keeps every term.
    SuPoly poly(unsigned max_terms, unsigned max_degree, int parity = -1) {
        SuPoly out(roster_);
        unsigned terms = static_cast<unsigned>(uniform(1, static_cast<int>(max_terms)));
        for (unsigned t = 0; t < terms; ++t) {
            Monomial m = monomial(max_degree);
            if (parity >= 0 && monomial_grading(*roster_, m).parity != parity) continue;
            int c = uniform(-3, 3);
            out.add_term(m, Rational(c == 0 ? 1 : c));
        }
        return out;
    }

    // Nonzero up to a bounded number of retries.
    SuPoly nonzero(unsigned max_terms, unsigned max_degree, int parity = -1) {
        for (int k = 0; k < 50; ++k) {
            SuPoly p = poly(max_terms, max_degree, parity);
            if (!p.is_zero()) return p;
        }
        return SuPoly::constant(roster_, 1);
    }

    std::mt19937& engine() { return rng_; }

private:
    RosterPtr roster_;
    std::vector<VarKey> keys_;
    std::mt19937 rng_;
};

inline std::vector<VarKey> keys_up_to(const Roster& r, int order, const std::vector<std::string>& names = {}) {
    std::vector<VarKey> out;
    for (std::size_t b = 0; b < r.size(); ++b) {
        if (!names.empty() && std::find(names.begin(), names.end(), r.base(b).name) == names.end()) continue;
        for (int k = 0; k <= std::min(order, r.max_jet_order()); ++k) out.push_back(make_key(b, k));
    }
    return out;
}

// Homogeneous polyvector of frame degree p and coefficient degree <= d.
inline SuPoly random_polyvector(const PolyvectorFrame& fr, std::mt19937& rng, std::size_t p, unsigned d,
                                std::size_t max_terms = 3) {
    auto basis = fr.basis(p, d);
    SuPoly out = fr.zero();
    if (basis.empty()) return out;
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::size_t terms = std::uniform_int_distribution<std::size_t>(1, max_terms)(rng);
    for (std::size_t t = 0; t < terms; ++t) {
        int c = coef(rng);
        out += Rational(c == 0 ? 1 : c) * basis[pick(rng)];
    }
    return out;
}

// Hamiltonian data of a three-dimensional Lie algebra with a quadratic Casimir.
struct LiePoissonData {
    InvolutiveSystem system;
    std::string algebra;
    std::string hamiltonian;
};

inline LiePoissonData lie_poisson_system(unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(-2, 2);
    auto fr = make_frame({"x1", "x2", "x3"});
    bool so3 = (seed % 2) == 0;
    SuPoly pi = so3 ? fr->parse("x1*etab_x2*etab_x3 + x2*etab_x3*etab_x1 + x3*etab_x1*etab_x2")
                    : fr->parse("-x3*etab_x1*etab_x2 + x1*etab_x2*etab_x3 + x2*etab_x3*etab_x1");
    SuPoly casimir = so3 ? fr->parse("x1^2 + x2^2 + x3^2") : fr->parse("x1^2 + x2^2 - x3^2");
    SuPoly H = fr->zero();
    for (std::size_t i = 0; i < 3; ++i) {
        int a = coef(rng);
        H += Rational(a) * fr->coordinate(i);
        int b = coef(rng);
        H += Rational(b) * fr->coordinate(i) * fr->coordinate((i + 1) % 3);
    }
    if (H.is_zero()) H = fr->coordinate(0);
    SuPoly R = schouten_bracket(pi, H);
    SuPoly T = casimir - fr->constant(std::uniform_int_distribution<int>(1, 4)(rng));
    // Drift along a function of the gauge Hamiltonian keeps the algebra closed.
    SuPoly V = Rational(coef(rng)) * schouten_bracket(pi, H * H);
    auto s = make_system(fr, V, {R}, {T});
    auto found = discover_structure(std::move(s), 4);
    if (!found.system) throw Error("Lie-Poisson structure not resolved: " + found.unresolved);
    return {*found.system, so3 ? "so(3)" : "sl(2)", format_canonical(H)};
}

} // namespace brstwb::testing
