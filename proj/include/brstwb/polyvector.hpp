#pragma once

#include "expression.hpp"
#include "linear_algebra.hpp"
#include "odd_bracket.hpp"
#include "poly_system.hpp"
#include "report.hpp"

#include <memory>
#include <string>
#include <vector>

namespace brstwb {

// Polyvectors on R^n as polynomials in x^i and odd frame variables etab_<x>.
class PolyvectorFrame {
public:
    explicit PolyvectorFrame(std::vector<std::string> coordinates) : names_(std::move(coordinates)) {
        std::vector<VarSpec> vars;
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& x : names_) vars.push_back(even_var(x));
        for (const auto& x : names_) {
            vars.push_back({frame_name(x), {1, 1, 0, 1}, VarClass::momentum});
            pairs.emplace_back(x, frame_name(x));
        }
        roster_ = make_roster(std::move(vars), std::move(pairs));
        for (const auto& x : names_) {
            coord_keys_.push_back(roster_->key(x));
            frame_keys_.push_back(roster_->key(frame_name(x)));
        }
    }

    static std::string frame_name(const std::string& coordinate) { return "etab_" + coordinate; }

    std::size_t dim() const noexcept { return names_.size(); }
    const RosterPtr& roster() const noexcept { return roster_; }
    const std::vector<std::string>& coordinates() const noexcept { return names_; }
    VarKey coordinate_key(std::size_t i) const { return coord_keys_.at(i); }
    VarKey frame_key(std::size_t i) const { return frame_keys_.at(i); }
    const std::vector<VarKey>& coordinate_keys() const noexcept { return coord_keys_; }
    const std::vector<VarKey>& frame_keys() const noexcept { return frame_keys_; }

    SuPoly zero() const { return SuPoly(roster_); }
    SuPoly constant(const Rational& q) const { return SuPoly::constant(roster_, q); }
    SuPoly coordinate(std::size_t i) const { return SuPoly::variable(roster_, coord_keys_.at(i)); }
    SuPoly frame(std::size_t i) const { return SuPoly::variable(roster_, frame_keys_.at(i)); }
    SuPoly parse(std::string_view text) const { return parse_expression(text, roster_); }

    // Coefficient function of a 1-vector along d/dx^i.
    SuPoly component(const SuPoly& v, std::size_t i) const { return derive_left(v, frame_keys_.at(i)); }
    SuPoly partial(const SuPoly& f, std::size_t i) const { return derive_left(f, coord_keys_.at(i)); }

    // Vector field with the given components.
    SuPoly vector_field(const std::vector<SuPoly>& components) const {
        SuPoly v(roster_);
        for (std::size_t i = 0; i < components.size() && i < dim(); ++i) v += components[i] * frame(i);
        return v;
    }

    // Homogeneous frame degree; -1 for zero.
    int eta_degree(const SuPoly& p) const {
        if (p.is_zero()) return -1;
        int deg = -1;
        for (const auto& [m, c] : p.terms()) {
            int d = 0;
            for (const auto& f : m) d += roster_->odd(f.var) ? 1 : 0;
            if (deg < 0) {
                deg = d;
            } else if (deg != d) {
                throw InhomogeneousError("polyvector mixes frame degrees " + std::to_string(deg) +
                                         " and " + std::to_string(d));
            }
        }
        return deg;
    }

    // Basis p-vectors with coefficient degree at most d.
    std::vector<SuPoly> basis(std::size_t p, unsigned d) const {
        std::vector<SuPoly> out;
        auto coeffs = monomials_up_to(coord_keys_, d);
        auto frames = odd_products(frame_keys_, p);
        for (const auto& c : coeffs) {
            for (const auto& f : frames) {
                Monomial m = c;
                m.insert(m.end(), f.begin(), f.end());
                out.push_back(SuPoly::monomial(roster_, std::move(m)));
            }
        }
        return out;
    }

private:
    std::vector<std::string> names_;
    RosterPtr roster_;
    std::vector<VarKey> coord_keys_;
    std::vector<VarKey> frame_keys_;
};

using FramePtr = std::shared_ptr<const PolyvectorFrame>;

inline FramePtr make_frame(std::vector<std::string> coordinates) {
    return std::make_shared<const PolyvectorFrame>(std::move(coordinates));
}

inline SuPoly schouten_bracket(const SuPoly& a, const SuPoly& b) {
    if (a.roster() && b.roster() && !same_roster(a.roster(), b.roster())) {
        throw DimensionMismatch("Schouten bracket of polyvectors on different spaces");
    }
    return odd_bracket(a, b);
}

using PolyMatrix = std::vector<std::vector<SuPoly>>;
using PolyTensor3 = std::vector<std::vector<std::vector<SuPoly>>>;

inline PolyMatrix zero_matrix(const FramePtr& f, std::size_t r, std::size_t c) {
    return PolyMatrix(r, std::vector<SuPoly>(c, f->zero()));
}

inline PolyTensor3 zero_tensor(const FramePtr& f, std::size_t r, std::size_t c, std::size_t d) {
    return PolyTensor3(r, zero_matrix(f, c, d));
}

struct InvolutiveSystem {
    FramePtr frame;
    SuPoly V;
    std::vector<SuPoly> R;
    std::vector<SuPoly> T;
    PolyTensor3 A;  // A[alpha][a][b]: coefficient of T_b in [R_alpha, T_a]
    PolyTensor3 B;  // B[alpha][beta][gamma]: coefficient of R_gamma in [R_alpha, R_beta]
    PolyTensor3 C;  // C[a][alpha][beta]: 1-vector, [R_alpha, R_beta] carries -T_a C
    PolyMatrix D;   // D[a][b]: coefficient of T_b in [V, T_a]
    PolyMatrix E;   // E[alpha][beta]: coefficient of R_beta in [V, R_alpha]
    PolyMatrix F;   // F[a][alpha]: 1-vector, [V, R_alpha] carries -T_a F
    std::vector<std::vector<Rational>> sigma_points;

    std::size_t n() const { return frame->dim(); }
    std::size_t m() const { return R.size(); }
    std::size_t l() const { return T.size(); }
};

// System with all structure functions zero.
inline InvolutiveSystem make_system(FramePtr frame, SuPoly V, std::vector<SuPoly> R, std::vector<SuPoly> T) {
    InvolutiveSystem s;
    s.frame = frame;
    s.V = V.is_zero() ? frame->zero() : std::move(V);
    s.R = std::move(R);
    s.T = std::move(T);
    std::size_t m = s.R.size();
    std::size_t l = s.T.size();
    s.A = zero_tensor(frame, m, l, l);
    s.B = zero_tensor(frame, m, m, m);
    s.C = zero_tensor(frame, l, m, m);
    s.D = zero_matrix(frame, l, l);
    s.E = zero_matrix(frame, m, m);
    s.F = zero_matrix(frame, l, m);
    return s;
}

inline void validate_system(const InvolutiveSystem& s) {
    if (!s.frame) throw ShapeError("system has no coordinate frame");
    const auto& fr = *s.frame;
    std::size_t m = s.m();
    std::size_t l = s.l();
    auto expect_degree = [&](const SuPoly& p, int deg, const std::string& what) {
        if (p.is_zero()) return;
        if (!same_roster(p.roster(), fr.roster())) throw ShapeError(what + " lives on a different space");
        int d = fr.eta_degree(p);
        if (d != deg) {
            throw ShapeError(what + " must be a " + std::to_string(deg) + "-vector, got a " +
                             std::to_string(d) + "-vector");
        }
    };
    auto expect_shape = [&](std::size_t got, std::size_t want, const std::string& what) {
        if (got != want) {
            throw ShapeError(what + " has " + std::to_string(got) + " entries, expected " +
                             std::to_string(want));
        }
    };
    expect_degree(s.V, 1, "V");
    for (std::size_t a = 0; a < m; ++a) expect_degree(s.R[a], 1, "R" + std::to_string(a + 1));
    for (std::size_t a = 0; a < l; ++a) expect_degree(s.T[a], 0, "T" + std::to_string(a + 1));
    expect_shape(s.A.size(), m, "A");
    for (const auto& row : s.A) {
        expect_shape(row.size(), l, "A");
        for (const auto& r : row) {
            expect_shape(r.size(), l, "A");
            for (const auto& x : r) expect_degree(x, 0, "A");
        }
    }
    expect_shape(s.B.size(), m, "B");
    for (std::size_t a = 0; a < m; ++a) {
        expect_shape(s.B[a].size(), m, "B");
        for (std::size_t b = 0; b < m; ++b) {
            expect_shape(s.B[a][b].size(), m, "B");
            for (std::size_t g = 0; g < m; ++g) {
                expect_degree(s.B[a][b][g], 0, "B");
                if (!(s.B[a][b][g] + s.B[b][a][g]).is_zero()) throw ShapeError("B is not antisymmetric");
            }
        }
    }
    expect_shape(s.C.size(), l, "C");
    for (std::size_t c = 0; c < l; ++c) {
        expect_shape(s.C[c].size(), m, "C");
        for (std::size_t a = 0; a < m; ++a) {
            expect_shape(s.C[c][a].size(), m, "C");
            for (std::size_t b = 0; b < m; ++b) {
                expect_degree(s.C[c][a][b], 1, "C");
                if (!(s.C[c][a][b] + s.C[c][b][a]).is_zero()) throw ShapeError("C is not antisymmetric");
            }
        }
    }
    expect_shape(s.D.size(), l, "D");
    for (const auto& row : s.D) {
        expect_shape(row.size(), l, "D");
        for (const auto& x : row) expect_degree(x, 0, "D");
    }
    expect_shape(s.E.size(), m, "E");
    for (const auto& row : s.E) {
        expect_shape(row.size(), m, "E");
        for (const auto& x : row) expect_degree(x, 0, "E");
    }
    expect_shape(s.F.size(), l, "F");
    for (const auto& row : s.F) {
        expect_shape(row.size(), m, "F");
        for (const auto& x : row) expect_degree(x, 1, "F");
    }
    for (const auto& pt : s.sigma_points) expect_shape(pt.size(), s.n(), "sigma point");
}

struct InvolutivityResiduals {
    PolyMatrix gauge_constraint;  // [alpha][a]
    PolyMatrix gauge_gauge;       // [alpha][beta], alpha < beta filled
    std::vector<SuPoly> drift_constraint;
    std::vector<SuPoly> drift_gauge;
};

inline InvolutivityResiduals involutivity_residuals(const InvolutiveSystem& s) {
    const auto& fr = s.frame;
    std::size_t m = s.m();
    std::size_t l = s.l();
    InvolutivityResiduals out;
    out.gauge_constraint = zero_matrix(fr, m, l);
    out.gauge_gauge = zero_matrix(fr, m, m);
    out.drift_constraint.assign(l, fr->zero());
    out.drift_gauge.assign(m, fr->zero());
    for (std::size_t al = 0; al < m; ++al) {
        for (std::size_t a = 0; a < l; ++a) {
            SuPoly r = schouten_bracket(s.R[al], s.T[a]);
            for (std::size_t b = 0; b < l; ++b) r -= s.A[al][a][b] * s.T[b];
            out.gauge_constraint[al][a] = r;
        }
        for (std::size_t be = al + 1; be < m; ++be) {
            SuPoly r = schouten_bracket(s.R[al], s.R[be]);
            for (std::size_t g = 0; g < m; ++g) r -= s.B[al][be][g] * s.R[g];
            for (std::size_t a = 0; a < l; ++a) r += s.T[a] * s.C[a][al][be];
            out.gauge_gauge[al][be] = r;
        }
        SuPoly r = schouten_bracket(s.V, s.R[al]);
        for (std::size_t be = 0; be < m; ++be) r -= s.E[al][be] * s.R[be];
        for (std::size_t a = 0; a < l; ++a) r += s.T[a] * s.F[a][al];
        out.drift_gauge[al] = r;
    }
    for (std::size_t a = 0; a < l; ++a) {
        SuPoly r = schouten_bracket(s.V, s.T[a]);
        for (std::size_t b = 0; b < l; ++b) r -= s.D[a][b] * s.T[b];
        out.drift_constraint[a] = r;
    }
    return out;
}

inline Report check_involutivity(const InvolutiveSystem& s) {
    Report rep;
    rep.command = "involutivity";
    auto res = involutivity_residuals(s);
    auto num = [](std::size_t i) { return std::to_string(i + 1); };
    for (std::size_t al = 0; al < s.m(); ++al) {
        for (std::size_t a = 0; a < s.l(); ++a) {
            const auto& r = res.gauge_constraint[al][a];
            rep.record("[R" + num(al) + ",T" + num(a) + "] - A T", format_canonical(r), r.is_zero());
        }
    }
    for (std::size_t al = 0; al < s.m(); ++al) {
        for (std::size_t be = al + 1; be < s.m(); ++be) {
            const auto& r = res.gauge_gauge[al][be];
            rep.record("[R" + num(al) + ",R" + num(be) + "] - B R + T C", format_canonical(r), r.is_zero());
        }
    }
    for (std::size_t a = 0; a < s.l(); ++a) {
        const auto& r = res.drift_constraint[a];
        rep.record("[V,T" + num(a) + "] - D T", format_canonical(r), r.is_zero());
    }
    for (std::size_t al = 0; al < s.m(); ++al) {
        const auto& r = res.drift_gauge[al];
        rep.record("[V,R" + num(al) + "] - E R + T F", format_canonical(r), r.is_zero());
    }
    return rep;
}

inline std::size_t matrix_rank(const std::vector<std::vector<Rational>>& rows) {
    std::vector<SparseVector> vs;
    for (const auto& row : rows) {
        SparseVector v;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!is_zero(row[j])) v[j] = row[j];
        }
        vs.push_back(std::move(v));
    }
    return rank_of(vs);
}

inline std::string format_point(const std::vector<Rational>& pt) {
    std::string s = "(";
    for (std::size_t i = 0; i < pt.size(); ++i) {
        if (i) s += ", ";
        s += pt[i].get_str();
    }
    return s + ")";
}

inline std::map<VarKey, Rational> point_map(const PolyvectorFrame& fr, const std::vector<Rational>& pt) {
    std::map<VarKey, Rational> out;
    for (std::size_t i = 0; i < fr.dim(); ++i) out[fr.coordinate_key(i)] = pt.at(i);
    return out;
}

inline Report check_rank(const InvolutiveSystem& s) {
    Report rep;
    rep.command = "rank";
    const auto& fr = *s.frame;
    if (s.sigma_points.empty() && (s.l() > 0 || s.m() > 0)) {
        rep.record_failure("sigma points", "none supplied");
        return rep;
    }
    for (const auto& pt : s.sigma_points) {
        auto at = point_map(fr, pt);
        for (std::size_t a = 0; a < s.l(); ++a) {
            Rational v = evaluate(s.T[a], at);
            if (!is_zero(v)) {
                throw PointNotOnSurface("T" + std::to_string(a + 1) + " = " + v.get_str() + " at " +
                                        format_point(pt));
            }
        }
        std::vector<std::vector<Rational>> dT;
        for (std::size_t a = 0; a < s.l(); ++a) {
            std::vector<Rational> row;
            for (std::size_t i = 0; i < s.n(); ++i) row.push_back(evaluate(fr.partial(s.T[a], i), at));
            dT.push_back(std::move(row));
        }
        std::vector<std::vector<Rational>> Rm;
        for (std::size_t al = 0; al < s.m(); ++al) {
            std::vector<Rational> row;
            for (std::size_t i = 0; i < s.n(); ++i) row.push_back(evaluate(fr.component(s.R[al], i), at));
            Rm.push_back(std::move(row));
        }
        std::size_t rt = matrix_rank(dT);
        std::size_t rr = matrix_rank(Rm);
        rep.record("rank dT at " + format_point(pt), std::to_string(rt) + " of " + std::to_string(s.l()),
                   rt == s.l());
        rep.record("rank R at " + format_point(pt), std::to_string(rr) + " of " + std::to_string(s.m()),
                   rr == s.m());
    }
    return rep;
}

struct GaugeVariation {
    RosterPtr roster;  // coordinates, multipliers lam<k>, parameters eps<k>
    std::vector<SuPoly> delta_x;
    std::vector<SuPoly> delta_lambda;
};

inline std::string multiplier_name(std::size_t alpha) { return "lam" + std::to_string(alpha + 1); }

inline GaugeVariation gauge_variation(const InvolutiveSystem& s) {
    std::vector<VarSpec> vars;
    for (const auto& x : s.frame->coordinates()) vars.push_back(even_var(x));
    for (std::size_t al = 0; al < s.m(); ++al) vars.push_back(even_var(multiplier_name(al), VarClass::multiplier));
    for (std::size_t al = 0; al < s.m(); ++al) {
        vars.push_back(even_var("eps" + std::to_string(al + 1), VarClass::parameter));
    }
    GaugeVariation g;
    g.roster = make_roster(std::move(vars));
    const auto& fr = *s.frame;
    auto emb = [&](const SuPoly& p) { return rename_into(p, g.roster); };
    auto eps = [&](std::size_t al, int order = 0) {
        return SuPoly::variable(g.roster, "eps" + std::to_string(al + 1), order);
    };
    auto lam = [&](std::size_t al) { return SuPoly::variable(g.roster, multiplier_name(al)); };
    for (std::size_t i = 0; i < s.n(); ++i) {
        SuPoly d(g.roster);
        for (std::size_t al = 0; al < s.m(); ++al) d -= eps(al) * emb(fr.component(s.R[al], i));
        g.delta_x.push_back(d);
    }
    for (std::size_t al = 0; al < s.m(); ++al) {
        SuPoly d = eps(al, 1);
        for (std::size_t be = 0; be < s.m(); ++be) {
            SuPoly coef = emb(s.E[be][al]);
            for (std::size_t ga = 0; ga < s.m(); ++ga) coef += lam(ga) * emb(s.B[be][ga][al]);
            d += eps(be) * coef;
        }
        g.delta_lambda.push_back(d);
    }
    return g;
}

struct IdealSpec {
    std::vector<SuPoly> generators_even;  // T_a
    std::vector<SuPoly> generators_odd;   // R_alpha
};

inline IdealSpec ideal_of(const InvolutiveSystem& s) { return {s.T, s.R}; }

// a = sum f[a] T_a + sum g[alpha] R_alpha.
struct Witness {
    std::vector<SuPoly> f;
    std::vector<SuPoly> g;
};

inline SuPoly combine(const Witness& w, const IdealSpec& ideal, const RosterPtr& roster) {
    SuPoly out(roster);
    for (std::size_t a = 0; a < ideal.generators_even.size(); ++a) out += w.f[a] * ideal.generators_even[a];
    for (std::size_t al = 0; al < ideal.generators_odd.size(); ++al) out += w.g[al] * ideal.generators_odd[al];
    return out;
}

inline std::optional<Witness> ideal_membership_solve(const SuPoly& a, const IdealSpec& ideal,
                                                     const PolyvectorFrame& frame, unsigned degree_bound) {
    std::size_t l = ideal.generators_even.size();
    std::size_t m = ideal.generators_odd.size();
    Witness w{std::vector<SuPoly>(l, frame.zero()), std::vector<SuPoly>(m, frame.zero())};
    if (a.is_zero()) return w;
    int p = frame.eta_degree(a);
    struct Column {
        bool even;
        std::size_t gen;
        SuPoly basis;
    };
    std::vector<Column> cols;
    for (std::size_t k = 0; k < l; ++k) {
        for (auto& b : frame.basis(static_cast<std::size_t>(p), degree_bound)) cols.push_back({true, k, b});
    }
    if (p >= 1) {
        for (std::size_t k = 0; k < m; ++k) {
            for (auto& b : frame.basis(static_cast<std::size_t>(p - 1), degree_bound)) cols.push_back({false, k, b});
        }
    }
    PolySystem sys(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const auto& gen = cols[j].even ? ideal.generators_even[cols[j].gen] : ideal.generators_odd[cols[j].gen];
        sys.add(j, 0, cols[j].basis * gen);
    }
    sys.add_rhs(0, a);
    auto x = sys.solve();
    if (!x) return std::nullopt;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (is_zero((*x)[j])) continue;
        auto& slot = cols[j].even ? w.f[cols[j].gen] : w.g[cols[j].gen];
        slot += (*x)[j] * cols[j].basis;
    }
    if (!(combine(w, ideal, frame.roster()) == a)) {
        throw Error("ideal membership witness failed verification");
    }
    return w;
}

// Fills the structure functions by bounded membership search; nullopt names the failing relation.
struct DiscoveryResult {
    std::optional<InvolutiveSystem> system;
    std::string unresolved;
};

inline DiscoveryResult discover_structure(InvolutiveSystem s, unsigned degree_bound) {
    const auto& fr = *s.frame;
    IdealSpec ideal = ideal_of(s);
    auto num = [](std::size_t i) { return std::to_string(i + 1); };
    auto solve = [&](const SuPoly& a) { return ideal_membership_solve(a, ideal, fr, degree_bound); };
    for (std::size_t al = 0; al < s.m(); ++al) {
        for (std::size_t a = 0; a < s.l(); ++a) {
            auto w = solve(schouten_bracket(s.R[al], s.T[a]));
            if (!w) return {std::nullopt, "[R" + num(al) + ",T" + num(a) + "]"};
            for (std::size_t b = 0; b < s.l(); ++b) s.A[al][a][b] = w->f[b];
        }
        for (std::size_t be = al + 1; be < s.m(); ++be) {
            auto w = solve(schouten_bracket(s.R[al], s.R[be]));
            if (!w) return {std::nullopt, "[R" + num(al) + ",R" + num(be) + "]"};
            for (std::size_t g = 0; g < s.m(); ++g) {
                s.B[al][be][g] = w->g[g];
                s.B[be][al][g] = -w->g[g];
            }
            for (std::size_t a = 0; a < s.l(); ++a) {
                s.C[a][al][be] = -w->f[a];
                s.C[a][be][al] = w->f[a];
            }
        }
        auto w = solve(schouten_bracket(s.V, s.R[al]));
        if (!w) return {std::nullopt, "[V,R" + num(al) + "]"};
        for (std::size_t be = 0; be < s.m(); ++be) s.E[al][be] = w->g[be];
        for (std::size_t a = 0; a < s.l(); ++a) s.F[a][al] = -w->f[a];
    }
    for (std::size_t a = 0; a < s.l(); ++a) {
        auto w = solve(schouten_bracket(s.V, s.T[a]));
        if (!w) return {std::nullopt, "[V,T" + num(a) + "]"};
        for (std::size_t b = 0; b < s.l(); ++b) s.D[a][b] = w->f[b];
    }
    return {std::move(s), {}};
}

} // namespace brstwb
