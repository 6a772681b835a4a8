#pragma once

#include "jet.hpp"
#include "polyvector.hpp"

#include <memory>

namespace brstwb {

// Ghost-extended phase space of an involutive system, with its structure functions embedded.
class PhaseSpace {
public:
    PhaseSpace(InvolutiveSystem system, int max_jet_order = kDefaultMaxJetOrder)
        : sys_(std::move(system)) {
        validate_system(sys_);
        const auto& xs = sys_.frame->coordinates();
        std::vector<VarSpec> vars;
        std::vector<std::pair<std::string, std::string>> pairs;
        auto add_pair = [&](std::string q, GradingVector gq, VarClass kq, std::string p, GradingVector gp) {
            vars.push_back({q, gq, kq});
            vars.push_back({p, gp, VarClass::momentum});
            pairs.emplace_back(std::move(q), std::move(p));
        };
        for (const auto& x : xs) add_pair(x, {0, 0, 0, 0}, VarClass::coordinate, xb(x), {0, 0, 1, 1});
        for (std::size_t a = 0; a < sys_.m(); ++a) {
            add_pair(lam(a), {0, 0, 0, 0}, VarClass::multiplier, lamb(a), {0, 0, 1, 1});
        }
        for (const auto& x : xs) add_pair(eta(x), {1, -1, 1, 0}, VarClass::ghost, etab(x), {1, 1, 0, 1});
        for (std::size_t a = 0; a < sys_.l(); ++a) {
            add_pair(etac(a), {1, -1, 1, 0}, VarClass::ghost, etacb(a), {1, 1, 0, 1});
        }
        for (std::size_t a = 0; a < sys_.m(); ++a) add_pair(c(a), {1, 1, 0, 0}, VarClass::ghost, cb(a), {1, -1, 2, 1});
        for (std::size_t a = 0; a < sys_.l(); ++a) add_pair(xi(a), {0, -2, 2, 0}, VarClass::ghost, xib(a), {0, 2, 0, 1});
        roster_ = make_roster(std::move(vars), std::move(pairs), max_jet_order);
        embed_structure();
    }

    static std::string xb(const std::string& x) { return "xb_" + x; }
    static std::string eta(const std::string& x) { return "eta_" + x; }
    static std::string etab(const std::string& x) { return PolyvectorFrame::frame_name(x); }
    static std::string lam(std::size_t a) { return multiplier_name(a); }
    static std::string lamb(std::size_t a) { return "lamb" + std::to_string(a + 1); }
    static std::string etac(std::size_t a) { return "etac" + std::to_string(a + 1); }
    static std::string etacb(std::size_t a) { return "etacb" + std::to_string(a + 1); }
    static std::string c(std::size_t a) { return "c" + std::to_string(a + 1); }
    static std::string cb(std::size_t a) { return "cb" + std::to_string(a + 1); }
    static std::string xi(std::size_t a) { return "xi" + std::to_string(a + 1); }
    static std::string xib(std::size_t a) { return "xib" + std::to_string(a + 1); }

    const InvolutiveSystem& system() const noexcept { return sys_; }
    const RosterPtr& roster() const noexcept { return roster_; }
    std::size_t n() const { return sys_.n(); }
    std::size_t m() const { return sys_.m(); }
    std::size_t l() const { return sys_.l(); }
    const std::string& coord(std::size_t i) const { return sys_.frame->coordinates().at(i); }

    SuPoly var(const std::string& name, int order = 0) const { return SuPoly::variable(roster_, name, order); }
    SuPoly zero() const { return SuPoly(roster_); }
    SuPoly constant(const Rational& q) const { return SuPoly::constant(roster_, q); }
    SuPoly parse(std::string_view text) const { return parse_expression(text, roster_); }
    std::size_t base(const std::string& name) const { return roster_->require(name); }

    SuPoly x(std::size_t i, int k = 0) const { return var(coord(i), k); }
    SuPoly x_bar(std::size_t i, int k = 0) const { return var(xb(coord(i)), k); }
    SuPoly eta_up(std::size_t i, int k = 0) const { return var(eta(coord(i)), k); }
    SuPoly eta_bar(std::size_t i, int k = 0) const { return var(etab(coord(i)), k); }
    SuPoly lambda(std::size_t a, int k = 0) const { return var(lam(a), k); }
    SuPoly lambda_bar(std::size_t a, int k = 0) const { return var(lamb(a), k); }
    SuPoly eta_low(std::size_t a, int k = 0) const { return var(etac(a), k); }
    SuPoly eta_low_bar(std::size_t a, int k = 0) const { return var(etacb(a), k); }
    SuPoly ghost(std::size_t a, int k = 0) const { return var(c(a), k); }
    SuPoly ghost_bar(std::size_t a, int k = 0) const { return var(cb(a), k); }
    SuPoly xi_low(std::size_t a, int k = 0) const { return var(xi(a), k); }
    SuPoly xi_bar(std::size_t a, int k = 0) const { return var(xib(a), k); }

    // Identifies x^i and the frame variables with their phase-space namesakes.
    SuPoly embed(const SuPoly& polyvector) const {
        if (polyvector.is_zero()) return zero();
        return rename_into(polyvector, roster_);
    }

    SuPoly partial(const SuPoly& f, std::size_t i) const { return derive_left(f, roster_->key(coord(i))); }
    SuPoly d_eta_bar(const SuPoly& f, std::size_t i) const { return derive_left(f, roster_->key(etab(coord(i)))); }

    // tau = eta^i d/dx^i + xb_i d/d etab_i.
    SuPoly tau(const SuPoly& f) const {
        SuPoly out = zero();
        for (std::size_t i = 0; i < n(); ++i) {
            out += eta_up(i) * partial(f, i);
            out += x_bar(i) * d_eta_bar(f, i);
        }
        return out;
    }

    // Embedded structure data; R_i[alpha][i] = R^i_alpha and so on.
    const std::vector<SuPoly>& V_i() const { return V_; }
    const PolyMatrix& R_i() const { return R_; }
    const std::vector<SuPoly>& R_vec() const { return Rv_; }
    const std::vector<SuPoly>& T() const { return T_; }
    const SuPoly& A(std::size_t al, std::size_t a, std::size_t b) const { return A_[al][a][b]; }
    const SuPoly& B(std::size_t al, std::size_t be, std::size_t ga) const { return B_[al][be][ga]; }
    const SuPoly& C(std::size_t a, std::size_t al, std::size_t be) const { return C_[a][al][be]; }
    const SuPoly& D(std::size_t a, std::size_t b) const { return D_[a][b]; }
    const SuPoly& E(std::size_t al, std::size_t be) const { return E_[al][be]; }
    const SuPoly& F(std::size_t a, std::size_t al) const { return F_[a][al]; }

private:
    void embed_structure() {
        const auto& fr = *sys_.frame;
        for (std::size_t i = 0; i < n(); ++i) V_.push_back(embed(fr.component(sys_.V, i)));
        for (std::size_t al = 0; al < m(); ++al) {
            std::vector<SuPoly> row;
            for (std::size_t i = 0; i < n(); ++i) row.push_back(embed(fr.component(sys_.R[al], i)));
            R_.push_back(std::move(row));
            Rv_.push_back(embed(sys_.R[al]));
        }
        for (const auto& t : sys_.T) T_.push_back(embed(t));
        auto emb3 = [&](const PolyTensor3& t) {
            std::vector<std::vector<std::vector<SuPoly>>> out;
            for (const auto& a : t) {
                std::vector<std::vector<SuPoly>> ra;
                for (const auto& b : a) {
                    std::vector<SuPoly> rb;
                    for (const auto& x : b) rb.push_back(embed(x));
                    ra.push_back(std::move(rb));
                }
                out.push_back(std::move(ra));
            }
            return out;
        };
        auto emb2 = [&](const PolyMatrix& t) {
            PolyMatrix out;
            for (const auto& a : t) {
                std::vector<SuPoly> ra;
                for (const auto& x : a) ra.push_back(embed(x));
                out.push_back(std::move(ra));
            }
            return out;
        };
        A_ = emb3(sys_.A);
        B_ = emb3(sys_.B);
        C_ = emb3(sys_.C);
        D_ = emb2(sys_.D);
        E_ = emb2(sys_.E);
        F_ = emb2(sys_.F);
    }

    InvolutiveSystem sys_;
    RosterPtr roster_;
    std::vector<SuPoly> V_;
    PolyMatrix R_;
    std::vector<SuPoly> Rv_;
    std::vector<SuPoly> T_;
    PolyTensor3 A_, B_, C_;
    PolyMatrix D_, E_, F_;
};

using PhaseSpacePtr = std::shared_ptr<const PhaseSpace>;

inline PhaseSpacePtr make_phase_space(InvolutiveSystem sys, int max_jet_order = kDefaultMaxJetOrder) {
    return std::make_shared<const PhaseSpace>(std::move(sys), max_jet_order);
}

} // namespace brstwb
