#pragma once

#include "errors.hpp"
#include "rational.hpp"
#include "roster.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace brstwb {

struct Factor {
    VarKey var;
    unsigned exp;
    friend bool operator==(const Factor&, const Factor&) = default;
};

// Sorted by var; odd variables carry exponent 1.
using Monomial = std::vector<Factor>;

// Lexicographic on exponent vectors, larger exponent of the earliest variable first.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        std::size_t i = 0;
        for (; i < a.size() && i < b.size(); ++i) {
            if (a[i].var != b[i].var) return a[i].var < b[i].var;
            if (a[i].exp != b[i].exp) return a[i].exp > b[i].exp;
        }
        return i == b.size() && i < a.size();
    }
};

inline unsigned total_degree(const Monomial& m) {
    unsigned d = 0;
    for (const auto& f : m) d += f.exp;
    return d;
}

inline int max_jet_order(const Monomial& m) {
    int k = 0;
    for (const auto& f : m) k = std::max(k, key_order(f.var));
    return k;
}

inline GradingVector monomial_grading(const Roster& r, const Monomial& m) {
    GradingVector g;
    for (const auto& f : m) {
        const auto& v = r.grading(f.var);
        int e = static_cast<int>(f.exp);
        g.parity = (g.parity + e * v.parity) % 2;
        g.ghost += e * v.ghost;
        g.rdeg += e * v.rdeg;
        g.mdeg += e * v.mdeg;
    }
    return g;
}

// Writes a*b to out and returns the Koszul sign, or 0 when an odd square appears.
inline int multiply_monomials(const Roster& r, const Monomial& a, const Monomial& b, Monomial& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    int odd_a_pending = 0;
    for (const auto& f : a) odd_a_pending += r.odd(f.var) ? 1 : 0;
    int sign = 1;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].var < b[j].var)) {
            if (r.odd(a[i].var)) --odd_a_pending;
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].var < a[i].var) {
            if (r.odd(b[j].var) && (odd_a_pending & 1)) sign = -sign;
            out.push_back(b[j++]);
        } else {
            if (r.odd(a[i].var)) return 0;
            out.push_back({a[i].var, a[i].exp + b[j].exp});
            ++i;
            ++j;
        }
    }
    return sign;
}

enum class Side { left, right };

// Writes the monomial with v removed once; returns the multiplier (0 if v is absent).
inline long derive_monomial(const Roster& r, const Monomial& m, VarKey v, Side side, Monomial& out) {
    out.clear();
    std::size_t pos = m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].var == v) {
            pos = i;
            break;
        }
    }
    if (pos == m.size()) return 0;
    long mult = static_cast<long>(m[pos].exp);
    if (r.odd(v)) {
        int passed = 0;
        if (side == Side::left) {
            for (std::size_t i = 0; i < pos; ++i) passed += r.odd(m[i].var) ? 1 : 0;
        } else {
            for (std::size_t i = pos + 1; i < m.size(); ++i) passed += r.odd(m[i].var) ? 1 : 0;
        }
        mult = (passed & 1) ? -1 : 1;
    }
    out.reserve(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i != pos) {
            out.push_back(m[i]);
        } else if (m[i].exp > 1) {
            out.push_back({m[i].var, m[i].exp - 1});
        }
    }
    return mult;
}

class SuPoly {
public:
    using TermMap = std::map<Monomial, Rational, MonomialOrder>;

    SuPoly() = default;
    explicit SuPoly(RosterPtr roster) : roster_(std::move(roster)) {}

    static SuPoly constant(RosterPtr roster, const Rational& q) {
        SuPoly p(std::move(roster));
        if (!brstwb::is_zero(q)) p.terms_.emplace(Monomial{}, q);
        return p;
    }

    static SuPoly variable(RosterPtr roster, VarKey v) {
        SuPoly p(std::move(roster));
        p.terms_.emplace(Monomial{{v, 1}}, Rational(1));
        return p;
    }

    static SuPoly variable(RosterPtr roster, std::string_view name, int order = 0) {
        VarKey k = roster->key(name, order);
        return variable(std::move(roster), k);
    }

    static SuPoly monomial(RosterPtr roster, Monomial m, const Rational& q = 1) {
        SuPoly p(std::move(roster));
        if (!brstwb::is_zero(q)) p.terms_.emplace(std::move(m), q);
        return p;
    }

    const RosterPtr& roster() const noexcept { return roster_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational constant_term() const { return coefficient(Monomial{}); }

    // Accumulates c*m in place.
    void add_term(const Monomial& m, const Rational& c) {
        if (brstwb::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (brstwb::is_zero(it->second)) terms_.erase(it);
        }
    }

    SuPoly& operator+=(const SuPoly& o) {
        adopt(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    SuPoly& operator-=(const SuPoly& o) {
        adopt(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    SuPoly& operator*=(const Rational& q) {
        if (brstwb::is_zero(q)) {
            terms_.clear();
        } else {
            for (auto& [m, c] : terms_) c *= q;
        }
        return *this;
    }

    friend SuPoly operator+(SuPoly a, const SuPoly& b) { return a += b; }
    friend SuPoly operator-(SuPoly a, const SuPoly& b) { return a -= b; }
    friend SuPoly operator-(SuPoly a) { return a *= Rational(-1); }
    friend SuPoly operator*(SuPoly a, const Rational& q) { return a *= q; }
    friend SuPoly operator*(const Rational& q, SuPoly a) { return a *= q; }
    friend SuPoly operator*(const SuPoly& a, const SuPoly& b);

    friend bool operator==(const SuPoly& a, const SuPoly& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return same_roster(a.roster_, b.roster_) && a.terms_ == b.terms_;
    }

    // Zero polynomials without a roster take the other operand's.
    void adopt(const SuPoly& o) {
        if (!o.roster_) return;
        if (!roster_) {
            roster_ = o.roster_;
        } else if (!same_roster(roster_, o.roster_)) {
            if (is_zero() && o.is_zero()) return;
            throw RosterMismatch();
        }
    }

private:
    RosterPtr roster_;
    TermMap terms_;
};

inline SuPoly multiply(const SuPoly& p, const SuPoly& q) {
    SuPoly out(p.roster() ? p.roster() : q.roster());
    out.adopt(q);
    if (p.is_zero() || q.is_zero()) return out;
    const Roster& r = *out.roster();
    Monomial m;
    for (const auto& [ma, ca] : p.terms()) {
        for (const auto& [mb, cb] : q.terms()) {
            int s = multiply_monomials(r, ma, mb, m);
            if (s == 0) continue;
            Rational c = ca * cb;
            if (s < 0) c = -c;
            out.add_term(m, c);
        }
    }
    return out;
}

inline SuPoly operator*(const SuPoly& a, const SuPoly& b) { return multiply(a, b); }

inline SuPoly derive(const SuPoly& p, VarKey v, Side side) {
    SuPoly out(p.roster());
    if (p.is_zero()) return out;
    const Roster& r = *p.roster();
    Monomial m;
    for (const auto& [mono, c] : p.terms()) {
        long k = derive_monomial(r, mono, v, side, m);
        if (k != 0) out.add_term(m, c * Rational(k));
    }
    return out;
}

inline SuPoly derive_left(const SuPoly& p, VarKey v) { return derive(p, v, Side::left); }
inline SuPoly derive_right(const SuPoly& p, VarKey v) { return derive(p, v, Side::right); }

inline SuPoly derive_left(const SuPoly& p, std::string_view name, int order = 0) {
    return derive_left(p, p.roster()->key(name, order));
}
inline SuPoly derive_right(const SuPoly& p, std::string_view name, int order = 0) {
    return derive_right(p, p.roster()->key(name, order));
}

inline GradingVector grading_of(const SuPoly& p) {
    if (p.is_zero()) throw InhomogeneousError("the zero polynomial has no grading");
    const Roster& r = *p.roster();
    std::optional<GradingVector> g;
    for (const auto& [m, c] : p.terms()) {
        auto h = monomial_grading(r, m);
        if (!g) {
            g = h;
        } else if (!(*g == h)) {
            throw InhomogeneousError("monomials disagree in grading: " + to_string(*g) + " vs " +
                                     to_string(h));
        }
    }
    return *g;
}

// Parity of a homogeneous polynomial; 0 for zero.
inline int parity_of(const SuPoly& p) { return p.is_zero() ? 0 : grading_of(p).parity; }

inline SuPoly filter_terms(const SuPoly& p, const std::function<bool(const Monomial&)>& keep) {
    SuPoly out(p.roster());
    for (const auto& [m, c] : p.terms()) {
        if (keep(m)) out.add_term(m, c);
    }
    return out;
}

// Component of fixed resolution degree.
inline SuPoly rdeg_component(const SuPoly& p, int rdeg) {
    if (p.is_zero()) return p;
    const Roster& r = *p.roster();
    return filter_terms(p, [&](const Monomial& m) { return monomial_grading(r, m).rdeg == rdeg; });
}

inline SuPoly mdeg_component(const SuPoly& p, int mdeg) {
    if (p.is_zero()) return p;
    const Roster& r = *p.roster();
    return filter_terms(p, [&](const Monomial& m) { return monomial_grading(r, m).mdeg == mdeg; });
}

// Replaces every factor by its image; images are multiplied in storage order.
inline SuPoly substitute(const SuPoly& p, const RosterPtr& target,
                         const std::function<SuPoly(VarKey)>& image) {
    SuPoly out(target);
    std::map<VarKey, SuPoly> cache;
    for (const auto& [m, c] : p.terms()) {
        SuPoly acc = SuPoly::constant(target, c);
        for (const auto& f : m) {
            auto it = cache.find(f.var);
            if (it == cache.end()) it = cache.emplace(f.var, image(f.var)).first;
            for (unsigned e = 0; e < f.exp; ++e) acc = acc * it->second;
            if (acc.is_zero()) break;
        }
        out += acc;
    }
    return out;
}

// Moves p to a roster that contains every variable of p under the same name.
inline SuPoly rename_into(const SuPoly& p, const RosterPtr& target) {
    if (same_roster(p.roster(), target)) return p;
    const Roster& src = *p.roster();
    return substitute(p, target, [&](VarKey k) {
        const auto& name = src.base(key_base(k)).name;
        auto idx = target->find(name);
        if (!idx) throw ShapeError("target roster lacks variable '" + name + "'");
        return SuPoly::variable(target, make_key(*idx, key_order(k)));
    });
}

// Evaluates order-0 even variables at a point; all others are set to zero.
inline Rational evaluate(const SuPoly& p, const std::map<VarKey, Rational>& point) {
    Rational total = 0;
    for (const auto& [m, c] : p.terms()) {
        Rational t = c;
        for (const auto& f : m) {
            auto it = point.find(f.var);
            if (it == point.end()) {
                t = 0;
                break;
            }
            for (unsigned e = 0; e < f.exp; ++e) t *= it->second;
        }
        total += t;
    }
    return total;
}

} // namespace brstwb
