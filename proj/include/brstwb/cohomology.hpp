#pragma once

#include "weak_poisson.hpp"

namespace brstwb {

struct SolveRequest {
    InvolutiveSystem system;
    std::size_t p = 0;
    unsigned d = 0;
};

struct CohomologyBasis {
    std::size_t p = 0;
    unsigned d = 0;
    std::vector<SuPoly> representatives;
    std::vector<PolyMatrix> witnesses;  // observables only: witness[alpha][a]
    std::size_t raw = 0;                // dimension of the solution space
    std::size_t modded = 0;             // solution directions lying in J (and constants for p = 0)
    std::size_t classes = 0;

    DimensionRow row(std::string label) const {
        return {std::move(label), static_cast<int>(p), static_cast<int>(d), raw, modded, classes};
    }
};

namespace detail {

inline unsigned coefficient_degree(const SuPoly& f, const PolyvectorFrame& fr) {
    unsigned top = 0;
    for (const auto& [m, c] : f.terms()) {
        unsigned k = 0;
        for (const auto& x : m) k += fr.roster()->odd(x.var) ? 0 : x.exp;
        top = std::max(top, k);
    }
    return top;
}

inline unsigned data_degree(const InvolutiveSystem& s) {
    const auto& fr = *s.frame;
    unsigned top = coefficient_degree(s.V, fr);
    for (const auto& r : s.R) top = std::max(top, coefficient_degree(r, fr));
    for (const auto& t : s.T) top = std::max(top, coefficient_degree(t, fr));
    return top;
}

// Coordinates of f over the basis; the basis must span f.
struct BasisIndex {
    std::map<Monomial, std::size_t, MonomialOrder> slot;

    explicit BasisIndex(const std::vector<SuPoly>& basis) {
        for (std::size_t k = 0; k < basis.size(); ++k) slot.emplace(basis[k].terms().begin()->first, k);
    }

    std::optional<SparseVector> coordinates(const SuPoly& f) const {
        SparseVector v;
        for (const auto& [m, c] : f.terms()) {
            auto it = slot.find(m);
            if (it == slot.end()) return std::nullopt;
            v[it->second] = c;
        }
        return v;
    }
};

// J within the ansatz space: products that stay inside the degree bound.
inline std::vector<SparseVector> ideal_slice(const InvolutiveSystem& s, std::size_t p, unsigned d,
                                             const BasisIndex& index, bool with_constants) {
    const auto& fr = *s.frame;
    std::vector<SparseVector> out;
    auto push = [&](const SuPoly& f) {
        if (f.is_zero()) return;
        if (auto v = index.coordinates(f)) out.push_back(std::move(*v));
    };
    for (const auto& t : s.T) {
        for (const auto& b : fr.basis(p, d)) push(b * t);
    }
    if (p >= 1) {
        for (const auto& r : s.R) {
            for (const auto& b : fr.basis(p - 1, d)) push(b * r);
        }
    }
    if (with_constants && p == 0) push(fr.constant(1));
    return out;
}

struct Quotient {
    std::vector<std::size_t> kept;  // indices into the solution list
    std::size_t raw = 0;
    std::size_t modded = 0;
};

// Greedy choice of solutions independent modulo the ideal slice.
inline Quotient quotient(const std::vector<SparseVector>& solutions, const std::vector<SparseVector>& ideal) {
    Quotient q;
    q.raw = rank_of(solutions);
    RowEchelon ech;
    for (const auto& v : ideal) ech.insert(v);
    std::size_t base = ech.rank();
    for (std::size_t k = 0; k < solutions.size(); ++k) {
        if (ech.insert(solutions[k])) q.kept.push_back(k);
    }
    q.modded = q.raw - (ech.rank() - base);
    return q;
}

inline SuPoly from_coordinates(const std::vector<SuPoly>& basis, const SparseVector& v, const RosterPtr& roster) {
    SuPoly out(roster);
    for (const auto& [k, c] : v) {
        if (k < basis.size()) out += c * basis[k];
    }
    return out;
}

// Unknown columns a_1..a_N followed by witness columns; returns kernel vectors restricted to the a-part.
struct MembershipAssembly {
    PolySystem system;
    std::size_t next;
    std::size_t component = 0;

    MembershipAssembly(std::size_t unknowns, std::size_t first_witness) : system(unknowns), next(first_witness) {}
};

// Number of witness columns needed to express a p-vector in J with coefficient degree <= bound.
inline std::size_t witness_columns(const InvolutiveSystem& s, std::size_t p, unsigned bound) {
    const auto& fr = *s.frame;
    std::size_t n = s.l() * fr.basis(p, bound).size();
    if (p >= 1) n += s.m() * fr.basis(p - 1, bound).size();
    return n;
}

// Adds rows: sum_k x_k image_k - (witness combination) = 0 for one membership condition.
inline void add_membership(MembershipAssembly& a, const InvolutiveSystem& s, const std::vector<SuPoly>& images,
                           int p, unsigned bound) {
    const auto& fr = *s.frame;
    std::size_t comp = a.component++;
    for (std::size_t k = 0; k < images.size(); ++k) a.system.add(k, comp, images[k]);
    if (p < 0) return;
    for (const auto& t : s.T) {
        for (const auto& b : fr.basis(static_cast<std::size_t>(p), bound)) a.system.add(a.next++, comp, -(b * t));
    }
    if (p >= 1) {
        for (const auto& r : s.R) {
            for (const auto& b : fr.basis(static_cast<std::size_t>(p - 1), bound)) {
                a.system.add(a.next++, comp, -(b * r));
            }
        }
    }
}

inline std::vector<SparseVector> restrict_kernel(const std::vector<SparseVector>& kernel, std::size_t n) {
    std::vector<SparseVector> out;
    for (const auto& v : kernel) {
        SparseVector w;
        for (const auto& [k, c] : v) {
            if (k < n) w[k] = c;
        }
        if (!w.empty()) out.push_back(std::move(w));
    }
    return out;
}

} // namespace detail

inline CohomologyBasis solve_observables(const InvolutiveSystem& s, unsigned d) {
    const auto& fr = *s.frame;
    auto basis = fr.basis(0, d);
    std::size_t N = basis.size();
    std::size_t per = s.l() * basis.size();
    std::size_t total = N + s.m() * per;
    // Witness columns U[alpha][a] over the degree <= d monomials.
    PolySystem sys(total);
    for (std::size_t al = 0; al < s.m(); ++al) {
        for (std::size_t k = 0; k < N; ++k) sys.add(k, al, schouten_bracket(s.R[al], basis[k]));
        for (std::size_t a = 0; a < s.l(); ++a) {
            for (std::size_t k = 0; k < N; ++k) {
                sys.add(N + al * per + a * N + k, al, -(basis[k] * s.T[a]));
            }
        }
    }
    auto kernel = sys.kernel();
    std::vector<SparseVector> sols;
    std::vector<const SparseVector*> full;
    for (const auto& v : kernel) {
        SparseVector w;
        for (const auto& [k, c] : v) {
            if (k < N) w[k] = c;
        }
        if (w.empty()) continue;
        sols.push_back(std::move(w));
        full.push_back(&v);
    }
    detail::BasisIndex index(basis);
    auto q = detail::quotient(sols, detail::ideal_slice(s, 0, d, index, false));
    CohomologyBasis out;
    out.p = 0;
    out.d = d;
    out.raw = q.raw;
    out.modded = q.modded;
    out.classes = q.kept.size();
    for (std::size_t k : q.kept) {
        out.representatives.push_back(detail::from_coordinates(basis, sols[k], fr.roster()));
        PolyMatrix w = zero_matrix(s.frame, s.m(), s.l());
        for (const auto& [j, c] : *full[k]) {
            if (j < N) continue;
            std::size_t off = j - N;
            std::size_t al = off / per;
            std::size_t a = (off % per) / N;
            w[al][a] += c * basis[off % N];
        }
        out.witnesses.push_back(std::move(w));
    }
    return out;
}

inline CohomologyBasis solve_stabilizer_classes(const SolveRequest& req) {
    const auto& s = req.system;
    const auto& fr = *s.frame;
    if (req.p > s.n()) {
        throw InvalidDegree("eta degree " + std::to_string(req.p) + " exceeds dimension " + std::to_string(s.n()));
    }
    std::size_t p = req.p;
    unsigned d = req.d;
    auto basis = fr.basis(p, d);
    std::size_t N = basis.size();
    unsigned wb = d + detail::data_degree(s);
    int ip = static_cast<int>(p);
    std::size_t total = N + detail::witness_columns(s, p, wb);
    for (std::size_t a = 0; a < s.l(); ++a) total += p >= 1 ? detail::witness_columns(s, p - 1, wb) : 0;
    total += s.m() * detail::witness_columns(s, p, wb);
    detail::MembershipAssembly asmb(total, N);
    auto images = [&](const SuPoly& g) {
        std::vector<SuPoly> out;
        for (const auto& b : basis) out.push_back(schouten_bracket(g, b));
        return out;
    };
    detail::add_membership(asmb, s, images(s.V), ip, wb);
    for (const auto& t : s.T) detail::add_membership(asmb, s, images(t), ip - 1, wb);
    for (const auto& r : s.R) detail::add_membership(asmb, s, images(r), ip, wb);
    auto sols = detail::restrict_kernel(asmb.system.kernel(), N);
    detail::BasisIndex index(basis);
    auto q = detail::quotient(sols, detail::ideal_slice(s, p, d, index, true));
    CohomologyBasis out;
    out.p = p;
    out.d = d;
    out.raw = q.raw;
    out.modded = q.modded;
    out.classes = q.kept.size();
    for (std::size_t k : q.kept) out.representatives.push_back(detail::from_coordinates(basis, sols[k], fr.roster()));
    return out;
}

struct MasseyCheck {
    Report report;
    std::vector<SuPoly> U;
    std::vector<SuPoly> S;
};

inline MasseyCheck massey_square(const SuPoly& P, const InvolutiveSystem& s, unsigned d) {
    MasseyCheck out;
    out.report.command = "massey square";
    SuPoly pp = schouten_bracket(P, P);
    auto w = ideal_membership_solve(pp, ideal_of(s), *s.frame, d);
    if (!w) {
        out.report.record_failure("[P,P] in J", kNotFoundWithinBound);
        out.report.note("[P,P] = " + format_canonical(pp));
        return out;
    }
    out.U = w->g;
    for (const auto& f : w->f) out.S.push_back(-f);
    SuPoly res = pp;
    for (std::size_t al = 0; al < s.m(); ++al) res -= out.U[al] * s.R[al];
    for (std::size_t a = 0; a < s.l(); ++a) res += s.T[a] * out.S[a];
    out.report.record("[P,P] - U R + T S", format_canonical(res), res.is_zero());
    for (std::size_t al = 0; al < s.m(); ++al) out.report.note("U" + std::to_string(al + 1) + " = " + format_canonical(out.U[al]));
    for (std::size_t a = 0; a < s.l(); ++a) out.report.note("S" + std::to_string(a + 1) + " = " + format_canonical(out.S[a]));
    return out;
}

inline Report massey_square_check(const SuPoly& P, const InvolutiveSystem& s, unsigned d) {
    return massey_square(P, s, d).report;
}

inline Report massey_square_check(const WeakHamiltonianStructure& w, unsigned d) {
    return massey_square_check(w.P, w.core, d);
}

} // namespace brstwb
