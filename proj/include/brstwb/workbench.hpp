#pragma once

#include "document.hpp"

#include <chrono>

namespace brstwb {

struct CommandOptions {
    std::optional<int> target_rdeg;
    std::optional<unsigned> degree_bound;
    std::optional<std::size_t> p;
    int max_jet_order = kDefaultMaxJetOrder;
};

struct CommandResult {
    Report report;
    std::optional<std::string> charge;  // charge file contents
};

inline nlohmann::json to_json(const Report& r) {
    nlohmann::json j;
    j["command"] = r.command;
    j["pass"] = r.pass;
    j["residuals"] = nlohmann::json::array();
    for (const auto& x : r.residuals) j["residuals"].push_back({{"name", x.name}, {"value", x.value}, {"zero", x.zero}});
    j["dimensions"] = nlohmann::json::array();
    for (const auto& d : r.dimensions) {
        j["dimensions"].push_back({{"label", d.label}, {"p", d.p}, {"d", d.d}, {"raw", d.raw},
                                   {"modded", d.modded}, {"classes", d.classes}});
    }
    j["notes"] = r.notes;
    if (r.seconds) j["seconds"] = *r.seconds;
    return j;
}

namespace detail {

inline unsigned bound_of(const SystemDocument& doc, const CommandOptions& o) {
    return o.degree_bound.value_or(doc.bounds.degree);
}

inline std::optional<WeakHamiltonianStructure> weak_structure(const SystemDocument& doc, const CommandOptions& o,
                                                              Report& rep) {
    if (!doc.P) return std::nullopt;
    if (doc.weak) return doc.weak;
    auto found = complete_witnesses(make_weak_structure(doc.system, *doc.P), bound_of(doc, o));
    if (!found.structure) {
        rep.record_failure("weak witnesses for " + found.unresolved, kNotFoundWithinBound);
        return std::nullopt;
    }
    rep.note("weak witnesses discovered within degree " + std::to_string(bound_of(doc, o)));
    return found.structure;
}

} // namespace detail

inline CommandResult cmd_check(const SystemDocument& doc, const CommandOptions& o = {}) {
    Report rep;
    rep.command = "check";
    for (const auto& n : doc.notes) rep.note(n);
    const auto& s = doc.system;
    rep.absorb(check_involutivity(s));
    try {
        rep.absorb(check_rank(s));
    } catch (const PointNotOnSurface& e) {
        rep.record_failure("sigma point off the surface", e.what());
    }
    PhaseSpace ps(s, o.max_jet_order);
    auto noether = noether_identity_residual(ps);
    for (std::size_t a = 0; a < noether.size(); ++a) {
        rep.record("Noether identity T" + std::to_string(a + 1), format_canonical(noether[a]), noether[a].is_zero());
    }
    if (auto w = detail::weak_structure(doc, o, rep)) rep.absorb(check_weak_hamiltonian(*w));
    rep.command = "check";
    return {rep, std::nullopt};
}

inline CommandResult cmd_build_charge(const SystemDocument& doc, const CommandOptions& o = {}) {
    CommandResult out = cmd_check(doc, o);
    out.report.command = "build-charge";
    if (!out.report.pass) {
        out.report.note("charge not built: check failed");
        return out;
    }
    Report& rep = out.report;
    int target = o.target_rdeg.value_or(doc.bounds.target_rdeg);
    auto ps = make_phase_space(doc.system, o.max_jet_order);
    BRSTCharge q = build_classical_charge(ps);
    try {
        q = extend_charge_hpt(q, target, detail::bound_of(doc, o));
    } catch (const AnsatzExhausted& e) {
        rep.record_failure("AnsatzExhausted at rdeg " + std::to_string(e.rdeg()), e.residual());
    }
    Report master = master_residual(q, target);
    rep.absorb(master);
    rep.command = "build-charge";
    rep.note("Omega = " + format_canonical(q.integrand()));
    out.charge = write_charge_file(q);
    return out;
}

inline CommandResult cmd_solve(const SystemDocument& doc, const CommandOptions& o = {}) {
    Report rep;
    rep.command = "solve";
    for (const auto& n : doc.notes) rep.note(n);
    std::size_t p = o.p.value_or(doc.bounds.p);
    unsigned top = detail::bound_of(doc, o);
    const auto& s = doc.system;
    if (p > s.n()) {
        throw InvalidDegree("eta degree " + std::to_string(p) + " exceeds dimension " + std::to_string(s.n()));
    }
    auto list = [](const std::vector<SuPoly>& reps) {
        std::string t;
        for (const auto& r : reps) t += (t.empty() ? "" : ", ") + format_canonical(r);
        return t.empty() ? std::string("none") : t;
    };
    if (p == 0) {
        CohomologyBasis last;
        for (unsigned d = 0; d <= top; ++d) {
            last = solve_observables(s, d);
            rep.dimensions.push_back(last.row("observables"));
        }
        bool constants = last.classes == 1 && last.representatives.front().terms().begin()->first.empty() &&
                         last.representatives.front().size() == 1;
        rep.note("observables at d=" + std::to_string(top) + ": " + (constants ? "constants only" : list(last.representatives)));
    }
    CohomologyBasis last;
    for (unsigned d = 0; d <= top; ++d) {
        last = solve_stabilizer_classes({s, p, d});
        rep.dimensions.push_back(last.row("stabilizer"));
    }
    rep.note("stabilizer classes at p=" + std::to_string(p) + " d=" + std::to_string(top) + ": " +
             list(last.representatives));
    return {rep, std::nullopt};
}

inline CommandResult cmd_superfield(const SystemDocument& doc, const CommandOptions& o = {}) {
    CommandResult out;
    Report& rep = out.report;
    rep.command = "superfield";
    for (const auto& n : doc.notes) rep.note(n);
    const auto& s = doc.system;
    GeneratingPair gp = doc.superfield ? *doc.superfield : default_generators(s, doc.P.value_or(SuPoly()));
    rep.absorb(check_generating_masters(gp));
    rep.command = "superfield";
    if (!rep.pass) return out;
    auto ps = make_phase_space(s, o.max_jet_order);
    BRSTCharge q = charge_from_generators(gp, ps);
    rep.absorb(total_master_residual(q));
    rep.command = "superfield";
    bool poisson_free = !doc.P || doc.P->is_zero();
    if (poisson_free && !doc.superfield) {
        try {
            BRSTCharge classical = build_classical_charge(ps);
            bool eq = equals_mod_totald(q.integrand(), classical.integrand());
            rep.record("equal mod D", eq ? "true" : "false", eq);
        } catch (const InvolutivityViolation& e) {
            rep.record_failure("equal mod D", std::string("no classical charge: ") + e.what());
        }
    }
    SuPoly quad = momentum_component(q, 2);
    if (!quad.is_zero()) rep.note("momentum degree 2 part: " + format_canonical(quad));
    rep.note("Omega = " + format_canonical(q.integrand()));
    out.charge = write_charge_file(q);
    return out;
}

enum class Command { check, build_charge, solve, superfield };

inline std::optional<Command> command_from_name(const std::string& name) {
    if (name == "check") return Command::check;
    if (name == "build-charge") return Command::build_charge;
    if (name == "solve") return Command::solve;
    if (name == "superfield") return Command::superfield;
    return std::nullopt;
}

inline CommandResult run_command(Command c, const SystemDocument& doc, const CommandOptions& o, bool timing = false) {
    auto start = std::chrono::steady_clock::now();
    CommandResult r;
    switch (c) {
    case Command::check: r = cmd_check(doc, o); break;
    case Command::build_charge: r = cmd_build_charge(doc, o); break;
    case Command::solve: r = cmd_solve(doc, o); break;
    case Command::superfield: r = cmd_superfield(doc, o); break;
    }
    if (timing) {
        r.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return r;
}

} // namespace brstwb
