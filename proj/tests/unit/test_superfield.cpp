#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace brstwb;
using brstwb::testing::PolyGenerator;

namespace {

Rational sign(int e) { return (e % 2 != 0) ? Rational(-1) : Rational(1); }

struct PlaneCharge {
    InvolutiveSystem system = brstwb::testing::rotating_plane();
    GeneratingPair generators = default_generators(system, brstwb::testing::plane_bivector(system));
    PhaseSpacePtr space = make_phase_space(system);
    BRSTCharge charge = charge_from_generators(generators, space);
};

} // namespace

TEST_CASE("antifield roster gradings", "[superfield]") {
    AntiRoster anti({"x", "y"}, 1, 1);
    const Roster& r = *anti.roster();
    CHECK(r.grading(r.key("xs_x")) == GradingVector{1, 1, 0, 1});
    CHECK(r.grading(r.key("etac1")) == GradingVector{1, -1, 1, 0});
    CHECK(r.grading(r.key("etacs1")) == GradingVector{0, 2, 0, 1});
    CHECK(r.grading(r.key("cs1")) == GradingVector{0, 0, 1, 1});
    auto fr = make_frame({"x", "y"});
    CHECK(anti.from_polyvector(fr->parse("x*etab_y")) == anti.parse("x*xs_y"));
    CHECK(antibracket(anti.parse("xs_x"), anti.parse("x")) == anti.parse("1"));
    AntiRoster other({"x", "y"}, 0, 0);
    CHECK_THROWS_AS(antibracket(anti.parse("x"), other.parse("xs_x")), RosterMismatch);
}

TEST_CASE("default generators of the circle", "[superfield]") {
    auto s = brstwb::testing::circle_system();
    auto gp = default_generators(s);
    CHECK(gp.S == gp.anti->parse("etacs1*(x^2 + y^2 - 1) + (-y*xs_x + x*xs_y)*c1"));
    CHECK(gp.Gamma.is_zero());
    CHECK(check_generating_masters(gp).pass);
}

TEST_CASE("circle charge from generators agrees with the classical charge", "[superfield]") {
    auto s = brstwb::testing::circle_system();
    auto ps = make_phase_space(s);
    auto q = charge_from_generators(default_generators(s), ps);
    CHECK(total_master_residual(q).pass);
    CHECK(equals_mod_totald(q.integrand(), build_classical_charge(ps).integrand()));
    CHECK(momentum_component(q, 2).is_zero());
}

TEST_CASE("constant bivector gives the expected quadratic part", "[superfield]") {
    PlaneCharge pc;
    CHECK(check_generating_masters(pc.generators).pass);
    CHECK(total_master_residual(pc.charge).pass);
    SuPoly quad = momentum_component(pc.charge, 2);
    CHECK(quad == pc.space->parse("xb_x*etab_y - xb_y*etab_x"));
    CHECK(quad == pc.space->tau(pc.space->embed(brstwb::testing::plane_bivector(pc.system))));
    CHECK(weak_poisson_bracket(pc.generators, pc.generators.anti->parse("x"), pc.generators.anti->parse("y")) ==
          pc.generators.anti->parse("-1"));
}

TEST_CASE("violated master equations are reported", "[superfield]") {
    auto fr = make_frame({"x", "y"});
    auto s = make_system(fr, fr->zero(), {fr->parse("etab_x")}, {fr->parse("x")});
    auto gp = default_generators(s);
    auto rep = check_generating_masters(gp);
    CHECK_FALSE(rep.pass);
    CHECK(rep.failures().front().name == "(S,S)");
    CHECK_THROWS_AS(charge_from_generators(gp), MasterViolation);

    auto circle = default_generators(brstwb::testing::circle_system());
    circle.S += circle.anti->parse("c1");
    auto bad = check_generating_masters(circle);
    CHECK_FALSE(bad.pass);
    CHECK(bad.failures().front().name == "S grading");
}

TEST_CASE("charges need matching phase spaces", "[superfield]") {
    auto gp = default_generators(brstwb::testing::circle_system());
    auto ps = make_phase_space(brstwb::testing::rotating_plane());
    CHECK_THROWS_AS(charge_from_generators(gp, ps), RosterMismatch);
    CHECK_NOTHROW(charge_from_generators(gp));
}

TEST_CASE("multibracket argument rules", "[superfield]") {
    PlaneCharge pc;
    const auto& ps = *pc.space;
    CHECK_THROWS_AS(multibracket(pc.charge, 2, {{ps.parse("xb_x")}, {ps.parse("x")}}), ShapeError);
    CHECK_THROWS_AS(multibracket(pc.charge, 2, {{ps.parse("x")}}), ShapeError);
    std::vector<std::string> warnings;
    auto none = multibracket(pc.charge, 3, {{ps.parse("x")}, {ps.parse("y")}, {ps.parse("x")}}, &warnings);
    CHECK(none.integrand.is_zero());
    REQUIRE(warnings.size() == 1);
    auto two = [&](const char* a, const char* b) {
        return weak_antibracket(pc.charge, {ps.parse(a)}, {ps.parse(b)}).integrand;
    };
    CHECK(two("x", "eta_y") == ps.parse("1"));
    CHECK(two("y", "eta_x") == ps.parse("-1"));
    CHECK(two("x", "y").is_zero());
}

TEST_CASE("antibracket is graded antisymmetric", "[superfield][property]") {
    AntiRoster anti({"x", "y"}, 1, 1);
    PolyGenerator gen(anti.roster(), brstwb::testing::keys_up_to(*anti.roster(), 0), 5150u);
    for (int t = 0; t < 120; ++t) {
        int pf = gen.uniform(0, 1);
        int pg = gen.uniform(0, 1);
        SuPoly f = gen.nonzero(3, 3, pf);
        SuPoly g = gen.nonzero(3, 3, pg);
        CAPTURE(format_canonical(f), format_canonical(g));
        CHECK(antibracket(f, g) == -sign((pf + 1) * (pg + 1)) * antibracket(g, f));
    }
}

TEST_CASE("superfield integral is a bracket homomorphism", "[superfield][property]") {
    auto s = brstwb::testing::circle_system();
    auto ps = make_phase_space(s);
    AntiRoster anti(s.frame->coordinates(), s.m(), s.l());
    PolyGenerator gen(anti.roster(), brstwb::testing::keys_up_to(*anti.roster(), 0), 60606u);
    for (int t = 0; t < 120; ++t) {
        SuPoly F = gen.poly(3, 3);
        SuPoly G = gen.poly(3, 3);
        CAPTURE(format_canonical(F), format_canonical(G));
        SuPoly lhs = functional_poisson_bracket(superfield_integral(anti, *ps, F), superfield_integral(anti, *ps, G));
        SuPoly rhs = superfield_integral(anti, *ps, antibracket(F, G));
        CHECK(equals_mod_totald(lhs, rhs));
    }
}

TEST_CASE("weak antibracket laws on random functionals", "[superfield][property]") {
    PlaneCharge pc;
    const Roster& r = *pc.space->roster();
    PolyGenerator gen(pc.space->roster(), brstwb::testing::keys_up_to(r, 1, {"x", "y", "eta_x", "eta_y"}), 1234u);
    for (int t = 0; t < 100; ++t) {
        LocalFunctional a{gen.nonzero(3, 3, gen.uniform(0, 1))};
        LocalFunctional b{gen.nonzero(3, 3, gen.uniform(0, 1))};
        LocalFunctional c{gen.nonzero(2, 2, gen.uniform(0, 1))};
        CAPTURE(format_canonical(a.integrand), format_canonical(b.integrand), format_canonical(c.integrand));
        CHECK(is_total_derivative(antibracket_symmetry_residual(pc.charge, a, b)));
        CHECK(is_total_derivative(leibniz_residual(pc.charge, a, b)));
        CHECK(is_total_derivative(weak_jacobi_residual(pc.charge, a, b, c)));
    }
}

TEST_CASE("parity of functionals", "[superfield]") {
    PlaneCharge pc;
    CHECK(functional_parity({pc.space->parse("x*eta_y")}) == 1);
    CHECK(functional_parity({pc.space->zero()}) == 0);
    CHECK_THROWS_AS(functional_parity({pc.space->parse("x + eta_y")}), InhomogeneousError);
}
