#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace brstwb;
using brstwb::testing::PolyGenerator;

namespace {

Rational sign(int e) { return (e % 2 != 0) ? Rational(-1) : Rational(1); }

PhaseSpacePtr circle_space(int order = kDefaultMaxJetOrder) {
    return make_phase_space(brstwb::testing::circle_system(), order);
}

std::vector<std::string> low_names() { return {"x", "y", "lam1", "xb_x", "eta_x", "etab_y", "c1", "cb1", "xib1"}; }

} // namespace

TEST_CASE("total derivative acts on jets", "[jet]") {
    auto ps = circle_space();
    CHECK(total_derivative(ps->parse("x^2*y")) == ps->parse("2*x*x_t*y + x^2*y_t"));
    CHECK(total_derivative(ps->parse("c1*eta_x")) == ps->parse("c1_t*eta_x + c1*eta_x_t"));
    CHECK(total_derivative(ps->parse("x_t"), 2) == ps->parse("x_ttt"));
    CHECK(total_derivative(ps->constant(5)).is_zero());
}

TEST_CASE("jet order cap is enforced", "[jet]") {
    auto ps = circle_space(2);
    CHECK_THROWS_AS(total_derivative(ps->parse("x_tt")), JetOrderOverflow);
    CHECK_THROWS_AS(ps->parse("x_ttt"), UnknownIdentifier);
}

TEST_CASE("total derivatives are recognised", "[jet]") {
    auto ps = circle_space();
    CHECK(is_total_derivative(ps->parse("x*x_t")));
    CHECK(is_total_derivative(ps->parse("c1*lamb1_t + c1_t*lamb1")));
    CHECK_FALSE(is_total_derivative(ps->parse("x*y_t")));
    CHECK_FALSE(is_total_derivative(ps->parse("1")));
    CHECK(equals_mod_totald(ps->parse("x*y_t"), ps->parse("-x_t*y")));
    CHECK(euler_derivative(ps->parse("x_t^2"), "x") == ps->parse("-2*x_tt"));
}

TEST_CASE("Euler operator annihilates total derivatives", "[jet][property]") {
    auto ps = circle_space();
    const Roster& r = *ps->roster();
    PolyGenerator gen(ps->roster(), brstwb::testing::keys_up_to(r, 2, low_names()), 4242u);
    for (int t = 0; t < 120; ++t) {
        SuPoly f = gen.poly(4, 3);
        SuPoly df = total_derivative(f);
        CAPTURE(format_canonical(f));
        for (std::size_t b = 0; b < r.size(); ++b) CHECK(euler_derivative(df, b).is_zero());
        CHECK(is_total_derivative(df));
    }
}

TEST_CASE("canonical pairs", "[jet]") {
    auto ps = circle_space();
    CHECK(functional_poisson_bracket(ps->parse("xb_x"), ps->parse("x")) == ps->parse("1"));
    CHECK(functional_poisson_bracket(ps->parse("x"), ps->parse("xb_x")) == ps->parse("-1"));
    CHECK(functional_poisson_bracket(ps->parse("lamb1"), ps->parse("lam1")) == ps->parse("1"));
    CHECK(functional_poisson_bracket(ps->parse("eta_x"), ps->parse("etab_x")) == ps->parse("1"));
    CHECK(functional_poisson_bracket(ps->parse("etab_x"), ps->parse("eta_x")) == ps->parse("1"));
    CHECK(functional_poisson_bracket(ps->parse("x"), ps->parse("y")).is_zero());
    auto bare = make_roster({even_var("x")});
    CHECK_THROWS_AS(functional_poisson_bracket(SuPoly::variable(bare, "x"), SuPoly::variable(bare, "x")), PairingError);
}

TEST_CASE("functional bracket is graded antisymmetric modulo D", "[jet][property]") {
    auto ps = circle_space();
    const Roster& r = *ps->roster();
    PolyGenerator gen(ps->roster(), brstwb::testing::keys_up_to(r, 1, low_names()), 777u);
    for (int t = 0; t < 120; ++t) {
        int pf = gen.uniform(0, 1);
        int pg = gen.uniform(0, 1);
        SuPoly f = gen.nonzero(3, 3, pf);
        SuPoly g = gen.nonzero(3, 3, pg);
        CAPTURE(format_canonical(f), format_canonical(g));
        SuPoly fg = functional_poisson_bracket(f, g);
        SuPoly gf = functional_poisson_bracket(g, f);
        CHECK(equals_mod_totald(fg, -sign(pf * pg) * gf));
    }
}

TEST_CASE("functional bracket respects total derivatives", "[jet][property]") {
    auto ps = circle_space();
    const Roster& r = *ps->roster();
    PolyGenerator gen(ps->roster(), brstwb::testing::keys_up_to(r, 1, low_names()), 1001u);
    for (int t = 0; t < 100; ++t) {
        SuPoly f = gen.poly(3, 3);
        SuPoly g = gen.poly(3, 3);
        CHECK(is_total_derivative(functional_poisson_bracket(total_derivative(f), g)));
    }
}

TEST_CASE("Hamiltonian vector field reproduces the bracket", "[jet][property]") {
    auto ps = circle_space();
    const Roster& r = *ps->roster();
    PolyGenerator gen(ps->roster(), brstwb::testing::keys_up_to(r, 1, low_names()), 2025u);
    for (int t = 0; t < 100; ++t) {
        SuPoly F = gen.poly(3, 3);
        SuPoly g = gen.poly(3, 2);
        CAPTURE(format_canonical(F), format_canonical(g));
        CHECK(equals_mod_totald(evolutionary_field_apply(F, g), functional_poisson_bracket(F, g)));
    }
}

TEST_CASE("local functionals compare modulo D", "[jet]") {
    auto ps = circle_space();
    CHECK(LocalFunctional{ps->parse("x*y_t")} == LocalFunctional{ps->parse("-x_t*y")});
    CHECK_FALSE(LocalFunctional{ps->parse("x*y_t")} == LocalFunctional{ps->parse("x_t*y")});
}
