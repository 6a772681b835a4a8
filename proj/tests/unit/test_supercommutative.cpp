#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace brstwb;
using brstwb::testing::PolyGenerator;

namespace {

RosterPtr mixed_roster(int max_order = 2) {
    return make_roster({even_var("x"), even_var("y"),
                        {"th", {1, 1, 0, 0}, VarClass::ghost},
                        {"ps", {1, -1, 1, 0}, VarClass::ghost},
                        {"pb", {1, 1, 0, 1}, VarClass::momentum}},
                       {}, max_order);
}

Rational koszul(int a, int b) { return (a * b) % 2 ? Rational(-1) : Rational(1); }

} // namespace

TEST_CASE("parse and format agree on canonical strings", "[supercommutative]") {
    auto r = mixed_roster();
    SuPoly p = parse_expression("3/2*x*th - y^2 + th*x_t + 1", r);
    CHECK(format_canonical(p) == "3/2*x*th + x_t*th - y^2 + 1");
    CHECK(parse_expression(format_canonical(p), r) == p);
    CHECK(parse_expression("(x + y)*(x - y)", r) == parse_expression("x^2 - y^2", r));
    CHECK(format_canonical(SuPoly(r)) == "0");
}

TEST_CASE("odd variables anticommute and square to zero", "[supercommutative]") {
    auto r = mixed_roster();
    auto th = SuPoly::variable(r, "th");
    auto ps = SuPoly::variable(r, "ps");
    CHECK((th * th).is_zero());
    CHECK(th * ps == -(ps * th));
    CHECK(parse_expression("th^2", r).is_zero());
    CHECK(format_canonical(th * ps) == "-ps*th");
    auto tht = SuPoly::variable(r, "th", 1);
    CHECK((tht * th + th * tht).is_zero());
}

TEST_CASE("parse errors carry positions", "[supercommutative]") {
    auto r = mixed_roster();
    try {
        parse_expression("x + * y", r);
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.position() == 4);
    }
    try {
        parse_expression("x + zz", r);
        FAIL("expected an unknown identifier");
    } catch (const UnknownIdentifier& e) {
        CHECK(e.position() == 4);
        CHECK(e.name() == "zz");
    }
    CHECK_THROWS_AS(parse_expression("x_ttt", r), UnknownIdentifier);
    CHECK_THROWS_AS(parse_expression("x/0", r), SyntaxError);
    CHECK_THROWS_AS(parse_expression("", r), SyntaxError);
}

TEST_CASE("rosters reject malformed declarations", "[supercommutative]") {
    CHECK_THROWS_AS(make_roster({even_var("x"), even_var("x")}), ShapeError);
    CHECK_THROWS_AS(make_roster({even_var("x_t")}), ShapeError);
    CHECK_THROWS_AS(make_roster({even_var("x")}, {{"x", "p"}}), PairingError);
    CHECK_THROWS_AS(make_roster({even_var("x")}, {}, kMaxSupportedJetOrder + 1), JetOrderOverflow);
}

TEST_CASE("arithmetic across rosters is refused", "[supercommutative]") {
    auto a = mixed_roster();
    auto b = make_roster({even_var("x")});
    CHECK_THROWS_AS(SuPoly::variable(a, "x") + SuPoly::variable(b, "x"), RosterMismatch);
    // Equal declarations are interchangeable.
    CHECK_NOTHROW(SuPoly::variable(a, "x") + SuPoly::variable(mixed_roster(), "y"));
}

TEST_CASE("gradings add under multiplication", "[supercommutative]") {
    auto r = mixed_roster();
    auto g = grading_of(parse_expression("x*th*pb", r));
    CHECK(g == GradingVector{0, 2, 0, 1});
    CHECK_THROWS_AS(grading_of(parse_expression("x + th", r)), InhomogeneousError);
    CHECK(rdeg_component(parse_expression("x + ps + th*ps", r), 1) == parse_expression("ps + th*ps", r));
    CHECK(mdeg_component(parse_expression("x + pb", r), 1) == parse_expression("pb", r));
}

TEST_CASE("derivatives follow the graded Leibniz rule", "[supercommutative]") {
    auto r = mixed_roster();
    auto p = parse_expression("x*th*ps + 2*y*th", r);
    CHECK(derive_left(p, "th") == parse_expression("x*ps + 2*y", r));
    CHECK(derive_right(p, "th") == parse_expression("-x*ps + 2*y", r));
    CHECK(derive_left(p, "ps") == parse_expression("-x*th", r));
}

TEST_CASE("Koszul sign laws on random polynomials", "[supercommutative][property]") {
    auto r = mixed_roster();
    PolyGenerator gen(r, brstwb::testing::keys_up_to(*r, 1), 20240611u);
    for (int t = 0; t < 150; ++t) {
        int pa = gen.uniform(0, 1);
        int pb = gen.uniform(0, 1);
        SuPoly a = gen.nonzero(4, 3, pa);
        SuPoly b = gen.nonzero(4, 3, pb);
        SuPoly c = gen.poly(3, 2);
        CAPTURE(format_canonical(a), format_canonical(b));
        CHECK(a * b == koszul(pa, pb) * (b * a));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        for (const VarKey v : brstwb::testing::keys_up_to(*r, 1)) {
            int pv = r->odd(v) ? 1 : 0;
            CHECK(derive_left(a * b, v) == derive_left(a, v) * b + koszul(pv, pa) * (a * derive_left(b, v)));
            CHECK(derive_right(a * b, v) == a * derive_right(b, v) + koszul(pv, pb) * (derive_right(a, v) * b));
            CHECK(derive_right(a, v) == koszul(pv, pa + 1) * derive_left(a, v));
        }
    }
}

TEST_CASE("canonical format round-trips on random polynomials", "[supercommutative][property]") {
    auto r = mixed_roster();
    PolyGenerator gen(r, brstwb::testing::keys_up_to(*r, 2), 99u);
    for (int t = 0; t < 120; ++t) {
        SuPoly p = gen.poly(5, 4);
        CHECK(parse_expression(format_canonical(p), r) == p);
    }
}
