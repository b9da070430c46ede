#include <doctest.h>

#include "ozc/errors.hpp"
#include "ozc/poly2.hpp"

#include <random>

using namespace ozc;

namespace {

BiPoly rnd_poly(const FieldPtr& F, std::mt19937& rng, unsigned maxdeg, bool field_coeffs) {
    BiPoly p(F);
    int terms = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < terms; i++) {
        Mono m{static_cast<unsigned>(rng() % (maxdeg + 1)),
               static_cast<unsigned>(rng() % (maxdeg + 1))};
        std::vector<Rational> coords(F->degree(), Rational(0));
        unsigned width = field_coeffs ? F->degree() : 1;
        for (unsigned j = 0; j < width; j++) {
            Rational r{Integer(static_cast<long>(rng() % 13) - 6), Integer(1 + rng() % 5)};
            r.canonicalize();
            coords[j] = r;
        }
        p.add_term(m, FieldElement::from_coords(F, coords));
    }
    return p;
}

} // namespace

TEST_CASE("parsing accepts the compact generator notation") {
    auto Q = NumberField::rationals();
    BiPoly x = BiPoly::var_x(Q), y = BiPoly::var_y(Q);
    FieldElement two(Q, Rational(2));

    CHECK(parse_bipoly(Q, "2x") == x * two);
    CHECK(parse_bipoly(Q, "x+y^2") == x + y * y);
    CHECK(parse_bipoly(Q, "-x") == -x);
    CHECK(parse_bipoly(Q, "3y") == y * FieldElement(Q, Rational(3)));
    CHECK(parse_bipoly(Q, "x - x") == BiPoly(Q));
    CHECK(parse_bipoly(Q, "x/2") == x * FieldElement(Q, Rational(1, 2)));
    CHECK(parse_bipoly(Q, "(x+y)^2") == x * x + x * y * two + y * y);
    CHECK(parse_bipoly(Q, "2x^2y") == x * x * y * two);
    CHECK_THROWS_AS(parse_bipoly(Q, "x + "), ParseError);
    CHECK_THROWS_AS(parse_bipoly(Q, "z"), ParseError);
    CHECK_THROWS_AS(parse_bipoly(Q, "x/y"), ParseError);
    CHECK_THROWS_AS(parse_bipoly(Q, ""), ParseError);

    auto F = NumberField::cyclotomic(4);
    BiPoly p = parse_bipoly(F, "(t + 1)*x*y - t");
    CHECK(p.coeff({1, 1}) == FieldElement::generator(F) + FieldElement::one(F));
    CHECK(p.coeff({0, 0}) == -FieldElement::generator(F));
    CHECK(parse_bipoly(F, "t*x") == BiPoly::var_x(F) * FieldElement::generator(F));
}

TEST_CASE("printing round-trips bit for bit") {
    std::mt19937 rng(21u);
    auto Q = NumberField::rationals();
    auto F = NumberField::cyclotomic(12);
    for (int trial = 0; trial < 120; trial++) {
        const FieldPtr& field = trial % 2 ? F : Q;
        BiPoly p = rnd_poly(field, rng, 4, trial % 2 == 1);
        std::string s = p.str();
        BiPoly back = parse_bipoly(field, s);
        CHECK(back == p);
        CHECK(back.str() == s);
    }
    CHECK(BiPoly(Q).str() == "0");
    CHECK(parse_bipoly(Q, "0") == BiPoly(Q));
}

TEST_CASE("substitution composes correctly") {
    auto Q = NumberField::rationals();
    // plug (y, x + y^2) into x + y^2 by hand: y + (x + y^2)^2
    BiPoly f = parse_bipoly(Q, "x + y^2");
    BiPoly g = f.substitute(parse_bipoly(Q, "y"), f);
    CHECK(g == parse_bipoly(Q, "y + x^2 + 2*x*y^2 + y^4"));
    CHECK(g.degree() == 4);

    // substitution is compatible with evaluation
    std::mt19937 rng(5u);
    for (int trial = 0; trial < 30; trial++) {
        BiPoly a = rnd_poly(Q, rng, 3, false);
        BiPoly gx = rnd_poly(Q, rng, 2, false);
        BiPoly gy = rnd_poly(Q, rng, 2, false);
        FieldElement px(Q, Rational(static_cast<long>(rng() % 7) - 3));
        FieldElement py(Q, Rational(static_cast<long>(rng() % 7) - 3));
        FieldElement lhs = a.substitute(gx, gy).evaluate(px, py);
        FieldElement rhs = a.evaluate(gx.evaluate(px, py), gy.evaluate(px, py));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("degrees and leading forms") {
    auto Q = NumberField::rationals();
    BiPoly p = parse_bipoly(Q, "x^2*y + 3*x*y^2 - x + 5");
    CHECK(p.degree() == 3);
    CHECK(p.degree_x() == 2);
    CHECK(p.degree_y() == 2);
    CHECK(p.leading_form() == parse_bipoly(Q, "x^2*y + 3*x*y^2"));
    CHECK(p.homogeneous_part(1) == parse_bipoly(Q, "-x"));
    CHECK(BiPoly(Q).degree() == -1);

    auto c = proportional(parse_bipoly(Q, "2*x^2 + 4*y"), parse_bipoly(Q, "x^2 + 2*y"));
    REQUIRE(c);
    CHECK(*c == FieldElement(Q, Rational(2)));
    CHECK(!proportional(parse_bipoly(Q, "x^2 + y"), parse_bipoly(Q, "x^2 + 2*y")));
    CHECK(!proportional(parse_bipoly(Q, "x"), parse_bipoly(Q, "y")));
    CHECK_THROWS_AS(proportional(parse_bipoly(Q, "x"), BiPoly(Q)), ZeroInput);
}

TEST_CASE("univariate bridge") {
    auto Q = NumberField::rationals();
    BiPoly p = parse_bipoly(Q, "y^3 - 2*y + 1/2");
    auto u = poly_in_y(p);
    REQUIRE(u);
    REQUIRE(u->size() == 4);
    CHECK((*u)[0] == FieldElement(Q, Rational(1, 2)));
    CHECK((*u)[3] == FieldElement::one(Q));
    CHECK(unipoly_in(Q, *u, true) == p);
    CHECK(unipoly_in(Q, *u, false) == parse_bipoly(Q, "x^3 - 2*x + 1/2"));
    CHECK(!poly_in_y(parse_bipoly(Q, "x + y")));
    CHECK(poly_in_y(BiPoly(Q))->empty());
}

TEST_CASE("linear coefficient solving") {
    auto F = NumberField::cyclotomic(4);
    std::mt19937 rng(11u);
    for (int trial = 0; trial < 25; trial++) {
        std::vector<BiPoly> span;
        for (int i = 0; i < 3; i++) span.push_back(rnd_poly(F, rng, 3, true));
        // build a target that is a known combination, then solve it back
        BiPoly target(F);
        for (const BiPoly& s : span) {
            long n = static_cast<long>(rng() % 9) - 4;
            target += s * FieldElement(F, Rational(n));
        }
        auto sol = solve_linear_coeffs(target, span);
        REQUIRE(sol);
        BiPoly rebuilt(F);
        for (size_t i = 0; i < span.size(); i++) rebuilt += span[i] * (*sol)[i];
        CHECK(rebuilt == target);
    }

    auto Q = NumberField::rationals();
    std::vector<BiPoly> span{parse_bipoly(Q, "x"), parse_bipoly(Q, "1")};
    CHECK(!solve_linear_coeffs(parse_bipoly(Q, "y"), span));
    auto s = solve_linear_coeffs(parse_bipoly(Q, "3*x + 2"), span);
    REQUIRE(s);
    CHECK((*s)[0] == FieldElement(Q, Rational(3)));
    CHECK((*s)[1] == FieldElement(Q, Rational(2)));
}
