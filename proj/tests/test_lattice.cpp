// Invariant-lattice classification: hand-worked conjugations and fibrations
// first, then randomized soundness checks against orbit sampling.
#include <doctest.h>

#include "ozc/lattice.hpp"
#include "ozc/errors.hpp"

#include <random>

using namespace ozc;

namespace {

PlaneAutomorphism aut(const FieldPtr& F, const std::string& sx, const std::string& sy) {
    return parse_automorphism(F, sx, sy);
}

BiPoly bp(const FieldPtr& F, const std::string& s) { return parse_bipoly(F, s); }

PlanePoint pt(const FieldPtr& F, const std::string& sx, const std::string& sy) {
    return {parse_field_element(F, sx), parse_field_element(F, sy)};
}

PlaneAutomorphism iterate(const PlaneAutomorphism& phi, unsigned n) {
    PlaneAutomorphism acc = PlaneAutomorphism::identity(phi.field());
    for (unsigned i = 0; i < n; i++) acc = compose(phi, acc);
    return acc;
}

std::vector<BiPoly> cv(const FieldPtr& F, std::initializer_list<std::string> ss) {
    std::vector<BiPoly> out;
    for (const auto& s : ss) out.push_back(parse_bipoly(F, s));
    return Subvariety::of_curves(std::move(out)).curves;
}

} // namespace

TEST_CASE("triangular coefficient extraction") {
    FieldPtr F = NumberField::rationals();
    TriangularData td = triangular_data(aut(F, "2x + y^2 + 3", "5y + 1"));
    CHECK(td.a == FieldElement(F, Rational(2)));
    CHECK(td.b == FieldElement(F, Rational(5)));
    CHECK(td.c == FieldElement(F, Rational(1)));
    REQUIRE(td.P.size() == 3);
    CHECK(td.P[0] == FieldElement(F, Rational(3)));
    CHECK(td.P[1] == FieldElement::zero(F));
    CHECK(td.P[2] == FieldElement::one(F));
    CHECK_THROWS_AS(triangular_data(aut(F, "y", "x + y^2")), NotTriangular);
}

TEST_CASE("diagonalization matches a hand conjugation") {
    FieldPtr F = NumberField::rationals();
    PlaneAutomorphism phi = aut(F, "2x + y^2", "3y + 1");
    // y0 = 1/(1-3) = -1/2; P(yt - 1/2) = yt^2 - yt + 1/4 splits against
    // denominators 1-2, 3-2, 9-2
    PlaneAutomorphism alpha_hand(
        bp(F, "x - (-1/4 - (y + 1/2) + 1/7 (y + 1/2)^2)"), bp(F, "y + 1/2"));
    Diagonalization dg = diagonalize_triangular(phi);
    CHECK(dg.alpha == alpha_hand);
    CHECK(dg.tilde == aut(F, "2x", "3y"));
    CHECK(dg.h1.empty());
    CHECK(compose(dg.alpha, dg.alpha_inv).is_identity());

    // resonance b^1 == a keeps the linear term
    Diagonalization rs = diagonalize_triangular(aut(F, "2x + y", "2y"));
    CHECK(rs.tilde == aut(F, "2x + y", "2y"));
    REQUIRE(rs.h1.size() == 2);
    CHECK(rs.h1[1] == FieldElement::one(F));
}

TEST_CASE("model powers scale the matched part linearly") {
    FieldPtr F = NumberField::rationals();
    std::mt19937 rng(421);
    std::vector<Rational> pool{Rational(1), Rational(-1), Rational(2), Rational(3),
                               Rational(1, 2), Rational(-2)};
    for (int trial = 0; trial < 40; trial++) {
        FieldElement a(F, pool[rng() % pool.size()]);
        FieldElement b(F, pool[rng() % pool.size()]);
        BiPoly P(F);
        for (unsigned k = 0; k <= rng() % 5; k++)
            P += BiPoly::var_y(F).pow(k) *
                 FieldElement(F, Rational(static_cast<long>(rng() % 5) - 2));
        FieldElement c(F, rng() % 2 ? Rational(0) : Rational(1));
        if (b == FieldElement::one(F)) c = FieldElement::zero(F);
        PlaneAutomorphism phi(BiPoly::var_x(F) * a + P,
                              BiPoly::var_y(F) * b + BiPoly::constant(c));
        Diagonalization dg = diagonalize_triangular(phi);
        BiPoly h1amb = unipoly_in(F, dg.h1, true);
        for (unsigned n : {2u, 3u, 5u}) {
            PlaneAutomorphism pw = iterate(dg.tilde, n);
            FieldElement an = dg.a.pow(n), bn = dg.b.pow(n);
            FieldElement slope = FieldElement(F, Rational(n)) * dg.a.pow(n - 1);
            CHECK(pw.fx() == BiPoly::var_x(F) * an +
                                 h1amb.substitute(BiPoly::var_x(F), BiPoly::var_y(F)) * slope);
            CHECK(pw.fy() == BiPoly::var_y(F) * bn);
        }
        // ambient equivariance of the new coordinates
        CHECK(phi.pullback(dg.alpha.fy()) == dg.alpha.fy() * dg.b);
        CHECK(phi.pullback(dg.alpha.fx()) ==
              dg.alpha.fx() * dg.a +
                  h1amb.substitute(BiPoly::var_x(F), dg.alpha.fy()));
    }
}

TEST_CASE("subvarieties normalize and test membership") {
    FieldPtr F = NumberField::rationals();
    Subvariety pts = Subvariety::of_points({pt(F, "1", "2"), pt(F, "0", "0"), pt(F, "1", "2")});
    REQUIRE(pts.points.size() == 2);
    CHECK(pts.contains(pt(F, "1", "2")));
    CHECK(!pts.contains(pt(F, "2", "1")));
    Subvariety cs = Subvariety::of_curves({bp(F, "2x - 2y"), bp(F, "x - y"), bp(F, "y")});
    REQUIRE(cs.curves.size() == 2);
    CHECK(cs.contains(pt(F, "3", "3")));
    CHECK(cs.contains(pt(F, "5", "0")));
    CHECK(!cs.contains(pt(F, "1", "2")));
    CHECK(Subvariety::plane().contains(pt(F, "7", "-1")));

    CHECK(is_invariant(aut(F, "2x", "3y"), Subvariety::of_curves({bp(F, "x")})));
    CHECK(is_invariant(aut(F, "y", "x"), Subvariety::of_curves({bp(F, "x"), bp(F, "y")})));
    CHECK(!is_invariant(aut(F, "x + 1", "y"), Subvariety::of_curves({bp(F, "x")})));
    CHECK(is_invariant(aut(F, "y", "x"),
                       Subvariety::of_points({pt(F, "1", "2"), pt(F, "2", "1")})));
    CHECK(!is_invariant(aut(F, "y", "x"), Subvariety::of_points({pt(F, "1", "2")})));
}

TEST_CASE("classification: translated base cases") {
    FieldPtr F = NumberField::rationals();

    LatticeDescriptor d = classify(aut(F, "x + y^2", "y + 1"));
    REQUIRE(d.kind == LatticeKind::OrbitFibration);
    CHECK(*d.pi == bp(F, "x - 1/3 y^3 + 1/2 y^2 - 1/6 y"));
    CHECK(d.grouping == 1);
    CHECK(d.torsion_locus.empty());

    d = classify(aut(F, "-x + y", "y + 1"));
    REQUIRE(d.kind == LatticeKind::OrbitFibration);
    CHECK(*d.pi == bp(F, "x - 1/2 y + 1/4"));
    CHECK(d.grouping == 2);
    CHECK(*d.scaling == FieldElement(F, Rational(-1)));

    d = classify(aut(F, "2x + y", "y + 1"));
    REQUIRE(d.kind == LatticeKind::NonFibration);
    REQUIRE(d.curves.size() == 1);
    CHECK(d.curves[0] == bp(F, "x + y + 1"));
    CHECK(!d.special_point);
    CHECK(d.multdep_exhaustive);

    d = classify(aut(F, "x", "y + 1"));
    REQUIRE(d.kind == LatticeKind::OrbitFibration);
    CHECK(*d.pi == bp(F, "x"));
}

TEST_CASE("classification: finite order and torsion fibrations") {
    FieldPtr F = NumberField::rationals();

    LatticeDescriptor d = classify(aut(F, "-x + y^2", "-y"));
    REQUIRE(d.kind == LatticeKind::FiniteOrder);
    CHECK(d.order == 2);

    FieldPtr C = NumberField::cyclotomic(12);
    d = classify(aut(C, "t x", "t^4 y"));
    REQUIRE(d.kind == LatticeKind::FiniteOrder);
    CHECK(d.order == 12);

    d = classify(aut(F, "x + y^2", "-y"));
    REQUIRE(d.kind == LatticeKind::OrbitFibration);
    CHECK(*d.pi == bp(F, "y"));
    CHECK(d.grouping == 2);
    REQUIRE(d.torsion_locus.size() == 1);
    CHECK(d.torsion_locus[0] == bp(F, "y"));
    CHECK(d.torsion_order == 2);
    CHECK(!d.transversal);

    d = classify(aut(F, "x + y^4 + y^2", "-y"));
    REQUIRE(d.kind == LatticeKind::OrbitFibration);
    REQUIRE(d.torsion_locus.size() == 2);
    CHECK(d.torsion_locus[0] == bp(F, "y"));
    CHECK(d.torsion_locus[1] == bp(F, "y^2 + 1"));
}

TEST_CASE("classification: one root of unity, one free scalar") {
    FieldPtr F = NumberField::rationals();

    LatticeDescriptor d = classify(aut(F, "2x", "-y"));
    REQUIRE(d.kind == LatticeKind::OrbitFibration);
    CHECK(*d.pi == bp(F, "y"));
    CHECK(d.grouping == 2);
    REQUIRE(d.transversal);
    CHECK(*d.transversal == bp(F, "x"));
    REQUIRE(d.torsion_locus.size() == 1);
    CHECK(d.torsion_locus[0] == bp(F, "x"));
    CHECK(d.torsion_order == 2);

    d = classify(aut(F, "-x", "3y"));
    REQUIRE(d.kind == LatticeKind::OrbitFibration);
    CHECK(*d.pi == bp(F, "x"));
    CHECK(d.grouping == 2);
    CHECK(*d.transversal == bp(F, "y"));

    // x-translation times free scaling: fibers in both directions move
    d = classify(aut(F, "x + 1", "2y"));
    REQUIRE(d.kind == LatticeKind::NonFibration);
    REQUIRE(d.curves.size() == 1);
    CHECK(d.curves[0] == bp(F, "y"));
    CHECK(!d.special_point);
}

TEST_CASE("classification: free scalars") {
    FieldPtr F = NumberField::rationals();

    LatticeDescriptor d = classify(aut(F, "2x + y", "2y + 2"));
    REQUIRE(d.kind == LatticeKind::NonFibration);
    REQUIRE(d.curves.size() == 1);
    CHECK(d.curves[0] == bp(F, "y + 2"));
    REQUIRE(d.special_point);
    CHECK(*d.special_point == pt(F, "2", "-2"));

    d = classify(aut(F, "4x", "8y"));
    REQUIRE(d.kind == LatticeKind::ProjectiveQuotient);
    CHECK(*d.pq_num == bp(F, "x^3"));
    CHECK(*d.pq_den == bp(F, "y^2"));
    CHECK(d.pq_s1 == 3);
    CHECK(d.pq_s2 == 2);
    CHECK(d.grouping == 1);
    CHECK(!d.pq_mixed);
    REQUIRE(d.pq_special.size() == 2);
    CHECK(d.pq_special[0] == bp(F, "x"));
    CHECK(d.pq_special[1] == bp(F, "y"));
    CHECK(*d.special_point == pt(F, "0", "0"));

    d = classify(aut(F, "2x", "-2y"));
    REQUIRE(d.kind == LatticeKind::ProjectiveQuotient);
    CHECK(*d.pq_num == bp(F, "x"));
    CHECK(*d.pq_den == bp(F, "y"));
    CHECK(d.grouping == 2);
    CHECK(*d.scaling == FieldElement(F, Rational(-1)));

    d = classify(aut(F, "2x", "1/2 y"));
    REQUIRE(d.kind == LatticeKind::ProjectiveQuotient);
    CHECK(d.pq_mixed);
    CHECK(*d.pq_num == bp(F, "x y"));
    CHECK(*d.pq_den == bp(F, "1"));
    CHECK(d.grouping == 1);

    d = classify(aut(F, "2x", "3y"));
    REQUIRE(d.kind == LatticeKind::NonFibration);
    REQUIRE(d.curves.size() == 2);
    CHECK(d.curves[0] == bp(F, "x"));
    CHECK(d.curves[1] == bp(F, "y"));
    CHECK(*d.special_point == pt(F, "0", "0"));
    CHECK(d.multdep_exhaustive);
}

TEST_CASE("classification: bounded dependence search is flagged") {
    FieldPtr F = NumberField::cyclotomic(5);
    PlaneAutomorphism phi(BiPoly::var_x(F) * (FieldElement::one(F) + FieldElement::generator(F)),
                          BiPoly::var_y(F) *
                              (FieldElement::one(F) + FieldElement::generator(F).pow(2)));
    LatticeDescriptor d = classify(phi, 8);
    REQUIRE(d.kind == LatticeKind::NonFibration);
    CHECK(!d.multdep_exhaustive);
    MinimalInvariant mi = minimal_invariant_through(d, phi, pt(F, "1", "1"));
    CHECK(mi.variety.kind == Subvariety::Kind::Plane);
    CHECK(!mi.exhaustive);
}

TEST_CASE("classification of affine maps through their eigenbasis") {
    FieldPtr F = NumberField::rationals();

    LatticeDescriptor d = classify(aut(F, "y", "x"));
    REQUIRE(d.kind == LatticeKind::FiniteOrder);
    CHECK(d.order == 2);

    PlaneAutomorphism dbl = aut(F, "2y", "2x");
    d = classify(dbl);
    REQUIRE(d.kind == LatticeKind::ProjectiveQuotient);
    CHECK(d.grouping == 2);
    MinimalInvariant mi = minimal_invariant_through(d, dbl, pt(F, "1", "0"));
    REQUIRE(mi.variety.kind == Subvariety::Kind::Curves);
    CHECK(mi.variety.curves == cv(F, {"x", "y"}));

    try {
        classify(aut(F, "-y", "x"));
        FAIL("rotation must not classify over the rationals");
    } catch (const EigenvalueOutsideField& e) {
        CHECK(e.char_poly == "t^2 - (0)*t + (1)");
    }
    FieldPtr C = NumberField::cyclotomic(4);
    d = classify(aut(C, "-y", "x"));
    REQUIRE(d.kind == LatticeKind::FiniteOrder);
    CHECK(d.order == 4);

    // unipotent shear: every vertical line is fixed
    PlaneAutomorphism shear = aut(F, "x", "x + y");
    d = classify(shear);
    REQUIRE(d.kind == LatticeKind::OrbitFibration);
    CHECK(*d.pi == bp(F, "x"));
    CHECK(d.grouping == 1);
    REQUIRE(d.torsion_locus.size() == 1);
    CHECK(d.torsion_locus[0] == bp(F, "x"));
    MinimalInvariant on_axis = minimal_invariant_through(d, shear, pt(F, "0", "7"));
    REQUIRE(on_axis.variety.kind == Subvariety::Kind::Points);
    CHECK(on_axis.variety.points == std::vector<PlanePoint>{pt(F, "0", "7")});
    MinimalInvariant off = minimal_invariant_through(d, shear, pt(F, "2", "0"));
    CHECK(off.variety.curves == std::vector<BiPoly>{bp(F, "x - 2")});

    // affine glide: pairs of antidiagonal lines swap, one line is fixed
    PlaneAutomorphism glide = aut(F, "y + 1", "x");
    d = classify(glide);
    REQUIRE(d.kind == LatticeKind::OrbitFibration);
    CHECK(equivalent_affine_fibration(bp(F, "x - y"), *d.pi));
    CHECK(d.grouping == 2);
    MinimalInvariant mg = minimal_invariant_through(d, glide, pt(F, "0", "0"));
    CHECK(mg.variety.curves == cv(F, {"x - y - 1", "x - y"}));

    CHECK_THROWS_AS(classify(aut(F, "y", "x + y^2")), NotTriangular);
}

TEST_CASE("minimal invariant sets match direct orbits") {
    FieldPtr F = NumberField::rationals();

    PlaneAutomorphism tw = aut(F, "x + y^2", "-y");
    LatticeDescriptor d = classify(tw);
    MinimalInvariant mi = minimal_invariant_through(d, tw, pt(F, "0", "1"));
    CHECK(mi.variety.curves == cv(F, {"y - 1", "y + 1"}));
    mi = minimal_invariant_through(d, tw, pt(F, "5", "0"));
    REQUIRE(mi.variety.kind == Subvariety::Kind::Points);
    CHECK(mi.variety.points == std::vector<PlanePoint>{pt(F, "5", "0")});

    PlaneAutomorphism half = aut(F, "2x", "-y");
    d = classify(half);
    mi = minimal_invariant_through(d, half, pt(F, "0", "5"));
    REQUIRE(mi.variety.kind == Subvariety::Kind::Points);
    CHECK(mi.variety.points ==
          std::vector<PlanePoint>{pt(F, "0", "-5"), pt(F, "0", "5")});
    mi = minimal_invariant_through(d, half, pt(F, "3", "0"));
    CHECK(mi.variety.curves == std::vector<BiPoly>{bp(F, "y")});

    PlaneAutomorphism hyp = aut(F, "2x", "1/2 y");
    d = classify(hyp);
    mi = minimal_invariant_through(d, hyp, pt(F, "1", "1"));
    CHECK(mi.variety.curves == std::vector<BiPoly>{bp(F, "x y - 1")});
    mi = minimal_invariant_through(d, hyp, pt(F, "1", "0"));
    CHECK(mi.variety.curves == std::vector<BiPoly>{bp(F, "y")});
    mi = minimal_invariant_through(d, hyp, pt(F, "0", "0"));
    REQUIRE(mi.variety.kind == Subvariety::Kind::Points);
    CHECK(mi.variety.points == std::vector<PlanePoint>{pt(F, "0", "0")});

    PlaneAutomorphism ind = aut(F, "2x", "3y");
    d = classify(ind);
    mi = minimal_invariant_through(d, ind, pt(F, "1", "1"));
    CHECK(mi.variety.kind == Subvariety::Kind::Plane);
    mi = minimal_invariant_through(d, ind, pt(F, "1", "0"));
    CHECK(mi.variety.curves == std::vector<BiPoly>{bp(F, "y")});
}

TEST_CASE("randomized lattice soundness against orbit sampling") {
    FieldPtr F = NumberField::rationals();
    std::mt19937 rng(1105);
    std::vector<Rational> scalars{Rational(1), Rational(-1), Rational(2), Rational(3),
                                  Rational(1, 2), Rational(-2)};
    std::vector<Rational> small{Rational(0), Rational(1), Rational(-1), Rational(2)};
    for (int trial = 0; trial < 60; trial++) {
        FieldElement a(F, scalars[rng() % scalars.size()]);
        FieldElement b(F, scalars[rng() % scalars.size()]);
        FieldElement c(F, small[rng() % small.size()]);
        BiPoly P(F);
        for (unsigned k = 0; k <= rng() % 4; k++)
            P += BiPoly::var_y(F).pow(k) * FieldElement(F, small[rng() % small.size()]);
        PlaneAutomorphism phi(BiPoly::var_x(F) * a + P,
                              BiPoly::var_y(F) * b + BiPoly::constant(c));
        LatticeDescriptor d = classify(phi);

        if (d.kind == LatticeKind::FiniteOrder) {
            CHECK(iterate(phi, static_cast<unsigned>(d.order)).is_identity());
            continue;
        }
        PlanePoint p = pt(F, std::to_string(static_cast<long>(rng() % 5) - 2),
                          std::to_string(static_cast<long>(rng() % 5) - 2));
        MinimalInvariant mi = minimal_invariant_through(d, phi, p);
        CHECK(mi.exhaustive);
        CHECK(mi.variety.contains(p));
        CHECK(is_invariant(phi, mi.variety));
        PlanePoint cur = p;
        for (int i = 0; i < 50; i++) {
            cur = phi.apply(cur);
            REQUIRE(mi.variety.contains(cur));
        }
    }
}

TEST_CASE("fibration equivalence and equivariance solves") {
    FieldPtr F = NumberField::rationals();

    auto e = affine_equivariant(bp(F, "x"), aut(F, "2x", "y + 1"));
    REQUIRE(e);
    CHECK(e->u == FieldElement(F, Rational(2)));
    CHECK(e->v == FieldElement::zero(F));
    e = affine_equivariant(bp(F, "x - y^2"), aut(F, "x + 1", "y"));
    REQUIRE(e);
    CHECK(e->u == FieldElement::one(F));
    CHECK(e->v == FieldElement::one(F));
    CHECK(!affine_equivariant(bp(F, "x"), aut(F, "y", "x")));
    CHECK_THROWS_AS(affine_equivariant(bp(F, "3"), aut(F, "y", "x")), ZeroInput);

    auto m = projective_equivariant(bp(F, "x"), bp(F, "y"), aut(F, "2x", "3y"));
    REQUIRE(m);
    CHECK(m->m11 == FieldElement(F, Rational(2)));
    CHECK(m->m12 == FieldElement::zero(F));
    CHECK(m->m21 == FieldElement::zero(F));
    CHECK(m->m22 == FieldElement(F, Rational(3)));
    m = projective_equivariant(bp(F, "x"), bp(F, "y"), aut(F, "y", "x"));
    REQUIRE(m);
    CHECK(m->m11 == FieldElement::zero(F));
    CHECK(m->m12 == FieldElement::one(F));
    CHECK(!projective_equivariant(bp(F, "x"), bp(F, "y"), aut(F, "x + 1", "y")));
    CHECK_THROWS_AS(projective_equivariant(bp(F, "x"), bp(F, "2x"), aut(F, "y", "x")),
                    ZeroInput);

    CHECK(equivalent_affine_fibration(bp(F, "x"), bp(F, "2x + 1")));
    CHECK(!equivalent_affine_fibration(bp(F, "x"), bp(F, "y")));
    CHECK(equivalent_projective_pair(bp(F, "x"), bp(F, "y"), bp(F, "x + y"), bp(F, "y")));
    CHECK(!equivalent_projective_pair(bp(F, "x"), bp(F, "y"), bp(F, "x y"), bp(F, "1")));

    LatticeDescriptor d1 = classify(aut(F, "-x + y", "y + 1"));
    LatticeDescriptor d2 = classify(aut(F, "y - x - 1", "y - 1"));
    CHECK(equivalent_fibration(d1, d2));
    LatticeDescriptor d3 = classify(aut(F, "x + 5", "y + 3"));
    CHECK(!equivalent_fibration(d1, d3));
    LatticeDescriptor pq1 = classify(aut(F, "4x", "8y"));
    LatticeDescriptor pq2 = classify(aut(F, "16x", "64y"));
    CHECK(equivalent_fibration(pq1, pq2));
    LatticeDescriptor pq3 = classify(aut(F, "2x", "2y"));
    CHECK(!equivalent_fibration(pq1, pq3));
    CHECK_THROWS_AS(equivalent_fibration(d1, pq1), KindMismatch);
}

TEST_CASE("support intersections keep exactly the shared finite unions") {
    FieldPtr F = NumberField::rationals();

    PlaneAutomorphism A = aut(F, "2x", "2y");
    LatticeDescriptor da = classify(A);

    PlaneAutomorphism B = aut(F, "2x - 1", "2y");
    Subvariety shared = support_intersection_dim1(da, A, classify(B), B);
    CHECK(shared.curves == std::vector<BiPoly>{bp(F, "y")});

    PlaneAutomorphism C = aut(F, "x + y^2", "y");
    shared = support_intersection_dim1(da, A, classify(C), C);
    CHECK(shared.curves == std::vector<BiPoly>{bp(F, "y")});

    PlaneAutomorphism D1 = aut(F, "-x", "3y");
    PlaneAutomorphism D2 = aut(F, "-x + 10(y - 1)^2", "3y - 2");
    shared = support_intersection_dim1(classify(D1), D1, classify(D2), D2);
    CHECK(shared.curves.empty());

    PlaneAutomorphism E1 = aut(F, "2x", "3y");
    PlaneAutomorphism E2 = aut(F, "3x", "2y");
    shared = support_intersection_dim1(classify(E1), E1, classify(E2), E2);
    CHECK(shared.curves == cv(F, {"x", "y"}));

    PlaneAutomorphism T = aut(F, "x", "y + 1");
    shared = support_intersection_dim1(classify(T), T, classify(E1), E1);
    CHECK(shared.curves == std::vector<BiPoly>{bp(F, "x")});

    CHECK_THROWS_AS(
        support_intersection_dim1(classify(T), T, classify(aut(F, "-x", "-y")),
                                  aut(F, "-x", "-y")),
        KindMismatch);
    PlaneAutomorphism Tinv = invert(T);
    CHECK_THROWS_AS(support_intersection_dim1(classify(T), T, classify(Tinv), Tinv),
                    KindMismatch);
}

TEST_CASE("classification output is reproducible") {
    FieldPtr F = NumberField::cyclotomic(12);
    PlaneAutomorphism phi = aut(F, "t x + y^2 + (t^2 - 1) y", "t^4 y");
    LatticeDescriptor d1 = classify(phi);
    LatticeDescriptor d2 = classify(phi);
    REQUIRE(d1.kind == d2.kind);
    if (d1.pi) CHECK(*d1.pi == *d2.pi);
    CHECK(d1.grouping == d2.grouping);
    CHECK(d1.torsion_locus == d2.torsion_locus);
    MinimalInvariant m1 = minimal_invariant_through(d1, phi, pt(F, "1", "1"));
    MinimalInvariant m2 = minimal_invariant_through(d2, phi, pt(F, "1", "1"));
    CHECK(m1.variety.str() == m2.variety.str());
}
