#include "ozc/lattice.hpp"
#include "ozc/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

namespace ozc {

TriangularData triangular_data(const PlaneAutomorphism& phi) {
    if (!phi.is_triangular())
        throw NotTriangular("expected a map of the form (a x + P(y), b y + c)");
    const FieldPtr& F = phi.field();
    FieldElement a = phi.fx().coeff({1, 0});
    BiPoly rest = phi.fx() - BiPoly::var_x(F) * a;
    return {a, *poly_in_y(rest), phi.fy().coeff({0, 1}), phi.fy().coeff({0, 0})};
}

namespace {

PlaneAutomorphism power_of(const PlaneAutomorphism& phi, unsigned long n) {
    PlaneAutomorphism acc = PlaneAutomorphism::identity(phi.field());
    PlaneAutomorphism sq = phi;
    while (n) {
        if (n & 1) acc = compose(acc, sq);
        sq = n > 1 ? compose(sq, sq) : sq;
        n >>= 1;
    }
    return acc;
}

std::vector<PlanePoint> finite_orbit(const PlaneAutomorphism& phi, const PlanePoint& p,
                                     unsigned long cap) {
    std::vector<PlanePoint> pts{p};
    PlanePoint cur = phi.apply(p);
    while (!(cur == p)) {
        if (pts.size() > cap)
            throw InternalVerificationFailure("orbit expected to close within " +
                                              std::to_string(cap) + " steps");
        pts.push_back(cur);
        cur = phi.apply(cur);
    }
    return pts;
}

UniPoly trimmed(UniPoly u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
    return u;
}

} // namespace

Diagonalization diagonalize_triangular(const PlaneAutomorphism& phi) {
    const FieldPtr& F = phi.field();
    TriangularData td = triangular_data(phi);
    FieldElement one = FieldElement::one(F), zero = FieldElement::zero(F);
    if (td.b == one && !td.c.is_zero())
        throw InternalVerificationFailure("cannot remove a unipotent translation downstairs");
    BiPoly X = BiPoly::var_x(F), Y = BiPoly::var_y(F);

    FieldElement y0 = td.b == one ? zero : td.c * (one - td.b).inverse();
    UniPoly pt = *poly_in_y(
        unipoly_in(F, td.P, true).substitute(X, Y + BiPoly::constant(y0)));

    UniPoly h(pt.size(), zero), h1(pt.size(), zero);
    FieldElement bpow = one;
    for (size_t i = 0; i < pt.size(); i++) {
        if (bpow == td.a) h1[i] = pt[i];
        else h[i] = pt[i] * (bpow - td.a).inverse();
        bpow *= td.b;
    }

    BiPoly ytil = Y - BiPoly::constant(y0);
    PlaneAutomorphism alpha(X - unipoly_in(F, h, true).substitute(X, ytil), ytil);
    PlaneAutomorphism alpha_inv(X + unipoly_in(F, h, true), Y + BiPoly::constant(y0));
    PlaneAutomorphism tilde = compose(alpha, compose(phi, alpha_inv));
    PlaneAutomorphism expected(X * td.a + unipoly_in(F, h1, true), Y * td.b);
    if (!(tilde == expected))
        throw InternalVerificationFailure("coordinate change did not reach the model form");
    return {alpha, alpha_inv, tilde, td.a, td.b, trimmed(std::move(h1))};
}

// ---- closed subsets ----

namespace {

struct PointLess {
    bool operator()(const PlanePoint& a, const PlanePoint& b) const { return compare(a, b) < 0; }
};
struct CurveLess {
    bool operator()(const BiPoly& a, const BiPoly& b) const { return compare(a, b) < 0; }
};

} // namespace

Subvariety Subvariety::of_points(std::vector<PlanePoint> pts) {
    std::sort(pts.begin(), pts.end(), PointLess{});
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Subvariety v;
    v.kind = Kind::Points;
    v.points = std::move(pts);
    return v;
}

Subvariety Subvariety::of_curves(std::vector<BiPoly> cs) {
    for (BiPoly& f : cs) f = monic(f);
    std::sort(cs.begin(), cs.end(), CurveLess{});
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    Subvariety v;
    v.kind = Kind::Curves;
    v.curves = std::move(cs);
    return v;
}

bool Subvariety::contains(const PlanePoint& p) const {
    switch (kind) {
    case Kind::Plane: return true;
    case Kind::Points:
        return std::any_of(points.begin(), points.end(),
                           [&](const PlanePoint& q) { return q == p; });
    case Kind::Curves:
        return std::any_of(curves.begin(), curves.end(),
                           [&](const BiPoly& f) { return f.evaluate(p.x, p.y).is_zero(); });
    }
    return false;
}

std::string Subvariety::str() const {
    if (kind == Kind::Plane) return "plane";
    std::string s = kind == Kind::Points ? "points{" : "curves{";
    bool first = true;
    if (kind == Kind::Points)
        for (const PlanePoint& p : points) {
            if (!first) s += ", ";
            s += p.str();
            first = false;
        }
    else
        for (const BiPoly& f : curves) {
            if (!first) s += ", ";
            s += f.str();
            first = false;
        }
    return s + "}";
}

bool is_invariant(const PlaneAutomorphism& phi, const Subvariety& s) {
    switch (s.kind) {
    case Subvariety::Kind::Plane: return true;
    case Subvariety::Kind::Points: {
        std::vector<PlanePoint> image;
        for (const PlanePoint& p : s.points) image.push_back(phi.apply(p));
        std::sort(image.begin(), image.end(), PointLess{});
        return image == s.points;
    }
    case Subvariety::Kind::Curves: {
        // phi permutes the set iff every pullback lands back in it, bijectively
        std::vector<bool> hit(s.curves.size(), false);
        for (const BiPoly& f : s.curves) {
            BiPoly pulled = phi.pullback(f);
            bool matched = false;
            for (size_t j = 0; j < s.curves.size(); j++) {
                if (hit[j]) continue;
                if (proportional(pulled, s.curves[j])) {
                    hit[j] = matched = true;
                    break;
                }
            }
            if (!matched) return false;
        }
        return true;
    }
    }
    return false;
}

// ---- equivariance ----

bool equivalent_affine_fibration(const BiPoly& pi1, const BiPoly& pi2) {
    auto sol = solve_linear_coeffs(
        pi2, {pi1, BiPoly::constant(FieldElement::one(pi1.field()))});
    return sol && !(*sol)[0].is_zero();
}

bool equivalent_projective_pair(const BiPoly& num1, const BiPoly& den1, const BiPoly& num2,
                                const BiPoly& den2) {
    auto a = solve_linear_coeffs(num2, {num1, den1});
    auto b = solve_linear_coeffs(den2, {num1, den1});
    if (!a || !b) return false;
    return !((*a)[0] * (*b)[1] - (*a)[1] * (*b)[0]).is_zero();
}

std::optional<AffineEquivariance> affine_equivariant(const BiPoly& pi,
                                                     const PlaneAutomorphism& phi) {
    if (pi.is_constant()) throw ZeroInput("fibration function must be nonconstant");
    auto sol = solve_linear_coeffs(
        phi.pullback(pi), {pi, BiPoly::constant(FieldElement::one(pi.field()))});
    if (!sol || (*sol)[0].is_zero()) return std::nullopt;
    return AffineEquivariance{(*sol)[0], (*sol)[1]};
}

std::optional<ProjectiveEquivariance> projective_equivariant(const BiPoly& num,
                                                             const BiPoly& den,
                                                             const PlaneAutomorphism& phi) {
    if (num.is_zero() || den.is_zero() || proportional(num, den))
        throw ZeroInput("projective pair must be nonzero and non-proportional");
    auto a = solve_linear_coeffs(phi.pullback(num), {num, den});
    auto b = solve_linear_coeffs(phi.pullback(den), {num, den});
    if (!a || !b) return std::nullopt;
    ProjectiveEquivariance e{(*a)[0], (*a)[1], (*b)[0], (*b)[1]};
    if ((e.m11 * e.m22 - e.m12 * e.m21).is_zero()) return std::nullopt;
    return e;
}

bool equivalent_fibration(const LatticeDescriptor& d1, const LatticeDescriptor& d2) {
    if (d1.kind != d2.kind)
        throw KindMismatch("fibration comparison needs descriptors of one kind");
    if (d1.kind == LatticeKind::OrbitFibration)
        return equivalent_affine_fibration(*d1.pi, *d2.pi);
    if (d1.kind == LatticeKind::ProjectiveQuotient)
        return equivalent_projective_pair(*d1.pq_num, *d1.pq_den, *d2.pq_num, *d2.pq_den);
    throw KindMismatch("only fibration kinds can be compared");
}

// ---- classification ----

namespace {

void verify_descriptor(const LatticeDescriptor& d, const PlaneAutomorphism& phi) {
    auto invariant_curve = [&](const BiPoly& f) {
        if (!proportional(phi.pullback(f), f))
            throw InternalVerificationFailure("claimed invariant curve moves: " + f.str());
    };
    switch (d.kind) {
    case LatticeKind::FiniteOrder:
        if (!power_of(phi, d.order).is_identity())
            throw InternalVerificationFailure("claimed order does not kill the map");
        break;
    case LatticeKind::OrbitFibration: {
        if (!(phi.pullback(*d.pi) == *d.pi * *d.scaling))
            throw InternalVerificationFailure("fibration function is not equivariant");
        if (d.transversal) invariant_curve(*d.transversal);
        for (const BiPoly& f : d.torsion_locus) invariant_curve(f);
        break;
    }
    case LatticeKind::ProjectiveQuotient: {
        if (!projective_equivariant(*d.pq_num, *d.pq_den, phi))
            throw InternalVerificationFailure("quotient pair is not equivariant");
        for (const BiPoly& f : d.pq_special) invariant_curve(f);
        if (!(phi.apply(*d.special_point) == *d.special_point))
            throw InternalVerificationFailure("base point is not fixed");
        if (root_of_unity_order(*d.scaling) != d.grouping)
            throw InternalVerificationFailure("quotient rotation has the wrong order");
        break;
    }
    case LatticeKind::NonFibration: {
        for (const BiPoly& f : d.curves) invariant_curve(f);
        if (d.special_point && !(phi.apply(*d.special_point) == *d.special_point))
            throw InternalVerificationFailure("distinguished point is not fixed");
        break;
    }
    }
}

LatticeDescriptor classify_triangular(const PlaneAutomorphism& phi,
                                      unsigned long multdep_bound) {
    const FieldPtr& F = phi.field();
    TriangularData td = triangular_data(phi);
    FieldElement one = FieldElement::one(F);
    BiPoly X = BiPoly::var_x(F), Y = BiPoly::var_y(F);
    LatticeDescriptor d{};

    if (td.b == one && !td.c.is_zero()) {
        // downstairs is an infinite translation; solve the cohomological
        // equation for a section upstairs
        UniPoly P = trimmed(td.P);
        BiPoly target = unipoly_in(F, P, true);
        BiPoly shifted_y = Y + BiPoly::constant(td.c);
        auto ord_a = root_of_unity_order(td.a);
        std::vector<BiPoly> span;
        size_t n = P.empty() ? 0 : P.size() - 1;
        BiPoly sec(F);
        if (td.a == one) {
            // q(y + c) - q(y) = P(y) forces deg q = deg P + 1
            for (size_t k = 1; k <= n + 1; k++) {
                BiPoly yk = Y.pow(static_cast<unsigned>(k));
                span.push_back(yk.substitute(X, shifted_y) - yk);
            }
            auto sol = solve_linear_coeffs(target, span);
            if (!sol) throw InternalVerificationFailure("translation section solve failed");
            for (size_t k = 1; k <= n + 1; k++)
                sec += Y.pow(static_cast<unsigned>(k)) * (*sol)[k - 1];
        } else {
            // q(y + c) - a q(y) = P(y), uniquely solvable in degree deg P
            for (size_t k = 0; k <= n; k++) {
                BiPoly yk = Y.pow(static_cast<unsigned>(k));
                span.push_back(yk.substitute(X, shifted_y) - yk * td.a);
            }
            auto sol = solve_linear_coeffs(target, span);
            if (!sol) throw InternalVerificationFailure("scaled section solve failed");
            for (size_t k = 0; k <= n; k++) sec += Y.pow(static_cast<unsigned>(k)) * (*sol)[k];
        }
        BiPoly pi = X - sec;
        if (td.a == one || ord_a) {
            d.kind = LatticeKind::OrbitFibration;
            d.pi = pi;
            d.grouping = td.a == one ? 1 : *ord_a;
            d.scaling = td.a;
        } else {
            d.kind = LatticeKind::NonFibration;
            d.curves = {pi};
            d.multdep_exhaustive = true;
        }
        verify_descriptor(d, phi);
        return d;
    }

    Diagonalization dg = diagonalize_triangular(phi);
    auto ord_a = root_of_unity_order(dg.a);
    auto ord_b = root_of_unity_order(dg.b);
    bool h1_zero = dg.h1.empty();
    BiPoly xt = dg.alpha.fx(), yt = dg.alpha.fy();
    PlanePoint origin =
        dg.alpha_inv.apply({FieldElement::zero(F), FieldElement::zero(F)});

    if (ord_a && ord_b) {
        if (h1_zero) {
            d.kind = LatticeKind::FiniteOrder;
            d.order = std::lcm(*ord_a, *ord_b);
        } else {
            d.kind = LatticeKind::OrbitFibration;
            d.pi = yt;
            d.grouping = *ord_b;
            d.scaling = dg.b;
            d.torsion_order = std::lcm(*ord_a, *ord_b);
            size_t i0 = 0;
            while (dg.h1[i0].is_zero()) i0++;
            if (i0 >= 1) d.torsion_locus.push_back(yt);
            UniPoly R(dg.h1.begin() + static_cast<long>(i0), dg.h1.end());
            if (R.size() > 1)
                d.torsion_locus.push_back(unipoly_in(F, R, true).substitute(X, yt));
        }
    } else if (ord_b && !ord_a) {
        if (!h1_zero)
            throw InternalVerificationFailure("matched terms with no matching power");
        d.kind = LatticeKind::OrbitFibration;
        d.pi = yt;
        d.grouping = *ord_b;
        d.scaling = dg.b;
        d.transversal = xt;
        d.torsion_locus = {xt};
        d.torsion_order = *ord_b;
    } else if (ord_a && !ord_b) {
        if (!h1_zero) {
            // only a == 1 can match, leaving a free translation along x
            d.kind = LatticeKind::NonFibration;
            d.curves = {yt};
        } else {
            d.kind = LatticeKind::OrbitFibration;
            d.pi = xt;
            d.grouping = *ord_a;
            d.scaling = dg.a;
            d.transversal = yt;
            d.torsion_locus = {yt};
            d.torsion_order = *ord_a;
        }
    } else {
        if (!h1_zero) {
            d.kind = LatticeKind::NonFibration;
            d.curves = {yt};
            d.special_point = origin;
        } else {
            DependenceResult dep = multiplicative_dependence(dg.a, dg.b, multdep_bound);
            if (dep.relation) {
                auto [r1, r2] = *dep.relation;
                long g = std::gcd(r1, std::abs(r2));
                long s1 = r1 / g, s2 = std::abs(r2) / g;
                d.kind = LatticeKind::ProjectiveQuotient;
                d.pq_s1 = static_cast<unsigned long>(s1);
                d.pq_s2 = static_cast<unsigned long>(s2);
                d.grouping = static_cast<unsigned long>(g);
                if (r2 > 0) {
                    d.pq_num = xt.pow(static_cast<unsigned>(s1));
                    d.pq_den = yt.pow(static_cast<unsigned>(s2));
                    d.scaling = dg.a.pow(s1) * dg.b.pow(-s2);
                } else {
                    d.pq_mixed = true;
                    d.pq_num = xt.pow(static_cast<unsigned>(s1)) * yt.pow(static_cast<unsigned>(s2));
                    d.pq_den = BiPoly::constant(one);
                    d.scaling = dg.a.pow(s1) * dg.b.pow(s2);
                }
                d.pq_special = {xt, yt};
                d.special_point = origin;
            } else {
                d.kind = LatticeKind::NonFibration;
                d.curves = {xt, yt};
                d.special_point = origin;
                d.multdep_exhaustive = dep.exhaustive;
            }
        }
    }
    verify_descriptor(d, phi);
    return d;
}

struct AffineReduction {
    PlaneAutomorphism gamma;     // new coordinates as functions of the old
    PlaneAutomorphism gamma_inv;
    PlaneAutomorphism tri;       // gamma * phi * gamma^-1, triangular
};

AffineReduction affine_to_triangular(const PlaneAutomorphism& phi) {
    const FieldPtr& F = phi.field();
    FieldElement m11 = phi.fx().coeff({1, 0}), m12 = phi.fx().coeff({0, 1});
    FieldElement m21 = phi.fy().coeff({1, 0}), m22 = phi.fy().coeff({0, 1});
    FieldElement tr = m11 + m22, det = m11 * m22 - m12 * m21;
    FieldElement two(F, Rational(2));
    FieldElement disc = tr * tr - det * FieldElement(F, Rational(4));

    FieldElement s11 = m11, s12 = m12, s21 = m21, s22 = m22; // basis columns
    if (disc.is_zero()) {
        // one repeated eigenvalue; m21 != 0 so the map is not yet triangular
        FieldElement lam = tr * two.inverse();
        s11 = m11 - lam;
        s21 = m21;
        s12 = FieldElement::one(F);
        s22 = FieldElement::zero(F);
    } else {
        auto root = field_sqrt(disc);
        if (!root) {
            std::string cp = "t^2 - (" + tr.str() + ")*t + (" + det.str() + ")";
            throw EigenvalueOutsideField("eigenvalues solve " + cp + ", which has no root here",
                                         cp);
        }
        FieldElement l1 = (tr + *root) * two.inverse();
        FieldElement l2 = (tr - *root) * two.inverse();
        if (compare(l1, l2) > 0) std::swap(l1, l2);
        auto eigenvector = [&](const FieldElement& lam, FieldElement& vx, FieldElement& vy) {
            vx = m12;
            vy = lam - m11;
            if (vx.is_zero() && vy.is_zero()) {
                vx = lam - m22;
                vy = m21;
            }
        };
        eigenvector(l1, s11, s21);
        eigenvector(l2, s12, s22);
    }

    FieldElement sdet = s11 * s22 - s12 * s21;
    if (sdet.is_zero()) throw InternalVerificationFailure("eigenbasis is singular");
    FieldElement i11 = s22 * sdet.inverse(), i12 = -s12 * sdet.inverse();
    FieldElement i21 = -s21 * sdet.inverse(), i22 = s11 * sdet.inverse();
    BiPoly X = BiPoly::var_x(F), Y = BiPoly::var_y(F);
    PlaneAutomorphism gamma(X * i11 + Y * i12, X * i21 + Y * i22);
    PlaneAutomorphism gamma_inv(X * s11 + Y * s12, X * s21 + Y * s22);
    PlaneAutomorphism tri = compose(gamma, compose(phi, gamma_inv));
    if (!tri.is_triangular())
        throw InternalVerificationFailure("eigenbasis change did not triangularize");
    return {gamma, gamma_inv, tri};
}

} // namespace

LatticeDescriptor classify(const PlaneAutomorphism& phi, unsigned long multdep_bound) {
    if (phi.is_triangular()) return classify_triangular(phi, multdep_bound);
    if (!phi.is_affine())
        throw NotTriangular("classification needs a triangular or affine map");

    AffineReduction ar = affine_to_triangular(phi);
    LatticeDescriptor d = classify_triangular(ar.tri, multdep_bound);
    auto pull = [&](BiPoly& f) { f = f.substitute(ar.gamma.fx(), ar.gamma.fy()); };
    if (d.pi) pull(*d.pi);
    if (d.transversal) pull(*d.transversal);
    for (BiPoly& f : d.torsion_locus) pull(f);
    if (d.pq_num) pull(*d.pq_num);
    if (d.pq_den) pull(*d.pq_den);
    for (BiPoly& f : d.pq_special) pull(f);
    for (BiPoly& f : d.curves) pull(f);
    if (d.special_point) d.special_point = ar.gamma_inv.apply(*d.special_point);
    verify_descriptor(d, phi);
    return d;
}

// ---- minimal invariant subsets ----

MinimalInvariant minimal_invariant_through(const LatticeDescriptor& d,
                                           const PlaneAutomorphism& phi, const PlanePoint& p) {
    switch (d.kind) {
    case LatticeKind::FiniteOrder:
        return {Subvariety::of_points(finite_orbit(phi, p, d.order)), true};
    case LatticeKind::OrbitFibration: {
        for (const BiPoly& f : d.torsion_locus)
            if (f.evaluate(p.x, p.y).is_zero())
                return {Subvariety::of_points(finite_orbit(phi, p, d.torsion_order)), true};
        FieldElement t0 = d.pi->evaluate(p.x, p.y);
        std::vector<BiPoly> fibers;
        FieldElement val = t0;
        for (unsigned long j = 0; j < d.grouping; j++) {
            fibers.push_back(*d.pi - BiPoly::constant(val));
            val *= *d.scaling;
        }
        return {Subvariety::of_curves(std::move(fibers)), true};
    }
    case LatticeKind::ProjectiveQuotient: {
        if (p == *d.special_point) return {Subvariety::of_points({p}), true};
        std::vector<BiPoly> through;
        for (const BiPoly& f : d.pq_special)
            if (f.evaluate(p.x, p.y).is_zero()) through.push_back(f);
        if (!through.empty()) return {Subvariety::of_curves(std::move(through)), true};
        FieldElement t1 = d.pq_num->evaluate(p.x, p.y);
        FieldElement t2 = d.pq_den->evaluate(p.x, p.y);
        std::vector<BiPoly> fibers;
        for (unsigned long j = 0; j < d.grouping; j++) {
            fibers.push_back(*d.pq_num * t2 - *d.pq_den * t1);
            t1 *= *d.scaling;
        }
        return {Subvariety::of_curves(std::move(fibers)), true};
    }
    case LatticeKind::NonFibration: {
        if (d.special_point && p == *d.special_point)
            return {Subvariety::of_points({p}), true};
        for (const BiPoly& f : d.curves)
            if (f.evaluate(p.x, p.y).is_zero())
                return {Subvariety::of_curves({f}), d.multdep_exhaustive};
        return {Subvariety::plane(), d.multdep_exhaustive};
    }
    }
    throw InternalVerificationFailure("unreachable lattice kind");
}

// ---- support intersection ----

Subvariety support_intersection_dim1(const LatticeDescriptor& da,
                                     const PlaneAutomorphism& phia,
                                     const LatticeDescriptor& db,
                                     const PlaneAutomorphism& phib) {
    if (da.kind == LatticeKind::FiniteOrder || db.kind == LatticeKind::FiniteOrder)
        throw KindMismatch("support intersection expects infinite-order maps");
    if (da.kind == db.kind &&
        (da.kind == LatticeKind::OrbitFibration ||
         da.kind == LatticeKind::ProjectiveQuotient) &&
        equivalent_fibration(da, db))
        throw KindMismatch("equivalent fibrations have a shared-structure path");

    std::vector<BiPoly> cand;
    auto add = [&](const BiPoly& f) {
        if (!f.is_zero() && !f.is_constant()) cand.push_back(monic(f));
    };
    for (const LatticeDescriptor* d : {&da, &db}) {
        if (d->transversal) add(*d->transversal);
        for (const BiPoly& f : d->curves) add(f);
        for (const BiPoly& f : d->torsion_locus) add(f);
        for (const BiPoly& f : d->pq_special) add(f);
    }
    auto fiber_through = [&](const LatticeDescriptor& d, const PlanePoint& q) {
        if (d.kind == LatticeKind::OrbitFibration)
            add(*d.pi - BiPoly::constant(d.pi->evaluate(q.x, q.y)));
        if (d.kind == LatticeKind::ProjectiveQuotient) {
            FieldElement t1 = d.pq_num->evaluate(q.x, q.y);
            FieldElement t2 = d.pq_den->evaluate(q.x, q.y);
            if (!t1.is_zero() || !t2.is_zero()) add(*d.pq_num * t2 - *d.pq_den * t1);
        }
    };
    if (db.special_point) fiber_through(da, *db.special_point);
    if (da.special_point) fiber_through(db, *da.special_point);
    if (da.kind == LatticeKind::ProjectiveQuotient &&
        db.kind == LatticeKind::ProjectiveQuotient) {
        // shared fibers show up as linear relations between the two pairs
        for (const auto& rel :
             linear_relations({*da.pq_num, *da.pq_den, *db.pq_num, *db.pq_den}))
            add(*da.pq_num * rel[0] + *da.pq_den * rel[1]);
    }

    std::set<BiPoly, CurveLess> seen_candidates;
    std::vector<PlaneAutomorphism> pulls{phia, invert(phia), phib, invert(phib)};
    size_t cap = 64 + 4 * (da.grouping + db.grouping);
    std::set<BiPoly, CurveLess> result;

    for (const BiPoly& start : cand) {
        if (seen_candidates.count(start)) continue;
        std::set<BiPoly, CurveLess> orbit{start};
        std::vector<BiPoly> frontier{start};
        bool alive = true;
        while (!frontier.empty() && alive) {
            std::vector<BiPoly> next;
            for (const BiPoly& f : frontier)
                for (const PlaneAutomorphism& g : pulls) {
                    BiPoly img = monic(g.pullback(f));
                    if (orbit.insert(img).second) next.push_back(img);
                    if (orbit.size() > cap) {
                        alive = false;
                        break;
                    }
                }
            frontier = std::move(next);
        }
        for (const BiPoly& f : orbit) seen_candidates.insert(f);
        if (alive)
            for (const BiPoly& f : orbit) result.insert(f);
    }
    return Subvariety::of_curves({result.begin(), result.end()});
}

namespace {

// no diagonalization needed: finite order forces both scalars to be roots of
// unity, no unipotent translation downstairs, and no resonant terms
std::optional<unsigned long> triangular_order(const PlaneAutomorphism& phi) {
    TriangularData td = triangular_data(phi);
    FieldElement one = FieldElement::one(phi.field());
    if (td.b == one && !td.c.is_zero()) return std::nullopt;
    auto oa = root_of_unity_order(td.a), ob = root_of_unity_order(td.b);
    if (!oa || !ob) return std::nullopt;
    if (!trimmed(diagonalize_triangular(phi).h1).empty()) return std::nullopt;
    return std::lcm(*oa, *ob);
}

// eigenvalues may live in a quadratic extension, so instead of computing them
// we run the linear part through every order its eigenvalues could have
std::optional<unsigned long> affine_order(const PlaneAutomorphism& phi) {
    const FieldPtr& F = phi.field();
    FieldElement m11 = phi.fx().coeff({1, 0}), m12 = phi.fx().coeff({0, 1});
    FieldElement m21 = phi.fy().coeff({1, 0}), m22 = phi.fy().coeff({0, 1});
    if (!root_of_unity_order(m11 * m22 - m12 * m21)) return std::nullopt;

    // phi(k) <= 2 [K:Q] for an eigenvalue of order k, and phi(k) >= sqrt(k/2)
    unsigned long half = 2ul * F->degree();
    std::vector<unsigned long> ks;
    for (unsigned long k = 1; k <= 2 * half * half + 8; k++)
        if (euler_phi(k) <= half) ks.push_back(k);
    unsigned long nmax = 1;
    for (unsigned long k1 : ks)
        for (unsigned long k2 : ks) nmax = std::max(nmax, std::lcm(k1, k2));

    FieldElement one = FieldElement::one(F), zero = FieldElement::zero(F);
    FieldElement p11 = m11, p12 = m12, p21 = m21, p22 = m22;
    for (unsigned long n = 1; n <= nmax; n++) {
        if (p11 == one && p12 == zero && p21 == zero && p22 == one)
            return power_of(phi, n).is_identity() ? std::optional<unsigned long>(n)
                                                  : std::nullopt;
        FieldElement q11 = p11 * m11 + p12 * m21, q12 = p11 * m12 + p12 * m22;
        FieldElement q21 = p21 * m11 + p22 * m21, q22 = p21 * m12 + p22 * m22;
        p11 = q11, p12 = q12, p21 = q21, p22 = q22;
    }
    return std::nullopt;
}

} // namespace

std::optional<unsigned long> is_torsion(const PlaneAutomorphism& phi) {
    if (phi.is_identity()) return 1;
    if (!is_bounded(phi)) return std::nullopt;
    PlaneAutomorphism core = cyclically_reduce(phi).core.realize();
    std::optional<unsigned long> n;
    if (core.is_triangular())
        n = triangular_order(core);
    else if (core.is_affine())
        n = affine_order(core);
    else
        throw InternalVerificationFailure("cyclic core is neither affine nor triangular");
    if (n && !power_of(phi, *n).is_identity())
        throw InternalVerificationFailure("certified order does not kill the map");
    return n;
}

} // namespace ozc
