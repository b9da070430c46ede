// Classification of the invariant-subvariety lattice of a triangular or
// affine plane automorphism, and the geometric queries built on it.
#pragma once

#include "ozc/amalgam.hpp"

#include <optional>
#include <vector>

namespace ozc {

// coefficients of (a x + P(y), b y + c)
struct TriangularData {
    FieldElement a;
    UniPoly P;
    FieldElement b;
    FieldElement c;
};

TriangularData triangular_data(const PlaneAutomorphism& phi); // throws NotTriangular

// coordinate change bringing (a x + P(y), b y + c) to (a x + h1(y), b y),
// where h1 keeps exactly the terms y^i with b^i == a
struct Diagonalization {
    PlaneAutomorphism alpha;     // new coordinates as functions of the old
    PlaneAutomorphism alpha_inv;
    PlaneAutomorphism tilde;     // the conjugated map alpha * phi * alpha^-1
    FieldElement a;
    FieldElement b;
    UniPoly h1;
};

// requires b != 1, or b == 1 with c == 0
Diagonalization diagonalize_triangular(const PlaneAutomorphism& phi);

enum class LatticeKind { FiniteOrder, OrbitFibration, ProjectiveQuotient, NonFibration };

// How the closed invariant subvarieties of one map are organized. All
// polynomials and points are in the ambient coordinates of the input map.
struct LatticeDescriptor {
    LatticeKind kind;

    // FiniteOrder: phi^order is the identity
    unsigned long order = 0;

    // OrbitFibration: invariant sets are finite unions of fibers of pi
    // (plus the pieces below); pi composed with phi equals scaling * pi
    std::optional<BiPoly> pi;
    unsigned long grouping = 1;           // orbit length of a generic fiber
    std::optional<FieldElement> scaling;  // also the quotient rotation for PQ
    std::optional<BiPoly> transversal;    // invariant curve that is not a fiber
    std::vector<BiPoly> torsion_locus;    // curves of finite-orbit points
    unsigned long torsion_order = 0;      // orbit bound on the torsion locus

    // ProjectiveQuotient: fibers of [pq_num : pq_den] grouped by a rotation
    // of order `grouping`
    std::optional<BiPoly> pq_num, pq_den;
    unsigned long pq_s1 = 0, pq_s2 = 0;   // exponents of the two coordinates
    bool pq_mixed = false;                // single product function, den == 1
    std::vector<BiPoly> pq_special;       // reduced components of special fibers
    std::vector<BiPoly> curves;           // NonFibration: the only invariant curves

    // PQ base point / NonFibration fixed point
    std::optional<PlanePoint> special_point;

    // false when a missing multiplicative relation was not fully excluded
    bool multdep_exhaustive = true;
};

// phi must be triangular or affine; affine maps are brought to triangular
// form first, which needs their eigenvalues inside the field
LatticeDescriptor classify(const PlaneAutomorphism& phi, unsigned long multdep_bound = 64);

// A closed subset: finitely many points, a union of curves, or everything.
struct Subvariety {
    enum class Kind { Points, Curves, Plane };
    Kind kind = Kind::Plane;
    std::vector<PlanePoint> points; // sorted, unique
    std::vector<BiPoly> curves;     // monic, sorted, unique

    static Subvariety plane() { return {}; }
    static Subvariety of_points(std::vector<PlanePoint> pts);
    static Subvariety of_curves(std::vector<BiPoly> cs);
    bool contains(const PlanePoint& p) const;
    std::string str() const;
};

bool is_invariant(const PlaneAutomorphism& phi, const Subvariety& s);

struct MinimalInvariant {
    Subvariety variety;
    bool exhaustive = true;
};

// smallest closed phi-invariant subset containing p
MinimalInvariant minimal_invariant_through(const LatticeDescriptor& d,
                                           const PlaneAutomorphism& phi, const PlanePoint& p);

// pi2 == u * pi1 + v with u nonzero: the two functions cut the same fibration
bool equivalent_affine_fibration(const BiPoly& pi1, const BiPoly& pi2);
// equal planes of homogeneous coordinates
bool equivalent_projective_pair(const BiPoly& num1, const BiPoly& den1, const BiPoly& num2,
                                const BiPoly& den2);
// same-kind descriptors only (OrbitFibration or ProjectiveQuotient); throws
// KindMismatch otherwise
bool equivalent_fibration(const LatticeDescriptor& d1, const LatticeDescriptor& d2);

struct AffineEquivariance {
    FieldElement u, v; // pi after phi equals u * pi + v
};
std::optional<AffineEquivariance> affine_equivariant(const BiPoly& pi,
                                                     const PlaneAutomorphism& phi);

struct ProjectiveEquivariance {
    FieldElement m11, m12, m21, m22; // num -> m11 num + m12 den, den -> m21 num + m22 den
};
std::optional<ProjectiveEquivariance> projective_equivariant(const BiPoly& num,
                                                             const BiPoly& den,
                                                             const PlaneAutomorphism& phi);

// all curves lying in finite invariant unions for both maps at once; the
// descriptors must be of distinct kinds or carry inequivalent fibrations
Subvariety support_intersection_dim1(const LatticeDescriptor& da,
                                     const PlaneAutomorphism& phia,
                                     const LatticeDescriptor& db,
                                     const PlaneAutomorphism& phib);

// exact order of phi when finite, absent otherwise; works for arbitrary
// automorphisms by reducing to a conjugate inside one factor
std::optional<unsigned long> is_torsion(const PlaneAutomorphism& phi);

} // namespace ozc
