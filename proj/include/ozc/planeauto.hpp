// Polynomial automorphisms of the affine plane, stored as coordinate pairs.
#pragma once

#include "ozc/poly2.hpp"

#include <string>
#include <utility>

namespace ozc {

struct PlanePoint {
    FieldElement x;
    FieldElement y;

    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
    std::string str() const;
};

int compare(const PlanePoint& a, const PlanePoint& b);

class PlaneAutomorphism {
  public:
    // rejects pairs whose Jacobian determinant is not a nonzero constant
    PlaneAutomorphism(BiPoly fx, BiPoly fy);

    static PlaneAutomorphism identity(const FieldPtr& field);

    const FieldPtr& field() const { return fx_.field(); }
    const BiPoly& fx() const { return fx_; }
    const BiPoly& fy() const { return fy_; }

    std::pair<long, long> bidegree() const { return {fx_.degree(), fy_.degree()}; }
    long degree() const { return std::max(fx_.degree(), fy_.degree()); }

    bool is_identity() const;
    bool is_affine() const { return degree() <= 1; }
    // (a x + p(y), b y + c) with a, b nonzero
    bool is_triangular() const;

    PlanePoint apply(const PlanePoint& p) const;
    // f composed with this map; pulls a curve equation back along the map
    BiPoly pullback(const BiPoly& f) const { return f.substitute(fx_, fy_); }

    friend PlaneAutomorphism compose(const PlaneAutomorphism& f, const PlaneAutomorphism& g);
    friend bool operator==(const PlaneAutomorphism& a, const PlaneAutomorphism& b) {
        return a.fx_ == b.fx_ && a.fy_ == b.fy_;
    }

    std::string str() const;

  private:
    struct Unchecked {};
    PlaneAutomorphism(Unchecked, BiPoly fx, BiPoly fy);

    BiPoly fx_;
    BiPoly fy_;
};

// acts on the right of apply: compose(f, g).apply(p) == f.apply(g.apply(p))
PlaneAutomorphism compose(const PlaneAutomorphism& f, const PlaneAutomorphism& g);

int compare(const PlaneAutomorphism& a, const PlaneAutomorphism& b);

// exact inverse, found by splitting the map into elementary pieces
PlaneAutomorphism invert(const PlaneAutomorphism& f);

PlaneAutomorphism parse_automorphism(const FieldPtr& field, std::string_view sx,
                                     std::string_view sy);

} // namespace ozc
