// Bivariate polynomials over a number field, plus the small linear-algebra
// helper used to solve for coefficients exactly.
#pragma once

#include "ozc/numfield.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ozc {

struct Mono {
    unsigned dx = 0;
    unsigned dy = 0;

    unsigned total() const { return dx + dy; }
    friend bool operator==(const Mono&, const Mono&) = default;
    // graded order, ties broken by x-degree
    friend bool operator<(const Mono& a, const Mono& b) {
        if (a.total() != b.total()) return a.total() < b.total();
        return a.dx < b.dx;
    }
};

class BiPoly {
  public:
    explicit BiPoly(FieldPtr field);

    static BiPoly constant(FieldElement c);
    static BiPoly var_x(const FieldPtr& field);
    static BiPoly var_y(const FieldPtr& field);

    const FieldPtr& field() const { return field_; }
    const std::map<Mono, FieldElement>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return degree() <= 0; }
    // -1 for the zero polynomial
    long degree() const;
    long degree_x() const;
    long degree_y() const;

    FieldElement coeff(Mono m) const;
    void add_term(Mono m, const FieldElement& c);
    // sum of the terms of total degree d
    BiPoly homogeneous_part(unsigned d) const;
    BiPoly leading_form() const;

    BiPoly operator-() const;
    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    BiPoly operator*(const FieldElement& c) const;
    BiPoly pow(unsigned e) const;

    // plug gx, gy in for x, y
    BiPoly substitute(const BiPoly& gx, const BiPoly& gy) const;
    FieldElement evaluate(const FieldElement& x, const FieldElement& y) const;

    friend bool operator==(const BiPoly& a, const BiPoly& b);
    std::string str() const;

  private:
    FieldPtr field_;
    std::map<Mono, FieldElement> terms_;
};

// both f1(gx, gy) and f2(gx, gy), sharing the power table of gy
std::pair<BiPoly, BiPoly> substitute_pair(const BiPoly& f1, const BiPoly& f2, const BiPoly& gx,
                                          const BiPoly& gy);

// total order for use as container keys
int compare(const BiPoly& a, const BiPoly& b);

// c with f == c*g, if one exists (g must be nonzero)
std::optional<FieldElement> proportional(const BiPoly& f, const BiPoly& g);

BiPoly parse_bipoly(const FieldPtr& field, std::string_view text);

// dense univariate coefficients, ascending; empty vector is 0
using UniPoly = std::vector<FieldElement>;

// the coefficient list in y, provided f has no x at all
std::optional<UniPoly> poly_in_y(const BiPoly& f);
BiPoly unipoly_in(const FieldPtr& field, const UniPoly& u, bool in_y);

// exact solve: coefficients c_i with target = sum c_i * span_i
std::optional<std::vector<FieldElement>>
solve_linear_coeffs(const BiPoly& target, const std::vector<BiPoly>& span);

// basis of the coefficient vectors (c_i) with sum c_i * polys_i = 0
std::vector<std::vector<FieldElement>> linear_relations(const std::vector<BiPoly>& polys);

// scaled so the highest term has coefficient one
BiPoly monic(const BiPoly& f);

} // namespace ozc
