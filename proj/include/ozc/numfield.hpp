#pragma once

// Number field tower: Q, cyclotomic fields Q(zeta_n), and custom fields
// Q[t]/(m) for a monic modulus m. Elements are coordinate vectors over the
// power basis 1, t, ..., t^(d-1). All arithmetic is exact.
//
// On top of the arithmetic sit the two decision procedures the dynamics needs:
// the order of a root of unity, and multiplicative dependence a^r1 = b^r2.

#include "ozc/rational.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ozc {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class NumberField {
public:
    enum class Mode { Rationals, Cyclotomic, Custom };

    static FieldPtr rationals();
    // Q(zeta_n), modulus the n-th cyclotomic polynomial, n >= 1.
    static FieldPtr cyclotomic(unsigned long n);
    // Q[t]/(modulus); modulus monic of degree >= 1, coefficients ascending.
    // Untrusted moduli go through a rational-root filter (complete up to
    // degree 3); reducibility that slips past is certified the first time a
    // zero divisor shows up in an inversion.
    static FieldPtr custom(std::vector<Rational> modulus, bool trusted);

    Mode mode() const { return mode_; }
    unsigned degree() const { return degree_; }
    unsigned long cyclotomic_order() const { return cyclo_n_; }
    const std::vector<Rational>& modulus() const { return modulus_; }
    bool same(const NumberField& other) const;
    std::string describe() const;

    // Reduction of t^(degree + k) for k = 0 .. degree - 2, as coordinates.
    const std::vector<std::vector<Rational>>& power_table() const { return powers_; }

private:
    NumberField() = default;
    Mode mode_ = Mode::Rationals;
    unsigned long cyclo_n_ = 0;
    unsigned degree_ = 1;
    std::vector<Rational> modulus_;
    std::vector<std::vector<Rational>> powers_;
    static FieldPtr finish(NumberField f);
};

// n-th cyclotomic polynomial, integer coefficients ascending, monic.
std::vector<Rational> cyclotomic_polynomial(unsigned long n);

class FieldElement {
public:
    FieldElement(FieldPtr field, Rational value);
    static FieldElement zero(const FieldPtr& field);
    static FieldElement one(const FieldPtr& field);
    // The class of t. In a degree-1 field t reduces to -modulus[0].
    static FieldElement generator(const FieldPtr& field);
    static FieldElement from_coords(FieldPtr field, std::vector<Rational> coords);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rational rational_value() const; // requires is_rational()

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);
    FieldElement inverse() const;
    FieldElement pow(long e) const;

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    // Canonical literal: a rational, or a polynomial in t with descending
    // powers ("t^2 - 1/2*t + 3"). parse_field_element inverts it exactly.
    std::string str() const;

private:
    FieldElement(FieldPtr field, std::vector<Rational> c)
        : field_(std::move(field)), c_(std::move(c)) {}
    void reduce(std::vector<Rational>& full) const;
    FieldPtr field_;
    std::vector<Rational> c_;
};

// Total order for deterministic containers (lexicographic on coordinates).
int compare(const FieldElement& a, const FieldElement& b);

// Accepts what str() produces plus whitespace and reordered terms: a signed
// sum of rational literals and rational multiples of powers of t.
FieldElement parse_field_element(const FieldPtr& field, std::string_view text);

void check_same_field(const FieldElement& a, const FieldElement& b);
void check_same_field(const FieldPtr& a, const FieldPtr& b);

// Order of u in the multiplicative group when u is a root of unity; nullopt
// otherwise. Throws ZeroInput on u = 0. Complete: the order k of a torsion
// element satisfies phi(k) <= [K:Q], so a finite scan decides.
std::optional<unsigned long> root_of_unity_order(const FieldElement& u);

// Product of the conjugates of a, computed as Res(modulus, a) over Q.
Rational field_norm(const FieldElement& a);

// Exact square root in the working field when the implementation can find
// one: zero, rational perfect squares, and rational discriminants whose root
// lives in a cyclotomic working field (built from Gauss sums and verified by
// squaring). nullopt means "none found", not a proof of non-existence, except
// over Q where the answer is complete.
std::optional<FieldElement> field_sqrt(const FieldElement& a);

struct DependenceResult {
    // Least pair with a^r1 = b^r2, r1 >= 1, r2 nonzero (possibly negative).
    std::optional<std::pair<long, long>> relation;
    // True when the verdict is a proof. Only the bounded fallback (both field
    // norms of absolute value 1) can report a non-exhaustive absence.
    bool exhaustive = true;
};

// Decides a^r1 = b^r2 for nonzero non-root-of-unity a, b. The bound caps the
// fallback search only; the norm-based main paths are complete.
DependenceResult multiplicative_dependence(const FieldElement& a, const FieldElement& b,
                                           unsigned long bound);

} // namespace ozc
