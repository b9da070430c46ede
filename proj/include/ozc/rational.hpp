#pragma once

// Thin helpers over GMP rationals: strict parsing, canonical printing, integer
// powers, and the small amount of integer factoring the dependence lattice
// needs. mpq_class itself is the value type everywhere.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ozc {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "-p", "p/q" with optional surrounding whitespace. Throws
// ParseError on anything else (including q == 0).
Rational parse_rational(std::string_view text);

// Canonical form: "p" for integers, "p/q" otherwise, q > 0, gcd(p, q) = 1.
std::string rational_to_string(const Rational& r);

// r^e for any integer e; throws ZeroDivision when r == 0 and e < 0.
Rational rational_pow(const Rational& r, long e);

bool is_integer(const Rational& r);

// True iff r is the square of a rational; the witness root is nonnegative.
std::optional<Rational> rational_sqrt(const Rational& r);

// Smallest prime factor of |n| for |n| > 1. Trial division up to 2^20, then a
// primality test on the remainder. Returns nullopt when |n| <= 1 or when the
// remainder is a composite too large to split at desk scale.
std::optional<Integer> smallest_prime_factor(const Integer& n);

// Exponent of p in n (n != 0, p prime).
long valuation(Integer n, const Integer& p);

// n = s^2 * d with d squarefree; returns (s, d). Requires full factorization,
// nullopt when that is out of reach.
std::optional<std::pair<Integer, Integer>> squarefree_decomposition(const Integer& n);

// Euler phi for small k, used to bound root-of-unity orders.
unsigned long euler_phi(unsigned long k);

} // namespace ozc
