#pragma once

// Error taxonomy for the whole library. Every failure that can reach a caller
// is one of these; internal consistency checks throw InternalVerificationFailure
// so a bug can never masquerade as a mathematical verdict.

#include <stdexcept>
#include <string>

namespace ozc {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input could not be parsed (polynomial syntax, rational literal, JSON shape).
struct ParseError : Error {
    using Error::Error;
};

// Operands belong to different working fields.
struct FieldMismatch : Error {
    using Error::Error;
};

// Division by zero, or inversion of a non-unit.
struct ZeroDivision : Error {
    using Error::Error;
};

// A custom modulus was proved reducible in the course of a computation.
struct ReducibleModulus : Error {
    using Error::Error;
};

// Zero passed where a nonzero element is required.
struct ZeroInput : Error {
    using Error::Error;
};

// A root of unity passed where a non-torsion element is required.
struct RootOfUnityInput : Error {
    using Error::Error;
};

// The given polynomial pair is not an automorphism of the plane.
struct NotAnAutomorphism : Error {
    using Error::Error;
};

// A triangular map was required but the input has the wrong shape.
struct NotTriangular : Error {
    using Error::Error;
};

// The linear part of an affine map has eigenvalues outside the working field.
// The characteristic polynomial rides along so a caller can extend the field
// and retry.
struct EigenvalueOutsideField : Error {
    std::string char_poly;
    EigenvalueOutsideField(const std::string& what, std::string cp)
        : Error(what), char_poly(std::move(cp)) {}
};

// Two lattice descriptors were combined in a way their kinds do not support
// (e.g. comparing fibrations of different kinds, or intersecting supports of
// maps whose fibrations coincide and must be handled by the shared-fibration
// path instead).
struct KindMismatch : Error {
    using Error::Error;
};

// A point was required to lie on a variety and does not.
struct PointOffVariety : Error {
    using Error::Error;
};

// The algorithm cannot decide within the configured caps (e.g. the bounded
// search for an infinite-order word was exhausted). Distinct from wrong input.
struct Inconclusive : Error {
    using Error::Error;
};

// A certified identity failed to hold; indicates a library bug, never bad input.
struct InternalVerificationFailure : Error {
    using Error::Error;
};

} // namespace ozc
