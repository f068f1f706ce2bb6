#pragma once

#include <stdexcept>
#include <string>

namespace fracrules {

// All library failures derive from Error so callers can catch one base.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Series did not meet the termination criterion within the term budget,
// or the requested value is not representable in double precision.
struct NonConvergence : Error {
    using Error::Error;
};

// t=0 requested where the kernel diverges (gamma < 1).
struct SingularAtZero : Error {
    using Error::Error;
};

// Fox-Wright parameters violate the convergence condition, or a numerator
// gamma pole makes the series undefined.
struct DivergentParameters : Error {
    using Error::Error;
};

// Kernel fields violate an operator precondition (e.g. gamma <= 0 for the
// Riemann-Liouville derivative shift).
struct InvalidKernel : Error {
    using Error::Error;
};

// Caputo shift applied to a kernel with gamma-1 <= floor(alpha); caller
// must Pascal-split first.
struct ConditionViolated : Error {
    using Error::Error;
};

// Power rule with eta <= -1.
struct InvalidExponent : Error {
    using Error::Error;
};

struct GridTooShort : Error {
    using Error::Error;
};

// A boundary limit lim_{tau->0+} of a shifted kernel diverges, so the
// Leibniz rule in question does not apply to these inputs.
struct BoundaryLimitSingular : Error {
    using Error::Error;
};

// Transfer function evaluated too close to a denominator zero.
struct PoleHit : Error {
    using Error::Error;
};

// The two contour configurations disagree beyond tolerance.
struct ContourFailure : Error {
    using Error::Error;
};

// Kernel evaluation failed while assembling convolution weights.
struct QuadratureBreakdown : Error {
    using Error::Error;
};

struct UnsupportedForcing : Error {
    using Error::Error;
};

// Bad user-facing parameters (CLI / problem invariants).
struct ValidationError : Error {
    using Error::Error;
};

} // namespace fracrules
