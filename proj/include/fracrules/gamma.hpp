#pragma once

#include <utility>

namespace fracrules {

// sin(pi*x) with argument reduction to the nearest integer, so accuracy is
// kept near the zeros (needed by the reflection formula close to Gamma poles).
double sinpi(double x);

// 1/Gamma(x). Exactly 0 at the poles x = 0, -1, -2, ...; relative error
// <= 1e-13 elsewhere on |x| <= 170. Total function (no exceptions).
double recip_gamma(double x);

// Gamma(x). Overflows to +inf past x ~ 171.6; returns NaN at the poles.
double gamma_fn(double x);

// ln|Gamma(x)| and the sign of Gamma(x) in {-1, 0, +1}; sign 0 marks a pole.
std::pair<double, int> lgamma_sign(double x);

} // namespace fracrules
