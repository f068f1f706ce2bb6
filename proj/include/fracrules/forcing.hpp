#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace fracrules {

// Forcing term with analytic derivatives and (when cataloged) its Laplace
// transform. Mini-language: "const:c", "poly:c0,c1,...", "exp:a".
struct Forcing {
    std::string spec;
    std::function<double(double)> f;
    std::function<double(int, double)> d; // j-th derivative, d(0,t) = f(t)
    bool has_transform = false;
    std::function<std::complex<double>(std::complex<double>)> transform;

    double operator()(double t) const { return f(t); }
};

Forcing make_constant(double c);
Forcing make_poly(const std::vector<double>& coeffs); // c0 + c1 t + ...
Forcing make_exp(double a);                           // e^{a t}

Forcing parse_forcing(const std::string& spec);

} // namespace fracrules
