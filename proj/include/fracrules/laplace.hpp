#pragma once

#include <complex>
#include <functional>
#include <string>

#include "fracrules/forcing.hpp"
#include "fracrules/grid.hpp"

namespace fracrules {

// s-domain expressions inverted by the oracle:
//   Lemma1:  1 / (s^alpha - lambda s^beta)^{l+1}      (alpha > beta > 0)
//   Lemma2:  s^gamma_exp / (s^alpha - mu s^beta - lambda)
//            (alpha > beta > 0, alpha > gamma_exp)
struct TransferSpec {
    enum class Form { Lemma1, Lemma2 };
    Form form = Form::Lemma2;
    double alpha = 1.0, beta = 0.5, gamma_exp = 0.0, lambda = 0.0, mu = 0.0;
    int l = 0;

    static TransferSpec lemma1(double alpha, double beta, double lambda, int l);
    static TransferSpec lemma2(double alpha, double beta, double gamma_exp,
                               double lambda, double mu);
};

// Principal-branch powers; the inversion contour lives in the cut plane
// C \ (-inf, 0].
std::complex<double> transfer_eval(const TransferSpec& spec, std::complex<double> s);

struct InversionConfig {
    int M = 64;          // contour nodes
    double scale = 11.5; // contour radius is scale / t
};

using TransformFn = std::function<std::complex<double>(std::complex<double>)>;

// Numerical Bromwich inversion on a fixed-scale Talbot contour, evaluated at
// (M, scale) and (2M, 1.4 scale); disagreement beyond 1e-6 relative raises
// ContourFailure, otherwise the finer estimate is returned.
double invert(const TransferSpec& spec, double t, const InversionConfig& cfg = {});
double invert(const TransferSpec& spec, const TransformFn& forcing_transform,
              double t, const InversionConfig& cfg = {});

// G(s) for a forcing given in the mini-language (const:c -> c/s, poly ->
// sum c_k k!/s^{k+1}, exp:a -> 1/(s-a)).
TransformFn forcing_transform_catalog(const std::string& forcing_spec);

// D^alpha y - mu D^beta y - lambda y = g with zero initial data:
// y = invert of G(s)/(s^alpha - mu s^beta - lambda).
double oracle_solution(double alpha, double beta, double lambda, double mu,
                       const Forcing& g, double t, const InversionConfig& cfg = {});

// Trapezoid forward transform of grid data; truncation decays like
// exp(-Re(s) T), so useful only for Re(s) T large.
std::complex<double> forward_laplace(const GridFunction& f, std::complex<double> s);

} // namespace fracrules
