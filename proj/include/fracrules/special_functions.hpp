#pragma once

#include <utility>
#include <vector>

namespace fracrules {

// Termination policy for every series in the library: stop after
// `consecutive_small` successive terms with |term| <= rel_tol*|partial sum|
// (an absolute floor applies when the partial sum sits at 0 or at the
// roundoff noise level of its own peak). max_terms is a per-index budget.
struct SeriesControl {
    double rel_tol = 1e-14;
    int consecutive_small = 3;
    int max_terms = 2000;
};

struct MLParams {
    double alpha;          // > 0
    double beta;
    double gamma_p = 1.0;  // Prabhakar exponent
};

struct BivariateMLParams {
    double alpha;          // > 0
    double beta;           // > 0
    double gamma;
    double delta = 1.0;
};

struct FoxWrightParams {
    // upper: (lambda_i, alpha_i); lower: (mu_j, beta_j)
    std::vector<std::pair<double, double>> upper;
    std::vector<std::pair<double, double>> lower;
};

// E_{alpha,beta}(t) = sum_i t^i / Gamma(i*alpha + beta)
double ml2(const MLParams& p, double t, const SeriesControl& sc = {});

// Prabhakar E^{gamma_p}_{alpha,beta}(t) = sum_i (gamma_p)_i t^i / (Gamma(i*alpha+beta) i!)
double ml3(const MLParams& p, double t, const SeriesControl& sc = {});

// l-th derivative of the two-parameter function:
// sum_i ((i+l)!/i!) t^i / Gamma(i*alpha + l*alpha + beta)
double ml2_deriv(int l, const MLParams& p, double t, const SeriesControl& sc = {});

// E^{delta}_{alpha,beta,gamma}(u,v), summed by anti-diagonals l+k = const.
double bivariate_ml(const BivariateMLParams& p, double u, double v,
                    const SeriesControl& sc = {});

// t^{gamma-1} E^{delta}_{alpha,beta,gamma}(lambda t^alpha, mu t^beta).
// At t=0: 0 for gamma>1, recip_gamma(gamma) for gamma=1, SingularAtZero for gamma<1.
double bivariate_ml_univariate(const BivariateMLParams& p, double lambda, double mu,
                               double t, const SeriesControl& sc = {});

// pPsiq generalized Wright series; DivergentParameters unless
// sum(beta_j) - sum(alpha_i) > -1 and no numerator gamma pole occurs.
double fox_wright(const FoxWrightParams& p, double t, const SeriesControl& sc = {});

// The two closed forms of the Green kernel's E-part,
// H(t)*t^{1-alpha} ~ sum_l (lambda^l t^{l*alpha}/l!) * (l-th ML derivative resp.
// 1Psi1 block). They agree with each other and with the bivariate form.
double h_podlubny(double alpha, double beta, double lambda, double mu, double t,
                  const SeriesControl& sc = {});
double h_foxwright(double alpha, double beta, double lambda, double mu, double t,
                   const SeriesControl& sc = {});

} // namespace fracrules
