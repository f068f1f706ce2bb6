#pragma once

#include <array>
#include <cstddef>

#include "fracrules/forcing.hpp"
#include "fracrules/grid.hpp"
#include "fracrules/laplace.hpp"
#include "fracrules/operators.hpp"

namespace fracrules {

// D^alpha y - mu D^beta y - lambda y = g, zero initial data. The closed-form
// solution is the same in both derivative senses; `sense` picks the operators
// used for certification.
struct BagleyTorvikProblem {
    double alpha = 1.5, beta = 0.5;
    double lambda = 0.0, mu = 0.0;
    Forcing g;
    double T = 1.0;
    int N = 256;
    Sense sense = Sense::RiemannLiouville;
};

struct SolutionCertificate {
    GridFunction y;
    double residual_max = 0.0, residual_rms = 0.0;
    std::array<double, 2> ic_residuals{0.0, 0.0};
    std::size_t window_begin = 0;
};

// tau^{alpha-1} E_{alpha,alpha-beta,alpha}(lambda tau^alpha, mu tau^{alpha-beta})
double green_kernel(double alpha, double beta, double lambda, double mu, double tau);

GridFunction solve_bagley_torvik(const BagleyTorvikProblem& p);
// pre-sampled forcing (certifiable, but not Leibniz-checkable)
GridFunction solve_bagley_torvik(double alpha, double beta, double lambda,
                                 double mu, const GridFunction& g);

// alpha = 2, beta = 1 specialization: y'' - mu y' - lambda y = g
GridFunction solve_oscillator(double mu, double lambda, const Forcing& g,
                              double T, int N);

// Variation-of-parameters reference for the classical oscillator using exact
// characteristic roots (distinct / repeated / complex), Simpson quadrature.
GridFunction classical_oscillator_reference(double mu, double lambda,
                                            const Forcing& g, double T, int N);

// Substitutes y back into the equation with p.sense numeric operators;
// residuals over the interior window, plus initial-data residuals
// (y(0), y'(0) for Caputo; I^{2-alpha}y and D^{alpha-1}y at the first
// interior node for RL).
SolutionCertificate certify_solution(const BagleyTorvikProblem& p,
                                     const GridFunction& y);

inline double oracle_solution(const BagleyTorvikProblem& p, double t,
                              const InversionConfig& cfg = {}) {
    return oracle_solution(p.alpha, p.beta, p.lambda, p.mu, p.g, t, cfg);
}

} // namespace fracrules
