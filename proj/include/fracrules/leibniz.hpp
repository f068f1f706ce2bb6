#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "fracrules/forcing.hpp"
#include "fracrules/grid.hpp"
#include "fracrules/operators.hpp"

namespace fracrules {

// Convolution F(t) = int_0^t f(t-s) g(s) ds with a kernel-field f and a
// forcing g supplying analytic derivatives (pre-sampled g is certified by the
// solvers but not Leibniz-checked).
struct ConvolutionProblem {
    PowerMLKernel f;
    Forcing g;
    double T = 1.0;
    int N = 256;
};

struct LeibnizReport {
    double t0 = 0.0, h = 0.0;
    std::vector<double> lhs, rhs;
    std::vector<double> boundary_terms; // limits b_l, l = 1..n (empty when the
                                        // engine works on split pieces)
    double max_residual = 0.0, rms_residual = 0.0;
    double lhs_cross_gap = 0.0; // coincidence check only
    std::size_t window_begin = 0;
};

// d^n/dt^n int f g = sum_{l=1..n} [lim ∂^{n-l}f](0+) g^{(l-1)}(t) + int f^{(n)} g.
LeibnizReport classical_leibniz_check(int n, const ConvolutionProblem& p);

// RL: D^alpha int f g = sum_l [lim D^{alpha-l}f](0+) g^{(l-1)}(t) + int D^alpha f g,
// boundary limits via the analytic gamma-shift (D^{alpha-l} = I^{l-alpha} for
// l >= alpha). Integer alpha delegates to the classical rule.
LeibnizReport rl_leibniz_check(const FracOrder& order, const ConvolutionProblem& p);

// Caputo, n >= 2. The kernel is Pascal-split until every ML piece satisfies
// the Caputo power-kernel condition gamma - 1 > floor(alpha) (their boundary
// brackets then vanish identically); split-off pure powers contribute through
// the fundamental relations C-D^alpha I^{c} g = g | I^{c-alpha} g |
// I^{n-alpha} D^{n-c} g for c = alpha | c > alpha | c < alpha.
LeibnizReport caputo_leibniz_check(const FracOrder& order, const ConvolutionProblem& p);

// alpha in (0,1]: Caputo LHS against the RL-form RHS (boundary term
// lim I^{1-alpha}f * g(t) + int RL-D^alpha f g); also records the max gap
// between the Caputo and RL numeric LHS samples (they coincide because the
// convolution vanishes at t0).
LeibnizReport caputo_rl_coincidence_check(const FracOrder& order,
                                          const ConvolutionProblem& p);

// n >= 2: RL-rule output minus Caputo-rule output minus the correction
// sum_{i=1..n-1} sum_{l=1..i} [lim ∂^{i-l}f](0+) g^{(l-1)}(0) t^{i-alpha}
// / Gamma(i-alpha+1), all brackets analytic at t0.
LeibnizReport rl_caputo_relation_theorem_check(const FracOrder& order,
                                               const ConvolutionProblem& p);

// Adapter for non-convolution kernels K(t,s): the caller supplies the
// t-partials and the s->t-0 limits; trapezoid quadrature (K assumed smooth).
// Bracket terms are D^{l-1}[lim ∂_t^{n-l}K * g] with the total derivative
// taken on the grid, so t-dependent diagonal limits are handled.
struct GeneralKernel {
    std::function<double(double, double)> K;                  // K(t,s)
    std::function<double(int, double, double)> dK;            // ∂_t^j K(t,s)
    std::function<double(int, double)> limit_at_upper;        // lim_{s->t-0} ∂_t^j K
};
LeibnizReport classical_leibniz_check_general(int n, const GeneralKernel& k,
                                              const Forcing& g, double T, int N);

} // namespace fracrules
