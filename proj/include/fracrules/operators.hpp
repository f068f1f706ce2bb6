#pragma once

#include <vector>

#include "fracrules/grid.hpp"
#include "fracrules/special_functions.hpp"

namespace fracrules {

enum class Sense { RiemannLiouville, Caputo };

// Fractional order with its integer ceiling n (n-1 < alpha <= n, n = 1 for
// alpha in (0,1]); at integer alpha the operators reduce to classical
// derivatives.
struct FracOrder {
    double alpha;
    int n;
    static FracOrder of(double alpha);
    bool is_integer() const { return alpha == static_cast<double>(n); }
};

// Kernel field f(tau) = coef * tau^{gamma-1} * E_{A,B,gamma}(lambda tau^A, mu tau^B).
// lambda = mu = 0 degenerates to the pure power coef * tau^{gamma-1}/Gamma(gamma)
// (E_{A,B,gamma}(0,0) = 1/Gamma(gamma)). gamma <= 0 kernels are representable:
// series terms with non-positive-integer Gamma arguments vanish via recip_gamma.
struct PowerMLKernel {
    double coef = 1.0;
    double gamma = 1.0;
    double A = 1.0;
    double B = 1.0;
    double lambda = 0.0;
    double mu = 0.0;
};

double kernel_eval(const PowerMLKernel& k, double tau, const SeriesControl& sc = {});

// Limit as tau -> 0+ of the j-th derivative of the kernel, decided from the
// term exponents (never numerically).
struct ZeroLimit {
    bool singular = false;
    double value = 0.0;
};
ZeroLimit kernel_limit_at_zero(const PowerMLKernel& k, int j);

// Analytic operators: all act as a shift of gamma (exact on the field).
PowerMLKernel rl_integral_analytic(const PowerMLKernel& k, double rho);
PowerMLKernel rl_derivative_analytic(const PowerMLKernel& k, const FracOrder& order);
PowerMLKernel caputo_derivative_analytic(const PowerMLKernel& k, const FracOrder& order);

// Pascal's rule on the binomial coefficients of the double series: kernel =
// pure power tau^{gamma-1}/Gamma(gamma) (dropped when recip_gamma(gamma) = 0)
// + lambda * (gamma+A kernel) + mu * (gamma+B kernel). Exact identity.
std::vector<PowerMLKernel> pascal_split(const PowerMLKernel& k);

// Power rules on monomials t^eta (coefficient carries Gamma(eta+1)).
struct PowerTerm {
    double coef;
    double exponent;
};
struct PowerRuleResult {
    enum class Kind { Power, Zero, Undefined } kind;
    PowerTerm term{0.0, 0.0};
};
PowerRuleResult power_rule_caputo(double eta, double nu);
PowerTerm power_rule_rl(double eta, double nu); // InvalidExponent if eta <= -1

// (k * g)(t_i) = int_0^{t_i} k(tau) g(t_i - tau) dtau by product-trapezoid
// quadrature: per panel the smooth factor W(tau) g(t-tau) is linearized and
// integrated exactly against tau^{gamma-1}. Exact for pure-power kernels with
// linear g; O(h^2) for smooth data. gamma <= 0 kernels are Pascal-split first
// (integrable pieces only; QuadratureBreakdown if a non-integrable pure power
// survives).
GridFunction convolve_kernel(const PowerMLKernel& k, const GridFunction& g,
                             const SeriesControl& sc = {});

GridFunction rl_integral_numeric(const GridFunction& f, double rho);
GridFunction rl_derivative_numeric(const GridFunction& f, const FracOrder& order);
GridFunction caputo_derivative_numeric(const GridFunction& f, const FracOrder& order);

// Max over interior nodes of |RL - Caputo - sum_k (t-t0)^{k-alpha} f^{(k)}(t0)
// / Gamma(k-alpha+1)|; one-sided differences for f^{(k)}(t0). Interior excludes
// the startup zone max(10 nodes, 4% of the span) where the singular correction
// defeats uniform-grid differencing.
double rl_caputo_relation_check(const GridFunction& f, const FracOrder& order);

// First interior index for residual norms on an (N+1)-sample grid.
std::size_t interior_begin(std::size_t samples);

} // namespace fracrules
