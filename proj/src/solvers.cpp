#include "fracrules/solvers.hpp"

#include <algorithm>
#include <cmath>

#include "fracrules/errors.hpp"
#include "fracrules/special_functions.hpp"

namespace fracrules {

namespace {

void validate_orders(double alpha, double beta, double T, int N) {
    if (!(alpha > 1.0 && alpha <= 2.0))
        throw ValidationError("solver: alpha must lie in (1,2]");
    if (!(beta > 0.0 && beta <= 1.0))
        throw ValidationError("solver: beta must lie in (0,1]");
    if (!(T > 0.0)) throw ValidationError("solver: T must be > 0");
    if (N < 16) throw ValidationError("solver: N must be >= 16");
}

PowerMLKernel green_as_kernel(double alpha, double beta, double lambda, double mu) {
    return PowerMLKernel{1.0, alpha, alpha, alpha - beta, lambda, mu};
}

} // namespace

double green_kernel(double alpha, double beta, double lambda, double mu, double tau) {
    if (!(tau > 0.0)) throw ValidationError("green_kernel: tau must be > 0");
    return bivariate_ml_univariate({alpha, alpha - beta, alpha, 1.0}, lambda, mu, tau);
}

GridFunction solve_bagley_torvik(const BagleyTorvikProblem& p) {
    validate_orders(p.alpha, p.beta, p.T, p.N);
    const GridFunction g = sample_on_grid(p.g.f, p.T, p.N);
    return convolve_kernel(green_as_kernel(p.alpha, p.beta, p.lambda, p.mu), g);
}

GridFunction solve_bagley_torvik(double alpha, double beta, double lambda,
                                 double mu, const GridFunction& g) {
    if (g.size() < 2) throw GridTooShort("solver: forcing grid too short");
    validate_orders(alpha, beta, g.h * static_cast<double>(g.size() - 1),
                    static_cast<int>(g.size()) - 1);
    return convolve_kernel(green_as_kernel(alpha, beta, lambda, mu), g);
}

GridFunction solve_oscillator(double mu, double lambda, const Forcing& g,
                              double T, int N) {
    BagleyTorvikProblem p;
    p.alpha = 2.0;
    p.beta = 1.0;
    p.lambda = lambda;
    p.mu = mu;
    p.g = g;
    p.T = T;
    p.N = N;
    return solve_bagley_torvik(p);
}

GridFunction classical_oscillator_reference(double mu, double lambda,
                                            const Forcing& g, double T, int N) {
    validate_orders(2.0, 1.0, T, N);

    // weight function H of y'' - mu y' - lambda y from characteristic roots
    const double disc = mu * mu + 4.0 * lambda;
    std::function<double(double)> H;
    if (std::abs(disc) < 1e-12 * (1.0 + mu * mu)) {
        const double r = 0.5 * mu;
        H = [r](double tau) { return tau * std::exp(r * tau); };
    } else if (disc > 0.0) {
        const double r1 = 0.5 * (mu + std::sqrt(disc));
        const double r2 = 0.5 * (mu - std::sqrt(disc));
        H = [r1, r2](double tau) {
            return (std::exp(r1 * tau) - std::exp(r2 * tau)) / (r1 - r2);
        };
    } else {
        const double a = 0.5 * mu;
        const double b = 0.5 * std::sqrt(-disc);
        H = [a, b](double tau) { return std::exp(a * tau) * std::sin(b * tau) / b; };
    }

    GridFunction out;
    out.t0 = 0.0;
    out.h = T / static_cast<double>(N);
    out.y.assign(static_cast<std::size_t>(N) + 1, 0.0);
    for (int i = 1; i <= N; ++i) {
        const double ti = out.h * static_cast<double>(i);
        const int panels = 2 * std::max(8, i); // Simpson, step <= h/2
        const double hs = ti / static_cast<double>(panels);
        double acc = H(0.0) * g(ti) + H(ti) * g(0.0);
        for (int j = 1; j < panels; ++j) {
            const double tau = hs * static_cast<double>(j);
            acc += (j % 2 ? 4.0 : 2.0) * H(tau) * g(ti - tau);
        }
        out.y[static_cast<std::size_t>(i)] = acc * hs / 3.0;
    }
    return out;
}

SolutionCertificate certify_solution(const BagleyTorvikProblem& p,
                                     const GridFunction& y) {
    validate_orders(p.alpha, p.beta, p.T, p.N);
    if (y.size() != static_cast<std::size_t>(p.N) + 1 ||
        std::abs(y.h - p.T / static_cast<double>(p.N)) > 1e-12 * y.h)
        throw ValidationError("certify_solution: y is not on the problem grid");

    const FracOrder oa = FracOrder::of(p.alpha);
    const FracOrder ob = FracOrder::of(p.beta);
    const GridFunction da = p.sense == Sense::Caputo
                                ? caputo_derivative_numeric(y, oa)
                                : rl_derivative_numeric(y, oa);
    const GridFunction db = p.sense == Sense::Caputo
                                ? caputo_derivative_numeric(y, ob)
                                : rl_derivative_numeric(y, ob);

    SolutionCertificate cert;
    cert.y = y;
    cert.window_begin = interior_begin(y.size());
    double ss = 0.0;
    std::size_t m = 0;
    for (std::size_t i = cert.window_begin; i < y.size(); ++i) {
        const double res = std::abs(da.y[i] - p.mu * db.y[i] - p.lambda * y.y[i] -
                                    p.g(y.t(i)));
        cert.residual_max = std::max(cert.residual_max, res);
        ss += res * res;
        ++m;
    }
    cert.residual_rms = m ? std::sqrt(ss / static_cast<double>(m)) : 0.0;

    if (p.sense == Sense::Caputo) {
        cert.ic_residuals = {std::abs(y.y[0]), std::abs(boundary_derivative(y, 1))};
    } else {
        // homogeneous RL data: I^{2-alpha} y and D^{alpha-1} y vanish at 0+;
        // evaluated at the first interior node from grid values.
        const double ia = 2.0 - p.alpha;
        const GridFunction iy =
            ia > 0.0 ? rl_integral_numeric(y, ia) : y; // alpha = 2: I^0 = id
        const GridFunction dy = rl_derivative_numeric(y, FracOrder::of(p.alpha - 1.0));
        cert.ic_residuals = {std::abs(iy.y[1]), std::abs(dy.y[1])};
    }
    return cert;
}

} // namespace fracrules
