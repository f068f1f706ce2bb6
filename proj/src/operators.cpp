#include "fracrules/operators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "fracrules/errors.hpp"
#include "fracrules/gamma.hpp"

namespace fracrules {

FracOrder FracOrder::of(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw ValidationError("FracOrder: alpha must be finite and > 0");
    return {alpha, static_cast<int>(std::ceil(alpha))};
}

double kernel_eval(const PowerMLKernel& k, double tau, const SeriesControl& sc) {
    if (k.coef == 0.0) return 0.0;
    return k.coef *
           bivariate_ml_univariate({k.A, k.B, k.gamma, 1.0}, k.lambda, k.mu, tau, sc);
}

namespace {

double int_pow(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r *= static_cast<double>(n - k + j) / j;
    return r;
}

} // namespace

ZeroLimit kernel_limit_at_zero(const PowerMLKernel& k, int j) {
    if (j < 0) throw ValidationError("kernel_limit_at_zero: j must be >= 0");
    if (!(k.A > 0.0) || !(k.B > 0.0))
        throw InvalidKernel("kernel_limit_at_zero: requires A, B > 0");
    const double tol = 1e-9;
    // term (l,m): coef * C(l+m,m) lambda^l mu^m recip_gamma(lA+mB+gamma) tau^{e},
    // e = lA+mB+gamma-1; j-th derivative scales by the falling factorial of e.
    const double budget = j + 1.0 - k.gamma; // terms with lA+mB < budget diverge
    const int Lmax = k.lambda == 0.0 ? 0
                     : budget > 0.0 ? static_cast<int>(std::floor(budget / k.A)) + 1
                                    : 0;
    const int Mmax = k.mu == 0.0 ? 0
                     : budget > 0.0 ? static_cast<int>(std::floor(budget / k.B)) + 1
                                    : 0;
    ZeroLimit out;
    double acc = 0.0;
    for (int l = 0; l <= Lmax; ++l) {
        for (int m = 0; m <= Mmax; ++m) {
            const double arg = l * k.A + m * k.B + k.gamma;
            const double base =
                binom(l + m, m) * int_pow(k.lambda, l) * int_pow(k.mu, m) * recip_gamma(arg);
            if (base == 0.0) continue;
            const double e = arg - 1.0;
            double fall = 1.0;
            for (int q = 0; q < j; ++q) fall *= e - q;
            if (fall == 0.0) continue;
            const double ex = e - j;
            if (ex < -tol)
                out.singular = true;
            else if (std::fabs(ex) <= tol)
                acc += k.coef * base * fall;
        }
    }
    out.value = out.singular ? 0.0 : acc;
    return out;
}

PowerMLKernel rl_integral_analytic(const PowerMLKernel& k, double rho) {
    if (!(rho > 0.0)) throw ValidationError("rl_integral_analytic: rho must be > 0");
    PowerMLKernel r = k;
    r.gamma += rho;
    return r;
}

PowerMLKernel rl_derivative_analytic(const PowerMLKernel& k, const FracOrder& order) {
    if (!(k.gamma > 0.0))
        throw InvalidKernel("rl_derivative_analytic: requires gamma > 0");
    PowerMLKernel r = k;
    r.gamma -= order.alpha;
    return r;
}

PowerMLKernel caputo_derivative_analytic(const PowerMLKernel& k, const FracOrder& order) {
    if (!(k.gamma - 1.0 > std::floor(order.alpha)))
        throw ConditionViolated(
            "caputo_derivative_analytic: requires gamma-1 > floor(alpha); Pascal-split first");
    PowerMLKernel r = k;
    r.gamma -= order.alpha;
    return r;
}

std::vector<PowerMLKernel> pascal_split(const PowerMLKernel& k) {
    std::vector<PowerMLKernel> out;
    if (k.coef == 0.0) return out;
    if (k.lambda == 0.0 && k.mu == 0.0) {
        if (recip_gamma(k.gamma) != 0.0) out.push_back(k);
        return out;
    }
    if (recip_gamma(k.gamma) != 0.0)
        out.push_back({k.coef, k.gamma, k.A, k.B, 0.0, 0.0});
    if (k.lambda != 0.0)
        out.push_back({k.coef * k.lambda, k.gamma + k.A, k.A, k.B, k.lambda, k.mu});
    if (k.mu != 0.0)
        out.push_back({k.coef * k.mu, k.gamma + k.B, k.A, k.B, k.lambda, k.mu});
    return out;
}

PowerRuleResult power_rule_caputo(double eta, double nu) {
    const int n = static_cast<int>(std::ceil(nu)); // n-1 < nu <= n
    const bool eta_int = eta == std::floor(eta);
    if (eta_int && eta >= 0.0 && eta <= n - 1.0) return {PowerRuleResult::Kind::Zero};
    if (eta > n - 1.0)
        return {PowerRuleResult::Kind::Power,
                {gamma_fn(eta + 1.0) * recip_gamma(eta - nu + 1.0), eta - nu}};
    return {PowerRuleResult::Kind::Undefined};
}

PowerTerm power_rule_rl(double eta, double nu) {
    if (!(eta > -1.0)) throw InvalidExponent("power_rule_rl: requires eta > -1");
    return {gamma_fn(eta + 1.0) * recip_gamma(eta - nu + 1.0), eta - nu};
}

namespace {

void convolve_leaf(const PowerMLKernel& k, const GridFunction& g,
                   const SeriesControl& sc, GridFunction& out) {
    const std::size_t n = g.size() - 1;
    const double h = g.h;
    const double c = k.gamma;

    // smooth factor W(tau_m) = coef * E_{A,B,gamma}(lambda tau^A, mu tau^B)
    std::vector<double> W(n + 1);
    if (k.lambda == 0.0 && k.mu == 0.0) {
        std::fill(W.begin(), W.end(), k.coef * recip_gamma(k.gamma));
    } else {
        for (std::size_t m = 0; m <= n; ++m) {
            const double tau = static_cast<double>(m) * h;
            W[m] = k.coef * bivariate_ml({k.A, k.B, k.gamma, 1.0},
                                         k.lambda * std::pow(tau, k.A),
                                         k.mu * std::pow(tau, k.B), sc);
        }
    }

    // panel moments M0 = int tau^{c-1}, S = (M1 - tau_a M0)/h over [mh,(m+1)h]
    std::vector<double> M0(n), S(n);
    for (std::size_t m = 0; m < n; ++m) {
        double m0, m1;
        if (m == 0) {
            m0 = std::pow(h, c) / c;
            m1 = std::pow(h, c + 1.0) / (c + 1.0);
        } else {
            const double ta = static_cast<double>(m) * h;
            const double lm = std::log1p(1.0 / static_cast<double>(m));
            m0 = std::pow(ta, c) * std::expm1(c * lm) / c;
            m1 = std::pow(ta, c + 1.0) * std::expm1((c + 1.0) * lm) / (c + 1.0);
        }
        M0[m] = m0;
        S[m] = (m1 - static_cast<double>(m) * h * m0) / h;
    }

    for (std::size_t i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (std::size_t m = 0; m < i; ++m) {
            const double pa = W[m] * g.y[i - m];
            const double pb = W[m + 1] * g.y[i - m - 1];
            acc += pa * M0[m] + (pb - pa) * S[m];
        }
        out.y[i] += acc;
    }
}

} // namespace

GridFunction convolve_kernel(const PowerMLKernel& k, const GridFunction& g,
                             const SeriesControl& sc) {
    if (g.size() < 2) throw GridTooShort("convolve: need at least 2 samples");
    GridFunction out;
    out.t0 = g.t0;
    out.h = g.h;
    out.y.assign(g.size(), 0.0);

    // Pascal-split worklist. Splits are mandatory while gamma <= 0 (the
    // piece is not integrable as written); beyond that, ML pieces keep
    // splitting until gamma >= 2 - min(A,B), so the linearly interpolated
    // E-factor contributes O(h^2) against the exact power moments (panel-0
    // interpolation of a tau^{min(A,B)} term otherwise caps the order at
    // gamma + min(A,B)). A piece budget keeps small exponents from blowing
    // up the piece count; past it, remaining pieces integrate as-is.
    std::deque<PowerMLKernel> work{k};
    int accuracy_budget = 64;
    std::size_t pops = 0;
    while (!work.empty()) {
        if (++pops > 4096)
            throw QuadratureBreakdown(
                "convolve: Pascal splitting does not regularize kernel");
        const PowerMLKernel c = work.front();
        work.pop_front();
        if (c.coef == 0.0) continue;
        if (c.lambda == 0.0 && c.mu == 0.0) {
            if (recip_gamma(c.gamma) == 0.0) continue; // identically zero
            if (c.gamma <= 0.0)
                throw QuadratureBreakdown(
                    "convolve: non-integrable power component (gamma <= 0)");
            convolve_leaf(c, g, sc, out);
            continue;
        }
        const double smooth_at = 2.0 - std::min(c.A, c.B);
        if (c.gamma <= 0.0 || (c.gamma < smooth_at && accuracy_budget > 0)) {
            if (c.gamma > 0.0) --accuracy_budget;
            for (const PowerMLKernel& piece : pascal_split(c)) work.push_back(piece);
            continue;
        }
        convolve_leaf(c, g, sc, out);
    }
    return out;
}

GridFunction rl_integral_numeric(const GridFunction& f, double rho) {
    if (!(rho > 0.0)) throw ValidationError("rl_integral_numeric: rho must be > 0");
    return convolve_kernel({1.0, rho, 1.0, 1.0, 0.0, 0.0}, f);
}

GridFunction rl_derivative_numeric(const GridFunction& f, const FracOrder& order) {
    if (f.size() < static_cast<std::size_t>(order.n) + 2)
        throw GridTooShort("rl_derivative_numeric: need at least n+2 samples");
    if (order.is_integer()) return nth_fd(f, order.n);
    return nth_fd(rl_integral_numeric(f, order.n - order.alpha), order.n);
}

GridFunction caputo_derivative_numeric(const GridFunction& f, const FracOrder& order) {
    if (f.size() < static_cast<std::size_t>(order.n) + 2)
        throw GridTooShort("caputo_derivative_numeric: need at least n+2 samples");
    if (order.is_integer()) return nth_fd(f, order.n);
    return rl_integral_numeric(nth_fd(f, order.n), order.n - order.alpha);
}

std::size_t interior_begin(std::size_t samples) {
    if (samples < 2) return samples;
    const std::size_t n = samples - 1;
    std::size_t start = std::max<std::size_t>(
        10, static_cast<std::size_t>(std::ceil(0.04 * static_cast<double>(n))));
    return std::min(start, n);
}

double rl_caputo_relation_check(const GridFunction& f, const FracOrder& order) {
    const GridFunction rl = rl_derivative_numeric(f, order);
    const GridFunction cap = caputo_derivative_numeric(f, order);
    std::vector<double> d0(order.n);
    for (int kk = 0; kk < order.n; ++kk) d0[kk] = boundary_derivative(f, kk);
    double worst = 0.0;
    for (std::size_t i = interior_begin(f.size()); i < f.size(); ++i) {
        const double tr = f.t(i) - f.t0;
        double corr = 0.0;
        for (int kk = 0; kk < order.n; ++kk)
            corr += std::pow(tr, kk - order.alpha) * d0[kk] *
                    recip_gamma(kk - order.alpha + 1.0);
        worst = std::max(worst, std::fabs(rl.y[i] - cap.y[i] - corr));
    }
    return worst;
}

} // namespace fracrules
