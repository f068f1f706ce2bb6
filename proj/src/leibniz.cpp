#include "fracrules/leibniz.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <utility>

#include "fracrules/errors.hpp"
#include "fracrules/gamma.hpp"

namespace fracrules {

namespace {

GridFunction sample_g(const ConvolutionProblem& p) {
    return sample_on_grid(p.g.f, p.T, p.N);
}

// Residual stats over t >= 10h (the convolution smooths one power, so the
// first few nodes carry the quadrature startup error).
void finalize(LeibnizReport& r) {
    const std::size_t n = r.lhs.size();
    r.window_begin = n > 20 ? 10 : n / 2;
    double mx = 0.0, ss = 0.0;
    std::size_t m = 0;
    for (std::size_t i = r.window_begin; i < n; ++i) {
        const double d = std::abs(r.lhs[i] - r.rhs[i]);
        mx = std::max(mx, d);
        ss += d * d;
        ++m;
    }
    r.max_residual = mx;
    r.rms_residual = m ? std::sqrt(ss / static_cast<double>(m)) : 0.0;
}

double bracket_or_throw(const PowerMLKernel& k, int j, const char* who) {
    const ZeroLimit z = kernel_limit_at_zero(k, j);
    if (z.singular)
        throw BoundaryLimitSingular(std::string(who) +
                                    ": kernel boundary limit diverges at 0+");
    return z.value;
}

// Pascal-split until every lambda/mu-carrying piece has gamma > gamma_min;
// pure-power remainders are returned as (coef, gamma) meaning
// coef * tau^{gamma-1} / Gamma(gamma).
struct SplitDecomposition {
    std::vector<PowerMLKernel> ml;
    std::vector<std::pair<double, double>> power;
};

SplitDecomposition split_until(const PowerMLKernel& k, double gamma_min) {
    SplitDecomposition out;
    std::deque<PowerMLKernel> q{k};
    std::size_t pops = 0;
    while (!q.empty()) {
        if (++pops > 20000)
            throw ConditionViolated(
                "kernel splitting does not terminate in reasonable size; "
                "exponents too small relative to the order");
        PowerMLKernel c = q.front();
        q.pop_front();
        if (c.lambda == 0.0 && c.mu == 0.0) {
            if (recip_gamma(c.gamma) == 0.0) continue; // identically zero
            if (c.gamma <= 0.0)
                throw QuadratureBreakdown(
                    "split produced a non-integrable pure power");
            out.power.emplace_back(c.coef, c.gamma);
        } else if (c.gamma > gamma_min) {
            out.ml.push_back(c);
        } else {
            for (const PowerMLKernel& piece : pascal_split(c)) q.push_back(piece);
        }
    }
    return out;
}

void accumulate(std::vector<double>& acc, const GridFunction& g, double w = 1.0) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * g.y[i];
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

// RL-rule samples of D^alpha int f g computed piecewise: ML pieces through the
// analytic gamma-shift (integrable because gamma > n >= alpha), pure powers
// through D^alpha I^c g = g | I^{c-alpha} g | D^{alpha-c} g.
std::vector<double> rl_rule_decomposed(const SplitDecomposition& sd,
                                       const GridFunction& gg,
                                       const FracOrder& order) {
    std::vector<double> acc(gg.size(), 0.0);
    for (const PowerMLKernel& piece : sd.ml)
        accumulate(acc, convolve_kernel(rl_derivative_analytic(piece, order), gg));
    for (const auto& [coef, gp] : sd.power) {
        if (near(gp, order.alpha))
            accumulate(acc, gg, coef);
        else if (gp > order.alpha)
            accumulate(acc, rl_integral_numeric(gg, gp - order.alpha), coef);
        else
            accumulate(acc, rl_derivative_numeric(gg, FracOrder::of(order.alpha - gp)),
                       coef);
    }
    return acc;
}

// Caputo counterpart: ML pieces carry gamma - 1 > floor(alpha) after the
// split, so their boundary brackets vanish and the analytic shift applies;
// powers use C-D^alpha I^c g = g | I^{c-alpha} g | I^{n-alpha} D^{n-c} g.
std::vector<double> caputo_rule_decomposed(const SplitDecomposition& sd,
                                           const GridFunction& gg,
                                           const FracOrder& order) {
    std::vector<double> acc(gg.size(), 0.0);
    for (const PowerMLKernel& piece : sd.ml)
        accumulate(acc, convolve_kernel(caputo_derivative_analytic(piece, order), gg));
    for (const auto& [coef, gp] : sd.power) {
        if (near(gp, order.alpha)) {
            accumulate(acc, gg, coef);
        } else if (gp > order.alpha) {
            accumulate(acc, rl_integral_numeric(gg, gp - order.alpha), coef);
        } else {
            const GridFunction dg =
                rl_derivative_numeric(gg, FracOrder::of(order.n - gp));
            accumulate(acc, rl_integral_numeric(dg, order.n - order.alpha), coef);
        }
    }
    return acc;
}

} // namespace

LeibnizReport classical_leibniz_check(int n, const ConvolutionProblem& p) {
    if (n < 1) throw ValidationError("classical rule needs n >= 1");
    const GridFunction gg = sample_g(p);
    const GridFunction F = convolve_kernel(p.f, gg);

    LeibnizReport r;
    r.t0 = gg.t0;
    r.h = gg.h;
    r.lhs = nth_fd(F, n).y;

    for (int l = 1; l <= n; ++l)
        r.boundary_terms.push_back(
            bracket_or_throw(p.f, n - l, "classical_leibniz_check"));

    const GridFunction tail =
        convolve_kernel(rl_derivative_analytic(p.f, FracOrder::of(n)), gg);
    r.rhs.assign(gg.size(), 0.0);
    for (std::size_t i = 0; i < gg.size(); ++i) {
        double s = tail.y[i];
        for (int l = 1; l <= n; ++l)
            s += r.boundary_terms[static_cast<std::size_t>(l - 1)] * p.g.d(l - 1, gg.t(i));
        r.rhs[i] = s;
    }
    finalize(r);
    return r;
}

LeibnizReport rl_leibniz_check(const FracOrder& order, const ConvolutionProblem& p) {
    if (order.alpha <= 0.0) throw ValidationError("rl_leibniz_check needs alpha > 0");
    if (order.is_integer()) return classical_leibniz_check(order.n, p);

    const GridFunction gg = sample_g(p);
    const GridFunction F = convolve_kernel(p.f, gg);

    LeibnizReport r;
    r.t0 = gg.t0;
    r.h = gg.h;
    r.lhs = rl_derivative_numeric(F, order).y;

    // b_l = lim_{t->0+} D^{alpha-l} f = lim I^{l-alpha} f, the gamma-shifted
    // kernel evaluated at the origin.
    for (int l = 1; l <= order.n; ++l) {
        PowerMLKernel shifted = p.f;
        shifted.gamma = p.f.gamma - order.alpha + static_cast<double>(l);
        r.boundary_terms.push_back(bracket_or_throw(shifted, 0, "rl_leibniz_check"));
    }

    const GridFunction tail =
        convolve_kernel(rl_derivative_analytic(p.f, order), gg);
    r.rhs.assign(gg.size(), 0.0);
    for (std::size_t i = 0; i < gg.size(); ++i) {
        double s = tail.y[i];
        for (int l = 1; l <= order.n; ++l)
            s += r.boundary_terms[static_cast<std::size_t>(l - 1)] * p.g.d(l - 1, gg.t(i));
        r.rhs[i] = s;
    }
    finalize(r);
    return r;
}

LeibnizReport caputo_leibniz_check(const FracOrder& order, const ConvolutionProblem& p) {
    if (order.n < 2)
        throw ValidationError(
            "caputo_leibniz_check needs n >= 2; use the coincidence check below");
    if (order.is_integer()) return classical_leibniz_check(order.n, p);
    if (!(p.f.gamma > static_cast<double>(order.n) - 1.0))
        throw ConditionViolated(
            "Caputo side needs kernel gamma > n-1 so the convolution has "
            "n-1 vanishing derivatives at 0+");

    const GridFunction gg = sample_g(p);
    const GridFunction F = convolve_kernel(p.f, gg);

    LeibnizReport r;
    r.t0 = gg.t0;
    r.h = gg.h;
    // F and its first n-1 derivatives vanish at 0+, so the Caputo derivative
    // equals the RL composition D^n I^{n-alpha}; differentiating the smoothed
    // integral avoids the singular F^(n) startup that I^{n-alpha} D^n would
    // drag across the window.
    r.lhs = rl_derivative_numeric(F, order).y;
    r.rhs = caputo_rule_decomposed(
        split_until(p.f, static_cast<double>(order.n)), gg, order);
    finalize(r);
    return r;
}

LeibnizReport caputo_rl_coincidence_check(const FracOrder& order,
                                          const ConvolutionProblem& p) {
    if (order.alpha <= 0.0 || order.alpha > 1.0)
        throw ValidationError("coincidence check needs alpha in (0,1]");

    const GridFunction gg = sample_g(p);
    const GridFunction F = convolve_kernel(p.f, gg);

    LeibnizReport r;
    r.t0 = gg.t0;
    r.h = gg.h;
    r.lhs = caputo_derivative_numeric(F, order).y;
    const GridFunction rl = rl_derivative_numeric(F, order);

    PowerMLKernel shifted = p.f;
    shifted.gamma = p.f.gamma + 1.0 - order.alpha; // I^{1-alpha} f at 0+
    r.boundary_terms.push_back(
        bracket_or_throw(shifted, 0, "caputo_rl_coincidence_check"));

    const GridFunction tail =
        convolve_kernel(rl_derivative_analytic(p.f, order), gg);
    r.rhs.assign(gg.size(), 0.0);
    for (std::size_t i = 0; i < gg.size(); ++i)
        r.rhs[i] = tail.y[i] + r.boundary_terms[0] * p.g(gg.t(i));
    finalize(r);

    for (std::size_t i = r.window_begin; i < gg.size(); ++i)
        r.lhs_cross_gap = std::max(r.lhs_cross_gap, std::abs(r.lhs[i] - rl.y[i]));
    return r;
}

LeibnizReport rl_caputo_relation_theorem_check(const FracOrder& order,
                                               const ConvolutionProblem& p) {
    if (order.n < 2)
        throw ValidationError(
            "relation check needs n >= 2; n = 1 is the coincidence case");
    if (order.is_integer()) return classical_leibniz_check(order.n, p);

    const GridFunction gg = sample_g(p);
    const SplitDecomposition sd = split_until(p.f, static_cast<double>(order.n));

    LeibnizReport r;
    r.t0 = gg.t0;
    r.h = gg.h;
    r.lhs = rl_rule_decomposed(sd, gg, order);
    r.rhs = caputo_rule_decomposed(sd, gg, order);

    // F^(i)(0) = sum_{l<=i} [lim ∂^{i-l}f](0+) g^{(l-1)}(0); the relation adds
    // F^(i)(0) t^{i-alpha} / Gamma(i-alpha+1) for i = 1..n-1 (F(0) = 0).
    for (int i = 1; i < order.n; ++i) {
        double fi0 = 0.0;
        for (int l = 1; l <= i; ++l)
            fi0 += bracket_or_throw(p.f, i - l, "rl_caputo_relation_theorem_check") *
                   p.g.d(l - 1, gg.t0);
        const double rg = recip_gamma(static_cast<double>(i) - order.alpha + 1.0);
        if (fi0 == 0.0 || rg == 0.0) continue;
        for (std::size_t j = 1; j < gg.size(); ++j)
            r.rhs[j] += fi0 * rg *
                        std::pow(gg.t(j), static_cast<double>(i) - order.alpha);
    }
    // i - alpha < 0 for i < alpha, so the corrected side diverges at the
    // origin; both arrays are zeroed there and the window starts later anyway.
    r.lhs[0] = 0.0;
    r.rhs[0] = 0.0;
    finalize(r);
    return r;
}

LeibnizReport classical_leibniz_check_general(int n, const GeneralKernel& k,
                                              const Forcing& g, double T, int N) {
    if (n < 1) throw ValidationError("classical rule needs n >= 1");
    if (!(T > 0.0) || N < 16) throw ValidationError("need T > 0 and N >= 16");

    const GridFunction gs = sample_on_grid(g.f, T, N);
    const double h = gs.h;
    const std::size_t sz = gs.size();

    // F_i = int_0^{t_i} K(t_i, s) g(s) ds by trapezoid; same rule for the
    // ∂_t^n K tail so both sides carry matching O(h^2) quadrature.
    auto trap = [&](const std::function<double(double, double)>& ker,
                    std::size_t i) {
        if (i == 0) return 0.0;
        const double ti = gs.t(i);
        double s = 0.5 * (ker(ti, gs.t0) * gs.y[0] + ker(ti, ti) * gs.y[i]);
        for (std::size_t j = 1; j < i; ++j) s += ker(ti, gs.t(j)) * gs.y[j];
        return h * s;
    };

    GridFunction F;
    F.t0 = gs.t0;
    F.h = h;
    F.y.resize(sz);
    for (std::size_t i = 0; i < sz; ++i) F.y[i] = trap(k.K, i);

    LeibnizReport r;
    r.t0 = gs.t0;
    r.h = h;
    r.lhs = nth_fd(F, n).y;
    r.rhs.assign(sz, 0.0);
    auto dn = [&](double t, double s) { return k.dK(n, t, s); };
    for (std::size_t i = 0; i < sz; ++i) r.rhs[i] = trap(dn, i);
    // bracket terms D^{l-1}[ (lim_{s->t-0} ∂_t^{n-l} K)(t) g(t) ]: the
    // diagonal limits carry their own t-dependence for non-convolution
    // kernels, so the product is differentiated on the grid (a convolution
    // kernel has constant limits and this collapses to b_{n-l} g^{(l-1)}).
    for (int l = 1; l <= n; ++l) {
        GridFunction u;
        u.t0 = gs.t0;
        u.h = h;
        u.y.resize(sz);
        for (std::size_t i = 0; i < sz; ++i)
            u.y[i] = k.limit_at_upper(n - l, gs.t(i)) * gs.y[i];
        const GridFunction du = l == 1 ? u : nth_fd(u, l - 1);
        for (std::size_t i = 0; i < sz; ++i) r.rhs[i] += du.y[i];
    }
    finalize(r);
    return r;
}

} // namespace fracrules
