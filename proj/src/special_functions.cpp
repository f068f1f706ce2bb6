#include "fracrules/special_functions.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "fracrules/errors.hpp"
#include "fracrules/gamma.hpp"

namespace fracrules {

namespace {

constexpr double kOverflowGuard = 1e290; // pre-overflow switch threshold
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Shared termination rule. `peak` tracks the largest |partial sum| seen so a
// term below the roundoff noise of the accumulation also counts as small
// (otherwise alternating series that cancel to ~0, e.g. sin(pi), would spin
// until max_terms).
struct Termination {
    double rel_tol;
    int need;
    int count = 0;
    double peak = 0.0;

    bool done(double term, double sum) {
        double a = std::fabs(sum);
        if (a > peak) peak = a;
        double m = std::fabs(term);
        bool small = m <= rel_tol * a || m <= 1e-300 || m <= 0.25 * kEps * peak;
        count = small ? count + 1 : 0;
        return count >= need;
    }
};

void require_ml(const MLParams& p) {
    if (!(p.alpha > 0.0) || !std::isfinite(p.alpha) || !std::isfinite(p.beta) ||
        !std::isfinite(p.gamma_p))
        throw ValidationError("ml: alpha must be finite and > 0, beta/gamma_p finite");
}

// One-dimensional family core: sum_i c_i t^i recip_gamma(i*alpha + beta) with
// c_0 = exp(lc0) > 0 and c_{i+1} = c_i * ratio(i). Terms are built by direct
// factor updates; log-space amplifies the relative error of each term by its
// exponent magnitude, which is fatal where the checks rely on exact
// cancellation, so logs are only a fallback once magnitudes leave the double
// range (only reachable for large positive arguments, where no cancellation
// occurs).
template <class Ratio>
double ml_series(double alpha, double beta, double lc0, Ratio ratio, double t,
                 const SeriesControl& sc) {
    Termination stop{sc.rel_tol, sc.consecutive_small};
    double sum = 0.0;
    bool logmode = lc0 > std::log(kOverflowGuard);
    double v = logmode ? 0.0 : std::exp(lc0);
    double lv = lc0; // log(c_i) + i*log(t), maintained only once needed
    double lse_max = -std::numeric_limits<double>::infinity(), lse_acc = 0.0;

    for (int i = 0; i < sc.max_terms; ++i) {
        if (!logmode && std::fabs(v) > kOverflowGuard) {
            if (t < 0.0 || v < 0.0)
                throw NonConvergence("ml series: term magnitudes exceed double range "
                                     "with cancellation; not representable");
            lv = std::log(v);
            logmode = true;
        }
        double term;
        if (!logmode) {
            term = v * recip_gamma(i * alpha + beta);
            sum += term;
            if (stop.done(term, sum)) return sum;
            v *= ratio(i) * t;
        } else {
            double r = ratio(i);
            double L = lv - std::lgamma(i * alpha + beta);
            // accumulate exp(L) against the running max
            if (L > lse_max) {
                lse_acc = lse_acc * std::exp(lse_max - L) + 1.0;
                lse_max = L;
            } else {
                lse_acc += std::exp(L - lse_max);
            }
            double lsum = lse_max + std::log(lse_acc);
            bool small = L <= std::log(sc.rel_tol) + lsum;
            stop.count = small ? stop.count + 1 : 0;
            if (stop.count >= stop.need) {
                double val = std::exp(lsum) + sum;
                if (!std::isfinite(val))
                    throw NonConvergence("ml series: value exceeds double range");
                return val;
            }
            if (!(r > 0.0))
                throw NonConvergence("ml series: sign change beyond double range");
            lv += std::log(r) + std::log(t);
        }
    }
    throw NonConvergence("ml series: max_terms exhausted");
}

double lchoose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Bivariate core: sum over anti-diagonals d = l+k of
// (delta)_d/d! * C(d,k) * u^{d-k} v^k * recip_gamma((d-k)A + kB + g).
// Direct factor products; a diagonal falls back to signed-log evaluation when
// the bound on |rho * C(d,k) * u^l v^k| approaches the double range (the
// binomial and the powers can jointly overflow even while the true term,
// which carries a tiny 1/Gamma factor, is moderate). Only the far tail of
// slowly converging series gets there, so the log roundoff does not touch the
// cancellation-sensitive bulk.
double biv_series(double A, double B, double g, double delta, double u, double v,
                  const SeriesControl& sc) {
    Termination stop{sc.rel_tol, sc.consecutive_small};
    std::vector<double> U{1.0}, V{1.0};
    double rho = 1.0;                        // (delta)_d / d!
    double lrho = 0.0;
    int srho = 1;
    const double lu = std::log(std::fabs(u));
    const double lv = std::log(std::fabs(v));
    const int su = u > 0.0 ? 1 : (u < 0.0 ? -1 : 0);
    const int sv = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    bool frozen = false; // power tables stopped growing; direct path unusable
    double sum = 0.0;

    for (int d = 0; d <= sc.max_terms; ++d) {
        if (d > 0) {
            double f = (delta + d - 1) / d;
            rho *= f;
            if (f != 0.0) lrho += std::log(std::fabs(f));
            srho = f > 0.0 ? srho : (f < 0.0 ? -srho : 0);
            if (!frozen) {
                double nu = U.back() * u, nv = V.back() * v;
                if (std::fabs(nu) > kOverflowGuard || std::fabs(nv) > kOverflowGuard ||
                    std::fabs(rho) > kOverflowGuard) {
                    frozen = true;
                } else {
                    U.push_back(nu);
                    V.push_back(nv);
                }
            }
        }
        // largest |u^l v^k| on the diagonal sits at an endpoint (log-linear in k)
        double pmax = 0.0;
        if (su != 0) pmax = d * lu;
        if (sv != 0) pmax = std::max(su != 0 ? pmax : d * lv, d * lv);
        bool use_log = frozen || lrho + lchoose(d, d / 2) + pmax > 690.0;
        // log-space keeps only magnitudes, so it is sound for single-sign
        // series alone; with alternating terms at this size the cancellation
        // is not representable (same policy as the one-dimensional engine).
        if (use_log && (su < 0 || sv < 0 || srho < 0))
            throw NonConvergence("bivariate ml: term magnitudes exceed double "
                                 "range with cancellation; not representable");

        double diag = 0.0;
        if (!use_log) {
            double cb = 1.0; // C(d, k)
            for (int k = 0; k <= d; ++k) {
                if (k > 0) cb *= double(d - k + 1) / k;
                double rg = recip_gamma((d - k) * A + k * B + g);
                if (rg == 0.0) continue;
                diag += rho * (cb * (U[d - k] * V[k])) * rg;
            }
        } else if (srho != 0) {
            for (int k = 0; k <= d; ++k) {
                int l = d - k;
                if ((l > 0 && su == 0) || (k > 0 && sv == 0)) continue;
                auto [lg, sg] = lgamma_sign(l * A + k * B + g);
                if (sg == 0) continue;
                double lp = (l > 0 ? l * lu : 0.0) + (k > 0 ? k * lv : 0.0);
                double L = lrho + lchoose(d, k) + lp - lg;
                if (L > 708.0)
                    throw NonConvergence("bivariate ml: term exceeds double range");
                int sign = srho * sg;
                if (su < 0 && (l & 1)) sign = -sign;
                if (sv < 0 && (k & 1)) sign = -sign;
                diag += sign * std::exp(L);
            }
        }
        sum += diag;
        if (!std::isfinite(sum))
            throw NonConvergence("bivariate ml: partial sum exceeds double range");
        if (stop.done(diag, sum)) return sum;
    }
    throw NonConvergence("bivariate ml: max_terms exhausted");
}

} // namespace

double ml2(const MLParams& p, double t, const SeriesControl& sc) {
    require_ml(p);
    return ml_series(p.alpha, p.beta, 0.0, [](int) { return 1.0; }, t, sc);
}

double ml3(const MLParams& p, double t, const SeriesControl& sc) {
    require_ml(p);
    double gp = p.gamma_p;
    // c_i = (gamma_p)_i / i!
    return ml_series(p.alpha, p.beta, 0.0,
                     [gp](int i) { return (gp + i) / (i + 1.0); }, t, sc);
}

double ml2_deriv(int l, const MLParams& p, double t, const SeriesControl& sc) {
    require_ml(p);
    if (l < 0) throw ValidationError("ml2_deriv: l must be >= 0");
    // c_i = (i+l)!/i!, beta shifted by l*alpha
    return ml_series(p.alpha, l * p.alpha + p.beta, std::lgamma(l + 1.0),
                     [l](int i) { return (i + l + 1.0) / (i + 1.0); }, t, sc);
}

double bivariate_ml(const BivariateMLParams& p, double u, double v,
                    const SeriesControl& sc) {
    if (!(p.alpha > 0.0) || !(p.beta > 0.0))
        throw ValidationError("bivariate ml: alpha and beta must be > 0");
    return biv_series(p.alpha, p.beta, p.gamma, p.delta, u, v, sc);
}

double bivariate_ml_univariate(const BivariateMLParams& p, double lambda, double mu,
                               double t, const SeriesControl& sc) {
    if (!(p.alpha > 0.0) || !(p.beta > 0.0))
        throw ValidationError("bivariate ml: alpha and beta must be > 0");
    if (t < 0.0) throw ValidationError("bivariate ml univariate: t must be >= 0");
    if (t == 0.0) {
        if (p.gamma > 1.0) return 0.0;
        if (p.gamma == 1.0) return recip_gamma(1.0);
        throw SingularAtZero("bivariate ml univariate: gamma < 1 diverges at t = 0");
    }
    double u = lambda * std::pow(t, p.alpha);
    double v = mu * std::pow(t, p.beta);
    return std::pow(t, p.gamma - 1.0) * biv_series(p.alpha, p.beta, p.gamma, p.delta, u, v, sc);
}

double fox_wright(const FoxWrightParams& p, double t, const SeriesControl& sc) {
    double bal = 1.0; // 1 + sum(beta_j) - sum(alpha_i) > 0 required
    for (const auto& [lam, al] : p.upper) {
        (void)lam;
        bal -= al;
    }
    for (const auto& [m, be] : p.lower) {
        (void)m;
        bal += be;
    }
    if (!(bal > 0.0))
        throw DivergentParameters("fox-wright: sum(beta_j) - sum(alpha_i) <= -1");

    Termination stop{sc.rel_tol, sc.consecutive_small};
    double sum = 0.0;
    for (int k = 0; k < sc.max_terms; ++k) {
        double L = -std::lgamma(k + 1.0);
        if (k > 0) {
            if (t == 0.0) return sum; // all later terms vanish
            L += k * std::log(std::fabs(t));
        }
        int sign = (t < 0.0 && (k & 1)) ? -1 : 1;
        bool dead = false;
        for (const auto& [lam, al] : p.upper) {
            auto [lg, sg] = lgamma_sign(lam + al * k);
            if (sg == 0)
                throw DivergentParameters("fox-wright: numerator gamma pole");
            L += lg;
            sign *= sg;
        }
        for (const auto& [m, be] : p.lower) {
            auto [lg, sg] = lgamma_sign(m + be * k);
            if (sg == 0) { dead = true; break; } // 1/Gamma(pole) = 0
            L -= lg;
            sign *= sg;
        }
        double term = dead ? 0.0 : sign * std::exp(L);
        if (!std::isfinite(term))
            throw NonConvergence("fox-wright: term exceeds double range");
        sum += term;
        if (stop.done(term, sum)) return sum;
    }
    throw NonConvergence("fox-wright: max_terms exhausted");
}

namespace {

// Common outer loop of the two H-forms: sum_l (lambda^l t^{l*alpha}/l!) * inner(l).
template <class Inner>
double h_outer(double alpha, double beta, double lambda, double t, Inner inner,
               const SeriesControl& sc) {
    if (!(t > 0.0)) throw ValidationError("h form: t must be > 0");
    if (!(alpha > beta) || !(beta > 0.0))
        throw ValidationError("h form: requires alpha > beta > 0");
    Termination stop{sc.rel_tol, sc.consecutive_small};
    double w = 1.0, sum = 0.0;
    const double ta = std::pow(t, alpha);
    for (int l = 0; l < sc.max_terms; ++l) {
        if (std::fabs(w) > kOverflowGuard)
            throw NonConvergence("h form: outer weight exceeds double range");
        double term = w * inner(l);
        sum += term;
        if (stop.done(term, sum)) return sum;
        w *= lambda * ta / (l + 1.0);
    }
    throw NonConvergence("h form: max_terms exhausted");
}

} // namespace

double h_podlubny(double alpha, double beta, double lambda, double mu, double t,
                  const SeriesControl& sc) {
    const double x = mu * std::pow(t, alpha - beta);
    return h_outer(alpha, beta, lambda, t,
                   [&](int l) {
                       return ml2_deriv(l, {alpha - beta, alpha + l * beta}, x, sc);
                   },
                   sc);
}

double h_foxwright(double alpha, double beta, double lambda, double mu, double t,
                   const SeriesControl& sc) {
    const double x = mu * std::pow(t, alpha - beta);
    return h_outer(alpha, beta, lambda, t,
                   [&](int l) {
                       FoxWrightParams fw;
                       fw.upper = {{l + 1.0, 1.0}};
                       fw.lower = {{l * alpha + alpha, alpha - beta}};
                       return fox_wright(fw, x, sc);
                   },
                   sc);
}

} // namespace fracrules
