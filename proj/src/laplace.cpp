#include "fracrules/laplace.hpp"

#include <cmath>
#include <complex>

#include "fracrules/errors.hpp"

namespace fracrules {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_hypotheses(const TransferSpec& ts) {
    if (!(ts.alpha > ts.beta && ts.beta > 0.0))
        throw ValidationError("transfer spec needs alpha > beta > 0");
    if (ts.form == TransferSpec::Form::Lemma1 && ts.l < 0)
        throw ValidationError("Lemma-1 power l must be >= 0");
    if (ts.form == TransferSpec::Form::Lemma2 && !(ts.alpha > ts.gamma_exp))
        throw ValidationError("Lemma-2 form needs alpha > gamma_exp");
}

// Fixed-scale Talbot rule: s(theta) = r theta (cot theta + i), r = scale/t.
// The error term at machine precision is dominated by exp(r t) = exp(scale)
// roundoff, hence the moderate default scale.
double talbot_once(const TransformFn& F, double t, int M, double scale) {
    const double r = scale / t;
    double acc = 0.5 * std::exp(r * t) * F(std::complex<double>(r, 0.0)).real();
    for (int k = 1; k < M; ++k) {
        const double th = static_cast<double>(k) * kPi / static_cast<double>(M);
        const double ct = std::cos(th) / std::sin(th);
        const std::complex<double> s(r * th * ct, r * th);
        const double sigma = th + (th * ct - 1.0) * ct;
        const std::complex<double> w =
            std::exp(t * s) * F(s) * std::complex<double>(1.0, sigma);
        acc += w.real();
    }
    return acc * r / static_cast<double>(M);
}

double invert_fn(const TransformFn& F, double t, const InversionConfig& cfg) {
    if (!(t > 0.0)) throw ValidationError("invert: t must be > 0");
    if (cfg.M < 16) throw ValidationError("invert: M must be >= 16");
    const double v1 = talbot_once(F, t, cfg.M, cfg.scale);
    const double v2 = talbot_once(F, t, 2 * cfg.M, 1.4 * cfg.scale);
    if (std::abs(v1 - v2) > 1e-6 * std::max(std::abs(v1), std::abs(v2)) + 1e-12)
        throw ContourFailure("invert: contour estimates disagree");
    return v2;
}

} // namespace

TransferSpec TransferSpec::lemma1(double alpha, double beta, double lambda, int l) {
    TransferSpec ts;
    ts.form = Form::Lemma1;
    ts.alpha = alpha;
    ts.beta = beta;
    ts.lambda = lambda;
    ts.l = l;
    check_hypotheses(ts);
    return ts;
}

TransferSpec TransferSpec::lemma2(double alpha, double beta, double gamma_exp,
                                  double lambda, double mu) {
    TransferSpec ts;
    ts.form = Form::Lemma2;
    ts.alpha = alpha;
    ts.beta = beta;
    ts.gamma_exp = gamma_exp;
    ts.lambda = lambda;
    ts.mu = mu;
    check_hypotheses(ts);
    return ts;
}

std::complex<double> transfer_eval(const TransferSpec& ts, std::complex<double> s) {
    if (ts.form == TransferSpec::Form::Lemma1) {
        const std::complex<double> den =
            std::pow(s, ts.alpha) - ts.lambda * std::pow(s, ts.beta);
        if (std::abs(den) < 1e-14) throw PoleHit("transfer_eval: at a pole");
        std::complex<double> v = 1.0;
        for (int i = 0; i <= ts.l; ++i) v /= den;
        return v;
    }
    const std::complex<double> den =
        std::pow(s, ts.alpha) - ts.mu * std::pow(s, ts.beta) - ts.lambda;
    if (std::abs(den) < 1e-14) throw PoleHit("transfer_eval: at a pole");
    const std::complex<double> num =
        ts.gamma_exp == 0.0 ? 1.0 : std::pow(s, ts.gamma_exp);
    return num / den;
}

double invert(const TransferSpec& spec, double t, const InversionConfig& cfg) {
    check_hypotheses(spec);
    return invert_fn([&](std::complex<double> s) { return transfer_eval(spec, s); },
                     t, cfg);
}

double invert(const TransferSpec& spec, const TransformFn& forcing_transform,
              double t, const InversionConfig& cfg) {
    check_hypotheses(spec);
    if (!forcing_transform) return invert(spec, t, cfg);
    return invert_fn(
        [&](std::complex<double> s) {
            return transfer_eval(spec, s) * forcing_transform(s);
        },
        t, cfg);
}

TransformFn forcing_transform_catalog(const std::string& forcing_spec) {
    const Forcing g = parse_forcing(forcing_spec);
    if (!g.has_transform)
        throw UnsupportedForcing("no Laplace transform for: " + forcing_spec);
    return g.transform;
}

double oracle_solution(double alpha, double beta, double lambda, double mu,
                       const Forcing& g, double t, const InversionConfig& cfg) {
    if (!g.has_transform)
        throw UnsupportedForcing("oracle_solution: forcing has no transform");
    return invert(TransferSpec::lemma2(alpha, beta, 0.0, lambda, mu), g.transform,
                  t, cfg);
}

std::complex<double> forward_laplace(const GridFunction& f, std::complex<double> s) {
    if (f.size() < 2) throw GridTooShort("forward_laplace: need at least 2 samples");
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const std::complex<double> w = std::exp(-s * f.t(i)) * f.y[i];
        acc += (i == 0 || i + 1 == f.size()) ? 0.5 * w : w;
    }
    return acc * f.h;
}

} // namespace fracrules
