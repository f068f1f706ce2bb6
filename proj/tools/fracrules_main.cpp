#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracrules/errors.hpp"
#include "fracrules/laplace.hpp"
#include "fracrules/solvers.hpp"
#include "fracrules/special_functions.hpp"
#include "fracrules/verification.hpp"

namespace {

using namespace fracrules;

// exit codes: 0 ok, 1 verification breach, 2 validation, 3 numeric failure,
// 4 certification breach

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SeriesControl env_series_control() {
    SeriesControl sc;
    if (const char* s = std::getenv("FRACRULES_RELTOL")) {
        char* end = nullptr;
        const double v = std::strtod(s, &end);
        if (end == s || *end != '\0' || !(v > 0.0) || v >= 1.0)
            throw ValidationError("FRACRULES_RELTOL must be a number in (0,1)");
        sc.rel_tol = v;
    }
    return sc;
}

std::ostream& open_sink(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::binary); // LF endings regardless of platform
    if (!file) throw ValidationError("cannot open output path: " + path);
    return file;
}

struct EvalArgs {
    double alpha = 1.0, beta = 1.0, gamma = 1.0, lambda = 0.0, mu = 0.0;
    double t = 1.0;
    std::optional<double> t_max;
    int samples = 64;
    bool bivariate = false;
    std::string output;
};

int cmd_eval_ml(const EvalArgs& a) {
    const SeriesControl sc = env_series_control();
    std::ofstream file;
    std::ostream& out = open_sink(file, a.output);

    std::vector<double> ts;
    if (a.t_max) {
        if (a.samples < 2) throw ValidationError("--samples must be >= 2");
        for (int i = 0; i < a.samples; ++i)
            ts.push_back(a.t + (*a.t_max - a.t) * static_cast<double>(i) /
                                   static_cast<double>(a.samples - 1));
    } else {
        ts.push_back(a.t);
    }

    out << "t,value\n";
    for (double t : ts) {
        const double v =
            a.bivariate
                ? bivariate_ml_univariate({a.alpha, a.beta, a.gamma, 1.0},
                                          a.lambda, a.mu, t, sc)
                : ml3({a.alpha, a.beta, a.gamma}, t, sc);
        out << fmt(t) << ',' << fmt(v) << '\n';
    }
    return 0;
}

struct SolveArgs {
    double alpha = 1.5, beta = 0.5, lambda = -1.0, mu = -1.0;
    double T = 5.0;
    int N = 1024;
    std::string g = "const:1";
    std::string sense = "rl";
    std::string output;
    bool certify = false;
    double certify_tol = 5e-2;
};

int cmd_solve(const SolveArgs& a) {
    BagleyTorvikProblem p;
    p.alpha = a.alpha;
    p.beta = a.beta;
    p.lambda = a.lambda;
    p.mu = a.mu;
    p.g = parse_forcing(a.g);
    p.T = a.T;
    p.N = a.N;
    if (a.sense == "rl" || a.sense == "riemann-liouville")
        p.sense = Sense::RiemannLiouville;
    else if (a.sense == "caputo")
        p.sense = Sense::Caputo;
    else
        throw ValidationError("--sense must be rl or caputo");

    const GridFunction y = solve_bagley_torvik(p);
    {
        std::ofstream file;
        std::ostream& out = open_sink(file, a.output);
        out << "t,y\n";
        for (std::size_t i = 0; i < y.size(); ++i)
            out << fmt(y.t(i)) << ',' << fmt(y.y[i]) << '\n';
    }
    if (!a.certify) return 0;

    const SolutionCertificate cert = certify_solution(p, y);
    std::cout << certificate_json(cert).dump(2) << '\n';
    return cert.residual_max <= a.certify_tol ? 0 : 4;
}

int cmd_verify(const std::string& which) {
    std::vector<std::string> names =
        which == "all" ? suite_names() : std::vector<std::string>{which};
    nlohmann::json out = nlohmann::json::array();
    bool ok = true;
    for (const std::string& n : names) {
        const SuiteResult r = run_suite(n);
        ok = ok && r.pass;
        out.push_back(suite_json(r));
    }
    std::cout << out.dump(2) << '\n';
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracrules: Mittag-Leffler evaluators, fractional Leibniz-rule "
                 "checks, Bagley-Torvik solvers, Laplace verification suites"};
    app.require_subcommand(1);

    EvalArgs ea;
    CLI::App* eval = app.add_subcommand(
        "eval-ml", "evaluate E^gamma_{alpha,beta}(t) or the bivariate kernel "
                   "t^{gamma-1} E_{alpha,beta,gamma}(lambda t^alpha, mu t^beta)");
    eval->add_option("--alpha", ea.alpha)->required();
    eval->add_option("--beta", ea.beta)->required();
    eval->add_option("--gamma", ea.gamma);
    eval->add_option("--lambda", ea.lambda);
    eval->add_option("--mu", ea.mu);
    eval->add_option("--t", ea.t)->required();
    eval->add_option("--t-max", ea.t_max, "tabulate on [t, t-max]");
    eval->add_option("--samples", ea.samples);
    eval->add_flag("--bivariate", ea.bivariate);
    eval->add_option("--output", ea.output, "CSV path (default stdout)");

    SolveArgs sa;
    CLI::App* solve = app.add_subcommand(
        "solve", "solve D^alpha y - mu D^beta y - lambda y = g, zero initial data");
    solve->add_option("--alpha", sa.alpha);
    solve->add_option("--beta", sa.beta);
    solve->add_option("--lambda", sa.lambda);
    solve->add_option("--mu", sa.mu);
    solve->add_option("--T", sa.T);
    solve->add_option("--N", sa.N);
    solve->add_option("--g", sa.g, "forcing: const:c | poly:c0,c1,... | exp:a");
    solve->add_option("--sense", sa.sense, "rl | caputo (certification sense)");
    solve->add_option("--output", sa.output, "CSV path (default stdout)");
    solve->add_flag("--certify", sa.certify, "emit residual certificate JSON");
    solve->add_option("--certify-tol", sa.certify_tol);

    std::string suite;
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "suite name or 'all'")->required();

    try {
        app.parse(argc, argv);
        if (eval->parsed()) return cmd_eval_ml(ea);
        if (solve->parsed()) return cmd_solve(sa);
        return cmd_verify(suite);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const NonConvergence& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 3;
    } catch (const PoleHit& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 3;
    } catch (const ContourFailure& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 3;
    } catch (const QuadratureBreakdown& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "invalid request: " << e.what() << '\n';
        return 2;
    }
}
