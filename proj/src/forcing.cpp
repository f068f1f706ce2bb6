#include "fracrules/forcing.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "fracrules/errors.hpp"

namespace fracrules {

namespace {

std::string format_spec(const char* head, const std::vector<double>& vals) {
    std::ostringstream os;
    os << head;
    for (std::size_t i = 0; i < vals.size(); ++i) os << (i ? "," : "") << vals[i];
    return os.str();
}

double parse_number(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || !std::isfinite(v))
        throw ValidationError("forcing: bad number '" + s + "'");
    return v;
}

} // namespace

Forcing make_constant(double c) {
    Forcing g;
    g.spec = format_spec("const:", {c});
    g.f = [c](double) { return c; };
    g.d = [c](int j, double) { return j == 0 ? c : 0.0; };
    g.has_transform = true;
    g.transform = [c](std::complex<double> s) { return c / s; };
    return g;
}

Forcing make_poly(const std::vector<double>& coeffs) {
    if (coeffs.empty()) throw ValidationError("forcing: poly needs coefficients");
    Forcing g;
    g.spec = format_spec("poly:", coeffs);
    g.f = [coeffs](double t) {
        double acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k];
        return acc;
    };
    g.d = [coeffs](int j, double t) {
        double acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > static_cast<std::size_t>(j);) {
            double fall = 1.0;
            for (int q = 0; q < j; ++q) fall *= static_cast<double>(k - q);
            acc = acc * t + coeffs[k] * fall;
        }
        return acc;
    };
    g.has_transform = true;
    g.transform = [coeffs](std::complex<double> s) {
        std::complex<double> acc = 0.0;
        double fact = 1.0;
        std::complex<double> p = s;
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            acc += coeffs[k] * fact / p; // k!/s^{k+1}
            fact *= static_cast<double>(k + 1);
            p *= s;
        }
        return acc;
    };
    return g;
}

Forcing make_exp(double a) {
    Forcing g;
    g.spec = format_spec("exp:", {a});
    g.f = [a](double t) { return std::exp(a * t); };
    g.d = [a](int j, double t) { return std::pow(a, j) * std::exp(a * t); };
    g.has_transform = true;
    g.transform = [a](std::complex<double> s) { return 1.0 / (s - a); };
    return g;
}

Forcing parse_forcing(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ValidationError("forcing: expected 'kind:args' in '" + spec + "'");
    const std::string kind = spec.substr(0, colon);
    const std::string args = spec.substr(colon + 1);
    if (kind == "const") return make_constant(parse_number(args));
    if (kind == "exp") return make_exp(parse_number(args));
    if (kind == "poly") {
        std::vector<double> cs;
        std::stringstream ss(args);
        std::string item;
        while (std::getline(ss, item, ',')) cs.push_back(parse_number(item));
        return make_poly(cs);
    }
    throw UnsupportedForcing("forcing: unknown kind '" + kind + "'");
}

} // namespace fracrules
