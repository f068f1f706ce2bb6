#include "fracrules/grid.hpp"

#include <algorithm>
#include <cmath>

#include "fracrules/errors.hpp"

namespace fracrules {

GridFunction sample_on_grid(const std::function<double(double)>& f, double T, int N,
                            double t0) {
    if (!(T > 0.0) || N < 1) throw ValidationError("grid: requires T > 0 and N >= 1");
    GridFunction g;
    g.t0 = t0;
    g.h = T / N;
    g.y.resize(static_cast<std::size_t>(N) + 1);
    for (std::size_t i = 0; i < g.y.size(); ++i) g.y[i] = f(g.t(i));
    return g;
}

// Fornberg (1988) recursion; x need not be sorted or uniform.
std::vector<double> fd_weights(double z, const std::vector<double>& x, int m) {
    const int nd = static_cast<int>(x.size()) - 1;
    if (nd < m) throw GridTooShort("fd_weights: fewer nodes than derivative order + 1");
    std::vector<std::vector<double>> c(nd + 1, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i <= nd; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(nd + 1);
    for (int i = 0; i <= nd; ++i) w[i] = c[i][m];
    return w;
}

namespace {

// Weights for the n-th derivative at window position p (0-based) of a w-point
// uniform stencil with unit spacing; scale by h^{-n} at use site.
std::vector<double> unit_stencil(int w, int p, int n) {
    std::vector<double> x(w);
    for (int j = 0; j < w; ++j) x[j] = static_cast<double>(j - p);
    return fd_weights(0.0, x, n);
}

} // namespace

GridFunction nth_fd(const GridFunction& f, int n) {
    if (n < 1) throw ValidationError("nth_fd: n must be >= 1");
    const std::size_t sz = f.size();
    if (sz < static_cast<std::size_t>(n) + 2)
        throw GridTooShort("nth_fd: need at least n+2 samples");
    const int w = static_cast<int>(std::min<std::size_t>(n + 3, sz));

    std::vector<std::vector<double>> wt(w); // by window position of the output node
    for (int p = 0; p < w; ++p) wt[p] = unit_stencil(w, p, n);

    GridFunction out;
    out.t0 = f.t0;
    out.h = f.h;
    out.y.resize(sz);
    const double hn = std::pow(f.h, n);
    for (std::size_t i = 0; i < sz; ++i) {
        std::size_t js = i >= static_cast<std::size_t>(w / 2) ? i - w / 2 : 0;
        js = std::min(js, sz - w);
        const int p = static_cast<int>(i - js);
        const std::vector<double>& c = wt[p];
        double acc = 0.0;
        for (int j = 0; j < w; ++j) acc += c[j] * (f.y[js + j] - f.y[i]);
        out.y[i] = acc / hn;
    }
    return out;
}

double boundary_derivative(const GridFunction& f, int k) {
    if (k < 0) throw ValidationError("boundary_derivative: k must be >= 0");
    if (k == 0) {
        if (f.size() == 0) throw GridTooShort("boundary_derivative: empty grid");
        return f.y[0];
    }
    const std::size_t sz = f.size();
    if (sz < static_cast<std::size_t>(k) + 1)
        throw GridTooShort("boundary_derivative: need at least k+1 samples");
    const int w = static_cast<int>(std::min<std::size_t>(k + 3, sz));
    const std::vector<double> c = unit_stencil(w, 0, k);
    double acc = 0.0;
    for (int j = 0; j < w; ++j) acc += c[j] * (f.y[j] - f.y[0]);
    return acc / std::pow(f.h, k);
}

} // namespace fracrules
