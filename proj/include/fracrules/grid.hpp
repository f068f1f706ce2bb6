#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fracrules {

// Uniform grid t_i = t0 + i*h, i = 0..N (N+1 samples).
struct GridFunction {
    double t0 = 0.0;
    double h = 0.0;
    std::vector<double> y;

    std::size_t size() const { return y.size(); }
    double t(std::size_t i) const { return t0 + static_cast<double>(i) * h; }
};

GridFunction sample_on_grid(const std::function<double(double)>& f, double T, int N,
                            double t0 = 0.0);

// Fornberg weights for the m-th derivative at z from nodes x (any spacing).
std::vector<double> fd_weights(double z, const std::vector<double>& x, int m);

// n-th derivative on the whole grid: sliding window of min(n+3, size) nodes,
// centered where possible, one-sided at the boundaries. Stencils are applied
// to (y_j - y_i) with i the output node, so constants are annihilated exactly
// (the weight sum never enters). Throws GridTooShort below n+2 samples.
GridFunction nth_fd(const GridFunction& f, int n);

// k-th one-sided derivative at t0 from the first min(k+3, size) nodes.
double boundary_derivative(const GridFunction& f, int k);

} // namespace fracrules
