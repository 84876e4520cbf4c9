// Adaptive composite Gauss-Legendre quadrature. Endpoint square-root
// singularities are removed by the caller (trigonometric substitution), so
// integrands arriving here are smooth and panel doubling converges fast.
#pragma once

#include <functional>

namespace melnikov {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    int max_doublings = 14;  // up to 2^14 panels of 24 points
};

struct QuadResult {
    double value = 0;
    double est_error = 0;
    bool converged = false;
    int panels = 0;
};

QuadResult adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                          const QuadOptions& opt = {});

// single fixed-order pass, used by the adaptive driver and the benchmarks
double gauss_panel(const std::function<double(double)>& f, double a, double b);

}  // namespace melnikov
