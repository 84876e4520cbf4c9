#include "melnikov/quadrature.hpp"

#include <array>
#include <cmath>

namespace melnikov {

namespace {

constexpr int kOrder = 24;

struct GaussTable {
    std::array<double, kOrder> node{};
    std::array<double, kOrder> weight{};
    GaussTable() {
        // Newton iteration on P_n; nodes to full double precision.
        const int n = kOrder;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (x * p0 - p1) / (x * x - 1.0);
                double dx = p0 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            node[i] = -x;
            node[n - 1 - i] = x;
            double w = 2.0 / ((1.0 - x * x) * pp * pp);
            weight[i] = w;
            weight[n - 1 - i] = w;
        }
    }
};

const GaussTable& table() {
    static const GaussTable t;
    return t;
}

}  // namespace

double gauss_panel(const std::function<double(double)>& f, double a, double b) {
    const auto& t = table();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0;
    for (int i = 0; i < kOrder; ++i) s += t.weight[i] * f(mid + half * t.node[i]);
    return s * half;
}

QuadResult adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                          const QuadOptions& opt) {
    QuadResult res;
    int panels = 1;
    double prev = gauss_panel(f, a, b);
    for (int level = 0; level <= opt.max_doublings; ++level) {
        panels *= 2;
        double s = 0;
        const double h = (b - a) / panels;
        for (int i = 0; i < panels; ++i) s += gauss_panel(f, a + i * h, a + (i + 1) * h);
        double diff = std::abs(s - prev);
        res.value = s;
        res.est_error = diff;
        res.panels = panels;
        if (diff <= opt.abs_tol + opt.rel_tol * std::abs(s)) {
            res.converged = true;
            return res;
        }
        prev = s;
    }
    return res;
}

}  // namespace melnikov
