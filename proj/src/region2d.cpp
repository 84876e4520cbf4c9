#include "melnikov/region2d.hpp"

#include <algorithm>
#include <cmath>

namespace melnikov {

namespace {

struct LVData {
    double lambda;
    double mu;
    bool q3;  // lv2-lv5 live in the third quadrant
};

LVData lv_data(CaseId c) {
    LVExponentPair e = lv_exponents(c);
    return {to_double(e.lambda), to_double(e.mu), c != CaseId::LV1};
}

bool lv_in_domain(const LVData& d, double x, double y) {
    if (d.q3) return x < 0 && y < 0;
    return x > 0 && y > 0 && x + y < 1;
}

double lv_H(const LVData& d, double x, double y) {
    return std::pow(std::abs(x), d.lambda) * std::pow(std::abs(y), d.mu) * (1.0 - x - y);
}

// fold curve: dH/dy = 0 along a slice
double lv_fold(const LVData& d, double x) { return d.mu * (1.0 - x) / (1.0 + d.mu); }

// slice extremum of H (max for lv1, min for lv2-5)
double lv_slice_extremum(const LVData& d, double x) { return lv_H(d, x, lv_fold(d, x)); }

double bisect(const std::function<double(double)>& f, double lo, double hi, double flo,
              int iters = 90) {
    for (int i = 0; i < iters; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double lv_hamiltonian(CaseId c, double x, double y) { return lv_H(lv_data(c), x, y); }

Point2 lv_center(CaseId c) {
    LVExponentPair e = lv_exponents(c);
    Rational s = e.lambda + e.mu + 1;
    return {to_double(e.lambda / s), to_double(e.mu / s)};
}

double lv_center_level(CaseId c) {
    Point2 p = lv_center(c);
    return lv_hamiltonian(c, p.x, p.y);
}

ExtremumResult lv_find_extremum(CaseId c) {
    // Newton on grad log H; the critical point is unique in the domain
    LVData d = lv_data(c);
    Point2 p = d.q3 ? Point2{-0.5, -0.5} : Point2{0.3, 0.3};
    for (int it = 0; it < 80; ++it) {
        double r = 1.0 - p.x - p.y;
        double gx = d.lambda / p.x - 1.0 / r;
        double gy = d.mu / p.y - 1.0 / r;
        double hxx = -d.lambda / (p.x * p.x) - 1.0 / (r * r);
        double hyy = -d.mu / (p.y * p.y) - 1.0 / (r * r);
        double hxy = -1.0 / (r * r);
        double det = hxx * hyy - hxy * hxy;
        double dx = (-gx * hyy + gy * hxy) / det;
        double dy = (-gy * hxx + gx * hxy) / det;
        p.x += dx;
        p.y += dy;
        if (std::abs(dx) + std::abs(dy) < 1e-15) break;
    }
    return {p, lv_H(d, p.x, p.y)};
}

Slice lv_slice(CaseId c, double t, double x) {
    LVData d = lv_data(c);
    Slice s;
    double yf = lv_fold(d, x);
    if (!lv_in_domain(d, x, yf)) return s;
    double hf = lv_H(d, x, yf);
    auto f = [&](double y) { return lv_H(d, x, y) - t; };
    if (!d.q3) {
        if (hf <= t) return s;
        // H -> 0 at both slice ends; probes stay on their monotone side of the fold
        double lo = yf, hi = yf;
        double span = 1.0 - x;
        for (double e = 0.5; e > 1e-14; e *= 0.5) {
            if (f(yf * e) < 0) { lo = yf * e; break; }
        }
        for (double e = 0.5; e > 1e-14; e *= 0.5) {
            double y = span - (span - yf) * e;
            if (f(y) < 0) { hi = y; break; }
        }
        if (lo == yf || hi == yf) return s;
        s.y1 = bisect(f, lo, yf, f(lo));
        s.y2 = bisect(f, yf, hi, f(yf));
    } else {
        if (hf >= t) return s;
        // H -> +inf toward y = 0- and y -> -inf
        double up = yf, down = yf;
        for (double e = 0.5; e > 1e-14; e *= 0.5) {
            if (f(yf * e) > 0) { up = yf * e; break; }
        }
        for (double g = 2.0; g < 1e14; g *= 2.0) {
            if (f(yf * g) > 0) { down = yf * g; break; }
        }
        if (up == yf || down == yf)
            throw OvalError("lv_slice: could not bracket the slice boundary");
        s.y1 = bisect(f, down, yf, f(down));
        s.y2 = bisect(f, yf, up, f(yf));
    }
    s.empty = false;
    if (s.y1 > s.y2) std::swap(s.y1, s.y2);
    return s;
}

namespace {

// first crossing of the slice-extremum level with t, marching from the center
double extent_march(const std::function<double(double)>& inside, double x0, double x_limit,
                    bool toward_limit_geometric) {
    // inside(x) > 0 inside the region's x-range
    double prev = x0;
    double f_prev = inside(x0);
    if (f_prev <= 0) throw OvalError("extent_march: start not inside the region");
    for (int it = 0; it < 2000; ++it) {
        double x;
        if (toward_limit_geometric) {
            // approach x_limit by shrinking the remaining gap
            x = x_limit + (prev - x_limit) * 0.82;
        } else {
            double step = 0.04 * std::max(std::abs(prev), 0.05);
            x = prev + (x_limit > x0 ? step : -step);
        }
        double fx = inside(x);
        if (fx <= 0) {
            auto g = [&](double u) { return inside(u); };
            return bisect(g, prev, x, f_prev);
        }
        prev = x;
        f_prev = fx;
    }
    throw OvalError("extent_march: region boundary not located");
}

}  // namespace

RegionExtent lv_region_extent(CaseId c, double t) {
    LVData d = lv_data(c);
    Point2 ctr = lv_center(c);
    auto inside = [&](double x) {
        double yf = lv_fold(d, x);
        if (!lv_in_domain(d, x, yf)) return -1.0;
        double m = lv_slice_extremum(d, x);
        return d.q3 ? (t - m) : (m - t);
    };
    RegionExtent ext{};
    if (!d.q3) {
        ext.x_min = extent_march(inside, ctr.x, 0.0, true);
        ext.x_max = extent_march(inside, ctr.x, 1.0, true);
    } else {
        ext.x_min = extent_march(inside, ctr.x, -1e12, false);
        ext.x_max = extent_march(inside, ctr.x, 0.0, true);
    }
    ext.y_min = 1e300;
    ext.y_max = -1e300;
    const int n = 129;
    for (int i = 1; i < n; ++i) {
        double a = M_PI * i / n;
        double x = 0.5 * (ext.x_min + ext.x_max) - 0.5 * (ext.x_max - ext.x_min) * std::cos(a);
        Slice s = lv_slice(c, t, x);
        if (s.empty) continue;
        ext.y_min = std::min(ext.y_min, s.y1);
        ext.y_max = std::max(ext.y_max, s.y2);
    }
    return ext;
}

namespace {

// shared outer driver: integrates the four mu-components of an inner slice
// integral between fold-to-fold x-extremes with the sine substitution
std::array<ValueErr, 4> outer_integrate(
    const std::function<Slice(double)>& slice_at,
    const std::function<void(double, double, std::array<double, 4>&)>& integrand,
    double x_min, double x_max, const std::array<bool, 4>& active,
    const Region2DOptions& opt) {
    QuadOptions inner_opt;
    inner_opt.abs_tol = opt.inner_abs_tol;
    inner_opt.rel_tol = 1e-12;

    auto inner = [&](double x, int comp) {
        Slice s = slice_at(x);
        if (s.empty) return 0.0;
        auto f = [&](double y) {
            std::array<double, 4> v{};
            integrand(x, y, v);
            return v[comp];
        };
        QuadResult r = adaptive_gauss(f, s.y1, s.y2, inner_opt);
        return r.value;
    };

    const double m = 0.5 * (x_min + x_max);
    const double w = 0.5 * (x_max - x_min);
    std::array<ValueErr, 4> out{};
    for (int comp = 0; comp < 4; ++comp) {
        if (!active[comp]) continue;
        auto f = [&](double theta) {
            double x = m + w * std::sin(theta);
            return inner(x, comp) * w * std::cos(theta);
        };
        QuadOptions outer_opt;
        outer_opt.abs_tol = opt.abs_tol * 0.5;
        outer_opt.rel_tol = 1e-10;
        outer_opt.max_doublings = opt.max_doublings;
        QuadResult r = adaptive_gauss(f, -M_PI / 2, M_PI / 2, outer_opt);
        if (!r.converged)
            throw OvalError("region integral: outer quadrature did not converge");
        out[comp] = {r.value, r.est_error + opt.inner_abs_tol * (x_max - x_min)};
    }
    return out;
}

void check_region_margin(const AnnulusInterval& ai, double t, const Region2DOptions& opt) {
    if (!(t > ai.lo && t < ai.hi)) throw NoOvalError("region integral: t outside the interval");
    if (opt.allow_near_degenerate) return;
    const double margin = opt.endpoint_margin * (1.0 - 1e-9);
    if (t - ai.lo < margin || (!std::isinf(ai.hi) && ai.hi - t < margin))
        throw OvalDegenerateError("region integral: t within the degenerate margin");
}

}  // namespace

std::array<ValueErr, 4> lv_generating_I_components(CaseId c, double t, const Region2DOptions& opt) {
    if (!is_region_case(c) || c == CaseId::C4)
        throw CapabilityError("lv_generating_I: lv1-lv5 only");
    check_region_margin(annulus_interval(c, std::nullopt), t, opt);
    LVData d = lv_data(c);
    RegionExtent ext = lv_region_extent(c, t);
    auto slice_at = [&](double x) { return lv_slice(c, t, x); };
    auto integrand = [&](double x, double y, std::array<double, 4>& v) {
        double base = std::pow(std::abs(x), d.lambda - 1.0) * std::pow(std::abs(y), d.mu - 1.0);
        v[0] = base;
        v[1] = base / x;
        v[2] = base / y;
        v[3] = 0.0;
    };
    return outer_integrate(slice_at, integrand, ext.x_min, ext.x_max,
                           {true, true, true, false}, opt);
}

ValueErr lv_generating_I(CaseId c, double t, const std::array<double, 4>& mu,
                         const Region2DOptions& opt) {
    auto comp = lv_generating_I_components(c, t, opt);
    ValueErr out;
    for (int i = 0; i < 4; ++i) {
        out.value += mu[i] * comp[i].value;
        out.est_error += std::abs(mu[i]) * comp[i].est_error;
    }
    return out;
}

// --- codimension four ---------------------------------------------------------

namespace {

double c4_h(double b, double x, double y) {
    double s = 2.0 + b;
    return 4.0 * y * y * y / (3.0 * s) + 4.0 * y * y / s + (1.0 - x * x) * y - x * x + 1.0 / 3.0;
}

}  // namespace

double c4_hamiltonian(double b, double x, double y) {
    return std::pow(x, -3.0) / (8.0 * (2.0 - b)) * c4_h(b, x, y);
}

AnnulusInterval c4_interval(double b) {
    if (!(b > -2.0 && b < 2.0)) throw CaseError("c4: b must lie in (-2,2)");
    AnnulusInterval ai;
    ai.lo = -1.0 / (12.0 * (2.0 - b));
    ai.hi = 0.0;
    ai.lo_is_center = true;
    ai.lo_formula = "-1/(12(2-b))";
    ai.hi_formula = "0";
    ai.hi_exact = Rational(0);
    return ai;
}

namespace {

// folds of H along a slice: y^2 + 2y + s(1-x^2)/4 = 0
bool c4_folds(double b, double x, double& y_minus, double& y_plus) {
    double s = 2.0 + b;
    double disc = 1.0 - s * (1.0 - x * x) / 4.0;
    if (disc < 0) return false;
    double rd = std::sqrt(disc);
    y_minus = -1.0 - rd;
    y_plus = -1.0 + rd;
    return true;
}

}  // namespace

Slice c4_slice(double b, double t, double x) {
    Slice s;
    if (x <= 0) return s;
    double ym, yp;
    if (!c4_folds(b, x, ym, yp)) return s;
    auto f = [&](double y) { return c4_hamiltonian(b, x, y) - t; };
    if (f(yp) >= 0) return s;  // slice misses the oval
    if (f(ym) <= 0)
        throw OvalError("c4_slice: oval component not separated at x = " + std::to_string(x));
    double up = yp;
    for (double step = 0.25 * (yp - ym) + 1e-3; step < 1e12; step *= 2.0) {
        if (f(yp + step) > 0) { up = yp + step; break; }
    }
    if (up == yp) throw OvalError("c4_slice: upper boundary not bracketed");
    s.y1 = bisect(f, ym, yp, f(ym));
    s.y2 = bisect(f, yp, up, f(yp));
    s.empty = false;
    return s;
}

RegionExtent c4_region_extent(double b, double t) {
    auto inside = [&](double x) {
        double ym, yp;
        if (x <= 0 || !c4_folds(b, x, ym, yp)) return -1.0;
        return t - c4_hamiltonian(b, x, yp);
    };
    RegionExtent ext{};
    ext.x_min = extent_march(inside, 1.0, 0.0, true);
    ext.x_max = extent_march(inside, 1.0, 1e12, false);
    ext.y_min = 1e300;
    ext.y_max = -1e300;
    const int n = 129;
    for (int i = 1; i < n; ++i) {
        double a = M_PI * i / n;
        double x = 0.5 * (ext.x_min + ext.x_max) - 0.5 * (ext.x_max - ext.x_min) * std::cos(a);
        Slice s = c4_slice(b, t, x);
        if (s.empty) continue;
        ext.y_min = std::min(ext.y_min, s.y1);
        ext.y_max = std::max(ext.y_max, s.y2);
    }
    return ext;
}

ValueErr c4_generating_I(const C4Spec& spec, double t, const Region2DOptions& opt) {
    AnnulusInterval ai = c4_interval(spec.b);
    check_region_margin(ai, t, opt);
    double kappa = 4.0 / (2.0 + spec.b);
    RegionExtent ext = c4_region_extent(spec.b, t);
    auto slice_at = [&](double x) { return c4_slice(spec.b, t, x); };
    auto integrand = [&](double x, double y, std::array<double, 4>& v) {
        double x6 = std::pow(x, -6.0);
        v[0] = x6;
        v[1] = x6 * y;
        v[2] = x6 * y * y * y;
        v[3] = x6 * (kappa * kappa * y * y * y * y - x * x * x * x);
    };
    std::array<bool, 4> active{};
    for (int i = 0; i < 4; ++i) active[i] = spec.mu[i] != 0.0;
    auto comp = outer_integrate(slice_at, integrand, ext.x_min, ext.x_max, active, opt);
    ValueErr out;
    for (int i = 0; i < 4; ++i) {
        out.value += spec.mu[i] * comp[i].value;
        out.est_error += std::abs(spec.mu[i]) * comp[i].est_error;
    }
    return out;
}

bool lv_region_contains(CaseId c, double t, double x, double y) {
    LVData d = lv_data(c);
    if (!lv_in_domain(d, x, y)) return false;
    double h = lv_H(d, x, y);
    return d.q3 ? h <= t : h >= t;
}

bool c4_region_contains(double b, double t, double x, double y) {
    if (x <= 0) return false;
    double ym, yp;
    if (!c4_folds(b, x, ym, yp)) return false;
    if (y <= ym) return false;  // below the separating fold: the unbounded sea
    return c4_hamiltonian(b, x, y) < t;
}

double lv_region_integrand(CaseId c, const std::array<double, 4>& mu, double x, double y) {
    LVData d = lv_data(c);
    double base = std::pow(std::abs(x), d.lambda - 1.0) * std::pow(std::abs(y), d.mu - 1.0);
    return base * (mu[0] + mu[1] / x + mu[2] / y);
}

double c4_region_integrand(double b, const std::array<double, 4>& mu, double x, double y) {
    double kappa = 4.0 / (2.0 + b);
    double x6 = std::pow(x, -6.0);
    return x6 * (mu[0] + mu[1] * y + mu[2] * y * y * y +
                 mu[3] * (kappa * kappa * y * y * y * y - x * x * x * x));
}

}  // namespace melnikov
