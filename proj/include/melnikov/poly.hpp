// Univariate real polynomials with an optional exact rational mirror, plus
// real-root isolation and refinement. Exact Sturm sequences decide root
// counts when rational coefficients are available; a dense sign grid is the
// fallback for plain floating input.
#pragma once

#include "melnikov/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace melnikov {

using RationalPoly = std::vector<Rational>;  // ascending powers

struct RealPoly {
    std::vector<double> c;  // ascending powers
    std::optional<RationalPoly> exact;

    RealPoly() = default;
    explicit RealPoly(std::vector<double> coeffs) : c(std::move(coeffs)) { trim(); }
    explicit RealPoly(const RationalPoly& q);

    void trim();
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }

    double operator()(double x) const {
        double v = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
        return v;
    }
    RealPoly derivative() const;

    // Cauchy bound: every real root lies in (-B, B).
    double root_bound() const;
};

struct RootBracket {
    double lo = 0;
    double hi = 0;
    bool multiple = false;  // even-order contact or exact multiple root
};

struct PolyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- exact machinery -------------------------------------------------------

Rational eval_exact(const RationalPoly& p, const Rational& x);
RationalPoly derivative_exact(const RationalPoly& p);
RationalPoly poly_rem(const RationalPoly& a, const RationalPoly& b);
RationalPoly poly_gcd(RationalPoly a, RationalPoly b);

// Sturm chain of the squarefree part; count = V(lo) - V(hi) on (lo, hi].
struct SturmChain {
    std::vector<RationalPoly> seq;
    explicit SturmChain(const RationalPoly& p);
    int variations(const Rational& x) const;
    int count_roots(const Rational& lo, const Rational& hi) const;
};

int gcd_degree(const RationalPoly& p);  // deg gcd(p, p'); > 0 means multiple roots

// --- isolation / refinement -------------------------------------------------

struct IsolateOptions {
    int grid = 4096;             // float-path sign grid resolution
    double multiple_tol = 1e-9;  // |p| dip threshold for suspected even roots
};

// Disjoint isolating intervals for the distinct real roots of p in (lo, hi),
// sorted ascending. Roots sitting exactly on lo/hi are captured by a small
// outward perturbation of the window. Zero polynomial is an error.
std::vector<RootBracket> isolate_real_roots(const RealPoly& p, double lo, double hi,
                                            const IsolateOptions& opt = {});

// Bisection/Newton refinement of a bracketed simple root; for brackets
// flagged multiple the sign change lives in p', which is what gets refined.
double refine_root(const RealPoly& p, const RootBracket& b, double tol = 1e-12);

// All real roots in [lo, hi], sorted, polished to machine accuracy. Roots of
// p' partition p into monotone pieces, so nothing can be skipped; the chain
// recurses down to the quadratic case.
std::vector<double> real_roots(const RealPoly& p, double lo, double hi);

}  // namespace melnikov
