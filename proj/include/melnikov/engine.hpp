// Evaluation of the basic moments I_k = oint x^k y dx, J_k = oint x^k dx/y
// and the log-weighted variants over real ovals of y^2 = 2 D(x,t), plus the
// per-case generating functions I(t) and their derivatives J(t) = I'(t).
//
// The endpoint square-root behaviour is removed by x = m + w sin(theta); the
// remaining factor of D is deflated exactly, so integrands reaching the
// quadrature are analytic on the closed interval.
#pragma once

#include "melnikov/cases.hpp"
#include "melnikov/poly.hpp"
#include "melnikov/quadrature.hpp"

#include <array>

namespace melnikov {

struct EngineOptions {
    QuadOptions quad{};
    double endpoint_margin = 1e-6;     // refuse |t - t_c|, |t - t_s| below this
    bool allow_near_degenerate = false;
    bool verify_oval = true;           // exact interior root-count check
};

struct OvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoOvalError : OvalError {
    using OvalError::OvalError;
};
struct OvalDegenerateError : OvalError {
    using OvalError::OvalError;
};
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// one level set y^2 = 2 D(x,t) together with its oval interval
struct Oval {
    CaseId id;
    double t = 0;
    RealPoly D;
    double x_lo = 0;
    double x_hi = 0;
};

struct ValueErr {
    double value = 0;
    double est_error = 0;
};

Oval make_oval(CaseId c, double t, const std::optional<Rational>& b = std::nullopt,
               const EngineOptions& opt = {});

// oval for an explicit level polynomial (used by oracles and the PF checks)
Oval make_oval_from_poly(RealPoly D, double x_ref, const EngineOptions& opt = {});

ValueErr moment(const Oval& oval, MomentKind kind, int k, const QuadOptions& q = {});

struct GeneratingSpec {
    CaseId id;
    std::optional<Rational> b;
    std::array<double, 4> mu{0, 0, 0, 0};
};

// per-mu-component values: I(t) = sum_i mu[i] * comp[i]
std::array<ValueErr, 4> generating_I_components(CaseId c, const std::optional<Rational>& b,
                                                double t, const EngineOptions& opt = {});
std::array<ValueErr, 4> generating_J_components(CaseId c, const std::optional<Rational>& b,
                                                double t, const EngineOptions& opt = {});

ValueErr generating_I(const GeneratingSpec& spec, double t, const EngineOptions& opt = {});

// the derivative combination I'(t) obtained from the moment relations;
// cases whose recipe contains 1/y terms have no such closed form and error
ValueErr generating_J(const GeneratingSpec& spec, double t, const EngineOptions& opt = {});

// Numerical double-root / escape verification of the tabulated interval
// endpoints (the tables are checked, not trusted).
struct EndpointCheck {
    bool collapse_at_center = true;   // oval width -> 0 at t_c like sqrt(dist)
    bool boundary_consistent = true;  // double root, escape to infinity, or open end
    std::string boundary_kind;        // "saddle", "escape", "open", "none"
};
EndpointCheck verify_annulus_endpoints(CaseId c, const std::optional<Rational>& b = std::nullopt);

}  // namespace melnikov
