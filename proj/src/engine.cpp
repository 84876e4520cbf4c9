#include "melnikov/engine.hpp"

#include <algorithm>
#include <cmath>

namespace melnikov {

namespace {

RealPoly build_curve_poly(const CurveData& cd, double t) {
    Rational te = rational_from_double(t);
    RationalPoly q(5);
    for (int i = 0; i < 5; ++i) q[i] = cd.base[i] + cd.tcoef[i] * te;
    while (!q.empty() && q.back().is_zero()) q.pop_back();
    return RealPoly(q);
}

// divide out (x - r) by synthetic division, dropping the remainder
std::vector<double> deflate(const std::vector<double>& c, double r) {
    std::vector<double> out(c.size() - 1);
    double carry = c.back();
    for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) {
        out[i] = carry;
        carry = c[i] + carry * r;
    }
    return out;
}

double eval_poly(const std::vector<double>& c, double x) {
    double v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

int exact_root_count(const RationalPoly& p, double lo, double hi) {
    SturmChain chain(p);
    return chain.count_roots(rational_from_double(lo), rational_from_double(hi));
}

}  // namespace

Oval make_oval_from_poly(RealPoly D, double x_ref, const EngineOptions& opt) {
    if (D(x_ref) <= 0)
        throw NoOvalError("no oval: D(x_ref) <= 0 at x_ref = " + std::to_string(x_ref));
    const double bound = D.root_bound();
    std::vector<double> roots = real_roots(D, -bound, bound);
    Oval o;
    bool have_lo = false, have_hi = false;
    for (double r : roots) {
        if (r <= x_ref) {
            o.x_lo = r;
            have_lo = true;
        } else if (!have_hi) {
            o.x_hi = r;
            have_hi = true;
        }
    }
    if (!have_lo || !have_hi)
        throw NoOvalError("no oval: the positive component at x_ref is unbounded");
    if (opt.verify_oval && D.exact) {
        const double w = o.x_hi - o.x_lo;
        int n = exact_root_count(*D.exact, o.x_lo + 1e-9 * w, o.x_hi - 1e-9 * w);
        if (n != 0)
            throw OvalError("oval interval contains an interior root (exact check)");
    }
    o.D = std::move(D);
    return o;
}

Oval make_oval(CaseId c, double t, const std::optional<Rational>& b, const EngineOptions& opt) {
    AnnulusInterval ai = annulus_interval(c, b);
    if (!(t > ai.lo && t < ai.hi))
        throw NoOvalError(to_string(c) + ": t = " + std::to_string(t) + " outside the annulus");
    const double margin = opt.endpoint_margin * (1.0 - 1e-9);
    if (!opt.allow_near_degenerate) {
        if (t - ai.lo < margin || (!std::isinf(ai.hi) && ai.hi - t < margin))
            throw OvalDegenerateError(to_string(c) + ": t within the degenerate margin of an endpoint");
    }
    CurveData cd = curve_data(c, b);
    Oval o = make_oval_from_poly(build_curve_poly(cd, t), oval_reference_x(c, t), opt);
    o.id = c;
    o.t = t;
    return o;
}

ValueErr moment(const Oval& oval, MomentKind kind, int k, const QuadOptions& q) {
    const bool needs_positive_x = k < 0 || kind == MomentKind::Log || kind == MomentKind::LogJ;
    if (needs_positive_x && oval.x_lo <= 0)
        throw CapabilityError("moment: x^k pole or log branch on/inside the oval (x_lo <= 0)");

    // R(x) = D(x) / ((x - x_lo)(x_hi - x)), positive on the closed oval
    std::vector<double> rt = deflate(deflate(oval.D.c, oval.x_lo), oval.x_hi);
    for (auto& v : rt) v = -v;

    const double m = 0.5 * (oval.x_lo + oval.x_hi);
    const double w = 0.5 * (oval.x_hi - oval.x_lo);
    const bool weight_y = (kind == MomentKind::I || kind == MomentKind::Log);
    const bool with_log = (kind == MomentKind::Log || kind == MomentKind::LogJ);

    auto f = [&](double theta) {
        const double s = std::sin(theta);
        const double x = m + w * s;
        double r = eval_poly(rt, x);
        if (r < 0) r = 0;  // roundoff at the very endpoints
        double v;
        if (weight_y) {
            const double c2 = 1.0 - s * s;
            v = 2.0 * w * w * c2 * std::sqrt(2.0 * r);
        } else {
            v = 2.0 / std::sqrt(2.0 * r);
        }
        v *= std::pow(x, k);
        if (with_log) v *= std::log(x);
        return v;
    };
    QuadResult res = adaptive_gauss(f, -M_PI / 2, M_PI / 2, q);
    if (!res.converged)
        throw OvalError("moment: quadrature did not reach the target accuracy (est " +
                        std::to_string(res.est_error) + ")");
    return {res.value, res.est_error};
}

namespace {

std::array<ValueErr, 4> components_from_terms(const std::vector<MomentTerm>& terms,
                                              const Oval& oval, double t,
                                              const EngineOptions& opt) {
    std::array<ValueErr, 4> out{};
    for (const auto& term : terms) {
        ValueErr m = moment(oval, term.kind, term.k, opt.quad);
        double coef = to_double(term.factor) * std::pow(t, term.t_power);
        out[term.mu_index].value += coef * m.value;
        out[term.mu_index].est_error += std::abs(coef) * m.est_error;
    }
    return out;
}

}  // namespace

std::array<ValueErr, 4> generating_I_components(CaseId c, const std::optional<Rational>& b,
                                                double t, const EngineOptions& opt) {
    if (is_region_case(c))
        throw CapabilityError("generating_I_components: use the region2d interface for " + to_string(c));
    Oval oval = make_oval(c, t, b, opt);
    return components_from_terms(recipe(c, b), oval, t, opt);
}

std::array<ValueErr, 4> generating_J_components(CaseId c, const std::optional<Rational>& b,
                                                double t, const EngineOptions& opt) {
    if (is_region_case(c))
        throw CapabilityError("generating_J_components: no closed derivative for " + to_string(c));
    CurveData cd = curve_data(c, b);
    std::vector<MomentTerm> terms = recipe(c, b);
    for (const auto& term : terms)
        if (term.kind == MomentKind::J || term.kind == MomentKind::LogJ)
            throw CapabilityError("generating_J: recipe of " + to_string(c) +
                                  " contains 1/y terms; d/dt is not a moment combination");
    Oval oval = make_oval(c, t, b, opt);
    std::array<ValueErr, 4> out{};
    for (const auto& term : terms) {
        // d/dt [ f t^p M_k ] = f p t^(p-1) M_k + f t^p M'_k,  M'_k = x^(k+d) (1/y or log/y)
        const double f = to_double(term.factor);
        if (term.t_power != 0) {
            ValueErr m = moment(oval, term.kind, term.k, opt.quad);
            double coef = f * term.t_power * std::pow(t, term.t_power - 1);
            out[term.mu_index].value += coef * m.value;
            out[term.mu_index].est_error += std::abs(coef) * m.est_error;
        }
        MomentKind dk = (term.kind == MomentKind::I) ? MomentKind::J : MomentKind::LogJ;
        ValueErr md = moment(oval, dk, term.k + cd.dt_power, opt.quad);
        double coef = f * std::pow(t, term.t_power);
        out[term.mu_index].value += coef * md.value;
        out[term.mu_index].est_error += std::abs(coef) * md.est_error;
    }
    return out;
}

ValueErr generating_I(const GeneratingSpec& spec, double t, const EngineOptions& opt) {
    auto comp = generating_I_components(spec.id, spec.b, t, opt);
    ValueErr out;
    for (int i = 0; i < 4; ++i) {
        out.value += spec.mu[i] * comp[i].value;
        out.est_error += std::abs(spec.mu[i]) * comp[i].est_error;
    }
    return out;
}

ValueErr generating_J(const GeneratingSpec& spec, double t, const EngineOptions& opt) {
    auto comp = generating_J_components(spec.id, spec.b, t, opt);
    ValueErr out;
    for (int i = 0; i < 4; ++i) {
        out.value += spec.mu[i] * comp[i].value;
        out.est_error += std::abs(spec.mu[i]) * comp[i].est_error;
    }
    return out;
}

EndpointCheck verify_annulus_endpoints(CaseId c, const std::optional<Rational>& b) {
    if (is_region_case(c))
        throw CapabilityError("verify_annulus_endpoints: 1D level curves only");
    AnnulusInterval ai = annulus_interval(c, b);
    EndpointCheck out;
    EngineOptions opt;
    opt.allow_near_degenerate = true;
    CurveData cd = curve_data(c, b);

    const double span = std::isinf(ai.hi) ? 1.0 : (ai.hi - ai.lo);
    // center endpoint: oval width must scale like sqrt(distance)
    {
        double tc = ai.center_level();
        int dir = ai.lo_is_center ? +1 : -1;
        double d1 = 1e-8 * span, d2 = 4e-8 * span;
        Oval o1 = make_oval(c, tc + dir * d1, b, opt);
        Oval o2 = make_oval(c, tc + dir * d2, b, opt);
        double w1 = o1.x_hi - o1.x_lo;
        double w2 = o2.x_hi - o2.x_lo;
        double ratio = w1 / w2;  // expect 1/2
        out.collapse_at_center = std::abs(ratio - 0.5) < 0.05;
        // and no oval just outside the center level
        double t_out = tc - dir * d1;
        try {
            make_oval_from_poly(build_curve_poly(cd, t_out), oval_reference_x(c, t_out), opt);
            out.collapse_at_center = false;
        } catch (const OvalError&) {
        }
    }
    // boundary endpoint
    if (std::isinf(ai.hi) && ai.lo_is_center) {
        out.boundary_kind = "open";
    } else {
        double ts = ai.boundary_level();
        int dir = ai.lo_is_center ? -1 : +1;  // step back into the annulus
        double d = 1e-7 * span;
        Oval o = make_oval(c, ts + dir * d, b, opt);
        RealPoly Dp = o.D.derivative();
        double scale = std::max({std::abs(Dp(o.x_lo)), std::abs(Dp(o.x_hi)), 1e-30});
        double dlo = std::abs(Dp(o.x_lo)), dhi = std::abs(Dp(o.x_hi));
        if (std::abs(o.x_hi) > 50.0 || std::abs(o.x_lo) > 50.0) {
            out.boundary_kind = "escape";
        } else if (std::min(dlo, dhi) < 5e-3 * std::max(1.0, scale)) {
            out.boundary_kind = "saddle";
        } else {
            out.boundary_kind = "none";
            out.boundary_consistent = false;
        }
    }
    return out;
}

}  // namespace melnikov
