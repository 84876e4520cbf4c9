#include "melnikov/zero_lab.hpp"

#include "melnikov/rng.hpp"

#include <algorithm>
#include <cmath>

namespace melnikov {

void MuVector::canonicalize() {
    double n = norm();
    if (n == 0) throw std::invalid_argument("MuVector: all weights zero");
    double s = 1.0 / n;
    for (int i = 0; i < size; ++i)
        if (w[i] != 0) {
            if (w[i] < 0) s = -s;
            break;
        }
    for (auto& x : w) x *= s;
}

double MuVector::norm() const {
    double s = 0;
    for (double x : w) s += x * x;
    return std::sqrt(s);
}

namespace {

std::vector<double> scan_grid(const AnnulusInterval& ai, int n, double margin) {
    double lo = ai.lo;
    double hi = std::isinf(ai.hi) ? ai.lo + 10.0 : ai.hi;
    double span = hi - lo;
    double d_min = margin;
    double d_max = 0.5 * span;
    int half = std::max(n / 2, 8);
    std::vector<double> ts;
    ts.reserve(2 * half);
    for (int i = 0; i < half; ++i) {
        double d = d_min * std::pow(d_max / d_min, static_cast<double>(i) / (half - 1));
        ts.push_back(lo + d);
        ts.push_back(hi - d);
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

struct GridCache {
    std::vector<double> t;
    std::vector<std::array<double, 4>> comp;  // per-mu components
    std::vector<char> ok;
    bool has_center_node = false;
    std::array<double, 4> center_comp{};      // extrapolated J components at t_c
    double t_center = 0;
};

std::array<double, 4> eval_components(CaseId c, const std::optional<Rational>& b, double t,
                                      Which which, const EngineOptions& eopt) {
    auto v = (which == Which::I) ? generating_I_components(c, b, t, eopt)
                                 : generating_J_components(c, b, t, eopt);
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) out[i] = v[i].value;
    return out;
}

std::array<double, 4> richardson_components(CaseId c, const std::optional<Rational>& b,
                                            Which which, const AnnulusInterval& ai,
                                            const EngineOptions& eopt) {
    // J is analytic at the center level; 3-point Richardson in the distance h
    double span = std::isinf(ai.hi) ? 1.0 : ai.hi - ai.lo;
    double h = 3e-3 * span;
    int dir = ai.lo_is_center ? +1 : -1;
    double tc = ai.center_level();
    auto f = [&](double hh) { return eval_components(c, b, tc + dir * hh, which, eopt); };
    auto a0 = f(h), a1 = f(h / 2), a2 = f(h / 4);
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) {
        double r1 = 2 * a1[i] - a0[i];
        double r2 = 2 * a2[i] - a1[i];
        out[i] = (4 * r2 - r1) / 3.0;
    }
    return out;
}

GridCache build_cache(CaseId c, const std::optional<Rational>& b, Which which,
                      const ZeroLabOptions& opt) {
    GridCache cache;
    AnnulusInterval ai = annulus_interval(c, b);
    cache.t = scan_grid(ai, opt.grid, opt.grid_margin);
    cache.comp.resize(cache.t.size());
    cache.ok.assign(cache.t.size(), 0);
    EngineOptions eopt = opt.engine;
    parallel_for(cache.t.size(), opt.exec, [&](size_t i) {
        try {
            cache.comp[i] = eval_components(c, b, cache.t[i], which, eopt);
            cache.ok[i] = 1;
        } catch (const std::exception&) {
            cache.ok[i] = 0;
        }
    });
    if (which == Which::J) {
        cache.center_comp = richardson_components(c, b, which, ai, eopt);
        cache.t_center = ai.center_level();
        cache.has_center_node = true;
    }
    return cache;
}

double dot_mu(const MuVector& mu, const std::array<double, 4>& comp) {
    double s = 0;
    for (int i = 0; i < 4; ++i) s += mu.w[i] * comp[i];
    return s;
}

ZeroReport count_from_cache(CaseId c, const std::optional<Rational>& b, const GridCache& cache,
                            const MuVector& mu, Which which, const ZeroLabOptions& opt) {
    ZeroReport rep;
    rep.id = c;
    rep.mu = mu;
    rep.which = which;
    rep.grid = static_cast<int>(cache.t.size());
    rep.forced_center_zero = (which == Which::I);

    std::vector<double> ts;
    std::vector<double> vs;
    if (cache.has_center_node) {
        ts.push_back(cache.t_center);
        vs.push_back(dot_mu(mu, cache.center_comp));
    }
    for (size_t i = 0; i < cache.t.size(); ++i) {
        if (!cache.ok[i]) {
            ++rep.skipped_nodes;
            continue;
        }
        ts.push_back(cache.t[i]);
        vs.push_back(dot_mu(mu, cache.comp[i]));
    }
    if (rep.skipped_nodes > static_cast<int>(cache.t.size() / 20))
        throw OvalError("count_zeros: more than 5% of grid nodes failed");
    if (ts.size() < 8) throw OvalError("count_zeros: grid too sparse after skips");
    // ts is ascending by construction (center node first, then the grid)
    rep.scan_lo = ts.front();
    rep.scan_hi = ts.back();

    for (double v : vs) rep.scale = std::max(rep.scale, std::abs(v));
    if (rep.scale == 0) return rep;

    EngineOptions eopt = opt.engine;
    auto value_at = [&](double t) {
        return dot_mu(mu, eval_components(c, b, t, which, eopt));
    };

    // sign-change brackets
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
        double a = ts[i], fa = vs[i];
        double bb = ts[i + 1], fb = vs[i + 1];
        if (fa == 0.0 || fb == 0.0) continue;  // exact node zeros re-found by neighbours
        if (std::signbit(fa) == std::signbit(fb)) continue;
        double lo = a, hi = bb, flo = fa;
        // the center node cannot be re-evaluated; start bisection inside
        if (cache.has_center_node && i == 0) {
            lo = std::min(a + opt.grid_margin, 0.5 * (a + bb));
            flo = value_at(lo);
            if (std::signbit(flo) != std::signbit(fa)) {
                // the crossing sits inside the margin; record at the edge
                ZeroRecord zr{a, lo, lo, false, flo};
                rep.zeros.push_back(zr);
                continue;
            }
        }
        while (hi - lo > opt.refine_tol) {
            double mid = 0.5 * (lo + hi);
            double fm = value_at(mid);
            if (fm == 0.0) { lo = hi = mid; break; }
            if (std::signbit(fm) == std::signbit(flo)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        double root = 0.5 * (lo + hi);
        rep.zeros.push_back({a, bb, root, false, value_at(root)});
    }

    // near-zero interior minima without sign change: suspected double zeros
    for (size_t i = 1; i + 1 < vs.size(); ++i) {
        double am = std::abs(vs[i]);
        if (am >= opt.suspect_factor * rep.scale) continue;
        if (am > std::abs(vs[i - 1]) || am > std::abs(vs[i + 1])) continue;
        if (std::signbit(vs[i - 1]) != std::signbit(vs[i + 1])) continue;  // a simple bracket
        bool near_existing = false;
        for (const auto& z : rep.zeros)
            near_existing |= (ts[i] >= z.bracket_lo && ts[i] <= z.bracket_hi);
        if (near_existing) continue;
        rep.zeros.push_back({ts[i - 1], ts[i + 1], ts[i], true, vs[i]});
    }
    std::sort(rep.zeros.begin(), rep.zeros.end(),
              [](const ZeroRecord& x, const ZeroRecord& y) { return x.root < y.root; });

    rep.count_with_multiplicity = 0;
    for (const auto& z : rep.zeros) rep.count_with_multiplicity += z.suspected_multiple ? 2 : 1;

    // minimum |value| strictly between recorded roots (missed-zero indicator)
    rep.min_gap_value = rep.scale;
    for (size_t i = 0; i + 1 < rep.zeros.size(); ++i) {
        for (size_t j = 0; j < ts.size(); ++j)
            if (ts[j] > rep.zeros[i].root && ts[j] < rep.zeros[i + 1].root)
                rep.min_gap_value = std::min(rep.min_gap_value, std::abs(vs[j]));
    }
    return rep;
}

}  // namespace

ZeroReport count_zeros(CaseId c, const std::optional<Rational>& b, const MuVector& mu,
                       Which which, const ZeroLabOptions& opt) {
    if (opt.grid < 256) throw std::invalid_argument("count_zeros: grid must be >= 256");
    MuVector m = mu;
    m.canonicalize();
    GridCache cache = build_cache(c, b, which, opt);
    return count_from_cache(c, b, cache, m, which, opt);
}

SweepSummary sweep_mu(CaseId c, const std::optional<Rational>& b, int n, uint64_t seed,
                      Which which, const ZeroLabOptions& opt) {
    if (n < 100) throw std::invalid_argument("sweep_mu: n must be >= 100");
    SweepSummary sum;
    sum.id = c;
    sum.which = which;
    sum.n = n;
    sum.seed = seed;

    const int m = mu_count(c, b);
    sum.samples.resize(n);
    for (int i = 0; i < n; ++i) {
        Rng rng(seed ^ static_cast<uint64_t>(i));
        MuVector mu;
        mu.size = m;
        for (int j = 0; j < m; ++j) mu.w[j] = rng.gaussian();
        if (mu.norm() == 0) mu.w[0] = 1;
        mu.canonicalize();  // antithetic pairs +-mu collapse here
        sum.samples[i] = mu;
    }

    GridCache cache = build_cache(c, b, which, opt);
    sum.counts.assign(n, -1);
    std::vector<char> all_simple(n, 0);
    ZeroLabOptions per_item = opt;
    parallel_for(static_cast<size_t>(n), opt.exec, [&](size_t i) {
        ZeroReport rep = count_from_cache(c, b, cache, sum.samples[i], which, per_item);
        sum.counts[i] = rep.count_with_multiplicity;
        bool simple = true;
        for (const auto& z : rep.zeros) simple &= !z.suspected_multiple;
        all_simple[i] = simple ? 1 : 0;
    });

    for (int i = 0; i < n; ++i) {
        ++sum.histogram[sum.counts[i]];
        if (sum.counts[i] > sum.max_count) {
            sum.max_count = sum.counts[i];
            sum.argmax = sum.samples[i];
        }
        if (!sum.witness_found && sum.counts[i] == 2 && all_simple[i]) {
            sum.witness_found = true;
            sum.witness = sum.samples[i];
        }
    }
    sum.open_flag_no_witness = !sum.witness_found;
    return sum;
}

double center_value_extrapolated(CaseId c, const std::optional<Rational>& b, const MuVector& mu,
                                 Which which, const ZeroLabOptions& opt) {
    AnnulusInterval ai = annulus_interval(c, b);
    if (which == Which::I) return 0.0;  // shrinking cycle
    auto comp = richardson_components(c, b, which, ai, opt.engine);
    MuVector m = mu;
    return dot_mu(m, comp);
}

SlopeFit slope_fit(CaseId c, const std::optional<Rational>& b, int k, double abs_t_lo,
                   double abs_t_hi, int points, const ZeroLabOptions& opt) {
    AnnulusInterval ai = annulus_interval(c, b);
    if (std::abs(ai.boundary_level()) > 1e-12)
        throw CapabilityError("slope_fit: implemented for annuli terminating at t = 0");
    const double side = ai.center_level() < 0 ? -1.0 : 1.0;  // approach 0 from inside

    SlopeFit fit;
    fit.id = c;
    fit.k = k;
    fit.abs_t_lo = abs_t_lo;
    fit.abs_t_hi = abs_t_hi;
    fit.points = points;

    std::vector<double> lx, ly;
    std::vector<double> absts(points), vals(points);
    EngineOptions eopt = opt.engine;
    for (int i = 0; i < points; ++i)
        absts[i] = abs_t_lo * std::pow(abs_t_hi / abs_t_lo, static_cast<double>(i) / (points - 1));
    parallel_for(static_cast<size_t>(points), opt.exec, [&](size_t i) {
        Oval o = make_oval(c, side * absts[i], b, eopt);
        vals[i] = moment(o, MomentKind::J, k, eopt.quad).value;
    });
    for (int i = 0; i < points; ++i) {
        lx.push_back(std::log(absts[i]));
        ly.push_back(std::log(std::abs(vals[i])));
    }
    double n = points, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < points; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    fit.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double a0 = (sy - fit.fitted_exponent * sx) / n;
    double rss = 0;
    for (int i = 0; i < points; ++i) {
        double r = ly[i] - (a0 + fit.fitted_exponent * lx[i]);
        rss += r * r;
    }
    fit.fit_residual = std::sqrt(rss / n);
    fit.limit_estimate = vals[0];

    // tabulated predictions for the two headline systems
    bool family_r18 = c == CaseId::R0 || c == CaseId::R9 || c == CaseId::R17 || c == CaseId::R18;
    bool family_r11 = c == CaseId::R11 || c == CaseId::R12;
    if (family_r18) {
        if (k == -1) fit.predicted_exponent = -0.5;
        if (k == 1) fit.predicted_exponent = 0.0;
    } else if (family_r11) {
        if (k >= 1) fit.predicted_exponent = -(k / 2.0 + 0.25);
    }
    return fit;
}

RatioStudy log_ratio_study(CaseId c, const std::optional<Rational>& b, double abs_t_lo,
                           double abs_t_hi, int points, const ZeroLabOptions& opt) {
    AnnulusInterval ai = annulus_interval(c, b);
    const double side = ai.center_level() < 0 ? -1.0 : 1.0;
    RatioStudy st;
    std::vector<double> absts(points), ratio(points);
    EngineOptions eopt = opt.engine;
    for (int i = 0; i < points; ++i)
        absts[i] = abs_t_lo * std::pow(abs_t_hi / abs_t_lo, static_cast<double>(i) / (points - 1));
    parallel_for(static_cast<size_t>(points), opt.exec, [&](size_t i) {
        Oval o = make_oval(c, side * absts[i], b, eopt);
        double j0 = moment(o, MomentKind::J, 0, eopt.quad).value;
        ratio[i] = j0 / std::log(1.0 / absts[i]);
    });
    for (int i = 0; i < points; ++i) st.samples.push_back({absts[i], ratio[i]});
    // relative drift across the last decade (smallest |t| end)
    double r_small = ratio[0];
    double r_decade = r_small;
    for (int i = 0; i < points; ++i)
        if (absts[i] <= 10.0 * absts[0] * (1 + 1e-9)) r_decade = ratio[i];
    st.last_decade_drift = std::abs(r_decade - r_small) / std::abs(r_small);
    return st;
}

}  // namespace melnikov
