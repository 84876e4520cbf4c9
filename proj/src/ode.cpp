#include "melnikov/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace melnikov {

namespace {

constexpr double kTc = -1.0 / 6.0;

double hamiltonian(const State& s) {
    return 0.5 * s[1] * s[1] - 0.5 * s[0] * s[0] + s[0] * s[0] * s[0] / 3.0;
}

State rhs(const PerturbedField& f, const State& s) {
    const double x = s[0], y = s[1];
    double g = 0;
    if (f.epsilon != 0)
        g = (f.mu.w[0] + f.mu.w[1] / x + f.mu.w[2] * x) * y;
    return {y, x - x * x + f.epsilon * g};
}

// Dormand-Prince 5(4) coefficients
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct StepResult {
    State y_new;
    State k1, k7;           // FSAL pair, also used by the dense interpolant
    std::array<State, 7> k;
    double error;           // scaled error estimate
};

StepResult dp_step(const PerturbedField& f, const State& y, const State& k1, double h,
                   const OdeOptions& opt) {
    auto axpy = [](const State& base, std::initializer_list<std::pair<double, const State*>> terms,
                   double h) {
        State r = base;
        for (auto& [c, k] : terms) {
            r[0] += h * c * (*k)[0];
            r[1] += h * c * (*k)[1];
        }
        return r;
    };
    StepResult res;
    res.k[0] = k1;
    State y2 = axpy(y, {{a21, &res.k[0]}}, h);
    res.k[1] = rhs(f, y2);
    State y3 = axpy(y, {{a31, &res.k[0]}, {a32, &res.k[1]}}, h);
    res.k[2] = rhs(f, y3);
    State y4 = axpy(y, {{a41, &res.k[0]}, {a42, &res.k[1]}, {a43, &res.k[2]}}, h);
    res.k[3] = rhs(f, y4);
    State y5 = axpy(y, {{a51, &res.k[0]}, {a52, &res.k[1]}, {a53, &res.k[2]}, {a54, &res.k[3]}}, h);
    res.k[4] = rhs(f, y5);
    State y6 = axpy(y, {{a61, &res.k[0]}, {a62, &res.k[1]}, {a63, &res.k[2]}, {a64, &res.k[3]},
                        {a65, &res.k[4]}}, h);
    res.k[5] = rhs(f, y6);
    res.y_new = axpy(y, {{b1, &res.k[0]}, {b3, &res.k[2]}, {b4, &res.k[3]}, {b5, &res.k[4]},
                         {b6, &res.k[5]}}, h);
    res.k[6] = rhs(f, res.y_new);
    res.k1 = res.k[0];
    res.k7 = res.k[6];

    double err = 0;
    State ee = axpy({0, 0}, {{e1, &res.k[0]}, {e3, &res.k[2]}, {e4, &res.k[3]}, {e5, &res.k[4]},
                             {e6, &res.k[5]}, {e7, &res.k[6]}}, h);
    for (int i = 0; i < 2; ++i) {
        double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(res.y_new[i]));
        double r = ee[i] / sc;
        err += r * r;
    }
    res.error = std::sqrt(err / 2);
    return res;
}

// quartic dense-output interpolant of DOPRI5 (Hairer-Norsett-Wanner form)
State dense_eval(const State& y_old, const std::array<State, 7>& k, double h, double theta) {
    constexpr double d1 = -12715105075.0 / 11282082432.0;
    constexpr double d3 = 87487479700.0 / 32700410799.0;
    constexpr double d4 = -10690763975.0 / 1880347072.0;
    constexpr double d5 = 701980252875.0 / 199316789632.0;
    constexpr double d6 = -1453857185.0 / 822651844.0;
    constexpr double d7 = 69997945.0 / 29380423.0;
    const double th = theta, th1 = 1.0 - theta;
    State out;
    for (int i = 0; i < 2; ++i) {
        double rcont1 = y_old[i];
        double ydiff = h * (b1 * k[0][i] + b3 * k[2][i] + b4 * k[3][i] + b5 * k[4][i] +
                            b6 * k[5][i]);
        double rcont2 = ydiff;
        double bspl = h * k[0][i] - ydiff;
        double rcont3 = bspl;
        double rcont4 = ydiff - h * k[6][i] - bspl;
        double rcont5 = h * (d1 * k[0][i] + d3 * k[2][i] + d4 * k[3][i] + d5 * k[4][i] +
                             d6 * k[5][i] + d7 * k[6][i]);
        out[i] = rcont1 + th * (rcont2 + th1 * (rcont3 + th * (rcont4 + th1 * rcont5)));
    }
    return out;
}

struct Stepper {
    const PerturbedField& f;
    const OdeOptions& opt;
    State y;
    State k1;
    double time = 0;
    double h = 1e-3;

    explicit Stepper(const PerturbedField& field, State start, const OdeOptions& options)
        : f(field), opt(options), y(start) {
        k1 = rhs(f, y);
    }

    void guard() const {
        if (y[0] < opt.x_barrier)
            throw OdeError("trajectory crossed the x barrier at x = " + std::to_string(y[0]));
        if (std::abs(y[0]) > opt.state_limit || std::abs(y[1]) > opt.state_limit)
            throw OdeError("trajectory escaped the working domain");
    }

    // one accepted step; returns the raw step data for dense output
    StepResult advance() {
        for (int tries = 0; tries < 60; ++tries) {
            StepResult r = dp_step(f, y, k1, h, opt);
            double err = std::max(r.error, 1e-30);
            if (err <= 1.0) {
                double fac = std::min(4.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
                StepResult accepted = r;
                y = r.y_new;
                k1 = r.k7;  // FSAL
                time += h;
                h *= fac;
                guard();
                return accepted;
            }
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
        throw OdeError("step size control failed to accept a step");
    }
};

}  // namespace

double unperturbed_period(double t) {
    Oval o = make_oval(CaseId::R18, t, std::nullopt);
    return moment(o, MomentKind::J, 0).value;
}

State flow(const PerturbedField& field, State start, double time, const OdeOptions& opt) {
    Stepper st(field, start, opt);
    st.guard();
    while (st.time < time) {
        double remaining = time - st.time;
        if (st.h > remaining) st.h = remaining;
        st.advance();
        if (st.h < 1e-16) throw OdeError("step size underflow");
    }
    return st.y;
}

namespace {

// right section abscissa: largest root of H(x,0) = t
double section_x(double t) {
    Oval o = make_oval(CaseId::R18, t, std::nullopt);
    return o.x_hi;
}

}  // namespace

double displacement(const PerturbedField& field, double t, const OdeOptions& opt) {
    const double x0 = section_x(t);
    State start{x0, 0.0};
    Stepper st(field, start, opt);
    const double t_max = opt.max_time_factor * (unperturbed_period(t) + 10.0);

    double prev_y = 0.0;
    bool armed = false;  // arm once the lower branch is reached
    while (st.time < t_max) {
        const State y_old = st.y;
        const double time_before = st.time;
        StepResult r = st.advance();
        const double h_used = st.time - time_before;
        if (!armed && st.y[1] < -1e-5) armed = true;
        if (armed && prev_y > 0.0 && st.y[1] <= 0.0) {
            // downward crossing inside this step: bisect the dense interpolant
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                State s = dense_eval(y_old, r.k, h_used, mid);
                if (s[1] > 0.0) lo = mid;
                else hi = mid;
            }
            State hit = dense_eval(y_old, r.k, h_used, 0.5 * (lo + hi));
            return hamiltonian(hit) - t;
        }
        prev_y = st.y[1];
    }
    throw OdeError("no return to the section within the time budget");
}

int calibrate_sign(const MuVector& mu, double epsilon, const OdeOptions& opt) {
    // pick the level maximizing |I| on a coarse grid, compare signs there
    GeneratingSpec spec{CaseId::R18, std::nullopt, mu.w};
    double best_t = -0.08;
    double best = 0;
    for (int i = 2; i <= 14; ++i) {
        double t = kTc + (0.0 - kTc) * i / 16.0;
        double v = generating_I(spec, t).value;
        if (std::abs(v) > best) {
            best = std::abs(v);
            best_t = t;
        }
    }
    if (best == 0) throw OdeError("calibrate_sign: generating integral vanishes on the grid");
    PerturbedField f{mu, epsilon};
    double d = displacement(f, best_t, opt);
    double i_val = generating_I(spec, best_t).value;
    return (d * i_val >= 0) ? +1 : -1;
}

std::vector<LimitCycleFinding> locate_limit_cycles(const MuVector& mu, double epsilon,
                                                   const OdeOptions& opt,
                                                   const ZeroLabOptions& zopt) {
    PerturbedField f{mu, epsilon};
    // displacement zeros over a compact interior grid
    const double lo = kTc + 4e-3;
    const double hi = -4e-3;
    const int n = 48;
    std::vector<double> ts(n), ds(n);
    for (int i = 0; i < n; ++i) ts[i] = lo + (hi - lo) * i / (n - 1);
    parallel_for(static_cast<size_t>(n), zopt.exec,
                 [&](size_t i) { ds[i] = displacement(f, ts[i], opt); });

    // zeros of I(t) for the pairing
    ZeroReport zr = count_zeros(CaseId::R18, std::nullopt, mu, Which::I, zopt);

    std::vector<LimitCycleFinding> out;
    for (int i = 0; i + 1 < n; ++i) {
        if (ds[i] == 0.0 || std::signbit(ds[i]) == std::signbit(ds[i + 1])) continue;
        double a = ts[i], b = ts[i + 1], fa = ds[i];
        for (int it = 0; it < 40 && b - a > 1e-7; ++it) {
            double mid = 0.5 * (a + b);
            double fm = displacement(f, mid);
            if (fm == 0.0) { a = b = mid; break; }
            if (std::signbit(fm) == std::signbit(fa)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        LimitCycleFinding lc;
        lc.t_star = 0.5 * (a + b);
        lc.residual = std::abs(displacement(f, lc.t_star));
        lc.attracting = ds[i] > 0.0;  // energy grows below, shrinks above
        lc.nearest_integral_zero = std::numeric_limits<double>::quiet_NaN();
        double bestd = 1e300;
        for (const auto& z : zr.zeros) {
            double dd = std::abs(z.root - lc.t_star);
            if (dd < bestd) {
                bestd = dd;
                lc.nearest_integral_zero = z.root;
            }
        }
        lc.mismatch = bestd;
        out.push_back(lc);
    }
    return out;
}

}  // namespace melnikov
