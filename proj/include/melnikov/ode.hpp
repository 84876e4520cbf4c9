// Direct validation of the Melnikov pipeline on the homoclinic-loop system:
// integrate the perturbed flow
//   x' = y,  y' = x - x^2 + eps (m1 + m2/x + m3 x) y
// and compare first-return displacements in the energy
// H = y^2/2 - x^2/2 + x^3/3 against the generating integral I(t).
#pragma once

#include "melnikov/zero_lab.hpp"

#include <array>

namespace melnikov {

struct PerturbedField {
    MuVector mu;
    double epsilon = 0;  // in (0, 1e-2]
};

struct OdeOptions {
    double rtol = 1e-12;
    double atol = 1e-13;
    double x_barrier = 1e-3;   // the perturbation carries 1/x
    double state_limit = 1e3;
    double max_time_factor = 10.0;  // multiple of the unperturbed period
};

struct OdeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using State = std::array<double, 2>;

// adaptive Dormand-Prince 5(4) step to the requested time
State flow(const PerturbedField& field, State start, double time, const OdeOptions& opt = {});

// H(first return) - H(start), starting from the section point {y=0, x>1}
// on the level H = t; returns are detected as downward y-crossings
double displacement(const PerturbedField& field, double t, const OdeOptions& opt = {});

// global Melnikov sign relating displacement/eps to I(t); calibrated once at
// the level where |I| is maximal over a coarse grid
int calibrate_sign(const MuVector& mu, double epsilon, const OdeOptions& opt = {});

struct LimitCycleFinding {
    double t_star = 0;              // fixed-point energy level
    bool attracting = false;
    double residual = 0;            // displacement at the located level
    double nearest_integral_zero = 0;
    double mismatch = 0;            // |t*_sim - t*_I|
};

std::vector<LimitCycleFinding> locate_limit_cycles(const MuVector& mu, double epsilon,
                                                   const OdeOptions& opt = {},
                                                   const ZeroLabOptions& zopt = {});

double unperturbed_period(double t);  // equals the J_0 moment of the level

}  // namespace melnikov
