// Catalog of the genus-one center cases carrying a generating function:
// the reduced reversible list (level curves y^2 = 2 D(x,t)), the reversible
// Lotka-Volterra quartics, the generic Lotka-Volterra region integrals and
// the codimension-four family. Everything downstream (ovals, moments,
// recurrences, zero counting) is driven by this table.
#pragma once

#include "melnikov/rational.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace melnikov {

enum class CaseId {
    R0, R1, R2, R3, R4, R5, R6, R7, R8, R9, R10,
    R11, R12, R13, R14, R15, R16, R17, R18,
    RLV2, RLV3, RLV4, RLV5, RLV6,
    LV1, LV2, LV3, LV4, LV5,
    C4,
};

std::string to_string(CaseId c);
CaseId parse_case(const std::string& name);

struct CaseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// D(x,t) = sum_i (base[i] + tcoef[i] * t) x^i; exactly one tcoef entry is
// nonzero, so dD/dt = x^dt_power.
struct CurveData {
    std::array<Rational, 5> base;
    std::array<Rational, 5> tcoef;
    int dt_power = 0;
};

enum class MomentKind { I, J, Log, LogJ };

std::string to_string(MomentKind k);

// One term of a generating function: factor * mu[mu_index] * t^t_power * M_k
struct MomentTerm {
    MomentKind kind;
    int k;
    int mu_index;
    int t_power;
    Rational factor;
};

struct AnnulusInterval {
    double lo = 0;
    double hi = 0;  // may be +infinity
    bool lo_is_center = true;
    std::string lo_formula;
    std::string hi_formula;
    std::optional<Rational> lo_exact;
    std::optional<Rational> hi_exact;

    double center_level() const { return lo_is_center ? lo : hi; }
    double boundary_level() const { return lo_is_center ? hi : lo; }
};

bool is_region_case(CaseId c);   // lv1-lv5, c4: 2D region integrals
bool case_needs_b(CaseId c);     // r1-r6 parameter families
int mu_count(CaseId c, const std::optional<Rational>& b);

// Default parameter used by tests and the acceptance suite when none given.
std::optional<Rational> default_b(CaseId c);

// Resolves/validates the parameter; r11/r12 pin b = 1/3, r5 needs 1/2 or 2.
Rational resolve_b(CaseId c, const std::optional<Rational>& b);

CurveData curve_data(CaseId c, const std::optional<Rational>& b);

AnnulusInterval annulus_interval(CaseId c, const std::optional<Rational>& b);

std::vector<MomentTerm> recipe(CaseId c, const std::optional<Rational>& b);

// abscissa guaranteed to lie strictly inside the oval of D(.,t)
double oval_reference_x(CaseId c, double t);

// mid-annulus level for scale normalizations (finite midpoint, or t_c +/- 1)
double representative_t(CaseId c, const std::optional<Rational>& b);

// exponents (lambda, mu) for the lv region cases
struct LVExponentPair {
    Rational lambda;
    Rational mu;
};
LVExponentPair lv_exponents(CaseId c);

}  // namespace melnikov
