// Classification of quadratic centers with elliptic level curves: the
// reversible family (18 genus-one classes, 4 conic cases, the standard
// elliptic point), the Lotka-Volterra family (6 reversible + 5 generic
// classes), the genus bookkeeping behind both, and the exponent Diophantine
// problem for the generic LV triangle curve.
#pragma once

#include "melnikov/rational.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace melnikov {

struct ReversibleParams {
    Rational a;
    Rational b;
};

enum class ReversibleLabel {
    R0, R1, R2, R3, R4, R5, R6, R7, R8, R9, R10, R11, R12, R13, R14, R15, R16, R17, R18,
    R19, R20, R21, R22,
    DegenerateLine,  // on one of a=b, a+b+2=0, b=-1, a-3b-2=0: first integral non-algebraic
    HigherGenus,
};

std::string to_string(ReversibleLabel l);

struct ReversibleCase {
    ReversibleLabel label;
    std::string matched_condition;  // e.g. "a=5b+4", "(a,b)=(5/2,-1/2)", "a=b"
    double residual = 0;            // 0 for exact matches
    std::optional<std::string> line;  // set for DegenerateLine
};

// lambda, A, B, C of the closed-form first integral; A,B,C carry the global
// 1/(8(a-b)^2) factor.
struct FirstIntegralForm {
    Rational lambda;
    Rational A;
    Rational B;
    Rational C;
};

struct DegenerateLineError : std::runtime_error {
    std::string line;
    bool special_point;  // (-1,-1) or (+-2, 0)
    DegenerateLineError(std::string l, bool sp)
        : std::runtime_error("degenerate line " + l), line(std::move(l)), special_point(sp) {}
};

FirstIntegralForm first_integral_form(const ReversibleParams& p);

struct GenusSignature {
    long p;
    long q;
    bool a_zero;
    bool c_zero;
};

enum class GenusVerdict { Zero, One, Higher };

GenusVerdict genus_from_signature(const GenusSignature& s);

// tol = 0 requires exact membership; tol > 0 accepts |residual| <= tol with
// the residual reported (inputs are still exact rationals; approximate CLI
// input is converted to its exact binary value first).
ReversibleCase classify_reversible(const ReversibleParams& p, const Rational& tol = Rational(0));

// --- Lotka-Volterra ---------------------------------------------------------

struct LVParams {
    GaussianRational A;
    GaussianRational B;
};

enum class LVLabel {
    RLV0, RLV1, RLV2, RLV3, RLV4, RLV5, RLV6,
    LV1, LV2, LV3, LV4, LV5,
    Reversible,    // A^3 B real but no genus-one condition holds
    NotGenusOne,
};

std::string to_string(LVLabel l);

struct LVCase {
    LVLabel label;
    int branch = 0;                   // +1/-1 for the lv conditions, else 0
    std::string matched_condition;
    double residual = 0;
    std::optional<Rational> reversible_b;  // for RLV0/Reversible: normal-form b
};

struct AmbiguousClassification : std::runtime_error {
    std::vector<std::string> candidates;
    explicit AmbiguousClassification(std::vector<std::string> cs)
        : std::runtime_error("ambiguous classification within tolerance"), candidates(std::move(cs)) {}
};

LVCase classify_lv(const LVParams& p, double tol = 0.0);

// --- LV exponents -----------------------------------------------------------

struct LVExponents {
    Rational lambda;
    Rational mu;
};

struct LVTransformStep {
    std::string name;      // "absorb_x", "absorb_y", "invert" (the 2.10 map)
    Rational t_exponent;   // level map t -> t^e for this step
};

struct LVNormalized {
    LVExponents exponents;
    int region;  // 1 or 2
    std::vector<LVTransformStep> steps;
};

// Normalizes center exponents into region (I) 0<lambda<=1, 0<mu<=1 or region
// (II) lambda<0, mu<0, lambda+mu+1>0. Errors when lambda*mu*(lambda+mu+1)=0
// (non-algebraic first integral) or when the signs rule out a center.
LVNormalized lv_normalize(const LVExponents& e);

// the bi-rational involution (2.10); applying it twice is the identity
LVExponents lv_involution(const LVExponents& e);

// --- genus Diophantine problem ----------------------------------------------

struct DiophantineResult {
    std::vector<std::array<long, 3>> triples;        // p<q<r, gcd 1, divisibility
    std::array<long, 3> alpha_beta_gamma{0, 0, 0};   // closed-form path
};

DiophantineResult solve_genus_diophantine(long bound);

}  // namespace melnikov
