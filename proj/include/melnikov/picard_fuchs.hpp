// The moment recurrence
//   (2k+12) A4 I_{k+3} + (2k+9) A3 I_{k+2} + (2k+6) A2 I_{k+1}
//     + (2k+3) A1 I_k + 2k A0 I_{k-1} = 0
// with coefficients kept exact as polynomials in t, the reduction of
// arbitrary moments onto the basis {I_-1, I_0, I_1 (, I_2)}, the dimension
// bookkeeping, and numeric verification of the derivative identities.
#pragma once

#include "melnikov/engine.hpp"
#include "melnikov/tpoly.hpp"

#include <map>

namespace melnikov {

struct MomentRelation {
    int k = 0;
    // coefficients multiplying I_{k+3}, I_{k+2}, I_{k+1}, I_k, I_{k-1}
    std::array<TPoly, 5> coeff;
};

MomentRelation relation_at(CaseId c, const std::optional<Rational>& b, int k);

// I_k as a combination of basis moments with coefficients rational in t
struct MomentReduction {
    int k = 0;
    std::vector<int> basis;            // ascending basis indices
    std::map<int, TRat> combo;         // index -> coefficient
};

MomentReduction reduce_moment(CaseId c, const std::optional<Rational>& b, int k);

// basis is {I_-1, I_0, I_1, I_2} when deg D = 4, {I_-1, I_0, I_1} when 3
std::vector<int> moment_basis(CaseId c, const std::optional<Rational>& b);

int pf_dimension(CaseId c, const std::optional<Rational>& b);

// residual of the recurrence at (t, k), evaluated by quadrature; relative to
// the largest participating term
double relation_residual(CaseId c, const std::optional<Rational>& b, int k, double t,
                         const EngineOptions& opt = {});

struct DerivativeResiduals {
    double d_dt = 0;       // I_k'(t) vs oint x^k dD/dt / y
    double d_dx = 0;       // oint x^k D' / y vs -k I_{k-1}
    double on_curve = 0;   // oint x^k D / y vs I_k / 2
};

DerivativeResiduals derivative_relations(CaseId c, const std::optional<Rational>& b, double t,
                                         int k, const EngineOptions& opt = {});

}  // namespace melnikov
