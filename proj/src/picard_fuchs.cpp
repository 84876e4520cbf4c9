#include "melnikov/picard_fuchs.hpp"

#include <cmath>

namespace melnikov {

namespace {

std::array<TPoly, 5> curve_coeff_polys(CaseId c, const std::optional<Rational>& b) {
    CurveData cd = curve_data(c, b);
    std::array<TPoly, 5> A;
    for (int i = 0; i < 5; ++i) A[i] = TPoly{cd.base[i], cd.tcoef[i]};
    return A;
}

}  // namespace

MomentRelation relation_at(CaseId c, const std::optional<Rational>& b, int k) {
    auto A = curve_coeff_polys(c, b);
    MomentRelation r;
    r.k = k;
    r.coeff[0] = Rational(2 * k + 12) * A[4];
    r.coeff[1] = Rational(2 * k + 9) * A[3];
    r.coeff[2] = Rational(2 * k + 6) * A[2];
    r.coeff[3] = Rational(2 * k + 3) * A[1];
    r.coeff[4] = Rational(2 * k) * A[0];
    return r;
}

std::vector<int> moment_basis(CaseId c, const std::optional<Rational>& b) {
    auto A = curve_coeff_polys(c, b);
    if (!A[4].is_zero()) return {-1, 0, 1, 2};
    if (!A[3].is_zero()) return {-1, 0, 1};
    throw CaseError("moment_basis: level polynomial has degree < 3");
}

int pf_dimension(CaseId c, const std::optional<Rational>& b) {
    return static_cast<int>(moment_basis(c, b).size());
}

namespace {

void accumulate(std::map<int, TRat>& dst, int idx, const TRat& coef) {
    auto it = dst.find(idx);
    if (it == dst.end()) dst.emplace(idx, coef);
    else it->second = it->second + coef;
}

std::map<int, TRat> reduce_index(CaseId c, const std::optional<Rational>& b, int k,
                                 std::map<int, std::map<int, TRat>>& memo) {
    auto hit = memo.find(k);
    if (hit != memo.end()) return hit->second;

    auto A = curve_coeff_polys(c, b);
    const bool quartic = !A[4].is_zero();
    const int k_up = quartic ? 3 : 2;  // smallest index reduced downward

    std::map<int, TRat> out;
    if (k >= -1 && k < k_up) {
        out.emplace(k, TRat(TPoly(Rational(1))));
        memo[k] = out;
        return out;
    }

    MomentRelation rel{};
    TPoly pivot;
    std::array<std::pair<int, TPoly>, 4> others{};  // (moment index, coefficient)
    if (k >= k_up) {
        int kp = quartic ? k - 3 : k - 2;
        rel = relation_at(c, b, kp);
        if (quartic) {
            pivot = rel.coeff[0];
            others = {{{kp + 2, rel.coeff[1]}, {kp + 1, rel.coeff[2]}, {kp, rel.coeff[3]},
                       {kp - 1, rel.coeff[4]}}};
        } else {
            pivot = rel.coeff[1];
            others = {{{kp + 3, rel.coeff[0]}, {kp + 1, rel.coeff[2]}, {kp, rel.coeff[3]},
                       {kp - 1, rel.coeff[4]}}};
        }
    } else {  // k <= -2: solve for I_{k'-1} with k' = k+1
        int kp = k + 1;
        rel = relation_at(c, b, kp);
        pivot = rel.coeff[4];
        others = {{{kp + 3, rel.coeff[0]}, {kp + 2, rel.coeff[1]}, {kp + 1, rel.coeff[2]},
                   {kp, rel.coeff[3]}}};
    }
    if (pivot.is_zero())
        throw CaseError("reduce_moment: elimination pivot vanishes identically for k = " +
                        std::to_string(k));
    for (const auto& [idx, coef] : others) {
        if (coef.is_zero()) continue;
        TRat factor(Rational(-1) * coef, pivot);
        auto sub = reduce_index(c, b, idx, memo);
        for (const auto& [bidx, bcoef] : sub) accumulate(out, bidx, factor * bcoef);
    }
    memo[k] = out;
    return out;
}

}  // namespace

MomentReduction reduce_moment(CaseId c, const std::optional<Rational>& b, int k) {
    std::map<int, std::map<int, TRat>> memo;
    MomentReduction red;
    red.k = k;
    red.basis = moment_basis(c, b);
    red.combo = reduce_index(c, b, k, memo);
    return red;
}

double relation_residual(CaseId c, const std::optional<Rational>& b, int k, double t,
                         const EngineOptions& opt) {
    MomentRelation rel = relation_at(c, b, k);
    Oval oval = make_oval(c, t, b, opt);
    double sum = 0;
    double scale = 0;
    for (int j = 0; j < 5; ++j) {
        if (rel.coeff[j].is_zero()) continue;
        int idx = k + 3 - j;
        double coef = rel.coeff[j].eval(t);
        double term = coef * moment(oval, MomentKind::I, idx, opt.quad).value;
        sum += term;
        scale = std::max(scale, std::abs(term));
    }
    if (scale == 0) return 0;
    return std::abs(sum) / scale;
}

namespace {

// oint x^k P(x) / y dx as a J-moment combination
double poly_weighted_J(const Oval& oval, const RealPoly& P, int k, const QuadOptions& q) {
    double s = 0;
    for (size_t j = 0; j < P.c.size(); ++j) {
        if (P.c[j] == 0.0) continue;
        s += P.c[j] * moment(oval, MomentKind::J, k + static_cast<int>(j), q).value;
    }
    return s;
}

}  // namespace

DerivativeResiduals derivative_relations(CaseId c, const std::optional<Rational>& b, double t,
                                         int k, const EngineOptions& opt) {
    CurveData cd = curve_data(c, b);
    EngineOptions tight = opt;
    tight.quad.abs_tol = 1e-13;
    tight.quad.rel_tol = 1e-13;

    AnnulusInterval ai = annulus_interval(c, b);
    const double span = std::isinf(ai.hi) ? 1.0 : ai.hi - ai.lo;
    double h = 5e-4 * span;
    double room = std::min(t - ai.lo, std::isinf(ai.hi) ? 1e300 : ai.hi - t);
    while (2 * h > 0.5 * room) h *= 0.5;

    auto Ik = [&](double tt) {
        Oval o = make_oval(c, tt, b, tight);
        return moment(o, MomentKind::I, k, tight.quad).value;
    };

    Oval oval = make_oval(c, t, b, tight);
    DerivativeResiduals res;
    {
        // five-point stencil against oint x^(k+d) dx/y
        double fd = (8.0 * (Ik(t + h) - Ik(t - h)) - (Ik(t + 2 * h) - Ik(t - 2 * h))) / (12.0 * h);
        double direct = moment(oval, MomentKind::J, k + cd.dt_power, tight.quad).value;
        res.d_dt = std::abs(fd - direct) / std::max(1.0, std::abs(direct));
    }
    {
        RealPoly Dp = oval.D.derivative();
        double lhs = poly_weighted_J(oval, Dp, k, tight.quad);
        double rhs = (k == 0) ? 0.0 : -k * moment(oval, MomentKind::I, k - 1, tight.quad).value;
        res.d_dx = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
    }
    {
        double lhs = poly_weighted_J(oval, oval.D, k, tight.quad);
        double rhs = 0.5 * moment(oval, MomentKind::I, k, tight.quad).value;
        res.on_curve = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
    }
    return res;
}

}  // namespace melnikov
