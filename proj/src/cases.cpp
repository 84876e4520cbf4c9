#include "melnikov/cases.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace melnikov {

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

std::string to_string(CaseId c) {
    switch (c) {
        case CaseId::R0: return "r0";
        case CaseId::R1: return "r1";
        case CaseId::R2: return "r2";
        case CaseId::R3: return "r3";
        case CaseId::R4: return "r4";
        case CaseId::R5: return "r5";
        case CaseId::R6: return "r6";
        case CaseId::R7: return "r7";
        case CaseId::R8: return "r8";
        case CaseId::R9: return "r9";
        case CaseId::R10: return "r10";
        case CaseId::R11: return "r11";
        case CaseId::R12: return "r12";
        case CaseId::R13: return "r13";
        case CaseId::R14: return "r14";
        case CaseId::R15: return "r15";
        case CaseId::R16: return "r16";
        case CaseId::R17: return "r17";
        case CaseId::R18: return "r18";
        case CaseId::RLV2: return "rlv2";
        case CaseId::RLV3: return "rlv3";
        case CaseId::RLV4: return "rlv4";
        case CaseId::RLV5: return "rlv5";
        case CaseId::RLV6: return "rlv6";
        case CaseId::LV1: return "lv1";
        case CaseId::LV2: return "lv2";
        case CaseId::LV3: return "lv3";
        case CaseId::LV4: return "lv4";
        case CaseId::LV5: return "lv5";
        case CaseId::C4: return "c4";
    }
    return "?";
}

std::string to_string(MomentKind k) {
    switch (k) {
        case MomentKind::I: return "I";
        case MomentKind::J: return "J";
        case MomentKind::Log: return "L";
        case MomentKind::LogJ: return "LJ";
    }
    return "?";
}

CaseId parse_case(const std::string& name) {
    static const std::map<std::string, CaseId> m = [] {
        std::map<std::string, CaseId> mm;
        for (int i = 0; i <= static_cast<int>(CaseId::C4); ++i) {
            CaseId c = static_cast<CaseId>(i);
            mm[to_string(c)] = c;
        }
        return mm;
    }();
    auto it = m.find(name);
    if (it == m.end()) throw CaseError("unknown case '" + name + "'");
    return it->second;
}

bool is_region_case(CaseId c) {
    return c == CaseId::LV1 || c == CaseId::LV2 || c == CaseId::LV3 || c == CaseId::LV4 ||
           c == CaseId::LV5 || c == CaseId::C4;
}

bool case_needs_b(CaseId c) {
    switch (c) {
        case CaseId::R1:
        case CaseId::R2:
        case CaseId::R3:
        case CaseId::R4:
        case CaseId::R5:
        case CaseId::R6: return true;
        default: return false;
    }
}

std::optional<Rational> default_b(CaseId c) {
    switch (c) {
        case CaseId::R1: return Rational(4);
        case CaseId::R2: return Rational(4);
        case CaseId::R3: return Rational(-1, 2);
        case CaseId::R4: return Rational(-1, 2);
        case CaseId::R5: return Rational(1, 2);
        case CaseId::R6: return Rational(3);
        case CaseId::R11:
        case CaseId::R12: return Rational(1, 3);
        default: return std::nullopt;
    }
}

Rational resolve_b(CaseId c, const std::optional<Rational>& b) {
    if (c == CaseId::R11 || c == CaseId::R12) {
        if (b && *b != Rational(1, 3)) throw CaseError(to_string(c) + " has b fixed at 1/3");
        return Rational(1, 3);
    }
    if (!case_needs_b(c)) {
        if (b) throw CaseError(to_string(c) + " takes no parameter b");
        return Rational(0);
    }
    Rational bb = b ? *b : *default_b(c);
    if (bb == -1) throw CaseError("b = -1 is a degenerate line");
    if ((c == CaseId::R3 || c == CaseId::R4) && bb == -3)
        throw CaseError("b = -3 is the conic point of " + to_string(c));
    if (c == CaseId::R5 && bb != Rational(1, 2) && bb != Rational(2))
        throw CaseError("r5 is tabulated here for b = 1/2 and b = 2 only");
    return bb;
}

namespace {

CurveData family_cubic_r1(const Rational& b) {
    // D = t x^3 + (3b-1)/(2(b+1)) x^2 + (1-b)/(b+1) x + (b-3)/(6(b+1))
    CurveData d;
    Rational bp1 = b + 1;
    d.base = {(b - 3) / (6 * bp1), (1 - b) / bp1, (3 * b - 1) / (2 * bp1), Rational(0), Rational(0)};
    d.tcoef = {Rational(0), Rational(0), Rational(0), Rational(1), Rational(0)};
    d.dt_power = 3;
    return d;
}

CurveData family_quartic_r3(const Rational& b) {
    // D = t x^3 - (3b+1)/(8(b+1)) x^4 + (1-b)/(4(b+1)) x^2 - (b+3)/(24(b+1))
    CurveData d;
    Rational bp1 = b + 1;
    d.base = {-(b + 3) / (24 * bp1), Rational(0), (1 - b) / (4 * bp1), Rational(0),
              -(3 * b + 1) / (8 * bp1)};
    d.tcoef = {Rational(0), Rational(0), Rational(0), Rational(1), Rational(0)};
    d.dt_power = 3;
    return d;
}

CurveData family_quartic_r6(const Rational& b) {
    // D = t + (2b-1)/(2(b+1)) x^2 + (1-b)/(b+1) x^3 + (b-2)/(4(b+1)) x^4
    CurveData d;
    Rational bp1 = b + 1;
    d.base = {Rational(0), Rational(0), (2 * b - 1) / (2 * bp1), (1 - b) / bp1, (b - 2) / (4 * bp1)};
    d.tcoef = {Rational(1), Rational(0), Rational(0), Rational(0), Rational(0)};
    d.dt_power = 0;
    return d;
}

CurveData family_quartic_plain() {
    // D = t + x^3/3 - x^4/4
    CurveData d;
    d.base = {Rational(0), Rational(0), Rational(0), Rational(1, 3), Rational(-1, 4)};
    d.tcoef = {Rational(1), Rational(0), Rational(0), Rational(0), Rational(0)};
    d.dt_power = 0;
    return d;
}

CurveData family_cubic_plain() {
    // D = t + x^2/2 - x^3/3
    CurveData d;
    d.base = {Rational(0), Rational(0), Rational(1, 2), Rational(-1, 3), Rational(0)};
    d.tcoef = {Rational(1), Rational(0), Rational(0), Rational(0), Rational(0)};
    d.dt_power = 0;
    return d;
}

CurveData family_r5_log() {
    // D = t x^4 + x^2/2 - x/3
    CurveData d;
    d.base = {Rational(0), Rational(-1, 3), Rational(1, 2), Rational(0), Rational(0)};
    d.tcoef = {Rational(0), Rational(0), Rational(0), Rational(0), Rational(1)};
    d.dt_power = 4;
    return d;
}

CurveData family_r10() {
    // D = t x^2 - x^3/3 - 1/6
    CurveData d;
    d.base = {Rational(-1, 6), Rational(0), Rational(0), Rational(-1, 3), Rational(0)};
    d.tcoef = {Rational(0), Rational(0), Rational(1), Rational(0), Rational(0)};
    d.dt_power = 2;
    return d;
}

CurveData curve_rlv(CaseId c) {
    CurveData d;
    switch (c) {
        case CaseId::RLV2:  // t x^3 + (x - 1/3)^2
            d.base = {Rational(1, 9), Rational(-2, 3), Rational(1), Rational(0), Rational(0)};
            d.tcoef = {Rational(0), Rational(0), Rational(0), Rational(1), Rational(0)};
            d.dt_power = 3;
            break;
        case CaseId::RLV3:  // t + x^2 (x - 2)^2, via Y = x y
            d.base = {Rational(0), Rational(0), Rational(4), Rational(-4), Rational(1)};
            d.tcoef = {Rational(1), Rational(0), Rational(0), Rational(0), Rational(0)};
            d.dt_power = 0;
            break;
        case CaseId::RLV4:  // t x^4 + (x - 1/2)^2
            d.base = {Rational(1, 4), Rational(-1), Rational(1), Rational(0), Rational(0)};
            d.tcoef = {Rational(0), Rational(0), Rational(0), Rational(0), Rational(1)};
            d.dt_power = 4;
            break;
        case CaseId::RLV5:  // t x^3 - (x^2 + 1/3)^2, after x -> x^2
            d.base = {Rational(-1, 9), Rational(0), Rational(-2, 3), Rational(0), Rational(-1)};
            d.tcoef = {Rational(0), Rational(0), Rational(0), Rational(1), Rational(0)};
            d.dt_power = 3;
            break;
        case CaseId::RLV6:  // t x - (x^2 + 3)^2, after x -> x^2
            d.base = {Rational(-9), Rational(0), Rational(-6), Rational(0), Rational(-1)};
            d.tcoef = {Rational(0), Rational(1), Rational(0), Rational(0), Rational(0)};
            d.dt_power = 1;
            break;
        default: throw CaseError("curve_rlv: not an rlv case");
    }
    return d;
}

}  // namespace

CurveData curve_data(CaseId c, const std::optional<Rational>& ob) {
    if (is_region_case(c)) throw CaseError(to_string(c) + " is a 2D region case, no level polynomial");
    Rational b = resolve_b(c, ob);
    switch (c) {
        case CaseId::R1:
        case CaseId::R2:
        case CaseId::R11:
        case CaseId::R12: return family_cubic_r1(b);
        case CaseId::R3:
        case CaseId::R4: return family_quartic_r3(b);
        case CaseId::R6: return family_quartic_r6(b);
        case CaseId::R5: return b == Rational(2) ? family_r5_log() : family_quartic_plain();
        case CaseId::R7:
        case CaseId::R8:
        case CaseId::R13:
        case CaseId::R14:
        case CaseId::R15:
        case CaseId::R16: return family_quartic_plain();
        case CaseId::R0:
        case CaseId::R9:
        case CaseId::R17:
        case CaseId::R18: return family_cubic_plain();
        case CaseId::R10: return family_r10();
        case CaseId::RLV2:
        case CaseId::RLV3:
        case CaseId::RLV4:
        case CaseId::RLV5:
        case CaseId::RLV6: return curve_rlv(c);
        default: throw CaseError("curve_data: unhandled case");
    }
}

namespace {

AnnulusInterval make_interval(double lo, double hi, bool lo_is_center, std::string flo,
                              std::string fhi, std::optional<Rational> elo,
                              std::optional<Rational> ehi) {
    AnnulusInterval ai;
    ai.lo = lo;
    ai.hi = hi;
    ai.lo_is_center = lo_is_center;
    ai.lo_formula = std::move(flo);
    ai.hi_formula = std::move(fhi);
    ai.lo_exact = std::move(elo);
    ai.hi_exact = std::move(ehi);
    return ai;
}

AnnulusInterval interval_rational(Rational lo, Rational hi, std::string flo, std::string fhi) {
    return make_interval(to_double(lo), to_double(hi), true, std::move(flo), std::move(fhi), lo, hi);
}

}  // namespace

AnnulusInterval annulus_interval(CaseId c, const std::optional<Rational>& ob) {
    Rational b = is_region_case(c) ? Rational(0) : resolve_b(c, ob);
    switch (c) {
        case CaseId::R0:
        case CaseId::R9:
        case CaseId::R17:
        case CaseId::R18: return interval_rational(Rational(-1, 6), Rational(0), "-1/6", "0");
        case CaseId::R11:
        case CaseId::R12: return interval_rational(Rational(-1, 6), Rational(0), "-2b/(3(b+1))", "0");
        case CaseId::R1:
        case CaseId::R2: {
            Rational tc = -2 * b / (3 * (b + 1));
            if (b >= Rational(1, 3))
                return interval_rational(tc, Rational(0), "-2b/(3(b+1))", "0");
            if (b < -1) {
                Rational ts = 2 * (1 - 3 * b) * (1 - 3 * b) / (3 * (b + 1) * (3 - b) * (3 - b));
                return interval_rational(tc, ts, "-2b/(3(b+1))", "2(1-3b)^2/(3(b+1)(3-b)^2)");
            }
            throw CaseError("annulus interval for " + to_string(c) +
                            " is tabulated for b<-1 or b>=1/3 only");
        }
        case CaseId::R3:
        case CaseId::R4: {
            Rational tc = 2 * b / (3 * (b + 1));
            if (b > -3 && b <= Rational(-1, 3)) {
                double ts = to_double(Rational(-2) / (3 * (b + 1))) *
                            std::sqrt(to_double(-(3 * b + 1) / (b + 3)));
                return make_interval(to_double(tc), ts, true, "2b/(3(b+1))",
                                     "-2/(3(b+1)) sqrt(-(3b+1)/(b+3))", tc, std::nullopt);
            }
            return make_interval(to_double(tc), kInf, true, "2b/(3(b+1))", "inf", tc, std::nullopt);
        }
        case CaseId::R6: {
            Rational tc = -b / (4 * (b + 1));
            if (b >= 2) return interval_rational(tc, Rational(0), "-b/(4(b+1))", "0");
            if (b <= Rational(1, 2)) {
                Rational one_m_2b = 1 - 2 * b;
                Rational two_m_b = 2 - b;
                Rational ts = one_m_2b * one_m_2b * one_m_2b /
                              (4 * (b + 1) * two_m_b * two_m_b * two_m_b);
                return interval_rational(tc, ts, "-b/(4(b+1))", "(1-2b)^3/(4(b+1)(2-b)^3)");
            }
            throw CaseError("annulus interval for r6 is tabulated for b<=1/2 or b>=2 only");
        }
        case CaseId::R5:
            if (b == Rational(2))
                return interval_rational(Rational(-1, 6), Rational(0), "-1/6", "0");
            [[fallthrough]];
        case CaseId::R7:
        case CaseId::R8:
        case CaseId::R13:
        case CaseId::R14:
        case CaseId::R15:
        case CaseId::R16: return interval_rational(Rational(-1, 12), Rational(0), "-1/12", "0");
        case CaseId::R10:
            return make_interval(0.5, kInf, true, "1/2", "inf", Rational(1, 2), std::nullopt);
        case CaseId::RLV2: return interval_rational(Rational(-4, 9), Rational(0), "-4/9", "0");
        case CaseId::RLV3: return interval_rational(Rational(-1), Rational(0), "-1", "0");
        case CaseId::RLV4: return interval_rational(Rational(-1, 4), Rational(0), "-1/4", "0");
        case CaseId::RLV5:
            return make_interval(16.0 / 9.0, kInf, true, "16/9", "inf", Rational(16, 9), std::nullopt);
        case CaseId::RLV6:
            return make_interval(16.0, kInf, true, "16", "inf", Rational(16), std::nullopt);
        case CaseId::LV1:
            return make_interval(0.0, std::pow(432.0, -1.0 / 3.0), false, "0", "432^(-1/3)",
                                 Rational(0), std::nullopt);
        case CaseId::LV2:
        case CaseId::LV3:
        case CaseId::LV5:
            return make_interval(std::pow(432.0, 1.0 / 6.0), kInf, true, "432^(1/6)", "inf",
                                 std::nullopt, std::nullopt);
        case CaseId::LV4:
            return make_interval(2.0 * std::sqrt(2.0), kInf, true, "2 sqrt(2)", "inf",
                                 std::nullopt, std::nullopt);
        case CaseId::C4:
            throw CaseError("c4 interval depends on its own parameter; use c4_interval(b)");
    }
    throw CaseError("annulus_interval: unhandled case");
}

std::vector<MomentTerm> recipe(CaseId c, const std::optional<Rational>& ob) {
    using K = MomentKind;
    const Rational one(1);
    auto I = [&](int k, int mu, int tp = 0, Rational f = Rational(1)) {
        return MomentTerm{K::I, k, mu, tp, f};
    };
    auto J = [&](int k, int mu, Rational f) { return MomentTerm{K::J, k, mu, 0, f}; };
    auto L = [&](int k, int mu, Rational f) { return MomentTerm{K::Log, k, mu, 0, f}; };
    Rational b = is_region_case(c) ? Rational(0) : resolve_b(c, ob);
    switch (c) {
        case CaseId::R0: return {I(0, 0), I(0, 1, 1), I(1, 2)};
        case CaseId::R1:
        case CaseId::R12: return {I(-4, 0), I(-5, 1), I(-3, 2)};
        case CaseId::R2: return {I(-3, 0), I(-4, 1), I(-2, 2)};
        case CaseId::R3: return {I(-4, 0), I(-2, 1), I(-6, 2)};
        case CaseId::R4: return {I(-2, 0), I(-4, 1), I(0, 2)};
        case CaseId::R5:
            if (b == Rational(2))
                return {I(-5, 0), I(-4, 1), I(-7, 2), L(-5, 3, one), L(-6, 3, -one)};
            return {I(1, 0), I(0, 1), I(2, 2)};
        case CaseId::R6: return {I(0, 0), I(-1, 1), I(1, 2)};
        case CaseId::R7:
        case CaseId::R14: return {I(-1, 0), I(-2, 1), I(0, 2)};
        case CaseId::R8: return {I(-1, 0), I(-2, 1), I(1, 2, -1)};
        case CaseId::R9: return {I(0, 0), I(-1, 1), I(1, 2, -1)};
        case CaseId::R10:
            return {I(-3, 0), I(0, 1), I(3, 2), L(0, 3, Rational(2)), L(-3, 3, -one), L(-6, 3, -one)};
        case CaseId::R11: return {I(-1, 0), I(-2, 1), I(0, 2)};
        case CaseId::R13: return {I(0, 0), I(-1, 1), I(2, 2, -1)};
        case CaseId::R15: return {I(-3, 0), I(-4, 1), I(-2, 2)};
        case CaseId::R16: return {I(1, 0), I(0, 1), I(2, 2)};
        case CaseId::R17: return {I(-2, 0), I(-3, 1), I(-1, 2)};
        case CaseId::R18: return {I(0, 0), I(-1, 1), I(1, 2)};
        case CaseId::RLV2: return {I(-4, 0), I(-5, 1), J(-3, 2, one), J(-4, 2, -one)};
        case CaseId::RLV3: return {I(0, 0), I(-1, 1), J(3, 2, one), J(2, 2, -one)};
        case CaseId::RLV4: return {I(-5, 0), I(-6, 1), J(-4, 2, one), J(-5, 2, -one)};
        case CaseId::RLV5:
            return {I(-4, 0, 0, Rational(2)), I(-6, 1, 0, Rational(2)), J(-2, 2, Rational(2)),
                    J(-4, 2, Rational(-2))};
        case CaseId::RLV6:
            return {I(-2, 0, 0, Rational(2)), I(-4, 1, 0, Rational(2)), J(0, 2, Rational(2)),
                    J(-2, 2, Rational(-2))};
        default: throw CaseError("recipe: " + to_string(c) + " has no 1D moment recipe");
    }
}

int mu_count(CaseId c, const std::optional<Rational>& b) {
    if (c == CaseId::R10 || c == CaseId::C4) return 4;
    if (c == CaseId::R5 && b && *b == Rational(2)) return 4;
    return 3;
}

double oval_reference_x(CaseId c, double t) {
    if (c == CaseId::R10) return 2.0 * t;
    return 1.0;
}

double representative_t(CaseId c, const std::optional<Rational>& b) {
    if (c == CaseId::C4) throw CaseError("representative_t: use c4 helpers");
    AnnulusInterval ai = annulus_interval(c, b);
    if (std::isinf(ai.hi)) return ai.lo + 1.0;
    return 0.5 * (ai.lo + ai.hi);
}

LVExponentPair lv_exponents(CaseId c) {
    switch (c) {
        case CaseId::LV1: return {Rational(2, 3), Rational(1, 3)};
        case CaseId::LV2: return {Rational(-1, 6), Rational(-1, 3)};
        case CaseId::LV3: return {Rational(-1, 6), Rational(-1, 2)};
        case CaseId::LV4: return {Rational(-1, 4), Rational(-1, 2)};
        case CaseId::LV5: return {Rational(-1, 3), Rational(-1, 2)};
        default: throw CaseError("lv_exponents: not an lv region case");
    }
}

}  // namespace melnikov
