#include "melnikov/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace melnikov {

std::string to_string(ReversibleLabel l) {
    switch (l) {
        case ReversibleLabel::R0: return "r0";
        case ReversibleLabel::R1: return "r1";
        case ReversibleLabel::R2: return "r2";
        case ReversibleLabel::R3: return "r3";
        case ReversibleLabel::R4: return "r4";
        case ReversibleLabel::R5: return "r5";
        case ReversibleLabel::R6: return "r6";
        case ReversibleLabel::R7: return "r7";
        case ReversibleLabel::R8: return "r8";
        case ReversibleLabel::R9: return "r9";
        case ReversibleLabel::R10: return "r10";
        case ReversibleLabel::R11: return "r11";
        case ReversibleLabel::R12: return "r12";
        case ReversibleLabel::R13: return "r13";
        case ReversibleLabel::R14: return "r14";
        case ReversibleLabel::R15: return "r15";
        case ReversibleLabel::R16: return "r16";
        case ReversibleLabel::R17: return "r17";
        case ReversibleLabel::R18: return "r18";
        case ReversibleLabel::R19: return "r19";
        case ReversibleLabel::R20: return "r20";
        case ReversibleLabel::R21: return "r21";
        case ReversibleLabel::R22: return "r22";
        case ReversibleLabel::DegenerateLine: return "DegenerateLine";
        case ReversibleLabel::HigherGenus: return "HigherGenus";
    }
    return "?";
}

FirstIntegralForm first_integral_form(const ReversibleParams& p) {
    const Rational& a = p.a;
    const Rational& b = p.b;
    const bool special = (a == -1 && b == -1) || (b == 0 && (a == 2 || a == -2));
    if (a == b) throw DegenerateLineError("a=b", special);
    if (a + b + 2 == 0) throw DegenerateLineError("a+b+2=0", special);
    if (b == -1) throw DegenerateLineError("b=-1", special);
    if (a - 3 * b - 2 == 0) throw DegenerateLineError("a-3b-2=0", special);

    FirstIntegralForm f;
    f.lambda = -(a + b + 2) / (a - b);
    Rational g = Rational(1) / (8 * (a - b) * (a - b));
    f.A = g * (a + b - 2) / (a - 3 * b - 2);
    f.B = g * 2 * (b - 1) / (b + 1);
    f.C = g * (a - 3 * b + 2) / (a + b + 2);
    // lambda in {0,-1,-2} cannot happen off the four lines
    if (f.lambda == 0 || f.lambda == -1 || f.lambda == -2)
        throw std::logic_error("first_integral_form: impossible exponent");
    if ((f.A.is_zero() && f.C.is_zero()) || (f.A.is_zero() && f.B.is_zero()) ||
        (f.B.is_zero() && f.C.is_zero()))
        throw std::logic_error("first_integral_form: two coefficients vanish");
    return f;
}

GenusVerdict genus_from_signature(const GenusSignature& s) {
    if (s.p <= s.q || s.q < 1 || s.p == 2 * s.q || std::gcd(s.p, s.q) != 1)
        throw std::invalid_argument("genus_from_signature: invalid signature");
    if (s.a_zero && s.c_zero)
        throw std::invalid_argument("genus_from_signature: A and C cannot both vanish");
    long d;
    if (s.c_zero) {
        if (2 * s.q > s.p) d = s.q;                 // (1.4)
        else if (s.q % 2 == 0) d = s.p - s.q;       // (1.5)
        else d = s.p - s.q + 1;                     // (1.6)
    } else if (s.a_zero) {
        d = s.p;
    } else {
        d = std::max(2 * s.q, s.p);                 // (1.3)
    }
    if (d <= 2) return GenusVerdict::Zero;
    if (d <= 4) return GenusVerdict::One;
    return GenusVerdict::Higher;
}

namespace {

double residual_point(const ReversibleParams& p, const Rational& a0, const Rational& b0) {
    double na = std::abs(to_double(p.a - a0));
    double nb = std::abs(to_double(p.b - b0));
    double s = 1.0 + std::abs(to_double(a0)) + std::abs(to_double(b0));
    return std::max(na, nb) / s;
}

double residual_line(const Rational& expr, const ReversibleParams& p) {
    double s = 1.0 + std::abs(to_double(p.a)) + std::abs(to_double(p.b));
    return std::abs(to_double(expr)) / s;
}

struct PointCase {
    ReversibleLabel label;
    Rational a, b;
    const char* cond;
};

const std::vector<PointCase>& point_cases() {
    static const std::vector<PointCase> pts = {
        {ReversibleLabel::R0, Rational(-1), Rational(-1), "(a,b)=(-1,-1)"},
        {ReversibleLabel::R7, Rational(5, 2), Rational(-1, 2), "(a,b)=(5/2,-1/2)"},
        {ReversibleLabel::R8, Rational(-7, 2), Rational(-1, 2), "(a,b)=(-7/2,-1/2)"},
        {ReversibleLabel::R9, Rational(-8), Rational(-2), "(a,b)=(-8,-2)"},
        {ReversibleLabel::R10, Rational(4), Rational(-2), "(a,b)=(4,-2)"},
        {ReversibleLabel::R11, Rational(-17), Rational(-5), "(a,b)=(-17,-5)"},
        {ReversibleLabel::R12, Rational(7), Rational(-5), "(a,b)=(7,-5)"},
        {ReversibleLabel::R13, Rational(-7), Rational(-5, 3), "(a,b)=(-7,-5/3)"},
        {ReversibleLabel::R14, Rational(11, 3), Rational(-5, 3), "(a,b)=(11/3,-5/3)"},
        {ReversibleLabel::R15, Rational(-23), Rational(-7), "(a,b)=(-23,-7)"},
        {ReversibleLabel::R16, Rational(9), Rational(-7), "(a,b)=(9,-7)"},
        {ReversibleLabel::R17, Rational(13), Rational(5), "(a,b)=(13,5)"},
        {ReversibleLabel::R18, Rational(-3), Rational(5), "(a,b)=(-3,5)"},
        {ReversibleLabel::R19, Rational(-11), Rational(-3), "(a,b)=(-11,-3)"},
        {ReversibleLabel::R20, Rational(5), Rational(-3), "(a,b)=(5,-3)"},
        {ReversibleLabel::R21, Rational(2), Rational(0), "(a,b)=(2,0)"},
        {ReversibleLabel::R22, Rational(-2), Rational(0), "(a,b)=(-2,0)"},
    };
    return pts;
}

struct LineCase {
    ReversibleLabel label;
    const char* cond;
    // expr(a,b) == 0 on the line
    Rational (*expr)(const Rational&, const Rational&);
    // b values to exclude (conic points)
    bool (*excluded)(const Rational&);
};

bool no_exclusion(const Rational&) { return false; }
bool exclude_b_minus3(const Rational& b) { return b == -3; }

const std::vector<LineCase>& line_cases() {
    static const std::vector<LineCase> lines = {
        {ReversibleLabel::R1, "a=2b+1",
         [](const Rational& a, const Rational& b) -> Rational { return a - 2 * b - 1; },
         no_exclusion},
        {ReversibleLabel::R2, "a=-1",
         [](const Rational& a, const Rational&) -> Rational { return a + 1; }, no_exclusion},
        {ReversibleLabel::R3, "a=5b+4",
         [](const Rational& a, const Rational& b) -> Rational { return a - 5 * b - 4; },
         exclude_b_minus3},
        {ReversibleLabel::R4, "a=-3b-4",
         [](const Rational& a, const Rational& b) -> Rational { return a + 3 * b + 4; },
         exclude_b_minus3},
        {ReversibleLabel::R5, "a=(5/3)b+2/3",
         [](const Rational& a, const Rational& b) -> Rational { return 3 * a - 5 * b - 2; },
         no_exclusion},
        {ReversibleLabel::R6, "a=(1/3)b-2/3",
         [](const Rational& a, const Rational& b) -> Rational { return 3 * a - b + 2; },
         no_exclusion},
    };
    return lines;
}

// excluded lines, with the special conic/elliptic points already peeled off
std::optional<std::string> on_excluded_line(const ReversibleParams& p) {
    if (p.a == p.b) return "a=b";
    if (p.a + p.b + 2 == 0) return "a+b+2=0";
    if (p.b == -1) return "b=-1";
    if (p.a - 3 * p.b - 2 == 0) return "a-3b-2=0";
    return std::nullopt;
}

ReversibleCase higher_genus_verdict(const ReversibleParams& p) {
    // computed, not assumed: reduce lambda to -p/q and run the enumeration
    FirstIntegralForm f = first_integral_form(p);
    Rational lambda = f.lambda;
    bool a_zero = f.A.is_zero();
    bool c_zero = f.C.is_zero();
    if (lambda > -1) {
        lambda = -2 - lambda;   // bi-rational flip; A and C swap roles
        std::swap(a_zero, c_zero);
    }
    ReversibleCase big;
    big.label = ReversibleLabel::HigherGenus;
    big.matched_condition = "off all Theorem-1 conditions";
    BigInt num = numerator(lambda);
    BigInt den = denominator(lambda);
    if (abs(num) > 1000000 || den > 1000000)
        return big;  // reduced degree is far beyond 4 either way
    GenusSignature s;
    s.p = -num.convert_to<long>();
    s.q = den.convert_to<long>();
    s.a_zero = a_zero;
    s.c_zero = c_zero;
    GenusVerdict g = genus_from_signature(s);
    ReversibleCase out;
    out.label = ReversibleLabel::HigherGenus;
    out.matched_condition = (g == GenusVerdict::Higher) ? "off all Theorem-1 conditions"
                                                        : "off all Theorem-1 conditions (genus "
                                                          + std::string(g == GenusVerdict::Zero ? "0" : "1")
                                                          + " signature - inconsistency, reported)";
    return out;
}

}  // namespace

ReversibleCase classify_reversible(const ReversibleParams& p, const Rational& tol) {
    const bool exact = tol.is_zero();
    const double dtol = to_double(tol);

    struct Hit {
        ReversibleLabel label;
        std::string cond;
        double residual;
    };
    std::vector<Hit> hits;

    for (const auto& pc : point_cases()) {
        if (exact) {
            if (p.a == pc.a && p.b == pc.b) hits.push_back({pc.label, pc.cond, 0.0});
        } else {
            double r = residual_point(p, pc.a, pc.b);
            if (r <= dtol) hits.push_back({pc.label, pc.cond, r});
        }
    }
    if (hits.empty()) {
        for (const auto& lc : line_cases()) {
            Rational e = lc.expr(p.a, p.b);
            if (lc.excluded(p.b)) continue;
            if (p.b == -1) continue;  // stays on the excluded line
            if (exact) {
                if (e.is_zero()) hits.push_back({lc.label, lc.cond, 0.0});
            } else {
                double r = residual_line(e, p);
                if (r <= dtol) hits.push_back({lc.label, lc.cond, r});
            }
        }
    }
    if (hits.size() > 1) {
        std::vector<std::string> cands;
        for (auto& h : hits) cands.push_back(h.cond);
        throw AmbiguousClassification(std::move(cands));
    }
    if (hits.size() == 1) {
        return {hits[0].label, hits[0].cond, hits[0].residual, std::nullopt};
    }

    if (auto line = on_excluded_line(p)) {
        ReversibleCase out;
        out.label = ReversibleLabel::DegenerateLine;
        out.matched_condition = *line;
        out.line = line;
        return out;
    }
    return higher_genus_verdict(p);
}

std::string to_string(LVLabel l) {
    switch (l) {
        case LVLabel::RLV0: return "rlv0";
        case LVLabel::RLV1: return "rlv1";
        case LVLabel::RLV2: return "rlv2";
        case LVLabel::RLV3: return "rlv3";
        case LVLabel::RLV4: return "rlv4";
        case LVLabel::RLV5: return "rlv5";
        case LVLabel::RLV6: return "rlv6";
        case LVLabel::LV1: return "lv1";
        case LVLabel::LV2: return "lv2";
        case LVLabel::LV3: return "lv3";
        case LVLabel::LV4: return "lv4";
        case LVLabel::LV5: return "lv5";
        case LVLabel::Reversible: return "Reversible";
        case LVLabel::NotGenusOne: return "NotGenusOne";
    }
    return "?";
}

namespace {

struct LVCondition {
    LVLabel label;
    int branch;  // 0 for rlv, +1/-1 for lv pairs
    const char* cond;
    GaussianRational (*expr)(const GaussianRational&, const GaussianRational&);
};

GaussianRational lv_lin(const GaussianRational& A, const GaussianRational& B, long c,
                        const Rational& re, const Rational& im, int sgn) {
    // c*A*B + (re + sgn*im*i) * conj(A)^2
    GaussianRational Abar2 = A.conj() * A.conj();
    GaussianRational coef(re, sgn > 0 ? im : -im);
    return Rational(c) * (A * B) + coef * Abar2;
}

const std::vector<LVCondition>& lv_conditions() {
    static const std::vector<LVCondition> conds = {
        {LVLabel::RLV2, 0, "2AB-conj(A)^2=0",
         [](const GaussianRational& A, const GaussianRational& B) {
             return lv_lin(A, B, 2, Rational(-1), Rational(0), +1);
         }},
        {LVLabel::RLV3, 0, "AB-3conj(A)^2=0",
         [](const GaussianRational& A, const GaussianRational& B) {
             return lv_lin(A, B, 1, Rational(-3), Rational(0), +1);
         }},
        {LVLabel::RLV4, 0, "5AB-3conj(A)^2=0",
         [](const GaussianRational& A, const GaussianRational& B) {
             return lv_lin(A, B, 5, Rational(-3), Rational(0), +1);
         }},
        {LVLabel::RLV5, 0, "5AB-conj(A)^2=0",
         [](const GaussianRational& A, const GaussianRational& B) {
             return lv_lin(A, B, 5, Rational(-1), Rational(0), +1);
         }},
        {LVLabel::RLV6, 0, "3AB+conj(A)^2=0",
         [](const GaussianRational& A, const GaussianRational& B) {
             return lv_lin(A, B, 3, Rational(1), Rational(0), +1);
         }},
        {LVLabel::LV1, +1, "AB+(1+2i)conj(A)^2=0",
         [](const GaussianRational& A, const GaussianRational& B) {
             return lv_lin(A, B, 1, Rational(1), Rational(2), +1);
         }},
        {LVLabel::LV1, -1, "AB+(1-2i)conj(A)^2=0",
         [](const GaussianRational& A, const GaussianRational& B) {
             return lv_lin(A, B, 1, Rational(1), Rational(2), -1);
         }},
        {LVLabel::LV2, +1, "169AB-(101+28i)conj(A)^2=0",
         [](const GaussianRational& A, const GaussianRational& B) {
             return lv_lin(A, B, 169, Rational(-101), Rational(-28), +1);
         }},
        {LVLabel::LV2, -1, "169AB-(101-28i)conj(A)^2=0",
         [](const GaussianRational& A, const GaussianRational& B) {
             return lv_lin(A, B, 169, Rational(-101), Rational(-28), -1);
         }},
        {LVLabel::LV3, +1, "289AB-(151+42i)conj(A)^2=0",
         [](const GaussianRational& A, const GaussianRational& B) {
             return lv_lin(A, B, 289, Rational(-151), Rational(-42), +1);
         }},
        {LVLabel::LV3, -1, "289AB-(151-42i)conj(A)^2=0",
         [](const GaussianRational& A, const GaussianRational& B) {
             return lv_lin(A, B, 289, Rational(-151), Rational(-42), -1);
         }},
        {LVLabel::LV5, +1, "841AB-(349+12i)conj(A)^2=0",
         [](const GaussianRational& A, const GaussianRational& B) {
             return lv_lin(A, B, 841, Rational(-349), Rational(-12), +1);
         }},
        {LVLabel::LV5, -1, "841AB-(349-12i)conj(A)^2=0",
         [](const GaussianRational& A, const GaussianRational& B) {
             return lv_lin(A, B, 841, Rational(-349), Rational(-12), -1);
         }},
    };
    return conds;
}

// lv4 carries the irrational coefficient 60*sqrt(2); test the squared form
// (1681AB - 783 conj(A)^2)^2 + 7200 conj(A)^4 = 0 exactly, pick the branch
// numerically afterwards.
GaussianRational lv4_squared(const GaussianRational& A, const GaussianRational& B) {
    GaussianRational Abar2 = A.conj() * A.conj();
    GaussianRational L = Rational(1681) * (A * B) - Rational(783) * Abar2;
    return L * L + Rational(7200) * (Abar2 * Abar2);
}

double gnorm(const GaussianRational& z) { return std::sqrt(to_double(z.norm2())); }

}  // namespace

LVCase classify_lv(const LVParams& p, double tol) {
    const GaussianRational& A = p.A;
    const GaussianRational& B = p.B;
    const bool exact = tol <= 0.0;

    if (A.is_zero() && B.is_zero()) return {LVLabel::NotGenusOne, 0, "A=B=0 (linear center)", 0, std::nullopt};
    const double scale = std::pow(gnorm(A) + gnorm(B), 2);

    if (exact ? A.is_zero() : gnorm(A) / (gnorm(A) + gnorm(B)) <= tol)
        return {LVLabel::RLV1, 0, "A=0 (Hamiltonian triangle)", exact ? 0 : gnorm(A), std::nullopt};

    GaussianRational a3b = A * A * A * B;
    Rational b_normal = a3b.re / (A.norm2() * A.norm2());  // valid when a3b is real

    if (exact ? B.is_zero() : gnorm(B) / (gnorm(A) + gnorm(B)) <= tol)
        return {LVLabel::RLV0, 0, "B=0 (isochronous S1)", exact ? 0 : gnorm(B), b_normal};

    struct Hit {
        LVLabel label;
        int branch;
        std::string cond;
        double residual;
    };
    std::vector<Hit> hits;
    for (const auto& c : lv_conditions()) {
        GaussianRational e = c.expr(A, B);
        if (exact) {
            if (e.is_zero()) hits.push_back({c.label, c.branch, c.cond, 0.0});
        } else {
            double r = gnorm(e) / (1681.0 * scale);
            if (r <= tol) hits.push_back({c.label, c.branch, c.cond, r});
        }
    }
    {
        GaussianRational e = lv4_squared(A, B);
        bool match = exact ? e.is_zero() : gnorm(e) / std::pow(1681.0 * scale, 2) <= tol;
        if (match) {
            // branch sign from L / (i conj(A)^2) evaluated in doubles
            GaussianRational Abar2 = A.conj() * A.conj();
            GaussianRational L = Rational(1681) * (A * B) - Rational(783) * Abar2;
            double lre = to_double(L.re), lim = to_double(L.im);
            double wre = to_double(Abar2.re), wim = to_double(Abar2.im);
            // L / (i w) = (lre + i lim) * conj(i w) / |w|^2 ; sign of real part
            double re_part = lre * wim + lim * wre;
            hits.push_back({LVLabel::LV4, re_part >= 0 ? +1 : -1,
                            "1681AB-(783+-60sqrt(2)i)conj(A)^2=0",
                            exact ? 0.0 : gnorm(e) / std::pow(1681.0 * scale, 2)});
        }
    }

    if (hits.size() > 1) {
        std::vector<std::string> cands;
        for (auto& h : hits) cands.push_back(h.cond);
        throw AmbiguousClassification(std::move(cands));
    }
    if (hits.size() == 1) {
        LVCase out{hits[0].label, hits[0].branch, hits[0].cond, hits[0].residual, std::nullopt};
        if (out.label >= LVLabel::RLV2 && out.label <= LVLabel::RLV6 && a3b.is_real())
            out.reversible_b = b_normal;
        return out;
    }

    bool a3b_real = exact ? a3b.is_real()
                          : std::abs(to_double(a3b.im)) / (std::pow(gnorm(A), 3) * gnorm(B) + 1e-300) <= tol;
    if (a3b_real) return {LVLabel::Reversible, 0, "A^3 B real, no genus-one condition", 0, b_normal};
    return {LVLabel::NotGenusOne, 0, "", 0, std::nullopt};
}

LVExponents lv_involution(const LVExponents& e) {
    Rational s = e.lambda + e.mu + 1;
    if (s.is_zero()) throw std::invalid_argument("lv_involution: lambda+mu+1=0");
    return {-e.lambda / s, -e.mu / s};
}

namespace {

bool in_region1(const LVExponents& e) {
    return e.lambda > 0 && e.lambda <= 1 && e.mu > 0 && e.mu <= 1;
}
bool in_region2(const LVExponents& e) {
    return e.lambda < 0 && e.mu < 0 && e.lambda + e.mu + 1 > 0;
}

}  // namespace

LVNormalized lv_normalize(const LVExponents& start) {
    LVExponents e = start;
    Rational center_cond = e.lambda * e.mu * (e.lambda + e.mu + 1);
    if (center_cond.is_zero())
        throw std::invalid_argument("lv_normalize: lambda*mu*(lambda+mu+1)=0, first integral not algebraic");
    if (center_cond.sign() < 0)
        throw std::invalid_argument("lv_normalize: critical point is not a center for these exponents");

    LVNormalized out;
    for (int guard = 0; guard < 8; ++guard) {
        if (in_region1(e)) { out.region = 1; break; }
        if (in_region2(e)) { out.region = 2; break; }
        if (e.lambda > 0 && e.mu > 0) {
            if (e.lambda >= e.mu) {
                out.steps.push_back({"absorb_x", Rational(1) / e.lambda});
                e = {Rational(1) / e.lambda, e.mu / e.lambda};
            } else {
                out.steps.push_back({"absorb_y", Rational(1) / e.mu});
                e = {e.lambda / e.mu, Rational(1) / e.mu};
            }
        } else if (e.lambda < 0 && e.mu > 0) {
            out.steps.push_back({"absorb_x", Rational(1) / e.lambda});
            e = {Rational(1) / e.lambda, e.mu / e.lambda};
        } else if (e.mu < 0 && e.lambda > 0) {
            out.steps.push_back({"absorb_y", Rational(1) / e.mu});
            e = {e.lambda / e.mu, Rational(1) / e.mu};
        } else {
            // both negative with lambda+mu+1 < 0 is not a center; guarded above
            out.steps.push_back({"invert", Rational(-1) / (e.lambda + e.mu + 1)});
            e = lv_involution(e);
        }
    }
    if (!in_region1(e) && !in_region2(e))
        throw std::logic_error("lv_normalize: did not reach a normal region");
    out.exponents = e;
    return out;
}

DiophantineResult solve_genus_diophantine(long bound) {
    if (bound < 6) throw std::invalid_argument("solve_genus_diophantine: bound must be >= 6");
    DiophantineResult res;
    for (long p = 1; p <= bound; ++p)
        for (long q = p + 1; q <= bound; ++q)
            for (long r = q + 1; r <= bound; ++r) {
                if ((p + r) % q || (q + r) % p || (p + q) % r) continue;
                if (std::gcd(std::gcd(p, q), r) != 1) continue;
                res.triples.push_back({p, q, r});
            }
    // closed form: alpha*beta*gamma = 2 + alpha + beta + gamma, alpha>beta>gamma>=1
    for (long g = 1; g <= 8 && res.alpha_beta_gamma[0] == 0; ++g)
        for (long b = g + 1; b <= 64; ++b) {
            long num = 2 + b + g;
            long den = b * g - 1;
            if (den <= 0) continue;
            if (num % den) continue;
            long a = num / den;
            if (a > b) {
                res.alpha_beta_gamma = {a, b, g};
                break;
            }
        }
    return res;
}

}  // namespace melnikov
