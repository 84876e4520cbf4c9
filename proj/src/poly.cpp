#include "melnikov/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace melnikov {

namespace {

std::string trim_ws(std::string_view s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    if (b == std::string_view::npos) return {};
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Rational parse_rational(std::string_view sv) {
    std::string s = trim_ws(sv);
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    if (s.front() == '+') s.erase(0, 1);  // cpp_int rejects an explicit plus
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw std::invalid_argument("parse_rational: malformed decimal");
        BigInt num(digits);
        BigInt den(1);
        for (size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rational(num, den);
    }
    return Rational(BigInt(s));
}

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

GaussianRational parse_gaussian(std::string_view sv) {
    std::string s = trim_ws(sv);
    if (s.empty()) throw std::invalid_argument("parse_gaussian: empty string");
    // locate the +/- that splits real and imaginary parts (skip a leading sign)
    size_t split = std::string::npos;
    for (size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/' && s[i - 1] != 'e') split = i;
    }
    auto parse_im = [](std::string part) -> Rational {
        // strip the trailing 'i'
        if (part.empty() || part.back() != 'i') throw std::invalid_argument("parse_gaussian: missing i");
        part.pop_back();
        if (part.empty() || part == "+") return Rational(1);
        if (part == "-") return Rational(-1);
        return parse_rational(part);
    };
    if (s.back() == 'i') {
        if (split == std::string::npos) return {Rational(0), parse_im(s)};
        return {parse_rational(s.substr(0, split)), parse_im(s.substr(split))};
    }
    if (split != std::string::npos) throw std::invalid_argument("parse_gaussian: malformed complex literal");
    return {parse_rational(s), Rational(0)};
}

std::string to_string(const GaussianRational& z) {
    std::string s = to_string(z.re);
    s += (z.im.sign() < 0) ? "-" : "+";
    Rational a = abs(z.im);
    s += to_string(a) + "i";
    return s;
}

RealPoly::RealPoly(const RationalPoly& q) {
    c.reserve(q.size());
    for (const auto& x : q) c.push_back(to_double(x));
    exact = q;
    trim();
}

void RealPoly::trim() {
    while (!c.empty() && c.back() == 0.0) {
        c.pop_back();
        if (exact) exact->pop_back();
    }
}

RealPoly RealPoly::derivative() const {
    RealPoly d;
    for (size_t i = 1; i < c.size(); ++i) d.c.push_back(static_cast<double>(i) * c[i]);
    if (exact) d.exact = derivative_exact(*exact);
    return d;
}

double RealPoly::root_bound() const {
    if (c.size() <= 1) return 1.0;
    double m = 0;
    for (size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, std::abs(c[i] / c.back()));
    return 1.0 + m;
}

Rational eval_exact(const RationalPoly& p, const Rational& x) {
    Rational v(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

RationalPoly derivative_exact(const RationalPoly& p) {
    RationalPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(Rational(static_cast<long>(i)) * p[i]);
    return d;
}

static void trim_exact(RationalPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

RationalPoly poly_rem(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly r = a;
    trim_exact(r);
    RationalPoly d = b;
    trim_exact(d);
    if (d.empty()) throw PolyError("poly_rem: division by zero polynomial");
    while (r.size() >= d.size() && !r.empty()) {
        Rational q = r.back() / d.back();
        size_t shift = r.size() - d.size();
        for (size_t i = 0; i < d.size(); ++i) r[shift + i] -= q * d[i];
        r.pop_back();
        trim_exact(r);
    }
    return r;
}

RationalPoly poly_gcd(RationalPoly a, RationalPoly b) {
    trim_exact(a);
    trim_exact(b);
    while (!b.empty()) {
        RationalPoly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& x : a) x /= lead;
    }
    return a;
}

int gcd_degree(const RationalPoly& p) {
    RationalPoly q = p;
    trim_exact(q);
    if (q.size() <= 1) return 0;
    RationalPoly g = poly_gcd(q, derivative_exact(q));
    return static_cast<int>(g.size()) - 1;
}

SturmChain::SturmChain(const RationalPoly& p) {
    RationalPoly sf = p;
    trim_exact(sf);
    if (sf.empty()) throw PolyError("SturmChain: zero polynomial");
    RationalPoly g = poly_gcd(sf, derivative_exact(sf));
    if (g.size() > 1) {
        // divide out repeated factors so the chain counts distinct roots
        RationalPoly quot;
        RationalPoly r = sf;
        quot.assign(sf.size() - g.size() + 1, Rational(0));
        while (r.size() >= g.size() && !r.empty()) {
            Rational q = r.back() / g.back();
            size_t shift = r.size() - g.size();
            quot[shift] = q;
            for (size_t i = 0; i < g.size(); ++i) r[shift + i] -= q * g[i];
            r.pop_back();
            trim_exact(r);
        }
        sf = quot;
        trim_exact(sf);
    }
    seq.push_back(sf);
    if (sf.size() > 1) seq.push_back(derivative_exact(sf));
    while (seq.back().size() > 1) {
        RationalPoly r = poly_rem(seq[seq.size() - 2], seq.back());
        if (r.empty()) break;
        for (auto& x : r) x = -x;
        seq.push_back(std::move(r));
    }
}

int SturmChain::variations(const Rational& x) const {
    int v = 0;
    int prev = 0;
    for (const auto& p : seq) {
        int s = eval_exact(p, x).sign();
        if (s != 0) {
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
    }
    return v;
}

int SturmChain::count_roots(const Rational& lo, const Rational& hi) const {
    if (lo >= hi) return 0;
    return variations(lo) - variations(hi);
}

namespace {

std::vector<RootBracket> isolate_exact(const RationalPoly& p, double dlo, double dhi,
                                       const IsolateOptions&) {
    SturmChain chain(p);
    RationalPoly gcd_part = poly_gcd(p, derivative_exact(p));
    std::optional<SturmChain> multi_chain;
    if (gcd_part.size() > 1) multi_chain.emplace(gcd_part);

    Rational lo = rational_from_double(dlo);
    Rational hi = rational_from_double(dhi);
    std::vector<std::pair<Rational, Rational>> work{{lo, hi}};
    std::vector<std::pair<Rational, Rational>> isolated;
    while (!work.empty()) {
        auto [a, b] = work.back();
        work.pop_back();
        int n = chain.count_roots(a, b);
        if (n == 0) continue;
        if (n == 1) {
            isolated.emplace_back(a, b);
            continue;
        }
        Rational mid = (a + b) / 2;
        // nudge off an exact root of the chain head
        while (eval_exact(chain.seq.front(), mid).is_zero()) mid = (a + mid) / 2;
        work.emplace_back(a, mid);
        work.emplace_back(mid, b);
    }
    std::sort(isolated.begin(), isolated.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<RootBracket> out;
    for (auto& [a, b] : isolated) {
        RootBracket rb;
        rb.lo = to_double(a);
        rb.hi = to_double(b);
        rb.multiple = multi_chain && multi_chain->count_roots(a, b) > 0;
        out.push_back(rb);
    }
    return out;
}

std::vector<RootBracket> isolate_grid(const RealPoly& p, double lo, double hi,
                                      const IsolateOptions& opt) {
    const int n = std::max(opt.grid, 16);
    std::vector<RootBracket> out;
    double prev_x = lo;
    double prev_v = p(lo);
    double scale = 0;
    for (int i = 0; i <= n; ++i) scale = std::max(scale, std::abs(p(lo + (hi - lo) * i / n)));
    if (scale == 0) scale = 1;

    RealPoly dp = p.derivative();
    for (int i = 1; i <= n; ++i) {
        double x = lo + (hi - lo) * i / n;
        double v = p(x);
        if (prev_v == 0.0) {
            out.push_back({prev_x - (hi - lo) / n * 0.5, prev_x + (hi - lo) / n * 0.5, false});
        } else if (v != 0.0 && std::signbit(v) != std::signbit(prev_v)) {
            out.push_back({prev_x, x, false});
        } else if (i >= 2 && i < n) {
            // interior |p| dip without sign change: suspected even-order root
            double xm = prev_x;
            double vm = prev_v;
            double vl = p(lo + (hi - lo) * (i - 2) / n);
            if (std::abs(vm) < std::abs(vl) && std::abs(vm) < std::abs(v) &&
                std::abs(vm) < opt.multiple_tol * scale && std::abs(dp(xm)) < opt.multiple_tol * scale) {
                out.push_back({lo + (hi - lo) * (i - 2) / n, x, true});
            }
        }
        prev_x = x;
        prev_v = v;
    }
    // merge overlaps from the dip detector
    std::vector<RootBracket> merged;
    for (auto& b : out) {
        if (!merged.empty() && b.lo < merged.back().hi) {
            merged.back().hi = std::max(merged.back().hi, b.hi);
            merged.back().multiple |= b.multiple;
        } else {
            merged.push_back(b);
        }
    }
    return merged;
}

}  // namespace

std::vector<RootBracket> isolate_real_roots(const RealPoly& p, double lo, double hi,
                                            const IsolateOptions& opt) {
    if (p.is_zero()) throw PolyError("isolate_real_roots: zero polynomial");
    if (!(lo < hi)) throw PolyError("isolate_real_roots: empty interval");
    // endpoint perturbation so roots sitting exactly on lo/hi are not lost
    double pad = std::max(1e-12, 1e-12 * (hi - lo));
    lo -= pad;
    hi += pad;
    if (p.degree() < 1) return {};
    if (p.exact) return isolate_exact(*p.exact, lo, hi, opt);
    return isolate_grid(p, lo, hi, opt);
}

namespace {

double polish_newton(const RealPoly& p, const RealPoly& dp, double x, double lo, double hi) {
    for (int it = 0; it < 4; ++it) {
        double d = dp(x);
        if (d == 0.0) break;
        double nx = x - p(x) / d;
        if (!(nx >= lo && nx <= hi)) break;
        x = nx;
    }
    return x;
}

double bisect_monotone(const RealPoly& p, double a, double b) {
    double fa = p(a);
    if (fa == 0.0) return a;
    if (p(b) == 0.0) return b;
    for (int it = 0; it < 120 && b - a > 1e-17 * std::max(1.0, std::abs(a)); ++it) {
        double mid = 0.5 * (a + b);
        double fm = p(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(fa)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::vector<double> real_roots(const RealPoly& p, double lo, double hi) {
    std::vector<double> out;
    int deg = p.degree();
    if (deg < 1) return out;
    if (deg == 1) {
        double r = -p.c[0] / p.c[1];
        if (r >= lo && r <= hi) out.push_back(r);
        return out;
    }
    if (deg == 2) {
        double a = p.c[2], b = p.c[1], c = p.c[0];
        double disc = b * b - 4 * a * c;
        if (disc < 0) return out;
        double sq = std::sqrt(disc);
        double q = -0.5 * (b + (b >= 0 ? sq : -sq));
        double r1 = q / a;
        double r2 = (q != 0.0) ? c / q : r1;
        if (r1 > r2) std::swap(r1, r2);
        for (double r : {r1, r2})
            if (r >= lo && r <= hi && (out.empty() || r != out.back())) out.push_back(r);
        return out;
    }
    RealPoly dp = p.derivative();
    std::vector<double> knots = real_roots(dp, lo, hi);
    knots.insert(knots.begin(), lo);
    knots.push_back(hi);
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        double a = knots[i], b = knots[i + 1];
        if (!(b > a)) continue;
        double fa = p(a), fb = p(b);
        if (fa == 0.0) {
            if (out.empty() || out.back() != a) out.push_back(a);
            continue;
        }
        if (fb == 0.0 || std::signbit(fa) == std::signbit(fb)) continue;
        double r = bisect_monotone(p, a, b);
        r = polish_newton(p, dp, r, a, b);
        if (out.empty() || r > out.back()) out.push_back(r);
    }
    // hi itself as a root of the last piece
    if (!knots.empty() && p(hi) == 0.0 && (out.empty() || out.back() != hi)) out.push_back(hi);
    return out;
}

double refine_root(const RealPoly& p, const RootBracket& b, double tol) {
    double lo = b.lo, hi = b.hi;
    double flo = p(lo), fhi = p(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi)) {
        if (!b.multiple) throw PolyError("refine_root: no sign change in bracket");
        // even-order contact: the sign change is in p'
        return refine_root(p.derivative(), {lo, hi, false}, tol);
    }
    // bisection with a Newton polish at the end
    for (int it = 0; it < 200 && (hi - lo) > tol * std::max(1.0, std::abs(lo)); ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = p(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    RealPoly dp = p.derivative();
    for (int it = 0; it < 4; ++it) {
        double d = dp(x);
        if (d == 0.0) break;
        double step = p(x) / d;
        double nx = x - step;
        if (nx < lo || nx > hi) break;
        x = nx;
    }
    return x;
}

}  // namespace melnikov
