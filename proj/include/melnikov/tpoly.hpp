// Polynomials and rational functions in the level parameter t with exact
// rational coefficients. The moment recurrence keeps everything symbolic in t;
// doubles only appear when a relation is evaluated against quadrature.
#pragma once

#include "melnikov/rational.hpp"

#include <vector>

namespace melnikov {

struct TPoly {
    std::vector<Rational> c;  // ascending powers of t

    TPoly() = default;
    explicit TPoly(Rational constant) : c{std::move(constant)} { trim(); }
    TPoly(std::initializer_list<Rational> coeffs) : c(coeffs) { trim(); }

    static TPoly t() { return TPoly{Rational(0), Rational(1)}; }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }

    Rational eval(const Rational& t) const {
        Rational v(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
        return v;
    }
    double eval(double t) const {
        double v = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + to_double(*it);
        return v;
    }

    TPoly derivative() const {
        TPoly d;
        for (size_t i = 1; i < c.size(); ++i) d.c.push_back(Rational(static_cast<long>(i)) * c[i]);
        d.trim();
        return d;
    }

    friend TPoly operator+(const TPoly& a, const TPoly& b) {
        TPoly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), Rational(0));
        for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
        r.trim();
        return r;
    }
    friend TPoly operator-(const TPoly& a, const TPoly& b) {
        TPoly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), Rational(0));
        for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
        r.trim();
        return r;
    }
    friend TPoly operator*(const TPoly& a, const TPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        TPoly r;
        r.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
        r.trim();
        return r;
    }
    friend TPoly operator*(const Rational& s, const TPoly& a) {
        TPoly r = a;
        for (auto& x : r.c) x *= s;
        r.trim();
        return r;
    }
    friend bool operator==(const TPoly& a, const TPoly& b) { return a.c == b.c; }
};

std::string to_string(const TPoly& p);

// num/den pair; no gcd cancellation beyond content normalization, degrees stay
// small for the |k| <= 6 reductions this is used for.
struct TRat {
    TPoly num;
    TPoly den;

    TRat() : num(), den(Rational(1)) {}
    explicit TRat(TPoly n) : num(std::move(n)), den(Rational(1)) {}
    TRat(TPoly n, TPoly d) : num(std::move(n)), den(std::move(d)) { normalize(); }

    bool is_zero() const { return num.is_zero(); }

    void normalize() {
        if (den.is_zero()) throw std::invalid_argument("TRat: zero denominator");
        if (num.is_zero()) { den = TPoly(Rational(1)); return; }
        // scale so den's leading coefficient is 1
        Rational lead = den.c.back();
        for (auto& x : num.c) x /= lead;
        for (auto& x : den.c) x /= lead;
    }

    double eval(double t) const { return num.eval(t) / den.eval(t); }
    Rational eval(const Rational& t) const { return num.eval(t) / den.eval(t); }

    friend TRat operator+(const TRat& a, const TRat& b) {
        return TRat(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend TRat operator-(const TRat& a, const TRat& b) {
        return TRat(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend TRat operator*(const TRat& a, const TRat& b) {
        return TRat(a.num * b.num, a.den * b.den);
    }
    friend TRat operator/(const TRat& a, const TRat& b) {
        if (b.is_zero()) throw std::invalid_argument("TRat: division by zero");
        return TRat(a.num * b.den, a.den * b.num);
    }
};

}  // namespace melnikov
