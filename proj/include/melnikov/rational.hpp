// Exact rational scalars used for classification boundaries, curve
// coefficients and recurrence algebra. Backed by Boost.Multiprecision.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace melnikov {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

// Exact binary expansion of a finite double. No rounding happens here.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite");
    return Rational(x);
}

inline int sign(const Rational& r) { return r.sign(); }

// Accepts "p/q", plain integers, and decimal literals ("-7/2", "3", "0.25").
Rational parse_rational(std::string_view s);

std::string to_string(const Rational& r);

// Gaussian rational a + bi; enough arithmetic for the Theorem-2 condition
// polynomials in (A, B, conj(A)).
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussianRational(long r) : re(r), im(0) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }
    GaussianRational conj() const { return {re, -im}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator*(const Rational& c, const GaussianRational& a) {
        return {c * a.re, c * a.im};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    // |z|^2, exact
    Rational norm2() const { return re * re + im * im; }
};

// Accepts "re+imi" forms: "0+0i", "1-2i", "-1/2+3/4i", "2", "i", "-i".
GaussianRational parse_gaussian(std::string_view s);

std::string to_string(const GaussianRational& z);

}  // namespace melnikov
