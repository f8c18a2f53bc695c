#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <complex>
#include <cstdint>
#include <string>

namespace rsiegel {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

inline BigInt numer(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denom(const Rational& q) { return boost::multiprecision::denominator(q); }

// p-adic valuation; zero has valuation INT32_MAX.
int valuation(const Rational& q, std::int64_t p);
int valuation(std::int64_t v, std::int64_t p);

// q mod m for q with denominator prime to m.
std::int64_t mod_reduce(const Rational& q, std::int64_t m);

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t m);
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);
std::int64_t positive_mod(std::int64_t a, std::int64_t m);

bool is_square(const Rational& q);
Rational rational_sqrt(const Rational& q); // requires is_square

struct GaussRational {
    Rational re{0};
    Rational im{0};

    GaussRational() = default;
    GaussRational(Rational r) : re(std::move(r)) {}
    GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussRational(long r) : re(r) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GaussRational conj() const { return {re, -im}; }
    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    GaussRational& operator+=(const GaussRational& o) { re += o.re; im += o.im; return *this; }
    GaussRational& operator-=(const GaussRational& o) { re -= o.re; im -= o.im; return *this; }
    GaussRational& operator*=(const GaussRational& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    GaussRational inverse() const;
};

// coeff * sqrt(radicand) with radicand a squarefree positive integer.
struct SurdFactor {
    Rational coeff{1};
    std::int64_t radicand = 1;
    double to_double() const;
    std::string to_string() const;
};

// r^(twice_exponent / 2) for r > 0.
SurdFactor surd_power(const Rational& r, int twice_exponent);

GaussRational gauss_pow(const GaussRational& z, int e);
std::string to_string(const GaussRational& z);

} // namespace rsiegel
