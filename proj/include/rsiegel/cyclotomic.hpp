#pragma once

#include "rsiegel/rational.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace rsiegel {

// Integer coefficients of the N-th cyclotomic polynomial, constant term first.
const std::vector<std::int64_t>& cyclotomic_polynomial(int N);
int euler_phi(std::int64_t n);

// Element of Q(zeta_N) as a polynomial in zeta_N of degree < phi(N), reduced mod Phi_N.
class CyclotomicNumber {
public:
    CyclotomicNumber() : CyclotomicNumber(1) {}
    explicit CyclotomicNumber(int order);
    CyclotomicNumber(int order, const Rational& value);
    CyclotomicNumber(int order, std::vector<Rational> coefficients); // reduced on construction

    static CyclotomicNumber zeta(int order, std::int64_t k);
    // sum_e counts[e] zeta_N^e for a table of length N.
    static CyclotomicNumber from_exponent_counts(int order, const std::vector<std::int64_t>& counts);

    int order() const { return order_; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    CyclotomicNumber lift(int new_order) const; // new_order must be a multiple of order()
    CyclotomicNumber conj() const;
    std::complex<double> to_complex() const;

    CyclotomicNumber& operator+=(const CyclotomicNumber& o);
    CyclotomicNumber& operator-=(const CyclotomicNumber& o);
    CyclotomicNumber& operator*=(const CyclotomicNumber& o);
    friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
    friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
    CyclotomicNumber operator-() const;
    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);

    std::string to_string() const;

private:
    void reduce(std::vector<Rational> poly);

    int order_;
    std::vector<Rational> coeffs_;
};

} // namespace rsiegel
