#pragma once

#include "rsiegel/chars.hpp"
#include "rsiegel/rational.hpp"
#include "rsiegel/weights.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rsiegel {

using Complex = std::complex<double>;

// Lanczos approximation with reflection; throws PoleError at non-positive integers.
Complex complex_gamma(Complex s);

// pi^{n(n-1)/4} prod_{j=0}^{n-1} Gamma(s - j/2)
Complex siegel_gamma(int n, Complex s);

// pi^{n(n-1)/4} prod_{i=1}^n Gamma(s + h + lambda_i - i/2 + 1/2), lambda the highest weight of rho.
Complex gamma_rho(const GLWeight& rho, const Rational& h, Complex s);

// Piecewise Gamma^{k,n}; k in (1/2)Z with k >= n/2.
Complex gamma_kn(const Rational& k, int n, Complex s);
int gamma_kn_case(const Rational& k, int n); // 1 .. 4 in display order

struct LambdaValue {
    Complex value;
    double tail_bound = 0;
    std::vector<Complex> arguments; // the L-arguments, in product order
    bool squared = false;           // constituents after the first use eta^2
};

// Lambda_x^{m,kappa}(s, eta): Dirichlet L-values with Euler factors at p | x removed, truncated at p_max.
LambdaValue lambda_factor(int m, const Rational& kappa, std::int64_t x, const DirichletCharacter& eta, Complex s,
                          std::int64_t p_max);

struct SatakeData {
    int n = 1;
    Rational k{1};
    std::map<std::int64_t, std::vector<Complex>> parameters; // p -> lambda_{p,1..n}
    std::int64_t c = 1;
    DirichletCharacter psi;
};

void validate(const SatakeData& data);

// Coefficients of L_p(t), constant term first.
std::vector<Complex> euler_factor(std::int64_t p, const SatakeData& data, bool at_level);
std::vector<Complex> euler_factor(std::int64_t p, const SatakeData& data);
Complex eval_polynomial(const std::vector<Complex>& coeffs, Complex t);

// L_p(psi'(p) chi*(p) p^{-s}).
Complex standard_euler_term(std::int64_t p, Complex s, const SatakeData& data, const DirichletCharacter& chi);

struct StandardLValue {
    Complex value{1, 0};
    std::vector<std::int64_t> primes;
    bool outside_convergence = false;
    double convergence_abscissa = 0;
};

StandardLValue truncated_standard_L(Complex s, const SatakeData& data, const DirichletCharacter& chi, std::int64_t prime_bound);

struct Pole {
    Rational s;
    std::string source;
    int order = 1;
};

struct OscillatoryZeros {
    std::int64_t p = 0;
    std::string constituent;
    double real_part = 0;
    double spacing = 0; // in s
};

struct PoleQuery {
    Rational k;
    int n = 1;
    bool psi_chi_square_trivial = true;
    std::int64_t c = 1;
    std::int64_t y = 1;
    DirichletCharacter eta; // chi psi epsilon_tau
};

struct PoleReport {
    std::string case_label;
    std::vector<Pole> lambda_ratio_poles;
    std::vector<Pole> exceptional_set;
    std::vector<OscillatoryZeros> oscillatory;
    bool simple = true;
};

PoleReport pole_report(const PoleQuery& q);

} // namespace rsiegel
