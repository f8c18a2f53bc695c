#pragma once

#include "rsiegel/chars.hpp"
#include "rsiegel/cyclotomic.hpp"
#include "rsiegel/matrix.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rsiegel {

struct GaussSumParams {
    int n = 1;
    DirichletCharacter chi;
    IntMatrix X;
    IntMatrix R;
    std::int64_t F = 1;
    RationalMatrix tauQ; // tau[Q] = Q^T tau Q
};

inline constexpr double gauss_enumeration_limit = 1e8;

// sum over T in M_n(Z/F) of chi(det T) e(tr(X^T T - tau[Q] T R T^T) / F). The value lies in
// Q(zeta_N), N = lcm(F, order of chi). Quadratic coefficients, combined per monomial, must be
// F-integral in the p-adic sense (denominators prime to F); they are then read mod F.
CyclotomicNumber gauss_sum(const GaussSumParams& params);

struct SchwartzSpec {
    RationalMatrix Q;
    DirichletCharacter chi;
    RationalMatrix tau;
};

struct SchwartzValue {
    bool support = false;
    bool p_divides_conductor = false;
    int level = 0; // the lattice exponent used in the support test
    CyclotomicNumber cyclotomic; // chi(|Q|) G' when p | f, 1 otherwise
    SurdFactor prefactor;
    bool is_zero() const { return !support || cyclotomic.is_zero(); }
    std::complex<double> numeric() const;
};

// Value at x of the eta sigma transform of the local Schwartz function at p, with b = b_sigma.
SchwartzValue eta_sigma_schwartz(const SchwartzSpec& spec, const IntMatrix& b, const RationalMatrix& x, std::int64_t p);

struct GaussCase {
    std::size_t chi_index = 0;
    IntMatrix X;
    IntMatrix R;
    std::string value;
    double magnitude = 0;
};

struct CharacterTally {
    std::size_t chi_index = 0;
    int parity = 1;
    std::size_t cases = 0;
    std::size_t nonzero = 0;
    double max_magnitude = 0;
};

struct VanishingReport {
    int n = 1;
    std::int64_t p = 3;
    RationalMatrix tau;
    RationalMatrix Q;
    RationalMatrix tauQ;
    std::size_t singular_X = 0;
    std::size_t symmetric_R = 0;
    std::size_t swept = 0; // Gauss sums evaluated for odd characters
    std::size_t nonzero = 0;
    bool zero = true;
    std::optional<GaussCase> counterexample;
    std::vector<CharacterTally> odd;
    std::vector<CharacterTally> even_outside_scope;
};

// Sweeps every singular X and every symmetric R mod p against every odd character mod p.
// include_even adds the nontrivial even characters, reported separately.
VanishingReport vanishing_certificate(int n, std::int64_t p, const RationalMatrix& tau, const RationalMatrix& Q,
                                      bool include_even = false);

// All symmetric n x n matrices with entries in [0, p).
std::vector<IntMatrix> symmetric_matrices_mod(int n, std::int64_t p);
std::vector<IntMatrix> singular_matrices_mod(int n, std::int64_t p);

} // namespace rsiegel
