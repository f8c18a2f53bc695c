#pragma once

#include "rsiegel/chars.hpp"
#include "rsiegel/cyclotomic.hpp"
#include "rsiegel/gauss.hpp"
#include "rsiegel/matrix.hpp"
#include "rsiegel/pluriharm.hpp"
#include "rsiegel/weights.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rsiegel {

struct ThetaSpec {
    int n = 1;
    RationalMatrix tau;
    RationalMatrix Q;
    DirichletCharacter chi;
    VectorPolynomial P;
    GLWeight rho;
};

// Checks tau symmetric positive definite, det Q != 0, P pluriharmonic with highest weight rho
// (read off the first component). Throws DomainError.
void validate(const ThetaSpec& spec);
// tau and Q only; P may be empty (level data for any n).
void validate_lattice(const ThetaSpec& spec);

// Fractional ideals of Q are stored by their positive generator.
Rational ideal_sum(const Rational& a, const Rational& b);          // gcd
Rational ideal_intersection(const Rational& a, const Rational& b); // lcm

struct LevelData {
    Rational r;
    Rational t;
    Rational a;
    Rational b;
    BigInt c;
    std::int64_t f = 1; // conductor of chi
    QuadCharacter epsilon;
    DirichletCharacter nebentype;
    bool two_divides_b_inverse = true; // odd n only
    bool two_divides_bc = true;        // odd n only
    // Least m with Gamma[m, m] inside D[b^-1, bc]; absent when b^-1 or bc is not integral.
    std::optional<BigInt> gamma_level;
    bool contains_gamma(std::int64_t m) const;
};

LevelData level_data(const ThetaSpec& spec);

enum class SqrtMode { diagonal_squares, scalar, numeric };

struct ThetaCoefficient {
    SqrtMode mode = SqrtMode::numeric;
    // Exact modes: value = scale * exact[i], exact[i] in Q(zeta_order).
    int order = 4;
    std::vector<CyclotomicNumber> exact;
    SurdFactor scale;
    Eigen::VectorXcd numeric;
    double precision = 0; // absolute, numeric mode
    std::size_t solutions = 0;
};

// Value of the character factor on an integer determinant: primitive chi, with chi(0) = 1 only
// for conductor 1.
CyclotomicNumber lambda_value(const DirichletCharacter& chi, std::int64_t d);

ThetaCoefficient theta_coefficient(const ThetaSpec& spec, const IntMatrix& R);
// Same sum over a given solution set (used to compare enumeration routes).
ThetaCoefficient theta_coefficient_from(const ThetaSpec& spec, const std::vector<IntMatrix>& xis);

struct ThetaEvaluation {
    Eigen::VectorXcd value;
    double tail_estimate = 0;
    std::size_t terms = 0;
};

inline constexpr double theta_enumeration_limit = 2e7;

ThetaEvaluation theta_truncated_eval(const ThetaSpec& spec, const Eigen::MatrixXcd& z, double trace_bound);

struct CuspVerdict {
    std::string kind_vector;
    int kind = 8; // 8 .. 11
    std::vector<std::string> local_s; // s at 2 and at p
    bool certified = false;
    std::string method;
};

struct CuspidalityReport {
    bool covered = false;
    std::string reason; // why the input is not covered
    std::int64_t p = 0;
    std::string verdict; // "cuspidal", "not certified", "not covered"
    LevelData level;
    std::vector<CuspVerdict> cusps;
    std::vector<int> kinds_certified; // subset of 8..11
    std::optional<VanishingReport> vanishing;
};

CuspidalityReport cuspidality_report(const ThetaSpec& spec, std::int64_t p);

} // namespace rsiegel
