#pragma once

#include "rsiegel/analytic.hpp"
#include "rsiegel/chars.hpp"
#include "rsiegel/matrix.hpp"
#include "rsiegel/theta.hpp"
#include "rsiegel/weights.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rsiegel {

struct MatrixLess {
    bool operator()(const IntMatrix& a, const IntMatrix& b) const { return lex_less(a, b); }
};

// GL_n representation with the given highest weight (n <= 2).
GLRep glrep_of(const GLWeight& rho);

struct QuadratureResult {
    Eigen::MatrixXcd value;
    double change = 0; // relative Frobenius change between the last two levels
    int level = 0;     // step 2^-level
    std::size_t nodes = 0;
    bool converged = false;
};

inline constexpr double quadrature_tolerance = 1e-11;

// int_Y F(y) prod_i t_ii^{2 e_i} e^{-4 pi tr y} |y|^sigma d^x y with y = T^t T, T lower triangular,
// n <= 2. F receives T (top-left n x n block of a 2 x 2) and returns rows x cols.
using MatrixIntegrand = std::function<Eigen::MatrixXcd(const Eigen::Matrix2d&)>;
QuadratureResult integrate_over_Y(int n, Complex sigma, const std::vector<double>& diag_exponents, int rows, int cols,
                                  const MatrixIntegrand& F, double tol = quadrature_tolerance);

struct HermitianOperator {
    Eigen::MatrixXcd matrix;
    double asymmetry = 0; // before symmetrization
    double quadrature_change = 0;
    bool converged = true;
    std::size_t nodes = 0;
};

// <v, w> in the Hermitian structure of rho.
Complex inner(const GLRep& rho, const Eigen::VectorXcd& v, const Eigen::VectorXcd& w);
double hermitian_asymmetry(const GLRep& rho, const Eigen::MatrixXcd& H);

// H_rho(s) = int rho(y) e^{-4 pi tr y} |y|^{s+h} d^x y. rho.k is ignored (the det twist sits in h).
HermitianOperator h_operator(const GLRep& rho, const Rational& h, Complex s, double tol = quadrature_tolerance);
// H_{rho,R}(s) = rho(R^{-1/2}) H_rho(s) rho(R^{-1/2}) det(R)^{-(s+h)}.
Eigen::MatrixXcd h_operator_at(const GLRep& rho, const Eigen::MatrixXcd& base, const Rational& h, Complex s,
                               const Eigen::MatrixXd& R);
HermitianOperator h_operator(const GLRep& rho, const Rational& h, Complex s, const IntMatrix& R,
                             double tol = quadrature_tolerance);

// Eigenvalue of H_rho(s) on P(1), P the theta polynomial of weight w (n <= 2):
// n = 1: Gamma(s+h+m) (4 pi)^{-(s+h+m)};
// n = 2, w = (j+k, k), a = s+h+k: Gamma(a-1/2) (4 pi)^{-2a-j} sum_m binom(j,2m) (-1)^m Gamma(a+j-m) Gamma(m+1/2).
Complex highest_weight_eigenvalue(const GLWeight& w, const Rational& h, Complex s);

struct MaassCheck {
    Complex quadrature;
    double quadrature_change = 0;
    Complex closed_form;     // (4 pi)^{-n(s+h+lambda_P)} Gamma_rho(s)
    Complex corrected_form;  // (4 pi)^{-n(s+h)-lambda_P} pi^{n(n-1)/4} prod Gamma(s+h+lambda_i-(n-i)/2)
    double relative_error = 0;
    double corrected_relative_error = 0;
};

MaassCheck maass_integral_check(const GLWeight& lambda, Complex s_plus_h, double tol = quadrature_tolerance);

struct CoefficientFamily {
    int n = 1;
    GLRep rho; // coefficient weight, det^k included
    DirichletCharacter psi;
    std::int64_t det_bound = 0;
    std::map<IntMatrix, Eigen::VectorXcd, MatrixLess> base; // Minkowski-reduced R -> c(R)

    // psi(det u): +1 or psi(-1).
    Complex unit_sign(const IntMatrix& u) const;
    // Extension c(u^T R u) = psi(det u) rho(u^T) c(R); zero outside the support.
    Eigen::VectorXcd at(const IntMatrix& R) const;
    Eigen::VectorXcd transported(const IntMatrix& R, const IntMatrix& u) const; // psi(det u) rho(u^T) c(R)
};

// Gaussian random values on every reduced R, averaged over Aut(R) so the laws hold.
CoefficientFamily synthetic_family(int n, const GLRep& rho, const DirichletCharacter& psi, std::int64_t det_bound,
                                   std::uint64_t seed);
// Keeps only the listed reduced forms.
CoefficientFamily restrict_support(const CoefficientFamily& f, const std::vector<IntMatrix>& support);
// c_theta on reduced R up to the bound; psi = chi, rho from the theta weight.
CoefficientFamily theta_family(const ThetaSpec& spec, std::int64_t det_bound);

struct FamilyViolation {
    std::string rule; // "reduced", "dimension", "automorph", "route"
    IntMatrix R;
    IntMatrix u;
    double discrepancy = 0;
};

struct FamilyReport {
    bool coherent = true;
    std::size_t checks = 0;
    std::optional<FamilyViolation> violation;
};

inline constexpr double family_tolerance = 1e-9;

// Aut(R) invariance of each base value plus routes through `routes` seeded random unimodular u.
FamilyReport validate_family(const CoefficientFamily& f, int routes = 8, std::uint64_t seed = 1);

struct SeriesTerm {
    IntMatrix R;
    std::int64_t det = 0;
    Rational nu;
    Complex value;
};

struct RankinSeries {
    Complex value;
    std::vector<SeriesTerm> terms;              // nonzero terms in summation order
    std::vector<std::pair<std::int64_t, Complex>> partial_sums; // by determinant
    bool nonnegative_terms = true;
    double error_bound = 0;
    std::int64_t det_bound = 0;
    HermitianOperator base;
};

// sum over reduced R, det R <= bound, of nu_R <H_{rho,R}(s) c_f(R), c_g(R)>.
RankinSeries rankin_series(Complex s, const Rational& h, const CoefficientFamily& f, const CoefficientFamily& g,
                           std::int64_t det_bound, double tol = quadrature_tolerance);
RankinSeries rankin_series(Complex s, const Rational& h, const CoefficientFamily& f, const HermitianOperator& base,
                           const CoefficientFamily& g, std::int64_t det_bound);

struct UnfoldingCheck {
    Complex lhs;            // (4 pi)^{n(s+h+lambda_P)} D(s, f, theta)
    Complex rhs;            // Gamma_rho(s) sum over xi
    Complex series;         // D(s, f, theta)
    Complex eigenvalue;     // highest_weight_eigenvalue
    Complex corrected_rhs;  // eigenvalue * sum over xi
    double relative_error = 0;
    double corrected_relative_error = 0; // D against corrected_rhs
    std::size_t forms = 0;
    std::size_t cosets = 0;
    std::int64_t det_bound = 0;
    double quadrature_change = 0;
};

UnfoldingCheck unfolding_check(const CoefficientFamily& f, const ThetaSpec& theta, Complex s, const Rational& h,
                               std::int64_t det_bound, double tol = quadrature_tolerance);

} // namespace rsiegel
