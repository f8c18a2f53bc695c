#include <doctest.h>

#include "rsiegel/errors.hpp"
#include "rsiegel/forms.hpp"
#include "rsiegel/rankin.hpp"

#include <cmath>
#include <numbers>

using namespace rsiegel;

namespace {

constexpr double pi = std::numbers::pi;

RationalMatrix scalar(int n, const Rational& c) { return RationalMatrix::Identity(n, n) * c; }

DirichletCharacter odd_character(std::int64_t p)
{
    for (const auto& c : enumerate_characters(p))
        if (c.parity() == -1) return c;
    throw std::logic_error("no odd character");
}

IntMatrix mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
{
    IntMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

double rel(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).norm() / std::max(a.norm(), b.norm()); }

// P(1) for the Sym^j theta polynomial.
Eigen::VectorXcd top_vector(int j)
{
    return sym_power_polynomial(j).evaluate(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(2, 2)));
}

} // namespace

TEST_CASE("scalar H operators have the Siegel Gamma closed form")
{
    HermitianOperator h1 = h_operator(GLRep{1, 0, 0}, Rational(0), 2.0);
    CHECK(h1.converged);
    CHECK(std::abs(h1.matrix(0, 0) - 1.0 / (16 * pi * pi)) < 1e-14);

    for (double sigma : {2.0, 2.5, 3.25}) {
        HermitianOperator h2 = h_operator(GLRep{2, 0, 0}, Rational(0), sigma);
        Complex expected = siegel_gamma(2, sigma) * std::pow(4 * pi, -2 * sigma);
        CHECK(std::abs(h2.matrix(0, 0) - expected) / std::abs(expected) < 1e-10);
    }
    // n = 1 weight w: Gamma(sigma + w) (4 pi)^{-sigma - w}
    HermitianOperator hw = h_operator(GLRep{1, 3, 0}, Rational(1, 2), Complex(2.0, 1.5));
    Complex expected = complex_gamma(Complex(5.5, 1.5)) * std::exp(-Complex(5.5, 1.5) * std::log(4 * pi));
    CHECK(std::abs(hw.matrix(0, 0) - expected) / std::abs(expected) < 1e-10);
}

TEST_CASE("H operator guard")
{
    CHECK_THROWS_AS(h_operator(GLRep{2, 2, 0}, Rational(0), 1.5), GuardError);
    CHECK_THROWS_AS(h_operator(GLRep{1, 0, 0}, Rational(0), 1.0), GuardError);
}

TEST_CASE("P(1) is an eigenvector of H_rho")
{
    for (int j = 1; j <= 4; ++j) {
        for (double sigma : {2.5, 3.0, 3.75}) {
            HermitianOperator H = h_operator(GLRep{2, j, 0}, Rational(0), sigma);
            Eigen::VectorXcd v = top_vector(j);
            Complex e = highest_weight_eigenvalue(GLWeight{2, {j, 0}}, Rational(0), sigma);
            CHECK(rel(H.matrix * v, e * v) < 1e-9);
            Complex g = gamma_rho(GLWeight{2, {j, 0}}, Rational(0), sigma);
            // Gamma_rho reproduces the eigenvalue only for j <= 1
            if (j == 1) CHECK(std::abs(e - g * std::pow(4 * pi, -2 * sigma - j)) < 1e-12 * std::abs(e));
            else CHECK(std::abs(e - g * std::pow(4 * pi, -2 * sigma - j)) > 1e-3 * std::abs(e));
        }
    }
    // j = 2, sigma = 3: ratio 21/24 against Gamma_rho
    Complex e = highest_weight_eigenvalue(GLWeight{2, {2, 0}}, Rational(0), 3.0);
    Complex g = gamma_rho(GLWeight{2, {2, 0}}, Rational(0), 3.0) * std::pow(4 * pi, -8.0);
    CHECK(std::abs(e / g - 21.0 / 24.0) < 1e-12);
    // det twist: P = det
    HermitianOperator H = h_operator(GLRep{2, 0, 0}, Rational(1), 2.0);
    Complex d = highest_weight_eigenvalue(GLWeight{2, {1, 1}}, Rational(0), 2.0);
    CHECK(std::abs(H.matrix(0, 0) - d) < 1e-10 * std::abs(d));
}

TEST_CASE("H operator is Hermitian, positive and commutes with rotations")
{
    for (int j = 0; j <= 3; ++j) {
        GLRep rho{2, j, 0};
        HermitianOperator H = h_operator(rho, Rational(1, 2), 2.75);
        CHECK(H.asymmetry < 1e-9);
        Eigen::MatrixXcd GH = rho.gram_weights().cast<Complex>().asDiagonal() * H.matrix;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(GH);
        CHECK(es.eigenvalues().minCoeff() > 0);
        const double t = 0.7;
        Eigen::MatrixXd k(2, 2);
        k << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
        Eigen::MatrixXcd rk = rho(k).cast<Complex>();
        CHECK(rel(rk * H.matrix, H.matrix * rk) < 1e-9);
    }
}

TEST_CASE("scaling law and conjugation law for H_{rho,R}")
{
    for (int j = 0; j <= 3; ++j) {
        GLRep rho{2, j, 0};
        const Complex s(3.0, 0.4);
        HermitianOperator base = h_operator(rho, Rational(0), s);
        // R = c I
        const double c = 3;
        Eigen::MatrixXd R = Eigen::MatrixXd::Identity(2, 2) * c;
        Eigen::MatrixXcd m = rho(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2) / std::sqrt(c))).cast<Complex>();
        Eigen::MatrixXcd expected = m * base.matrix * m * std::exp(-2.0 * s * std::log(c));
        CHECK(rel(h_operator_at(rho, base.matrix, Rational(0), s, R), expected) < 1e-12);

        std::uint64_t state = 77 + static_cast<std::uint64_t>(j);
        IntMatrix R0 = mat2(2, 1, 1, 3);
        Eigen::MatrixXcd H0 = h_operator_at(rho, base.matrix, Rational(0), s, to_double(R0));
        for (int trial = 0; trial < 20; ++trial) {
            IntMatrix u = random_unimodular(2, state, 5);
            IntMatrix Ru = u.transpose() * R0 * u;
            Eigen::MatrixXcd direct = h_operator_at(rho, base.matrix, Rational(0), s, to_double(Ru));
            Eigen::MatrixXd ui = to_double(u).inverse();
            Eigen::MatrixXcd conj = rho(ui).cast<Complex>() * H0 * rho(Eigen::MatrixXd(ui.transpose())).cast<Complex>();
            CHECK(rel(direct, conj) < 1e-8);
        }
    }
}

TEST_CASE("Maass integral: corrected form matches, stated form only at lambda = 0")
{
    MaassCheck m1 = maass_integral_check(GLWeight{1, {0}}, 2.0);
    CHECK(m1.relative_error < 1e-8);
    MaassCheck m2 = maass_integral_check(GLWeight{1, {2}}, 2.5);
    CHECK(m2.relative_error < 1e-8);

    MaassCheck z = maass_integral_check(GLWeight{2, {0, 0}}, 3.0);
    CHECK(z.relative_error < 1e-6);
    for (auto [l1, l2, sh] : {std::tuple{1, 0, 3.0}, std::tuple{2, 0, 3.5}, std::tuple{2, 1, 4.0}}) {
        MaassCheck m = maass_integral_check(GLWeight{2, {l1, l2}}, sh);
        CHECK(m.corrected_relative_error < 1e-8);
        CHECK(m.relative_error > 1e-2);
    }
}

TEST_CASE("synthetic families obey the extension rule")
{
    CoefficientFamily f1 = synthetic_family(1, GLRep{1, 0, 0}, DirichletCharacter(), 20, 5);
    CHECK(validate_family(f1).coherent);

    for (int j = 0; j <= 3; ++j) {
        CoefficientFamily f = synthetic_family(2, GLRep{2, j, 0}, odd_character(3), 12, 11);
        FamilyReport r = validate_family(f, 10, 3);
        CHECK(r.coherent);
        CHECK(r.checks > f.base.size());
    }

    // 2-step loop: u1 then u2 with u2 u1 in Aut(R).
    CoefficientFamily f = synthetic_family(2, GLRep{2, 2, 0}, DirichletCharacter(), 8, 2);
    IntMatrix R = mat2(2, 1, 1, 2);
    IntMatrix u1 = mat2(1, 1, 0, 1), u2 = mat2(0, -1, 1, -1);
    IntMatrix via = u1.transpose() * R * u1;
    Eigen::VectorXcd a = f.at(IntMatrix(u2.transpose() * via * u2));
    Eigen::VectorXcd b = f.transported(R, IntMatrix(u1 * u2));
    CHECK((a - b).norm() < 1e-12 * (1 + a.norm()));

    CoefficientFamily bad = f;
    bad.base[IntMatrix(IntMatrix::Identity(2, 2))](0) += 1.0;
    FamilyReport r = validate_family(bad);
    REQUIRE_FALSE(r.coherent);
    REQUIRE(r.violation);
    CHECK(r.violation->R == IntMatrix(IntMatrix::Identity(2, 2)));
    CHECK(r.violation->rule == "automorph");
    CHECK(r.violation->u.rows() == 2);
}

TEST_CASE("class weights")
{
    CHECK(automorph_group(IntMatrix::Constant(1, 1, 1)).size() == 2);
    CHECK(automorph_group(IntMatrix(IntMatrix::Identity(2, 2))).size() == 8);
    CHECK(automorph_group(mat2(2, 1, 1, 2)).size() == 12);
}

TEST_CASE("Rankin series: single term, invariance, Cauchy-Schwarz, monotonicity")
{
    GLRep rho{2, 2, 0};
    const Rational h(1);
    const Complex s = 2.5;
    HermitianOperator base = h_operator(rho, h, s);
    CoefficientFamily f = synthetic_family(2, rho, DirichletCharacter(), 15, 21);
    CoefficientFamily g = synthetic_family(2, rho, DirichletCharacter(), 15, 22);

    IntMatrix R0 = mat2(2, 1, 1, 3);
    CoefficientFamily one = restrict_support(f, {R0});
    RankinSeries single = rankin_series(s, h, one, base, one, 15);
    REQUIRE(single.terms.size() == 1);
    Eigen::MatrixXcd H = h_operator_at(rho, base.matrix, h, s, to_double(R0));
    Complex expected = inner(rho, H * one.at(R0), one.at(R0)) / static_cast<double>(automorph_group(R0).size());
    CHECK(std::abs(single.value - expected) < 1e-14);
    CHECK(single.value.real() > 0);

    std::uint64_t state = 5;
    for (int trial = 0; trial < 10; ++trial) {
        IntMatrix u = random_unimodular(2, state, 6);
        IntMatrix R1 = u.transpose() * R0 * u;
        Eigen::MatrixXcd H1 = h_operator_at(rho, base.matrix, h, s, to_double(R1));
        Complex moved = inner(rho, H1 * f.at(R1), g.at(R1));
        Complex orig = inner(rho, H * f.at(R0), g.at(R0));
        CHECK(std::abs(moved - orig) < 1e-8 * std::abs(orig));
    }

    RankinSeries dfg = rankin_series(s, h, f, base, g, 15);
    RankinSeries dff = rankin_series(s, h, f, base, f, 15);
    RankinSeries dgg = rankin_series(s, h, g, base, g, 15);
    CHECK(std::abs(dfg.value) <= std::sqrt(dff.value.real() * dgg.value.real()));
    CHECK(dff.nonnegative_terms);
    for (std::size_t i = 1; i < dff.partial_sums.size(); ++i)
        CHECK(dff.partial_sums[i].second.real() >= dff.partial_sums[i - 1].second.real());
}

TEST_CASE("unfolding identity, n = 1")
{
    for (int j : {0, 1}) {
        VectorPolynomial P = j == 0 ? VectorPolynomial{{MatrixPolynomial::constant(1, GaussRational(1))}}
                                    : VectorPolynomial{{MatrixPolynomial::variable(1, 1, 1)}};
        DirichletCharacter chi = j == 0 ? DirichletCharacter() : odd_character(3);
        ThetaSpec th{1, scalar(1, 1), scalar(1, 1), chi, P, GLWeight{1, {j}}};
        CoefficientFamily f = synthetic_family(1, GLRep{1, j, 0}, chi, 30, 9);
        f = restrict_support(f, {IntMatrix::Constant(1, 1, 4), IntMatrix::Constant(1, 1, 9), IntMatrix::Constant(1, 1, 25)});
        UnfoldingCheck u = unfolding_check(f, th, 2.0, Rational(1, 4) + Rational(j, 2), 30);
        CHECK(std::abs(u.rhs) > 0);
        CHECK(u.relative_error < 1e-8);
    }
}

TEST_CASE("unfolding identity, n = 2 Sym^2")
{
    DirichletCharacter chi;
    // tau = I kills every Sym^2 coefficient (rotation by 90 degrees), so take diag(1, 2)
    RationalMatrix tau = scalar(2, 1);
    tau(1, 1) = 2;
    ThetaSpec th{2, tau, scalar(2, 1), chi, sym_power_polynomial(2), GLWeight{2, {2, 0}}};
    CHECK(theta_family(ThetaSpec{2, scalar(2, 1), scalar(2, 1), chi, sym_power_polynomial(2), GLWeight{2, {2, 0}}}, 10)
              .base.begin()->second.isZero(0));
    CoefficientFamily f = synthetic_family(2, GLRep{2, 2, 0}, chi, 10, 4);
    UnfoldingCheck u = unfolding_check(f, th, 2.5, Rational(1, 2), 10);
    REQUIRE(std::abs(u.rhs) > 0);
    CHECK(u.corrected_relative_error < 1e-8);
    // sigma = 3: lhs / rhs = (4 pi)^2 * 21/24
    CHECK(std::abs(u.lhs / u.rhs - 16 * pi * pi * 21.0 / 24.0) < 1e-6 * 16 * pi * pi);

    CoefficientFamily empty = restrict_support(f, {});
    UnfoldingCheck z = unfolding_check(empty, th, 2.5, Rational(1, 2), 10);
    CHECK(z.lhs == Complex(0));
    CHECK(z.rhs == Complex(0));
    CHECK(z.relative_error == 0);
}
