#include <doctest.h>

#include "rsiegel/errors.hpp"
#include "rsiegel/gauss.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace rsiegel;

namespace {

// Floating-point brute force straight from the definition.
std::complex<double> gauss_oracle(int n, const DirichletCharacter& chi, const IntMatrix& X, const IntMatrix& R,
                                  std::int64_t F, const RationalMatrix& tauQ)
{
    Eigen::MatrixXd M = to_double(tauQ), Rd = to_double(R), Xd = to_double(X);
    std::complex<double> sum = 0;
    const int nn = n * n;
    std::int64_t total = 1;
    for (int i = 0; i < nn; ++i) total *= F;
    for (std::int64_t idx = 0; idx < total; ++idx) {
        IntMatrix T(n, n);
        std::int64_t rest = idx;
        for (int k = 0; k < nn; ++k) {
            T(k / n, k % n) = rest % F;
            rest /= F;
        }
        std::complex<double> c = chi.value_complex(det(T));
        if (c == 0.0) continue;
        Eigen::MatrixXd Td = to_double(T);
        double tr = (Xd.transpose() * Td).trace() - (M * Td * Rd * Td.transpose()).trace();
        sum += c * std::polar(1.0, 2 * std::numbers::pi * tr / static_cast<double>(F));
    }
    return sum;
}

IntMatrix m2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
{
    IntMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

RationalMatrix diag2(std::int64_t a, std::int64_t b)
{
    RationalMatrix m = RationalMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

} // namespace

TEST_CASE("gauss_sum small values")
{
    RationalMatrix one = RationalMatrix::Identity(1, 1);
    IntMatrix zero1 = IntMatrix::Zero(1, 1);
    CyclotomicNumber g = gauss_sum({1, DirichletCharacter::trivial(5), zero1, zero1, 5, one});
    CHECK(g == CyclotomicNumber(1, Rational(4)));
    DirichletCharacter odd3 = enumerate_characters(3)[1];
    for (int r = 0; r < 3; ++r) CHECK(gauss_sum({1, odd3, zero1, IntMatrix::Constant(1, 1, r), 3, one}).is_zero());
    CyclotomicNumber spec = gauss_sum({2, odd3, m2(1, 0, 0, 0), IntMatrix::Identity(2, 2), 3, diag2(1, 2)});
    CHECK(spec.is_zero());
    // classical quadratic Gauss sum: sum chi(t) e(t/p) with chi the Legendre symbol mod 5 has |g|^2 = 5
    DirichletCharacter leg5 = enumerate_characters(5)[2];
    CyclotomicNumber cg = gauss_sum({1, leg5, IntMatrix::Constant(1, 1, 1), zero1, 5, one});
    CHECK(cg * cg.conj() == CyclotomicNumber(1, Rational(5)));
}

TEST_CASE("gauss_sum matches the floating-point definition")
{
    std::mt19937 gen(5);
    for (std::int64_t F : {3, 4, 5}) {
        auto chars = enumerate_characters(F);
        std::uniform_int_distribution<int> d(0, static_cast<int>(F) - 1);
        for (int trial = 0; trial < 6; ++trial) {
            const DirichletCharacter& chi = chars[static_cast<std::size_t>(trial) % chars.size()];
            IntMatrix X = m2(d(gen), d(gen), d(gen), d(gen));
            int r12 = d(gen);
            IntMatrix R = m2(d(gen), r12, r12, d(gen));
            RationalMatrix tauQ(2, 2);
            tauQ << 1, Rational(d(gen)), 0, 2;
            tauQ(1, 0) = tauQ(0, 1);
            CyclotomicNumber g = gauss_sum({2, chi, X, R, F, tauQ});
            CHECK(std::abs(g.to_complex() - gauss_oracle(2, chi, X, R, F, tauQ)) < 1e-8);
        }
    }
}

TEST_CASE("gauss_sum conjugation symmetry")
{
    for (std::int64_t F : {3, 4, 5})
        for (const auto& chi : enumerate_characters(F))
            for (int a = 0; a < F; ++a)
                for (int r = 0; r < F; ++r) {
                    IntMatrix X = m2(a, 1, 0, a);
                    IntMatrix R = m2(r, 1, 1, 0);
                    RationalMatrix tauQ = diag2(1, 2);
                    CyclotomicNumber g = gauss_sum({2, chi, X, R, F, tauQ});
                    // chi -> conj chi, X -> -X and the quadratic sign flips: take R -> -R
                    CyclotomicNumber h = gauss_sum({2, chi.conj(), IntMatrix(-X), IntMatrix(-R), F, tauQ});
                    CHECK(h == g.conj());
                }
}

TEST_CASE("gauss_sum change of variables T -> T u")
{
    std::mt19937 gen(9);
    for (std::int64_t F : {3, 5}) {
        std::uniform_int_distribution<int> d(0, static_cast<int>(F) - 1);
        for (const auto& chi : enumerate_characters(F))
            for (int trial = 0; trial < 4; ++trial) {
                IntMatrix u;
                do u = m2(d(gen), d(gen), d(gen), d(gen));
                while (positive_mod(det(u), F) == 0);
                IntMatrix X = m2(d(gen), d(gen), d(gen), d(gen));
                int r = d(gen);
                IntMatrix R = m2(d(gen), r, r, d(gen));
                RationalMatrix tauQ = diag2(1, 2);
                CyclotomicNumber lhs = gauss_sum({2, chi, X, R, F, tauQ});
                CyclotomicNumber rhs = chi.value(det(u)) * gauss_sum({2, chi, IntMatrix(X * u.transpose()), IntMatrix(u * R * u.transpose()), F, tauQ});
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("gauss_sum guards")
{
    RationalMatrix tauQ = RationalMatrix::Identity(3, 3);
    IntMatrix z = IntMatrix::Zero(3, 3);
    CHECK_THROWS_AS(gauss_sum({3, DirichletCharacter::trivial(11), z, z, 11, tauQ}), GuardError);
    RationalMatrix third = RationalMatrix::Identity(1, 1) * Rational(1, 3);
    IntMatrix one = IntMatrix::Ones(1, 1);
    CHECK_THROWS_AS(gauss_sum({1, DirichletCharacter::trivial(3), one, one, 3, third}), DomainError);
    // a denominator prime to F is read p-adically
    RationalMatrix half = RationalMatrix::Identity(1, 1) * Rational(1, 2);
    CyclotomicNumber g = gauss_sum({1, DirichletCharacter::trivial(3), one, one, 3, half});
    CHECK(std::abs(g.to_complex() - gauss_oracle(1, DirichletCharacter::trivial(3), one, one, 3, RationalMatrix::Identity(1, 1) * Rational(2)) ) < 1e-9);
}

TEST_CASE("vanishing certificate in degree one")
{
    for (std::int64_t p : {3, 5, 7, 11, 13}) {
        VanishingReport r = vanishing_certificate(1, p, RationalMatrix::Identity(1, 1), RationalMatrix::Identity(1, 1));
        CHECK(r.zero);
        CHECK(r.singular_X == 1);
        CHECK(r.symmetric_R == static_cast<std::size_t>(p));
        CHECK(r.swept == static_cast<std::size_t>(p) * static_cast<std::size_t>((p - 1) / 2));
    }
}

TEST_CASE("vanishing certificate in degree two tracks the square class of -det")
{
    RationalMatrix I = RationalMatrix::Identity(2, 2);
    VanishingReport good = vanishing_certificate(2, 3, I, I, true);
    CHECK(good.zero);
    CHECK(good.singular_X == 81 - 48);
    CHECK(good.symmetric_R == 27);
    CHECK(good.even_outside_scope.empty());

    VanishingReport bad = vanishing_certificate(2, 3, diag2(1, 2), I);
    CHECK_FALSE(bad.zero);
    CHECK(bad.nonzero == 96);
    REQUIRE(bad.counterexample.has_value());
    CHECK(std::abs(bad.counterexample->magnitude - 9 * std::sqrt(3.0)) < 1e-9);
    CyclotomicNumber g = gauss_sum({2, enumerate_characters(3)[bad.counterexample->chi_index], bad.counterexample->X,
                                    bad.counterexample->R, 3, diag2(1, 2)});
    CHECK_FALSE(g.is_zero());
    CHECK(std::abs(g.to_complex() - gauss_oracle(2, enumerate_characters(3)[1], bad.counterexample->X, bad.counterexample->R, 3, diag2(1, 2))) < 1e-9);

    RationalMatrix Qu(2, 2);
    Qu << 1, 1, 0, 1;
    CHECK(vanishing_certificate(2, 3, I, Qu).zero);
    CHECK_FALSE(vanishing_certificate(2, 3, diag2(1, 2), Qu).zero);
    CHECK(vanishing_certificate(2, 3, diag2(1, 3), I).zero);

    CHECK_THROWS_AS(vanishing_certificate(2, 2, I, I), DomainError);
    RationalMatrix lower(2, 2);
    lower << 1, 0, 1, 1;
    CHECK_THROWS_AS(vanishing_certificate(2, 3, I, lower), DomainError);
}

TEST_CASE("eta sigma Schwartz function")
{
    DirichletCharacter odd3 = enumerate_characters(3)[1];
    RationalMatrix one = RationalMatrix::Identity(1, 1);
    SchwartzSpec spec{one, odd3, one};
    IntMatrix b = IntMatrix::Zero(1, 1);
    SchwartzValue v = eta_sigma_schwartz(spec, b, one, 3);
    CHECK(v.support);
    CHECK(v.p_divides_conductor);
    CHECK(v.level == -1);
    // X = 2F Q^T tau x = 6 = 0 mod 3: sum of chi over all units
    CHECK(v.cyclotomic.is_zero());
    CHECK(v.is_zero());
    // prefactor |2 Q F tau|^(-1/2) = 6^(-1/2)
    CHECK(v.prefactor.coeff == Rational(1, 6));
    CHECK(v.prefactor.radicand == 6);

    SchwartzValue w = eta_sigma_schwartz(spec, b, RationalMatrix::Identity(1, 1) * Rational(1, 3), 3);
    CHECK(w.support);
    CHECK_FALSE(w.cyclotomic.is_zero()); // X = 2: a classical Gauss sum

    SchwartzSpec plain{one, DirichletCharacter::trivial(1), one};
    SchwartzValue u = eta_sigma_schwartz(plain, b, RationalMatrix::Identity(1, 1) * Rational(1, 9), 3);
    CHECK_FALSE(u.p_divides_conductor);
    CHECK_FALSE(u.support);
    SchwartzValue s = eta_sigma_schwartz(plain, b, one, 3);
    CHECK(s.support);
    CHECK(s.prefactor.to_double() == doctest::Approx(1.0));
}
