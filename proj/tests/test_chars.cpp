#include <doctest.h>

#include "rsiegel/arith.hpp"
#include "rsiegel/chars.hpp"
#include "rsiegel/errors.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

using namespace rsiegel;

namespace {

// Conductor by definition: least d | F with chi trivial on units = 1 mod d.
std::int64_t brute_conductor(const DirichletCharacter& chi)
{
    const std::int64_t F = chi.modulus();
    for (std::int64_t d = 1; d <= F; ++d) {
        if (F % d) continue;
        bool ok = true;
        for (std::int64_t a = 1; a < F && ok; ++a)
            if (std::gcd(a, F) == 1 && a % d == 1 % d) ok = chi.value_exponent(a) == 0;
        if (ok) return d;
    }
    return F;
}

} // namespace

TEST_CASE("arithmetic helpers")
{
    CHECK(is_prime(13));
    CHECK_FALSE(is_prime(1));
    CHECK(factorize(360) == std::vector<std::pair<std::int64_t, int>>{{2, 3}, {3, 2}, {5, 1}});
    CHECK(squarefree_part(-72) == -2);
    CHECK(primitive_root(7) == 3);
    CHECK(kronecker(-4, 3) == -1);
    CHECK(kronecker(8, 3) == -1);
    CHECK(kronecker(8, 7) == 1);
    CHECK(kronecker(5, 2) == -1);
    // Legendre symbol oracle by Euler's criterion
    for (std::int64_t p : {3, 5, 7, 11, 13})
        for (std::int64_t a = 1; a < p; ++a) {
            std::int64_t e = mod_pow(a, (p - 1) / 2, p);
            CHECK(kronecker(a, p) == (e == 1 ? 1 : -1));
        }
}

TEST_CASE("enumerate_characters")
{
    auto c3 = enumerate_characters(3);
    REQUIRE(c3.size() == 2);
    CHECK(c3[0].is_trivial());
    CHECK(c3[0].parity() == 1);
    CHECK(c3[1].parity() == -1);
    CHECK(c3[1].value(2) == CyclotomicNumber(1, Rational(-1)));
    auto c5 = enumerate_characters(5);
    REQUIRE(c5.size() == 4);
    int odd = 0;
    for (const auto& chi : c5) odd += chi.parity() == -1;
    CHECK(odd == 2);
    auto c1 = enumerate_characters(1);
    REQUIRE(c1.size() == 1);
    CHECK(c1[0].is_trivial());
}

TEST_CASE("characters are multiplicative with vanishing sums")
{
    for (std::int64_t F = 1; F <= 50; ++F) {
        auto chars = enumerate_characters(F);
        CHECK(static_cast<int>(chars.size()) == euler_phi(F));
        for (const auto& chi : chars) {
            for (std::int64_t a = 0; a < F; ++a)
                for (std::int64_t b = 0; b < F; ++b) {
                    if (F > 20 && (a + b) % 7) continue;
                    CHECK(chi.value(a * b) == chi.value(a) * chi.value(b));
                }
            CyclotomicNumber sum(static_cast<int>(chi.order()));
            for (std::int64_t a = 0; a < F; ++a) sum += chi.value(a);
            if (!chi.is_trivial()) CHECK(sum.is_zero());
            else CHECK(sum == CyclotomicNumber(1, Rational(euler_phi(F))));
            CHECK(chi.conductor() == brute_conductor(chi));
            DirichletCharacter prim = chi.primitive();
            CHECK(prim.modulus() == chi.conductor());
            CHECK(prim.conductor() == prim.modulus());
            for (std::int64_t a = 1; a < F; ++a)
                if (std::gcd(a, F) == 1) CHECK(prim.value(a) == chi.value(a));
            CHECK(chi.parity() == prim.parity());
        }
    }
}

TEST_CASE("products and conjugates")
{
    auto c = enumerate_characters(12);
    for (const auto& a : c)
        for (const auto& b : c) {
            DirichletCharacter ab = a * b;
            for (std::int64_t x = 1; x < 12; ++x) CHECK(ab.value(x) == a.value(x) * b.value(x));
        }
    DirichletCharacter x3 = enumerate_characters(3)[1];
    DirichletCharacter x4 = enumerate_characters(4)[1];
    DirichletCharacter x12 = x3 * x4;
    CHECK(x12.modulus() == 12);
    CHECK(x12.parity() == 1);
    for (const auto& chi : enumerate_characters(7))
        CHECK((chi * chi.conj()).is_trivial());
}

TEST_CASE("epsilon_tau")
{
    RationalMatrix t8 = RationalMatrix::Identity(8, 8) * Rational(6);
    QuadCharacter e8 = epsilon_tau(t8, 8);
    CHECK(e8.discriminant == 1);
    CHECK(e8.conductor == 1);
    // determinants past 64 bits
    CHECK(epsilon_tau(RationalMatrix(RationalMatrix::Identity(16, 16) * Rational(10)), 16).discriminant == 1);
    CHECK(epsilon_tau(RationalMatrix(RationalMatrix::Identity(12, 12) * Rational(10)), 12).discriminant == -4);
    RationalMatrix t13 = RationalMatrix::Identity(13, 13) * Rational(10);
    t13(12, 12) = 3;
    CHECK(epsilon_tau(t13, 13).discriminant == -24);
    QuadCharacter e1 = epsilon_tau(RationalMatrix::Identity(1, 1), 1);
    CHECK(e1.discriminant == 8);
    CHECK(e1.parity() == 1);
    QuadCharacter e4 = epsilon_tau(RationalMatrix::Identity(4, 4), 4);
    CHECK(e4.discriminant == -4);
    CHECK(e4.parity() == -1);
    DirichletCharacter d4 = e4.as_dirichlet();
    CHECK(d4.modulus() == 4);
    CHECK(d4.parity() == -1);
    for (std::int64_t D : {5, 8, 12, -3, -4, -7, -8, 13, -15, 24}) {
        QuadCharacter q = quad_character(D);
        CHECK(q.as_dirichlet().parity() == q.parity());
        CHECK(q.as_dirichlet().conductor() == q.conductor);
    }
}

TEST_CASE("dirichlet_L")
{
    LValue z4 = dirichlet_L(4.0, DirichletCharacter(), 100000);
    CHECK(std::abs(z4.value - std::pow(std::numbers::pi, 4) / 90) < 1e-12);
    CHECK(z4.tail_bound < 1e-6);
    CHECK(std::abs(z4.value - std::pow(std::numbers::pi, 4) / 90) <= z4.tail_bound);

    DirichletCharacter chi = enumerate_characters(3)[1];
    LValue l = dirichlet_L(2.0, chi, 20000);
    // series oracle: alternating-in-blocks series with explicit tail bound 1/M
    double series = 0;
    const int M = 3000000;
    for (int m = 1; m <= M; ++m) {
        int r = m % 3;
        if (r == 1) series += 1.0 / (static_cast<double>(m) * m);
        if (r == 2) series -= 1.0 / (static_cast<double>(m) * m);
    }
    CHECK(std::abs(l.value - series) <= l.tail_bound + 1.0 / M);

    LValue shorter = dirichlet_L(3.0, chi, 1000);
    LValue longer = dirichlet_L(3.0, chi, 50000);
    CHECK(std::abs(shorter.value - longer.value) <= shorter.tail_bound + longer.tail_bound);
    CHECK_THROWS_AS(dirichlet_L(1.0, chi, 100), DomainError);
}
