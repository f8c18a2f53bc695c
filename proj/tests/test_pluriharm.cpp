#include <doctest.h>

#include "rsiegel/errors.hpp"
#include "rsiegel/pluriharm.hpp"

#include <random>

using namespace rsiegel;

namespace {

const GaussRational I(Rational(0), Rational(1));

MatrixPolynomial x(int n, int i, int j) { return MatrixPolynomial::variable(n, i, j); }

// Dominant weights of the Sigma_+ shape (m_1..m_l, 0..0) plus all-ones.
std::vector<GLWeight> generator_weights(int n, int bound)
{
    std::vector<GLWeight> out;
    const int l = n / 2;
    std::vector<int> m(static_cast<std::size_t>(l), 0);
    for (;;) {
        if (std::is_sorted(m.rbegin(), m.rend())) {
            GLWeight w{n, std::vector<int>(static_cast<std::size_t>(n), 0)};
            std::copy(m.begin(), m.end(), w.m.begin());
            out.push_back(w);
        }
        int k = 0;
        while (k < l && ++m[static_cast<std::size_t>(k)] > bound) m[static_cast<std::size_t>(k++)] = 0;
        if (k == l) break;
    }
    out.push_back({n, std::vector<int>(static_cast<std::size_t>(n), 1)});
    return out;
}

} // namespace

TEST_CASE("laplacian")
{
    CHECK(laplacian(x(2, 1, 1), 1, 1).is_zero());
    CHECK(laplacian(x(2, 1, 1).pow(2), 1, 1) == MatrixPolynomial::constant(2, GaussRational(2)));
    MatrixPolynomial d = MatrixPolynomial::determinant(2);
    CHECK(laplacian(d, 1, 1).is_zero());
    CHECK(laplacian(d, 1, 2).is_zero());
    CHECK_THROWS_AS(laplacian(d, 0, 1), DomainError);
    MatrixPolynomial p = (x(3, 1, 1) * x(3, 2, 2) + x(3, 2, 3).pow(3)) * x(3, 1, 3);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) CHECK(laplacian(p, i, j) == laplacian(p, j, i));
}

TEST_CASE("is_pluriharmonic")
{
    for (int n = 1; n <= 4; ++n) CHECK(is_pluriharmonic(MatrixPolynomial::determinant(n)).pluriharmonic);
    auto bad = is_pluriharmonic(x(2, 1, 1).pow(2));
    CHECK_FALSE(bad.pluriharmonic);
    CHECK(bad.i == 1);
    CHECK(bad.j == 1);
    CHECK(bad.remainder == MatrixPolynomial::constant(2, GaussRational(2)));
    MatrixPolynomial u = x(2, 1, 1) + x(2, 2, 1) * I;
    for (int m = 1; m <= 4; ++m) CHECK(is_pluriharmonic(u.pow(m)).pluriharmonic);
}

TEST_CASE("isotropic frame")
{
    for (int n = 2; n <= 4; ++n) {
        auto [re, im] = isotropic_frame(n);
        // A A^T with A = re + i im
        RationalMatrix rr = re * re.transpose() - im * im.transpose();
        RationalMatrix ii = re * im.transpose() + im * re.transpose();
        CHECK(ii == RationalMatrix::Zero(n, n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Rational expect = (a + b == n - 1) ? Rational(2) : Rational(0);
                if (n % 2 && a == n / 2 && b == n / 2) expect = 1;
                CHECK(rr(a, b) == expect);
            }
    }
}

TEST_CASE("kv_generator")
{
    MatrixPolynomial u = x(2, 1, 1) + x(2, 2, 1) * I;
    CHECK(kv_generator({2, {1, 0}}) == u);
    CHECK(kv_generator({2, {2, 0}}) == u.pow(2));
    CHECK(kv_generator({3, {1, 1, 1}}) == MatrixPolynomial::determinant(3));
    CHECK(kv_generator({2, {0, 0}}) == MatrixPolynomial::constant(2, GaussRational(1)));
    CHECK_THROWS_AS(kv_generator({4, {2, 1, 1, 0}}), UnsupportedError);
    CHECK_THROWS_AS(kv_generator({3, {1, 1, 0}}), UnsupportedError);
    CHECK_THROWS_AS(kv_generator({2, {2, 2}}), DomainError);
    for (int n = 2; n <= 4; ++n)
        for (const GLWeight& w : generator_weights(n, 3)) {
            MatrixPolynomial p = kv_generator(w);
            CHECK(is_pluriharmonic(p).pluriharmonic);
            WeightProfile prof = weight_profile(p);
            CHECK(prof.homogeneous);
            CHECK(prof.exponents == w.m);
            CHECK(prof.unipotent_invariant);
        }
}

TEST_CASE("weight_profile")
{
    WeightProfile d = weight_profile(MatrixPolynomial::determinant(2));
    CHECK(d.exponents == std::vector<int>{1, 1});
    CHECK(d.unipotent_invariant);
    WeightProfile mixed = weight_profile(x(2, 1, 1) + x(2, 1, 2));
    CHECK_FALSE(mixed.homogeneous);
    // weight vector that is not highest: x12 has weight (0,1) and is moved by unipotents
    WeightProfile low = weight_profile(x(2, 1, 2));
    CHECK(low.homogeneous);
    CHECK_FALSE(low.unipotent_invariant);
}

TEST_CASE("Sym^j vector polynomial transforms by rho")
{
    std::mt19937 gen(3);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int j = 0; j <= 4; ++j) {
        VectorPolynomial P = sym_power_polynomial(j);
        CHECK(is_pluriharmonic(P).pluriharmonic);
        GLRep rho = materialize_sym_rep(j, 0);
        for (int trial = 0; trial < 8; ++trial) {
            RationalMatrix xr(2, 2), g(2, 2);
            xr << Rational(d(gen), 3), Rational(d(gen)), Rational(d(gen)), Rational(d(gen), 2);
            do g << Rational(d(gen)), Rational(d(gen), 5), Rational(d(gen)), Rational(d(gen));
            while (det(g) == 0);
            auto lhs = P.evaluate(RationalMatrix(xr * g.transpose()));
            auto px = P.evaluate(xr);
            RationalMatrix r = rho(g);
            for (int a = 0; a <= j; ++a) {
                GaussRational acc;
                for (int b = 0; b <= j; ++b) acc += GaussRational(r(a, b)) * px[static_cast<std::size_t>(b)];
                CHECK(acc == lhs[static_cast<std::size_t>(a)]);
            }
        }
        // P(1) = coefficients of (X + iY)^j
        auto p1 = P.evaluate(RationalMatrix(RationalMatrix::Identity(2, 2)));
        for (int a = 0; a <= j; ++a) CHECK(p1[static_cast<std::size_t>(a)] == gauss_pow(I, a) * GaussRational(Rational(binomial(j, a))));
    }
}
