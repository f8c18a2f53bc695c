#include <doctest.h>

#include "rsiegel/weights.hpp"

#include <random>

using namespace rsiegel;

namespace {

std::vector<OrthWeight> all_orth_weights(int n, int bound)
{
    const int l = n / 2;
    std::vector<OrthWeight> out;
    std::vector<int> m(static_cast<std::size_t>(l), 0);
    for (;;) {
        if (std::is_sorted(m.rbegin(), m.rend()))
            for (int sign : {1, -1}) {
                OrthWeight w{n, m, sign};
                bool all_zero = std::all_of(m.begin(), m.end(), [](int v) { return v == 0; });
                if (n % 2 == 0 && sign == -1 && all_zero) continue;
                out.push_back(w);
            }
        int k = 0;
        while (k < l && ++m[static_cast<std::size_t>(k)] > bound) m[static_cast<std::size_t>(k++)] = 0;
        if (k == l) break;
    }
    return out;
}

RationalMatrix random_invertible(std::mt19937& gen)
{
    std::uniform_int_distribution<int> d(-5, 5);
    for (;;) {
        RationalMatrix a(2, 2);
        a << Rational(d(gen), 1 + (d(gen) + 5) % 3), Rational(d(gen)), Rational(d(gen), 2), Rational(d(gen));
        if (det(a) != 0) return a;
    }
}

} // namespace

TEST_CASE("kv_tau golden cases")
{
    CHECK(kv_tau({3, {2}, 1}).m == std::vector<int>{2, 0, 0});
    CHECK(kv_tau({3, {0}, -1}).m == std::vector<int>{1, 1, 1});
    CHECK(kv_tau({4, {2, 0}, -1}).m == std::vector<int>{2, 1, 1, 0});
    CHECK(kv_tau({4, {2, 1}, -1}).m == std::vector<int>{2, 1, 0, 0});
    CHECK(kv_tau({5, {0, 0}, -1}).m == std::vector<int>{1, 1, 1, 1, 1});
    CHECK(kv_tau({5, {3, 0}, 1}).m == std::vector<int>{3, 1, 1, 1, 0});
    CHECK_THROWS_AS(kv_tau({4, {0, 0}, -1}), DomainError);
    CHECK_THROWS_AS(kv_tau({4, {0, 1}, 1}), DomainError);
    CHECK_THROWS_AS(kv_tau({3, {1, 1}, 1}), DomainError);
}

TEST_CASE("tau_sigma_membership")
{
    CHECK_FALSE(tau_sigma_membership({2, {1, 1}}).has_value());
    auto l3 = tau_sigma_membership({3, {3, 0, 0}});
    REQUIRE(l3.has_value());
    CHECK(*l3 == OrthWeight{3, {3}, -1});
    for (int n = 1; n <= 5; ++n) {
        auto t = tau_sigma_membership({n, std::vector<int>(static_cast<std::size_t>(n), 0)});
        REQUIRE(t.has_value());
        CHECK(t->sign == 1);
    }
    // exhaustive: every returned lambda maps back, and every lambda is found
    for (int n = 1; n <= 5; ++n)
        for (const OrthWeight& w : all_orth_weights(n, 3)) {
            GLWeight rho = kv_tau(w);
            CHECK(rho.is_dominant());
            auto back = tau_sigma_membership(rho);
            REQUIRE(back.has_value());
            bool coincide = n % 2 == 0 && w.sign == -1 && w.m.back() != 0;
            if (coincide) CHECK(*back == OrthWeight{n, w.m, 1});
            else CHECK(*back == w);
            CHECK(kv_tau(*back) == rho);
        }
}

TEST_CASE("parse_orth_weight")
{
    CHECK(parse_orth_weight(3, "2;+1") == OrthWeight{3, {2}, 1});
    CHECK(parse_orth_weight(4, "2,0;-") == OrthWeight{4, {2, 0}, -1});
    CHECK_THROWS_AS(parse_orth_weight(3, "2"), DomainError);
    CHECK_THROWS_AS(parse_orth_weight(3, "2,1;+1"), DomainError);
}

TEST_CASE("materialize_sym_rep")
{
    RationalMatrix A(2, 2);
    A << 2, 0, 0, 3;
    CHECK(materialize_sym_rep(0, 1)(A)(0, 0) == Rational(6));
    CHECK(materialize_sym_rep(1, 0)(RationalMatrix(RationalMatrix::Identity(2, 2))) == RationalMatrix::Identity(2, 2));
    RationalMatrix d2 = materialize_sym_rep(2, 0)(A);
    RationalMatrix expect = RationalMatrix::Zero(3, 3);
    expect(0, 0) = 4;
    expect(1, 1) = 6;
    expect(2, 2) = 9;
    CHECK(d2 == expect);
    RationalMatrix S = RationalMatrix::Zero(2, 2);
    CHECK_THROWS_AS(materialize_sym_rep(2, 0)(S), DomainError);

    std::mt19937 gen(7);
    for (int j = 0; j <= 4; ++j)
        for (int k = -1; k <= 2; ++k)
            for (int trial = 0; trial < 10; ++trial) {
                GLRep rho = materialize_sym_rep(j, k);
                RationalMatrix a = random_invertible(gen), b = random_invertible(gen);
                CHECK(rho(RationalMatrix(a * b)) == RationalMatrix(rho(a) * rho(b)));
                CHECK(RationalMatrix(rho(a) * rho(inverse(a))) == RationalMatrix::Identity(j + 1, j + 1));
            }
}

TEST_CASE("Sym^j hermitian form is compatible with the adjoint")
{
    std::mt19937 gen(11);
    std::normal_distribution<double> nd;
    for (int j = 0; j <= 4; ++j) {
        GLRep rho = materialize_sym_rep(j, 1);
        Eigen::VectorXd g = rho.gram_weights();
        Eigen::MatrixXcd G = g.cast<std::complex<double>>().asDiagonal();
        for (int trial = 0; trial < 5; ++trial) {
            Eigen::MatrixXcd M(2, 2);
            for (int i = 0; i < 4; ++i) M(i) = {nd(gen), nd(gen)};
            Eigen::VectorXcd v = Eigen::VectorXcd::Random(j + 1), w = Eigen::VectorXcd::Random(j + 1);
            std::complex<double> lhs = w.dot(G * (rho(M) * v));
            std::complex<double> rhs = Eigen::VectorXcd(rho(Eigen::MatrixXcd(M.adjoint())) * w).dot(G * v);
            CHECK(std::abs(lhs - rhs) < 1e-10 * (1 + std::abs(lhs)));
        }
    }
}
