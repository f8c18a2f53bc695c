#include <doctest.h>

#include "rsiegel/cusps.hpp"
#include "rsiegel/errors.hpp"

#include <set>

using namespace rsiegel;

namespace {

std::int64_t md(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

// Brute-force double cosets Q \ SL_2(Z/m) / B, B = lower-left entry 0 mod m.
int sl2_double_coset_count(std::int64_t m)
{
    using M2 = std::array<std::int64_t, 4>;
    auto mul = [m](const M2& a, const M2& b) {
        return M2{md(a[0] * b[0] + a[1] * b[2], m), md(a[0] * b[1] + a[1] * b[3], m),
                  md(a[2] * b[0] + a[3] * b[2], m), md(a[2] * b[1] + a[3] * b[3], m)};
    };
    std::vector<M2> group, Q, B;
    for (std::int64_t a = 0; a < m; ++a)
        for (std::int64_t b = 0; b < m; ++b)
            for (std::int64_t c = 0; c < m; ++c)
                for (std::int64_t d = 0; d < m; ++d)
                    if (md(a * d - b * c, m) == 1 % m) {
                        M2 g{a, b, c, d};
                        group.push_back(g);
                        if (b == 0 && c == 0) Q.push_back(g);
                        if (c == 0) B.push_back(g);
                    }
    std::set<M2> canon;
    for (const M2& g : group) {
        M2 best = g;
        for (const M2& q : Q)
            for (const M2& b : B) best = std::min(best, mul(mul(q, g), b));
        canon.insert(best);
    }
    return static_cast<int>(canon.size());
}

// Orbits of Q = {diag(g, g^-T)} on lines of F_p^4; lines are the images of e_2 under Sp_2.
int n2_line_orbit_count(std::int64_t p)
{
    using V = std::array<std::int64_t, 4>;
    auto normalize = [p](V v) {
        int k = 0;
        while (v[k] == 0) ++k;
        std::int64_t inv = 1;
        while (md(inv * v[k], p) != 1) ++inv;
        for (auto& x : v) x = md(x * inv, p);
        return v;
    };
    std::set<V> lines;
    for (std::int64_t i = 1; i < p * p * p * p; ++i) {
        V v{i % p, (i / p) % p, (i / p / p) % p, (i / p / p / p) % p};
        lines.insert(normalize(v));
    }
    auto gl = gl_mod(2, p);
    std::set<V> seen;
    int orbits = 0;
    for (const V& l : lines) {
        if (seen.count(l)) continue;
        ++orbits;
        for (const IntMatrix& g : gl) {
            std::int64_t dt = md(g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0), p);
            std::int64_t di = 1;
            while (md(di * dt, p) != 1) ++di;
            // g^-T = adj(g)^T / det
            std::int64_t t00 = md(g(1, 1) * di, p), t01 = md(-g(1, 0) * di, p);
            std::int64_t t10 = md(-g(0, 1) * di, p), t11 = md(g(0, 0) * di, p);
            V w{md(g(0, 0) * l[0] + g(0, 1) * l[1], p), md(g(1, 0) * l[0] + g(1, 1) * l[1], p),
                md(t00 * l[2] + t01 * l[3], p), md(t10 * l[2] + t11 * l[3], p)};
            seen.insert(normalize(w));
        }
    }
    return orbits;
}

} // namespace

TEST_CASE("candidates are symplectic")
{
    for (int n : {1, 2})
        for (std::int64_t p : {2, 3, 5}) {
            auto c = candidate_reps(n, p);
            CHECK(c.size() == static_cast<std::size_t>(2 * (n == 1 ? p : p * p * p)));
            for (const auto& a : c) CHECK(is_symplectic_mod(a.entries, p));
        }
}

TEST_CASE("symplectic inverse")
{
    for (const auto& a : candidate_reps(2, 3)) {
        IntMatrix prod = a.entries * symplectic_inverse_mod(a.entries, 3);
        for (Eigen::Index i = 0; i < prod.size(); ++i) prod(i) = md(prod(i), 3);
        CHECK(prod == IntMatrix::Identity(4, 4));
    }
}

TEST_CASE("double coset counts match brute force")
{
    for (std::int64_t p : {2, 3, 5, 7}) CHECK(dedup_double_cosets(1, p).size() == sl2_double_coset_count(p));
    for (std::int64_t p : {2, 3, 5}) CHECK(dedup_double_cosets(2, p).size() == n2_line_orbit_count(p));
    CHECK(dedup_double_cosets(1, 3).size() == 4);
    CHECK(dedup_double_cosets(1, 2).size() == 3);
    CHECK(dedup_double_cosets(2, 3).size() == 5);
    CHECK(dedup_double_cosets(2, 5).size() == 5);
}

TEST_CASE("representatives are least and pairwise inequivalent")
{
    auto reps = dedup_double_cosets(2, 3);
    CHECK(reps.front().kind == CuspKind::m);
    CHECK(reps.front().entries == IntMatrix::Identity(4, 4));
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
            CHECK_FALSE(double_coset_equivalent(reps[i].entries, reps[j].entries, 2, 3));
    // every candidate is equivalent to some earlier-or-equal representative
    for (const auto& c : candidate_reps(2, 3)) {
        bool found = false;
        for (const auto& r : reps) found = found || double_coset_equivalent(r.entries, c.entries, 2, 3);
        CHECK(found);
    }
}

TEST_CASE("crt combination over 2p")
{
    for (std::int64_t p : {3, 5}) {
        auto reps = crt_combine(1, 2 * p);
        CHECK(reps.size() == 3 * 4);
        CHECK(static_cast<int>(reps.size()) == sl2_double_coset_count(2 * p));
        auto reps2 = crt_combine(2, 2 * p);
        CHECK(reps2.size() == dedup_double_cosets(2, 2).size() * 5);
        std::set<std::string> kinds;
        for (const auto& r : reps2) kinds.insert(r.kind_vector());
        CHECK(kinds.size() == 4);
    }
    CHECK_THROWS_AS(crt_combine(1, 12), DomainError);
    CHECK_THROWS_AS(dedup_double_cosets(3, 3), GuardError);
}

TEST_CASE("sl2 lifting")
{
    for (std::int64_t m : {6, 10, 15})
        for (const auto& r : crt_combine(1, m)) {
            IntMatrix a(2, 2);
            // combine local matrices by CRT
            for (int k = 0; k < 4; ++k) {
                std::int64_t x = 0;
                while (true) {
                    bool ok = true;
                    for (std::size_t i = 0; i < r.primes.size(); ++i)
                        ok = ok && md(x, r.primes[i]) == r.local[i].entries(k / 2, k % 2);
                    if (ok) break;
                    ++x;
                }
                a(k / 2, k % 2) = x;
            }
            IntMatrix g = lift_sl2(a, m);
            CHECK(g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) == 1);
            for (int k = 0; k < 4; ++k) CHECK(md(g(k / 2, k % 2) - a(k / 2, k % 2), m) == 0);
        }
    IntMatrix bad(4, 4);
    CHECK_THROWS_AS(lift_sl2(bad, 6), UnsupportedError);
}
