#include "rsiegel/arith.hpp"
#include "rsiegel/errors.hpp"
#include "rsiegel/rational.hpp"

#include <mutex>
#include <numeric>

namespace rsiegel {

bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

const std::vector<std::int64_t>& primes_up_to(std::int64_t bound)
{
    static std::mutex lock;
    static std::vector<std::int64_t> primes;
    static std::int64_t sieved = 1;
    std::lock_guard<std::mutex> guard(lock);
    if (bound > sieved) {
        std::int64_t limit = std::max(bound, 2 * sieved);
        std::vector<char> composite(static_cast<std::size_t>(limit + 1), 0);
        primes.clear();
        for (std::int64_t i = 2; i <= limit; ++i) {
            if (composite[static_cast<std::size_t>(i)]) continue;
            primes.push_back(i);
            for (std::int64_t j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = 1;
        }
        sieved = limit;
    }
    return primes;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n)
{
    if (n < 1) throw DomainError("factorize expects a positive integer");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) { n /= d; ++e; }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_squarefree(std::int64_t n)
{
    for (auto [p, e] : factorize(n < 0 ? -n : n))
        if (e > 1) return false;
    return true;
}

std::int64_t squarefree_part(std::int64_t n)
{
    if (n == 0) throw DomainError("squarefree part of zero");
    std::int64_t out = n < 0 ? -1 : 1;
    for (auto [p, e] : factorize(n < 0 ? -n : n))
        if (e % 2) out *= p;
    return out;
}

std::int64_t primitive_root(std::int64_t p)
{
    if (!is_prime(p) || p == 2) throw DomainError("primitive_root expects an odd prime");
    auto fac = factorize(p - 1);
    for (std::int64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [q, e] : fac)
            if (mod_pow(g, (p - 1) / q, p) == 1) { ok = false; break; }
        if (!ok) continue;
        // g generates mod p^2 unless g^(p-1) == 1 mod p^2
        if (mod_pow(g, p - 1, p * p) != 1) return g;
    }
    throw DomainError("no primitive root found");
}

int kronecker(std::int64_t a, std::int64_t n)
{
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int twos = 0;
    while (n % 2 == 0) { n /= 2; ++twos; }
    if (twos > 0) {
        if (a % 2 == 0) return 0;
        std::int64_t r = positive_mod(a, 8);
        if ((twos % 2) && (r == 3 || r == 5)) result = -result;
    }
    // Jacobi symbol (a/n), n odd positive
    a = positive_mod(a, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::int64_t r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

} // namespace rsiegel
