#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace rsiegel {

bool is_prime(std::int64_t n);
const std::vector<std::int64_t>& primes_up_to(std::int64_t bound);

// (prime, exponent) pairs in ascending order; n >= 1.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

bool is_squarefree(std::int64_t n);
std::int64_t squarefree_part(std::int64_t n); // sign kept
std::int64_t primitive_root(std::int64_t p);   // least generator of (Z/p^2)^x, hence of every (Z/p^e)^x
int kronecker(std::int64_t a, std::int64_t n);

} // namespace rsiegel
