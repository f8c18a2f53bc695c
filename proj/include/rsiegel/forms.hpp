#pragma once

#include "rsiegel/matrix.hpp"

#include <cstdint>
#include <vector>

namespace rsiegel {

struct Reduction {
    IntMatrix reduced;
    IntMatrix transform; // transform^T * R * transform == reduced
};

// Integral positive definite R, n <= 2. For n = 2 the result satisfies 0 <= 2b <= a <= c.
Reduction minkowski_reduce(const IntMatrix& R);

// All unimodular u with u^T R u = R, n <= 3, lexicographically ordered.
std::vector<IntMatrix> automorph_group(const IntMatrix& R);

// All integer xi with xi^T tau xi = R (det xi != 0), lexicographically ordered.
std::vector<IntMatrix> lattice_solutions(const RationalMatrix& tau, const IntMatrix& R);

// True iff every entry of M has p-valuation >= e.
bool p_adic_membership(const RationalMatrix& M, std::int64_t p, int e);

// Integer vectors v with v^T tau v == value, lexicographic order.
std::vector<IntVector> representations(const RationalMatrix& tau, const Rational& value);

// Reduced integral binary forms [[a,b],[b,c]] with det <= bound, ordered by det then lexicographically.
// For n = 1 the forms (r), 1 <= r <= bound.
std::vector<IntMatrix> reduced_forms(int n, std::int64_t det_bound);

// Column Hermite normal forms: representatives of (M_n(Z) cap GL_n(Q)) / GL_n(Z)
// with |det| <= det_bound. For n = 2 these are [[a,0],[b,d]], a,d > 0, 0 <= b < d.
std::vector<IntMatrix> hnf_cosets(int n, std::int64_t det_bound);

IntMatrix random_unimodular(int n, std::uint64_t& state, int steps);

} // namespace rsiegel
