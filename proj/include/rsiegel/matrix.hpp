#pragma once

#include "rsiegel/rational.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace rsiegel {

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Mat<std::int64_t>;
using RationalMatrix = Mat<Rational>;
using IntVector = Vec<std::int64_t>;

RationalMatrix to_rational(const IntMatrix& m);
Eigen::MatrixXd to_double(const RationalMatrix& m);
Eigen::MatrixXd to_double(const IntMatrix& m);

// Exact determinants (Bareiss for integers, Gaussian elimination for rationals).
std::int64_t det(const IntMatrix& m);
Rational det(const RationalMatrix& m);
RationalMatrix inverse(const RationalMatrix& m);

bool is_symmetric(const RationalMatrix& m);
bool is_symmetric(const IntMatrix& m);
bool is_integral(const RationalMatrix& m);
IntMatrix to_integer(const RationalMatrix& m); // requires is_integral

// Leading principal minors all > 0 (S+) or >= 0 (semidefinite variant of the check).
bool is_positive_definite(const RationalMatrix& m);

// Flattened row-major comparison used for deterministic ordering.
bool lex_less(const IntMatrix& a, const IntMatrix& b);

std::string to_string(const IntMatrix& m);
std::string to_string(const RationalMatrix& m);

} // namespace rsiegel
