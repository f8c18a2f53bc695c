#include "rsiegel/matrix.hpp"
#include "rsiegel/errors.hpp"

#include <sstream>
#include <utility>
#include <vector>

namespace rsiegel {

RationalMatrix to_rational(const IntMatrix& m)
{
    RationalMatrix r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

Eigen::MatrixXd to_double(const RationalMatrix& m)
{
    Eigen::MatrixXd r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = static_cast<double>(m(i, j));
    return r;
}

Eigen::MatrixXd to_double(const IntMatrix& m) { return m.cast<double>(); }

std::int64_t det(const IntMatrix& m)
{
    const Eigen::Index n = m.rows();
    if (n != m.cols()) throw DomainError("determinant of a non-square matrix");
    if (n == 0) return 1;
    std::vector<__int128> a(static_cast<std::size_t>(n * n));
    auto at = [&](Eigen::Index i, Eigen::Index j) -> __int128& { return a[static_cast<std::size_t>(i * n + j)]; };
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) at(i, j) = m(i, j);
    __int128 prev = 1;
    int sign = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            Eigen::Index piv = k + 1;
            while (piv < n && at(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (Eigen::Index j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        prev = at(k, k);
    }
    return sign * static_cast<std::int64_t>(at(n - 1, n - 1));
}

Rational det(const RationalMatrix& m)
{
    if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
    if (m.rows() == 0) return Rational(1);
    RationalMatrix a = m;
    const Eigen::Index n = a.rows();
    Rational d = 1;
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index piv = k;
        while (piv < n && a(piv, k) == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != k) {
            a.row(k).swap(a.row(piv));
            d = -d;
        }
        d *= a(k, k);
        for (Eigen::Index i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rational f = a(i, k) / a(k, k);
            for (Eigen::Index j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return d;
}

RationalMatrix inverse(const RationalMatrix& m)
{
    const Eigen::Index n = m.rows();
    if (n != m.cols()) throw DomainError("inverse of a non-square matrix");
    RationalMatrix a = m;
    RationalMatrix inv = RationalMatrix::Identity(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index piv = k;
        while (piv < n && a(piv, k) == 0) ++piv;
        if (piv == n) throw DomainError("singular matrix");
        a.row(k).swap(a.row(piv));
        inv.row(k).swap(inv.row(piv));
        Rational f = 1 / a(k, k);
        a.row(k) *= f;
        inv.row(k) *= f;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            Rational g = a(i, k);
            a.row(i) -= g * a.row(k);
            inv.row(i) -= g * inv.row(k);
        }
    }
    return inv;
}

bool is_symmetric(const RationalMatrix& m)
{
    if (m.rows() != m.cols()) return false;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < i; ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

bool is_symmetric(const IntMatrix& m) { return m.rows() == m.cols() && m == m.transpose(); }

bool is_integral(const RationalMatrix& m)
{
    for (Eigen::Index i = 0; i < m.size(); ++i)
        if (denom(m(i)) != 1) return false;
    return true;
}

IntMatrix to_integer(const RationalMatrix& m)
{
    IntMatrix r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (denom(m(i, j)) != 1) throw DomainError("matrix is not integral");
            r(i, j) = numer(m(i, j)).convert_to<std::int64_t>();
        }
    return r;
}

bool is_positive_definite(const RationalMatrix& m)
{
    if (!is_symmetric(m)) return false;
    for (Eigen::Index k = 1; k <= m.rows(); ++k)
        if (det(RationalMatrix(m.topLeftCorner(k, k))) <= 0) return false;
    return true;
}

bool lex_less(const IntMatrix& a, const IntMatrix& b)
{
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
    return false;
}

std::string to_string(const IntMatrix& m)
{
    std::ostringstream os;
    os << '[';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

std::string to_string(const RationalMatrix& m)
{
    std::ostringstream os;
    os << '[';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << to_string(m(i, j));
        os << ']';
    }
    os << ']';
    return os.str();
}

} // namespace rsiegel
