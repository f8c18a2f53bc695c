#include "rsiegel/forms.hpp"
#include "rsiegel/errors.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

namespace rsiegel {

namespace {

void check_definite(const IntMatrix& R)
{
    if (!is_symmetric(R)) throw DomainError("form is not symmetric");
    if (!is_positive_definite(to_rational(R))) throw DomainError("form is not positive definite");
}

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

} // namespace

Reduction minkowski_reduce(const IntMatrix& R)
{
    const Eigen::Index n = R.rows();
    if (n > 2) throw UnsupportedError("minkowski_reduce supports n <= 2");
    check_definite(R);
    Reduction out{R, IntMatrix::Identity(n, n)};
    if (n == 1) return out;
    IntMatrix& F = out.reduced;
    IntMatrix& U = out.transform;
    auto apply = [&](const IntMatrix& V) {
        F = V.transpose() * F * V;
        U = U * V;
    };
    for (;;) {
        const std::int64_t a = F(0, 0), b = F(0, 1), c = F(1, 1);
        if (a > c) {
            IntMatrix V(2, 2);
            V << 0, 1, 1, 0;
            apply(V);
            continue;
        }
        if (2 * b > a || 2 * b < -a) {
            std::int64_t t = floor_div(2 * b + a, 2 * a); // nearest integer to b/a
            IntMatrix V(2, 2);
            V << 1, -t, 0, 1;
            apply(V);
            continue;
        }
        if (b < 0) {
            IntMatrix V(2, 2);
            V << 1, 0, 0, -1;
            apply(V);
            continue;
        }
        break;
    }
    return out;
}

std::vector<IntVector> representations(const RationalMatrix& tau, const Rational& value)
{
    const Eigen::Index n = tau.rows();
    std::vector<IntVector> out;
    if (value < 0) return out;
    RationalMatrix inv = inverse(tau);
    // |v_i|^2 <= (tau^-1)_ii * v^T tau v by Cauchy-Schwarz in the tau inner product
    std::vector<std::int64_t> box(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        double b = std::sqrt(static_cast<double>(inv(i, i) * value));
        box[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::floor(b + 1e-9));
    }
    IntVector v(n);
    Eigen::MatrixXd td = to_double(tau);
    const double target = static_cast<double>(value);
    std::vector<std::int64_t> lo(box.size()), hi(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) { lo[i] = -box[i]; hi[i] = box[i]; }
    for (Eigen::Index i = 0; i < n; ++i) v(i) = lo[static_cast<std::size_t>(i)];
    if (n == 0) return out;
    for (;;) {
        Eigen::VectorXd vd = v.cast<double>();
        double q = vd.dot(td * vd);
        if (std::abs(q - target) < 1e-6 * (1 + target)) {
            RationalMatrix vr = to_rational(IntMatrix(v));
            Rational exact = (vr.transpose() * tau * vr)(0, 0);
            if (exact == value) out.push_back(v);
        }
        Eigen::Index k = n - 1;
        while (k >= 0 && v(k) == hi[static_cast<std::size_t>(k)]) {
            v(k) = lo[static_cast<std::size_t>(k)];
            --k;
        }
        if (k < 0) break;
        ++v(k);
    }
    return out;
}

namespace {

// Columns chosen one at a time; cross terms checked exactly.
void assemble(const RationalMatrix& tau, const IntMatrix& R, const std::vector<std::vector<IntVector>>& cands,
              std::vector<IntVector>& chosen, std::vector<IntMatrix>& out, bool unimodular_only)
{
    const std::size_t n = cands.size();
    const std::size_t k = chosen.size();
    if (k == n) {
        IntMatrix xi(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t j = 0; j < n; ++j) xi.col(static_cast<Eigen::Index>(j)) = chosen[j];
        std::int64_t d = det(xi);
        if (d == 0) return;
        if (unimodular_only && d != 1 && d != -1) return;
        out.push_back(xi);
        return;
    }
    for (const auto& v : cands[k]) {
        RationalMatrix vr = to_rational(IntMatrix(v));
        bool ok = true;
        for (std::size_t j = 0; j < k && ok; ++j) {
            RationalMatrix wr = to_rational(IntMatrix(chosen[j]));
            ok = (wr.transpose() * tau * vr)(0, 0) == Rational(R(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)));
        }
        if (!ok) continue;
        chosen.push_back(v);
        assemble(tau, R, cands, chosen, out, unimodular_only);
        chosen.pop_back();
    }
}

std::vector<IntMatrix> solve(const RationalMatrix& tau, const IntMatrix& R, bool unimodular_only)
{
    const Eigen::Index n = R.rows();
    std::vector<std::vector<IntVector>> cands;
    for (Eigen::Index j = 0; j < n; ++j) cands.push_back(representations(tau, Rational(R(j, j))));
    std::vector<IntVector> chosen;
    std::vector<IntMatrix> out;
    assemble(tau, R, cands, chosen, out, unimodular_only);
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

} // namespace

std::vector<IntMatrix> automorph_group(const IntMatrix& R)
{
    if (R.rows() > 3) throw UnsupportedError("automorph_group supports n <= 3");
    check_definite(R);
    return solve(to_rational(R), R, true);
}

std::vector<IntMatrix> lattice_solutions(const RationalMatrix& tau, const IntMatrix& R)
{
    if (R.rows() > 4) throw UnsupportedError("lattice_solutions supports n <= 4");
    if (!is_positive_definite(tau)) throw DomainError("tau is not positive definite");
    check_definite(R);
    return solve(tau, R, false);
}

bool p_adic_membership(const RationalMatrix& M, std::int64_t p, int e)
{
    for (Eigen::Index i = 0; i < M.size(); ++i)
        if (M(i) != 0 && valuation(M(i), p) < e) return false;
    return true;
}

std::vector<IntMatrix> reduced_forms(int n, std::int64_t det_bound)
{
    std::vector<IntMatrix> out;
    if (n == 1) {
        for (std::int64_t r = 1; r <= det_bound; ++r) out.push_back(IntMatrix::Constant(1, 1, r));
        return out;
    }
    if (n != 2) throw UnsupportedError("reduced_forms supports n <= 2");
    // ac - b^2 >= 3a^2/4 bounds a
    for (std::int64_t a = 1; 3 * a * a <= 4 * det_bound; ++a)
        for (std::int64_t b = 0; 2 * b <= a; ++b)
            for (std::int64_t c = a; a * c - b * b <= det_bound; ++c) {
                IntMatrix f(2, 2);
                f << a, b, b, c;
                out.push_back(f);
            }
    std::stable_sort(out.begin(), out.end(), [](const IntMatrix& x, const IntMatrix& y) {
        std::int64_t dx = det(x), dy = det(y);
        if (dx != dy) return dx < dy;
        return lex_less(x, y);
    });
    return out;
}

std::vector<IntMatrix> hnf_cosets(int n, std::int64_t det_bound)
{
    std::vector<IntMatrix> out;
    if (n == 1) {
        for (std::int64_t a = 1; a <= det_bound; ++a) out.push_back(IntMatrix::Constant(1, 1, a));
        return out;
    }
    if (n != 2) throw UnsupportedError("hnf_cosets supports n <= 2");
    for (std::int64_t a = 1; a <= det_bound; ++a)
        for (std::int64_t d = 1; a * d <= det_bound; ++d)
            for (std::int64_t b = 0; b < d; ++b) {
                IntMatrix h(2, 2);
                h << a, 0, b, d;
                out.push_back(h);
            }
    return out;
}

IntMatrix random_unimodular(int n, std::uint64_t& state, int steps)
{
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    IntMatrix u = IntMatrix::Identity(n, n);
    if (n == 1) {
        if (next() & 1) u(0, 0) = -1;
        return u;
    }
    for (int s = 0; s < steps; ++s) {
        int i = static_cast<int>(next() % static_cast<std::uint64_t>(n));
        int j = static_cast<int>(next() % static_cast<std::uint64_t>(n - 1));
        if (j >= i) ++j;
        std::uint64_t kind = next() % 4;
        if (kind == 0) {
            u.col(i) *= -1;
        } else {
            std::int64_t c = (kind == 1) ? 1 : -1;
            u.col(j) += c * u.col(i);
        }
    }
    return u;
}

} // namespace rsiegel
