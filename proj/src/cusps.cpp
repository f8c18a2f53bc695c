#include "rsiegel/cusps.hpp"
#include "rsiegel/arith.hpp"
#include "rsiegel/errors.hpp"
#include "rsiegel/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rsiegel {

namespace {

IntMatrix mod_matrix(IntMatrix a, std::int64_t p)
{
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = positive_mod(a(i), p);
    return a;
}

IntMatrix mul_mod(const IntMatrix& a, const IntMatrix& b, std::int64_t p) { return mod_matrix(a * b, p); }

void guard(int n, std::int64_t p)
{
    if (n < 1 || n > 2) throw GuardError("cusp enumeration supports n <= 2");
    if (!is_prime(p)) throw DomainError("p must be prime");
    if (p > 7) throw GuardError("cusp enumeration supports p <= 7");
}

IntMatrix inverse_mod(const IntMatrix& a, std::int64_t p)
{
    const Eigen::Index n = a.rows();
    IntMatrix m(n, 2 * n);
    m << mod_matrix(a, p), IntMatrix::Identity(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index piv = c;
        while (piv < n && m(piv, c) == 0) ++piv;
        if (piv == n) throw DomainError("matrix is singular mod p");
        m.row(c).swap(m.row(piv));
        std::int64_t inv = mod_inverse(m(c, c), p);
        m.row(c) = mod_matrix(IntMatrix(m.row(c) * inv), p);
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == c || m(r, c) == 0) continue;
            m.row(r) = mod_matrix(IntMatrix(m.row(r) - m(r, c) * m.row(c)), p);
        }
    }
    return m.rightCols(n);
}

} // namespace

IntMatrix eta_matrix(int n, std::int64_t p)
{
    IntMatrix e = IntMatrix::Zero(2 * n, 2 * n);
    e.topRightCorner(n, n) = -IntMatrix::Identity(n, n);
    e.bottomLeftCorner(n, n) = IntMatrix::Identity(n, n);
    return mod_matrix(e, p);
}

IntMatrix m_of_s(const IntMatrix& s, std::int64_t p)
{
    const Eigen::Index n = s.rows();
    IntMatrix m = IntMatrix::Identity(2 * n, 2 * n);
    m.topRightCorner(n, n) = s;
    return mod_matrix(m, p);
}

bool is_symplectic_mod(const IntMatrix& alpha, std::int64_t p)
{
    const int n = static_cast<int>(alpha.rows() / 2);
    IntMatrix eta = eta_matrix(n, p);
    return mod_matrix(alpha.transpose() * eta * alpha, p) == eta;
}

IntMatrix symplectic_inverse_mod(const IntMatrix& alpha, std::int64_t p)
{
    // alpha^-1 = -eta alpha^T eta
    const int n = static_cast<int>(alpha.rows() / 2);
    IntMatrix eta = eta_matrix(n, p);
    return mod_matrix(-(eta * alpha.transpose() * eta), p);
}

bool in_klingen_parabolic(const IntMatrix& alpha, std::int64_t p)
{
    const Eigen::Index two_n = alpha.rows();
    const Eigen::Index col = two_n / 2 - 1;
    for (Eigen::Index r = 0; r < two_n; ++r)
        if (r != col && positive_mod(alpha(r, col), p) != 0) return false;
    return true;
}

std::vector<IntMatrix> gl_mod(int n, std::int64_t p)
{
    std::vector<IntMatrix> out;
    const int nn = n * n;
    std::int64_t total = 1;
    for (int i = 0; i < nn; ++i) total *= p;
    for (std::int64_t idx = 0; idx < total; ++idx) {
        IntMatrix a(n, n);
        std::int64_t rest = idx;
        for (int k = nn - 1; k >= 0; --k) {
            a(k / n, k % n) = rest % p;
            rest /= p;
        }
        if (positive_mod(det(a), p) != 0) out.push_back(a);
    }
    return out;
}

std::vector<SymplecticModP> candidate_reps(int n, std::int64_t p)
{
    guard(n, p);
    std::vector<SymplecticModP> out;
    const auto S = symmetric_matrices_mod(n, p);
    IntMatrix eta = eta_matrix(n, p);
    for (CuspKind kind : {CuspKind::m, CuspKind::m_eta})
        for (const IntMatrix& s : S) {
            IntMatrix a = m_of_s(s, p);
            if (kind == CuspKind::m_eta) a = mul_mod(a, eta, p);
            out.push_back({p, a, kind, s});
        }
    return out;
}

bool double_coset_equivalent(const IntMatrix& a, const IntMatrix& b, int n, std::int64_t p)
{
    // b in Q a P  iff  a^-1 q^-1 b in P for some q = diag(g, g^-T)
    IntMatrix ainv = symplectic_inverse_mod(a, p);
    for (const IntMatrix& g : gl_mod(n, p)) {
        IntMatrix qinv = IntMatrix::Zero(2 * n, 2 * n);
        qinv.topLeftCorner(n, n) = inverse_mod(g, p);
        qinv.bottomRightCorner(n, n) = mod_matrix(g.transpose(), p);
        if (in_klingen_parabolic(mul_mod(mul_mod(ainv, qinv, p), b, p), p)) return true;
    }
    return false;
}

std::vector<SymplecticModP> dedup_double_cosets(const std::vector<SymplecticModP>& candidates, int n, std::int64_t p)
{
    std::vector<SymplecticModP> reps;
    for (const auto& c : candidates) {
        bool seen = false;
        for (const auto& r : reps)
            if (double_coset_equivalent(r.entries, c.entries, n, p)) {
                seen = true;
                break;
            }
        if (!seen) reps.push_back(c);
    }
    return reps;
}

std::vector<SymplecticModP> dedup_double_cosets(int n, std::int64_t p)
{
    return dedup_double_cosets(candidate_reps(n, p), n, p);
}

std::string CuspRep::kind_vector() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < local.size(); ++i) {
        if (i) s += ", ";
        s += local[i].kind == CuspKind::m ? "m" : "m eta";
    }
    return s + ")";
}

std::vector<CuspRep> crt_combine(int n, std::int64_t m)
{
    if (m < 2 || !is_squarefree(m)) throw DomainError("m must be squarefree and > 1");
    std::vector<std::int64_t> primes;
    std::vector<std::vector<SymplecticModP>> local;
    for (auto [p, e] : factorize(m)) {
        primes.push_back(p);
        local.push_back(dedup_double_cosets(n, p));
    }
    std::vector<CuspRep> out;
    std::vector<std::size_t> idx(primes.size(), 0);
    for (;;) {
        CuspRep r{primes, {}};
        for (std::size_t k = 0; k < primes.size(); ++k) r.local.push_back(local[k][idx[k]]);
        out.push_back(r);
        std::size_t k = primes.size();
        while (k > 0 && ++idx[k - 1] == local[k - 1].size()) idx[--k] = 0;
        if (k == 0) break;
    }
    return out;
}

IntMatrix lift_sl2(const IntMatrix& alpha, std::int64_t m)
{
    if (alpha.rows() != 2 || alpha.cols() != 2) throw UnsupportedError("lifting is provided for n = 1 only");
    IntMatrix a = mod_matrix(alpha, m);
    if (positive_mod(det(a), m) != 1 % m) throw DomainError("matrix is not in SL_2(Z/m)");
    std::int64_t c = a(1, 0), d = a(1, 1);
    if (c == 0) c = m;
    // make gcd(c, d) = 1 by shifting d along its residue class
    while (std::gcd(c, d) != 1) d += m;
    // extended Euclid: x d - y c = 1
    std::int64_t old_r = d, r = c, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    // old_s d + old_t c = 1
    IntMatrix m0(2, 2);
    m0 << old_s, -old_t, c, d;
    // a m0^-1 mod m is upper unipotent [[1, u], [0, 1]]
    IntMatrix m0inv(2, 2);
    m0inv << d, old_t, -c, old_s;
    IntMatrix u = mod_matrix(a * m0inv, m);
    IntMatrix left(2, 2);
    left << 1, u(0, 1), 0, 1;
    IntMatrix out = left * m0;
    return out;
}

} // namespace rsiegel
