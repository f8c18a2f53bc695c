#pragma once

#include "rsiegel/errors.hpp"
#include "rsiegel/matrix.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace rsiegel {

struct GLWeight {
    int n = 0;
    std::vector<int> m;
    bool is_dominant() const;
    int size_sum() const; // lambda_P = m_1 + ... + m_n
    friend bool operator==(const GLWeight&, const GLWeight&) = default;
};

// Odd n = 2l+1: sign is epsilon. Even n = 2l: sign is the +/- tag.
struct OrthWeight {
    int n = 0;
    std::vector<int> m; // length l
    int sign = 1;
    friend bool operator==(const OrthWeight&, const OrthWeight&) = default;
};

void validate(const OrthWeight& lambda);
GLWeight kv_tau(const OrthWeight& lambda);
// For even n and a - weight with m_l != 0 the + form is returned (the two coincide).
std::optional<OrthWeight> tau_sigma_membership(const GLWeight& rho);

// "2,0;+1" (odd n) or "2,0;-" / "2,0;+" (even n).
OrthWeight parse_orth_weight(int n, const std::string& text);
std::string to_string(const OrthWeight& lambda);
std::string to_string(const GLWeight& rho);

long long binomial(int n, int k);

// det^k (x) Sym^j for n = 2 acting on binary forms of degree j in the basis X^(j-i) Y^i by
// (rho(A) f)(v) = f(v A) det(A)^k. For n = 1 the character a -> a^(j+k).
struct GLRep {
    int n = 2;
    int j = 0;
    int k = 0;

    int dim() const { return n == 1 ? 1 : j + 1; }
    GLWeight highest_weight() const;

    template <class S>
    Mat<S> operator()(const Mat<S>& A) const;

    // <v, w> = sum_i v_i conj(w_i) g_i; rho(M)^* = rho(M^*) for this form.
    Eigen::VectorXd gram_weights() const;
};

GLRep materialize_sym_rep(int j, int k);

namespace detail {

template <class S>
S scalar_pow(const S& a, int e)
{
    if (e < 0) return S(1) / scalar_pow(a, -e);
    S out(1);
    for (int i = 0; i < e; ++i) out = out * a;
    return out;
}

template <class S>
bool is_zero_scalar(const S& x)
{
    if constexpr (std::is_same_v<S, std::complex<double>> || std::is_same_v<S, double>) return std::abs(x) == 0.0;
    else return x == S(0);
}

} // namespace detail

template <class S>
Mat<S> GLRep::operator()(const Mat<S>& A) const
{
    if (A.rows() != n || A.cols() != n) throw DomainError("representation evaluated at a matrix of the wrong size");
    if (n == 1) {
        if (detail::is_zero_scalar(A(0, 0))) throw DomainError("singular evaluation matrix");
        return Mat<S>::Constant(1, 1, detail::scalar_pow(A(0, 0), j + k));
    }
    const S a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);
    const S dt = a * d - b * c;
    if (detail::is_zero_scalar(dt)) throw DomainError("singular evaluation matrix");
    // column i holds the coefficients of (aX + cY)^(j-i) (bX + dY)^i
    Mat<S> out = Mat<S>::Zero(j + 1, j + 1);
    for (int i = 0; i <= j; ++i) {
        std::vector<S> poly(1, S(1));
        auto mult = [&poly](const S& x, const S& y) {
            std::vector<S> next(poly.size() + 1, S(0));
            for (std::size_t r = 0; r < poly.size(); ++r) {
                next[r] = next[r] + poly[r] * x;
                next[r + 1] = next[r + 1] + poly[r] * y;
            }
            poly = std::move(next);
        };
        for (int t = 0; t < j - i; ++t) mult(a, c);
        for (int t = 0; t < i; ++t) mult(b, d);
        for (int r = 0; r <= j; ++r) out(r, i) = poly[static_cast<std::size_t>(r)];
    }
    if (k != 0) out = out * detail::scalar_pow(dt, k);
    return out;
}

} // namespace rsiegel
