#pragma once

#include "rsiegel/matrix.hpp"
#include "rsiegel/rational.hpp"
#include "rsiegel/weights.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace rsiegel {

// Exponents of x_ij at index i*n + j (0-based), n <= 4.
using Monomial = std::array<std::uint8_t, 16>;

class MatrixPolynomial {
public:
    explicit MatrixPolynomial(int n = 1);
    static MatrixPolynomial constant(int n, const GaussRational& c);
    static MatrixPolynomial variable(int n, int row, int col); // 1-based x_{row,col}
    static MatrixPolynomial determinant(int n);

    int n() const { return n_; }
    const std::map<Monomial, GaussRational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    void add_term(const Monomial& mono, const GaussRational& c);

    MatrixPolynomial& operator+=(const MatrixPolynomial& o);
    MatrixPolynomial& operator-=(const MatrixPolynomial& o);
    MatrixPolynomial& operator*=(const GaussRational& c);
    friend MatrixPolynomial operator+(MatrixPolynomial a, const MatrixPolynomial& b) { return a += b; }
    friend MatrixPolynomial operator-(MatrixPolynomial a, const MatrixPolynomial& b) { return a -= b; }
    friend MatrixPolynomial operator*(const MatrixPolynomial& a, const MatrixPolynomial& b);
    friend MatrixPolynomial operator*(MatrixPolynomial a, const GaussRational& c) { return a *= c; }
    friend bool operator==(const MatrixPolynomial& a, const MatrixPolynomial& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }
    MatrixPolynomial pow(int e) const;

    MatrixPolynomial derivative(int row, int col) const; // 1-based

    GaussRational evaluate(const RationalMatrix& x) const;
    std::complex<double> evaluate(const Eigen::MatrixXcd& x) const;

    // x -> A x for a Gaussian-rational n x n matrix A given as (re, im).
    MatrixPolynomial left_substitute(const RationalMatrix& re, const RationalMatrix& im) const;

    std::string to_string() const;

private:
    int n_;
    std::map<Monomial, GaussRational> terms_;
};

struct VectorPolynomial {
    std::vector<MatrixPolynomial> components;
    int n() const { return components.empty() ? 0 : components.front().n(); }
    Eigen::VectorXcd evaluate(const Eigen::MatrixXcd& x) const;
    std::vector<GaussRational> evaluate(const RationalMatrix& x) const;
};

// sum_k d^2 / dx_{k,i} dx_{k,j}, 1 <= i, j <= n.
MatrixPolynomial laplacian(const MatrixPolynomial& p, int i, int j);

struct PluriharmonicResult {
    bool pluriharmonic = true;
    int component = -1;
    int i = 0;
    int j = 0;
    MatrixPolynomial remainder;
};

PluriharmonicResult is_pluriharmonic(const MatrixPolynomial& p);
PluriharmonicResult is_pluriharmonic(const VectorPolynomial& p);

// Rows a_j = e_j + i e_{l+j}, a_{n+1-j} = e_j - i e_{l+j}, middle row e_n for odd n.
std::pair<RationalMatrix, RationalMatrix> isotropic_frame(int n);

MatrixPolynomial kv_generator(const GLWeight& rho);

struct WeightProfile {
    bool homogeneous = false;
    std::vector<int> exponents;
    bool unipotent_invariant = false;
};

WeightProfile weight_profile(const MatrixPolynomial& p);

// n = 2 vector polynomial of weight Sym^j: P_i = binom(j,i) (x11 + i x21)^(j-i) (x12 + i x22)^i.
VectorPolynomial sym_power_polynomial(int j);

} // namespace rsiegel
