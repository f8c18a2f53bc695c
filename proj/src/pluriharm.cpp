#include "rsiegel/pluriharm.hpp"
#include "rsiegel/errors.hpp"

#include <algorithm>

namespace rsiegel {

namespace {

void check_degree(int n)
{
    if (n < 1 || n > 4) throw UnsupportedError("matrix polynomials support 1 <= n <= 4");
}

Monomial zero_monomial() { return Monomial{}; }

} // namespace

MatrixPolynomial::MatrixPolynomial(int n) : n_(n) { check_degree(n); }

MatrixPolynomial MatrixPolynomial::constant(int n, const GaussRational& c)
{
    MatrixPolynomial p(n);
    p.add_term(zero_monomial(), c);
    return p;
}

MatrixPolynomial MatrixPolynomial::variable(int n, int row, int col)
{
    if (row < 1 || row > n || col < 1 || col > n) throw DomainError("variable index out of range");
    MatrixPolynomial p(n);
    Monomial m = zero_monomial();
    m[static_cast<std::size_t>((row - 1) * n + (col - 1))] = 1;
    p.add_term(m, GaussRational(1));
    return p;
}

MatrixPolynomial MatrixPolynomial::determinant(int n)
{
    check_degree(n);
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    MatrixPolynomial p(n);
    do {
        int inversions = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inversions;
        Monomial m = zero_monomial();
        for (int r = 0; r < n; ++r) m[static_cast<std::size_t>(r * n + perm[static_cast<std::size_t>(r)])] = 1;
        p.add_term(m, GaussRational(inversions % 2 ? -1 : 1));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return p;
}

int MatrixPolynomial::degree() const
{
    int d = 0;
    for (const auto& [m, c] : terms_) {
        int t = 0;
        for (auto e : m) t += e;
        d = std::max(d, t);
    }
    return d;
}

void MatrixPolynomial::add_term(const Monomial& mono, const GaussRational& c)
{
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(mono, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

MatrixPolynomial& MatrixPolynomial::operator+=(const MatrixPolynomial& o)
{
    if (o.n_ != n_) throw DomainError("polynomial degree mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MatrixPolynomial& MatrixPolynomial::operator-=(const MatrixPolynomial& o)
{
    if (o.n_ != n_) throw DomainError("polynomial degree mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MatrixPolynomial& MatrixPolynomial::operator*=(const GaussRational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

MatrixPolynomial operator*(const MatrixPolynomial& a, const MatrixPolynomial& b)
{
    if (a.n_ != b.n_) throw DomainError("polynomial degree mismatch");
    MatrixPolynomial out(a.n_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m;
            for (std::size_t i = 0; i < m.size(); ++i) {
                int e = ma[i] + mb[i];
                if (e > 255) throw GuardError("monomial exponent overflow");
                m[i] = static_cast<std::uint8_t>(e);
            }
            out.add_term(m, ca * cb);
        }
    return out;
}

MatrixPolynomial MatrixPolynomial::pow(int e) const
{
    if (e < 0) throw DomainError("negative polynomial power");
    MatrixPolynomial out = constant(n_, GaussRational(1));
    MatrixPolynomial base = *this;
    while (e) {
        if (e & 1) out = out * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return out;
}

MatrixPolynomial MatrixPolynomial::derivative(int row, int col) const
{
    if (row < 1 || row > n_ || col < 1 || col > n_) throw DomainError("variable index out of range");
    const std::size_t idx = static_cast<std::size_t>((row - 1) * n_ + (col - 1));
    MatrixPolynomial out(n_);
    for (const auto& [m, c] : terms_) {
        if (m[idx] == 0) continue;
        Monomial d = m;
        d[idx] = static_cast<std::uint8_t>(m[idx] - 1);
        out.add_term(d, c * GaussRational(Rational(m[idx])));
    }
    return out;
}

GaussRational MatrixPolynomial::evaluate(const RationalMatrix& x) const
{
    if (x.rows() != n_ || x.cols() != n_) throw DomainError("evaluation point has the wrong size");
    GaussRational total;
    for (const auto& [m, c] : terms_) {
        Rational v(1);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (int e = 0; e < m[static_cast<std::size_t>(i * n_ + j)]; ++e) v *= x(i, j);
        total += c * GaussRational(v);
    }
    return total;
}

std::complex<double> MatrixPolynomial::evaluate(const Eigen::MatrixXcd& x) const
{
    if (x.rows() != n_ || x.cols() != n_) throw DomainError("evaluation point has the wrong size");
    std::complex<double> total = 0;
    for (const auto& [m, c] : terms_) {
        std::complex<double> v = c.to_complex();
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                int e = m[static_cast<std::size_t>(i * n_ + j)];
                if (e) v *= std::pow(x(i, j), e);
            }
        total += v;
    }
    return total;
}

MatrixPolynomial MatrixPolynomial::left_substitute(const RationalMatrix& re, const RationalMatrix& im) const
{
    // (A x)_{ij} = sum_r A_ir x_rj
    std::vector<MatrixPolynomial> entry;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            MatrixPolynomial e(n_);
            for (int r = 0; r < n_; ++r) e += variable(n_, r + 1, j + 1) * GaussRational(re(i, r), im(i, r));
            entry.push_back(e);
        }
    MatrixPolynomial out(n_);
    for (const auto& [m, c] : terms_) {
        MatrixPolynomial t = constant(n_, c);
        for (int k = 0; k < n_ * n_; ++k)
            if (m[static_cast<std::size_t>(k)]) t = t * entry[static_cast<std::size_t>(k)].pow(m[static_cast<std::size_t>(k)]);
        out += t;
    }
    return out;
}

std::string MatrixPolynomial::to_string() const
{
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += "(" + rsiegel::to_string(c) + ")";
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                int e = m[static_cast<std::size_t>(i * n_ + j)];
                if (!e) continue;
                s += "*x" + std::to_string(i + 1) + std::to_string(j + 1);
                if (e > 1) s += "^" + std::to_string(e);
            }
    }
    return s;
}

Eigen::VectorXcd VectorPolynomial::evaluate(const Eigen::MatrixXcd& x) const
{
    Eigen::VectorXcd v(static_cast<Eigen::Index>(components.size()));
    for (std::size_t i = 0; i < components.size(); ++i) v(static_cast<Eigen::Index>(i)) = components[i].evaluate(x);
    return v;
}

std::vector<GaussRational> VectorPolynomial::evaluate(const RationalMatrix& x) const
{
    std::vector<GaussRational> v;
    for (const auto& c : components) v.push_back(c.evaluate(x));
    return v;
}

MatrixPolynomial laplacian(const MatrixPolynomial& p, int i, int j)
{
    const int n = p.n();
    if (i < 1 || i > n || j < 1 || j > n) throw DomainError("laplacian index out of range");
    MatrixPolynomial out(n);
    for (int k = 1; k <= n; ++k) out += p.derivative(k, i).derivative(k, j);
    return out;
}

PluriharmonicResult is_pluriharmonic(const MatrixPolynomial& p)
{
    PluriharmonicResult res{true, -1, 0, 0, MatrixPolynomial(p.n())};
    for (int i = 1; i <= p.n(); ++i)
        for (int j = i; j <= p.n(); ++j) {
            MatrixPolynomial r = laplacian(p, i, j);
            if (!r.is_zero()) return {false, 0, i, j, r};
        }
    return res;
}

PluriharmonicResult is_pluriharmonic(const VectorPolynomial& p)
{
    for (std::size_t c = 0; c < p.components.size(); ++c) {
        PluriharmonicResult r = is_pluriharmonic(p.components[c]);
        if (!r.pluriharmonic) {
            r.component = static_cast<int>(c);
            return r;
        }
    }
    return {true, -1, 0, 0, MatrixPolynomial(std::max(1, p.n()))};
}

std::pair<RationalMatrix, RationalMatrix> isotropic_frame(int n)
{
    check_degree(n);
    const int l = n / 2;
    RationalMatrix re = RationalMatrix::Zero(n, n), im = RationalMatrix::Zero(n, n);
    for (int j = 0; j < l; ++j) {
        re(j, j) = 1;
        im(j, l + j) = 1;
        re(n - 1 - j, j) = 1;
        im(n - 1 - j, l + j) = -1;
    }
    if (n % 2) re(l, n - 1) = 1;
    return {re, im};
}

namespace {

MatrixPolynomial leading_minor(int n, int size, const std::vector<MatrixPolynomial>& entries)
{
    std::vector<int> perm(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) perm[static_cast<std::size_t>(i)] = i;
    MatrixPolynomial out(n);
    do {
        int inversions = 0;
        for (int a = 0; a < size; ++a)
            for (int b = a + 1; b < size; ++b)
                if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inversions;
        MatrixPolynomial t = MatrixPolynomial::constant(n, GaussRational(inversions % 2 ? -1 : 1));
        for (int r = 0; r < size; ++r) t = t * entries[static_cast<std::size_t>(r * n + perm[static_cast<std::size_t>(r)])];
        out += t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace

MatrixPolynomial kv_generator(const GLWeight& rho)
{
    const int n = rho.n;
    check_degree(n);
    if (!rho.is_dominant()) throw DomainError("weight " + to_string(rho) + " is not dominant");
    if (std::all_of(rho.m.begin(), rho.m.end(), [](int v) { return v == 1; })) return MatrixPolynomial::determinant(n);
    const int l = n / 2;
    for (int i = l; i < n; ++i)
        if (rho.m[static_cast<std::size_t>(i)] != 0) {
            auto lambda = tau_sigma_membership(rho);
            if (lambda && lambda->sign == -1 && n % 2 == 0)
                throw UnsupportedError("weight " + to_string(rho) + " lies in the - family; its generator needs the polarised minors, which are not available");
            if (lambda)
                throw UnsupportedError("weight " + to_string(rho) + " has trailing ones; its generator needs the polarised minors, which are not available");
            throw DomainError("weight " + to_string(rho) + " does not occur in the pluriharmonic correspondence");
        }
    if (rho.m.back() < 0) throw DomainError("weights must be nonnegative");
    auto [re, im] = isotropic_frame(n);
    std::vector<MatrixPolynomial> entries;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            MatrixPolynomial e(n);
            for (int r = 0; r < n; ++r)
                if (re(i, r) != 0 || im(i, r) != 0) e += MatrixPolynomial::variable(n, r + 1, j + 1) * GaussRational(re(i, r), im(i, r));
            entries.push_back(e);
        }
    MatrixPolynomial out = MatrixPolynomial::constant(n, GaussRational(1));
    for (int j = 1; j <= l; ++j) {
        int c = rho.m[static_cast<std::size_t>(j - 1)] - rho.m[static_cast<std::size_t>(j)];
        if (c == 0) continue;
        out = out * leading_minor(n, j, entries).pow(c);
    }
    return out;
}

WeightProfile weight_profile(const MatrixPolynomial& p)
{
    const int n = p.n();
    WeightProfile out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        std::vector<int> cols(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) cols[static_cast<std::size_t>(j)] += m[static_cast<std::size_t>(i * n + j)];
        if (first) {
            out.exponents = cols;
            first = false;
        } else if (cols != out.exponents) {
            out.exponents.clear();
            return out;
        }
    }
    if (first) return out; // zero polynomial has no weight
    out.homogeneous = true;
    // p(x u) = p(x) for unit upper triangular u iff sum_k x_ki d/dx_kj p = 0 for all i < j
    out.unipotent_invariant = true;
    for (int i = 1; i <= n && out.unipotent_invariant; ++i)
        for (int j = i + 1; j <= n && out.unipotent_invariant; ++j) {
            MatrixPolynomial d(n);
            for (int k = 1; k <= n; ++k) d += MatrixPolynomial::variable(n, k, i) * p.derivative(k, j);
            out.unipotent_invariant = d.is_zero();
        }
    return out;
}

VectorPolynomial sym_power_polynomial(int j)
{
    if (j < 0) throw DomainError("Sym^j needs j >= 0");
    const GaussRational I(Rational(0), Rational(1));
    MatrixPolynomial u1 = MatrixPolynomial::variable(2, 1, 1) + MatrixPolynomial::variable(2, 2, 1) * I;
    MatrixPolynomial u2 = MatrixPolynomial::variable(2, 1, 2) + MatrixPolynomial::variable(2, 2, 2) * I;
    VectorPolynomial out;
    for (int i = 0; i <= j; ++i)
        out.components.push_back(u1.pow(j - i) * u2.pow(i) * GaussRational(Rational(binomial(j, i))));
    return out;
}

} // namespace rsiegel
