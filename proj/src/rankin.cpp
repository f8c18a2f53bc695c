#include "rsiegel/rankin.hpp"

#include "rsiegel/errors.hpp"
#include "rsiegel/forms.hpp"
#include "rsiegel/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace rsiegel {

namespace {

constexpr double pi = std::numbers::pi;

struct Node {
    double x;
    double w;
};

// Double-exponential nodes with step 2^-level; half line x = exp(pi/2 sinh t), full line x = sinh(pi/2 sinh t).
std::vector<Node> de_nodes(int level, bool half_line)
{
    const double h = std::ldexp(1.0, -level);
    const int K = static_cast<int>(std::ceil(4.5 / h));
    std::vector<Node> out;
    for (int k = -K; k <= K; ++k) {
        const double t = k * h;
        const double u = pi / 2 * std::sinh(t);
        double x, dx;
        if (half_line) {
            x = std::exp(u);
            dx = pi / 2 * std::cosh(t) * x;
        } else {
            x = std::sinh(u);
            dx = pi / 2 * std::cosh(t) * std::cosh(u);
        }
        if (!std::isfinite(x) || !std::isfinite(dx) || std::abs(x) > 12 || (half_line && x < 1e-60)) continue;
        out.push_back({x, h * dx});
    }
    return out;
}

struct Weighted {
    double x;
    Complex w;
};

std::vector<Weighted> prune(std::vector<Weighted> v)
{
    double top = 0;
    for (const auto& n : v) top = std::max(top, std::abs(n.w));
    std::vector<Weighted> out;
    for (const auto& n : v)
        if (std::abs(n.w) > 1e-24 * top) out.push_back(n);
    return out;
}

// x^e e^{-4 pi x^2} times the rule weight.
std::vector<Weighted> half_line_weights(int level, Complex e)
{
    std::vector<Weighted> out;
    for (const auto& n : de_nodes(level, true))
        out.push_back({n.x, n.w * std::exp(e * std::log(n.x) - 4 * pi * n.x * n.x)});
    return prune(std::move(out));
}

std::vector<Weighted> line_weights(int level)
{
    std::vector<Weighted> out;
    for (const auto& n : de_nodes(level, false)) out.push_back({n.x, Complex(n.w * std::exp(-4 * pi * n.x * n.x), 0)});
    return prune(std::move(out));
}

Eigen::MatrixXcd integrate_level(int n, Complex sigma, const std::vector<double>& e, int rows, int cols,
                                 const MatrixIntegrand& F, int level, std::size_t& nodes)
{
    if (n == 1) {
        // y = a^2, |y|^sigma d^x y = 2 a^{2 sigma - 1} da
        auto A = half_line_weights(level, 2.0 * sigma - 1.0 + 2 * e[0]);
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rows, cols);
        for (const auto& a : A) {
            Eigen::Matrix2d T = Eigen::Matrix2d::Zero();
            T(0, 0) = a.x;
            acc += 2.0 * a.w * F(T);
        }
        nodes = A.size();
        return acc;
    }
    // y = T^t T, T = [[a, 0], [b, c]]: |y|^sigma d^x y = 4 a^{2 sigma - 2} c^{2 sigma - 1} da db dc
    auto A = half_line_weights(level, 2.0 * sigma - 2.0 + 2 * e[0]);
    auto B = line_weights(level);
    auto C = half_line_weights(level, 2.0 * sigma - 1.0 + 2 * e[1]);
    std::vector<Eigen::MatrixXcd> per_a(A.size());
    parallel_for(A.size(), [&](std::size_t begin, std::size_t end, int) {
        for (std::size_t i = begin; i < end; ++i) {
            Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rows, cols);
            const double a = A[i].x;
            for (const auto& c : C) {
                Eigen::MatrixXcd inner_sum = Eigen::MatrixXcd::Zero(rows, cols);
                for (const auto& b : B) {
                    Eigen::Matrix2d T;
                    T << a, 0, b.x, c.x;
                    inner_sum += b.w * F(T);
                }
                acc += c.w * inner_sum;
            }
            per_a[i] = 4.0 * A[i].w * acc;
        }
    });
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(rows, cols);
    for (const auto& m : per_a) total += m;
    nodes = A.size() * B.size() * C.size();
    return total;
}

Complex cpow(double base, Complex e) { return std::exp(e * std::log(base)); }

Eigen::MatrixXd inverse_sqrt_psd(const Eigen::MatrixXd& R)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R);
    if (es.eigenvalues().minCoeff() <= 0) throw DomainError("R must be positive definite");
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
}

IntMatrix unimodular_inverse(const IntMatrix& u) { return to_integer(inverse(to_rational(u))); }

Eigen::MatrixXcd rep_at(const GLRep& rho, const IntMatrix& g)
{
    return rho(Eigen::MatrixXd(to_double(g))).cast<Complex>();
}

GLRep operator_rep(const GLRep& rho) { return GLRep{rho.n, rho.j, 0}; }

void check_guard(int n, Complex sigma)
{
    if (n < 1 || n > 2) throw GuardError("quadrature over Y supports n <= 2");
    if (sigma.real() <= (n + 1) / 2.0) throw GuardError("quadrature needs Re(s+h) > (n+1)/2");
}

} // namespace

GLRep glrep_of(const GLWeight& rho)
{
    if (rho.n == 1 && rho.m.size() == 1) return GLRep{1, rho.m[0], 0};
    if (rho.n == 2 && rho.m.size() == 2 && rho.m[0] >= rho.m[1]) return GLRep{2, rho.m[0] - rho.m[1], rho.m[1]};
    throw GuardError("materialized representations need n <= 2 and a dominant weight");
}

QuadratureResult integrate_over_Y(int n, Complex sigma, const std::vector<double>& diag_exponents, int rows, int cols,
                                  const MatrixIntegrand& F, double tol)
{
    check_guard(n, sigma);
    if (static_cast<int>(diag_exponents.size()) != n) throw DomainError("one diagonal exponent per coordinate");
    const int max_level = n == 1 ? 9 : 6;
    QuadratureResult out;
    Eigen::MatrixXcd prev;
    for (int level = 2; level <= max_level; ++level) {
        std::size_t nodes = 0;
        Eigen::MatrixXcd cur = integrate_level(n, sigma, diag_exponents, rows, cols, F, level, nodes);
        out.nodes += nodes;
        if (level > 2) {
            double scale = cur.norm();
            out.change = (cur - prev).norm() / (scale > 0 ? scale : 1.0);
            out.value = cur;
            out.level = level;
            if (out.change < tol) {
                out.converged = true;
                return out;
            }
        }
        prev = cur;
    }
    out.value = prev;
    return out;
}

Complex inner(const GLRep& rho, const Eigen::VectorXcd& v, const Eigen::VectorXcd& w)
{
    Eigen::VectorXd g = rho.gram_weights();
    if (v.size() != g.size() || w.size() != g.size()) throw DomainError("vector dimension does not match the representation");
    Complex s = 0;
    for (Eigen::Index i = 0; i < g.size(); ++i) s += v(i) * std::conj(w(i)) * g(i);
    return s;
}

double hermitian_asymmetry(const GLRep& rho, const Eigen::MatrixXcd& H)
{
    Eigen::MatrixXcd GH = rho.gram_weights().cast<Complex>().asDiagonal() * H;
    double scale = GH.norm();
    return scale > 0 ? (GH - GH.adjoint()).norm() / scale : 0.0;
}

HermitianOperator h_operator(const GLRep& rho, const Rational& h, Complex s, double tol)
{
    const GLRep r = operator_rep(rho);
    const Complex sigma = s + h.convert_to<double>();
    const int d = r.dim();
    QuadratureResult q = integrate_over_Y(
        r.n, sigma, std::vector<double>(static_cast<std::size_t>(r.n), 0.0), d, d,
        [&](const Eigen::Matrix2d& T) -> Eigen::MatrixXcd {
            Eigen::MatrixXd t = T.topLeftCorner(r.n, r.n);
            return (r(Eigen::MatrixXd(t.transpose())) * r(t)).cast<Complex>();
        },
        tol);
    HermitianOperator out;
    out.matrix = q.value;
    out.quadrature_change = q.change;
    out.converged = q.converged;
    out.nodes = q.nodes;
    out.asymmetry = hermitian_asymmetry(r, q.value);
    if (sigma.imag() == 0) {
        Eigen::VectorXcd g = r.gram_weights().cast<Complex>();
        Eigen::MatrixXcd adj = g.cwiseInverse().asDiagonal() * q.value.adjoint() * g.asDiagonal();
        out.matrix = (q.value + adj) / 2.0;
    }
    return out;
}

Eigen::MatrixXcd h_operator_at(const GLRep& rho, const Eigen::MatrixXcd& base, const Rational& h, Complex s,
                               const Eigen::MatrixXd& R)
{
    const GLRep r = operator_rep(rho);
    Eigen::MatrixXd root = inverse_sqrt_psd(R);
    Eigen::MatrixXcd m = r(root).cast<Complex>();
    const Complex sigma = s + h.convert_to<double>();
    return m * base * m * cpow(R.determinant(), -sigma);
}

HermitianOperator h_operator(const GLRep& rho, const Rational& h, Complex s, const IntMatrix& R, double tol)
{
    HermitianOperator out = h_operator(rho, h, s, tol);
    out.matrix = h_operator_at(rho, out.matrix, h, s, to_double(R));
    return out;
}

MaassCheck maass_integral_check(const GLWeight& lambda, Complex s_plus_h, double tol)
{
    const int n = lambda.n;
    if (static_cast<int>(lambda.m.size()) != n) throw DomainError("weight length must equal n");
    std::vector<double> e;
    for (int m : lambda.m) e.push_back(m);
    QuadratureResult q = integrate_over_Y(
        n, s_plus_h, e, 1, 1, [](const Eigen::Matrix2d&) { return Eigen::MatrixXcd::Ones(1, 1); }, tol);

    MaassCheck out;
    out.quadrature = q.value(0, 0);
    out.quadrature_change = q.change;
    const int lp = lambda.size_sum();
    out.closed_form = gamma_rho(lambda, Rational(0), s_plus_h) * cpow(4 * pi, -static_cast<double>(n) * (s_plus_h + static_cast<double>(lp)));
    Complex g = std::pow(pi, n * (n - 1) / 4.0);
    for (int i = 1; i <= n; ++i) g *= complex_gamma(s_plus_h + static_cast<double>(lambda.m[static_cast<std::size_t>(i - 1)]) - (n - i) / 2.0);
    out.corrected_form = g * cpow(4 * pi, -static_cast<double>(n) * s_plus_h - static_cast<double>(lp));
    out.relative_error = std::abs(out.quadrature - out.closed_form) / std::abs(out.closed_form);
    out.corrected_relative_error = std::abs(out.quadrature - out.corrected_form) / std::abs(out.corrected_form);
    return out;
}

Complex highest_weight_eigenvalue(const GLWeight& w, const Rational& h, Complex s)
{
    const Complex sigma = s + h.convert_to<double>();
    if (w.n == 1 && w.m.size() == 1) {
        Complex a = sigma + static_cast<double>(w.m[0]);
        return complex_gamma(a) * cpow(4 * pi, -a);
    }
    GLRep r = glrep_of(w);
    const int j = r.j;
    const Complex a = sigma + static_cast<double>(r.k);
    Complex sum = 0;
    for (int m = 0; 2 * m <= j; ++m)
        sum += static_cast<double>(binomial(j, 2 * m)) * (m % 2 ? -1.0 : 1.0) * complex_gamma(a + static_cast<double>(j - m)) *
               std::tgamma(m + 0.5);
    return complex_gamma(a - 0.5) * cpow(4 * pi, -2.0 * a - static_cast<double>(j)) * sum;
}

Complex CoefficientFamily::unit_sign(const IntMatrix& u) const
{
    std::int64_t d = det(u);
    if (d == 1) return 1.0;
    if (d == -1) return static_cast<double>(psi.parity());
    throw DomainError("unit_sign needs a unimodular matrix");
}

Eigen::VectorXcd CoefficientFamily::transported(const IntMatrix& R, const IntMatrix& u) const
{
    auto it = base.find(R);
    if (it == base.end()) return Eigen::VectorXcd::Zero(rho.dim());
    return unit_sign(u) * (rep_at(rho, IntMatrix(u.transpose())) * it->second);
}

Eigen::VectorXcd CoefficientFamily::at(const IntMatrix& R) const
{
    if (R.rows() != n || R.cols() != n || !is_symmetric(R)) throw DomainError("R must be symmetric n x n");
    if (!is_positive_definite(to_rational(R))) return Eigen::VectorXcd::Zero(rho.dim());
    Reduction red = minkowski_reduce(R);
    return transported(red.reduced, unimodular_inverse(red.transform));
}

CoefficientFamily synthetic_family(int n, const GLRep& rho, const DirichletCharacter& psi, std::int64_t det_bound,
                                   std::uint64_t seed)
{
    if (rho.n != n) throw DomainError("representation size must equal n");
    CoefficientFamily f{n, rho, psi, det_bound, {}};
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    for (const IntMatrix& R : reduced_forms(n, det_bound)) {
        Eigen::VectorXcd v(rho.dim());
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(normal(gen), normal(gen));
        auto aut = automorph_group(R);
        Eigen::VectorXcd avg = Eigen::VectorXcd::Zero(rho.dim());
        for (const IntMatrix& u : aut) avg += f.unit_sign(u) * (rep_at(rho, IntMatrix(u.transpose())) * v);
        f.base[R] = avg / static_cast<double>(aut.size());
    }
    return f;
}

CoefficientFamily restrict_support(const CoefficientFamily& f, const std::vector<IntMatrix>& support)
{
    CoefficientFamily out = f;
    out.base.clear();
    for (const IntMatrix& R : support) {
        auto it = f.base.find(R);
        if (it != f.base.end()) out.base.insert(*it);
    }
    return out;
}

CoefficientFamily theta_family(const ThetaSpec& spec, std::int64_t det_bound)
{
    validate(spec);
    CoefficientFamily f{spec.n, glrep_of(spec.rho), spec.chi, det_bound, {}};
    for (const IntMatrix& R : reduced_forms(spec.n, det_bound)) f.base[R] = theta_coefficient(spec, R).numeric;
    return f;
}

FamilyReport validate_family(const CoefficientFamily& f, int routes, std::uint64_t seed)
{
    FamilyReport rep;
    auto fail = [&](std::string rule, const IntMatrix& R, const IntMatrix& u, double d) {
        rep.coherent = false;
        rep.violation = FamilyViolation{std::move(rule), R, u, d};
        return rep;
    };
    const IntMatrix id = IntMatrix::Identity(f.n, f.n);
    std::uint64_t state = seed * 0x9e3779b97f4a7c15ULL + 1;
    for (const auto& [R, c] : f.base) {
        ++rep.checks;
        if (c.size() != f.rho.dim()) return fail("dimension", R, id, 0);
        if (minkowski_reduce(R).reduced != R) return fail("reduced", R, id, 0);
        const double scale = 1 + c.norm();
        for (const IntMatrix& u : automorph_group(R)) {
            ++rep.checks;
            double d = (f.transported(R, u) - c).norm() / scale;
            if (d > family_tolerance) return fail("automorph", R, u, d);
        }
        for (int r = 0; r < routes; ++r) {
            ++rep.checks;
            IntMatrix u = random_unimodular(f.n, state, 6);
            IntMatrix moved = u.transpose() * R * u;
            double d = (f.at(moved) - f.transported(R, u)).norm() / scale;
            if (d > family_tolerance) return fail("route", R, u, d);
        }
    }
    return rep;
}

RankinSeries rankin_series(Complex s, const Rational& h, const CoefficientFamily& f, const HermitianOperator& base,
                           const CoefficientFamily& g, std::int64_t det_bound)
{
    if (f.n != g.n || f.rho.dim() != g.rho.dim() || f.rho.j != g.rho.j) throw DomainError("families live in different spaces");
    if (f.n > 2) throw GuardError("class representatives are available for n <= 2");
    const GLRep r = operator_rep(f.rho);
    RankinSeries out;
    out.det_bound = det_bound;
    out.base = base;
    double mass = 0;
    std::int64_t current = -1;
    for (const IntMatrix& R : reduced_forms(f.n, det_bound)) {
        std::int64_t d = det(R);
        if (current != -1 && d != current) out.partial_sums.emplace_back(current, out.value);
        current = d;
        Eigen::VectorXcd cf = f.at(R), cg = g.at(R);
        if (cf.isZero(0) || cg.isZero(0)) continue;
        Rational nu(1, static_cast<long>(automorph_group(R).size()));
        Eigen::MatrixXcd H = h_operator_at(r, base.matrix, h, s, to_double(R));
        Complex term = nu.convert_to<double>() * inner(r, H * cf, cg);
        out.terms.push_back({R, d, nu, term});
        out.value += term;
        mass += std::abs(term);
        if (term.real() < -1e-12 * std::abs(term) || std::abs(term.imag()) > 1e-9 * std::abs(term)) out.nonnegative_terms = false;
    }
    if (current != -1) out.partial_sums.emplace_back(current, out.value);
    out.error_bound = mass * (std::max(base.quadrature_change, base.asymmetry) + 1e-14);
    return out;
}

RankinSeries rankin_series(Complex s, const Rational& h, const CoefficientFamily& f, const CoefficientFamily& g,
                           std::int64_t det_bound, double tol)
{
    return rankin_series(s, h, f, h_operator(f.rho, h, s, tol), g, det_bound);
}

UnfoldingCheck unfolding_check(const CoefficientFamily& f, const ThetaSpec& theta, Complex s, const Rational& h,
                               std::int64_t det_bound, double tol)
{
    validate(theta);
    const int n = theta.n;
    if (f.n != n) throw DomainError("family and theta series have different n");
    const GLRep r = glrep_of(theta.rho);
    CoefficientFamily th = theta_family(theta, det_bound);
    RankinSeries D = rankin_series(s, h, f, th, det_bound, tol);

    UnfoldingCheck out;
    out.det_bound = det_bound;
    out.forms = D.terms.size();
    out.quadrature_change = D.base.quadrature_change;
    const Complex sigma = s + h.convert_to<double>();
    const double lp = theta.rho.size_sum();
    out.lhs = cpow(4 * pi, static_cast<double>(n) * (sigma + lp)) * D.value;
    out.series = D.value;
    out.eigenvalue = highest_weight_eigenvalue(theta.rho, h, s);

    const Rational dt = det(theta.tau);
    std::int64_t dmax = 0;
    while (Rational((dmax + 1) * (dmax + 1)) * dt <= Rational(det_bound)) ++dmax;
    Eigen::MatrixXcd root_inv = inverse_sqrt_psd(to_double(theta.tau)).cast<Complex>();
    Complex sum = 0;
    for (const IntMatrix& xi : hnf_cosets(n, dmax)) {
        RationalMatrix Rq = to_rational(xi).transpose() * theta.tau * to_rational(xi);
        if (!is_integral(Rq)) continue;
        IntMatrix R = to_integer(Rq);
        std::int64_t dR = det(R);
        if (dR > det_bound) continue;
        ++out.cosets;
        Eigen::VectorXcd c = f.at(R);
        Complex lam = lambda_value(theta.chi, det(xi)).to_complex();
        if (c.isZero(0) || lam == 0.0) continue;
        Eigen::MatrixXcd x = root_inv * to_double(inverse(to_rational(xi))).transpose().cast<Complex>();
        Eigen::VectorXcd v = lam * theta.P.evaluate(x);
        sum += inner(r, c, v) * cpow(static_cast<double>(dR), -sigma);
    }
    out.rhs = gamma_rho(theta.rho, h, s) * sum;
    out.corrected_rhs = out.eigenvalue * sum;
    auto rel = [](Complex a, Complex b) {
        double m = std::max(std::abs(a), std::abs(b));
        return m == 0 ? 0.0 : std::abs(a - b) / m;
    };
    out.relative_error = rel(out.lhs, out.rhs);
    out.corrected_relative_error = rel(out.series, out.corrected_rhs);
    return out;
}

} // namespace rsiegel
