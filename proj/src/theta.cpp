#include "rsiegel/theta.hpp"
#include "rsiegel/arith.hpp"
#include "rsiegel/cusps.hpp"
#include "rsiegel/errors.hpp"
#include "rsiegel/forms.hpp"
#include "rsiegel/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>

namespace rsiegel {

namespace {

bool is_diagonal(const RationalMatrix& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j && m(i, j) != 0) return false;
    return true;
}

bool is_upper_triangular(const RationalMatrix& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < i; ++j)
            if (m(i, j) != 0) return false;
    return true;
}

// Ideal generated by the values of the quadratic form x^T M x on Z^n.
Rational form_ideal(const RationalMatrix& M)
{
    Rational g = 0;
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = i; j < M.cols(); ++j) g = ideal_sum(g, i == j ? M(i, i) : Rational(2 * M(i, j)));
    return g;
}

CyclotomicNumber from_gauss(const GaussRational& g, int order)
{
    CyclotomicNumber out(order, g.re);
    if (g.im != 0) out += CyclotomicNumber(order, g.im) * CyclotomicNumber::zeta(order, order / 4);
    return out;
}

Eigen::MatrixXd sqrt_psd(const Eigen::MatrixXd& a)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    return es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

double lambda_min(const Eigen::MatrixXd& a)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

std::optional<int> common_degree(const VectorPolynomial& P)
{
    std::optional<int> d;
    for (const auto& c : P.components)
        for (const auto& [mono, coeff] : c.terms()) {
            int deg = 0;
            for (auto e : mono) deg += e;
            if (d && *d != deg) return std::nullopt;
            d = deg;
        }
    return d ? d : std::optional<int>(0);
}

double coefficient_mass(const VectorPolynomial& P)
{
    double best = 0;
    for (const auto& c : P.components) {
        double s = 0;
        for (const auto& [mono, coeff] : c.terms()) s += std::abs(coeff.to_complex());
        best = std::max(best, s);
    }
    return best;
}

std::string to_string_s(const IntMatrix& s) { return to_string(s); }

} // namespace

Rational ideal_sum(const Rational& a, const Rational& b)
{
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    BigInt num = boost::multiprecision::gcd(numer(a), numer(b));
    BigInt den = boost::multiprecision::lcm(denom(a), denom(b));
    return Rational(abs(num), den);
}

Rational ideal_intersection(const Rational& a, const Rational& b)
{
    if (a == 0 || b == 0) return 0;
    BigInt num = boost::multiprecision::lcm(numer(a), numer(b));
    BigInt den = boost::multiprecision::gcd(denom(a), denom(b));
    return Rational(abs(num), den);
}

void validate_lattice(const ThetaSpec& spec)
{
    const int n = spec.n;
    if (n < 1) throw DomainError("theta degree must be positive");
    if (spec.tau.rows() != n || spec.tau.cols() != n) throw DomainError("tau must be n x n");
    if (!is_symmetric(spec.tau) || !is_positive_definite(spec.tau)) throw DomainError("tau must be symmetric positive definite");
    if (spec.Q.rows() != n || spec.Q.cols() != n) throw DomainError("Q must be n x n");
    if (det(spec.Q) == 0) throw DomainError("Q must be invertible");
}

void validate(const ThetaSpec& spec)
{
    validate_lattice(spec);
    const int n = spec.n;
    if (n > 4) throw DomainError("theta polynomials support n <= 4");
    if (spec.P.components.empty() || spec.P.n() != n) throw DomainError("P must be a nonempty polynomial in n x n variables");
    if (!is_pluriharmonic(spec.P).pluriharmonic) throw DomainError("P is not pluriharmonic");
    if (spec.rho.n != n) throw DomainError("weight has the wrong degree");
    WeightProfile wp = weight_profile(spec.P.components.front());
    if (!wp.homogeneous || !wp.unipotent_invariant || wp.exponents != spec.rho.m)
        throw DomainError("P does not carry highest weight " + to_string(spec.rho));
}

bool LevelData::contains_gamma(std::int64_t m) const
{
    return gamma_level && BigInt(m) % *gamma_level == 0;
}

LevelData level_data(const ThetaSpec& spec)
{
    validate_lattice(spec);
    const int n = spec.n;
    RationalMatrix two_tau = spec.tau * Rational(2);
    LevelData L;
    L.r = form_ideal(spec.Q.transpose() * two_tau * spec.Q);
    RationalMatrix qinv = inverse(spec.Q);
    Rational nn = form_ideal(qinv * inverse(two_tau) * qinv.transpose());
    L.t = Rational(4) / nn;
    L.a = Rational(numer(Rational(1) / L.r));
    L.f = spec.chi.conductor();
    L.epsilon = epsilon_tau(spec.tau, n);
    L.nebentype = spec.chi * L.epsilon.as_dirichlet();
    const Rational f(L.f), h(L.epsilon.conductor);
    Rational c;
    if (n % 2 == 0) {
        L.b = L.r / 2;
        c = ideal_intersection(ideal_intersection(h, f), f * f * L.t / L.r);
    } else {
        L.b = Rational(1) / (L.a * 2);
        c = ideal_intersection(ideal_intersection(h, f), ideal_intersection(4 * L.a, L.a * f * f * L.t));
    }
    if (denom(c) != 1) throw DomainError("level ideal c is not integral");
    L.c = numer(c);
    Rational binv = Rational(1) / L.b, bc = L.b * c;
    if (n % 2 == 1) {
        L.two_divides_b_inverse = denom(binv / 2) == 1;
        L.two_divides_bc = denom(bc / 2) == 1;
    }
    if (denom(binv) == 1 && denom(bc) == 1) L.gamma_level = boost::multiprecision::lcm(numer(binv), numer(bc));
    return L;
}

CyclotomicNumber lambda_value(const DirichletCharacter& chi, std::int64_t d)
{
    DirichletCharacter prim = chi.primitive();
    if (prim.modulus() == 1) return CyclotomicNumber(1, Rational(1));
    if (d == 0 || prim.value_exponent(d) < 0) return CyclotomicNumber(static_cast<int>(prim.order()));
    return prim.value(d);
}

ThetaCoefficient theta_coefficient_from(const ThetaSpec& spec, const std::vector<IntMatrix>& xis)
{
    const int n = spec.n;
    const std::size_t dim = spec.P.components.size();
    DirichletCharacter prim = spec.chi.primitive();
    const int chi_order = static_cast<int>(prim.order());

    ThetaCoefficient out;
    out.solutions = xis.size();
    out.order = std::lcm(4, chi_order);

    RationalMatrix root;
    std::optional<int> degree = common_degree(spec.P);
    if (is_diagonal(spec.tau) && std::all_of(spec.tau.diagonal().begin(), spec.tau.diagonal().end(),
                                             [](const Rational& q) { return is_square(q); })) {
        out.mode = SqrtMode::diagonal_squares;
        root = RationalMatrix::Zero(n, n);
        for (int i = 0; i < n; ++i) root(i, i) = rational_sqrt(spec.tau(i, i));
    } else if (is_diagonal(spec.tau) && degree &&
               std::all_of(spec.tau.diagonal().begin(), spec.tau.diagonal().end(),
                           [&](const Rational& q) { return q == spec.tau(0, 0); })) {
        out.mode = SqrtMode::scalar;
        root = RationalMatrix::Identity(n, n);
        out.scale = surd_power(spec.tau(0, 0), *degree);
    }

    if (out.mode != SqrtMode::numeric) {
        // exponent of chi (or -1 for the zero value) -> partial sums of P(sqrt(tau) xi)
        std::vector<std::pair<std::int64_t, std::vector<GaussRational>>> per_xi(xis.size());
        parallel_for(xis.size(), [&](std::size_t begin, std::size_t end, int) {
            for (std::size_t k = begin; k < end; ++k) {
                std::int64_t d = det(xis[k]);
                std::int64_t e = prim.modulus() == 1 ? 0 : prim.value_exponent(d);
                per_xi[k] = {e, e < 0 ? std::vector<GaussRational>() : spec.P.evaluate(RationalMatrix(root * to_rational(xis[k])))};
            }
        });
        std::map<std::int64_t, std::vector<GaussRational>> sums;
        for (auto& [e, v] : per_xi) {
            if (e < 0) continue;
            auto& acc = sums.try_emplace(e, dim, GaussRational()).first->second;
            for (std::size_t i = 0; i < dim; ++i) acc[i] += v[i];
        }
        out.exact.assign(dim, CyclotomicNumber(out.order));
        for (const auto& [e, v] : sums) {
            CyclotomicNumber z = CyclotomicNumber::zeta(out.order, e * (out.order / chi_order));
            for (std::size_t i = 0; i < dim; ++i) out.exact[i] += z * from_gauss(v[i], out.order);
        }
        out.numeric.resize(static_cast<Eigen::Index>(dim));
        const double s = out.scale.to_double();
        for (std::size_t i = 0; i < dim; ++i) out.numeric(static_cast<Eigen::Index>(i)) = s * out.exact[i].to_complex();
        return out;
    }

    Eigen::MatrixXcd sq = sqrt_psd(to_double(spec.tau)).cast<std::complex<double>>();
    std::vector<Eigen::VectorXcd> per_xi(xis.size());
    parallel_for(xis.size(), [&](std::size_t begin, std::size_t end, int) {
        for (std::size_t k = begin; k < end; ++k) {
            std::complex<double> c = lambda_value(spec.chi, det(xis[k])).to_complex();
            per_xi[k] = c == 0.0 ? Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim))
                                 : Eigen::VectorXcd(c * spec.P.evaluate(Eigen::MatrixXcd(sq * to_double(xis[k]).cast<std::complex<double>>())));
        }
    });
    out.numeric = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    double mass = 0;
    for (const auto& v : per_xi) {
        out.numeric += v;
        mass += v.cwiseAbs().maxCoeff();
    }
    out.precision = 64 * DBL_EPSILON * (mass + 1) * static_cast<double>(std::max<std::size_t>(1, spec.P.components.front().terms().size()));
    return out;
}

ThetaCoefficient theta_coefficient(const ThetaSpec& spec, const IntMatrix& R)
{
    validate(spec);
    if (R.rows() != spec.n || R.cols() != spec.n || !is_symmetric(R)) throw DomainError("R must be symmetric n x n");
    if (!is_positive_definite(to_rational(R))) return theta_coefficient_from(spec, {});
    return theta_coefficient_from(spec, lattice_solutions(spec.tau, R));
}

ThetaEvaluation theta_truncated_eval(const ThetaSpec& spec, const Eigen::MatrixXcd& z, double trace_bound)
{
    validate(spec);
    const int n = spec.n;
    if (z.rows() != n || z.cols() != n) throw DomainError("z must be n x n");
    if ((z - z.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1 + z.cwiseAbs().maxCoeff())) throw DomainError("z must be symmetric");
    Eigen::MatrixXd Y = z.imag();
    const double mu = lambda_min(Y);
    if (!(mu > 0)) throw DomainError("Im z must be positive definite");
    if (!(trace_bound >= 0)) throw DomainError("trace bound must be nonnegative");

    const Eigen::MatrixXd tau = to_double(spec.tau);
    const Eigen::MatrixXd tau_inv = tau.inverse();
    const double tau_min = lambda_min(tau);

    // columns v with v^T tau v <= T, sorted by that value
    std::vector<std::int64_t> box(n);
    double box_size = 1;
    for (int i = 0; i < n; ++i) {
        box[i] = static_cast<std::int64_t>(std::floor(std::sqrt(trace_bound * tau_inv(i, i)) + 1e-9));
        box_size *= static_cast<double>(2 * box[i] + 1);
    }
    if (box_size > theta_enumeration_limit) throw GuardError("theta enumeration box too large");
    struct Column {
        Rational q;
        double qd;
        IntVector v;
    };
    std::vector<Column> cols;
    const Rational T = Rational(static_cast<long long>(std::floor(trace_bound * 1e6))) / 1000000;
    IntVector v = IntVector::Zero(n);
    for (int i = 0; i < n; ++i) v(i) = -box[i];
    for (;;) {
        Rational q = (to_rational(IntMatrix(v)).transpose() * spec.tau * to_rational(IntMatrix(v)))(0, 0);
        if (q <= T) cols.push_back({q, static_cast<double>(q), v});
        int i = n - 1;
        while (i >= 0 && v(i) == box[i]) {
            v(i) = -box[i];
            --i;
        }
        if (i < 0) break;
        ++v(i);
    }
    std::stable_sort(cols.begin(), cols.end(), [](const Column& a, const Column& b) { return a.q < b.q; });

    // count combinations before evaluating
    std::function<double(int, const Rational&)> count = [&](int depth, const Rational& budget) -> double {
        if (depth == n) return 1;
        double c = 0;
        for (const auto& col : cols) {
            if (col.q > budget) break;
            c += count(depth + 1, budget - col.q);
            if (c > theta_enumeration_limit) return c;
        }
        return c;
    };
    if (count(0, T) > theta_enumeration_limit) throw GuardError("theta enumeration exceeds the term limit");

    const Eigen::MatrixXcd sq = sqrt_psd(tau).cast<std::complex<double>>();
    const std::size_t dim = spec.P.components.size();
    std::vector<Eigen::VectorXcd> partial(cols.size(), Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim)));
    std::vector<std::size_t> terms(cols.size(), 0);
    const std::complex<double> I(0, 1);

    parallel_for(cols.size(), [&](std::size_t begin, std::size_t end, int) {
        IntMatrix xi(n, n);
        for (std::size_t first = begin; first < end; ++first) {
            xi.col(0) = cols[first].v;
            std::function<void(int, const Rational&)> rec = [&](int depth, const Rational& budget) {
                if (depth == n) {
                    std::complex<double> c = lambda_value(spec.chi, det(xi)).to_complex();
                    ++terms[first];
                    if (c == 0.0) return;
                    Eigen::MatrixXd xd = to_double(xi);
                    Eigen::MatrixXd S = xd.transpose() * tau * xd;
                    std::complex<double> tr = (S.cast<std::complex<double>>() * z).trace();
                    std::complex<double> phase = std::exp(I * std::numbers::pi * tr);
                    Eigen::MatrixXcd arg = sq * xd.cast<std::complex<double>>();
                    partial[first] += (c * phase) * spec.P.evaluate(arg);
                    return;
                }
                for (const auto& col : cols) {
                    if (col.q > budget) break;
                    xi.col(depth) = col.v;
                    rec(depth + 1, budget - col.q);
                }
            };
            if (cols[first].q <= T) rec(1, T - cols[first].q);
        }
    });

    ThetaEvaluation out;
    out.value = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < cols.size(); ++k) {
        out.value += partial[k];
        out.terms += terms[k];
    }

    // shells k < tr <= k + 1 beyond the bound
    const double CP = coefficient_mass(spec.P);
    const int d = common_degree(spec.P).value_or(spec.P.components.front().degree());
    const double n2 = static_cast<double>(n) * n;
    double tail = 0;
    if (CP > 0) {
        const double peak = (n2 / 2 + d / 2.0 + 1) / (std::numbers::pi * mu);
        for (double k = std::floor(trace_bound);; k += 1) {
            const double m = k + 1;
            double lt = n2 * std::log(2 * std::sqrt(m / tau_min) + 1) + std::log(CP) + 0.5 * d * std::log(m) -
                        std::numbers::pi * mu * std::max(k, trace_bound);
            double term = std::exp(lt);
            tail += term;
            if (k > peak && term <= 1e-17 * tail) break;
            if (k > trace_bound + 1e7) break;
        }
    }
    out.tail_estimate = tail;
    return out;
}

CuspidalityReport cuspidality_report(const ThetaSpec& spec, std::int64_t p)
{
    validate_lattice(spec);
    CuspidalityReport rep;
    rep.p = p;
    rep.verdict = "not covered";
    rep.level = level_data(spec);
    const std::int64_t f = spec.chi.conductor();
    auto refuse = [&](std::string why) {
        rep.reason = std::move(why);
        return rep;
    };
    if (p < 3 || !is_prime(p)) return refuse("p must be an odd prime");
    if (spec.chi.is_trivial() || f == 1) return refuse("character is trivial");
    if (spec.chi.parity() != -1) return refuse("character is even");
    if (f % 2 == 0 || !is_squarefree(f)) return refuse("conductor is not squarefree and prime to 2");
    if (f != p) return refuse("conductor differs from p");
    if (!rep.level.contains_gamma(2 * p)) return refuse("theta group does not contain Gamma[2p, 2p]");
    if (spec.n > 2) throw GuardError("cusp certificates are computed for n <= 2");
    if (!is_diagonal(spec.tau) || !is_upper_triangular(spec.Q)) return refuse("Gauss-sum sweep needs diagonal tau and upper triangular Q");
    rep.covered = true;

    const auto reps = crt_combine(spec.n, 2 * p);
    bool need_sweep = false;
    for (const auto& r : reps) need_sweep = need_sweep || r.local[1].kind == CuspKind::m_eta;
    bool vanishes = false;
    if (need_sweep) {
        rep.vanishing = vanishing_certificate(spec.n, p, spec.tau * Rational(p), spec.Q);
        const DirichletCharacter prim = spec.chi.primitive();
        const auto all = enumerate_characters(p);
        for (const auto& t : rep.vanishing->odd)
            if (all[t.chi_index].exponents() == prim.exponents()) vanishes = t.nonzero == 0;
    }

    std::map<int, bool> kind_ok;
    for (const auto& r : reps) {
        CuspVerdict v;
        v.kind_vector = r.kind_vector();
        const bool eta2 = r.local[0].kind == CuspKind::m_eta;
        const bool etap = r.local[1].kind == CuspKind::m_eta;
        v.kind = 8 + (etap ? 1 : 0) + (eta2 ? 2 : 0);
        for (const auto& l : r.local) v.local_s.push_back(to_string_s(l.s));
        if (!etap) {
            v.certified = true;
            v.method = eta2 ? "p-adic factor unchanged; 2-adic factor by translation invariance"
                            : "support nonsingular by translation invariance";
        } else {
            v.certified = vanishes;
            v.method = vanishes ? "Gauss sums vanish on singular matrices" : "Gauss sums nonzero on singular matrices";
        }
        auto [it, fresh] = kind_ok.try_emplace(v.kind, v.certified);
        if (!fresh) it->second = it->second && v.certified;
        rep.cusps.push_back(std::move(v));
    }
    for (const auto& [k, ok] : kind_ok)
        if (ok) rep.kinds_certified.push_back(k);
    rep.verdict = rep.kinds_certified.size() == 4 ? "cuspidal" : "not certified";
    return rep;
}

} // namespace rsiegel
