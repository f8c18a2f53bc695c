#include "rsiegel/analytic.hpp"
#include "rsiegel/arith.hpp"
#include "rsiegel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace rsiegel {

namespace {

constexpr double pi = std::numbers::pi;

bool is_integer(const Rational& q) { return denom(q) == 1; }

bool is_half_integer(const Rational& q) { return denom(q * 2) == 1; }

BigInt floor_q(const Rational& q)
{
    BigInt n = numer(q), d = denom(q);
    BigInt f = n / d;
    if (n < 0 && f * d != n) f -= 1;
    return f;
}

long long floor_ll(const Rational& q) { return static_cast<long long>(floor_q(q)); }

double to_d(const Rational& q) { return static_cast<double>(q); }

bool near_nonpositive_integer(Complex s)
{
    if (std::abs(s.imag()) > 1e-12) return false;
    double r = std::round(s.real());
    return r <= 0 && std::abs(s.real() - r) < 1e-12;
}

Complex lanczos(Complex z)
{
    static const double g = 7;
    static const double c[] = {0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
                               771.32342877765313,      -176.61502916214059,   12.507343278686905,
                               -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    z -= 1;
    Complex x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
    Complex t = z + g + 0.5;
    return std::sqrt(2 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

} // namespace

Complex complex_gamma(Complex s)
{
    if (near_nonpositive_integer(s)) throw PoleError("Gamma has a pole at " + std::to_string(s.real()), 0);
    if (s.imag() == 0 && s.real() > 0 && s.real() < 171) return std::tgamma(s.real());
    if (s.real() < 0.5) return pi / (std::sin(pi * s) * lanczos(1.0 - s));
    return lanczos(s);
}

Complex siegel_gamma(int n, Complex s)
{
    if (n < 1) throw DomainError("degree must be positive");
    Complex out = std::pow(pi, n * (n - 1) / 4.0);
    for (int j = 0; j < n; ++j) {
        Complex arg = s - j / 2.0;
        if (near_nonpositive_integer(arg)) throw PoleError("Siegel Gamma factor " + std::to_string(j) + " has a pole", j);
        out *= complex_gamma(arg);
    }
    return out;
}

Complex gamma_rho(const GLWeight& rho, const Rational& h, Complex s)
{
    const int n = rho.n;
    if (n < 1 || static_cast<int>(rho.m.size()) != n) throw DomainError("weight must have n entries");
    Complex out = std::pow(pi, n * (n - 1) / 4.0);
    for (int i = 1; i <= n; ++i) {
        Complex arg = s + to_d(h) + static_cast<double>(rho.m[i - 1]) - i / 2.0 + 0.5;
        if (near_nonpositive_integer(arg)) throw PoleError("Gamma_rho factor " + std::to_string(i) + " has a pole", i);
        out *= complex_gamma(arg);
    }
    return out;
}

int gamma_kn_case(const Rational& k, int n)
{
    if (n < 1) throw DomainError("degree must be positive");
    if (!is_half_integer(k)) throw DomainError("k must lie in (1/2)Z");
    const Rational half_n(n, 2);
    if (k < half_n) throw DomainError("Gamma^{k,n} needs k >= n/2");
    const bool k_int = is_integer(k);
    if (k > n) return k_int ? 2 : 1;
    return is_integer(k - half_n) ? 3 : 4;
}

Complex gamma_kn(const Rational& k, int n, Complex s)
{
    const int kase = gamma_kn_case(k, n);
    const int nbar = n % 2;
    const double kd = to_d(k);
    const Complex shift = s + (kd - n) / 2.0;
    switch (kase) {
    case 1:
        return siegel_gamma(n, shift);
    case 2: {
        Rational first = Rational(numer(k) - n - nbar, 2) - Rational(floor_q((k - nbar) / 2));
        return complex_gamma(s + to_d(first)) * siegel_gamma(n, shift);
    }
    case 3: {
        const int m = static_cast<int>(floor_ll(2 * k)) - n + 1;
        Complex out = siegel_gamma(m, shift);
        const long long lo = floor_ll(k - Rational(n, 2)) + 1;
        for (long long i = lo; i <= n / 2; ++i) out *= complex_gamma(2.0 * s - n / 2.0 - static_cast<double>(i));
        return out;
    }
    default: {
        const int m = static_cast<int>(floor_ll(2 * k)) - n + 1;
        Complex out = siegel_gamma(m, shift);
        const long long lo = floor_ll(k - Rational(n, 2)) + 1;
        for (long long i = lo; i <= (n - 1) / 2; ++i) out *= complex_gamma(2.0 * s - (n + 1) / 2.0 - static_cast<double>(i));
        return out;
    }
    }
}

LambdaValue lambda_factor(int m, const Rational& kappa, std::int64_t x, const DirichletCharacter& eta, Complex s,
                          std::int64_t p_max)
{
    if (m < 1) throw DomainError("m must be positive");
    if (x < 1) throw DomainError("modulus must be positive");
    if (!is_half_integer(kappa)) throw DomainError("kappa must lie in (1/2)Z");
    const std::int64_t F = std::lcm(eta.modulus(), x);
    const DirichletCharacter e1 = eta.lift(F);
    const DirichletCharacter e2 = (eta * eta).lift(F);

    LambdaValue out;
    std::vector<std::pair<Complex, const DirichletCharacter*>> parts;
    if (is_integer(kappa)) {
        parts.push_back({2.0 * s, &e1});
        for (int i = 1; i <= m / 2; ++i) parts.push_back({4.0 * s - 2.0 * i, &e2});
    } else {
        out.squared = true;
        for (int i = 1; i <= (m + 1) / 2; ++i) parts.push_back({4.0 * s - 2.0 * i + 1.0, &e2});
    }
    out.squared = out.squared || parts.size() > 1;
    for (const auto& [a, chi] : parts)
        if (a.real() <= 1) throw DomainError("L-argument outside the convergence region Re > 1");

    Complex value = 1;
    double upper = 1, lower = 1;
    for (const auto& [a, chi] : parts) {
        LValue L = dirichlet_L(a, *chi, p_max);
        value *= L.value;
        upper *= std::abs(L.value) + L.tail_bound;
        lower *= std::abs(L.value);
        out.arguments.push_back(a);
    }
    out.value = value;
    out.tail_bound = upper - lower;
    return out;
}

void validate(const SatakeData& data)
{
    if (data.n < 1) throw DomainError("degree must be positive");
    if (!is_half_integer(data.k)) throw DomainError("k must lie in (1/2)Z");
    if (data.c < 1) throw DomainError("level must be a positive integer");
    for (const auto& [p, lam] : data.parameters) {
        if (!is_prime(p)) throw DomainError("Satake parameters keyed by a non-prime");
        if (static_cast<int>(lam.size()) != data.n) throw DomainError("each prime needs n Satake parameters");
        for (const Complex& l : lam)
            if (l == 0.0) throw DomainError("Satake parameters must be nonzero");
    }
}

std::vector<Complex> euler_factor(std::int64_t p, const SatakeData& data, bool at_level)
{
    auto it = data.parameters.find(p);
    if (it == data.parameters.end()) throw DomainError("no Satake parameters for p = " + std::to_string(p));
    const double pn = std::pow(static_cast<double>(p), data.n);
    std::vector<Complex> poly{1.0};
    auto times_linear = [&](Complex a) { // * (1 - a t)
        poly.push_back(0.0);
        for (std::size_t i = poly.size() - 1; i > 0; --i) poly[i] -= a * poly[i - 1];
    };
    if (at_level) {
        for (const Complex& l : it->second) times_linear(pn * l);
        return poly;
    }
    if (is_integer(data.k)) times_linear(pn);
    for (const Complex& l : it->second) {
        times_linear(pn * l);
        times_linear(pn / l);
    }
    return poly;
}

std::vector<Complex> euler_factor(std::int64_t p, const SatakeData& data)
{
    return euler_factor(p, data, data.c % p == 0);
}

Complex eval_polynomial(const std::vector<Complex>& coeffs, Complex t)
{
    Complex v = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
    return v;
}

Complex standard_euler_term(std::int64_t p, Complex s, const SatakeData& data, const DirichletCharacter& chi)
{
    const DirichletCharacter psi_prim = data.psi.primitive(), chi_prim = chi.primitive();
    Complex t = psi_prim.value_complex(p) * chi_prim.value_complex(p) * std::pow(static_cast<double>(p), -s);
    return eval_polynomial(euler_factor(p, data), t);
}

StandardLValue truncated_standard_L(Complex s, const SatakeData& data, const DirichletCharacter& chi, std::int64_t prime_bound)
{
    validate(data);
    StandardLValue out;
    out.convergence_abscissa = is_integer(data.k) ? 2.0 * data.n + 1 : 2.0 * data.n;
    out.outside_convergence = s.real() <= out.convergence_abscissa;
    for (const auto& [p, lam] : data.parameters) {
        if (p > prime_bound) break;
        out.value /= standard_euler_term(p, s, data, chi);
        out.primes.push_back(p);
    }
    return out;
}

PoleReport pole_report(const PoleQuery& q)
{
    const int n = q.n;
    if (n < 1) throw DomainError("degree must be positive");
    if (!is_half_integer(q.k)) throw DomainError("k must lie in (1/2)Z");
    if (q.k < Rational(n, 2)) throw DomainError("pole report needs k >= n/2");
    if (q.c < 1 || q.y < 1) throw DomainError("ideals must be positive integers");

    PoleReport rep;
    const Rational kappa = q.k - Rational(n, 2);
    const bool kappa_int = is_integer(kappa);

    // Lambda_c / Lambda_y at u = (2s - n)/4: constituents a(s) = 2u (eta) and 4u - 2i (eta^2),
    // or 4u - 2i + 1 (eta^2) in the half-integral case.
    struct Constituent {
        std::string label;
        bool squared;
        Rational s_at_zero; // s where a(s) = 0
        double ds_per_da;
    };
    std::vector<Constituent> cons;
    if (kappa_int) {
        cons.push_back({"L(2u, eta)", false, Rational(n, 2), 1.0});
        for (int i = 1; i <= n / 2; ++i)
            cons.push_back({"L(4u-" + std::to_string(2 * i) + ", eta^2)", true, Rational(n, 2) + i, 0.5});
    } else {
        for (int i = 1; i <= (n + 1) / 2; ++i)
            cons.push_back({"L(4u-" + std::to_string(2 * i - 1) + ", eta^2)", true, Rational(n + 2 * i - 1, 2), 0.5});
    }
    auto eta_at = [&](std::int64_t p, bool squared) {
        Complex v = q.eta.value_complex(p);
        return squared ? v * v : v;
    };
    std::map<Rational, std::pair<int, std::string>> net; // s -> (order, sources)
    auto primes_of = [](std::int64_t m) {
        std::vector<std::int64_t> out;
        for (auto [p, e] : factorize(m)) out.push_back(p);
        return out;
    };
    const auto pc = primes_of(q.c), py = primes_of(q.y);
    for (std::int64_t p : py) {
        if (std::find(pc.begin(), pc.end(), p) != pc.end()) continue;
        for (const auto& c : cons) {
            Complex v = eta_at(p, c.squared);
            if (std::abs(v) < 0.5) continue;
            rep.oscillatory.push_back({p, c.label, to_d(c.s_at_zero), c.ds_per_da * 2 * pi / std::log(static_cast<double>(p))});
            if (std::abs(v - 1.0) < 1e-9) {
                auto& e = net[c.s_at_zero];
                e.first += 1;
                e.second += (e.second.empty() ? "" : "; ") + c.label + " Euler factor at p=" + std::to_string(p);
            }
        }
    }
    for (std::int64_t p : pc) {
        if (std::find(py.begin(), py.end(), p) != py.end()) continue;
        for (const auto& c : cons)
            if (std::abs(eta_at(p, c.squared) - 1.0) < 1e-9) {
                auto it = net.find(c.s_at_zero);
                if (it != net.end()) it->second.first -= 1;
            }
    }
    for (const auto& [s, e] : net)
        if (e.first > 0) {
            rep.lambda_ratio_poles.push_back({s, e.second, e.first});
            if (e.first > 1) rep.simple = false;
        }

    auto first_set = [&]() {
        std::vector<Pole> out;
        if (kappa_int) {
            for (Rational j = n + 1; j <= Rational(2 * n + 1) - q.k; j += 1) out.push_back({j, "branch (2), integral set", 1});
        } else {
            for (Rational j = n + 1; j <= Rational(4 * n + 1, 2) - q.k; j += 1)
                out.push_back({j + Rational(1, 2), "branch (2), half-integral set", 1});
        }
        return out;
    };
    auto branch_12 = [&]() {
        if (q.k > n) {
            rep.case_label += "; k > n";
            if (is_integer(q.k) && is_integer((q.k - n) / 2)) rep.exceptional_set.push_back({Rational(n + 1), "branch (1), single pole at n+1", 1});
        } else {
            rep.case_label += kappa_int ? "; n/2 <= k <= n, k - n/2 integral" : "; n/2 <= k <= n, k - n/2 not integral";
            rep.exceptional_set = first_set();
        }
    };

    if (!q.psi_chi_square_trivial) {
        rep.case_label = "(psi chi)^2 != 1";
    } else if (q.y != 1) {
        rep.case_label = "(psi chi)^2 = 1, y != Z";
        branch_12();
    } else if (kappa_int) {
        rep.case_label = "(psi chi)^2 = 1, y = Z, k - n/2 integral";
        if (q.k <= n) rep.exceptional_set = first_set();
        for (Rational j = (n + 1) / 2; j <= n; j += 1) rep.exceptional_set.push_back({j, "y = Z extra set", 1});
        std::sort(rep.exceptional_set.begin(), rep.exceptional_set.end(), [](const Pole& a, const Pole& b) { return a.s < b.s; });
        rep.exceptional_set.erase(std::unique(rep.exceptional_set.begin(), rep.exceptional_set.end(),
                                              [](const Pole& a, const Pole& b) { return a.s == b.s; }),
                                  rep.exceptional_set.end());
    } else {
        rep.case_label = "(psi chi)^2 = 1, y = Z, k - n/2 not integral (not addressed; branches (1)/(2) used)";
        branch_12();
    }
    return rep;
}

} // namespace rsiegel
