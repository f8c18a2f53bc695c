#include "rsiegel/gauss.hpp"
#include "rsiegel/arith.hpp"
#include "rsiegel/errors.hpp"
#include "rsiegel/forms.hpp"
#include "rsiegel/parallel.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

namespace rsiegel {

namespace {

// All T in M_n(Z/F), entries flattened row-major, plus det T mod F.
struct MatrixTable {
    int n = 1;
    std::int64_t F = 1;
    std::size_t count = 0;
    std::vector<std::int32_t> entries;
    std::vector<std::int64_t> dets;
};

std::size_t enumeration_size(int n, std::int64_t F)
{
    double size = std::pow(static_cast<double>(F), n * n);
    if (size > gauss_enumeration_limit)
        throw GuardError("Gauss sum enumeration F^(n^2) = " + std::to_string(size) + " exceeds the limit 1e8");
    return static_cast<std::size_t>(std::llround(size));
}

MatrixTable build_table(int n, std::int64_t F)
{
    MatrixTable t;
    t.n = n;
    t.F = F;
    t.count = enumeration_size(n, F);
    const std::size_t nn = static_cast<std::size_t>(n * n);
    t.entries.resize(t.count * nn);
    t.dets.resize(t.count);
    IntMatrix T = IntMatrix::Zero(n, n);
    for (std::size_t idx = 0; idx < t.count; ++idx) {
        std::size_t rest = idx;
        for (std::size_t k = nn; k-- > 0;) {
            std::int64_t v = static_cast<std::int64_t>(rest % static_cast<std::size_t>(F));
            rest /= static_cast<std::size_t>(F);
            t.entries[idx * nn + k] = static_cast<std::int32_t>(v);
            T(static_cast<Eigen::Index>(k) / n, static_cast<Eigen::Index>(k) % n) = v;
        }
        t.dets[idx] = positive_mod(det(T), F);
    }
    return t;
}

struct Kernel {
    std::vector<std::int64_t> lin;
    std::vector<std::tuple<int, int, std::int64_t>> quad; // (u, v, coefficient) for T_u T_v
};

Kernel build_kernel(int n, std::int64_t F, const IntMatrix& X, const IntMatrix& R, const RationalMatrix& M)
{
    Kernel k;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) k.lin.push_back(positive_mod(X(a, b), F));
    // tr(M T R T^T) = sum M_da T_ab R_bc T_dc
    std::map<std::pair<int, int>, Rational> coef;
    for (int d = 0; d < n; ++d)
        for (int a = 0; a < n; ++a) {
            if (M(d, a) == 0) continue;
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    if (R(b, c) == 0) continue;
                    int u = a * n + b, v = d * n + c;
                    coef[{std::min(u, v), std::max(u, v)}] += M(d, a) * Rational(R(b, c));
                }
        }
    for (const auto& [uv, q] : coef) {
        if (q == 0) continue;
        if (std::gcd(static_cast<std::int64_t>(denom(q) % F), F) != 1 && F != 1)
            throw DomainError("quadratic term coefficient " + to_string(q) + " is not integral at the primes of " + std::to_string(F));
        std::int64_t r = mod_reduce(q, F);
        if (r) k.quad.emplace_back(uv.first, uv.second, r);
    }
    return k;
}

// Count table over Z/N of the exponents e with zeta_N^e the summand.
void accumulate(const MatrixTable& t, const Kernel& k, const DirichletCharacter& chi, std::int64_t N,
                std::size_t begin, std::size_t end, std::vector<std::int64_t>& counts)
{
    const std::size_t nn = static_cast<std::size_t>(t.n * t.n);
    const std::int64_t F = t.F;
    const std::int64_t scale_F = N / F;
    const std::int64_t scale_chi = N / chi.order();
    for (std::size_t idx = begin; idx < end; ++idx) {
        std::int64_t ce = chi.value_exponent(t.dets[idx]);
        if (ce < 0) continue;
        const std::int32_t* T = &t.entries[idx * nn];
        std::int64_t e = 0;
        for (std::size_t i = 0; i < nn; ++i) e += k.lin[i] * T[i];
        for (const auto& [u, v, c] : k.quad) e -= c * T[u] * T[v];
        e = positive_mod(e, F);
        counts[static_cast<std::size_t>((e * scale_F + ce * scale_chi) % N)] += 1;
    }
}

DirichletCharacter character_mod(const DirichletCharacter& chi, std::int64_t F)
{
    if (chi.modulus() == F) return chi;
    if (F % chi.modulus() == 0) return chi.lift(F);
    throw DomainError("character modulus " + std::to_string(chi.modulus()) + " does not divide F = " + std::to_string(F));
}

CyclotomicNumber evaluate(const MatrixTable& t, const Kernel& k, const DirichletCharacter& chi)
{
    const std::int64_t N = std::lcm(t.F, chi.order());
    std::vector<std::int64_t> counts(static_cast<std::size_t>(N), 0);
    accumulate(t, k, chi, N, 0, t.count, counts);
    return CyclotomicNumber::from_exponent_counts(static_cast<int>(N), counts);
}

CyclotomicNumber character_of_rational(const DirichletCharacter& chi, const Rational& q)
{
    // chi on the part of q prime to the modulus
    const std::int64_t F = chi.modulus();
    BigInt a = boost::multiprecision::abs(numer(q)), b = denom(q);
    for (auto [p, e] : factorize(F)) {
        while (a % p == 0) a /= p;
        while (b % p == 0) b /= p;
    }
    std::int64_t am = static_cast<std::int64_t>(a % F), bm = static_cast<std::int64_t>(b % F);
    if (q < 0) am = positive_mod(-am, F);
    return chi.value(am) * chi.conj().value(bm);
}

} // namespace

CyclotomicNumber gauss_sum(const GaussSumParams& P)
{
    const int n = P.n;
    if (n < 1) throw DomainError("degree must be positive");
    if (P.F < 1) throw DomainError("F must be positive");
    if (P.X.rows() != n || P.X.cols() != n || P.R.rows() != n || P.R.cols() != n || P.tauQ.rows() != n || P.tauQ.cols() != n)
        throw DomainError("Gauss sum matrices must be n x n");
    if (!is_symmetric(P.R)) throw DomainError("R must be symmetric");
    DirichletCharacter chi = character_mod(P.chi, P.F);
    enumeration_size(n, P.F);
    Kernel k = build_kernel(n, P.F, P.X, P.R, P.tauQ);
    MatrixTable t = build_table(n, P.F);
    const std::int64_t N = std::lcm(P.F, chi.order());
    const int workers = thread_count();
    std::vector<std::vector<std::int64_t>> partial(static_cast<std::size_t>(workers), std::vector<std::int64_t>(static_cast<std::size_t>(N), 0));
    parallel_for(t.count, [&](std::size_t b, std::size_t e, int w) { accumulate(t, k, chi, N, b, e, partial[static_cast<std::size_t>(w)]); });
    std::vector<std::int64_t> counts(static_cast<std::size_t>(N), 0);
    for (const auto& part : partial)
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += part[i];
    return CyclotomicNumber::from_exponent_counts(static_cast<int>(N), counts);
}

std::complex<double> SchwartzValue::numeric() const
{
    if (!support) return 0.0;
    return cyclotomic.to_complex() * prefactor.to_double();
}

SchwartzValue eta_sigma_schwartz(const SchwartzSpec& spec, const IntMatrix& b, const RationalMatrix& x, std::int64_t p)
{
    const Eigen::Index n = spec.tau.rows();
    if (!is_prime(p)) throw DomainError("p must be prime");
    if (spec.Q.rows() != n || x.rows() != n || b.rows() != n) throw DomainError("Schwartz data must be n x n");
    if (det(spec.Q) == 0) throw DomainError("Q must be invertible");
    if (!is_symmetric(b)) throw DomainError("b must be symmetric");
    const std::int64_t F = spec.chi.modulus();
    const int Fp = valuation(F, p);
    RationalMatrix tauQ = spec.Q.transpose() * spec.tau * spec.Q;
    Rational pF(1);
    for (int i = 0; i < Fp; ++i) pF *= p;
    RationalMatrix M = tauQ * pF - RationalMatrix(x.transpose() * spec.tau * spec.Q) * Rational(2);
    SchwartzValue out;
    out.p_divides_conductor = Fp > 0;
    out.level = Fp > 0 ? -Fp : 0;
    out.support = p_adic_membership(M, p, out.level);
    if (!out.p_divides_conductor) {
        out.cyclotomic = CyclotomicNumber(1, Rational(1));
        int v = valuation(det(RationalMatrix(spec.tau * spec.Q * Rational(2))), p);
        // |det 2 tau Q|_p^(n/2) = p^(-v n / 2)
        out.prefactor = surd_power(Rational(p), -v * static_cast<int>(n));
        if (!out.support) out.cyclotomic = CyclotomicNumber(1);
        return out;
    }
    out.prefactor = surd_power(boost::multiprecision::abs(det(RationalMatrix(spec.Q * spec.tau * Rational(2 * F)))), -static_cast<int>(n));
    if (!out.support) {
        out.cyclotomic = CyclotomicNumber(1);
        return out;
    }
    RationalMatrix Xr = spec.Q.transpose() * spec.tau * x * Rational(2 * F);
    IntMatrix X(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            if (std::gcd(static_cast<std::int64_t>(denom(Xr(i, j)) % F), F) != 1)
                throw DomainError("2F Q^T tau x is not integral at the primes of the conductor");
            X(i, j) = mod_reduce(Xr(i, j), F);
        }
    GaussSumParams params{static_cast<int>(n), spec.chi, X, IntMatrix(b * F), F, tauQ};
    out.cyclotomic = character_of_rational(spec.chi, det(spec.Q)) * gauss_sum(params);
    return out;
}

std::vector<IntMatrix> symmetric_matrices_mod(int n, std::int64_t p)
{
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) slots.emplace_back(i, j);
    std::vector<IntMatrix> out;
    std::vector<std::int64_t> v(slots.size(), 0);
    for (;;) {
        IntMatrix R = IntMatrix::Zero(n, n);
        for (std::size_t s = 0; s < slots.size(); ++s) {
            R(slots[s].first, slots[s].second) = v[s];
            R(slots[s].second, slots[s].first) = v[s];
        }
        out.push_back(R);
        std::size_t k = slots.size();
        while (k > 0 && ++v[k - 1] == p) v[--k] = 0;
        if (k == 0) break;
    }
    return out;
}

std::vector<IntMatrix> singular_matrices_mod(int n, std::int64_t p)
{
    std::vector<IntMatrix> out;
    MatrixTable t = build_table(n, p);
    const std::size_t nn = static_cast<std::size_t>(n * n);
    for (std::size_t idx = 0; idx < t.count; ++idx) {
        if (t.dets[idx] != 0) continue;
        IntMatrix X(n, n);
        for (std::size_t k = 0; k < nn; ++k) X(static_cast<Eigen::Index>(k) / n, static_cast<Eigen::Index>(k) % n) = t.entries[idx * nn + k];
        out.push_back(X);
    }
    return out;
}

VanishingReport vanishing_certificate(int n, std::int64_t p, const RationalMatrix& tau, const RationalMatrix& Q, bool include_even)
{
    if (n < 1 || n > 2) throw UnsupportedError("vanishing_certificate supports n <= 2");
    if (p == 2 || !is_prime(p)) throw DomainError("p must be an odd prime");
    if (tau.rows() != n || Q.rows() != n) throw DomainError("tau and Q must be n x n");
    if (!is_positive_definite(tau)) throw DomainError("tau must be positive definite");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j && tau(i, j) != 0) throw DomainError("tau must be diagonal");
            if (i > j && Q(i, j) != 0) throw DomainError("Q must be upper triangular");
        }
    if (det(Q) == 0) throw DomainError("Q must be invertible");

    VanishingReport rep;
    rep.n = n;
    rep.p = p;
    rep.tau = tau;
    rep.Q = Q;
    rep.tauQ = Q.transpose() * tau * Q;
    const MatrixTable table = build_table(n, p);
    const auto Xs = singular_matrices_mod(n, p);
    const auto Rs = symmetric_matrices_mod(n, p);
    rep.singular_X = Xs.size();
    rep.symmetric_R = Rs.size();

    auto chars = enumerate_characters(p);
    std::vector<std::size_t> selected;
    for (std::size_t c = 0; c < chars.size(); ++c) {
        if (chars[c].parity() == -1) selected.push_back(c);
        else if (include_even && !chars[c].is_trivial()) selected.push_back(c);
    }

    struct Partial {
        std::map<std::size_t, CharacterTally> tallies;
        std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> first;
        std::optional<GaussCase> first_case;
    };
    std::vector<Partial> parts(static_cast<std::size_t>(thread_count()));
    const std::size_t jobs = Xs.size();
    parallel_for(jobs, [&](std::size_t begin, std::size_t end, int w) {
        Partial& part = parts[static_cast<std::size_t>(w)];
        for (std::size_t xi = begin; xi < end; ++xi)
            for (std::size_t ri = 0; ri < Rs.size(); ++ri) {
                Kernel k = build_kernel(n, p, Xs[xi], Rs[ri], rep.tauQ);
                for (std::size_t c : selected) {
                    CyclotomicNumber g = evaluate(table, k, chars[c]);
                    CharacterTally& tal = part.tallies[c];
                    tal.chi_index = c;
                    tal.parity = chars[c].parity();
                    ++tal.cases;
                    if (g.is_zero()) continue;
                    ++tal.nonzero;
                    double mag = std::abs(g.to_complex());
                    tal.max_magnitude = std::max(tal.max_magnitude, mag);
                    if (chars[c].parity() != -1) continue;
                    auto key = std::make_tuple(c, xi, ri);
                    if (!part.first || key < *part.first) {
                        part.first = key;
                        part.first_case = GaussCase{c, Xs[xi], Rs[ri], g.to_string(), mag};
                    }
                }
            }
    });
    std::map<std::size_t, CharacterTally> merged;
    std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> first;
    for (auto& part : parts) {
        for (auto& [c, t] : part.tallies) {
            CharacterTally& m = merged[c];
            m.chi_index = c;
            m.parity = t.parity;
            m.cases += t.cases;
            m.nonzero += t.nonzero;
            m.max_magnitude = std::max(m.max_magnitude, t.max_magnitude);
        }
        if (part.first && (!first || *part.first < *first)) {
            first = part.first;
            rep.counterexample = part.first_case;
        }
    }
    for (auto& [c, t] : merged) {
        if (t.parity == -1) {
            rep.odd.push_back(t);
            rep.swept += t.cases;
            rep.nonzero += t.nonzero;
        } else {
            rep.even_outside_scope.push_back(t);
        }
    }
    rep.zero = rep.nonzero == 0;
    return rep;
}

} // namespace rsiegel
