#include "rsiegel/chars.hpp"
#include "rsiegel/arith.hpp"
#include "rsiegel/errors.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

namespace rsiegel {

namespace {

std::shared_ptr<UnitGroup> build_group(std::int64_t F)
{
    auto G = std::make_shared<UnitGroup>();
    G->modulus = F;
    auto add = [&](std::int64_t pe, std::int64_t p, std::int64_t g, std::int64_t ord) {
        // generator of the p^e component lifted by CRT to be 1 at the other components
        std::int64_t rest = F / pe;
        std::int64_t lift = g;
        if (rest > 1) {
            std::int64_t inv = mod_inverse(positive_mod(rest, pe), pe);
            // x = 1 mod rest, x = g mod pe
            std::int64_t t = positive_mod(static_cast<std::int64_t>((static_cast<__int128>(g - 1) * inv) % pe), pe);
            lift = positive_mod(1 + rest * t, F);
        }
        G->generators.push_back(lift);
        G->orders.push_back(ord);
        G->primes.push_back(p);
        std::vector<std::int32_t> log(static_cast<std::size_t>(F), -1);
        // log table indexed by residue mod pe, spread over a mod F afterwards
        std::vector<std::int32_t> local(static_cast<std::size_t>(pe), -1);
        std::int64_t x = 1;
        for (std::int64_t k = 0; k < ord; ++k) {
            local[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(k);
            x = x * g % pe;
        }
        if (p == 2 && g == 5) {
            // residues = -5^k get the same 5-log
            for (std::int64_t r = 0; r < pe; ++r)
                if (local[static_cast<std::size_t>(r)] >= 0) local[static_cast<std::size_t>(pe - r)] = local[static_cast<std::size_t>(r)];
        }
        if (p == 2 && g == pe - 1) {
            // the -1 component: 0 for 1 mod 4, 1 for 3 mod 4
            for (std::int64_t r = 1; r < pe; r += 2) local[static_cast<std::size_t>(r)] = (r % 4 == 1) ? 0 : 1;
        }
        for (std::int64_t a = 0; a < F; ++a) {
            if (std::gcd(a, F) != 1) continue;
            log[static_cast<std::size_t>(a)] = local[static_cast<std::size_t>(a % pe)];
        }
        G->logs.push_back(std::move(log));
    };
    for (auto [p, e] : factorize(F)) {
        std::int64_t pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        if (p == 2) {
            if (e >= 2) add(pe, 2, pe - 1, 2);
            if (e >= 3) add(pe, 2, 5, pe / 4);
        } else {
            add(pe, p, primitive_root(p) % pe, pe / p * (p - 1));
        }
    }
    return G;
}

std::int64_t lcm_of_orders(const UnitGroup& G, const std::vector<std::int64_t>& ex)
{
    std::int64_t o = 1;
    for (std::size_t k = 0; k < ex.size(); ++k) o = std::lcm(o, G.orders[k] / std::gcd(ex[k], G.orders[k]));
    return o;
}

} // namespace

std::shared_ptr<const UnitGroup> unit_group(std::int64_t modulus)
{
    if (modulus < 1) throw DomainError("modulus must be positive");
    static std::mutex lock;
    static std::map<std::int64_t, std::shared_ptr<const UnitGroup>> cache;
    std::lock_guard<std::mutex> guard(lock);
    auto it = cache.find(modulus);
    if (it != cache.end()) return it->second;
    auto G = build_group(modulus);
    cache.emplace(modulus, G);
    return G;
}

DirichletCharacter::DirichletCharacter() : DirichletCharacter(1, {}) {}

DirichletCharacter::DirichletCharacter(std::int64_t modulus, std::vector<std::int64_t> exponents)
    : group_(unit_group(modulus)), exponents_(std::move(exponents))
{
    if (exponents_.empty()) exponents_.assign(group_->orders.size(), 0);
    if (exponents_.size() != group_->orders.size())
        throw DomainError("character exponent vector has wrong length for modulus " + std::to_string(modulus));
    for (std::size_t k = 0; k < exponents_.size(); ++k) exponents_[k] = positive_mod(exponents_[k], group_->orders[k]);
    order_ = lcm_of_orders(*group_, exponents_);
}

DirichletCharacter DirichletCharacter::from_angles(std::int64_t modulus, const std::function<Rational(std::int64_t)>& angle)
{
    auto G = unit_group(modulus);
    std::vector<std::int64_t> ex(G->orders.size());
    for (std::size_t k = 0; k < ex.size(); ++k) {
        Rational a = angle(G->generators[k]) * G->orders[k];
        if (denom(a) != 1) throw DomainError("angle incompatible with generator order");
        ex[k] = static_cast<std::int64_t>(numer(a) % G->orders[k]);
    }
    DirichletCharacter chi(modulus, ex);
    return chi;
}

Rational DirichletCharacter::angle(std::int64_t a) const
{
    const std::int64_t F = modulus();
    std::int64_t r = positive_mod(a, F);
    Rational out(0);
    for (std::size_t k = 0; k < exponents_.size(); ++k) {
        std::int32_t d = group_->logs[k][static_cast<std::size_t>(r)];
        if (d < 0) throw DomainError("angle of a non-unit");
        out += Rational(exponents_[k] * static_cast<std::int64_t>(d) % group_->orders[k], group_->orders[k]);
    }
    BigInt whole = numer(out) / denom(out);
    return out - Rational(whole);
}

std::int64_t DirichletCharacter::value_exponent(std::int64_t a) const
{
    const std::int64_t F = modulus();
    std::int64_t r = positive_mod(a, F);
    if (std::gcd(r, F) != 1 && F != 1) return -1;
    std::int64_t e = 0;
    for (std::size_t k = 0; k < exponents_.size(); ++k) {
        std::int64_t d = group_->logs[k][static_cast<std::size_t>(r)];
        std::int64_t ok = group_->orders[k];
        // zeta_ok^(x d) = zeta_order^(x d order/ok); order/ok may be fractional, so scale through ok
        std::int64_t term = exponents_[k] * d % ok;
        std::int64_t g = std::gcd(ok, order_);
        // term/ok has denominator dividing order_, so term * order_ / ok is integral
        e += term / (ok / g) * (order_ / g);
    }
    return positive_mod(e, order_);
}

CyclotomicNumber DirichletCharacter::value(std::int64_t a) const
{
    std::int64_t e = value_exponent(a);
    if (e < 0) return CyclotomicNumber(static_cast<int>(order_));
    return CyclotomicNumber::zeta(static_cast<int>(order_), e);
}

std::complex<double> DirichletCharacter::value_complex(std::int64_t a) const
{
    std::int64_t e = value_exponent(a);
    if (e < 0) return 0.0;
    return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(order_));
}

int DirichletCharacter::parity() const
{
    if (modulus() <= 2) return 1;
    std::int64_t e = value_exponent(-1);
    return e == 0 ? 1 : -1;
}

std::int64_t DirichletCharacter::conductor() const
{
    std::int64_t f = 1;
    std::map<std::int64_t, std::int64_t> two_part; // generator exponent data for p = 2
    for (std::size_t k = 0; k < exponents_.size(); ++k) {
        std::int64_t p = group_->primes[k];
        std::int64_t o = group_->orders[k] / std::gcd(exponents_[k], group_->orders[k]);
        if (p != 2) {
            if (o == 1) continue;
            f *= p;
            for (std::int64_t q = o; q % p == 0; q /= p) f *= p;
        } else {
            two_part[group_->generators[k] % 4 == 3 && group_->orders[k] == 2 ? -1 : 5] = o;
        }
    }
    if (!two_part.empty()) {
        std::int64_t o5 = two_part.count(5) ? two_part[5] : 1;
        std::int64_t om1 = two_part.count(-1) ? two_part[-1] : 1;
        if (o5 > 1) {
            std::int64_t c = 4;
            for (std::int64_t q = o5; q > 1; q /= 2) c *= 2;
            f *= c;
        } else if (om1 > 1) {
            f *= 4;
        }
    }
    return f;
}

DirichletCharacter DirichletCharacter::primitive() const
{
    const std::int64_t f = conductor();
    const std::int64_t F = modulus();
    return from_angles(f, [&](std::int64_t g) {
        std::int64_t a = g;
        while (std::gcd(a, F) != 1) a += f;
        return angle(a);
    });
}

DirichletCharacter DirichletCharacter::conj() const
{
    std::vector<std::int64_t> ex = exponents_;
    for (std::size_t k = 0; k < ex.size(); ++k) ex[k] = positive_mod(-ex[k], group_->orders[k]);
    return DirichletCharacter(modulus(), ex);
}

DirichletCharacter DirichletCharacter::lift(std::int64_t new_modulus) const
{
    if (new_modulus % modulus() != 0) throw DomainError("lift target must be a multiple of the modulus");
    return from_angles(new_modulus, [&](std::int64_t g) { return angle(g); });
}

DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b)
{
    std::int64_t F = std::lcm(a.modulus(), b.modulus());
    return DirichletCharacter::from_angles(F, [&](std::int64_t g) {
        Rational t = a.angle(g) + b.angle(g);
        if (t >= 1) t -= 1;
        return t;
    });
}

std::vector<DirichletCharacter> enumerate_characters(std::int64_t modulus)
{
    auto G = unit_group(modulus);
    std::vector<DirichletCharacter> out;
    std::vector<std::int64_t> ex(G->orders.size(), 0);
    for (;;) {
        out.emplace_back(modulus, ex);
        std::size_t k = ex.size();
        while (k > 0) {
            --k;
            if (++ex[k] < G->orders[k]) break;
            ex[k] = 0;
            if (k == 0) return out;
        }
        if (ex.empty()) return out;
    }
}

int QuadCharacter::value(std::int64_t a) const
{
    if (discriminant == 1) return 1;
    return kronecker(discriminant, a);
}

DirichletCharacter QuadCharacter::as_dirichlet() const
{
    return DirichletCharacter::from_angles(conductor, [&](std::int64_t g) {
        return value(g) == 1 ? Rational(0) : Rational(1, 2);
    });
}

QuadCharacter quad_character(std::int64_t d)
{
    std::int64_t s = squarefree_part(d);
    if (s == 1) return {};
    std::int64_t D = (positive_mod(s, 4) == 1) ? s : 4 * s;
    return {D, D < 0 ? -D : D};
}

QuadCharacter epsilon_tau(const RationalMatrix& tau, int n)
{
    if (!is_positive_definite(tau)) throw DomainError("tau is not positive definite");
    Rational d = det(RationalMatrix(2 * tau));
    if ((n / 4) % 2) d = -d;
    // square class of a/b equals that of a*b
    BigInt v = numer(d) * denom(d);
    BigInt kernel = v < 0 ? BigInt(-1) : BigInt(1);
    v = boost::multiprecision::abs(v);
    for (std::int64_t p : primes_up_to(1 << 16)) {
        if (v < BigInt(std::numeric_limits<std::int64_t>::max() / 4)) break;
        int e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        if (e % 2) kernel *= p;
    }
    BigInt root = boost::multiprecision::sqrt(v);
    if (root * root == v) v = 1;
    v *= kernel;
    if (boost::multiprecision::abs(v) > BigInt(std::numeric_limits<std::int64_t>::max() / 4))
        throw GuardError("determinant too large for the square-class computation");
    return quad_character(static_cast<std::int64_t>(v));
}

LValue dirichlet_L(std::complex<double> s, const DirichletCharacter& chi, std::int64_t p_max)
{
    const double sigma = s.real();
    if (sigma <= 1) throw DomainError("dirichlet_L requires Re(s) > 1");
    std::complex<double> value = 1.0;
    std::size_t factors = 0;
    for (std::int64_t p : primes_up_to(p_max)) {
        if (p > p_max) break;
        ++factors;
        std::complex<double> c = chi.value_complex(p);
        if (c == 0.0) continue;
        value /= 1.0 - c * std::pow(static_cast<double>(p), -s);
    }
    const double P = static_cast<double>(std::max<std::int64_t>(p_max, 1));
    const double delta = std::pow(P, 1 - sigma) / ((sigma - 1) * (1 - std::pow(P, -sigma)));
    const double rounding = 8.0 * static_cast<double>(factors + 1) * std::numeric_limits<double>::epsilon();
    return {value, std::abs(value) * (std::expm1(delta) + rounding)};
}

} // namespace rsiegel
