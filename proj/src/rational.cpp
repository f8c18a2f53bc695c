#include "rsiegel/rational.hpp"
#include "rsiegel/errors.hpp"

#include "rsiegel/arith.hpp"

#include <climits>
#include <cmath>
#include <limits>
#include <numeric>

namespace rsiegel {

Rational parse_rational(const std::string& text)
{
    std::string t;
    for (char c : text)
        if (c != ' ') t += c;
    if (t.empty()) throw DomainError("empty rational");
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(t));
        BigInt p(t.substr(0, slash));
        BigInt q(t.substr(slash + 1));
        if (q == 0) throw DomainError("zero denominator in '" + text + "'");
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        throw DomainError("malformed rational '" + text + "'");
    }
}

std::string to_string(const Rational& q)
{
    if (denom(q) == 1) return numer(q).str();
    return numer(q).str() + "/" + denom(q).str();
}

int valuation(std::int64_t v, std::int64_t p)
{
    if (v == 0) return INT_MAX;
    int e = 0;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    return e;
}

int valuation(const Rational& q, std::int64_t p)
{
    if (q == 0) return INT_MAX;
    int e = 0;
    BigInt a = numer(q), b = denom(q);
    while (a % p == 0) { a /= p; ++e; }
    while (b % p == 0) { b /= p; --e; }
    return e;
}

std::int64_t positive_mod(std::int64_t a, std::int64_t m)
{
    a %= m;
    return a < 0 ? a + m : a;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t m)
{
    __int128 r = 1 % m, b = positive_mod(base, m);
    while (exp > 0) {
        if (exp & 1) r = r * b % m;
        b = b * b % m;
        exp >>= 1;
    }
    return static_cast<std::int64_t>(r);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m)
{
    std::int64_t g = m, x = 0, x1 = 1, r = positive_mod(a, m);
    while (r != 0) {
        std::int64_t q = g / r;
        std::int64_t t = g - q * r; g = r; r = t;
        t = x - q * x1; x = x1; x1 = t;
    }
    if (g != 1) throw DomainError("not invertible modulo " + std::to_string(m));
    return positive_mod(x, m);
}

std::int64_t mod_reduce(const Rational& q, std::int64_t m)
{
    BigInt a = numer(q) % m, b = denom(q) % m;
    std::int64_t ai = positive_mod(a.convert_to<std::int64_t>(), m);
    std::int64_t bi = positive_mod(b.convert_to<std::int64_t>(), m);
    return static_cast<std::int64_t>(static_cast<__int128>(ai) * mod_inverse(bi, m) % m);
}

bool is_square(const Rational& q)
{
    if (q < 0) return false;
    BigInt a = numer(q), b = denom(q);
    BigInt ra = boost::multiprecision::sqrt(a), rb = boost::multiprecision::sqrt(b);
    return ra * ra == a && rb * rb == b;
}

Rational rational_sqrt(const Rational& q)
{
    if (!is_square(q)) throw DomainError("not a rational square: " + to_string(q));
    return Rational(boost::multiprecision::sqrt(numer(q)), boost::multiprecision::sqrt(denom(q)));
}

GaussRational GaussRational::inverse() const
{
    Rational n = re * re + im * im;
    if (n == 0) throw DomainError("inverse of zero");
    return {re / n, -im / n};
}

GaussRational gauss_pow(const GaussRational& z, int e)
{
    GaussRational r(1), b = z;
    if (e < 0) {
        b = z.inverse();
        e = -e;
    }
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::string to_string(const GaussRational& z)
{
    if (z.im == 0) return to_string(z.re);
    if (z.re == 0) return to_string(z.im) + "i";
    std::string im = to_string(z.im);
    return to_string(z.re) + (z.im > 0 ? "+" : "") + im + "i";
}

double SurdFactor::to_double() const { return static_cast<double>(coeff) * std::sqrt(static_cast<double>(radicand)); }

std::string SurdFactor::to_string() const
{
    std::string s = rsiegel::to_string(coeff);
    if (radicand != 1) s += "*sqrt(" + std::to_string(radicand) + ")";
    return s;
}

SurdFactor surd_power(const Rational& r, int numerator_exp)
{
    if (r <= 0) throw DomainError("surd base must be positive");
    Rational base = numerator_exp < 0 ? Rational(1) / r : r;
    int e = std::abs(numerator_exp);
    Rational whole(1);
    for (int i = 0; i < e / 2; ++i) whole *= base;
    SurdFactor out{whole, 1};
    if (e % 2) {
        BigInt ab = numer(base) * denom(base);
        if (ab > BigInt(std::numeric_limits<std::int64_t>::max())) throw GuardError("surd radicand too large");
        std::int64_t v = static_cast<std::int64_t>(ab);
        std::int64_t d = squarefree_part(v);
        std::int64_t s = 1;
        while (s * s * d < v) ++s;
        out.coeff *= Rational(BigInt(s)) / Rational(denom(base));
        out.radicand = d;
    }
    return out;
}

} // namespace rsiegel
