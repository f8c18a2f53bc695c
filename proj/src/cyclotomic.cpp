#include "rsiegel/cyclotomic.hpp"
#include "rsiegel/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

namespace rsiegel {

int euler_phi(std::int64_t n)
{
    std::int64_t r = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return static_cast<int>(r);
}

namespace {

std::vector<std::int64_t> poly_div_exact(std::vector<std::int64_t> num, const std::vector<std::int64_t>& den)
{
    const std::size_t dn = den.size() - 1;
    std::vector<std::int64_t> q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        std::int64_t c = num[i];
        q[i - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return q;
}

std::mutex cache_mutex;
std::map<int, std::vector<std::int64_t>> cache;

const std::vector<std::int64_t>& phi_locked(int N)
{
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    std::vector<std::int64_t> num(static_cast<std::size_t>(N) + 1, 0);
    num[0] = -1;
    num[static_cast<std::size_t>(N)] = 1;
    for (int d = 1; d < N; ++d)
        if (N % d == 0) num = poly_div_exact(num, phi_locked(d));
    return cache.emplace(N, std::move(num)).first->second;
}

} // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(int N)
{
    if (N < 1) throw DomainError("cyclotomic order must be positive");
    std::lock_guard<std::mutex> lock(cache_mutex);
    return phi_locked(N);
}

CyclotomicNumber::CyclotomicNumber(int order) : order_(order)
{
    if (order < 1) throw DomainError("cyclotomic order must be positive");
    coeffs_.assign(static_cast<std::size_t>(euler_phi(order)), Rational(0));
}

CyclotomicNumber::CyclotomicNumber(int order, const Rational& value) : CyclotomicNumber(order)
{
    coeffs_[0] = value;
}

CyclotomicNumber::CyclotomicNumber(int order, std::vector<Rational> coefficients) : order_(order)
{
    if (order < 1) throw DomainError("cyclotomic order must be positive");
    reduce(std::move(coefficients));
}

void CyclotomicNumber::reduce(std::vector<Rational> poly)
{
    const auto& phi = cyclotomic_polynomial(order_);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = poly.size(); i-- > deg;) {
        if (poly[i] == 0) continue;
        Rational c = poly[i];
        for (std::size_t j = 0; j <= deg; ++j)
            if (phi[j] != 0) poly[i - deg + j] -= c * phi[j];
    }
    poly.resize(deg, Rational(0));
    coeffs_ = std::move(poly);
}

CyclotomicNumber CyclotomicNumber::zeta(int order, std::int64_t k)
{
    std::vector<Rational> poly(static_cast<std::size_t>(order), Rational(0));
    poly[static_cast<std::size_t>(positive_mod(k, order))] = 1;
    return CyclotomicNumber(order, std::move(poly));
}

CyclotomicNumber CyclotomicNumber::from_exponent_counts(int order, const std::vector<std::int64_t>& counts)
{
    const auto& phi = cyclotomic_polynomial(order);
    const std::size_t deg = phi.size() - 1;
    // integer reduction first, rationals only at the end
    std::vector<std::int64_t> poly(counts.begin(), counts.end());
    poly.resize(std::max<std::size_t>(poly.size(), deg), 0);
    for (std::size_t i = poly.size(); i-- > deg;) {
        std::int64_t c = poly[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= deg; ++j) poly[i - deg + j] -= c * phi[j];
    }
    std::vector<Rational> r(deg);
    for (std::size_t i = 0; i < deg; ++i) r[i] = poly[i];
    CyclotomicNumber z(order);
    z.coeffs_ = std::move(r);
    return z;
}

bool CyclotomicNumber::is_zero() const
{
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CyclotomicNumber::is_rational() const
{
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

CyclotomicNumber CyclotomicNumber::lift(int new_order) const
{
    if (new_order % order_) throw DomainError("lift target must be a multiple of the order");
    const int step = new_order / order_;
    std::vector<Rational> poly(static_cast<std::size_t>(new_order), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) poly[i * static_cast<std::size_t>(step)] = coeffs_[i];
    return CyclotomicNumber(new_order, std::move(poly));
}

CyclotomicNumber CyclotomicNumber::conj() const
{
    std::vector<Rational> poly(static_cast<std::size_t>(order_), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        poly[(static_cast<std::size_t>(order_) - i) % static_cast<std::size_t>(order_)] += coeffs_[i];
    return CyclotomicNumber(order_, std::move(poly));
}

std::complex<double> CyclotomicNumber::to_complex() const
{
    std::complex<double> z = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        double a = 2 * std::numbers::pi * static_cast<double>(i) / order_;
        z += static_cast<double>(coeffs_[i]) * std::complex<double>(std::cos(a), std::sin(a));
    }
    return z;
}

namespace {

int common_order(int a, int b) { return std::lcm(a, b); }

} // namespace

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o)
{
    if (o.order_ != order_) {
        int m = common_order(order_, o.order_);
        *this = lift(m);
        return *this += o.lift(m);
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) { return *this += -o; }

CyclotomicNumber CyclotomicNumber::operator-() const
{
    CyclotomicNumber r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& o)
{
    if (o.order_ != order_) {
        int m = common_order(order_, o.order_);
        *this = lift(m);
        return *this *= o.lift(m);
    }
    std::vector<Rational> poly(coeffs_.size() * 2 + 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            if (o.coeffs_[j] != 0) poly[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    reduce(std::move(poly));
    return *this;
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b)
{
    if (a.order_ != b.order_) {
        int m = std::lcm(a.order_, b.order_);
        return a.lift(m).coeffs_ == b.lift(m).coeffs_;
    }
    return a.coeffs_ == b.coeffs_;
}

std::string CyclotomicNumber::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        std::string c = rsiegel::to_string(coeffs_[i]);
        if (!first) os << (coeffs_[i] > 0 ? " + " : " - ");
        else if (coeffs_[i] < 0) os << "-";
        if (coeffs_[i] < 0) c = c.substr(1);
        first = false;
        if (i == 0) {
            os << c;
            continue;
        }
        if (c != "1") os << c << "*";
        os << "z" << order_;
        if (i > 1) os << "^" << i;
    }
    if (first) return "0";
    return os.str();
}

} // namespace rsiegel
