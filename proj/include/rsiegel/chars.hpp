#pragma once

#include "rsiegel/cyclotomic.hpp"
#include "rsiegel/matrix.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace rsiegel {

// Generators of (Z/F)^x: one per odd prime power, -1 and 5 for 2^e.
struct UnitGroup {
    std::int64_t modulus = 1;
    std::vector<std::int64_t> generators;
    std::vector<std::int64_t> orders;
    std::vector<std::int64_t> primes; // prime behind each generator
    std::vector<std::vector<std::int32_t>> logs; // logs[k][a]: discrete log in generator k, -1 for non-units
};

std::shared_ptr<const UnitGroup> unit_group(std::int64_t modulus);

class DirichletCharacter {
public:
    DirichletCharacter(); // trivial mod 1
    DirichletCharacter(std::int64_t modulus, std::vector<std::int64_t> exponents);

    // Character with chi(a) = exp(2 pi i angle(a)) on units, angle a rational in [0,1).
    static DirichletCharacter from_angles(std::int64_t modulus, const std::function<Rational(std::int64_t)>& angle);
    static DirichletCharacter trivial(std::int64_t modulus) { return DirichletCharacter(modulus, {}); }

    std::int64_t modulus() const { return group_->modulus; }
    const std::vector<std::int64_t>& exponents() const { return exponents_; }
    std::int64_t order() const { return order_; }

    // chi(a) = zeta_order^e; -1 for non-units.
    std::int64_t value_exponent(std::int64_t a) const;
    Rational angle(std::int64_t a) const; // requires gcd(a, F) = 1
    CyclotomicNumber value(std::int64_t a) const;
    std::complex<double> value_complex(std::int64_t a) const;

    int parity() const; // chi(-1)
    bool is_trivial() const { return order_ == 1; }
    std::int64_t conductor() const;
    DirichletCharacter primitive() const;
    DirichletCharacter conj() const;
    DirichletCharacter lift(std::int64_t new_modulus) const;
    friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b);

private:
    std::shared_ptr<const UnitGroup> group_;
    std::vector<std::int64_t> exponents_;
    std::int64_t order_ = 1;
};

// Lexicographic in the exponent vector; index 0 is the trivial character.
std::vector<DirichletCharacter> enumerate_characters(std::int64_t modulus);

struct QuadCharacter {
    std::int64_t discriminant = 1; // fundamental discriminant, 1 for the trivial character
    std::int64_t conductor = 1;
    int value(std::int64_t a) const;
    int parity() const { return discriminant < 0 ? -1 : 1; }
    DirichletCharacter as_dirichlet() const;
};

QuadCharacter quad_character(std::int64_t nonzero_integer); // field Q(sqrt(d))
QuadCharacter epsilon_tau(const RationalMatrix& tau, int n);

struct LValue {
    std::complex<double> value;
    double tail_bound = 0;
};

// Euler product over primes p <= p_max not dividing the modulus.
LValue dirichlet_L(std::complex<double> s, const DirichletCharacter& chi, std::int64_t p_max);

} // namespace rsiegel
