#pragma once

#include "rsiegel/matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rsiegel {

enum class CuspKind { m, m_eta }; // m(s) or m(s) eta

struct SymplecticModP {
    std::int64_t p = 2;
    IntMatrix entries; // 2n x 2n, entries in [0, p)
    CuspKind kind = CuspKind::m;
    IntMatrix s; // n x n symmetric
};

IntMatrix eta_matrix(int n, std::int64_t p);
IntMatrix m_of_s(const IntMatrix& s, std::int64_t p);
bool is_symplectic_mod(const IntMatrix& alpha, std::int64_t p);
IntMatrix symplectic_inverse_mod(const IntMatrix& alpha, std::int64_t p);
// Klingen parabolic P_{n-1}(F_p): alpha e_n is a multiple of e_n.
bool in_klingen_parabolic(const IntMatrix& alpha, std::int64_t p);

// {m(s), m(s) eta : s in S(F_p)} ordered by kind then s lexicographically.
std::vector<SymplecticModP> candidate_reps(int n, std::int64_t p);

// One representative per double coset Q(F_p) \ Sp_n(F_p) / P_{n-1}(F_p), least in candidate order.
std::vector<SymplecticModP> dedup_double_cosets(int n, std::int64_t p);
std::vector<SymplecticModP> dedup_double_cosets(const std::vector<SymplecticModP>& candidates, int n, std::int64_t p);
bool double_coset_equivalent(const IntMatrix& a, const IntMatrix& b, int n, std::int64_t p);

struct CuspRep {
    std::vector<std::int64_t> primes;
    std::vector<SymplecticModP> local; // one per prime
    std::string kind_vector() const;   // e.g. "(m, m eta)"
};

std::vector<CuspRep> crt_combine(int n, std::int64_t m);

// n = 1: a matrix of SL_2(Z) reducing to alpha mod m.
IntMatrix lift_sl2(const IntMatrix& alpha, std::int64_t m);

std::vector<IntMatrix> gl_mod(int n, std::int64_t p);

} // namespace rsiegel
