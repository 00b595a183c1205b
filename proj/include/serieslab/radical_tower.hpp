#pragma once

#include <optional>
#include <vector>

#include "serieslab/number_field.hpp"

namespace serieslab {

struct RadicalReport {
    BigRational base;
    unsigned long m = 1;
    std::vector<unsigned long> failing_primes;  // p | m with base a p-th power
    bool minus4_flag = false;                   // base in -4 Q^4 while 4 | m
    int degree = 0;                             // degree of base^{1/m} over Q
    // divisors d of m with Q(base^{1/d}) intermediate; emitted only when the
    // full-degree case holds with a positive base (real branch)
    std::optional<std::vector<unsigned long>> subfield_degrees;
    bool used_factorization_fallback = false;
};

// Exact rational p-th power test, sign-aware for odd p.
bool is_pth_power(const BigRational& a, unsigned long p);

// Degree of the principal branch of a^{1/m} over Q: full degree m exactly when
// no prime divisor of m makes a a p-th power and (when 4 | m) a is not in
// -4 Q^4; otherwise the degree comes from factoring T^m - a and locating the
// branch among the certified roots.
RadicalReport radical_degree(const BigRational& a, unsigned long m);

// The number field Q(a^{1/m}) on the principal branch (positive real root for
// a > 0), defined by the irreducible factor of T^m - a vanishing there.
NumberField::Ptr radical_field(const BigRational& a, unsigned long m);

struct RadicalExpansion {
    std::vector<BigRational> coords;  // coordinates of sum_{k=1}^{m-1} (a^{1/m})^{k!}
    int degree = 0;
};

// Power-basis coordinates of F_{m-1}(a^{1/m}) = sum_{k=1}^{m-1} (a^{1/m})^{k!}
// for 0 < a < 1 of full radical degree m, computed by the closed-form digit
// formula and cross-checked against exact field arithmetic; the linear
// coordinate is asserted >= 1 and the element degree is asserted equal to m.
RadicalExpansion radical_partial_sum_expansion(const BigRational& a, unsigned long m);

}  // namespace serieslab
