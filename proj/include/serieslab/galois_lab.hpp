#pragma once

#include <string>

#include "serieslab/certified_numerics.hpp"
#include "serieslab/json_io.hpp"

namespace serieslab {

enum class GroupLabel { S2, C3, S3, C4, V4, D4, A4, S4 };

std::string group_label_name(GroupLabel g);

// Galois group of a monic irreducible integer polynomial of degree 2..4 by
// discriminant-square test (cubics) and the cubic-resolvent table (quartics).
GroupLabel galois_group(const IntPolynomial& p);

struct CountReport {
    int m = 0;
    long x = 0;
    unsigned long total = 0;
    unsigned long sm_count = 0;
    unsigned long non_sm_count = 0;
    unsigned long cyclotomic_excluded = 0;
    unsigned long small_root_found = 0;
    BigInt bound_rhs;      // 2^m X^{m-1}
    double fitted_c = 0;   // smallest C with sm_count >= 2^m X^{m-1} - C X^{m-3/2} log X
    std::string per_poly_csv;  // optional audit trail

    nlohmann::json to_json() const;
};

// Census of monic degree-m polynomials with |P| <= X and P(0) = +-1:
// reducible and non-S_m irreducible ones are counted apart; every non-
// cyclotomic S_m survivor is run through the small-root extraction.
CountReport count_sm(int m, long x, bool with_csv = false);

// Certified root of modulus < 1 of a monic irreducible non-cyclotomic
// polynomial with |P(0)| = 1; deterministic choice (smallest certified
// modulus, ties broken toward the smaller imaginary part).
ComplexBall kronecker_small_root(const IntPolynomial& p);

}  // namespace serieslab
