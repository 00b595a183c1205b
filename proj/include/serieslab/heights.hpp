#pragma once

#include <string>
#include <utility>
#include <vector>

#include "serieslab/certified_numerics.hpp"
#include "serieslab/number_field.hpp"

namespace serieslab {

// Certified enclosure of an absolute logarithmic height.
struct HeightEnclosure {
    Real lower, upper;
    mpfr_prec_t precision_used = 0;
    double width() const;
    double midpoint() const;
};

// h(beta) via the Mahler-measure route: (1/n)(log|lc M_beta| + sum log+|root|)
// over all certified roots of the minimal polynomial, with directed rounding.
// The minimal-polynomial log sandwich |log|M| - n h| <= n log 2 is re-checked
// internally; a certified violation signals an implementation bug.
HeightEnclosure height(const NFElement& beta, double tolerance);
HeightEnclosure height_from_minpoly(const IntPolynomial& minpoly, double tolerance);

// (affine, projective) = (log max|a_i|, log max|a_i| - log content)
std::pair<double, double> poly_heights(const IntPolynomial& p);

// Certified: the element equals / does not equal a real number.
bool element_is_real(const NFElement& beta);

struct LiouvilleReport {
    int degree = 0;
    int delta = 1;  // 1 real, 2 complex
    double lower_bound = 0, abs_value = 0, upper_bound = 0;
    bool pass = false;
};

// e^{-d h/delta} <= |beta| <= e^{d h/delta} with certified |beta| and h;
// "pass" means the inequality is not violated beyond enclosure widths.
LiouvilleReport liouville_check(const NFElement& beta);

struct AuditRecord {
    std::string identity;
    std::string inputs;
    double lhs = 0, rhs = 0, slack = 0;
    bool pass = true;
};

// One record per height identity/inequality checked on each pair. A failure
// means a violation beyond the summed enclosure widths.
std::vector<AuditRecord> audit_height_axioms(
    const std::vector<std::pair<NFElement, NFElement>>& sample, double tolerance);

// JSON lines rendering, one record per line.
std::string audit_report_jsonl(const std::vector<AuditRecord>& records);

}  // namespace serieslab
