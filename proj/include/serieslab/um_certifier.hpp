#pragma once

#include <optional>
#include <string>
#include <vector>

#include "serieslab/galois_lab.hpp"
#include "serieslab/heights.hpp"
#include "serieslab/series_engine.hpp"

namespace serieslab {

struct DegreeProfileRow {
    int n = 0;
    BigInt s_n;
    int degree = 0;
    HeightEnclosure height;
    bool block_nonzero = false;
    double partial_poly_height = 0;  // affine height of the truncation polynomial
};

struct DegreeProfile {
    std::vector<DegreeProfileRow> rows;
    // smallest degree attained by the last ceil(N/2) rows with at least two
    // distinct partial-sum values; a prefix heuristic, hence the caveat flag
    std::optional<int> stabilized_m;
    bool heuristic_caveat = true;
    bool mahler_condition_prefix = false;  // some block value nonzero in the prefix
    nlohmann::json to_json() const;
};

DegreeProfile degree_profile(const SeriesSpec& spec, const NFElement& alpha, int prefix);

// Self-contained re-checkable record; the embedded series and algebraic-point
// presentations are all a verifier needs.
struct Certificate {
    nlohmann::json doc;
    std::string kind() const { return doc.at("kind").get<std::string>(); }
    std::string canonical_text() const;
};

// Least block index n with deg F_n(alpha) = m whose certified tail bound
// drops below e^{-w * (height upper bound)}; CapError when the index cap is
// exhausted (not a refutation).
Certificate um_witness(const SeriesSpec& spec, const NFElement& alpha, double w, int m);

// Exhaustive scan over algebraic numbers with primitive minimal polynomials of
// degree <= max_degree and coefficients bounded by coeff_bound, excluding the
// partial sums; reports min log|f(alpha) - beta| + eta_hat * height(beta) and
// the attaining beta.
Certificate lower_degree_scan(const SeriesSpec& spec, const NFElement& alpha, int max_degree,
                              const BigInt& coeff_bound, double eta_hat);

// Northcott-box sweep for bounded-type series: all algebraic numbers of degree
// <= max_degree with height <= log(2A), reporting which have every block value
// vanish on the prefix.
Certificate exception_scan(const SeriesSpec& spec, int max_degree, int prefix);

// Whether Q(alpha) has no intermediate field: prime degrees are immediate,
// degree 4 goes through the Galois label.
bool simplicity_check(const NumberField& field);

struct VerifyOutcome {
    bool pass = false;
    std::string detail;
};

// Independent re-check of a certificate from its own contents.
VerifyOutcome verify_certificate(const nlohmann::json& doc);

// Shared presentation of an algebraic point: its minimal polynomial plus the
// embedding box selecting the branch.
nlohmann::json algebraic_point_json(const NFElement& alpha);
NFElement algebraic_point_from_json(const nlohmann::json& j);

}  // namespace serieslab
