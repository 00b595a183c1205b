#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "serieslab/json_io.hpp"
#include "serieslab/number_field.hpp"

namespace serieslab {

// Power series with integer coefficients and block-zero structure: nonzero
// coefficients live in the windows [t_{n-1}, s_n] and the gap exponents
// (s_n, t_n) are zero. Deterministic total oracles; serializable so that
// certificates can embed the exact series they were computed from.
class SeriesSpec {
public:
    enum class Kind { Factorial, Diagonal, Blocks, Adversarial };

    // sum_{j >= first_index} z^{j!}
    static SeriesSpec factorial(int first_index = 1);
    // sum b_n z^{e_n} with strictly increasing exponents
    static SeriesSpec diagonal(std::vector<BigInt> exponents, std::vector<BigInt> coefficients);
    // fully explicit block windows and sparse coefficients
    static SeriesSpec blocks(std::vector<BigInt> t, std::vector<BigInt> s,
                             std::map<BigInt, BigInt> coeffs);
    // the algebraic-valued construction: blocks z^{t_{n-1}} Q_n(z) with
    // Q_n = U_1 ... U_n and minimal admissible exponents
    static SeriesSpec adversarial(const std::vector<IntPolynomial>& u, int length);

    Kind kind() const { return kind_; }
    std::string kind_name() const;

    // coefficient oracle, total on any index
    BigInt coeff(const BigInt& k) const;
    // block delimiters: t(n) for n >= 0, s(n) for n >= 1
    BigInt t(int n) const;
    BigInt s(int n) const;
    // largest n for which s(n) (and t(n-1)) are available
    int max_block() const;

    const std::optional<BigInt>& bounded_A() const { return bounded_A_; }
    const BigRational& radius_floor() const { return radius_floor_; }
    const std::optional<double>& restart_ratio_bound() const { return restart_bound_; }
    // analytic contour data for tail bounds of non-bounded series: a certified
    // bound |f| <= contour_max on |z| = contour_radius
    const std::optional<BigRational>& contour_radius() const { return contour_radius_; }
    const std::optional<BigRational>& contour_max() const { return contour_max_; }

    SeriesSpec& declare_bounded(BigInt a);
    SeriesSpec& declare_restart_bound(double bound);
    SeriesSpec& declare_contour(BigRational radius, BigRational max_value);

    nlohmann::json to_json() const;
    static SeriesSpec from_json(const nlohmann::json& j);

private:
    SeriesSpec() = default;
    Kind kind_ = Kind::Factorial;
    // factorial
    int first_index_ = 1;
    // diagonal
    std::vector<BigInt> exponents_, coefficients_;
    // blocks
    std::vector<BigInt> t_, s_;
    std::map<BigInt, BigInt> sparse_;
    // adversarial
    std::vector<IntPolynomial> u_;
    std::vector<IntPolynomial> q_;  // running products
    int length_ = 0;

    std::optional<BigInt> bounded_A_;
    BigRational radius_floor_ = BigRational(1);
    std::optional<double> restart_bound_;
    std::optional<BigRational> contour_radius_, contour_max_;

    BigInt factorial_of(int j) const;
};

struct StructureReport {
    int prefix = 0;
    std::vector<double> gap_growth;      // t_n / s_n, n = 1..N
    double max_restart_ratio = 0;        // max s_{n+1}/t_n over the prefix
    std::optional<double> declared_restart_bound;
    bool restart_within_declared = true;
    std::vector<std::string> warnings;   // asymptotic trends only
    BigInt zero_scan_limit;              // indices actually swept for gap zeros
};

// Hard-checks the monotone window chain and the gap-zero condition on the
// prefix; throws DomainError citing the violating index. Trend observations
// about the asymptotic conditions are reported as warnings, never errors.
StructureReport validate_structure(const SeriesSpec& spec, int prefix);

// Exact partial sum F_n(alpha) = sum_{k <= s_n} a_k alpha^k in Q(alpha).
NFElement partial_sum(const SeriesSpec& spec, const NFElement& alpha, int n);
// Exact value of the n-th block P_n(alpha) = F_n - F_{n-1}.
NFElement block_value(const SeriesSpec& spec, const NFElement& alpha, int n);

struct TailBound {
    int n = 0;
    Real theta;  // decay rate
    Real c;      // prefactor
    Real bound;  // certified upper bound on |f(alpha) - F_n(alpha)|
};

// Certified tail bound after block n. Bounded type uses the coefficient bound
// A directly: A |alpha|^{t_n} / (1 - |alpha|); otherwise caller-declared
// contour data (|a_k| <= M r^{-k}) is required.
TailBound tail_bound(const SeriesSpec& spec, const ComplexBall& alpha_value, int n);

// Ball containing f(alpha) with radius <= target: partial-sum evaluation
// inflated by the first tail bound small enough.
ComplexBall value_enclosure(const SeriesSpec& spec, const NFElement& alpha, const Real& target);

}  // namespace serieslab
