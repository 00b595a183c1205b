#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "serieslab/errors.hpp"

namespace serieslab {

// GMP provides the integer/rational substrate. mpq_class canonicalizes to
// gcd(|num|, den) = 1 with den >= 1, which is exactly the invariant we need.
using BigInt = mpz_class;
using BigRational = mpq_class;

BigInt big_gcd(const BigInt& a, const BigInt& b);
BigInt big_pow(const BigInt& base, unsigned long e);
BigRational rat_pow(const BigRational& base, const BigInt& e);
// Exact test a = b^p for rational b; p >= 1 (odd p handles negative a).
bool is_perfect_power(const BigInt& a, unsigned long p);

// Dense univariate polynomial over Z, coefficients lowest-degree first.
// The zero polynomial has an empty coefficient vector.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs);
    static IntPolynomial constant(const BigInt& c);
    static IntPolynomial monomial(const BigInt& c, std::size_t degree);
    // x^degree - ... convenience for tests/CLI: T^m + c0 etc. built elsewhere.

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return is_zero() ? -1 : static_cast<int>(coeffs_.size()) - 1; }
    const BigInt& leading() const;
    const BigInt& coeff(std::size_t k) const;  // 0 beyond degree
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    bool is_monic() const { return !is_zero() && leading() == 1; }

    // max |a_i|; named after the classical polynomial height.
    BigInt max_abs_coeff() const;

    IntPolynomial operator-() const;
    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    IntPolynomial operator*(const BigInt& c) const;
    bool operator==(const IntPolynomial& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const IntPolynomial& o) const { return !(*this == o); }

    BigInt eval(const BigInt& x) const;
    BigRational eval(const BigRational& x) const;
    IntPolynomial derivative() const;
    // P(T + c)
    IntPolynomial shift(const BigInt& c) const;
    // P(c*T)
    IntPolynomial scale_arg(const BigInt& c) const;
    IntPolynomial pow(unsigned long e) const;

    // Exact division; DomainError if the remainder is nonzero.
    IntPolynomial divide_exact(const IntPolynomial& divisor) const;

    std::string to_string(const std::string& var = "T") const;

private:
    std::vector<BigInt> coeffs_;
    void trim();
};

// True iff d | p exactly (zero remainder over Q, equivalently over Z up to content).
bool divides(const IntPolynomial& d, const IntPolynomial& p);

// Polynomial over Q; internal substrate for number-field arithmetic.
class RatPolynomial {
public:
    RatPolynomial() = default;
    explicit RatPolynomial(std::vector<BigRational> coeffs);
    static RatPolynomial from_int(const IntPolynomial& p);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return is_zero() ? -1 : static_cast<int>(coeffs_.size()) - 1; }
    const BigRational& leading() const;
    const BigRational& coeff(std::size_t k) const;
    const std::vector<BigRational>& coeffs() const { return coeffs_; }

    RatPolynomial operator+(const RatPolynomial& o) const;
    RatPolynomial operator-(const RatPolynomial& o) const;
    RatPolynomial operator*(const RatPolynomial& o) const;
    RatPolynomial operator*(const BigRational& c) const;
    bool operator==(const RatPolynomial& o) const { return coeffs_ == o.coeffs_; }

    BigRational eval(const BigRational& x) const;
    RatPolynomial monic() const;

    // Quotient and remainder; divisor must be nonzero.
    std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& divisor) const;

    // Clears denominators to a primitive integer polynomial with positive
    // leading coefficient.
    IntPolynomial primitive_integer() const;

private:
    std::vector<BigRational> coeffs_;
    void trim();
};

// gcd over Q[T], monic; xgcd returns (g, u, v) with u*a + v*b = g.
RatPolynomial rat_gcd(const RatPolynomial& a, const RatPolynomial& b);
std::tuple<RatPolynomial, RatPolynomial, RatPolynomial> rat_xgcd(const RatPolynomial& a,
                                                                 const RatPolynomial& b);

// content/primitive decomposition: content > 0, primitive has content 1 and
// positive leading coefficient, content * primitive = +-P.
std::pair<BigInt, IntPolynomial> content_primitive(const IntPolynomial& p);

// gcd over Z[T] via primitive PRS; result primitive with positive leading coeff.
IntPolynomial int_poly_gcd(const IntPolynomial& a, const IntPolynomial& b);

// Square-free decomposition of a primitive polynomial (Yun): returns pairs
// (factor, multiplicity) with factor primitive square-free, product = input
// up to sign.
std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& p);

// Resultant of two integer polynomials (subresultant PRS, exact).
BigInt resultant(const IntPolynomial& a, const IntPolynomial& b);
// disc(P) = (-1)^{n(n-1)/2} Res(P, P') / lc(P)
BigInt discriminant(const IntPolynomial& p);

struct PolyFactor {
    IntPolynomial factor;  // Z-irreducible, primitive, positive leading coeff
    int multiplicity = 1;
};

struct Factorization {
    BigInt content;  // positive
    int sign = 1;    // sign * content * prod(factor^multiplicity) == input
    std::vector<PolyFactor> factors;
};

// Zassenhaus factorization: square-free decomposition, Berlekamp modulo small
// primes with a degree-set sieve, Hensel lifting, subset recombination.
// DomainError on zero input; CapError above the configured degree cap.
Factorization factor_over_Z(const IntPolynomial& p);

bool is_irreducible(const IntPolynomial& p);

// For monic y = lc*x: M_y(T) = monic integer image of lc^{n-1} * P(T/lc).
// Used to reduce non-monic questions to monic ones.
IntPolynomial monicize(const IntPolynomial& p);

// Exact cyclotomic test: true (with the order n) iff P = Phi_n. Requires a
// monic input; intended for primitive irreducible polynomials.
std::optional<unsigned long> cyclotomic_order(const IntPolynomial& p);

}  // namespace serieslab
