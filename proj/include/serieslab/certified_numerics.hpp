#pragma once

#include <mpfr.h>

#include <string>
#include <vector>

#include "serieslab/exact_algebra.hpp"

namespace serieslab {

// Arbitrary-precision real number (RAII wrapper over mpfr_t). Value-semantic;
// the wrapper itself does no rounding bookkeeping, callers pass explicit
// rounding modes through raw().
class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(x_, prec); mpfr_set_nan(x_); }
    Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        mpfr_init2(x_, 64);
        mpfr_swap(x_, o.x_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(x_, mpfr_get_prec(o.x_));
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(x_, o.x_);
        return *this;
    }
    ~Real() { mpfr_clear(x_); }

    static Real from_long(long v, mpfr_prec_t prec);
    static Real from_bigint(const BigInt& v, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static Real from_rational(const BigRational& v, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static Real zero(mpfr_prec_t prec);
    static Real pow2(long e, mpfr_prec_t prec = 64);  // exact 2^e

    mpfr_ptr raw() { return x_; }
    mpfr_srcptr raw() const { return x_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }

    bool is_nan() const { return mpfr_nan_p(x_) != 0; }
    bool is_zero() const { return mpfr_zero_p(x_) != 0; }
    int sign() const { return mpfr_sgn(x_); }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    // exact rational value (finite input)
    BigRational to_rational() const;

    // Exact serialization as a hexadecimal significand/exponent literal.
    std::string to_hex() const;
    static Real from_hex(const std::string& s, mpfr_prec_t prec);
    // Shortest decimal rendering for reports (not exact).
    std::string to_decimal(std::size_t digits = 20) const;

    int cmp(const Real& o) const { return mpfr_cmp(x_, o.x_); }
    bool operator<(const Real& o) const { return cmp(o) < 0; }
    bool operator<=(const Real& o) const { return cmp(o) <= 0; }
    bool operator>(const Real& o) const { return cmp(o) > 0; }
    bool operator>=(const Real& o) const { return cmp(o) >= 0; }
    bool operator==(const Real& o) const { return cmp(o) == 0; }

private:
    mpfr_t x_;
};

// Closed interval [lo, hi] with directed endpoints.
struct RealInterval {
    Real lo, hi;
    double width() const;
    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
};

// Complex midpoint-radius enclosure. Midpoint components carry the working
// precision; the radius is a 64-bit upper bound maintained with outward
// rounding. Every operation yields a ball containing the exact image of any
// points contained in the inputs.
class ComplexBall {
public:
    explicit ComplexBall(mpfr_prec_t prec = 64);

    static ComplexBall from_rational(const BigRational& re, const BigRational& im,
                                     mpfr_prec_t prec);
    static ComplexBall exact_zero(mpfr_prec_t prec);
    // midpoint from exact dyadic components, radius zero
    static ComplexBall from_midpoint(const Real& re, const Real& im);

    const Real& mid_re() const { return re_; }
    const Real& mid_im() const { return im_; }
    const Real& radius() const { return rad_; }
    mpfr_prec_t prec() const { return re_.prec(); }

    ComplexBall add(const ComplexBall& o) const;
    ComplexBall sub(const ComplexBall& o) const;
    ComplexBall mul(const ComplexBall& o) const;
    ComplexBall neg() const;
    ComplexBall conj() const;
    ComplexBall inflate(const Real& extra) const;

    // certified bounds on |z| over the ball; lo floored at zero
    RealInterval abs_bounds() const;

    // exact membership test for a rational point (decided in exact arithmetic)
    bool contains(const BigRational& re, const BigRational& im) const;
    bool certainly_disjoint(const ComplexBall& o) const;
    bool intersects_interior_possible(const ComplexBall& o) const { return !certainly_disjoint(o); }

    // conservative test: every point of the ball is strictly off the real axis
    bool certainly_nonreal() const;

    std::string to_string() const;

private:
    Real re_, im_;  // midpoint
    Real rad_;      // 64-bit, outward-rounded
    friend ComplexBall ball_with(Real re, Real im, Real rad);
};

ComplexBall ball_with(Real re, Real im, Real rad);

// Enclosure of max(log|z|, 0) over the ball. DomainError when the ball
// contains zero while its magnitude upper bound exceeds 1 (the verdict would
// not shrink under refinement).
RealInterval log_plus(const ComplexBall& z);

struct RootBall {
    ComplexBall ball;
    int multiplicity = 1;
};

// Certified isolation of all complex roots of a nonzero integer polynomial.
// Returns deg(P) roots counted with multiplicity, pairwise disjoint balls for
// distinct roots, each certified to contain exactly one root, in a canonical
// deterministic order (real parts ascending, imaginary parts breaking ties).
// CapError if certification is impossible within the precision cap.
std::vector<RootBall> isolate_roots(const IntPolynomial& p, mpfr_prec_t precision);

class NFElement;  // number_field.hpp

// Ball containing the exact complex value of a number-field element under the
// field's chosen embedding, with radius <= 2^-precision.
ComplexBall eval_element(const NFElement& beta, mpfr_prec_t precision);

}  // namespace serieslab
