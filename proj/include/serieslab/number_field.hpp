#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "serieslab/certified_numerics.hpp"
#include "serieslab/exact_algebra.hpp"

namespace serieslab {

class NFElement;

// Q(alpha) presented by a Z-irreducible polynomial with a chosen embedding.
// Elements are coordinate vectors in the power basis 1, alpha, ..., alpha^{m-1}
// over the monic rational version of the defining polynomial. Immutable and
// shareable; construct through the factory functions.
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    using Ptr = std::shared_ptr<const NumberField>;

    // Canonical embedding: the certified root with smallest real part, ties
    // broken toward the smaller imaginary part; root_index selects the k-th
    // root in that order. Verifies Z-irreducibility.
    static Ptr create(IntPolynomial defining, std::size_t root_index = 0);
    // Caller-supplied embedding box; must isolate exactly one root.
    static Ptr create_with_box(IntPolynomial defining, const ComplexBall& box);
    // The rational field Q presented by the polynomial T.
    static Ptr rationals();

    int degree() const { return degree_; }
    const IntPolynomial& defining_poly() const { return defining_; }
    const RatPolynomial& monic_defining() const { return monic_; }
    const ComplexBall& embedding_box() const { return box_; }

    // Refined embedding: ball around the chosen root with radius <= 2^-prec.
    ComplexBall embedding_at(mpfr_prec_t prec) const;
    // Certified: the chosen root is real / is not real.
    bool generator_is_real() const;

    NFElement element(std::vector<BigRational> coords) const;
    NFElement from_rational(const BigRational& value) const;
    NFElement generator() const;
    NFElement zero() const;
    NFElement one() const;

private:
    NumberField(IntPolynomial defining, ComplexBall box);

    IntPolynomial defining_;
    RatPolynomial monic_;
    int degree_;
    ComplexBall box_;
    mutable std::mutex cache_mutex_;
    mutable std::map<mpfr_prec_t, ComplexBall> embedding_cache_;
};

// Element of a number field: exact coordinate vector in the power basis.
class NFElement {
public:
    NFElement(NumberField::Ptr field, std::vector<BigRational> coords);

    const NumberField& field() const { return *field_; }
    const NumberField::Ptr& field_ptr() const { return field_; }
    const std::vector<BigRational>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_rational() const;
    BigRational rational_value() const;  // DomainError if not rational

    NFElement operator+(const NFElement& o) const;
    NFElement operator-(const NFElement& o) const;
    NFElement operator*(const NFElement& o) const;
    NFElement operator/(const NFElement& o) const;
    NFElement operator-() const;
    bool operator==(const NFElement& o) const;
    bool operator!=(const NFElement& o) const { return !(*this == o); }

    NFElement inverse() const;
    NFElement pow(const BigInt& e) const;

private:
    NumberField::Ptr field_;
    std::vector<BigRational> coords_;
    void check_same_field(const NFElement& o) const;
};

// Z-irreducible primitive minimal polynomial with positive leading
// coefficient, found by exact linear algebra over the power basis.
IntPolynomial minimal_polynomial(const NFElement& beta);

// deg(minimal_polynomial(beta)); divides the field degree.
int element_degree(const NFElement& beta);

}  // namespace serieslab
