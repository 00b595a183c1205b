#include "serieslab/number_field.hpp"

#include <algorithm>

namespace serieslab {

namespace {

// Unique certified root of `defining` whose isolating ball meets `box`,
// refined to radius <= 2^-prec. The box must isolate exactly one root.
ComplexBall locate_root(const IntPolynomial& defining, const ComplexBall& box, mpfr_prec_t prec) {
    const long cap = Limits::current().precision_cap_bits;
    for (mpfr_prec_t wp = std::max<mpfr_prec_t>(prec, 64); wp <= cap; wp *= 2) {
        std::vector<RootBall> roots = isolate_roots(defining, wp);
        const ComplexBall* hit = nullptr;
        bool ambiguous = false;
        for (const RootBall& r : roots) {
            if (!r.ball.certainly_disjoint(box)) {
                if (hit) ambiguous = true;
                hit = &r.ball;
            }
        }
        if (!hit)
            throw DomainError("embedding box does not contain a root of the defining polynomial");
        if (!ambiguous) return *hit;
    }
    throw CapError("embedding box could not be matched to a unique root at cap");
}

}  // namespace

NumberField::NumberField(IntPolynomial defining, ComplexBall box)
    : defining_(std::move(defining)),
      monic_(RatPolynomial::from_int(defining_).monic()),
      degree_(defining_.degree()),
      box_(std::move(box)) {}

NumberField::Ptr NumberField::create(IntPolynomial defining, std::size_t root_index) {
    IntPolynomial prim = content_primitive(defining).second;
    if (prim.degree() < 1) throw DomainError("defining polynomial must be nonconstant");
    if (!is_irreducible(prim)) throw DomainError("defining polynomial is not Z-irreducible");
    std::vector<RootBall> roots = isolate_roots(prim, 64);
    if (root_index >= roots.size()) throw DomainError("root index out of range");
    return Ptr(new NumberField(std::move(prim), roots[root_index].ball));
}

NumberField::Ptr NumberField::create_with_box(IntPolynomial defining, const ComplexBall& box) {
    IntPolynomial prim = content_primitive(defining).second;
    if (prim.degree() < 1) throw DomainError("defining polynomial must be nonconstant");
    if (!is_irreducible(prim)) throw DomainError("defining polynomial is not Z-irreducible");
    ComplexBall refined = locate_root(prim, box, 64);
    return Ptr(new NumberField(std::move(prim), refined));
}

NumberField::Ptr NumberField::rationals() {
    // Q presented by T, alpha = 0
    IntPolynomial t(std::vector<BigInt>{BigInt(0), BigInt(1)});
    return Ptr(new NumberField(std::move(t), ComplexBall::exact_zero(64)));
}

ComplexBall NumberField::embedding_at(mpfr_prec_t prec) const {
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = embedding_cache_.find(prec);
        if (it != embedding_cache_.end()) return it->second;
    }
    ComplexBall result = locate_root(defining_, box_, prec);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    embedding_cache_.emplace(prec, result);
    return result;
}

bool NumberField::generator_is_real() const {
    const long cap = Limits::current().precision_cap_bits;
    for (mpfr_prec_t wp = 64; wp <= cap; wp *= 2) {
        std::vector<RootBall> roots = isolate_roots(defining_, wp);
        const ComplexBall* mine = nullptr;
        bool ambiguous = false;
        for (const RootBall& r : roots) {
            if (!r.ball.certainly_disjoint(box_)) {
                if (mine) ambiguous = true;
                mine = &r.ball;
            }
        }
        if (!mine || ambiguous) continue;
        if (mine->certainly_nonreal()) return false;
        // the conjugate of the chosen root is also a root; if its enclosure can
        // only meet this ball, the root equals its own conjugate
        ComplexBall cb = mine->conj();
        if (cb.certainly_disjoint(*mine)) return false;
        bool meets_other = false;
        for (const RootBall& r : roots) {
            if (&r.ball == mine) continue;
            if (!cb.certainly_disjoint(r.ball)) meets_other = true;
        }
        if (!meets_other) return true;
    }
    throw CapError("could not decide realness of the embedding at cap");
}

NFElement NumberField::element(std::vector<BigRational> coords) const {
    if (static_cast<int>(coords.size()) > degree_)
        throw DomainError("coordinate vector longer than the field degree");
    coords.resize(static_cast<std::size_t>(degree_), BigRational(0));
    for (auto& c : coords) c.canonicalize();
    return NFElement(shared_from_this(), std::move(coords));
}

NFElement NumberField::from_rational(const BigRational& value) const {
    std::vector<BigRational> coords(static_cast<std::size_t>(degree_), BigRational(0));
    coords[0] = value;
    coords[0].canonicalize();
    return NFElement(shared_from_this(), std::move(coords));
}

NFElement NumberField::generator() const {
    std::vector<BigRational> coords(static_cast<std::size_t>(degree_), BigRational(0));
    if (degree_ >= 2)
        coords[1] = 1;
    else
        coords[0] = monic_.coeff(0) * BigRational(-1);  // the rational root itself
    return NFElement(shared_from_this(), std::move(coords));
}

NFElement NumberField::zero() const { return from_rational(BigRational(0)); }
NFElement NumberField::one() const { return from_rational(BigRational(1)); }

// ---------------------------------------------------------------------------
// NFElement

NFElement::NFElement(NumberField::Ptr field, std::vector<BigRational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (static_cast<int>(coords_.size()) != field_->degree())
        throw DomainError("coordinate vector length must equal the field degree");
}

void NFElement::check_same_field(const NFElement& o) const {
    if (field_ != o.field_) throw DomainError("field mismatch");
}

bool NFElement::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

bool NFElement::is_rational() const {
    for (std::size_t k = 1; k < coords_.size(); ++k)
        if (coords_[k] != 0) return false;
    return true;
}

BigRational NFElement::rational_value() const {
    if (!is_rational()) throw DomainError("element is not rational");
    return coords_.empty() ? BigRational(0) : coords_[0];
}

NFElement NFElement::operator+(const NFElement& o) const {
    check_same_field(o);
    std::vector<BigRational> v(coords_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.coords_[i];
    return NFElement(field_, std::move(v));
}

NFElement NFElement::operator-(const NFElement& o) const {
    check_same_field(o);
    std::vector<BigRational> v(coords_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.coords_[i];
    return NFElement(field_, std::move(v));
}

NFElement NFElement::operator-() const {
    std::vector<BigRational> v(coords_);
    for (auto& c : v) c = -c;
    return NFElement(field_, std::move(v));
}

NFElement NFElement::operator*(const NFElement& o) const {
    check_same_field(o);
    RatPolynomial prod = RatPolynomial(coords_) * RatPolynomial(o.coords_);
    RatPolynomial reduced = prod.divmod(field_->monic_defining()).second;
    std::vector<BigRational> v(reduced.coeffs());
    v.resize(coords_.size(), BigRational(0));
    return NFElement(field_, std::move(v));
}

NFElement NFElement::inverse() const {
    if (is_zero()) throw DomainError("division by zero");
    auto [g, u, v] = rat_xgcd(RatPolynomial(coords_), field_->monic_defining());
    (void)v;
    if (g.degree() != 0) throw std::logic_error("inverse: defining polynomial not irreducible");
    RatPolynomial inv = (u * (1 / g.coeff(0))).divmod(field_->monic_defining()).second;
    std::vector<BigRational> w(inv.coeffs());
    w.resize(coords_.size(), BigRational(0));
    return NFElement(field_, std::move(w));
}

NFElement NFElement::operator/(const NFElement& o) const {
    check_same_field(o);
    return *this * o.inverse();
}

bool NFElement::operator==(const NFElement& o) const {
    return field_ == o.field_ && coords_ == o.coords_;
}

NFElement NFElement::pow(const BigInt& e) const {
    if (e < 0) return inverse().pow(-e);
    NFElement acc = field_->one();
    NFElement base = *this;
    BigInt k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = acc * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// minimal polynomial by exact linear algebra over the power basis

IntPolynomial minimal_polynomial(const NFElement& beta) {
    const int m = beta.field().degree();
    // reduced rows: span of {beta^0, ..., beta^{k-1}} in echelon form, each row
    // carrying its expression over the original powers of beta
    struct Row {
        std::vector<BigRational> vec;    // length m
        std::vector<BigRational> combo;  // coefficients over beta^j
        std::size_t pivot;
    };
    std::vector<Row> rows;
    NFElement power = beta.field().one();
    for (int k = 0; k <= m; ++k) {
        std::vector<BigRational> v(power.coords());
        std::vector<BigRational> combo(static_cast<std::size_t>(k) + 1, BigRational(0));
        combo.back() = 1;
        for (const Row& row : rows) {
            BigRational c = v[row.pivot];
            if (c == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * row.vec[j];
            for (std::size_t j = 0; j < row.combo.size(); ++j) combo[j] -= c * row.combo[j];
        }
        bool zero = true;
        std::size_t pivot = 0;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) {
                zero = false;
                pivot = j;
                break;
            }
        if (zero) return RatPolynomial(std::move(combo)).primitive_integer();
        BigRational inv = 1 / v[pivot];
        for (auto& x : v) x *= inv;
        for (auto& x : combo) x *= inv;
        rows.push_back({std::move(v), std::move(combo), pivot});
        if (k < m) power = power * beta;
    }
    throw std::logic_error("no linear dependence found below the field degree");
}

int element_degree(const NFElement& beta) { return minimal_polynomial(beta).degree(); }

}  // namespace serieslab
