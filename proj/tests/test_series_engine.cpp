#include <doctest.h>

#include "serieslab/series_engine.hpp"

using namespace serieslab;

namespace {

IntPolynomial poly(std::vector<long> cs) {
    std::vector<BigInt> v;
    for (long c : cs) v.emplace_back(c);
    return IntPolynomial(std::move(v));
}

BigRational q(long n, long d = 1) {
    BigRational r(n, d);
    r.canonicalize();
    return r;
}

NFElement rational_alpha(long n, long d) {
    return NumberField::rationals()->from_rational(q(n, d));
}

NFElement inv_sqrt2() {
    auto K = NumberField::create(poly({-2, 0, 1}), 1);
    return K->generator().inverse();
}

// direct tail summation oracle at 512 bits: sum_{k >= n+1} |alpha|^{k!}
double true_tail_log2(double alpha_log2, int n) {
    Real acc(512), term(512);
    mpfr_set_zero(acc.raw(), 1);
    for (int k = n + 1; k <= n + 6; ++k) {
        BigInt f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
        mpfr_set_d(term.raw(), alpha_log2, MPFR_RNDN);
        mpfr_mul_z(term.raw(), term.raw(), f.get_mpz_t(), MPFR_RNDN);
        mpfr_exp2(term.raw(), term.raw(), MPFR_RNDN);
        mpfr_add(acc.raw(), acc.raw(), term.raw(), MPFR_RNDN);
    }
    Real l(64);
    mpfr_log2(l.raw(), acc.raw(), MPFR_RNDN);
    return l.to_double();
}

}  // namespace

TEST_CASE("factorial spec structure validates: restart ratio 1") {
    SeriesSpec spec = SeriesSpec::factorial();
    StructureReport rep = validate_structure(spec, 6);
    CHECK(rep.max_restart_ratio == doctest::Approx(1.0));
    CHECK(rep.restart_within_declared);
    CHECK(rep.gap_growth.size() == 6);
    CHECK(rep.gap_growth[4] == doctest::Approx(6.0));  // t_5/s_5 = 6!/5! ... t_n/s_n = n+1
}

TEST_CASE("gap-zero violation is an error citing the index") {
    // t = [1, 4, 9], s = [2, 6]; nonzero coefficient at 8 sits strictly
    // between s_2 = 6 and t_2 = 9
    std::map<BigInt, BigInt> coeffs;
    coeffs[BigInt(1)] = 1;
    coeffs[BigInt(5)] = 2;
    coeffs[BigInt(8)] = 7;
    SeriesSpec bad = SeriesSpec::blocks({BigInt(1), BigInt(4), BigInt(9)},
                                        {BigInt(2), BigInt(6)}, coeffs);
    CHECK_THROWS_WITH_AS(validate_structure(bad, 2), doctest::Contains("k = 8"), DomainError);
}

TEST_CASE("window-chain violation is an error") {
    // s_1 >= t_1
    SeriesSpec bad = SeriesSpec::blocks({BigInt(1), BigInt(3), BigInt(7)},
                                        {BigInt(3), BigInt(5)}, {});
    CHECK_THROWS_WITH_AS(validate_structure(bad, 2), doctest::Contains("window chain"),
                         DomainError);
    CHECK_THROWS_AS(validate_structure(SeriesSpec::factorial(), 1), DomainError);
}

TEST_CASE("diagonal spec with doubly exponential exponents") {
    // s_n = 2^{n^2}
    std::vector<BigInt> es, cs;
    for (int n = 1; n <= 7; ++n) {
        BigInt e = BigInt(1) << static_cast<unsigned>(n * n);
        es.push_back(e);
        cs.push_back(1);
    }
    SeriesSpec spec = SeriesSpec::diagonal(es, cs).declare_bounded(BigInt(1));
    StructureReport rep = validate_structure(spec, 6);
    // t_n/s_n = 2^{2n+1}: strictly increasing trend
    for (std::size_t i = 1; i < rep.gap_growth.size(); ++i)
        CHECK(rep.gap_growth[i] > rep.gap_growth[i - 1]);
}

TEST_CASE("partial sums: worked examples") {
    SeriesSpec spec = SeriesSpec::factorial();
    // F_2(1/2) = 1/2 + 1/4 = 3/4
    NFElement f2 = partial_sum(spec, rational_alpha(1, 2), 2);
    CHECK(f2.rational_value() == q(3, 4));
    // F_3(1/2) = 3/4 + 2^{-6} = 49/64
    NFElement f3 = partial_sum(spec, rational_alpha(1, 2), 3);
    CHECK(f3.rational_value() == q(49, 64));
    // F_2(2^{-1/2}) = 2^{-1/2} + 1/2
    NFElement alpha = inv_sqrt2();
    NFElement g2 = partial_sum(spec, alpha, 2);
    CHECK(g2.coords()[0] == q(1, 2));
    CHECK(g2.coords()[1] == q(1, 2));  // 2^{-1/2} = (1/2) sqrt2
    // single-monomial block
    SeriesSpec mono = SeriesSpec::diagonal({BigInt(3), BigInt(9)}, {BigInt(5), BigInt(1)});
    NFElement m1 = partial_sum(mono, rational_alpha(1, 2), 1);
    CHECK(m1.rational_value() == q(5, 8));
}

TEST_CASE("block telescoping: F_{n+1} - F_n = P_{n+1}") {
    std::vector<SeriesSpec> specs = {
        SeriesSpec::factorial(),
        SeriesSpec::factorial(2),
        SeriesSpec::adversarial({poly({-1, 1}), poly({1, 1}), poly({1, 0, 1})}, 3),
    };
    NFElement alpha = inv_sqrt2();
    for (const SeriesSpec& spec : specs) {
        for (int n = 1; n + 1 <= std::min(4, spec.max_block()); ++n) {
            NFElement lhs = partial_sum(spec, alpha, n + 1) - partial_sum(spec, alpha, n);
            CHECK(lhs == block_value(spec, alpha, n + 1));
        }
    }
}

TEST_CASE("tail bounds: frozen values and the direct-summation oracle") {
    SeriesSpec spec = SeriesSpec::factorial();
    ComplexBall half = eval_element(rational_alpha(1, 2), 96);
    TailBound t2 = tail_bound(spec, half, 2);
    // A |1/2|^{t_2} / (1 - 1/2) = 2^{-6}/(1/2) = 2^{-5}, exactly representable
    CHECK(t2.bound.to_rational() == q(1, 32));
    TailBound t3 = tail_bound(spec, half, 3);
    BigRational t3_expect(BigInt(1), BigInt(BigInt(1) << 23));
    CHECK(t3.bound.to_rational() == t3_expect);

    // oracle comparison: certified bound dominates the direct 512-bit sum and
    // stays within the expected slack at these parameters
    for (int n = 1; n <= 5; ++n) {
        TailBound tb = tail_bound(spec, half, n);
        double true_log2 = true_tail_log2(-1.0, n);
        Real blog(64);
        mpfr_log2(blog.raw(), tb.bound.raw(), MPFR_RNDN);
        CHECK(blog.to_double() >= true_log2);
        CHECK(blog.to_double() <= true_log2 + 2.0);  // ratio <= 4
    }
    ComplexBall isq = eval_element(inv_sqrt2(), 96);
    for (int n = 1; n <= 5; ++n) {
        TailBound tb = tail_bound(spec, isq, n);
        double true_log2 = true_tail_log2(-0.5, n);
        Real blog(64);
        mpfr_log2(blog.raw(), tb.bound.raw(), MPFR_RNDN);
        CHECK(blog.to_double() >= true_log2);
        CHECK(blog.to_double() <= true_log2 + 2.0);
    }
}

TEST_CASE("tail bound rejects |alpha| >= radius floor") {
    SeriesSpec spec = SeriesSpec::factorial();
    ComplexBall one = eval_element(rational_alpha(1, 1), 96);
    CHECK_THROWS_AS(tail_bound(spec, one, 2), DomainError);
}

TEST_CASE("tail bound via declared contour data") {
    // same factorial series but treated through the general route
    SeriesSpec spec = SeriesSpec::factorial();
    SeriesSpec general = SeriesSpec::from_json(spec.to_json());
    // strip the bounded marker by rebuilding a blocks copy carrying contour data
    std::map<BigInt, BigInt> coeffs;
    std::vector<BigInt> t{BigInt(1)}, s;
    for (int n = 1; n <= 4; ++n) {
        t.push_back(spec.t(n));
        s.push_back(spec.s(n));
        coeffs[spec.s(n)] = 1;
    }
    SeriesSpec blocks = SeriesSpec::blocks(t, s, coeffs);
    // |f| <= 4 on |z| = 3/4 comfortably dominates the factorial series there
    blocks.declare_contour(q(3, 4), q(4));
    ComplexBall half = eval_element(rational_alpha(1, 2), 96);
    TailBound tb = tail_bound(blocks, half, 2);
    double true_log2 = true_tail_log2(-1.0, 2);
    Real blog(64);
    mpfr_log2(blog.raw(), tb.bound.raw(), MPFR_RNDN);
    CHECK(blog.to_double() >= true_log2);
    // without contour data and without bounded_A the bound is unavailable
    SeriesSpec bare = SeriesSpec::blocks(t, s, coeffs);
    CHECK_THROWS_AS(tail_bound(bare, half, 2), DomainError);
}

TEST_CASE("value enclosure: oracle containment and nesting") {
    SeriesSpec spec = SeriesSpec::factorial();
    NFElement half = rational_alpha(1, 2);
    ComplexBall v = value_enclosure(spec, half, Real::pow2(-20));
    CHECK(v.radius() <= Real::pow2(-20));
    // 512-bit direct oracle for gamma = sum 2^{-k!}
    Real oracle(512);
    mpfr_set_zero(oracle.raw(), 1);
    for (int k = 1; k <= 8; ++k) {
        BigInt f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
        Real term(512);
        mpfr_set_si(term.raw(), -1, MPFR_RNDN);
        mpfr_mul_z(term.raw(), term.raw(), f.get_mpz_t(), MPFR_RNDN);
        mpfr_exp2(term.raw(), term.raw(), MPFR_RNDN);
        mpfr_add(oracle.raw(), oracle.raw(), term.raw(), MPFR_RNDN);
    }
    Real dist(512);
    mpfr_sub(dist.raw(), v.mid_re().raw(), oracle.raw(), MPFR_RNDN);
    mpfr_abs(dist.raw(), dist.raw(), MPFR_RNDU);
    CHECK(dist <= v.radius());

    ComplexBall fine = value_enclosure(spec, half, Real::pow2(-40));
    // nested-compatible: centers within the sum of radii
    Real gap(512);
    mpfr_sub(gap.raw(), v.mid_re().raw(), fine.mid_re().raw(), MPFR_RNDN);
    mpfr_abs(gap.raw(), gap.raw(), MPFR_RNDU);
    Real rsum(64);
    mpfr_add(rsum.raw(), v.radius().raw(), fine.radius().raw(), MPFR_RNDU);
    CHECK(gap <= rsum);

    // alpha = 0 gives the exact zero ball
    ComplexBall z = value_enclosure(spec, rational_alpha(0, 1), Real::pow2(-20));
    CHECK(z.mid_re().is_zero());
    CHECK(z.radius().is_zero());

    // a target below what the precision cap permits is a resource error
    CHECK_THROWS_AS(value_enclosure(spec, half, Real::pow2(-3000000)), CapError);
}

TEST_CASE("adversarial construction: minimal exponents and structure") {
    SeriesSpec one = SeriesSpec::adversarial({poly({-1, 1})}, 1);
    CHECK(one.t(0) == 1);
    CHECK(one.s(1) == 2);

    SeriesSpec two = SeriesSpec::adversarial({poly({-1, 1}), poly({1, 1})}, 2);
    CHECK(two.t(0) == 1);
    CHECK(two.t(1) == 3);
    CHECK(two.s(2) == 5);
    StructureReport rep = validate_structure(two, 2);
    CHECK(rep.max_restart_ratio < 2.0);

    // larger polynomials: the sup-norm constraint kicks in
    SeriesSpec big = SeriesSpec::adversarial(
        {poly({7, 1}), poly({-9, 1}), poly({1, 0, 1}), poly({3, -2, 1})}, 4);
    StructureReport rep2 = validate_structure(big, 4);
    CHECK(rep2.max_restart_ratio < 2.0);
    for (int n = 1; n <= 4; ++n) CHECK(big.s(n) < 2 * big.t(n - 1));

    // evaluation at a root of U_1 gives vanishing blocks
    NFElement alpha_one = rational_alpha(1, 1);
    for (int n = 1; n <= 2; ++n) CHECK(block_value(two, alpha_one, n).is_zero());

    CHECK_THROWS_AS(SeriesSpec::adversarial({}, 1), DomainError);
}

TEST_CASE("series JSON round-trip is canonical") {
    std::map<BigInt, BigInt> sparse;
    sparse[BigInt(2)] = 3;
    sparse[BigInt(3)] = -1;
    sparse[BigInt(9)] = 5;
    std::vector<SeriesSpec> specs = {
        SeriesSpec::factorial(),
        SeriesSpec::factorial(2),
        SeriesSpec::adversarial({poly({-1, 1}), poly({1, 1})}, 2),
        SeriesSpec::diagonal({BigInt(2), BigInt(16), BigInt(512)}, {BigInt(1), BigInt(-3), BigInt(1)})
            .declare_bounded(BigInt(3)),
        SeriesSpec::blocks({BigInt(2), BigInt(5), BigInt(14)}, {BigInt(3), BigInt(9)}, sparse)
            .declare_bounded(BigInt(5)),
    };
    for (const SeriesSpec& spec : specs) {
        nlohmann::json j = spec.to_json();
        SeriesSpec back = SeriesSpec::from_json(j);
        CHECK(back.to_json().dump() == j.dump());
        // oracle agreement on a few indices
        for (long k : {0L, 1L, 2L, 6L, 24L, 25L}) {
            CHECK(back.coeff(BigInt(k)) == spec.coeff(BigInt(k)));
        }
    }
}
