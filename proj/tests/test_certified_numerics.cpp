#include <doctest.h>

#include <cmath>
#include <random>

#include "serieslab/certified_numerics.hpp"

using namespace serieslab;

namespace {

IntPolynomial poly(std::vector<long> cs) {
    std::vector<BigInt> v;
    for (long c : cs) v.emplace_back(c);
    return IntPolynomial(std::move(v));
}

// bisection oracle: rational interval [a, b] with f(a) f(b) < 0, width <= 2^-70
std::pair<BigRational, BigRational> bisect_root(const IntPolynomial& f, BigRational a,
                                                BigRational b) {
    REQUIRE(f.eval(a) * f.eval(b) < 0);
    for (int i = 0; i < 75; ++i) {
        BigRational mid = (a + b) / 2;
        BigRational v = f.eval(mid);
        if (v == 0) return {mid, mid};
        if (v * f.eval(a) < 0)
            b = mid;
        else
            a = mid;
    }
    return {a, b};
}

bool ball_real_interval_meets(const ComplexBall& ball, const BigRational& lo,
                              const BigRational& hi) {
    BigRational mid = ball.mid_re().to_rational();
    BigRational rad = ball.radius().to_rational();
    return mid + rad >= lo && mid - rad <= hi;
}

}  // namespace

TEST_CASE("isolate_roots: sqrt(2) against a bisection oracle") {
    auto roots = isolate_roots(poly({-2, 0, 1}), 64);
    REQUIRE(roots.size() == 2);
    auto [lo, hi] = bisect_root(poly({-2, 0, 1}), BigRational(1), BigRational(2));
    // canonical order: -sqrt2 first
    CHECK(roots[0].ball.mid_re().to_double() < 0);
    CHECK(ball_real_interval_meets(roots[1].ball, lo, hi));
    CHECK(ball_real_interval_meets(roots[0].ball, -hi, -lo));
    for (const auto& r : roots) {
        CHECK(r.multiplicity == 1);
        CHECK(r.ball.radius().to_rational() <= BigRational(1, BigInt(1) << 60));
    }
    CHECK(roots[0].ball.certainly_disjoint(roots[1].ball));
}

TEST_CASE("isolate_roots: purely imaginary pair of T^2+1") {
    auto roots = isolate_roots(poly({1, 0, 1}), 64);
    REQUIRE(roots.size() == 2);
    // certified containment of the exact points +-i; -i sorts first
    CHECK(roots[0].ball.contains(BigRational(0), BigRational(-1)));
    CHECK(roots[1].ball.contains(BigRational(0), BigRational(1)));
}

TEST_CASE("isolate_roots: multiplicities via square-free step") {
    // (T-1)^2
    auto roots = isolate_roots(poly({1, -2, 1}), 64);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].multiplicity == 2);
    CHECK(roots[0].ball.contains(BigRational(1), BigRational(0)));

    // T^3 (zero root, multiplicity 3 after square-free decomposition)
    auto zr = isolate_roots(poly({0, 0, 0, 1}), 64);
    REQUIRE(zr.size() == 1);
    CHECK(zr[0].multiplicity == 3);
    CHECK(zr[0].ball.contains(BigRational(0), BigRational(0)));

    CHECK_THROWS_AS(isolate_roots(IntPolynomial(), 64), DomainError);
    CHECK(isolate_roots(IntPolynomial::constant(BigInt(5)), 64).empty());
}

TEST_CASE("isolate_roots: counted with multiplicity across mixed factors") {
    // (T-1)^2 (T^2+1) (T+3)
    IntPolynomial p = poly({-1, 1}).pow(2) * poly({1, 0, 1}) * poly({3, 1});
    auto roots = isolate_roots(p, 80);
    int total = 0;
    for (const auto& r : roots) total += r.multiplicity;
    CHECK(total == p.degree());
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            CHECK(roots[i].ball.certainly_disjoint(roots[j].ball));
}

TEST_CASE("root balls reproduce the monic polynomial coefficients") {
    for (auto cs : {std::vector<long>{-2, 0, 1}, std::vector<long>{1, 0, 1},
                    std::vector<long>{-1, -1, 0, 1}, std::vector<long>{3, -2, 0, 4, 1}}) {
        IntPolynomial p = poly(cs);
        auto roots = isolate_roots(p, 96);
        // expand prod (T - root_i) in ball arithmetic
        std::vector<ComplexBall> coeffs{ComplexBall::from_rational(BigRational(1), BigRational(0), 128)};
        for (const auto& r : roots) {
            for (int k = 0; k < r.multiplicity; ++k) {
                std::vector<ComplexBall> next(coeffs.size() + 1, ComplexBall::exact_zero(128));
                for (std::size_t i = 0; i < coeffs.size(); ++i) {
                    next[i + 1] = next[i + 1].add(coeffs[i]);
                    next[i] = next[i].add(coeffs[i].mul(r.ball.neg()));
                }
                coeffs = std::move(next);
            }
        }
        REQUIRE(static_cast<int>(coeffs.size()) == p.degree() + 1);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            BigRational expect(p.coeff(i), p.leading());
            expect.canonicalize();
            CHECK(coeffs[i].contains(expect, BigRational(0)));
        }
    }
}

TEST_CASE("containment is preserved by ball arithmetic") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<long> num(-50, 50);
    std::uniform_int_distribution<long> den(1, 20);
    for (int iter = 0; iter < 60; ++iter) {
        BigRational a(num(rng), den(rng)), b(num(rng), den(rng));
        BigRational c(num(rng), den(rng)), d(num(rng), den(rng));
        a.canonicalize(); b.canonicalize(); c.canonicalize(); d.canonicalize();
        ComplexBall x = ComplexBall::from_rational(a, b, 64);
        ComplexBall y = ComplexBall::from_rational(c, d, 64);
        CHECK(x.contains(a, b));
        CHECK(x.add(y).contains(a + c, b + d));
        CHECK(x.sub(y).contains(a - c, b - d));
        CHECK(x.mul(y).contains(a * c - b * d, a * d + b * c));
        CHECK(x.mul(y).mul(x).contains((a * c - b * d) * a - (a * d + b * c) * b,
                                       (a * c - b * d) * b + (a * d + b * c) * a));
    }
}

TEST_CASE("doubling precision shrinks root radii") {
    IntPolynomial p = poly({-1, -1, 0, 1});  // T^3 - T - 1
    auto r64 = isolate_roots(p, 64);
    auto r128 = isolate_roots(p, 128);
    auto r256 = isolate_roots(p, 256);
    REQUIRE(r64.size() == 3);
    REQUIRE(r128.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(r128[i].ball.radius() <= r64[i].ball.radius());
        CHECK(r256[i].ball.radius() <= r128[i].ball.radius());
        // same root: tighter ball stays inside the wider one's neighborhood
        CHECK_FALSE(r128[i].ball.certainly_disjoint(r64[i].ball));
    }
}

TEST_CASE("isolate_roots separates a near-collision pair") {
    // x^10 - 2(10x - 1)^2 has two roots at distance ~1e-6 near 0.1
    IntPolynomial mig = IntPolynomial::monomial(BigInt(1), 10);
    IntPolynomial lin = poly({-1, 10});
    mig = mig - lin * lin * BigInt(2);
    auto roots = isolate_roots(mig, 64);
    int total = 0, near = 0;
    for (const auto& r : roots) {
        total += r.multiplicity;
        if (std::abs(r.ball.mid_re().to_double() - 0.1) < 1e-3 &&
            std::abs(r.ball.mid_im().to_double()) < 1e-3)
            ++near;
    }
    CHECK(total == 10);
    CHECK(near == 2);
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            CHECK(roots[i].ball.certainly_disjoint(roots[j].ball));
}

TEST_CASE("log_plus cases") {
    // exact 2: [log2, log2] within rounding
    ComplexBall two = ComplexBall::from_rational(BigRational(2), BigRational(0), 96);
    RealInterval l2 = log_plus(two);
    CHECK(l2.lo.to_double() == doctest::Approx(0.6931471805599453).epsilon(1e-12));
    CHECK(l2.hi.to_double() == doctest::Approx(0.6931471805599453).epsilon(1e-12));
    CHECK(l2.width() < 1e-15);

    // |z| < 1: exactly [0, 0]
    ComplexBall half = ComplexBall::from_rational(BigRational(1, 2), BigRational(0), 96);
    RealInterval lh = log_plus(half);
    CHECK(lh.lo.is_zero());
    CHECK(lh.hi.is_zero());

    // golden ratio: positive root of T^2 - T - 1
    auto roots = isolate_roots(poly({-1, -1, 1}), 128);
    REQUIRE(roots.size() == 2);
    RealInterval lg = log_plus(roots[1].ball);
    CHECK(lg.lo.to_double() == doctest::Approx(0.4812118250596035).epsilon(1e-10));
    CHECK(lg.width() < 1e-20);

    // ball straddling zero with |z| upper bound above 1
    ComplexBall wide = ComplexBall::from_rational(BigRational(0), BigRational(0), 64)
                           .inflate(Real::from_long(2, 64));
    CHECK_THROWS_AS(log_plus(wide), DomainError);
}

TEST_CASE("hex serialization round-trips exactly") {
    Real x = Real::pow2(-1337, 64);
    mpfr_add_ui(x.raw(), x.raw(), 3, MPFR_RNDN);
    Real back = Real::from_hex(x.to_hex(), 64);
    CHECK(back == x);
}
