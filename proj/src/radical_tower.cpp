#include "serieslab/radical_tower.hpp"

#include <algorithm>
#include <cmath>

namespace serieslab {

namespace {

std::vector<unsigned long> prime_divisors(unsigned long m) {
    std::vector<unsigned long> out;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            out.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

// primitive integer polynomial for T^m - a
IntPolynomial radical_poly(const BigRational& a, unsigned long m) {
    std::vector<BigInt> v(m + 1, BigInt(0));
    v[0] = -a.get_num();
    v[m] = a.get_den();
    return content_primitive(IntPolynomial(std::move(v))).second;
}

// ball around the principal branch of a^{1/m}
ComplexBall principal_branch_ball(const BigRational& a, unsigned long m, mpfr_prec_t prec) {
    Real mag(prec + 16), arg(prec + 16);
    Real av = Real::from_rational(abs(a), prec + 16, MPFR_RNDN);
    mpfr_rootn_ui(mag.raw(), av.raw(), m, MPFR_RNDN);
    ComplexBall ball(prec + 16);
    if (a > 0) {
        ball = ComplexBall::from_midpoint(mag, Real::zero(prec + 16));
    } else {
        // principal log: argument pi/m
        mpfr_const_pi(arg.raw(), MPFR_RNDN);
        mpfr_div_ui(arg.raw(), arg.raw(), m, MPFR_RNDN);
        Real c(prec + 16), s(prec + 16);
        mpfr_cos(c.raw(), arg.raw(), MPFR_RNDN);
        mpfr_sin(s.raw(), arg.raw(), MPFR_RNDN);
        mpfr_mul(c.raw(), c.raw(), mag.raw(), MPFR_RNDN);
        mpfr_mul(s.raw(), s.raw(), mag.raw(), MPFR_RNDN);
        ball = ComplexBall::from_midpoint(c, s);
    }
    // approximation slack: a few ulps of the magnitude
    Real pad = Real::pow2(-static_cast<long>(prec) - 6, 64);
    Real scale(64);
    mpfr_add_ui(scale.raw(), mag.raw(), 1, MPFR_RNDU);
    mpfr_mul(pad.raw(), pad.raw(), scale.raw(), MPFR_RNDU);
    return ball.inflate(pad);
}

// irreducible factor of T^m - a whose root set contains the principal branch
IntPolynomial branch_factor(const BigRational& a, unsigned long m, ComplexBall* branch_out) {
    IntPolynomial pol = radical_poly(a, m);
    Factorization f = factor_over_Z(pol);
    const long cap = Limits::current().precision_cap_bits;
    for (mpfr_prec_t prec = 96; prec <= cap; prec *= 2) {
        ComplexBall target = principal_branch_ball(a, m, prec);
        const IntPolynomial* found = nullptr;
        ComplexBall found_ball(64);
        int hits = 0;
        for (const auto& pf : f.factors) {
            for (const RootBall& r : isolate_roots(pf.factor, prec)) {
                if (!r.ball.certainly_disjoint(target)) {
                    ++hits;
                    found = &pf.factor;
                    found_ball = r.ball;
                }
            }
        }
        if (hits == 1) {
            if (branch_out) *branch_out = found_ball;
            return *found;
        }
    }
    throw CapError("could not isolate the principal radical branch at cap");
}

}  // namespace

bool is_pth_power(const BigRational& a, unsigned long p) {
    if (p == 0) throw DomainError("power index must be positive");
    if (a == 0) return true;
    if (a < 0 && p % 2 == 0) return false;
    return is_perfect_power(a.get_num(), p) && is_perfect_power(a.get_den(), p);
}

RadicalReport radical_degree(const BigRational& a, unsigned long m) {
    if (a == 0) throw DomainError("radical base must be nonzero");
    if (m < 1) throw DomainError("radical index must be >= 1");
    RadicalReport rep;
    rep.base = a;
    rep.m = m;
    for (unsigned long p : prime_divisors(m))
        if (is_pth_power(a, p)) rep.failing_primes.push_back(p);
    if (m % 4 == 0) {
        // a in -4 Q^4 iff -a/4 is a fourth power
        BigRational shifted = -a / 4;
        rep.minus4_flag = shifted > 0 && is_pth_power(shifted, 4);
    }
    if (rep.failing_primes.empty() && !rep.minus4_flag) {
        rep.degree = static_cast<int>(m);
    } else {
        rep.used_factorization_fallback = true;
        rep.degree = branch_factor(a, m, nullptr).degree();
    }
    if (rep.degree == static_cast<int>(m) && a > 0) {
        std::vector<unsigned long> divs;
        for (unsigned long d = 1; d <= m; ++d)
            if (m % d == 0) divs.push_back(d);
        rep.subfield_degrees = std::move(divs);
    }
    return rep;
}

NumberField::Ptr radical_field(const BigRational& a, unsigned long m) {
    if (a == 0) throw DomainError("radical base must be nonzero");
    ComplexBall branch(64);
    IntPolynomial defining = branch_factor(a, m, &branch);
    return NumberField::create_with_box(std::move(defining), branch);
}

RadicalExpansion radical_partial_sum_expansion(const BigRational& a, unsigned long m) {
    if (!(a > 0 && a < 1)) throw DomainError("expansion requires 0 < a < 1");
    if (m < 2) throw DomainError("expansion requires m >= 2");
    RadicalReport rep = radical_degree(a, m);
    if (rep.degree != static_cast<int>(m))
        throw DomainError("expansion requires full radical degree m");
    // digit formula: coordinate l collects a^{(k! - l)/m} over k with k! = l (mod m)
    std::vector<BigRational> coords(m, BigRational(0));
    BigInt factorial(1);
    for (unsigned long k = 1; k <= m - 1; ++k) {
        factorial *= k;
        BigInt l = factorial % m;
        BigInt e = (factorial - l) / m;
        coords[l.get_ui()] += rat_pow(a, e);
    }
    // cross-check against exact field arithmetic
    NumberField::Ptr field = radical_field(a, m);
    NFElement root = field->generator();
    NFElement beta = field->zero();
    BigInt f(1);
    for (unsigned long k = 1; k <= m - 1; ++k) {
        f *= k;
        beta = beta + root.pow(f);
    }
    std::vector<BigRational> check(coords);
    for (auto& c : check) c.canonicalize();
    if (beta.coords() != check)
        throw std::logic_error("radical expansion: digit formula disagrees with field arithmetic");
    if (!(coords[1] >= 1)) throw std::logic_error("radical expansion: linear coordinate below 1");
    RadicalExpansion out;
    out.coords = std::move(coords);
    out.degree = element_degree(beta);
    if (out.degree != static_cast<int>(m))
        throw std::logic_error("radical expansion: element degree differs from m");
    return out;
}

}  // namespace serieslab
