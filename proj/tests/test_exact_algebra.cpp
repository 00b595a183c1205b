#include <doctest.h>

#include <map>
#include <random>
#include <vector>

#include "serieslab/exact_algebra.hpp"

using namespace serieslab;

namespace {

IntPolynomial poly(std::vector<long> cs) {
    std::vector<BigInt> v;
    v.reserve(cs.size());
    for (long c : cs) v.emplace_back(c);
    return IntPolynomial(std::move(v));
}

IntPolynomial random_poly(std::mt19937& rng, int max_deg, long coeff_bound) {
    std::uniform_int_distribution<int> deg_dist(0, max_deg);
    std::uniform_int_distribution<long> c_dist(-coeff_bound, coeff_bound);
    int d = deg_dist(rng);
    std::vector<BigInt> v(static_cast<std::size_t>(d) + 1);
    for (auto& c : v) c = c_dist(rng);
    while (v.back() == 0) v.back() = c_dist(rng);
    return IntPolynomial(std::move(v));
}

// Independent cyclotomic oracle: Phi_n = (T^n - 1) / prod_{d | n, d < n} Phi_d.
IntPolynomial cyclotomic_oracle(unsigned long n) {
    static std::map<unsigned long, IntPolynomial> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<BigInt> tn(n + 1, BigInt(0));
    tn[0] = -1;
    tn[n] = 1;
    IntPolynomial num{std::move(tn)};
    for (unsigned long d = 1; d < n; ++d)
        if (n % d == 0) num = num.divide_exact(cyclotomic_oracle(d));
    cache.emplace(n, num);
    return num;
}

// Independent irreducibility check for degree <= 4: no rational root and no
// split into two lower-degree integer factors found by exhaustive search over
// divisor-constrained coefficients.
bool independent_irreducible(const IntPolynomial& p) {
    int n = p.degree();
    REQUIRE(n >= 1);
    REQUIRE(n <= 4);
    if (n == 1) return true;
    const BigInt lc = p.leading();
    const BigInt c0 = p.coeff(0);
    if (c0 == 0) return false;  // T divides
    auto divisors = [](const BigInt& x) {
        std::vector<BigInt> out;
        BigInt a = abs(x);
        for (BigInt d = 1; d * d <= a; ++d)
            if (a % d == 0) {
                out.push_back(d);
                if (d * d != a) out.push_back(a / d);
            }
        return out;
    };
    // rational roots r/s with r | c0, s | lc
    for (const BigInt& r : divisors(c0))
        for (const BigInt& s : divisors(lc))
            for (int sg : {1, -1}) {
                BigRational root(r * sg, s);
                root.canonicalize();
                if (p.eval(root) == 0) return false;
            }
    if (n <= 3) return true;
    // degree 4: search quadratic factors gT^2 + hT + k with g | lc, k | c0,
    // |h| bounded by the coefficient bound for factors
    BigInt norm2_sq = 0;
    for (const auto& c : p.coeffs()) norm2_sq += c * c;
    BigInt hb = 16 * (sqrt(norm2_sq) + 1);
    for (const BigInt& g : divisors(lc))
        for (const BigInt& k_abs : divisors(c0))
            for (int ks : {1, -1}) {
                BigInt k = k_abs * ks;
                for (BigInt h = -hb; h <= hb; ++h) {
                    IntPolynomial quad({std::vector<BigInt>{k, h, g}});
                    if (quad.degree() != 2) continue;
                    if (divides(quad, p)) return false;
                }
            }
    return true;
}

}  // namespace

TEST_CASE("content_primitive: worked examples") {
    auto [c1, p1] = content_primitive(poly({2, -4, 6}));  // 6T^2 - 4T + 2
    CHECK(c1 == 2);
    CHECK(p1 == poly({1, -2, 3}));

    auto [c2, p2] = content_primitive(poly({-3, 1}));  // T - 3
    CHECK(c2 == 1);
    CHECK(p2 == poly({-3, 1}));

    // sign normalization: content positive, primitive leading coefficient positive
    auto [c3, p3] = content_primitive(poly({1, 4, -4}));  // -4T^2 + 4T + 1
    CHECK(c3 == 1);
    CHECK(p3 == poly({-1, -4, 4}));  // 4T^2 - 4T - 1

    CHECK_THROWS_AS(content_primitive(IntPolynomial()), DomainError);
}

TEST_CASE("content_primitive: reconstruction property") {
    std::mt19937 rng(20240811);
    for (int iter = 0; iter < 300; ++iter) {
        IntPolynomial p = random_poly(rng, 8, 100);
        auto [c, prim] = content_primitive(p);
        CHECK(c > 0);
        CHECK(prim.leading() > 0);
        auto [c2, prim2] = content_primitive(prim);
        CHECK(c2 == 1);
        IntPolynomial back = prim * c;
        bool same = (back == p) || (back == -p);
        CHECK(same);
    }
}

TEST_CASE("factor_over_Z: worked examples") {
    SUBCASE("T^4 + 4 splits via the Sophie Germain identity") {
        Factorization f = factor_over_Z(poly({4, 0, 0, 0, 1}));
        REQUIRE(f.factors.size() == 2);
        CHECK(f.content == 1);
        CHECK(f.sign == 1);
        IntPolynomial prod = IntPolynomial::constant(1);
        for (const auto& pf : f.factors) {
            CHECK(pf.multiplicity == 1);
            CHECK(pf.factor.degree() == 2);
            prod = prod * pf.factor;
        }
        CHECK(prod == poly({4, 0, 0, 0, 1}));
        // the two factors are T^2 - 2T + 2 and T^2 + 2T + 2 in some order
        bool found_minus = false, found_plus = false;
        for (const auto& pf : f.factors) {
            if (pf.factor == poly({2, -2, 1})) found_minus = true;
            if (pf.factor == poly({2, 2, 1})) found_plus = true;
        }
        CHECK(found_minus);
        CHECK(found_plus);
    }
    SUBCASE("T^2 - 2 is irreducible") {
        Factorization f = factor_over_Z(poly({-2, 0, 1}));
        REQUIRE(f.factors.size() == 1);
        CHECK(f.factors[0].factor == poly({-2, 0, 1}));
        CHECK(f.factors[0].multiplicity == 1);
    }
    SUBCASE("2T^2 - 2 = 2 (T-1)(T+1)") {
        Factorization f = factor_over_Z(poly({-2, 0, 2}));
        CHECK(f.content == 2);
        REQUIRE(f.factors.size() == 2);
        bool m = false, p_ = false;
        for (const auto& pf : f.factors) {
            if (pf.factor == poly({-1, 1})) m = true;
            if (pf.factor == poly({1, 1})) p_ = true;
        }
        CHECK(m);
        CHECK(p_);
    }
    SUBCASE("degree cap") {
        std::vector<BigInt> big(20, BigInt(1));
        CHECK_THROWS_AS(factor_over_Z(IntPolynomial(std::move(big))), CapError);
    }
    SUBCASE("repeated factors and content") {
        // 3 (T-1)^2 (T^2+1)
        IntPolynomial p = poly({-1, 1}).pow(2) * poly({1, 0, 1}) * BigInt(3);
        Factorization f = factor_over_Z(p);
        CHECK(f.content == 3);
        REQUIRE(f.factors.size() == 2);
        for (const auto& pf : f.factors) {
            if (pf.factor.degree() == 1) {
                CHECK(pf.factor == poly({-1, 1}));
                CHECK(pf.multiplicity == 2);
            } else {
                CHECK(pf.factor == poly({1, 0, 1}));
                CHECK(pf.multiplicity == 1);
            }
        }
    }
}

TEST_CASE("factor_over_Z: reconstruction and independent irreducibility") {
    std::mt19937 rng(77001);
    int checked_irreducible = 0;
    for (int iter = 0; iter < 120; ++iter) {
        IntPolynomial p = random_poly(rng, 6, 30);
        if (p.degree() < 1) continue;
        Factorization f = factor_over_Z(p);
        IntPolynomial prod = IntPolynomial::constant(f.content * f.sign);
        for (const auto& pf : f.factors) {
            CHECK(pf.factor.leading() > 0);
            CHECK(content_primitive(pf.factor).first == 1);
            prod = prod * pf.factor.pow(static_cast<unsigned long>(pf.multiplicity));
            if (pf.factor.degree() >= 1 && pf.factor.degree() <= 4 && pf.factor.coeff(0) != 0) {
                CHECK(independent_irreducible(pf.factor));
                ++checked_irreducible;
            }
        }
        CHECK(prod == p);
    }
    CHECK(checked_irreducible > 50);
}

TEST_CASE("factor_over_Z: products of known irreducibles recombine") {
    // exercises Hensel lifting + recombination on non-trivial splits
    std::vector<IntPolynomial> irr = {
        poly({-2, 0, 1}),      // T^2 - 2
        poly({1, 1, 1}),       // Phi_3
        poly({-1, -1, 0, 1}),  // T^3 - T - 1
        poly({3, 0, 1}),       // T^2 + 3
        poly({-3, 1}),         // T - 3
    };
    for (std::size_t i = 0; i < irr.size(); ++i)
        for (std::size_t j = i; j < irr.size(); ++j) {
            IntPolynomial p = irr[i] * irr[j];
            Factorization f = factor_over_Z(p);
            IntPolynomial prod = IntPolynomial::constant(f.content * f.sign);
            int total_deg = 0;
            for (const auto& pf : f.factors) {
                prod = prod * pf.factor.pow(static_cast<unsigned long>(pf.multiplicity));
                total_deg += pf.factor.degree() * pf.multiplicity;
            }
            CHECK(prod == p);
            CHECK(total_deg == p.degree());
            if (i != j) {
                std::size_t expect = 2;
                CHECK(f.factors.size() == expect);
            }
        }
}

TEST_CASE("factor_over_Z: sieve-defeating and cap-boundary inputs") {
    // splits into quadratics modulo every prime yet is irreducible over Z,
    // forcing the recombination stage to reject every proper subset
    Factorization sd = factor_over_Z(poly({1, 0, -10, 0, 1}));
    REQUIRE(sd.factors.size() == 1);
    CHECK(sd.factors[0].factor.degree() == 4);

    // degree 16 sits exactly at the configured cap
    std::vector<BigInt> c32(17, BigInt(0));
    c32[0] = 1;
    c32[16] = 1;
    IntPolynomial phi32{std::move(c32)};
    CHECK(is_irreducible(phi32));
    CHECK(cyclotomic_order(phi32) == 32);

    // mixed multiplicities across several irreducible factors
    IntPolynomial soup = (poly({-2, 0, 1}) * poly({-3, 0, 1})).pow(2) *
                         poly({-1, 1}).pow(3) * poly({1, 1, 1});
    Factorization fs = factor_over_Z(soup);
    CHECK(fs.factors.size() == 4);
    IntPolynomial re = IntPolynomial::constant(fs.content * fs.sign);
    for (const auto& pf : fs.factors)
        re = re * pf.factor.pow(static_cast<unsigned long>(pf.multiplicity));
    CHECK(re == soup);
}

TEST_CASE("is_cyclotomic: oracle agreement for n <= 50") {
    for (unsigned long n = 1; n <= 50; ++n) {
        IntPolynomial phi = cyclotomic_oracle(n);
        auto order = cyclotomic_order(phi);
        REQUIRE(order.has_value());
        CHECK(*order == n);
    }
}

TEST_CASE("is_cyclotomic: worked examples and errors") {
    CHECK(cyclotomic_order(poly({1, 1, 1})) == 3);
    CHECK(cyclotomic_order(poly({1, 0, 0, 0, 1})) == 8);
    CHECK_FALSE(cyclotomic_order(poly({-2, 0, 1})).has_value());
    CHECK_FALSE(cyclotomic_order(poly({-1, -1, 1})).has_value());  // golden ratio
    CHECK_THROWS_AS(cyclotomic_order(poly({-2, 0, 2})), DomainError);
}

TEST_CASE("resultant and discriminant") {
    CHECK(discriminant(poly({-2, 0, 1})) == 8);           // T^2 - 2
    CHECK(discriminant(poly({-2, 0, 0, 1})) == -108);     // T^3 - 2
    CHECK(discriminant(poly({-1, -3, 0, 1})) == 81);      // T^3 - 3T - 1
    CHECK(discriminant(poly({-2, 0, 0, 0, 1})) == -2048); // T^4 - 2
    CHECK(resultant(poly({-1, 1}), poly({1, 1})) == 2);   // Res(T-1, T+1)
}

TEST_CASE("squarefree decomposition") {
    // (T-1)^2 (T+2)^3
    IntPolynomial p = poly({-1, 1}).pow(2) * poly({2, 1}).pow(3);
    auto parts = squarefree_decomposition(p);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].first == poly({-1, 1}));
    CHECK(parts[0].second == 2);
    CHECK(parts[1].first == poly({2, 1}));
    CHECK(parts[1].second == 3);
}

TEST_CASE("monicize maps factors correctly") {
    // 2T^2 - 1: monic image of lc*x is T^2 - 2
    IntPolynomial m = monicize(poly({-1, 0, 2}));
    CHECK(m == poly({-2, 0, 1}));
}

TEST_CASE("polynomial divide_exact and shift") {
    IntPolynomial p = poly({-1, 0, 1});
    CHECK(p.divide_exact(poly({1, 1})) == poly({-1, 1}));
    CHECK_THROWS_AS(poly({1, 0, 1}).divide_exact(poly({1, 1})), DomainError);
    // (T+1)^2 - shifted square
    CHECK(poly({0, 0, 1}).shift(BigInt(1)) == poly({1, 2, 1}));
}
