#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "serieslab/heights.hpp"

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

bool encloses(const HeightEnclosure& h, double value, double eps = 1e-13) {
    return h.lower.to_double() <= value + eps && value <= h.upper.to_double() + eps;
}

}  // namespace

TEST_CASE("height of reduced fractions is log max(|m|, n)") {
    auto Q = NumberField::rationals();
    CHECK(encloses(height(Q->from_rational(q(2, 3)), 1e-15), std::log(3.0)));
    CHECK(encloses(height(Q->from_rational(q(-7, 2)), 1e-15), std::log(7.0)));
    CHECK(encloses(height(Q->from_rational(q(10)), 1e-15), std::log(10.0)));
    CHECK(encloses(height(Q->from_rational(q(0)), 1e-15), 0.0));
    CHECK(encloses(height(Q->from_rational(q(1)), 1e-15), 0.0));
    // widths meet the tolerance
    CHECK(height(Q->from_rational(q(355, 113)), 1e-15).width() <= 1e-15);
}

TEST_CASE("height of roots of unity is zero; nonzero otherwise (Kronecker)") {
    for (unsigned long n : {1ul, 2ul, 3ul, 4ul, 5ul, 7ul, 12ul, 30ul}) {
        IntPolynomial phi = cyclotomic_oracle(n);
        auto K = NumberField::create(phi);
        HeightEnclosure h = height(K->generator(), 1e-15);
        CHECK(h.lower.to_double() <= 1e-18);
        CHECK(h.upper.to_double() <= 1e-15);
    }
    // non-examples have certified positive height
    auto g1 = NumberField::create(poly({-2, 0, 1}), 1);
    CHECK(height(g1->generator(), 1e-12).lower.sign() > 0);
    auto g2 = NumberField::create(poly({-1, -1, 1}), 1);  // golden ratio
    CHECK(height(g2->generator(), 1e-12).lower.sign() > 0);
    auto Q = NumberField::rationals();
    CHECK(height(Q->from_rational(q(3, 2)), 1e-12).lower.sign() > 0);
}

TEST_CASE("height of 2^{1/m} is (log 2)/m") {
    for (int m : {2, 3, 4}) {
        std::vector<BigInt> cs(static_cast<std::size_t>(m) + 1, BigInt(0));
        cs[0] = -2;
        cs[static_cast<std::size_t>(m)] = 1;
        auto K = NumberField::create(IntPolynomial(std::move(cs)),
                                     static_cast<std::size_t>(m == 2 ? 1 : (m == 3 ? 2 : 3)));
        HeightEnclosure h = height(K->generator(), 1e-14);
        CHECK(encloses(h, std::log(2.0) / m));
        CHECK(h.width() <= 1e-14);
    }
}

TEST_CASE("poly_heights") {
    auto [a1, p1] = poly_heights(poly({4, 6}));  // 6T + 4
    CHECK(a1 == doctest::Approx(std::log(6.0)).epsilon(1e-12));
    CHECK(p1 == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    auto [a2, p2] = poly_heights(poly({-3, 1}));
    CHECK(a2 == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(p2 == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    auto [a3, p3] = poly_heights(poly({1}));
    CHECK(a3 == 0.0);
    CHECK(p3 == 0.0);
    CHECK_THROWS_AS(poly_heights(IntPolynomial()), DomainError);
}

TEST_CASE("liouville_check worked examples") {
    auto Q = NumberField::rationals();
    LiouvilleReport r1 = liouville_check(Q->from_rational(q(3, 2)));
    CHECK(r1.degree == 1);
    CHECK(r1.delta == 1);
    CHECK(r1.pass);
    CHECK(r1.lower_bound == doctest::Approx(1.0 / 3).epsilon(1e-9));
    CHECK(r1.upper_bound == doctest::Approx(3.0).epsilon(1e-9));

    auto K = NumberField::create(poly({-2, 0, 1}), 1);
    LiouvilleReport r2 = liouville_check(K->generator());
    CHECK(r2.degree == 2);
    CHECK(r2.delta == 1);
    CHECK(r2.pass);
    CHECK(r2.lower_bound == doctest::Approx(0.5).epsilon(1e-9));

    auto Ki = NumberField::create(poly({1, 0, 1}), 1);  // i
    LiouvilleReport r3 = liouville_check(Ki->generator());
    CHECK(r3.degree == 2);
    CHECK(r3.delta == 2);
    CHECK(r3.pass);
    CHECK(r3.lower_bound == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r3.upper_bound == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(liouville_check(Q->zero()), DomainError);
}

TEST_CASE("element_is_real") {
    auto K = NumberField::create(poly({-2, 0, 1}), 1);
    CHECK(element_is_real(K->generator()));
    CHECK(element_is_real(K->from_rational(q(5, 3))));
    auto Ki = NumberField::create(poly({1, 0, 1}), 0);
    CHECK_FALSE(element_is_real(Ki->generator()));
    // rational element of a complex field is real
    CHECK(element_is_real(Ki->from_rational(q(2))));
}

TEST_CASE("audit: tight equality case and inverse invariance") {
    auto K = NumberField::create(poly({-2, 0, 1}), 1);
    NFElement s = K->generator();
    std::vector<std::pair<NFElement, NFElement>> sample = {
        {s, s},
        {s + K->one(), (s + K->one()).inverse()},
        {K->zero(), K->one()},
    };
    auto records = audit_height_axioms(sample, 1e-12);
    CHECK(records.size() > 10);
    for (const AuditRecord& r : records) {
        INFO(r.identity << " on " << r.inputs);
        CHECK(r.pass);
    }
    // h(x^2) = 2h(x) on x = sqrt2 is the tight case h(2) = log 2
    bool found = false;
    for (const AuditRecord& r : records)
        if (r.identity == "height(x^2) = 2 height(x)" && !found) {
            CHECK(r.lhs == doctest::Approx(std::log(2.0)).epsilon(1e-9));
            found = true;
        }
    CHECK(found);
    // JSON lines render one record per line
    std::string jsonl = audit_report_jsonl(records);
    CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == static_cast<long>(records.size()));
}

TEST_CASE("Galois invariance of height across embeddings") {
    for (auto cs : {std::vector<long>{-2, 0, 0, 1}, std::vector<long>{1, 1, 1, 1, 1},
                    std::vector<long>{-1, -1, 0, 0, 0, 1}}) {
        IntPolynomial p = poly(cs);
        auto K0 = NumberField::create(p, 0);
        auto K1 = NumberField::create(p, 1);
        HeightEnclosure h0 = height(K0->generator(), 1e-12);
        HeightEnclosure h1 = height(K1->generator(), 1e-12);
        CHECK(std::abs(h0.midpoint() - h1.midpoint()) <= h0.width() + h1.width() + 1e-12);
    }
}

TEST_CASE("minimal-polynomial log sandwich over a random corpus") {
    std::mt19937 rng(991);
    std::uniform_int_distribution<long> cd(-20, 20);
    std::uniform_int_distribution<int> dd(1, 5);
    int done = 0;
    while (done < 40) {
        int d = dd(rng);
        std::vector<BigInt> cs(static_cast<std::size_t>(d) + 1);
        for (auto& c : cs) c = cd(rng);
        IntPolynomial p{std::move(cs)};
        if (p.degree() != d) continue;
        if (!is_irreducible(p)) continue;
        HeightEnclosure h = height_from_minpoly(p, 1e-10);
        double lm = poly_heights(p).second;
        double n = d;
        CHECK(std::abs(lm - n * h.midpoint()) <= n * std::log(2.0) + n * h.width() + 1e-9);
        ++done;
    }
}
