#include <doctest.h>

#include <cmath>

#include "serieslab/um_certifier.hpp"

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

}  // namespace

TEST_CASE("degree profile: factorial series at 2^{-1/2} stabilizes at degree 2") {
    DegreeProfile p = degree_profile(SeriesSpec::factorial(), inv_sqrt2(), 5);
    REQUIRE(p.rows.size() == 5);
    for (const auto& r : p.rows) CHECK(r.degree == 2);
    CHECK(p.stabilized_m == 2);
    CHECK(p.mahler_condition_prefix);
    CHECK(p.heuristic_caveat);
}

TEST_CASE("degree profile: even-index factorial series at 2^{-1/2} is rational") {
    DegreeProfile p = degree_profile(SeriesSpec::factorial(2), inv_sqrt2(), 5);
    for (const auto& r : p.rows) CHECK(r.degree == 1);
    CHECK(p.stabilized_m == 1);
    CHECK(p.mahler_condition_prefix);
}

TEST_CASE("degree profile: adversarial series at a root of U_1") {
    SeriesSpec spec = SeriesSpec::adversarial({poly({-1, 1}), poly({1, 1}), poly({1, 0, 1})}, 3);
    DegreeProfile p = degree_profile(spec, rational_alpha(1, 1), 3);
    for (const auto& r : p.rows) CHECK_FALSE(r.block_nonzero);
    CHECK_FALSE(p.mahler_condition_prefix);
    CHECK_FALSE(p.stabilized_m.has_value());
}

TEST_CASE("degree profile heights obey the evaluation bound") {
    // h(F_n(alpha)) <= s_n h(alpha) + h(F_n) + log(s_n + 1)
    for (NFElement alpha : {rational_alpha(1, 2), inv_sqrt2()}) {
        HeightEnclosure ha = height(alpha, 1e-12);
        DegreeProfile p = degree_profile(SeriesSpec::factorial(), alpha, 5);
        for (const auto& r : p.rows) {
            double rhs = r.s_n.get_d() * ha.upper.to_double() + r.partial_poly_height +
                         std::log(r.s_n.get_d() + 1);
            CHECK(r.height.lower.to_double() <= rhs + 1e-9);
        }
    }
}

TEST_CASE("witness: factorial series at 1/2 with w = 3 lands on n = 3") {
    Certificate cert = um_witness(SeriesSpec::factorial(), rational_alpha(1, 2), 3.0, 1);
    CHECK(cert.kind() == "um_witness");
    CHECK(cert.doc.at("payload").at("n").get<int>() == 3);
    // q_3 = 2^{3!}: the partial sum is 49/64
    CHECK(cert.doc.at("payload").at("minpoly_of_partial_sum") ==
          nlohmann::json::array({"-49", "64"}));
    VerifyOutcome v = verify_certificate(cert.doc);
    CHECK(v.pass);
}

TEST_CASE("witness: w = 0 takes the first matching degree") {
    Certificate cert = um_witness(SeriesSpec::factorial(), rational_alpha(1, 2), 0.0, 1);
    CHECK(cert.doc.at("payload").at("n").get<int>() == 1);
}

TEST_CASE("witness verification rejects tampering") {
    Certificate cert = um_witness(SeriesSpec::factorial(), rational_alpha(1, 2), 3.0, 1);
    nlohmann::json bad = cert.doc;
    bad["payload"]["minpoly_of_partial_sum"] = nlohmann::json::array({"-47", "64"});
    VerifyOutcome v1 = verify_certificate(bad);
    CHECK_FALSE(v1.pass);
    nlohmann::json bad2 = cert.doc;
    bad2["payload"]["n"] = 2;
    VerifyOutcome v2 = verify_certificate(bad2);
    CHECK_FALSE(v2.pass);
    nlohmann::json bad3 = cert.doc;
    bad3["payload"]["tail_bound"] = "0x1p-100";
    VerifyOutcome v3 = verify_certificate(bad3);
    CHECK_FALSE(v3.pass);
}

TEST_CASE("witness over a quadratic point verifies") {
    Certificate cert = um_witness(SeriesSpec::factorial(), inv_sqrt2(), 3.0, 2);
    CHECK(cert.doc.at("payload").at("m").get<int>() == 2);
    VerifyOutcome v = verify_certificate(cert.doc);
    CHECK(v.pass);
}

TEST_CASE("witness cap exhaustion is a resource error") {
    // degree-2 witnesses cannot exist for a rational point
    CHECK_THROWS_AS(um_witness(SeriesSpec::factorial(), rational_alpha(1, 2), 1.0, 2), CapError);
}

TEST_CASE("lower-degree scan: exclusions and the attaining point") {
    SeriesSpec spec = SeriesSpec::factorial();
    Certificate cert = lower_degree_scan(spec, rational_alpha(1, 2), 1, BigInt(6), 3.0);
    const nlohmann::json& payload = cert.doc.at("payload");
    // partial sums 1/2 (2T - 1) and 3/4 (4T - 3) sit inside the box and are excluded
    const nlohmann::json& excl = payload.at("excluded_partial_sums");
    REQUIRE(excl.size() == 2);
    CHECK(excl.at(0).at("minpoly") == nlohmann::json::array({"-1", "2"}));
    CHECK(excl.at(1).at("minpoly") == nlohmann::json::array({"-3", "4"}));
    CHECK(payload.at("excluded_root_hits").get<int>() == 2);
    CHECK_FALSE(payload.at("argmin").is_null());
    // the recorded minimum is finite and log_c equals its lower end
    CHECK(payload.at("log_c") == payload.at("min_lower"));
}

TEST_CASE("lower-degree scan: degenerate box") {
    SeriesSpec spec = SeriesSpec::factorial();
    Certificate cert = lower_degree_scan(spec, rational_alpha(1, 2), 1, BigInt(1), 0.0);
    const nlohmann::json& payload = cert.doc.at("payload");
    // box contains 0 and +-1 only; nothing is excluded
    CHECK(payload.at("excluded_partial_sums").size() == 0);
    CHECK(payload.at("roots_checked").get<int>() == 3);
}

TEST_CASE("lower-degree scan with eta 0: finite minimum away from partial sums") {
    SeriesSpec spec = SeriesSpec::factorial();
    Certificate cert = lower_degree_scan(spec, rational_alpha(1, 2), 1, BigInt(6), 0.0);
    const nlohmann::json& payload = cert.doc.at("payload");
    Real lo = Real::from_hex(payload.at("min_lower").get<std::string>(), 96);
    CHECK(mpfr_number_p(lo.raw()) != 0);  // min log|f(alpha) - beta| > -inf
    // the attaining beta is never one of the excluded partial sums
    for (const auto& ex : payload.at("excluded_partial_sums"))
        CHECK(payload.at("argmin").at("minpoly") != ex.at("minpoly"));
}

TEST_CASE("lower-degree scan verifies and rejects tampering") {
    SeriesSpec spec = SeriesSpec::factorial();
    Certificate cert = lower_degree_scan(spec, rational_alpha(1, 2), 1, BigInt(4), 3.0);
    VerifyOutcome ok = verify_certificate(cert.doc);
    CHECK(ok.pass);
    nlohmann::json bad = cert.doc;
    bad["payload"]["min_lower"] = "0x1p-4";
    CHECK_FALSE(verify_certificate(bad).pass);
}

TEST_CASE("exception scan: factorial series, degree 1") {
    SeriesSpec spec = SeriesSpec::factorial();
    Certificate cert = exception_scan(spec, 1, 4);
    const nlohmann::json& payload = cert.doc.at("payload");
    // Northcott box: 0, +-1, +-2, +-1/2
    auto has = [&](std::vector<std::string> coeffs) {
        nlohmann::json want = coeffs;
        for (const auto& c : payload.at("candidates"))
            if (c == want) return true;
        return false;
    };
    CHECK(payload.at("candidates").size() == 7);
    CHECK(has({"0", "1"}));    // 0
    CHECK(has({"-1", "1"}));   // 1
    CHECK(has({"1", "1"}));    // -1
    CHECK(has({"-2", "1"}));   // 2
    CHECK(has({"2", "1"}));    // -2
    CHECK(has({"-1", "2"}));   // 1/2
    CHECK(has({"1", "2"}));    // -1/2
    // only alpha = 0 kills every block
    REQUIRE(payload.at("exceptions").size() == 1);
    CHECK(payload.at("exceptions").at(0) == nlohmann::json::array({"0", "1"}));
    VerifyOutcome v = verify_certificate(cert.doc);
    CHECK(v.pass);
}

TEST_CASE("exception scan: adversarial roots show up as prefix exceptions") {
    SeriesSpec spec = SeriesSpec::adversarial({poly({-1, 1}), poly({1, 1})}, 2);
    SeriesSpec bounded = spec;
    bounded.declare_bounded(BigInt(1));  // |Q_2| = 1 here, so the box is honest
    Certificate cert = exception_scan(bounded, 1, 2);
    const nlohmann::json& exceptions = cert.doc.at("payload").at("exceptions");
    bool found_one = false;
    for (const auto& e : exceptions)
        if (e == nlohmann::json::array({"-1", "1"})) found_one = true;
    CHECK(found_one);
}

TEST_CASE("exception scan: quadratic Northcott box") {
    Certificate cert = exception_scan(SeriesSpec::factorial(), 2, 3);
    const nlohmann::json& payload = cert.doc.at("payload");
    // quadratic candidates join the degree-1 ones; zero stays the only exception
    CHECK(payload.at("candidates").size() > 100);
    REQUIRE(payload.at("exceptions").size() == 1);
    CHECK(payload.at("exceptions").at(0) == nlohmann::json::array({"0", "1"}));
    auto has = [&](std::vector<std::string> coeffs) {
        nlohmann::json want = coeffs;
        for (const auto& c : payload.at("candidates"))
            if (c == want) return true;
        return false;
    };
    CHECK(has({"-2", "0", "1"}));  // sqrt 2
    CHECK(has({"-1", "0", "2"}));  // 2^{-1/2}
    CHECK(has({"1", "1", "1"}));   // third root of unity
    CHECK(has({"-1", "-1", "1"})); // golden ratio pair
    CHECK(has({"-3", "0", "1"}));  // sqrt 3: height (log 3)/2 is under log 2
    CHECK_FALSE(has({"-5", "0", "1"}));  // sqrt 5: height (log 5)/2 exceeds log 2
}

TEST_CASE("exception scan parameter errors") {
    CHECK_THROWS_AS(exception_scan(SeriesSpec::factorial(), 0, 3), DomainError);
    SeriesSpec unbounded = SeriesSpec::adversarial({poly({-1, 1})}, 1);
    CHECK_THROWS_AS(exception_scan(unbounded, 1, 2), DomainError);
}

TEST_CASE("scan budgets are enforced") {
    SeriesSpec spec = SeriesSpec::factorial();
    CHECK_THROWS_AS(lower_degree_scan(spec, rational_alpha(1, 2), 4, BigInt(100), 3.0), CapError);
}

TEST_CASE("determinism: repeated scans agree byte for byte") {
    SeriesSpec spec = SeriesSpec::factorial();
    Certificate a = lower_degree_scan(spec, rational_alpha(1, 2), 1, BigInt(5), 3.0);
    Certificate b = lower_degree_scan(spec, rational_alpha(1, 2), 1, BigInt(5), 3.0);
    CHECK(a.canonical_text() == b.canonical_text());
    Certificate c = exception_scan(spec, 1, 3);
    Certificate d = exception_scan(spec, 1, 3);
    CHECK(c.canonical_text() == d.canonical_text());
}

TEST_CASE("simplicity") {
    CHECK(simplicity_check(*NumberField::create(poly({-2, 0, 0, 1}))));        // prime degree
    CHECK(simplicity_check(*NumberField::rationals()));                        // Q itself
    CHECK_FALSE(simplicity_check(*NumberField::create(poly({-2, 0, 0, 0, 1}))));  // D4
    CHECK_FALSE(simplicity_check(*NumberField::create(poly({1, 1, 1, 1, 1}))));   // C4
    CHECK_FALSE(simplicity_check(*NumberField::create(poly({1, 0, 0, 0, 1}))));   // V4
    CHECK(simplicity_check(*NumberField::create(poly({12, 8, 0, 0, 1}))));        // A4
    CHECK(simplicity_check(*NumberField::create(poly({-1, -1, 0, 0, 1}))));       // S4
    // degree 6 is out of range for the label table
    std::vector<BigInt> sext(7, BigInt(0));
    sext[0] = -2;
    sext[6] = 1;
    CHECK_THROWS_AS(simplicity_check(*NumberField::create(IntPolynomial(sext))), DomainError);
}
