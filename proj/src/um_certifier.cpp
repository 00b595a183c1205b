#include "serieslab/um_certifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace serieslab {

namespace {

constexpr int kCheckerVersion = 1;
constexpr mpfr_prec_t kScanPrec = 208;

nlohmann::json height_json(const HeightEnclosure& h) {
    nlohmann::json j;
    j["lower"] = h.lower.to_hex();
    j["precision_bits"] = static_cast<long>(h.precision_used);
    j["upper"] = h.upper.to_hex();
    return j;
}

Real exp_lower(const Real& exponent_upper_magnitude) {
    // e^{-x} rounded down for x = exponent_upper_magnitude
    Real out(96);
    Real neg(96);
    mpfr_neg(neg.raw(), exponent_upper_magnitude.raw(), MPFR_RNDD);
    mpfr_exp(out.raw(), neg.raw(), MPFR_RNDD);
    return out;
}

}  // namespace

nlohmann::json algebraic_point_json(const NFElement& alpha) {
    nlohmann::json j;
    j["box"] = ball_json(eval_element(alpha, 96));
    j["minpoly"] = poly_json(minimal_polynomial(alpha));
    return j;
}

NFElement algebraic_point_from_json(const nlohmann::json& j) {
    IntPolynomial m = poly_from_json(j.at("minpoly"));
    ComplexBall box = ball_from_json(j.at("box"));
    auto field = NumberField::create_with_box(std::move(m), box);
    return field->generator();
}

// ---------------------------------------------------------------------------
// degree profile

nlohmann::json DegreeProfile::to_json() const {
    nlohmann::json j;
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row;
        row["n"] = r.n;
        row["s_n"] = r.s_n.get_str();
        row["degree"] = r.degree;
        row["height"] = height_json(r.height);
        row["block_nonzero"] = r.block_nonzero;
        row["partial_poly_height"] = r.partial_poly_height;
        rs.push_back(row);
    }
    j["rows"] = rs;
    j["stabilized_m"] = stabilized_m ? nlohmann::json(*stabilized_m) : nlohmann::json(nullptr);
    j["heuristic_caveat"] = heuristic_caveat;
    j["mahler_condition_prefix"] = mahler_condition_prefix;
    return j;
}

DegreeProfile degree_profile(const SeriesSpec& spec, const NFElement& alpha, int prefix) {
    if (prefix < 2) throw DomainError("degree profile needs a prefix >= 2");
    if (prefix > spec.max_block()) throw DomainError("prefix exceeds the available blocks");
    DegreeProfile profile;
    const auto field = alpha.field_ptr();
    NFElement f = field->zero();
    std::vector<NFElement> values;
    BigInt max_coeff(0);
    for (int n = 1; n <= prefix; ++n) {
        NFElement block = block_value(spec, alpha, n);
        f = f + block;
        values.push_back(f);
        // affine height of the truncation polynomial over the touched window
        for (BigInt k = spec.t(n - 1); k <= spec.s(n); ++k) {
            BigInt a = abs(spec.coeff(k));
            if (a > max_coeff) max_coeff = a;
        }
        DegreeProfileRow row;
        row.n = n;
        row.s_n = spec.s(n);
        row.block_nonzero = !block.is_zero();
        row.degree = f.is_zero() ? 1 : element_degree(f);
        row.height = height(f, 1e-9);
        Real lm(64);
        if (max_coeff > 0) {
            Real mc = Real::from_bigint(max_coeff, 96, MPFR_RNDN);
            mpfr_log(lm.raw(), mc.raw(), MPFR_RNDN);
            row.partial_poly_height = lm.to_double();
        }
        if (row.block_nonzero) profile.mahler_condition_prefix = true;
        profile.rows.push_back(std::move(row));
    }
    // stabilized degree heuristic over the trailing half
    int start = prefix - (prefix + 1) / 2;  // first index (0-based) of the last ceil(N/2) rows
    std::map<int, std::vector<const NFElement*>> by_degree;
    for (int i = start; i < prefix; ++i)
        by_degree[profile.rows[static_cast<std::size_t>(i)].degree].push_back(
            &values[static_cast<std::size_t>(i)]);
    for (const auto& [deg, vals] : by_degree) {
        bool has_two_distinct = false;
        for (std::size_t i = 0; i < vals.size() && !has_two_distinct; ++i)
            for (std::size_t j = i + 1; j < vals.size(); ++j)
                if (!(*vals[i] == *vals[j])) {
                    has_two_distinct = true;
                    break;
                }
        if (has_two_distinct) {
            profile.stabilized_m = deg;
            break;
        }
    }
    return profile;
}

// ---------------------------------------------------------------------------
// witnesses

std::string Certificate::canonical_text() const { return serieslab::canonical_text(doc); }

Certificate um_witness(const SeriesSpec& spec, const NFElement& alpha, double w, int m) {
    if (w < 0) throw DomainError("approximation exponent w must be >= 0");
    if (m < 1) throw DomainError("target degree must be >= 1");
    ComplexBall alpha_value = eval_element(alpha, 96);
    const long cap = std::min<long>(Limits::current().witness_index_cap, spec.max_block());
    const auto field = alpha.field_ptr();
    NFElement f = field->zero();
    for (int n = 1; n <= cap; ++n) {
        f = f + block_value(spec, alpha, n);
        IntPolynomial minpoly = f.is_zero()
                                    ? IntPolynomial(std::vector<BigInt>{BigInt(0), BigInt(1)})
                                    : minimal_polynomial(f);
        if (minpoly.degree() != m) continue;
        HeightEnclosure h = height_from_minpoly(minpoly, 1e-9);
        TailBound tb = tail_bound(spec, alpha_value, n);
        // threshold e^{-w h_upper}, rounded down so the comparison is rigorous
        Real wh(96);
        mpfr_mul_d(wh.raw(), h.upper.raw(), w, MPFR_RNDU);
        Real threshold = exp_lower(wh);
        if (!(tb.bound <= threshold)) continue;
        Certificate cert;
        cert.doc["checker_version"] = kCheckerVersion;
        cert.doc["kind"] = "um_witness";
        cert.doc["series"] = spec.to_json();
        cert.doc["alpha"] = algebraic_point_json(alpha);
        nlohmann::json payload;
        payload["n"] = n;
        payload["w"] = w;
        payload["m"] = m;
        payload["minpoly_of_partial_sum"] = poly_json(minpoly);
        payload["height"] = height_json(h);
        payload["s_n"] = spec.s(n).get_str();
        payload["t_n"] = spec.t(n).get_str();
        payload["tail_theta"] = tb.theta.to_hex();
        payload["tail_c"] = tb.c.to_hex();
        payload["tail_bound"] = tb.bound.to_hex();
        payload["threshold"] = threshold.to_hex();
        cert.doc["payload"] = payload;
        return cert;
    }
    throw CapError("no witness found up to index cap");
}

// ---------------------------------------------------------------------------
// lower-degree scan

namespace {

struct Exclusion {
    int n;
    IntPolynomial minpoly;
    NFElement value;
};

// which isolated root of Q carries this exact value
int matching_root_index(const std::vector<RootBall>& roots, const NFElement& value) {
    const long cap = Limits::current().precision_cap_bits;
    for (mpfr_prec_t wp = 128; wp <= cap; wp *= 2) {
        ComplexBall v = eval_element(value, wp);
        int hit = -1;
        bool ambiguous = false;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (!roots[i].ball.certainly_disjoint(v)) {
                if (hit >= 0) ambiguous = true;
                hit = static_cast<int>(i);
            }
        }
        if (hit >= 0 && !ambiguous) return hit;
        if (hit < 0) return -1;  // value is not a root at all
    }
    throw CapError("root matching failed at cap");
}

}  // namespace

Certificate lower_degree_scan(const SeriesSpec& spec, const NFElement& alpha, int max_degree,
                              const BigInt& coeff_bound, double eta_hat) {
    if (max_degree < 1) throw DomainError("degree bound must be >= 1");
    if (coeff_bound < 1) throw DomainError("coefficient bound must be >= 1");
    if (eta_hat < 0) throw DomainError("eta must be >= 0");
    // enumeration budget
    {
        double planned = 0;
        double b = coeff_bound.get_d();
        for (int e = 1; e <= max_degree; ++e) planned += b * std::pow(2 * b + 1, e);
        if (planned > static_cast<double>(Limits::current().enumeration_budget))
            throw CapError("scan enumeration budget exceeded");
    }
    ComplexBall gamma = value_enclosure(spec, alpha, Real::pow2(-320));
    // partial sums still inside the coefficient box are excluded from the scan
    std::vector<Exclusion> exclusions;
    {
        const auto field = alpha.field_ptr();
        NFElement f = field->zero();
        const int excl_cap = std::min(spec.max_block(), 24);
        for (int n = 1; n <= excl_cap; ++n) {
            f = f + block_value(spec, alpha, n);
            IntPolynomial m = f.is_zero()
                                  ? IntPolynomial(std::vector<BigInt>{BigInt(0), BigInt(1)})
                                  : minimal_polynomial(f);
            if (m.degree() > max_degree || m.max_abs_coeff() > coeff_bound) break;
            exclusions.push_back({n, std::move(m), f});
        }
    }
    Real min_lo(96), min_hi(96);
    mpfr_set_inf(min_lo.raw(), 1);
    mpfr_set_inf(min_hi.raw(), 1);
    nlohmann::json argmin;
    unsigned long candidates = 0, roots_checked = 0, excluded_hits = 0;
    const long b = coeff_bound.get_si();
    for (int e = 1; e <= max_degree; ++e) {
        std::vector<long> cs(static_cast<std::size_t>(e) + 1);
        // lexicographic odometer: leading 1..B, the rest -B..B
        std::vector<long> idx(static_cast<std::size_t>(e) + 1, -b);
        idx[static_cast<std::size_t>(e)] = 1;
        bool done = false;
        while (!done) {
            std::vector<BigInt> coeffs(static_cast<std::size_t>(e) + 1);
            for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = idx[i];
            IntPolynomial q{std::move(coeffs)};
            ++candidates;
            bool usable = q.degree() == e && content_primitive(q).first == 1 && is_irreducible(q);
            if (usable) {
                HeightEnclosure hq = height_from_minpoly(q, 1e-12);
                std::vector<RootBall> roots = isolate_roots(q, kScanPrec);
                for (std::size_t ri = 0; ri < roots.size(); ++ri) {
                    ++roots_checked;
                    // exclusion: beta equal to a partial sum
                    bool excluded = false;
                    for (const Exclusion& ex : exclusions) {
                        if (ex.minpoly != q) continue;
                        int match = matching_root_index(roots, ex.value);
                        if (match == static_cast<int>(ri)) {
                            excluded = true;
                            break;
                        }
                    }
                    if (excluded) {
                        ++excluded_hits;
                        continue;
                    }
                    RealInterval ab = gamma.sub(roots[ri].ball).abs_bounds();
                    if (ab.lo.sign() <= 0)
                        throw CapError("scan could not separate a candidate from the series value");
                    Real obj_lo(96), obj_hi(96), tmp(96);
                    mpfr_log(obj_lo.raw(), ab.lo.raw(), MPFR_RNDD);
                    mpfr_mul_d(tmp.raw(), hq.lower.raw(), eta_hat, MPFR_RNDD);
                    mpfr_add(obj_lo.raw(), obj_lo.raw(), tmp.raw(), MPFR_RNDD);
                    mpfr_log(obj_hi.raw(), ab.hi.raw(), MPFR_RNDU);
                    mpfr_mul_d(tmp.raw(), hq.upper.raw(), eta_hat, MPFR_RNDU);
                    mpfr_add(obj_hi.raw(), obj_hi.raw(), tmp.raw(), MPFR_RNDU);
                    if (obj_hi < min_hi) {
                        argmin = nlohmann::json();
                        argmin["minpoly"] = poly_json(q);
                        argmin["root_index"] = ri;
                        argmin["root_box"] = ball_json(roots[ri].ball);
                        argmin["objective_upper"] = obj_hi.to_hex();
                        min_hi = obj_hi;
                    }
                    if (obj_lo < min_lo) min_lo = obj_lo;
                }
            }
            // advance odometer (lowest coefficient fastest)
            done = true;
            for (std::size_t i = 0; i < idx.size(); ++i) {
                long limit = b;
                if (idx[i] < limit) {
                    ++idx[i];
                    for (std::size_t j = 0; j < i; ++j) idx[j] = -b;
                    done = false;
                    break;
                }
                if (i + 1 == idx.size()) done = true;
            }
        }
    }
    if (argmin.is_null()) throw DomainError("scan box contained no admissible algebraic numbers");
    Certificate cert;
    cert.doc["checker_version"] = kCheckerVersion;
    cert.doc["kind"] = "lower_scan";
    cert.doc["series"] = spec.to_json();
    cert.doc["alpha"] = algebraic_point_json(alpha);
    nlohmann::json payload;
    payload["degree_bound"] = max_degree;
    payload["coeff_bound"] = coeff_bound.get_str();
    payload["eta_hat"] = eta_hat;
    payload["candidates_enumerated"] = candidates;
    payload["roots_checked"] = roots_checked;
    payload["excluded_partial_sums"] = [&] {
        nlohmann::json arr = nlohmann::json::array();
        for (const Exclusion& ex : exclusions) {
            nlohmann::json e;
            e["n"] = ex.n;
            e["minpoly"] = poly_json(ex.minpoly);
            arr.push_back(e);
        }
        return arr;
    }();
    payload["excluded_root_hits"] = excluded_hits;
    payload["min_lower"] = min_lo.to_hex();
    payload["min_upper"] = min_hi.to_hex();
    payload["log_c"] = min_lo.to_hex();
    payload["argmin"] = argmin;
    cert.doc["payload"] = payload;
    return cert;
}

// ---------------------------------------------------------------------------
// exception scan

Certificate exception_scan(const SeriesSpec& spec, int max_degree, int prefix) {
    if (max_degree < 1) throw DomainError("degree must be >= 1");
    if (prefix < 1) throw DomainError("prefix must be >= 1");
    if (!spec.bounded_A()) throw DomainError("exception scan requires a bounded-type series");
    const BigInt a = *spec.bounded_A();
    const BigRational height_cap = BigRational(2) * a;  // h <= log(2A)
    const double log_cap = std::log(2.0 * a.get_d());
    nlohmann::json candidates = nlohmann::json::array();
    nlohmann::json exceptions = nlohmann::json::array();
    unsigned long enumerated = 0;
    for (int e = 1; e <= max_degree; ++e) {
        // coefficient box from the log sandwich: |M| <= (2A)^e 2^e
        BigInt box = big_pow(2 * a, static_cast<unsigned long>(e)) *
                     big_pow(BigInt(2), static_cast<unsigned long>(e));
        double planned = box.get_d() * std::pow(2 * box.get_d() + 1, e);
        if (planned > static_cast<double>(Limits::current().enumeration_budget))
            throw CapError("exception scan enumeration budget exceeded");
        const long bb = box.get_si();
        std::vector<long> idx(static_cast<std::size_t>(e) + 1, -bb);
        idx[static_cast<std::size_t>(e)] = 1;
        bool done = false;
        while (!done) {
            std::vector<BigInt> coeffs(static_cast<std::size_t>(e) + 1);
            for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = idx[i];
            IntPolynomial q{std::move(coeffs)};
            ++enumerated;
            bool keep = q.degree() == e && content_primitive(q).first == 1 && is_irreducible(q);
            if (keep) {
                // Northcott filter: height at most log(2A)
                if (e == 1) {
                    BigRational root(-q.coeff(0), q.coeff(1));
                    root.canonicalize();
                    BigInt num_abs = abs(root.get_num());
                    BigInt mx = std::max(num_abs, BigInt(root.get_den()));
                    keep = BigRational(mx) <= height_cap;
                } else {
                    HeightEnclosure h = height_from_minpoly(q, 1e-9);
                    keep = h.lower.to_double() <= log_cap + 1e-9;
                }
            }
            if (keep) {
                candidates.push_back(poly_json(q));
                auto field = NumberField::create(q);
                NFElement root = field->generator();
                bool all_blocks_vanish = true;
                for (int n = 1; n <= prefix && all_blocks_vanish; ++n)
                    if (!block_value(spec, root, n).is_zero()) all_blocks_vanish = false;
                if (all_blocks_vanish) exceptions.push_back(poly_json(q));
            }
            done = true;
            for (std::size_t i = 0; i < idx.size(); ++i) {
                if (idx[i] < bb) {
                    ++idx[i];
                    for (std::size_t j = 0; j < i; ++j) idx[j] = -bb;
                    done = false;
                    break;
                }
                if (i + 1 == idx.size()) done = true;
            }
        }
    }
    Certificate cert;
    cert.doc["checker_version"] = kCheckerVersion;
    cert.doc["kind"] = "exception_scan";
    cert.doc["series"] = spec.to_json();
    nlohmann::json payload;
    payload["degree_bound"] = max_degree;
    payload["prefix"] = prefix;
    payload["coefficient_bound_log"] = log_cap;
    payload["enumerated"] = enumerated;
    payload["candidates"] = candidates;
    payload["exceptions"] = exceptions;
    cert.doc["payload"] = payload;
    return cert;
}

// ---------------------------------------------------------------------------
// simplicity

bool simplicity_check(const NumberField& field) {
    const int deg = field.degree();
    if (deg == 1) return true;
    auto is_prime = [](int n) {
        if (n < 2) return false;
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    if (is_prime(deg)) return true;
    if (deg == 4) {
        IntPolynomial monic =
            field.defining_poly().is_monic() ? field.defining_poly() : monicize(field.defining_poly());
        switch (galois_group(monic)) {
            case GroupLabel::S4:
            case GroupLabel::A4: return true;
            case GroupLabel::C4:
            case GroupLabel::V4:
            case GroupLabel::D4: return false;
            default: break;
        }
    }
    throw DomainError("simplicity undecided at this degree");
}

// ---------------------------------------------------------------------------
// verification

namespace {

VerifyOutcome fail(const std::string& detail) { return {false, detail}; }

VerifyOutcome verify_um_witness(const nlohmann::json& doc) {
    SeriesSpec spec = SeriesSpec::from_json(doc.at("series"));
    NFElement alpha = algebraic_point_from_json(doc.at("alpha"));
    const nlohmann::json& payload = doc.at("payload");
    const int n = payload.at("n").get<int>();
    const int m = payload.at("m").get<int>();
    const double w = payload.at("w").get<double>();
    NFElement f = partial_sum(spec, alpha, n);
    IntPolynomial minpoly = f.is_zero()
                                ? IntPolynomial(std::vector<BigInt>{BigInt(0), BigInt(1)})
                                : minimal_polynomial(f);
    if (minpoly != poly_from_json(payload.at("minpoly_of_partial_sum")))
        return fail("recheck failed: partial-sum minimal polynomial mismatch");
    if (minpoly.degree() != m) return fail("recheck failed: degree mismatch");
    if (spec.s(n).get_str() != payload.at("s_n").get<std::string>() ||
        spec.t(n).get_str() != payload.at("t_n").get<std::string>())
        return fail("recheck failed: block window mismatch");
    HeightEnclosure h = height_from_minpoly(minpoly, 1e-9);
    TailBound tb = tail_bound(spec, eval_element(alpha, 96), n);
    Real wh(96);
    mpfr_mul_d(wh.raw(), h.upper.raw(), w, MPFR_RNDU);
    Real threshold = exp_lower(wh);
    if (!(tb.bound <= threshold)) return fail("recheck failed: witness inequality does not hold");
    if (tb.bound.to_hex() != payload.at("tail_bound").get<std::string>())
        return fail("recheck failed: tail bound mismatch");
    if (threshold.to_hex() != payload.at("threshold").get<std::string>())
        return fail("recheck failed: threshold mismatch");
    if (h.upper.to_hex() != payload.at("height").at("upper").get<std::string>() ||
        h.lower.to_hex() != payload.at("height").at("lower").get<std::string>())
        return fail("recheck failed: height enclosure mismatch");
    return {true, "witness inequality re-established"};
}

VerifyOutcome verify_lower_scan(const nlohmann::json& doc) {
    SeriesSpec spec = SeriesSpec::from_json(doc.at("series"));
    NFElement alpha = algebraic_point_from_json(doc.at("alpha"));
    const nlohmann::json& payload = doc.at("payload");
    Certificate fresh =
        lower_degree_scan(spec, alpha, payload.at("degree_bound").get<int>(),
                          BigInt(payload.at("coeff_bound").get<std::string>()),
                          payload.at("eta_hat").get<double>());
    const nlohmann::json& fp = fresh.doc.at("payload");
    for (const char* key : {"min_lower", "min_upper", "log_c", "candidates_enumerated",
                            "roots_checked", "excluded_root_hits"}) {
        if (fp.at(key) != payload.at(key))
            return fail(std::string("recheck failed: field mismatch on ") + key);
    }
    if (fp.at("argmin") != payload.at("argmin"))
        return fail("recheck failed: attaining point mismatch");
    if (fp.at("excluded_partial_sums") != payload.at("excluded_partial_sums"))
        return fail("recheck failed: exclusion list mismatch");
    return {true, "scan reproduced bit-identically"};
}

VerifyOutcome verify_exception_scan(const nlohmann::json& doc) {
    SeriesSpec spec = SeriesSpec::from_json(doc.at("series"));
    const nlohmann::json& payload = doc.at("payload");
    Certificate fresh = exception_scan(spec, payload.at("degree_bound").get<int>(),
                                       payload.at("prefix").get<int>());
    const nlohmann::json& fp = fresh.doc.at("payload");
    if (fp.at("candidates") != payload.at("candidates"))
        return fail("recheck failed: candidate set mismatch");
    if (fp.at("exceptions") != payload.at("exceptions"))
        return fail("recheck failed: exception set mismatch");
    return {true, "scan reproduced bit-identically"};
}

}  // namespace

VerifyOutcome verify_certificate(const nlohmann::json& doc) {
    if (!doc.contains("kind") || !doc.contains("checker_version"))
        return fail("recheck failed: not a certificate");
    if (doc.at("checker_version").get<int>() != kCheckerVersion)
        return fail("recheck failed: unsupported checker version");
    const std::string kind = doc.at("kind").get<std::string>();
    try {
        if (kind == "um_witness") return verify_um_witness(doc);
        if (kind == "lower_scan") return verify_lower_scan(doc);
        if (kind == "exception_scan") return verify_exception_scan(doc);
    } catch (const DomainError& e) {
        return fail(std::string("recheck failed: ") + e.what());
    } catch (const std::logic_error& e) {
        return fail(std::string("recheck failed: ") + e.what());
    }
    return fail("recheck failed: unknown certificate kind " + kind);
}

}  // namespace serieslab
