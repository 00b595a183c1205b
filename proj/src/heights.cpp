#include "serieslab/heights.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace serieslab {

namespace {

constexpr mpfr_prec_t kAux = 96;

Real log_directed(const BigInt& v, mpfr_rnd_t rnd) {
    Real x = Real::from_bigint(v, kAux, rnd == MPFR_RNDU ? MPFR_RNDU : MPFR_RNDD);
    Real out(kAux);
    mpfr_log(out.raw(), x.raw(), rnd);
    return out;
}

double log2_const() { return 0.69314718055994530942; }

}  // namespace

double HeightEnclosure::width() const {
    Real w(64);
    mpfr_sub(w.raw(), upper.raw(), lower.raw(), MPFR_RNDU);
    return w.to_double();
}

double HeightEnclosure::midpoint() const { return (lower.to_double() + upper.to_double()) / 2; }

HeightEnclosure height_from_minpoly(const IntPolynomial& poly_in, double tolerance) {
    if (poly_in.degree() < 1) throw DomainError("minimal polynomial must be nonconstant");
    if (tolerance <= 0) throw DomainError("tolerance must be positive");
    // the Mahler-measure formula needs the primitive normalization
    const IntPolynomial minpoly = content_primitive(poly_in).second;
    const int n = minpoly.degree();
    const long cap = Limits::current().precision_cap_bits;
    for (mpfr_prec_t prec = 128; prec <= cap; prec *= 2) {
        std::vector<RootBall> roots = isolate_roots(minpoly, prec);
        Real lo = log_directed(abs(minpoly.leading()), MPFR_RNDD);
        Real hi = log_directed(abs(minpoly.leading()), MPFR_RNDU);
        bool indeterminate = false;
        for (const RootBall& r : roots) {
            RealInterval lp;
            try {
                lp = log_plus(r.ball);
            } catch (const DomainError&) {
                indeterminate = true;
                break;
            }
            for (int k = 0; k < r.multiplicity; ++k) {
                mpfr_add(lo.raw(), lo.raw(), lp.lo.raw(), MPFR_RNDD);
                mpfr_add(hi.raw(), hi.raw(), lp.hi.raw(), MPFR_RNDU);
            }
        }
        if (indeterminate) continue;
        mpfr_div_ui(lo.raw(), lo.raw(), static_cast<unsigned long>(n), MPFR_RNDD);
        mpfr_div_ui(hi.raw(), hi.raw(), static_cast<unsigned long>(n), MPFR_RNDU);
        if (lo.sign() < 0) lo = Real::zero(kAux);
        if (hi.sign() < 0) hi = Real::zero(kAux);
        Real w(64);
        mpfr_sub(w.raw(), hi.raw(), lo.raw(), MPFR_RNDU);
        if (w.to_double() <= tolerance) {
            // minimal-polynomial log sandwich, certified both ways
            Real lm_lo = log_directed(minpoly.max_abs_coeff(), MPFR_RNDD);
            Real lm_hi = log_directed(minpoly.max_abs_coeff(), MPFR_RNDU);
            double nh_lo = n * lo.to_double(), nh_hi = n * hi.to_double();
            double margin = n * log2_const() + 1e-9;
            if (lm_lo.to_double() - nh_hi > margin || nh_lo - lm_hi.to_double() > margin)
                throw std::logic_error("height: minimal-polynomial log sandwich violated");
            HeightEnclosure out{std::move(lo), std::move(hi), prec};
            return out;
        }
    }
    throw CapError("height enclosure exceeded the precision cap");
}

HeightEnclosure height(const NFElement& beta, double tolerance) {
    if (beta.is_zero()) {
        HeightEnclosure out{Real::zero(kAux), Real::zero(kAux), 64};
        return out;
    }
    return height_from_minpoly(minimal_polynomial(beta), tolerance);
}

std::pair<double, double> poly_heights(const IntPolynomial& p) {
    if (p.is_zero()) throw DomainError("zero polynomial has no height");
    auto [content, prim] = content_primitive(p);
    (void)prim;
    Real affine(64), cont(64);
    Real m = Real::from_bigint(p.max_abs_coeff(), kAux, MPFR_RNDN);
    mpfr_log(affine.raw(), m.raw(), MPFR_RNDN);
    Real c = Real::from_bigint(content, kAux, MPFR_RNDN);
    mpfr_log(cont.raw(), c.raw(), MPFR_RNDN);
    return {affine.to_double(), affine.to_double() - cont.to_double()};
}

bool element_is_real(const NFElement& beta) {
    if (beta.is_rational()) return true;
    IntPolynomial m = minimal_polynomial(beta);
    const long cap = Limits::current().precision_cap_bits;
    for (mpfr_prec_t wp = 128; wp <= cap; wp *= 2) {
        ComplexBall v = eval_element(beta, wp);
        if (v.certainly_nonreal()) return false;
        std::vector<RootBall> roots = isolate_roots(m, wp);
        const ComplexBall* mine = nullptr;
        bool ambiguous = false;
        for (const RootBall& r : roots) {
            if (!r.ball.certainly_disjoint(v)) {
                if (mine) ambiguous = true;
                mine = &r.ball;
            }
        }
        if (!mine || ambiguous) continue;
        if (mine->certainly_nonreal()) return false;
        ComplexBall cb = mine->conj();
        if (cb.certainly_disjoint(*mine)) return false;
        bool meets_other = false;
        for (const RootBall& r : roots) {
            if (&r.ball == mine) continue;
            if (!cb.certainly_disjoint(r.ball)) meets_other = true;
        }
        if (!meets_other) return true;
    }
    throw CapError("could not decide realness at cap");
}

LiouvilleReport liouville_check(const NFElement& beta) {
    if (beta.is_zero()) throw DomainError("Liouville check requires a nonzero element");
    LiouvilleReport rep;
    IntPolynomial m = minimal_polynomial(beta);
    rep.degree = m.degree();
    rep.delta = element_is_real(beta) ? 1 : 2;
    HeightEnclosure h = height_from_minpoly(m, 1e-12);
    RealInterval ab = eval_element(beta, 160).abs_bounds();
    const int d = rep.degree;
    // e^{-d h / delta} and e^{d h / delta}, outer enclosures
    Real e_lo(kAux), e_hi(kAux), x(kAux);
    mpfr_mul_si(x.raw(), h.upper.raw(), -d, MPFR_RNDD);
    mpfr_div_ui(x.raw(), x.raw(), static_cast<unsigned long>(rep.delta), MPFR_RNDD);
    mpfr_exp(e_lo.raw(), x.raw(), MPFR_RNDD);
    mpfr_mul_si(x.raw(), h.upper.raw(), d, MPFR_RNDU);
    mpfr_div_ui(x.raw(), x.raw(), static_cast<unsigned long>(rep.delta), MPFR_RNDU);
    mpfr_exp(e_hi.raw(), x.raw(), MPFR_RNDU);
    rep.lower_bound = e_lo.to_double();
    rep.abs_value = (ab.lo.to_double() + ab.hi.to_double()) / 2;
    rep.upper_bound = e_hi.to_double();
    // violated only beyond enclosure widths
    bool lower_violated = e_lo > ab.hi;
    bool upper_violated = ab.lo > e_hi;
    rep.pass = !lower_violated && !upper_violated;
    return rep;
}

// ---------------------------------------------------------------------------
// audit harness

namespace {

std::string coords_string(const NFElement& e) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < e.coords().size(); ++i) {
        if (i) out << ",";
        out << e.coords()[i].get_str();
    }
    out << "]";
    return out.str();
}

void check_le(std::vector<AuditRecord>& out, const std::string& identity, const std::string& in,
              const HeightEnclosure& lhs, double rhs_lo, double rhs_hi) {
    AuditRecord r;
    r.identity = identity;
    r.inputs = in;
    r.lhs = lhs.midpoint();
    r.rhs = (rhs_lo + rhs_hi) / 2;
    r.slack = lhs.width() + (rhs_hi - rhs_lo) + 1e-12;
    r.pass = !(lhs.lower.to_double() > rhs_hi + 1e-12);
    out.push_back(std::move(r));
}

void check_eq(std::vector<AuditRecord>& out, const std::string& identity, const std::string& in,
              const HeightEnclosure& lhs, const HeightEnclosure& rhs) {
    AuditRecord r;
    r.identity = identity;
    r.inputs = in;
    r.lhs = lhs.midpoint();
    r.rhs = rhs.midpoint();
    r.slack = lhs.width() + rhs.width() + 1e-12;
    bool disjoint = lhs.lower.to_double() > rhs.upper.to_double() + 1e-12 ||
                    rhs.lower.to_double() > lhs.upper.to_double() + 1e-12;
    r.pass = !disjoint;
    out.push_back(std::move(r));
}

}  // namespace

std::vector<AuditRecord> audit_height_axioms(
    const std::vector<std::pair<NFElement, NFElement>>& sample, double tolerance) {
    std::vector<AuditRecord> out;
    const double ln2 = log2_const();
    for (const auto& [x, y] : sample) {
        const std::string in = coords_string(x) + "," + coords_string(y);
        HeightEnclosure hx = height(x, tolerance);
        HeightEnclosure hy = height(y, tolerance);
        // product and sum subadditivity
        HeightEnclosure hxy = height(x * y, tolerance);
        check_le(out, "height(xy) <= height(x)+height(y)", in, hxy,
                 hx.lower.to_double() + hy.lower.to_double(),
                 hx.upper.to_double() + hy.upper.to_double());
        HeightEnclosure hsum = height(x + y, tolerance);
        check_le(out, "height(x+y) <= height(x)+height(y)+log2", in, hsum,
                 hx.lower.to_double() + hy.lower.to_double() + ln2,
                 hx.upper.to_double() + hy.upper.to_double() + ln2);
        // power identity and inverse invariance
        HeightEnclosure hx2 = height(x * x, tolerance);
        HeightEnclosure two_hx{hx.lower, hx.upper, hx.precision_used};
        mpfr_mul_ui(two_hx.lower.raw(), two_hx.lower.raw(), 2, MPFR_RNDD);
        mpfr_mul_ui(two_hx.upper.raw(), two_hx.upper.raw(), 2, MPFR_RNDU);
        check_eq(out, "height(x^2) = 2 height(x)", in, hx2, two_hx);
        if (!x.is_zero()) {
            HeightEnclosure hinv = height(x.inverse(), tolerance);
            check_eq(out, "height(x^-1) = height(x)", in, hinv, hx);
        }
        // multiplication by the root of unity -1
        HeightEnclosure hneg = height(-x, tolerance);
        check_eq(out, "height(-x) = height(x)", in, hneg, hx);
        // minimal-polynomial log sandwich
        if (!x.is_zero()) {
            IntPolynomial mx = minimal_polynomial(x);
            int n = mx.degree();
            auto [haff, hproj] = poly_heights(mx);
            (void)haff;
            AuditRecord r;
            r.identity = "|log|M| - n height| <= n log2";
            r.inputs = in;
            r.lhs = std::abs(hproj - n * hx.midpoint());
            r.rhs = n * ln2;
            r.slack = n * hx.width() + 1e-12;
            r.pass = r.lhs <= r.rhs + r.slack;
            out.push_back(std::move(r));
            // root height bound: height(x) <= hp(M_x) + log 2
            check_le(out, "height(root) <= hp(P)+log2", in, hx, hproj + ln2, hproj + ln2);
            // factorization bound on M_x * M_y
            if (!y.is_zero()) {
                IntPolynomial my = minimal_polynomial(y);
                IntPolynomial prod = mx * my;
                auto [paff, pproj] = poly_heights(prod);
                (void)paff;
                double sum_lo = n * hx.lower.to_double() + my.degree() * hy.lower.to_double();
                double sum_hi = n * hx.upper.to_double() + my.degree() * hy.upper.to_double();
                AuditRecord r2;
                r2.identity = "|hp(PQ) - sum root heights| <= deg log2";
                r2.inputs = in;
                r2.lhs = std::abs(pproj - (sum_lo + sum_hi) / 2);
                r2.rhs = prod.degree() * ln2;
                r2.slack = (sum_hi - sum_lo) + 1e-12;
                r2.pass = r2.lhs <= r2.rhs + r2.slack;
                out.push_back(std::move(r2));
            }
        }
        // polynomial evaluation bound with a small fixed corpus
        const std::vector<IntPolynomial> corpus = {
            IntPolynomial(std::vector<BigInt>{BigInt(1), BigInt(0), BigInt(1)}),
            IntPolynomial(std::vector<BigInt>{BigInt(3), BigInt(-1), BigInt(0), BigInt(2)}),
        };
        for (const IntPolynomial& p : corpus) {
            // P(x) via field arithmetic
            NFElement val = x.field_ptr()->zero();
            for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
                val = val * x + x.field_ptr()->from_rational(BigRational(*it));
            HeightEnclosure hval = height(val, tolerance);
            int n = p.degree();
            double hp = poly_heights(p).first;
            double extra = hp + std::log(static_cast<double>(n + 1));
            check_le(out, "height(P(x)) <= n height(x)+height(P)+log(n+1)", in, hval,
                     n * hx.lower.to_double() + extra, n * hx.upper.to_double() + extra);
        }
    }
    return out;
}

std::string audit_report_jsonl(const std::vector<AuditRecord>& records) {
    std::ostringstream out;
    for (const AuditRecord& r : records) {
        nlohmann::json j;
        j["identity"] = r.identity;
        j["inputs"] = r.inputs;
        j["lhs"] = r.lhs;
        j["rhs"] = r.rhs;
        j["slack"] = r.slack;
        j["pass"] = r.pass;
        out << j.dump() << "\n";
    }
    return out.str();
}

}  // namespace serieslab
