#include "serieslab/certified_numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "serieslab/number_field.hpp"

namespace serieslab {

namespace {

constexpr mpfr_prec_t kRad = 64;  // radius precision; all radius ops round up

// One-ulp upper bound on the rounding error of the operation that produced x
// (ternary value t), accumulated into rad with outward rounding.
void absorb_rounding(Real& rad, int t, mpfr_srcptr x) {
    if (t == 0) return;
    if (mpfr_zero_p(x) || !mpfr_number_p(x))
        throw CapError("midpoint arithmetic left the exponent range");
    Real e(kRad);
    mpfr_set_ui_2exp(e.raw(), 1, mpfr_get_exp(x) - mpfr_get_prec(x), MPFR_RNDU);
    mpfr_add(rad.raw(), rad.raw(), e.raw(), MPFR_RNDU);
}

Real rad_add(const Real& a, const Real& b) {
    Real r(kRad);
    mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
    return r;
}

Real rad_mul(const Real& a, const Real& b) {
    Real r(kRad);
    mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
    return r;
}

// |midpoint| with directed rounding at radius precision
Real mid_abs(const ComplexBall& z, mpfr_rnd_t rnd) {
    Real r(kRad);
    mpfr_hypot(r.raw(), z.mid_re().raw(), z.mid_im().raw(), rnd);
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Real

Real Real::from_long(long v, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.raw(), v, MPFR_RNDN);
    return r;
}

Real Real::from_bigint(const BigInt& v, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_set_z(r.raw(), v.get_mpz_t(), rnd);
    return r;
}

Real Real::from_rational(const BigRational& v, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_set_q(r.raw(), v.get_mpq_t(), rnd);
    return r;
}

Real Real::zero(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_zero(r.raw(), 1);
    return r;
}

Real Real::pow2(long e, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
    return r;
}

BigRational Real::to_rational() const {
    if (!mpfr_number_p(x_)) throw DomainError("cannot convert non-finite value to rational");
    if (mpfr_zero_p(x_)) return BigRational(0);
    BigRational q;
    mpfr_get_q(q.get_mpq_t(), x_);
    return q;
}

std::string Real::to_hex() const {
    if (mpfr_nan_p(x_)) return "nan";
    if (mpfr_inf_p(x_)) return mpfr_sgn(x_) > 0 ? "inf" : "-inf";
    char* s = nullptr;
    mpfr_asprintf(&s, "%Ra", x_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Real Real::from_hex(const std::string& s, mpfr_prec_t prec) {
    Real r(prec);
    if (s == "nan") {
        mpfr_set_nan(r.raw());
        return r;
    }
    if (s == "inf" || s == "-inf") {
        mpfr_set_inf(r.raw(), s[0] == '-' ? -1 : 1);
        return r;
    }
    if (mpfr_set_str(r.raw(), s.c_str(), 0, MPFR_RNDN) != 0)
        throw DomainError("malformed numeric literal: " + s);
    return r;
}

std::string Real::to_decimal(std::size_t digits) const {
    if (mpfr_nan_p(x_)) return "nan";
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), x_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

double RealInterval::width() const {
    Real w(kRad);
    mpfr_sub(w.raw(), hi.raw(), lo.raw(), MPFR_RNDU);
    return w.to_double();
}

// ---------------------------------------------------------------------------
// ComplexBall

ComplexBall::ComplexBall(mpfr_prec_t prec) : re_(prec), im_(prec), rad_(kRad) {
    mpfr_set_zero(re_.raw(), 1);
    mpfr_set_zero(im_.raw(), 1);
    mpfr_set_zero(rad_.raw(), 1);
}

ComplexBall ball_with(Real re, Real im, Real rad) {
    ComplexBall b(re.prec());
    b.re_ = std::move(re);
    b.im_ = std::move(im);
    b.rad_ = std::move(rad);
    return b;
}

ComplexBall ComplexBall::from_rational(const BigRational& re, const BigRational& im,
                                       mpfr_prec_t prec) {
    ComplexBall b(prec);
    int t1 = mpfr_set_q(b.re_.raw(), re.get_mpq_t(), MPFR_RNDN);
    int t2 = mpfr_set_q(b.im_.raw(), im.get_mpq_t(), MPFR_RNDN);
    absorb_rounding(b.rad_, t1, b.re_.raw());
    absorb_rounding(b.rad_, t2, b.im_.raw());
    return b;
}

ComplexBall ComplexBall::exact_zero(mpfr_prec_t prec) { return ComplexBall(prec); }

ComplexBall ComplexBall::from_midpoint(const Real& re, const Real& im) {
    ComplexBall b(std::max(re.prec(), im.prec()));
    mpfr_set(b.re_.raw(), re.raw(), MPFR_RNDN);
    mpfr_set(b.im_.raw(), im.raw(), MPFR_RNDN);
    return b;
}

ComplexBall ComplexBall::add(const ComplexBall& o) const {
    ComplexBall out(std::max(prec(), o.prec()));
    out.rad_ = rad_add(rad_, o.rad_);
    int t1 = mpfr_add(out.re_.raw(), re_.raw(), o.re_.raw(), MPFR_RNDN);
    int t2 = mpfr_add(out.im_.raw(), im_.raw(), o.im_.raw(), MPFR_RNDN);
    absorb_rounding(out.rad_, t1, out.re_.raw());
    absorb_rounding(out.rad_, t2, out.im_.raw());
    return out;
}

ComplexBall ComplexBall::sub(const ComplexBall& o) const { return add(o.neg()); }

ComplexBall ComplexBall::neg() const {
    ComplexBall out(prec());
    mpfr_neg(out.re_.raw(), re_.raw(), MPFR_RNDN);
    mpfr_neg(out.im_.raw(), im_.raw(), MPFR_RNDN);
    out.rad_ = rad_;
    return out;
}

ComplexBall ComplexBall::conj() const {
    ComplexBall out(prec());
    mpfr_set(out.re_.raw(), re_.raw(), MPFR_RNDN);
    mpfr_neg(out.im_.raw(), im_.raw(), MPFR_RNDN);
    out.rad_ = rad_;
    return out;
}

ComplexBall ComplexBall::inflate(const Real& extra) const {
    ComplexBall out = *this;
    out.rad_ = rad_add(out.rad_, extra);
    return out;
}

ComplexBall ComplexBall::mul(const ComplexBall& o) const {
    mpfr_prec_t p = std::max(prec(), o.prec());
    ComplexBall out(p);
    // |ab - mid_a mid_b| <= |mid_a| rad_b + |mid_b| rad_a + rad_a rad_b
    Real ua = mid_abs(*this, MPFR_RNDU);
    Real ub = mid_abs(o, MPFR_RNDU);
    out.rad_ = rad_add(rad_add(rad_mul(ua, o.rad_), rad_mul(ub, rad_)), rad_mul(rad_, o.rad_));
    Real p1(p), p2(p);
    int t;
    t = mpfr_mul(p1.raw(), re_.raw(), o.re_.raw(), MPFR_RNDN);
    absorb_rounding(out.rad_, t, p1.raw());
    t = mpfr_mul(p2.raw(), im_.raw(), o.im_.raw(), MPFR_RNDN);
    absorb_rounding(out.rad_, t, p2.raw());
    t = mpfr_sub(out.re_.raw(), p1.raw(), p2.raw(), MPFR_RNDN);
    absorb_rounding(out.rad_, t, out.re_.raw());
    t = mpfr_mul(p1.raw(), re_.raw(), o.im_.raw(), MPFR_RNDN);
    absorb_rounding(out.rad_, t, p1.raw());
    t = mpfr_mul(p2.raw(), im_.raw(), o.re_.raw(), MPFR_RNDN);
    absorb_rounding(out.rad_, t, p2.raw());
    t = mpfr_add(out.im_.raw(), p1.raw(), p2.raw(), MPFR_RNDN);
    absorb_rounding(out.rad_, t, out.im_.raw());
    return out;
}

RealInterval ComplexBall::abs_bounds() const {
    mpfr_prec_t p = std::max<mpfr_prec_t>(prec(), kRad);
    Real hi(p), lo(p);
    mpfr_hypot(hi.raw(), re_.raw(), im_.raw(), MPFR_RNDU);
    mpfr_add(hi.raw(), hi.raw(), rad_.raw(), MPFR_RNDU);
    mpfr_hypot(lo.raw(), re_.raw(), im_.raw(), MPFR_RNDD);
    mpfr_sub(lo.raw(), lo.raw(), rad_.raw(), MPFR_RNDD);
    if (lo.sign() < 0) lo = Real::zero(p);
    return {std::move(lo), std::move(hi)};
}

bool ComplexBall::contains(const BigRational& re, const BigRational& im) const {
    // decided exactly: midpoint and radius are dyadic rationals
    BigRational dx = re_.to_rational() - re;
    BigRational dy = im_.to_rational() - im;
    BigRational r = rad_.to_rational();
    return dx * dx + dy * dy <= r * r;
}

bool ComplexBall::certainly_disjoint(const ComplexBall& o) const {
    Real dx(kRad), dy(kRad), dist_lo(kRad);
    mpfr_sub(dx.raw(), re_.raw(), o.re_.raw(), MPFR_RNDZ);
    mpfr_sub(dy.raw(), im_.raw(), o.im_.raw(), MPFR_RNDZ);
    mpfr_hypot(dist_lo.raw(), dx.raw(), dy.raw(), MPFR_RNDD);
    return dist_lo > rad_add(rad_, o.rad_);
}

bool ComplexBall::certainly_nonreal() const {
    Real im_lo(kRad);
    mpfr_abs(im_lo.raw(), im_.raw(), MPFR_RNDD);
    return im_lo > rad_;
}

std::string ComplexBall::to_string() const {
    std::ostringstream out;
    Real ia(im_.prec());
    mpfr_abs(ia.raw(), im_.raw(), MPFR_RNDN);
    out << "(" << re_.to_decimal() << (im_.sign() < 0 ? " - " : " + ") << ia.to_decimal()
        << "i) +/- " << rad_.to_decimal(8);
    return out.str();
}

// ---------------------------------------------------------------------------
// log+

RealInterval log_plus(const ComplexBall& z) {
    RealInterval ab = z.abs_bounds();
    mpfr_prec_t p = std::max<mpfr_prec_t>(z.prec(), 64);
    Real one = Real::from_long(1, kRad);
    if (ab.hi <= one) return {Real::zero(p), Real::zero(p)};
    if (ab.lo.sign() <= 0) throw DomainError("indeterminate log+; refine precision");
    Real hi(p), lo(p);
    mpfr_log(hi.raw(), ab.hi.raw(), MPFR_RNDU);
    if (ab.lo > one) {
        mpfr_log(lo.raw(), ab.lo.raw(), MPFR_RNDD);
        if (lo.sign() < 0) lo = Real::zero(p);
    } else {
        lo = Real::zero(p);
    }
    return {std::move(lo), std::move(hi)};
}

// ---------------------------------------------------------------------------
// Root isolation: Aberth-Ehrlich iteration plus residual-disk certification.

namespace {

// midpoint-only complex value for the iteration phase; no rigor required here
struct Cplx {
    Real re, im;
    explicit Cplx(mpfr_prec_t p) : re(p), im(p) {
        mpfr_set_zero(re.raw(), 1);
        mpfr_set_zero(im.raw(), 1);
    }
};

void cx_sub(Cplx& out, const Cplx& a, const Cplx& b) {
    mpfr_sub(out.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_sub(out.im.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
}

void cx_mul(Cplx& out, const Cplx& a, const Cplx& b, Real& t1, Real& t2) {
    mpfr_mul(t1.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    Real re_tmp(t1.prec());
    mpfr_sub(re_tmp.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    mpfr_mul(t1.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_add(out.im.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    mpfr_set(out.re.raw(), re_tmp.raw(), MPFR_RNDN);
}

void cx_div(Cplx& out, const Cplx& a, const Cplx& b) {
    mpfr_prec_t p = a.re.prec();
    Real d(p), t1(p), t2(p), n1(p), n2(p);
    mpfr_mul(t1.raw(), b.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), b.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_add(d.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    mpfr_mul(t1.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_add(n1.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    mpfr_mul(t1.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_sub(n2.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    mpfr_div(out.re.raw(), n1.raw(), d.raw(), MPFR_RNDN);
    mpfr_div(out.im.raw(), n2.raw(), d.raw(), MPFR_RNDN);
}

double cx_abs_approx(const Cplx& z) {
    Real h(64);
    mpfr_hypot(h.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
    return h.to_double();
}

// Horner evaluation of value and derivative at z using rounded coefficients.
void horner_both(const std::vector<Cplx>& coeffs, const Cplx& z, Cplx& val, Cplx& dval) {
    mpfr_prec_t p = z.re.prec();
    Cplx acc(p), dacc(p), tmp(p);
    Real t1(p), t2(p);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        cx_mul(tmp, dacc, z, t1, t2);
        mpfr_add(dacc.re.raw(), tmp.re.raw(), acc.re.raw(), MPFR_RNDN);
        mpfr_add(dacc.im.raw(), tmp.im.raw(), acc.im.raw(), MPFR_RNDN);
        cx_mul(tmp, acc, z, t1, t2);
        mpfr_add(acc.re.raw(), tmp.re.raw(), it->re.raw(), MPFR_RNDN);
        mpfr_add(acc.im.raw(), tmp.im.raw(), it->im.raw(), MPFR_RNDN);
    }
    val = acc;
    dval = dacc;
}

std::vector<Cplx> upscale(const std::vector<Cplx>& pts, mpfr_prec_t p) {
    std::vector<Cplx> out;
    out.reserve(pts.size());
    for (const Cplx& z : pts) {
        Cplx w(p);
        mpfr_set(w.re.raw(), z.re.raw(), MPFR_RNDN);
        mpfr_set(w.im.raw(), z.im.raw(), MPFR_RNDN);
        out.push_back(std::move(w));
    }
    return out;
}

std::vector<Cplx> aberth(const IntPolynomial& g, mpfr_prec_t wp, std::vector<Cplx> pts) {
    const int n = g.degree();
    std::vector<Cplx> coeffs;
    coeffs.reserve(g.coeffs().size());
    for (const BigInt& c : g.coeffs()) {
        Cplx z(wp);
        mpfr_set_z(z.re.raw(), c.get_mpz_t(), MPFR_RNDN);
        coeffs.push_back(std::move(z));
    }
    if (pts.empty()) {
        // perturbed circle at the Cauchy-style radius 1 + max|a_i/a_n|
        Real ratio(64), lead(64), tmp(64);
        mpfr_abs(lead.raw(), coeffs.back().re.raw(), MPFR_RNDN);
        mpfr_set_zero(ratio.raw(), 1);
        for (int i = 0; i < n; ++i) {
            mpfr_abs(tmp.raw(), coeffs[static_cast<std::size_t>(i)].re.raw(), MPFR_RNDN);
            mpfr_div(tmp.raw(), tmp.raw(), lead.raw(), MPFR_RNDN);
            if (tmp > ratio) ratio = tmp;
        }
        double r = 1.0 + ratio.to_double();
        if (!std::isfinite(r) || r > 1e18) r = 1e18;
        for (int k = 0; k < n; ++k) {
            double theta = 2.0 * 3.14159265358979323846 * (k + 0.35) / n + 0.27;
            double rr = r * (1.0 + 0.03 * ((k * 7) % 5));
            Cplx z(wp);
            mpfr_set_d(z.re.raw(), rr * std::cos(theta), MPFR_RNDN);
            mpfr_set_d(z.im.raw(), rr * std::sin(theta), MPFR_RNDN);
            pts.push_back(std::move(z));
        }
    } else {
        pts = upscale(pts, wp);
    }
    const int max_iter = 600;
    for (int iter = 0; iter < max_iter; ++iter) {
        bool converged = true;
        for (int i = 0; i < n; ++i) {
            Cplx& zi = pts[static_cast<std::size_t>(i)];
            Cplx val(wp), dval(wp);
            horner_both(coeffs, zi, val, dval);
            if (mpfr_zero_p(val.re.raw()) && mpfr_zero_p(val.im.raw())) continue;
            Cplx w(wp), one(wp);
            mpfr_set_ui(one.re.raw(), 1, MPFR_RNDN);
            cx_div(w, dval, val);
            Cplx diff(wp), inv(wp);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                cx_sub(diff, zi, pts[static_cast<std::size_t>(j)]);
                if (mpfr_zero_p(diff.re.raw()) && mpfr_zero_p(diff.im.raw())) {
                    mpfr_add_d(zi.re.raw(), zi.re.raw(), 1e-3 * (i + 1), MPFR_RNDN);
                    converged = false;
                    continue;
                }
                cx_div(inv, one, diff);
                mpfr_sub(w.re.raw(), w.re.raw(), inv.re.raw(), MPFR_RNDN);
                mpfr_sub(w.im.raw(), w.im.raw(), inv.im.raw(), MPFR_RNDN);
            }
            if (mpfr_zero_p(w.re.raw()) && mpfr_zero_p(w.im.raw())) {
                converged = false;
                continue;
            }
            Cplx delta(wp);
            cx_div(delta, one, w);
            mpfr_sub(zi.re.raw(), zi.re.raw(), delta.re.raw(), MPFR_RNDN);
            mpfr_sub(zi.im.raw(), zi.im.raw(), delta.im.raw(), MPFR_RNDN);
            double dz = cx_abs_approx(delta);
            double scale = 1.0 + cx_abs_approx(zi);
            int tol_exp = static_cast<int>(std::max<long>(-1000, -static_cast<long>(wp) + 6));
            if (dz > scale * std::ldexp(1.0, tol_exp)) converged = false;
        }
        if (converged) break;
    }
    return pts;
}

// Evaluate P on an exact-midpoint ball with exact integer coefficients.
ComplexBall eval_poly_ball(const IntPolynomial& p, const ComplexBall& z, mpfr_prec_t wp) {
    ComplexBall acc = ComplexBall::exact_zero(wp);
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
        acc = acc.mul(z).add(ComplexBall::from_rational(BigRational(*it), BigRational(0), wp));
    return acc;
}

// Residual inclusion disks: for pairwise distinct approximations z_i the disks
// D(z_i, n |P(z_i)| / (|lc| prod_{j!=i} |z_i - z_j|)) jointly contain all roots
// of P, and k pairwise-disjoint disks forming a connected component contain
// exactly k roots; with all disks disjoint each contains exactly one.
bool certify_roots(const IntPolynomial& g, const std::vector<Cplx>& pts, mpfr_prec_t wp,
                   mpfr_prec_t out_prec, std::vector<ComplexBall>& out) {
    const int n = g.degree();
    out.clear();
    std::vector<ComplexBall> mids;
    mids.reserve(static_cast<std::size_t>(n));
    for (const Cplx& z : pts) mids.push_back(ComplexBall::from_midpoint(z.re, z.im));
    Real lc_dn = Real::from_bigint(abs(g.leading()), kRad, MPFR_RNDD);
    std::vector<Real> radii;
    for (int i = 0; i < n; ++i) {
        ComplexBall val = eval_poly_ball(g, mids[static_cast<std::size_t>(i)], wp);
        Real num = val.abs_bounds().hi;
        mpfr_mul_ui(num.raw(), num.raw(), static_cast<unsigned long>(n), MPFR_RNDU);
        Real den = lc_dn;
        Real dx(kRad), dy(kRad), d(kRad);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            mpfr_sub(dx.raw(), mids[static_cast<std::size_t>(i)].mid_re().raw(),
                     mids[static_cast<std::size_t>(j)].mid_re().raw(), MPFR_RNDZ);
            mpfr_sub(dy.raw(), mids[static_cast<std::size_t>(i)].mid_im().raw(),
                     mids[static_cast<std::size_t>(j)].mid_im().raw(), MPFR_RNDZ);
            mpfr_hypot(d.raw(), dx.raw(), dy.raw(), MPFR_RNDD);
            mpfr_mul(den.raw(), den.raw(), d.raw(), MPFR_RNDD);
        }
        if (den.sign() <= 0) return false;
        Real r(kRad);
        mpfr_div(r.raw(), num.raw(), den.raw(), MPFR_RNDU);
        radii.push_back(std::move(r));
    }
    // radius target, relative to max(1, |z_i|)
    Real target = Real::pow2(-static_cast<long>(out_prec));
    Real one = Real::from_long(1, kRad);
    for (int i = 0; i < n; ++i) {
        Real scale = mid_abs(mids[static_cast<std::size_t>(i)], MPFR_RNDD);
        if (scale < one) scale = one;
        if (radii[static_cast<std::size_t>(i)] > rad_mul(scale, target)) return false;
    }
    // pairwise disjoint
    Real dx(kRad), dy(kRad), d(kRad);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            mpfr_sub(dx.raw(), mids[static_cast<std::size_t>(i)].mid_re().raw(),
                     mids[static_cast<std::size_t>(j)].mid_re().raw(), MPFR_RNDZ);
            mpfr_sub(dy.raw(), mids[static_cast<std::size_t>(i)].mid_im().raw(),
                     mids[static_cast<std::size_t>(j)].mid_im().raw(), MPFR_RNDZ);
            mpfr_hypot(d.raw(), dx.raw(), dy.raw(), MPFR_RNDD);
            if (!(d > rad_add(radii[static_cast<std::size_t>(i)],
                              radii[static_cast<std::size_t>(j)])))
                return false;
        }
    for (int i = 0; i < n; ++i)
        out.push_back(ball_with(mids[static_cast<std::size_t>(i)].mid_re(),
                                mids[static_cast<std::size_t>(i)].mid_im(),
                                radii[static_cast<std::size_t>(i)]));
    return true;
}

Real interval_lo(const Real& mid, const Real& rad) {
    Real lo(kRad);
    mpfr_sub(lo.raw(), mid.raw(), rad.raw(), MPFR_RNDD);
    return lo;
}

Real interval_hi(const Real& mid, const Real& rad) {
    Real hi(kRad);
    mpfr_add(hi.raw(), mid.raw(), rad.raw(), MPFR_RNDU);
    return hi;
}

// canonical order: ascending certified real part, ties by imaginary part,
// final fallback on exact midpoints
bool root_before(const ComplexBall& a, const ComplexBall& b) {
    if (interval_hi(a.mid_re(), a.radius()) < interval_lo(b.mid_re(), b.radius())) return true;
    if (interval_hi(b.mid_re(), b.radius()) < interval_lo(a.mid_re(), a.radius())) return false;
    if (interval_hi(a.mid_im(), a.radius()) < interval_lo(b.mid_im(), b.radius())) return true;
    if (interval_hi(b.mid_im(), b.radius()) < interval_lo(a.mid_im(), a.radius())) return false;
    int c = mpfr_cmp(a.mid_re().raw(), b.mid_re().raw());
    if (c != 0) return c < 0;
    return mpfr_cmp(a.mid_im().raw(), b.mid_im().raw()) < 0;
}

std::vector<ComplexBall> isolate_squarefree(const IntPolynomial& g, mpfr_prec_t precision) {
    std::vector<ComplexBall> out;
    int n = g.degree();
    if (n <= 0) return out;
    if (n == 1) {
        BigRational root(-g.coeff(0), g.coeff(1));
        root.canonicalize();
        out.push_back(ComplexBall::from_rational(root, BigRational(0), precision + 32));
        return out;
    }
    const long cap = Limits::current().precision_cap_bits;
    std::vector<Cplx> pts;
    for (mpfr_prec_t wp = std::max<mpfr_prec_t>(precision + 32, 64); wp <= cap; wp *= 2) {
        pts = aberth(g, wp, std::move(pts));
        if (certify_roots(g, pts, wp, precision, out)) return out;
    }
    throw CapError("cannot certify root isolation at cap");
}

}  // namespace

std::vector<RootBall> isolate_roots(const IntPolynomial& p, mpfr_prec_t precision) {
    if (p.is_zero()) throw DomainError("cannot isolate roots of the zero polynomial");
    std::vector<RootBall> result;
    if (p.degree() == 0) return result;
    for (auto& [factor, mult] : squarefree_decomposition(p)) {
        IntPolynomial g = factor;
        if (g.coeff(0) == 0) {
            g = g.divide_exact(IntPolynomial(std::vector<BigInt>{BigInt(0), BigInt(1)}));
            result.push_back({ComplexBall::exact_zero(precision), mult});
        }
        for (ComplexBall& b : isolate_squarefree(g, precision))
            result.push_back({std::move(b), mult});
    }
    std::sort(result.begin(), result.end(),
              [](const RootBall& a, const RootBall& b) { return root_before(a.ball, b.ball); });
    return result;
}

ComplexBall eval_element(const NFElement& beta, mpfr_prec_t precision) {
    const NumberField& field = beta.field();
    const long cap = Limits::current().precision_cap_bits;
    Real target = Real::pow2(-static_cast<long>(precision));
    bool rational = true;
    for (std::size_t k = 1; k < beta.coords().size(); ++k)
        if (beta.coords()[k] != 0) rational = false;
    for (mpfr_prec_t wp = std::max<mpfr_prec_t>(precision + 32, 64); wp <= cap; wp *= 2) {
        ComplexBall acc(wp);
        if (rational) {
            acc = ComplexBall::from_rational(
                beta.coords().empty() ? BigRational(0) : beta.coords()[0], BigRational(0), wp);
        } else {
            ComplexBall alpha = field.embedding_at(wp);
            acc = ComplexBall::exact_zero(wp);
            for (auto it = beta.coords().rbegin(); it != beta.coords().rend(); ++it)
                acc = acc.mul(alpha).add(ComplexBall::from_rational(*it, BigRational(0), wp));
        }
        if (acc.radius() <= target) return acc;
    }
    throw CapError("element evaluation exceeded the precision cap");
}

}  // namespace serieslab
