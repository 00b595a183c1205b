#include "serieslab/galois_lab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace serieslab {

namespace {

bool is_square_int(const BigInt& v) {
    if (v < 0) return false;
    return mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

// integer roots of a monic integer polynomial (divisors of the constant term)
std::vector<BigInt> integer_roots(const IntPolynomial& p) {
    std::vector<BigInt> out;
    IntPolynomial q = p;
    IntPolynomial tee(std::vector<BigInt>{BigInt(0), BigInt(1)});
    if (q.coeff(0) == 0) {
        out.push_back(0);
        while (q.coeff(0) == 0 && q.degree() > 0) q = q.divide_exact(tee);
    }
    if (q.degree() >= 1) {
        BigInt c = abs(q.coeff(0));
        for (BigInt d = 1; d * d <= c; ++d) {
            if (c % d != 0) continue;
            BigInt cod = c / d;
            for (const BigInt& cand : {d, cod}) {
                for (int sg : {1, -1}) {
                    BigInt r = cand * sg;
                    if (q.eval(r) == 0 && std::find(out.begin(), out.end(), r) == out.end())
                        out.push_back(r);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::string group_label_name(GroupLabel g) {
    switch (g) {
        case GroupLabel::S2: return "S2";
        case GroupLabel::C3: return "C3";
        case GroupLabel::S3: return "S3";
        case GroupLabel::C4: return "C4";
        case GroupLabel::V4: return "V4";
        case GroupLabel::D4: return "D4";
        case GroupLabel::A4: return "A4";
        case GroupLabel::S4: return "S4";
    }
    return "?";
}

GroupLabel galois_group(const IntPolynomial& p) {
    if (!p.is_monic()) throw DomainError("Galois classification requires a monic polynomial");
    const int n = p.degree();
    if (n < 2 || n > 4) throw DomainError("Galois classification supports degrees 2..4");
    if (!is_irreducible(p)) throw DomainError("Galois classification requires an irreducible polynomial");
    if (n == 2) return GroupLabel::S2;
    BigInt disc = discriminant(p);
    if (n == 3) return is_square_int(disc) ? GroupLabel::C3 : GroupLabel::S3;
    // quartic T^4 + aT^3 + bT^2 + cT + d: resolvent cubic
    // y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4bd + c^2)
    const BigInt a = p.coeff(3), b = p.coeff(2), c = p.coeff(1), d = p.coeff(0);
    IntPolynomial resolvent(std::vector<BigInt>{-(a * a * d - 4 * b * d + c * c), a * c - 4 * d,
                                                -b, BigInt(1)});
    std::vector<BigInt> roots = integer_roots(resolvent);
    // count rational roots with multiplicity structure: the resolvent is cubic,
    // so 0, 1 or 3 rational roots (2 would force a third)
    if (roots.empty()) return is_square_int(disc) ? GroupLabel::A4 : GroupLabel::S4;
    // check for a complete split
    IntPolynomial rem = resolvent;
    int split = 0;
    for (const BigInt& r : roots) {
        IntPolynomial lin(std::vector<BigInt>{-r, BigInt(1)});
        while (divides(lin, rem)) {
            rem = rem.divide_exact(lin);
            ++split;
        }
    }
    if (split == 3) return GroupLabel::V4;
    // exactly one rational root y0: distinguish C4 from D4 by whether both
    // x^2 - y0 x + d and x^2 + a x + (b - y0) split over Q(sqrt(disc))
    const BigInt y0 = roots.front();
    auto splits_over_quad = [&](const BigInt& delta) {
        if (delta == 0) return true;
        if (is_square_int(delta)) return true;
        return is_square_int(delta * disc);
    };
    BigInt d1 = y0 * y0 - 4 * d;
    BigInt d2 = a * a - 4 * (b - y0);
    return splits_over_quad(d1) && splits_over_quad(d2) ? GroupLabel::C4 : GroupLabel::D4;
}

// ---------------------------------------------------------------------------
// Kronecker small-root extraction

ComplexBall kronecker_small_root(const IntPolynomial& p) {
    if (!p.is_monic()) throw DomainError("Kronecker extraction requires a monic polynomial");
    if (abs(p.coeff(0)) != 1) throw DomainError("Kronecker extraction requires |P(0)| = 1");
    if (cyclotomic_order(p)) throw DomainError("Kronecker premise violated");
    const long cap = Limits::current().precision_cap_bits;
    Real one = Real::from_long(1, 64);
    for (mpfr_prec_t prec = 256; prec <= cap; prec *= 2) {
        std::vector<RootBall> roots = isolate_roots(p, prec);
        // smallest certified modulus
        int best = -1;
        Real best_hi(64);
        for (std::size_t i = 0; i < roots.size(); ++i) {
            Real hi = roots[i].ball.abs_bounds().hi;
            if (best < 0 || hi < best_hi) {
                best = static_cast<int>(i);
                best_hi = hi;
            }
        }
        if (best < 0) throw DomainError("polynomial has no roots");
        if (!(best_hi < one)) continue;  // refine until the winner is inside the disk
        // tie set: roots whose modulus interval reaches the winner's bound
        std::vector<std::size_t> ties;
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (!(roots[i].ball.abs_bounds().lo > best_hi)) ties.push_back(i);
        std::size_t pick = ties.front();
        for (std::size_t i : ties) {
            int cmp_im = mpfr_cmp(roots[i].ball.mid_im().raw(), roots[pick].ball.mid_im().raw());
            if (cmp_im < 0 ||
                (cmp_im == 0 &&
                 mpfr_cmp(roots[i].ball.mid_re().raw(), roots[pick].ball.mid_re().raw()) < 0))
                pick = i;
        }
        return roots[pick].ball;
    }
    throw CapError("small-root certification failed at cap");
}

// ---------------------------------------------------------------------------
// census

nlohmann::json CountReport::to_json() const {
    nlohmann::json j;
    j["m"] = m;
    j["X"] = x;
    j["total"] = total;
    j["sm_count"] = sm_count;
    j["non_sm_count"] = non_sm_count;
    j["cyclotomic_excluded"] = cyclotomic_excluded;
    j["small_root_found"] = small_root_found;
    j["bound_rhs"] = bound_rhs.get_str();
    j["fitted_C"] = fitted_c;
    return j;
}

CountReport count_sm(int m, long x, bool with_csv) {
    if (m < 2 || m > 4) throw DomainError("census supports degrees 2..4");
    if (x < 1) throw DomainError("census needs X >= 1");
    // budget: 2 (2X+1)^{m-1} enumerated polynomials
    const double planned = 2.0 * std::pow(2.0 * x + 1, m - 1);
    if (planned > static_cast<double>(Limits::current().enumeration_budget))
        throw CapError("census enumeration budget exceeded");
    CountReport rep;
    rep.m = m;
    rep.x = x;
    rep.bound_rhs = big_pow(BigInt(2), static_cast<unsigned long>(m)) *
                    big_pow(BigInt(x), static_cast<unsigned long>(m - 1));
    std::ostringstream csv;
    if (with_csv) csv << "polynomial,classification,small_root\n";
    // middle coefficients range over [-X, X]^{m-1}, constant term over {1,-1}
    std::vector<long> mid(static_cast<std::size_t>(m - 1), -x);
    bool done = false;
    while (!done) {
        for (int c0 : {1, -1}) {
            std::vector<BigInt> cs(static_cast<std::size_t>(m) + 1);
            cs[0] = c0;
            for (int i = 1; i < m; ++i) cs[static_cast<std::size_t>(i)] = mid[static_cast<std::size_t>(i - 1)];
            cs[static_cast<std::size_t>(m)] = 1;
            IntPolynomial p{std::move(cs)};
            ++rep.total;
            std::string cls;
            std::string root_str;
            if (!is_irreducible(p)) {
                ++rep.non_sm_count;
                cls = "reducible";
            } else {
                GroupLabel g = galois_group(p);
                bool sm = (m == 2 && g == GroupLabel::S2) || (m == 3 && g == GroupLabel::S3) ||
                          (m == 4 && g == GroupLabel::S4);
                cls = group_label_name(g);
                if (!sm) {
                    ++rep.non_sm_count;
                } else {
                    ++rep.sm_count;
                    if (cyclotomic_order(p)) {
                        ++rep.cyclotomic_excluded;
                    } else {
                        ComplexBall r = kronecker_small_root(p);
                        ++rep.small_root_found;
                        if (with_csv) root_str = r.to_string();
                    }
                }
            }
            if (with_csv) csv << p.to_string() << "," << cls << "," << root_str << "\n";
        }
        // advance the middle-coefficient odometer
        done = true;
        for (std::size_t i = 0; i < mid.size(); ++i) {
            if (mid[i] < x) {
                ++mid[i];
                for (std::size_t j = 0; j < i; ++j) mid[j] = -x;
                done = false;
                break;
            }
        }
        if (mid.empty()) done = true;
    }
    // smallest C with sm_count >= 2^m X^{m-1} - C X^{m-3/2} log X (empirical fit)
    double deficit = rep.bound_rhs.get_d() - static_cast<double>(rep.sm_count);
    double scale = std::pow(static_cast<double>(x), m - 1.5) * std::log(static_cast<double>(x));
    rep.fitted_c = (deficit <= 0 || scale <= 0) ? 0.0 : deficit / scale;
    if (with_csv) rep.per_poly_csv = csv.str();
    return rep;
}

}  // namespace serieslab
