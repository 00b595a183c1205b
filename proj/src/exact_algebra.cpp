#include "serieslab/exact_algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <tuple>

namespace serieslab {

BigInt big_gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

BigInt big_pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

BigRational rat_pow(const BigRational& base, const BigInt& e) {
    if (e < 0) {
        if (base == 0) throw DomainError("0 has no negative power");
        return 1 / rat_pow(base, -e);
    }
    BigRational acc = 1;
    BigRational b = base;
    BigInt k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc *= b;
        k >>= 1;
        if (k > 0) b *= b;
    }
    return acc;
}

bool is_perfect_power(const BigInt& a, unsigned long p) {
    if (p == 0) throw DomainError("power index must be positive");
    if (a < 0 && p % 2 == 0) return false;
    BigInt abs_a = abs(a);
    BigInt root;
    int exact = mpz_root(root.get_mpz_t(), abs_a.get_mpz_t(), p);
    return exact != 0;
}

// ---------------------------------------------------------------------------
// IntPolynomial

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void IntPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::constant(const BigInt& c) {
    return IntPolynomial(std::vector<BigInt>{c});
}

IntPolynomial IntPolynomial::monomial(const BigInt& c, std::size_t degree) {
    std::vector<BigInt> v(degree + 1, BigInt(0));
    v[degree] = c;
    return IntPolynomial(std::move(v));
}

const BigInt& IntPolynomial::leading() const {
    if (is_zero()) throw DomainError("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

const BigInt& IntPolynomial::coeff(std::size_t k) const {
    static const BigInt zero(0);
    return k < coeffs_.size() ? coeffs_[k] : zero;
}

BigInt IntPolynomial::max_abs_coeff() const {
    BigInt m = 0;
    for (const auto& c : coeffs_) {
        BigInt a = abs(c);
        if (a > m) m = a;
    }
    return m;
}

IntPolynomial IntPolynomial::operator-() const {
    std::vector<BigInt> v(coeffs_);
    for (auto& c : v) c = -c;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    std::vector<BigInt> v(std::max(coeffs_.size(), o.coeffs_.size()), BigInt(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const { return *this + (-o); }

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return IntPolynomial();
    std::vector<BigInt> v(coeffs_.size() + o.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator*(const BigInt& c) const {
    std::vector<BigInt> v(coeffs_);
    for (auto& x : v) x *= c;
    return IntPolynomial(std::move(v));
}

BigInt IntPolynomial::eval(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

BigRational IntPolynomial::eval(const BigRational& x) const {
    BigRational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntPolynomial IntPolynomial::derivative() const {
    if (degree() <= 0) return IntPolynomial();
    std::vector<BigInt> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * BigInt(i);
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::shift(const BigInt& c) const {
    // Horner with polynomial accumulator: P(T+c)
    IntPolynomial acc;
    IntPolynomial lin(std::vector<BigInt>{c, BigInt(1)});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * lin + IntPolynomial::constant(*it);
    return acc;
}

IntPolynomial IntPolynomial::scale_arg(const BigInt& c) const {
    std::vector<BigInt> v(coeffs_);
    BigInt f = 1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] *= f;
        f *= c;
    }
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::pow(unsigned long e) const {
    IntPolynomial acc = IntPolynomial::constant(1);
    IntPolynomial b = *this;
    while (e > 0) {
        if (e & 1) acc = acc * b;
        e >>= 1;
        if (e > 0) b = b * b;
    }
    return acc;
}

IntPolynomial IntPolynomial::divide_exact(const IntPolynomial& divisor) const {
    if (divisor.is_zero()) throw DomainError("division by zero polynomial");
    RatPolynomial num = RatPolynomial::from_int(*this);
    RatPolynomial den = RatPolynomial::from_int(divisor);
    auto [q, r] = num.divmod(den);
    if (!r.is_zero()) throw DomainError("inexact polynomial division");
    std::vector<BigInt> v;
    v.reserve(q.coeffs().size());
    for (const auto& c : q.coeffs()) {
        if (c.get_den() != 1) throw DomainError("inexact polynomial division");
        v.push_back(c.get_num());
    }
    return IntPolynomial(std::move(v));
}

std::string IntPolynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const BigInt& c = coeff(static_cast<std::size_t>(k));
        if (c == 0) continue;
        BigInt a = abs(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (k == 0 || a != 1) out << a.get_str();
        if (k > 0) {
            if (a != 1) out << "*";
            out << var;
            if (k > 1) out << "^" << k;
        }
    }
    return out.str();
}

bool divides(const IntPolynomial& d, const IntPolynomial& p) {
    if (d.is_zero()) return p.is_zero();
    if (p.is_zero()) return true;
    if (d.degree() > p.degree()) return false;
    auto [q, r] = RatPolynomial::from_int(p).divmod(RatPolynomial::from_int(d));
    (void)q;
    return r.is_zero();
}

// ---------------------------------------------------------------------------
// RatPolynomial

RatPolynomial::RatPolynomial(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

void RatPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RatPolynomial RatPolynomial::from_int(const IntPolynomial& p) {
    std::vector<BigRational> v;
    v.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) v.emplace_back(c);
    return RatPolynomial(std::move(v));
}

const BigRational& RatPolynomial::leading() const {
    if (is_zero()) throw DomainError("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

const BigRational& RatPolynomial::coeff(std::size_t k) const {
    static const BigRational zero(0);
    return k < coeffs_.size() ? coeffs_[k] : zero;
}

RatPolynomial RatPolynomial::operator+(const RatPolynomial& o) const {
    std::vector<BigRational> v(std::max(coeffs_.size(), o.coeffs_.size()), BigRational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
    return RatPolynomial(std::move(v));
}

RatPolynomial RatPolynomial::operator-(const RatPolynomial& o) const {
    return *this + o * BigRational(-1);
}

RatPolynomial RatPolynomial::operator*(const RatPolynomial& o) const {
    if (is_zero() || o.is_zero()) return RatPolynomial();
    std::vector<BigRational> v(coeffs_.size() + o.coeffs_.size() - 1, BigRational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
    return RatPolynomial(std::move(v));
}

RatPolynomial RatPolynomial::operator*(const BigRational& c) const {
    std::vector<BigRational> v(coeffs_);
    for (auto& x : v) x *= c;
    return RatPolynomial(std::move(v));
}

BigRational RatPolynomial::eval(const BigRational& x) const {
    BigRational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RatPolynomial RatPolynomial::monic() const {
    if (is_zero()) throw DomainError("zero polynomial cannot be made monic");
    return *this * (1 / leading());
}

std::pair<RatPolynomial, RatPolynomial> RatPolynomial::divmod(const RatPolynomial& divisor) const {
    if (divisor.is_zero()) throw DomainError("division by zero polynomial");
    std::vector<BigRational> rem(coeffs_);
    int dd = divisor.degree();
    int dn = degree();
    if (dn < dd) return {RatPolynomial(), *this};
    std::vector<BigRational> quo(static_cast<std::size_t>(dn - dd) + 1, BigRational(0));
    const BigRational& lead = divisor.leading();
    for (int k = dn - dd; k >= 0; --k) {
        BigRational q = rem[static_cast<std::size_t>(k + dd)] / lead;
        quo[static_cast<std::size_t>(k)] = q;
        if (q == 0) continue;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<std::size_t>(k + j)] -= q * divisor.coeff(static_cast<std::size_t>(j));
    }
    rem.resize(static_cast<std::size_t>(std::max(dd, 0)));
    return {RatPolynomial(std::move(quo)), RatPolynomial(std::move(rem))};
}

IntPolynomial RatPolynomial::primitive_integer() const {
    if (is_zero()) return IntPolynomial();
    BigInt lcm_den = 1;
    for (const auto& c : coeffs_) {
        BigInt l;
        mpz_lcm(l.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
        lcm_den = l;
    }
    std::vector<BigInt> v;
    v.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        BigRational scaled = c * BigRational(lcm_den);
        v.push_back(scaled.get_num());
    }
    IntPolynomial p(std::move(v));
    auto [content, primitive] = content_primitive(p);
    (void)content;
    return primitive;
}

RatPolynomial rat_gcd(const RatPolynomial& a, const RatPolynomial& b) {
    RatPolynomial x = a, y = b;
    while (!y.is_zero()) {
        auto [q, r] = x.divmod(y);
        (void)q;
        x = y;
        y = r;
    }
    if (x.is_zero()) return x;
    return x.monic();
}

std::tuple<RatPolynomial, RatPolynomial, RatPolynomial> rat_xgcd(const RatPolynomial& a,
                                                                 const RatPolynomial& b) {
    RatPolynomial r0 = a, r1 = b;
    RatPolynomial s0(std::vector<BigRational>{BigRational(1)}), s1;
    RatPolynomial t0, t1(std::vector<BigRational>{BigRational(1)});
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        RatPolynomial s2 = s0 - q * s1;
        RatPolynomial t2 = t0 - q * t1;
        r0 = r1; r1 = r;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (r0.is_zero()) return {r0, s0, t0};
    BigRational inv = 1 / r0.leading();
    return {r0 * inv, s0 * inv, t0 * inv};
}

// ---------------------------------------------------------------------------
// content / gcd / square-free

std::pair<BigInt, IntPolynomial> content_primitive(const IntPolynomial& p) {
    if (p.is_zero()) throw DomainError("zero polynomial has no content decomposition");
    BigInt g = 0;
    for (const auto& c : p.coeffs()) g = big_gcd(g, c);
    int sign = p.leading() < 0 ? -1 : 1;
    std::vector<BigInt> v;
    v.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) v.push_back(c / g * sign);
    return {g, IntPolynomial(std::move(v))};
}

IntPolynomial int_poly_gcd(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() && b.is_zero()) return IntPolynomial();
    if (a.is_zero()) return content_primitive(b).second;
    if (b.is_zero()) return content_primitive(a).second;
    RatPolynomial g = rat_gcd(RatPolynomial::from_int(a), RatPolynomial::from_int(b));
    return g.primitive_integer();
}

std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& p) {
    // Yun's algorithm on the primitive part.
    std::vector<std::pair<IntPolynomial, int>> out;
    IntPolynomial f = content_primitive(p).second;
    if (f.degree() == 0) return out;
    IntPolynomial fp = f.derivative();
    IntPolynomial g0 = int_poly_gcd(f, fp);
    if (g0.degree() == 0) {
        out.emplace_back(f, 1);
        return out;
    }
    IntPolynomial b = f.divide_exact(g0);
    IntPolynomial d = fp.divide_exact(g0) - b.derivative();
    int mult = 1;
    while (b.degree() > 0) {
        IntPolynomial a = int_poly_gcd(b, d);
        if (a.degree() > 0) out.emplace_back(a, mult);
        b = b.divide_exact(a);
        d = d.divide_exact(a) - b.derivative();
        ++mult;
    }
    return out;
}

// ---------------------------------------------------------------------------
// resultant / discriminant (subresultant PRS)

BigInt resultant(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    // Q[T] Euclidean remainder sequence with exact sign/leading bookkeeping.
    RatPolynomial p = RatPolynomial::from_int(a);
    RatPolynomial q = RatPolynomial::from_int(b);
    BigRational res = 1;
    while (q.degree() > 0) {
        auto [quo, rem] = p.divmod(q);
        (void)quo;
        int dp = p.degree(), dq = q.degree();
        if (rem.is_zero()) return 0;
        int dr = rem.degree();
        // Res(p,q) = (-1)^{dp*dq} lc(q)^{dp-dr} Res(q, rem)
        BigRational factor = rat_pow(BigRational(q.leading()), BigInt(dp - dr));
        if ((static_cast<long>(dp) * dq) % 2 != 0) factor = -factor;
        res *= factor;
        p = q;
        q = rem;
    }
    if (q.is_zero()) return p.degree() > 0 ? BigInt(0) : BigInt(1);
    // q is a nonzero constant: Res(p, q) = q^{deg p}
    res *= rat_pow(q.coeff(0), BigInt(p.degree()));
    if (res.get_den() != 1) throw std::logic_error("resultant: non-integer result");
    return res.get_num();
}

BigInt discriminant(const IntPolynomial& p) {
    int n = p.degree();
    if (n < 1) throw DomainError("discriminant requires degree >= 1");
    BigInt r = resultant(p, p.derivative());
    BigInt d;
    mpz_divexact(d.get_mpz_t(), r.get_mpz_t(), p.leading().get_mpz_t());
    if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) d = -d;
    return d;
}

// ---------------------------------------------------------------------------
// factorization mod p (Berlekamp), Hensel lifting, Zassenhaus recombination

namespace {

using ModPoly = std::vector<long>;  // coefficients in [0, p), lowest first

void mp_trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int mp_deg(const ModPoly& f) { return static_cast<int>(f.size()) - 1; }

long mod_inv(long a, long p) {
    long t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        long q = r / new_r;
        std::tie(t, new_t) = std::make_tuple(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_tuple(new_r, r - q * new_r);
    }
    if (t < 0) t += p;
    return t;
}

ModPoly mp_mul(const ModPoly& a, const ModPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    ModPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    mp_trim(c);
    return c;
}

// remainder of a by monic-normalized b
ModPoly mp_mod(ModPoly a, const ModPoly& b, long p) {
    mp_trim(a);
    int db = mp_deg(b);
    long inv = mod_inv(b.back(), p);
    while (mp_deg(a) >= db) {
        long c = (a.back() * inv) % p;
        int shift = mp_deg(a) - db;
        for (int i = 0; i <= db; ++i) {
            a[static_cast<std::size_t>(i + shift)] =
                ((a[static_cast<std::size_t>(i + shift)] - c * b[static_cast<std::size_t>(i)]) % p + p) % p;
        }
        mp_trim(a);
    }
    return a;
}

ModPoly mp_gcd(ModPoly a, ModPoly b, long p) {
    mp_trim(a);
    mp_trim(b);
    while (!b.empty()) {
        ModPoly r = mp_mod(a, b, p);
        a = b;
        b = r;
    }
    if (!a.empty()) {
        long inv = mod_inv(a.back(), p);
        for (auto& c : a) c = (c * inv) % p;
    }
    return a;
}

ModPoly mp_monic(ModPoly f, long p) {
    mp_trim(f);
    if (f.empty()) return f;
    long inv = mod_inv(f.back(), p);
    for (auto& c : f) c = (c * inv) % p;
    return f;
}

ModPoly mp_powmod_x(long e_base, const ModPoly& f, long p) {
    // x^{e_base} mod f by square-and-multiply on the exponent
    ModPoly result{1};
    ModPoly base{0, 1};
    base = mp_mod(base, f, p);
    long e = e_base;
    while (e > 0) {
        if (e & 1) result = mp_mod(mp_mul(result, base, p), f, p);
        e >>= 1;
        if (e > 0) base = mp_mod(mp_mul(base, base, p), f, p);
    }
    return result;
}

// exact quotient g / d over F_p, monic-normalized
ModPoly mp_div_exact(const ModPoly& g, const ModPoly& d, long p) {
    ModPoly rem = g;
    int dd = mp_deg(d);
    ModPoly q(static_cast<std::size_t>(mp_deg(g) - dd) + 1, 0);
    long inv = mod_inv(d.back(), p);
    while (!rem.empty() && mp_deg(rem) >= dd) {
        long c = (rem.back() * inv) % p;
        int shift = mp_deg(rem) - dd;
        q[static_cast<std::size_t>(shift)] = c;
        for (int i = 0; i <= dd; ++i)
            rem[static_cast<std::size_t>(i + shift)] =
                ((rem[static_cast<std::size_t>(i + shift)] - c * d[static_cast<std::size_t>(i)]) % p + p) % p;
        mp_trim(rem);
    }
    mp_trim(q);
    return mp_monic(q, p);
}

ModPoly mp_derivative(const ModPoly& f, long p) {
    if (f.size() <= 1) return {};
    ModPoly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = (f[i] * static_cast<long>(i % p)) % p;
    mp_trim(d);
    return d;
}

ModPoly to_mod(const IntPolynomial& f, long p) {
    ModPoly m(f.coeffs().size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        BigInt r = f.coeffs()[i] % p;
        long v = static_cast<long>(r.get_si());
        if (v < 0) v += p;
        m[i] = v;
    }
    mp_trim(m);
    return m;
}

// Berlekamp factorization of a monic square-free polynomial mod p.
std::vector<ModPoly> berlekamp(const ModPoly& f, long p) {
    int n = mp_deg(f);
    if (n <= 1) return {f};
    // Q[i][j] = coeff_j of x^{p*i} mod f
    std::vector<ModPoly> qrows(static_cast<std::size_t>(n));
    ModPoly xp = mp_powmod_x(p, f, p);
    ModPoly cur{1};
    for (int i = 0; i < n; ++i) {
        qrows[static_cast<std::size_t>(i)] = cur;
        if (i + 1 < n) cur = mp_mod(mp_mul(cur, xp, p), f, p);
    }
    // Build (Q - I)^T and find null space of v*(Q - I) = 0, i.e. solve for row
    // vectors v. Work with the matrix M[i][j] = Q[i][j] - delta_ij, null space
    // of M^T acting on the left = standard null space of M transposed.
    std::vector<std::vector<long>> m(static_cast<std::size_t>(n),
                                     std::vector<long>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            long v = j <= mp_deg(qrows[static_cast<std::size_t>(i)])
                         ? qrows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                         : 0;
            if (i == j) v = ((v - 1) % p + p) % p;
            m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;  // transpose
        }
    }
    // Null space of m by Gaussian elimination.
    std::vector<int> pivot_col_of_row;
    std::vector<int> where(static_cast<std::size_t>(n), -1);
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int sel = -1;
        for (int row = rank; row < n; ++row)
            if (m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] != 0) {
                sel = row;
                break;
            }
        if (sel < 0) continue;
        std::swap(m[static_cast<std::size_t>(sel)], m[static_cast<std::size_t>(rank)]);
        long inv = mod_inv(m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)], p);
        for (int j = col; j < n; ++j)
            m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)] =
                (m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)] * inv) % p;
        for (int row = 0; row < n; ++row) {
            if (row == rank) continue;
            long c = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
            if (c == 0) continue;
            for (int j = col; j < n; ++j)
                m[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] =
                    ((m[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] -
                      c * m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)]) % p + p) % p;
        }
        where[static_cast<std::size_t>(col)] = rank;
        ++rank;
    }
    std::vector<ModPoly> basis;
    for (int col = 0; col < n; ++col) {
        if (where[static_cast<std::size_t>(col)] >= 0) continue;
        ModPoly v(static_cast<std::size_t>(n), 0);
        v[static_cast<std::size_t>(col)] = 1;
        for (int c2 = 0; c2 < n; ++c2) {
            int r = where[static_cast<std::size_t>(c2)];
            if (r >= 0)
                v[static_cast<std::size_t>(c2)] =
                    ((-m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) % p + p) % p;
        }
        mp_trim(v);
        basis.push_back(v);
    }
    std::size_t r = basis.size();  // number of irreducible factors
    std::vector<ModPoly> factors{f};
    if (r <= 1) return factors;
    for (const ModPoly& v : basis) {
        if (factors.size() >= r) break;
        if (mp_deg(v) < 1) continue;  // skip the constant vector
        for (long s = 0; s < p && factors.size() < r; ++s) {
            ModPoly vs = v;
            vs[0] = ((vs[0] - s) % p + p) % p;
            mp_trim(vs);
            if (vs.empty()) continue;
            std::vector<ModPoly> next;
            for (const ModPoly& g : factors) {
                if (mp_deg(g) <= 1) {
                    next.push_back(g);
                    continue;
                }
                ModPoly d = mp_gcd(g, vs, p);
                if (d.empty() || mp_deg(d) == 0 || mp_deg(d) == mp_deg(g)) {
                    next.push_back(g);
                } else {
                    next.push_back(mp_monic(d, p));
                    next.push_back(mp_div_exact(g, d, p));
                }
            }
            factors = std::move(next);
        }
    }
    return factors;
}

// Coefficients reduced into the symmetric range (-m/2, m/2].
BigInt sym_mod(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

using ZPoly = std::vector<BigInt>;

void zp_trim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly zp_reduce(ZPoly f, const BigInt& m) {
    for (auto& c : f) c = sym_mod(c, m);
    zp_trim(f);
    return f;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b, const BigInt& m) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return zp_reduce(std::move(c), m);
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b, const BigInt& m) {
    ZPoly c(std::max(a.size(), b.size()), BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return zp_reduce(std::move(c), m);
}

// division by a polynomial whose leading coefficient is invertible mod m
std::pair<ZPoly, ZPoly> zp_divmod(ZPoly a, const ZPoly& b, const BigInt& m) {
    zp_trim(a);
    int db = static_cast<int>(b.size()) - 1;
    BigInt lead_inv;
    if (mpz_invert(lead_inv.get_mpz_t(), b.back().get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::logic_error("hensel: divisor leading coefficient not invertible");
    ZPoly q;
    if (static_cast<int>(a.size()) - 1 >= db)
        q.assign(a.size() - static_cast<std::size_t>(db), BigInt(0));
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        BigInt c = sym_mod(a.back() * lead_inv, m);
        int shift = static_cast<int>(a.size()) - 1 - db;
        q[static_cast<std::size_t>(shift)] = c;
        for (int i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(i + shift)] =
                sym_mod(a[static_cast<std::size_t>(i + shift)] - c * b[static_cast<std::size_t>(i)], m);
        zp_trim(a);
    }
    zp_trim(q);
    return {q, a};
}

ZPoly to_zpoly(const IntPolynomial& f) { return f.coeffs(); }
ZPoly to_zpoly(const ModPoly& f) {
    ZPoly z(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) z[i] = f[i];
    return z;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b, const BigInt& m) {
    ZPoly c(std::max(a.size(), b.size()), BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return zp_reduce(std::move(c), m);
}

// Quadratic Hensel lift of a pair: f = g*h mod m -> mod m^2, with Bezout data
// s*g + t*h = 1 mod m carried along. f and h monic.
struct LiftPair {
    ZPoly g, h, s, t;
};

LiftPair hensel_step(const ZPoly& f, const LiftPair& in, const BigInt& m) {
    BigInt m2 = m * m;
    ZPoly e = zp_sub(f, zp_mul(in.g, in.h, m2), m2);
    auto [q, r] = zp_divmod(zp_mul(in.s, e, m2), in.h, m2);
    ZPoly g_new = zp_add(in.g, zp_add(zp_mul(in.t, e, m2), zp_mul(q, in.g, m2), m2), m2);
    ZPoly h_new = zp_add(in.h, r, m2);
    ZPoly b = zp_sub(zp_add(zp_mul(in.s, g_new, m2), zp_mul(in.t, h_new, m2), m2),
                     ZPoly{BigInt(1)}, m2);
    auto [c, d] = zp_divmod(zp_mul(in.s, b, m2), h_new, m2);
    ZPoly s_new = zp_sub(in.s, d, m2);
    ZPoly t_new = zp_sub(in.t, zp_add(zp_mul(in.t, b, m2), zp_mul(c, g_new, m2), m2), m2);
    return {g_new, h_new, s_new, t_new};
}

// Compute Bezout s*g + t*h = 1 mod p from scratch (p prime, g,h coprime mod p).
std::pair<ZPoly, ZPoly> bezout_mod_p(const ZPoly& g, const ZPoly& h, long p) {
    auto to_modpoly = [&](const ZPoly& z) {
        ModPoly m(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) {
            BigInt r = z[i] % p;
            long v = static_cast<long>(r.get_si());
            if (v < 0) v += p;
            m[i] = v;
        }
        mp_trim(m);
        return m;
    };
    ModPoly a = to_modpoly(g), b = to_modpoly(h);
    ModPoly r0 = a, r1 = b;
    std::vector<ModPoly> s_pair{{1}, {}}, t_pair{{}, {1}};
    while (!r1.empty()) {
        // divmod over F_p
        ModPoly rem = r0, quo;
        int db = mp_deg(r1);
        long inv = mod_inv(r1.back(), p);
        if (mp_deg(rem) >= db) quo.assign(static_cast<std::size_t>(mp_deg(rem) - db) + 1, 0);
        while (mp_deg(rem) >= db && !rem.empty()) {
            long c = (rem.back() * inv) % p;
            int shift = mp_deg(rem) - db;
            quo[static_cast<std::size_t>(shift)] = c;
            for (int i = 0; i <= db; ++i)
                rem[static_cast<std::size_t>(i + shift)] =
                    ((rem[static_cast<std::size_t>(i + shift)] - c * r1[static_cast<std::size_t>(i)]) % p + p) % p;
            mp_trim(rem);
        }
        mp_trim(quo);
        auto combine = [&](const ModPoly& x0, const ModPoly& x1) {
            ModPoly qx = mp_mul(quo, x1, p);
            ModPoly res(std::max(x0.size(), qx.size()), 0);
            for (std::size_t i = 0; i < x0.size(); ++i) res[i] = x0[i];
            for (std::size_t i = 0; i < qx.size(); ++i) res[i] = ((res[i] - qx[i]) % p + p) % p;
            mp_trim(res);
            return res;
        };
        ModPoly s2 = combine(s_pair[0], s_pair[1]);
        ModPoly t2 = combine(t_pair[0], t_pair[1]);
        r0 = r1;
        r1 = rem;
        s_pair = {s_pair[1], s2};
        t_pair = {t_pair[1], t2};
    }
    if (mp_deg(r0) != 0) throw std::logic_error("hensel: factors not coprime mod p");
    long inv = mod_inv(r0[0], p);
    auto scale = [&](ModPoly v) {
        for (auto& c : v) c = (c * inv) % p;
        return to_zpoly(v);
    };
    return {scale(s_pair[0]), scale(t_pair[0])};
}

// Lift f = prod(factors) from mod p to mod p^{2^k} >= bound, peeling one
// factor at a time. f and all factors monic.
std::vector<ZPoly> hensel_lift_all(const IntPolynomial& f_int, std::vector<ModPoly> mod_factors,
                                   long p, const BigInt& bound, BigInt& modulus_out) {
    BigInt target = 2 * bound + 1;
    ZPoly f = to_zpoly(f_int);
    modulus_out = p;
    std::vector<ZPoly> lifted;
    if (mod_factors.size() == 1) {
        lifted.push_back(f);
        return lifted;
    }
    ZPoly f_cur = f;
    for (std::size_t idx = 0; idx + 1 < mod_factors.size(); ++idx) {
        // peel: g = factor idx, h = product of the rest (known mod p)
        ZPoly g = to_zpoly(mod_factors[idx]);
        ModPoly h_mod{1};
        for (std::size_t j = idx + 1; j < mod_factors.size(); ++j)
            h_mod = mp_mul(h_mod, mod_factors[j], p);
        ZPoly h = to_zpoly(h_mod);
        auto [s, t] = bezout_mod_p(g, h, p);
        LiftPair pair{zp_reduce(g, p), zp_reduce(h, p), zp_reduce(s, p), zp_reduce(t, p)};
        BigInt m = p;
        while (m < target) {
            pair = hensel_step(f_cur, pair, m);
            m *= m;
        }
        modulus_out = m;
        lifted.push_back(pair.g);
        f_cur = pair.h;
    }
    lifted.push_back(f_cur);
    return lifted;
}

// Landau-Mignotte style bound on coefficients of any monic factor of monic f.
BigInt factor_coeff_bound(const IntPolynomial& f) {
    int n = f.degree();
    BigInt norm2_sq = 0;
    for (const auto& c : f.coeffs()) norm2_sq += c * c;
    BigInt norm2 = sqrt(norm2_sq) + 1;
    return big_pow(BigInt(2), static_cast<unsigned long>(n)) * norm2 * (BigInt(n) + 1);
}

std::vector<IntPolynomial> factor_monic_squarefree(const IntPolynomial& f);

// Zassenhaus recombination over lifted monic factors (symmetric residues mod m).
std::vector<IntPolynomial> recombine(const IntPolynomial& f_in, std::vector<ZPoly> lifted,
                                     const BigInt& m) {
    std::vector<IntPolynomial> out;
    IntPolynomial f = f_in;
    std::vector<int> alive(lifted.size(), 1);
    std::size_t n_alive = lifted.size();
    std::size_t card = 1;
    while (2 * card <= n_alive) {
        // enumerate index subsets of size card over alive factors, lexicographic
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < lifted.size(); ++i)
            if (alive[i]) idx.push_back(i);
        std::vector<std::size_t> sel(card);
        for (std::size_t i = 0; i < card; ++i) sel[i] = i;
        bool advanced = true;
        bool removed_any = false;
        while (advanced) {
            // candidate = product of selected lifted factors mod m, symmetric
            ZPoly cand{BigInt(1)};
            for (std::size_t i = 0; i < card; ++i) cand = zp_mul(cand, lifted[idx[sel[i]]], m);
            IntPolynomial candidate{std::vector<BigInt>(cand.begin(), cand.end())};
            bool ok = false;
            if (!candidate.is_zero() && candidate.degree() >= 1) {
                // cheap test first: constant term must divide f(0) unless f(0) == 0
                bool cheap = true;
                if (f.coeff(0) != 0) {
                    BigInt c0 = candidate.coeff(0);
                    cheap = (c0 != 0) && mpz_divisible_p(f.coeff(0).get_mpz_t(), c0.get_mpz_t());
                }
                if (cheap && divides(candidate, f)) ok = true;
            }
            if (ok) {
                out.push_back(candidate);
                f = f.divide_exact(candidate);
                for (std::size_t i = 0; i < card; ++i) alive[idx[sel[i]]] = 0;
                n_alive -= card;
                removed_any = true;
                break;
            }
            // next subset
            advanced = false;
            for (std::size_t i = card; i-- > 0;) {
                if (sel[i] + (card - i) < idx.size()) {
                    ++sel[i];
                    for (std::size_t j = i + 1; j < card; ++j) sel[j] = sel[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
        }
        if (removed_any) {
            card = 1;  // restart with the reduced pool
            continue;
        }
        ++card;
    }
    if (f.degree() >= 1) out.push_back(f);
    return out;
}

std::vector<IntPolynomial> factor_monic_squarefree(const IntPolynomial& f) {
    int n = f.degree();
    if (n <= 1) return {f};
    // choose primes where f stays square-free; sieve factor-degree sets
    static const long kPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                   43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    struct ModFactorization {
        long p;
        std::vector<ModPoly> factors;
    };
    std::vector<ModFactorization> candidates;
    std::vector<bool> possible(static_cast<std::size_t>(n) + 1, true);
    int tried = 0;
    for (long p : kPrimes) {
        if (mpz_divisible_ui_p(f.leading().get_mpz_t(), static_cast<unsigned long>(p))) continue;
        ModPoly fm = to_mod(f, p);
        if (mp_deg(fm) != n) continue;
        ModPoly d = mp_derivative(fm, p);
        ModPoly g = mp_gcd(fm, d, p);
        if (mp_deg(g) != 0) continue;  // not square-free mod p
        std::vector<ModPoly> facs = berlekamp(mp_monic(fm, p), p);
        // degree-set sieve: subset sums of factor degrees achievable mod p
        std::vector<bool> reachable(static_cast<std::size_t>(n) + 1, false);
        reachable[0] = true;
        for (const ModPoly& fac : facs) {
            int dg = mp_deg(fac);
            for (int s = n; s >= dg; --s)
                if (reachable[static_cast<std::size_t>(s - dg)]) reachable[static_cast<std::size_t>(s)] = true;
        }
        for (int s = 0; s <= n; ++s)
            if (!reachable[static_cast<std::size_t>(s)]) possible[static_cast<std::size_t>(s)] = false;
        candidates.push_back({p, std::move(facs)});
        ++tried;
        bool only_trivial = true;
        for (int s = 1; s < n; ++s)
            if (possible[static_cast<std::size_t>(s)]) only_trivial = false;
        if (only_trivial) return {f};  // irreducible by the sieve
        if (tried >= 4) break;
    }
    if (candidates.empty())
        throw CapError("no usable prime found for factorization (degree-set sieve exhausted)");
    const ModFactorization* best = &candidates.front();
    for (const auto& c : candidates)
        if (c.factors.size() < best->factors.size()) best = &c;
    if (best->factors.size() == 1) return {f};
    BigInt bound = factor_coeff_bound(f);
    BigInt modulus;
    std::vector<ZPoly> lifted = hensel_lift_all(f, best->factors, best->p, bound, modulus);
    return recombine(f, std::move(lifted), modulus);
}

}  // namespace

Factorization factor_over_Z(const IntPolynomial& p) {
    if (p.is_zero()) throw DomainError("cannot factor the zero polynomial");
    if (p.degree() > Limits::current().factor_degree_cap)
        throw CapError("factorization degree cap exceeded");
    Factorization result;
    auto [content, prim] = content_primitive(p);
    result.content = content;
    result.sign = p.leading() < 0 ? -1 : 1;
    if (prim.degree() == 0) return result;

    // peel off powers of T
    std::size_t val = 0;
    while (prim.coeff(val) == 0) ++val;
    if (val > 0) {
        std::vector<BigInt> rest(prim.coeffs().begin() + static_cast<long>(val), prim.coeffs().end());
        result.factors.push_back({IntPolynomial(std::vector<BigInt>{BigInt(0), BigInt(1)}),
                                  static_cast<int>(val)});
        prim = IntPolynomial(std::move(rest));
    }
    if (prim.degree() == 0) return result;

    for (auto& [sqfree, mult] : squarefree_decomposition(prim)) {
        if (sqfree.degree() < 1) continue;
        // monicize, factor, map back
        const BigInt lc = sqfree.leading();
        std::vector<IntPolynomial> pieces;
        if (lc == 1) {
            pieces = factor_monic_squarefree(sqfree);
        } else {
            IntPolynomial monic = monicize(sqfree);
            for (const IntPolynomial& g : factor_monic_squarefree(monic)) {
                IntPolynomial back = g.scale_arg(lc);
                pieces.push_back(content_primitive(back).second);
            }
        }
        std::sort(pieces.begin(), pieces.end(), [](const IntPolynomial& a, const IntPolynomial& b) {
            if (a.degree() != b.degree()) return a.degree() < b.degree();
            return a.coeffs() < b.coeffs();
        });
        for (IntPolynomial& g : pieces) result.factors.push_back({std::move(g), mult});
    }
    return result;
}

bool is_irreducible(const IntPolynomial& p) {
    if (p.degree() < 1) return false;
    Factorization f = factor_over_Z(p);
    return f.content == 1 && f.factors.size() == 1 && f.factors[0].multiplicity == 1 &&
           f.factors[0].factor.degree() == p.degree();
}

IntPolynomial monicize(const IntPolynomial& p) {
    if (p.is_zero()) throw DomainError("cannot monicize the zero polynomial");
    const BigInt& a = p.leading();
    int n = p.degree();
    // lc^{n-1} * P(T/lc): coefficient of T^k becomes a_k * lc^{n-1-k}
    std::vector<BigInt> v(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        v[static_cast<std::size_t>(k)] =
            p.coeff(static_cast<std::size_t>(k)) * big_pow(a, static_cast<unsigned long>(n - 1 - k >= 0 ? n - 1 - k : 0));
    // k = n term: a_n * a^{-1} would be fractional; handle directly: result is monic
    v[static_cast<std::size_t>(n)] = 1;
    return IntPolynomial(std::move(v));
}

std::optional<unsigned long> cyclotomic_order(const IntPolynomial& p) {
    if (p.is_zero() || !p.is_monic()) throw DomainError("cyclotomic test requires monic input");
    int d = p.degree();
    if (d < 1) return std::nullopt;
    // phi(n) = d forces n <= 2 d^2 (phi(n) >= sqrt(n/2)); enumerate candidates.
    auto phi = [](unsigned long n) {
        unsigned long result = n;
        unsigned long m = n;
        for (unsigned long q = 2; q * q <= m; ++q) {
            if (m % q == 0) {
                result -= result / q;
                while (m % q == 0) m /= q;
            }
        }
        if (m > 1) result -= result / m;
        return result;
    };
    unsigned long limit = 2UL * static_cast<unsigned long>(d) * static_cast<unsigned long>(d) + 2;
    for (unsigned long n = 1; n <= limit; ++n) {
        if (phi(n) != static_cast<unsigned long>(d)) continue;
        // test p | T^n - 1 exactly
        std::vector<BigInt> tn(n + 1, BigInt(0));
        tn[0] = -1;
        tn[n] = 1;
        if (divides(p, IntPolynomial(std::move(tn)))) return n;
    }
    return std::nullopt;
}

}  // namespace serieslab
