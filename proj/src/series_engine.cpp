#include "serieslab/series_engine.hpp"

#include <algorithm>
#include <sstream>

namespace serieslab {

namespace {

BigInt factorial_int(long j) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(j));
    return f;
}

std::string kind_to_string(SeriesSpec::Kind k) {
    switch (k) {
        case SeriesSpec::Kind::Factorial: return "factorial";
        case SeriesSpec::Kind::Diagonal: return "diagonal";
        case SeriesSpec::Kind::Blocks: return "blocks";
        case SeriesSpec::Kind::Adversarial: return "adversarial";
    }
    return "?";
}

}  // namespace

std::string SeriesSpec::kind_name() const { return kind_to_string(kind_); }

BigInt SeriesSpec::factorial_of(int j) const { return factorial_int(j); }

SeriesSpec SeriesSpec::factorial(int first_index) {
    if (first_index < 1) throw DomainError("factorial series needs first index >= 1");
    SeriesSpec s;
    s.kind_ = Kind::Factorial;
    s.first_index_ = first_index;
    s.bounded_A_ = 1;
    s.radius_floor_ = 1;
    s.restart_bound_ = 1.0;
    return s;
}

SeriesSpec SeriesSpec::diagonal(std::vector<BigInt> exponents, std::vector<BigInt> coefficients) {
    if (exponents.size() != coefficients.size() || exponents.empty())
        throw DomainError("diagonal series needs matching nonempty exponent/coefficient lists");
    for (std::size_t i = 0; i + 1 < exponents.size(); ++i)
        if (!(exponents[i] < exponents[i + 1]))
            throw DomainError("diagonal exponents must be strictly increasing");
    for (const BigInt& b : coefficients)
        if (b == 0) throw DomainError("diagonal coefficients must be nonzero");
    if (exponents[0] < 0) throw DomainError("exponents must be nonnegative");
    SeriesSpec s;
    s.kind_ = Kind::Diagonal;
    s.exponents_ = std::move(exponents);
    s.coefficients_ = std::move(coefficients);
    s.radius_floor_ = 1;
    return s;
}

SeriesSpec SeriesSpec::blocks(std::vector<BigInt> t, std::vector<BigInt> s,
                              std::map<BigInt, BigInt> coeffs) {
    if (t.empty() || s.empty() || t.size() != s.size() + 1)
        throw DomainError("blocks spec needs t_0..t_N and s_1..s_N");
    SeriesSpec sp;
    sp.kind_ = Kind::Blocks;
    sp.t_ = std::move(t);
    sp.s_ = std::move(s);
    for (auto& [k, v] : coeffs)
        if (v != 0) sp.sparse_.emplace(k, v);
    sp.radius_floor_ = 1;
    return sp;
}

SeriesSpec SeriesSpec::adversarial(const std::vector<IntPolynomial>& u, int length) {
    if (u.empty()) throw DomainError("adversarial construction needs a nonempty polynomial list");
    if (length < 1 || length > static_cast<int>(u.size()))
        throw DomainError("adversarial length must be in [1, |U|]");
    for (const IntPolynomial& p : u)
        if (p.degree() < 1) throw DomainError("adversarial polynomials must be nonconstant");
    SeriesSpec s;
    s.kind_ = Kind::Adversarial;
    s.u_.assign(u.begin(), u.begin() + length);
    s.length_ = length;
    // running products Q_n = U_1 ... U_n and their sup-norm maximum
    std::vector<BigInt> qnorm;
    IntPolynomial q = IntPolynomial::constant(BigInt(1));
    for (int n = 0; n < length; ++n) {
        q = q * s.u_[static_cast<std::size_t>(n)];
        s.q_.push_back(q);
        qnorm.push_back(q.max_abs_coeff());
    }
    // choose t_0 < t_1 < ... minimal under the three growth constraints
    BigInt running_max = 0;
    s.t_.resize(static_cast<std::size_t>(length) + 1);
    for (int k = 0; k < length; ++k) {
        running_max = std::max(running_max, qnorm[static_cast<std::size_t>(k)]);
        // t_k > t_{k-1} + deg Q_k
        BigInt lower(1);
        if (k >= 1)
            lower = s.t_[static_cast<std::size_t>(k - 1)] +
                    s.q_[static_cast<std::size_t>(k - 1)].degree() + 1;
        // t_k >= deg Q_{k+1}
        BigInt degnext(s.q_[static_cast<std::size_t>(k)].degree());
        if (lower < degnext) lower = degnext;
        // max{|Q_1|,...,|Q_{k+1}|}^{1/t_k} <= 1 + 1/(k+1), i.e.
        // ((k+2)/(k+1))^{t_k} >= running max
        BigRational base(k + 2, k + 1);
        BigRational pw = rat_pow(base, lower);
        BigInt tk = lower;
        while (pw < running_max) {
            tk += 1;
            pw *= base;
        }
        s.t_[static_cast<std::size_t>(k)] = tk;
    }
    // s_n = t_{n-1} + deg Q_n for n = 1..length; final t_length keeps the chain
    s.s_.resize(static_cast<std::size_t>(length));
    for (int n = 1; n <= length; ++n)
        s.s_[static_cast<std::size_t>(n - 1)] =
            s.t_[static_cast<std::size_t>(n - 1)] + s.q_[static_cast<std::size_t>(n - 1)].degree();
    s.t_[static_cast<std::size_t>(length)] = s.s_[static_cast<std::size_t>(length - 1)] + 1;
    s.radius_floor_ = 1;
    s.restart_bound_ = 2.0;
    return s;
}

SeriesSpec& SeriesSpec::declare_bounded(BigInt a) {
    if (a <= 0) throw DomainError("coefficient bound must be positive");
    bounded_A_ = std::move(a);
    radius_floor_ = 1;
    return *this;
}

SeriesSpec& SeriesSpec::declare_restart_bound(double bound) {
    restart_bound_ = bound;
    return *this;
}

SeriesSpec& SeriesSpec::declare_contour(BigRational radius, BigRational max_value) {
    if (radius <= 0 || max_value <= 0) throw DomainError("contour data must be positive");
    contour_radius_ = std::move(radius);
    contour_max_ = std::move(max_value);
    return *this;
}

BigInt SeriesSpec::coeff(const BigInt& k) const {
    if (k < 0) return 0;
    switch (kind_) {
        case Kind::Factorial: {
            long j = first_index_;
            BigInt f = factorial_int(j);
            while (f < k) {
                ++j;
                f *= j;
            }
            return f == k ? 1 : 0;
        }
        case Kind::Diagonal: {
            for (std::size_t i = 0; i < exponents_.size(); ++i)
                if (exponents_[i] == k) return coefficients_[i];
            return 0;
        }
        case Kind::Blocks: {
            auto it = sparse_.find(k);
            return it == sparse_.end() ? BigInt(0) : it->second;
        }
        case Kind::Adversarial: {
            for (int n = 1; n <= length_; ++n) {
                const BigInt& tn1 = t_[static_cast<std::size_t>(n - 1)];
                const BigInt& sn = s_[static_cast<std::size_t>(n - 1)];
                if (k < tn1) return 0;
                if (k <= sn) {
                    BigInt off = k - tn1;
                    return q_[static_cast<std::size_t>(n - 1)].coeff(off.get_ui());
                }
            }
            return 0;
        }
    }
    return 0;
}

BigInt SeriesSpec::t(int n) const {
    if (n < 0) throw DomainError("block index must be >= 0");
    switch (kind_) {
        case Kind::Factorial: return factorial_int(first_index_ + n);
        case Kind::Diagonal:
            // t_0 = e_1; t_n = e_{n+1}
            if (n >= static_cast<int>(exponents_.size()))
                throw DomainError("diagonal prefix exhausted");
            return exponents_[static_cast<std::size_t>(n)];
        case Kind::Blocks:
        case Kind::Adversarial:
            if (n >= static_cast<int>(t_.size())) throw DomainError("block prefix exhausted");
            return t_[static_cast<std::size_t>(n)];
    }
    throw DomainError("unreachable");
}

BigInt SeriesSpec::s(int n) const {
    if (n < 1) throw DomainError("block index must be >= 1");
    switch (kind_) {
        case Kind::Factorial: return factorial_int(first_index_ + n - 1);
        case Kind::Diagonal:
            if (n > static_cast<int>(exponents_.size()))
                throw DomainError("diagonal prefix exhausted");
            return exponents_[static_cast<std::size_t>(n - 1)];
        case Kind::Blocks:
        case Kind::Adversarial:
            if (n > static_cast<int>(s_.size())) throw DomainError("block prefix exhausted");
            return s_[static_cast<std::size_t>(n - 1)];
    }
    throw DomainError("unreachable");
}

int SeriesSpec::max_block() const {
    switch (kind_) {
        case Kind::Factorial: return 1 << 20;
        case Kind::Diagonal: return static_cast<int>(exponents_.size()) - 1;
        case Kind::Blocks:
        case Kind::Adversarial: return static_cast<int>(s_.size());
    }
    return 0;
}

nlohmann::json SeriesSpec::to_json() const {
    nlohmann::json j;
    j["kind"] = kind_name();
    nlohmann::json params;
    switch (kind_) {
        case Kind::Factorial: params["first_index"] = first_index_; break;
        case Kind::Diagonal: {
            nlohmann::json es = nlohmann::json::array(), cs = nlohmann::json::array();
            for (const auto& e : exponents_) es.push_back(e.get_str());
            for (const auto& c : coefficients_) cs.push_back(c.get_str());
            params["exponents"] = es;
            params["coefficients"] = cs;
            break;
        }
        case Kind::Blocks: {
            nlohmann::json ts = nlohmann::json::array(), ss = nlohmann::json::array();
            for (const auto& t : t_) ts.push_back(t.get_str());
            for (const auto& s : s_) ss.push_back(s.get_str());
            nlohmann::json cs = nlohmann::json::object();
            for (const auto& [k, v] : sparse_) cs[k.get_str()] = v.get_str();
            params["t"] = ts;
            params["s"] = ss;
            params["coeffs"] = cs;
            break;
        }
        case Kind::Adversarial: {
            nlohmann::json us = nlohmann::json::array();
            for (const auto& u : u_) us.push_back(poly_json(u));
            params["polynomials"] = us;
            params["length"] = length_;
            break;
        }
    }
    j["parameters"] = params;
    j["bounded_A"] = bounded_A_ ? nlohmann::json(bounded_A_->get_str()) : nlohmann::json(nullptr);
    j["radius_floor"] = radius_floor_.get_str();
    j["restart_ratio_bound"] =
        restart_bound_ ? nlohmann::json(*restart_bound_) : nlohmann::json(nullptr);
    j["contour_radius"] =
        contour_radius_ ? nlohmann::json(contour_radius_->get_str()) : nlohmann::json(nullptr);
    j["contour_max"] =
        contour_max_ ? nlohmann::json(contour_max_->get_str()) : nlohmann::json(nullptr);
    return j;
}

SeriesSpec SeriesSpec::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const nlohmann::json& params = j.at("parameters");
    SeriesSpec s = [&]() -> SeriesSpec {
        if (kind == "factorial") return SeriesSpec::factorial(params.at("first_index").get<int>());
        if (kind == "diagonal") {
            std::vector<BigInt> es, cs;
            for (const auto& e : params.at("exponents")) es.push_back(bigint_from_json(e));
            for (const auto& c : params.at("coefficients")) cs.push_back(bigint_from_json(c));
            return SeriesSpec::diagonal(std::move(es), std::move(cs));
        }
        if (kind == "blocks") {
            std::vector<BigInt> ts, ss;
            for (const auto& t : params.at("t")) ts.push_back(bigint_from_json(t));
            for (const auto& sv : params.at("s")) ss.push_back(bigint_from_json(sv));
            std::map<BigInt, BigInt> cs;
            for (auto it = params.at("coeffs").begin(); it != params.at("coeffs").end(); ++it)
                cs.emplace(BigInt(it.key()), BigInt(it.value().get<std::string>()));
            return SeriesSpec::blocks(std::move(ts), std::move(ss), std::move(cs));
        }
        if (kind == "adversarial") {
            std::vector<IntPolynomial> us;
            for (const auto& u : params.at("polynomials")) us.push_back(poly_from_json(u));
            return SeriesSpec::adversarial(us, params.at("length").get<int>());
        }
        throw DomainError("unknown series kind: " + kind);
    }();
    if (!j.at("bounded_A").is_null()) s.declare_bounded(bigint_from_json(j.at("bounded_A")));
    if (j.contains("radius_floor")) {
        s.radius_floor_ = rational_from_json(j.at("radius_floor"));
        if (s.radius_floor_ <= 0) throw DomainError("radius floor must be positive");
    }
    if (j.contains("restart_ratio_bound") && !j.at("restart_ratio_bound").is_null())
        s.restart_bound_ = j.at("restart_ratio_bound").get<double>();
    if (j.contains("contour_radius") && !j.at("contour_radius").is_null())
        s.declare_contour(rational_from_json(j.at("contour_radius")),
                          rational_from_json(j.at("contour_max")));
    return s;
}

// ---------------------------------------------------------------------------
// validation

StructureReport validate_structure(const SeriesSpec& spec, int prefix) {
    if (prefix < 2) throw DomainError("validation prefix must be >= 2");
    if (prefix > spec.max_block())
        throw DomainError("prefix exceeds the available blocks of this series");
    StructureReport rep;
    rep.prefix = prefix;
    // window chain: 0 <= t_0 <= s_1 < t_1 <= s_2 < ...
    if (spec.t(0) < 0) throw DomainError("window chain violated: t_0 < 0");
    for (int n = 1; n <= prefix; ++n) {
        if (!(spec.t(n - 1) <= spec.s(n)))
            throw DomainError("window chain violated at n = " + std::to_string(n) +
                              ": t_{n-1} > s_n");
        if (!(spec.s(n) < spec.t(n)))
            throw DomainError("window chain violated at n = " + std::to_string(n) + ": s_n >= t_n");
    }
    // gap zeros, swept index by index within the scan budget
    const BigInt budget(static_cast<unsigned long>(Limits::current().gap_scan_budget));
    BigInt scanned(0);
    bool truncated = false;
    auto check_zero_range = [&](const BigInt& from, const BigInt& to_exclusive, int n) {
        for (BigInt k = from; k < to_exclusive; ++k) {
            if (scanned >= budget) {
                truncated = true;
                return;
            }
            scanned += 1;
            if (spec.coeff(k) != 0)
                throw DomainError("gap coefficient nonzero at k = " + k.get_str() +
                                  " (block n = " + std::to_string(n) + ")");
        }
    };
    check_zero_range(0, spec.t(0), 0);
    for (int n = 1; n <= prefix && !truncated; ++n)
        check_zero_range(spec.s(n) + 1, spec.t(n), n);
    rep.zero_scan_limit = scanned;
    if (truncated)
        rep.warnings.push_back("zero-gap sweep truncated by the scan budget; remaining gaps "
                               "hold by construction for rule-based series");
    // trend report
    double prev_ratio = 0;
    for (int n = 1; n <= prefix; ++n) {
        BigRational r(spec.t(n), spec.s(n));
        double val = r.get_d();
        rep.gap_growth.push_back(val);
        if (n > 2 && val < prev_ratio)
            rep.warnings.push_back("gap growth t_n/s_n decreased at n = " + std::to_string(n));
        prev_ratio = val;
    }
    for (int n = 1; n < prefix; ++n) {
        BigRational r(spec.s(n + 1), spec.t(n));
        rep.max_restart_ratio = std::max(rep.max_restart_ratio, r.get_d());
    }
    rep.declared_restart_bound = spec.restart_ratio_bound();
    if (rep.declared_restart_bound &&
        rep.max_restart_ratio > *rep.declared_restart_bound + 1e-12) {
        rep.restart_within_declared = false;
        rep.warnings.push_back("observed restart ratio exceeds the declared bound");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// partial sums

NFElement block_value(const SeriesSpec& spec, const NFElement& alpha, int n) {
    if (n < 1) throw DomainError("block index must be >= 1");
    const auto field = alpha.field_ptr();
    NFElement acc = field->zero();
    BigInt lo = spec.t(n - 1);
    BigInt hi = spec.s(n);
    if (lo < 0) throw DomainError("window chain violated: negative exponent at block " +
                                  std::to_string(n));
    if (lo > hi)
        throw DomainError("window chain violated at n = " + std::to_string(n) + ": t_{n-1} > s_n");
    NFElement power = alpha.pow(lo);
    for (BigInt k = lo; k <= hi; ++k) {
        BigInt a = spec.coeff(k);
        if (a != 0) acc = acc + power * field->from_rational(BigRational(a));
        if (k < hi) power = power * alpha;
    }
    return acc;
}

NFElement partial_sum(const SeriesSpec& spec, const NFElement& alpha, int n) {
    if (n < 1) throw DomainError("partial sum index must be >= 1");
    if (n > spec.max_block()) throw DomainError("prefix exceeds the available blocks");
    const auto field = alpha.field_ptr();
    NFElement acc = field->zero();
    for (int m = 1; m <= n; ++m) acc = acc + block_value(spec, alpha, m);
    return acc;
}

// ---------------------------------------------------------------------------
// tail bounds

TailBound tail_bound(const SeriesSpec& spec, const ComplexBall& alpha_value, int n) {
    if (n < 1) throw DomainError("tail index must be >= 1");
    RealInterval ab = alpha_value.abs_bounds();
    BigRational abs_up = ab.hi.to_rational();
    TailBound tb;
    tb.n = n;
    BigInt tn = spec.t(n);
    constexpr mpfr_prec_t p = 96;
    if (spec.bounded_A()) {
        if (!(abs_up < spec.radius_floor()))
            throw DomainError("|alpha| not certified below the radius floor");
        const BigInt& a = *spec.bounded_A();
        if (abs_up == 0) {
            tb.theta = Real::from_long(0, p);
            mpfr_set_inf(tb.theta.raw(), 1);
            tb.c = Real::from_bigint(a, p, MPFR_RNDU);
            tb.bound = Real::zero(p);
            return tb;
        }
        // bound = A |alpha|^{t_n} / (1 - |alpha|), everything upper-rounded
        Real au = Real::from_rational(abs_up, p, MPFR_RNDU);
        Real pw(p);
        mpfr_pow_z(pw.raw(), au.raw(), tn.get_mpz_t(), MPFR_RNDU);
        Real denom(p);
        mpfr_ui_sub(denom.raw(), 1, au.raw(), MPFR_RNDD);
        if (denom.sign() <= 0) throw DomainError("|alpha| not certified below the radius floor");
        Real bound(p);
        mpfr_div(bound.raw(), pw.raw(), denom.raw(), MPFR_RNDU);
        mpfr_mul_z(bound.raw(), bound.raw(), a.get_mpz_t(), MPFR_RNDU);
        tb.bound = bound;
        // theta = log(1/|alpha|) rounded down, C = A/(1 - |alpha|) rounded up
        Real theta(p);
        mpfr_log(theta.raw(), au.raw(), MPFR_RNDU);
        mpfr_neg(theta.raw(), theta.raw(), MPFR_RNDD);
        tb.theta = theta;
        Real c(p);
        mpfr_div_z(c.raw(), denom.raw(), a.get_mpz_t(), MPFR_RNDD);
        mpfr_ui_div(c.raw(), 1, c.raw(), MPFR_RNDU);
        tb.c = c;
        return tb;
    }
    if (spec.contour_radius() && spec.contour_max()) {
        const BigRational& r = *spec.contour_radius();
        const BigRational& m = *spec.contour_max();
        if (!(abs_up < r))
            throw DomainError("|alpha| not certified below the declared contour radius");
        // |a_k| <= M r^{-k}: tail <= M (|alpha|/r)^{t_n} / (1 - |alpha|/r)
        BigRational ratio = abs_up / r;
        Real q = Real::from_rational(ratio, p, MPFR_RNDU);
        Real pw(p);
        mpfr_pow_z(pw.raw(), q.raw(), tn.get_mpz_t(), MPFR_RNDU);
        Real denom(p);
        mpfr_ui_sub(denom.raw(), 1, q.raw(), MPFR_RNDD);
        if (denom.sign() <= 0) throw DomainError("contour geometry rejected alpha");
        Real mv = Real::from_rational(m, p, MPFR_RNDU);
        Real bound(p);
        mpfr_div(bound.raw(), pw.raw(), denom.raw(), MPFR_RNDU);
        mpfr_mul(bound.raw(), bound.raw(), mv.raw(), MPFR_RNDU);
        tb.bound = bound;
        Real theta(p);
        mpfr_log(theta.raw(), q.raw(), MPFR_RNDU);
        mpfr_neg(theta.raw(), theta.raw(), MPFR_RNDD);
        tb.theta = theta;
        Real c(p);
        mpfr_div(c.raw(), mv.raw(), denom.raw(), MPFR_RNDU);
        tb.c = c;
        return tb;
    }
    throw DomainError(
        "tail bound needs a bounded-type coefficient bound or declared contour data");
}

ComplexBall value_enclosure(const SeriesSpec& spec, const NFElement& alpha, const Real& target) {
    if (target.sign() <= 0) throw DomainError("target radius must be positive");
    ComplexBall av = eval_element(alpha, 96);
    Real half(64);
    mpfr_div_ui(half.raw(), target.raw(), 2, MPFR_RNDD);
    const int cap = std::min<long>(spec.max_block(), Limits::current().witness_index_cap * 4);
    for (int n = 1; n <= cap; ++n) {
        TailBound tb = tail_bound(spec, av, n);
        if (!(tb.bound <= half)) continue;
        NFElement f = partial_sum(spec, alpha, n);
        long exp2 = mpfr_get_exp(half.raw());
        mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max<long>(64, -exp2 + 8));
        ComplexBall v = eval_element(f, prec);
        return v.inflate(tb.bound);
    }
    throw CapError("no block index reached the requested enclosure radius");
}

}  // namespace serieslab
