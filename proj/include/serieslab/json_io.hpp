#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "serieslab/certified_numerics.hpp"
#include "serieslab/exact_algebra.hpp"

namespace serieslab {

// Canonical JSON conventions: objects carry sorted keys (nlohmann default),
// exact integers and rationals travel as decimal strings, certified reals as
// exact hexadecimal float literals.

inline nlohmann::json bigint_json(const BigInt& v) { return v.get_str(); }

inline BigInt bigint_from_json(const nlohmann::json& j) {
    if (!j.is_string()) throw DomainError("expected a decimal-string integer");
    return BigInt(j.get<std::string>());
}

inline nlohmann::json rational_json(const BigRational& v) { return v.get_str(); }

inline BigRational rational_from_json(const nlohmann::json& j) {
    if (!j.is_string()) throw DomainError("expected a decimal-string rational");
    BigRational r(j.get<std::string>());
    r.canonicalize();
    return r;
}

inline nlohmann::json poly_json(const IntPolynomial& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const BigInt& c : p.coeffs()) arr.push_back(c.get_str());
    return arr;
}

inline IntPolynomial poly_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw DomainError("expected a coefficient array");
    std::vector<BigInt> v;
    for (const auto& c : j) v.push_back(bigint_from_json(c));
    return IntPolynomial(std::move(v));
}

inline nlohmann::json real_json(const Real& r) { return r.to_hex(); }

inline Real real_from_json(const nlohmann::json& j, mpfr_prec_t prec) {
    if (!j.is_string()) throw DomainError("expected a hex-float string");
    return Real::from_hex(j.get<std::string>(), prec);
}

inline nlohmann::json ball_json(const ComplexBall& b) {
    nlohmann::json j;
    j["im"] = b.mid_im().to_hex();
    j["rad"] = b.radius().to_hex();
    j["re"] = b.mid_re().to_hex();
    return j;
}

inline ComplexBall ball_from_json(const nlohmann::json& j, mpfr_prec_t prec = 128) {
    Real re = real_from_json(j.at("re"), prec);
    Real im = real_from_json(j.at("im"), prec);
    Real rad = real_from_json(j.at("rad"), 64);
    return ball_with(std::move(re), std::move(im), std::move(rad));
}

// canonical text: sorted keys, 2-space indent, trailing newline
inline std::string canonical_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace serieslab
