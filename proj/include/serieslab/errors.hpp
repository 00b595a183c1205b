#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace serieslab {

// Invalid mathematical input: zero polynomial, field mismatch, degree out of
// range, malformed parse input. CLI maps this to exit code 1.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A configured resource ceiling was hit (precision cap, enumeration budget,
// witness index cap). Not a mathematical verdict. CLI maps this to exit code 2.
class CapError : public std::runtime_error {
public:
    explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

// Global resource ceilings. Library code reads these through Limits::current();
// the SERIES_LAB_PRECISION_CAP environment variable overrides precision_cap_bits.
struct Limits {
    long precision_cap_bits = 1L << 20;
    int factor_degree_cap = 16;
    long witness_index_cap = 12;
    unsigned long long enumeration_budget = 20'000'000ULL;
    unsigned long long gap_scan_budget = 10'000'000ULL;

    static const Limits& current() {
        static Limits instance = [] {
            Limits l;
            if (const char* env = std::getenv("SERIES_LAB_PRECISION_CAP")) {
                char* end = nullptr;
                long cap = std::strtol(env, &end, 10);
                if (end != env && cap > 0) l.precision_cap_bits = cap;
            }
            return l;
        }();
        return instance;
    }
};

}  // namespace serieslab
