#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace delannoy {

// Error taxonomy, mapped to CLI exit codes: structural misuse -> 2,
// resource caps -> 3, falsified mathematical invariants -> 1.
struct structural_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Raised when a computation would falsify a classification fact the
// library relies on (must not occur on valid inputs at desk scale).
struct diagnostic_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Enumeration caps. All configurable; defaults sized for desk scale
// (registry depth 4, relation enumeration on products of arm <= 3+3).
struct Limits {
    std::size_t max_product_orbits = 2'000'000;   // amalgams of one product
    std::size_t max_triple_words = 2'000'000;     // per-coordinate triple shuffles
    std::size_t max_stab_orbits = 50'000'000;     // placements in one convolution build
    int max_relation_arm = 5;                     // per-factor arm cap for relation enumeration
};
Limits& limits();

// Small exact fraction used for point coordinates and pinned sets.
// Values stay tiny (column indices, interval subdivisions), so 64-bit
// numerator/denominator with 128-bit cross multiplication is exact.
struct Q64 {
    long long num = 0;
    long long den = 1;

    Q64() = default;
    Q64(long long n) : num(n), den(1) {}
    Q64(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw structural_error("Q64: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    friend Q64 operator+(const Q64& a, const Q64& b) {
        return Q64(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Q64 operator-(const Q64& a, const Q64& b) {
        return Q64(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Q64 operator*(const Q64& a, const Q64& b) { return Q64(a.num * b.num, a.den * b.den); }
    friend Q64 operator/(const Q64& a, const Q64& b) { return Q64(a.num * b.den, a.den * b.num); }

    friend bool operator==(const Q64& a, const Q64& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(const Q64& a, const Q64& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Q64& a, const Q64& b) { return a == b || a < b; }
    friend bool operator>(const Q64& a, const Q64& b) { return b < a; }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

} // namespace delannoy
