#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "delannoy/base.hpp"

namespace delannoy {

// Default scalar field: exact rationals (GMP). Serialized as "p/q".
using Rational = mpq_class;

inline std::string rat_str(const Rational& x) { return x.get_str(); }

inline Rational rat_parse(const std::string& s) {
    Rational x;
    if (x.set_str(s, 10) != 0) throw structural_error("bad rational literal: " + s);
    x.canonicalize();
    return x;
}

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

// Prime-field scalar mode. The category is semisimple over any field;
// the permutation-level machinery is templated so the law suite can run
// mod p as well. Acceptance runs use rationals.
template <std::uint64_t P>
struct Fp {
    std::uint64_t v = 0;
    Fp() = default;
    Fp(long long x) {
        long long r = x % static_cast<long long>(P);
        v = static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(P) : r);
    }
    friend Fp operator+(Fp a, Fp b) { return from_raw((a.v + b.v) % P); }
    friend Fp operator-(Fp a, Fp b) { return from_raw((a.v + P - b.v) % P); }
    friend Fp operator*(Fp a, Fp b) {
        return from_raw(static_cast<std::uint64_t>((static_cast<unsigned __int128>(a.v) * b.v) % P));
    }
    Fp& operator+=(Fp o) { *this = *this + o; return *this; }
    Fp& operator-=(Fp o) { *this = *this - o; return *this; }
    Fp& operator*=(Fp o) { *this = *this * o; return *this; }
    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
    friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }
    static Fp from_raw(std::uint64_t r) { Fp f; f.v = r; return f; }
};

template <std::uint64_t P>
inline bool is_zero(const Fp<P>& x) { return x.v == 0; }

} // namespace delannoy
