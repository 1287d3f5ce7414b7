#pragma once

#include <cstdint>
#include <cmath>
#include <string>

#include "modarith.hpp"
#include "padic.hpp"

namespace whitlab {

/// Exact argument theta in Q/Z of a root of unity e^{2 pi i theta},
/// kept in lowest terms with 0 <= num < den.
struct AngleQZ {
    int64_t num = 0;
    int64_t den = 1;

    AngleQZ() = default;
    AngleQZ(int64_t n, int64_t d) {
        if (d == 0) fail(ErrorCode::InvalidArgument, "angle with zero denominator");
        if (d < 0) {
            d = -d;
            n = -n;
        }
        n %= d;
        if (n < 0) n += d;
        int64_t g = gcd64(n, d);
        if (g == 0) g = 1;
        num = n / g;
        den = d / g;
    }

    bool is_zero() const { return num == 0; }
    double to_double() const { return (double)num / (double)den; }

    bool operator==(const AngleQZ& o) const { return num == o.num && den == o.den; }
    bool operator!=(const AngleQZ& o) const { return !(*this == o); }
    bool operator<(const AngleQZ& o) const {
        return num * (__int128)o.den < (__int128)o.num * den;
    }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

inline AngleQZ operator+(const AngleQZ& a, const AngleQZ& b) {
    int64_t g = gcd64(a.den, b.den);
    int64_t l = a.den / g * b.den;
    return AngleQZ(a.num * (l / a.den) + b.num * (l / b.den), l);
}

inline AngleQZ operator-(const AngleQZ& a) { return AngleQZ(-a.num, a.den); }
inline AngleQZ operator-(const AngleQZ& a, const AngleQZ& b) { return a + (-b); }

// n * a for (possibly huge) integer n: only n mod den matters.
inline AngleQZ scale(const AngleQZ& a, const BigInt& n) {
    BigInt r = n % a.den;
    return AngleQZ(a.num * (int64_t)r, a.den);
}
inline AngleQZ scale(const AngleQZ& a, int64_t n) { return AngleQZ(a.num * (n % a.den), a.den); }

// The p-adic fractional part of x as an angle: 0 whenever v(x) >= 0.
inline AngleQZ frac_angle(const PadicScalar& x) {
    if (x.is_zero() || x.valuation() >= 0) return AngleQZ();
    int k = -x.valuation();
    BigInt den = pow_big(x.p(), k);
    if (den > BigInt(int64_t(4e15))) fail(ErrorCode::PrecisionExhausted, "angle denominator overflow");
    BigInt num = x.unit_mod(k);
    return AngleQZ((int64_t)num, (int64_t)den);
}

} // namespace whitlab
