#pragma once

#include <cstdint>
#include <cassert>

#include "error.hpp"

namespace whitlab {

// Small fixed-width modular helpers for the hot enumeration kernels.
// Moduli here are at most a few times 10^9 so products fit in __int128.

inline int64_t mulmod(int64_t a, int64_t b, int64_t m) {
    assert(m > 0);
    __int128 r = (__int128)a * b % m;
    if (r < 0) r += m;
    return (int64_t)r;
}

inline int64_t addmod(int64_t a, int64_t b, int64_t m) {
    int64_t r = (a + b) % m;
    if (r < 0) r += m;
    return r;
}

inline int64_t powmod(int64_t a, uint64_t e, int64_t m) {
    int64_t r = 1 % m;
    a %= m;
    if (a < 0) a += m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

inline int64_t gcd64(int64_t a, int64_t b) {
    while (b) {
        int64_t t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

// Inverse of a modulo m, m > 1, gcd(a, m) = 1.
inline int64_t invmod(int64_t a, int64_t m) {
    int64_t t = 0, newt = 1, r = m, newr = a % m;
    if (newr < 0) newr += m;
    while (newr != 0) {
        int64_t q = r / newr;
        int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) fail(ErrorCode::DivisionByZero, "invmod: not invertible");
    return t < 0 ? t + m : t;
}

// p-adic valuation of a nonzero 64-bit integer.
inline int val_p(int64_t n, long p) {
    assert(n != 0);
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline int64_t ipow64(int64_t b, int e) {
    int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        assert(r <= INT64_MAX / b);
        r *= b;
    }
    return r;
}

} // namespace whitlab
