#pragma once

#include <complex>
#include <functional>

#include "expsum.hpp"
#include "padic.hpp"

namespace whitlab {

/// Integration domain inside F for the brute-force Riemann sums.
/// `level` is M: the phase must factor through residue classes mod p^M
/// (of the unit coordinate, for the annulus).  All point weights within a
/// domain are equal; see the measure notes in integrate.cpp.
struct IntegralDomain {
    enum class Set { RingO, Units, CosetAdd, CosetMul, Annulus };
    enum class Measure { Additive, Multiplicative };

    Set set = Set::RingO;
    Measure measure = Measure::Additive;
    int level = 1;
    PadicScalar t0; // coset base point
    int k = 0;      // coset depth: t0 + p^k O  (resp. t0 (1 + p^k O))
    int m = 0;      // annulus: p^m O* = p^m \ p^(m+1)

    static IntegralDomain ring(int M) { return {Set::RingO, Measure::Additive, M, {}, 0, 0}; }
    static IntegralDomain units_mult(int M) {
        return {Set::Units, Measure::Multiplicative, M, {}, 0, 0};
    }
    static IntegralDomain units_add(int M) { return {Set::Units, Measure::Additive, M, {}, 0, 0}; }
    static IntegralDomain coset_add(const PadicScalar& t0, int k, int M,
                                    Measure mu = Measure::Additive) {
        return {Set::CosetAdd, mu, M, t0, k, 0};
    }
    static IntegralDomain coset_mult(const PadicScalar& t0, int k, int M) {
        return {Set::CosetMul, Measure::Multiplicative, M, t0, k, 0};
    }
    static IntegralDomain annulus(int m, int M) {
        return {Set::Annulus, Measure::Additive, M, {}, 0, m};
    }
};

struct IntegrateOptions {
    int64_t max_points = 8'000'000;
    int64_t dense_cap = 6'000'000; // largest root-of-unity order handled exactly
    int sparse_cap = 250'000;      // largest canonical support materialized
    bool verify_level = true;
    int verify_samples = 6;
    int workers = 1;
};

struct IntegralResult {
    ExpSum exact;      // canonical value (times nothing); valid iff exact_ok
    bool exact_ok = false;
    bool zero_known = false; // the exact zero test ran
    bool is_zero = false;    // its outcome
    std::complex<double> approx{0.0, 0.0};
    int64_t points = 0;
    int level = 0;

    CycValue value(long q) const { return CycValue::from_expsum(q, exact); }
};

using PhaseFn = std::function<AngleQZ(const PadicScalar& t)>;

/// Exact weighted sum of psi(phase(t)) over the residue classes of the
/// domain.  Exact cyclotomic accumulation up to the configured caps, with
/// a deterministic floating rendering alongside.
IntegralResult brute_force_integral(const FieldContext& ctx, const PhaseFn& phase,
                                    const IntegralDomain& dom, const IntegrateOptions& opt = {});

/// Same sum for a polynomial phase sum_i coeffs[i] t^i, evaluated with
/// fixed-width modular arithmetic (the hot path for the Gauss/Airy grids).
IntegralResult brute_force_poly(const FieldContext& ctx, const std::vector<PadicScalar>& coeffs,
                                const IntegralDomain& dom, const IntegrateOptions& opt = {});

/// Shared finisher for dedicated kernels: canonicalize a coefficient vector
/// over Z/L, run the exact zero test, and package counts * weight.
IntegralResult finish_counts(std::vector<int64_t>& counts, int64_t L, const Rational& weight,
                             int64_t points, int level, int sparse_cap);

} // namespace whitlab
