#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <climits>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "error.hpp"

namespace whitlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt pow_big(long base, int exp);

/// Ambient data for F = Q_p with p an odd prime.  Unit parts of scalars are
/// stored modulo p^N where N is the working precision.
struct FieldContext {
    long p;
    int default_precision;
    int kappa_F;        // = 1 for Q_p, p odd
    int v3;             // v_p(3): 1 iff p == 3
    long zeta_nonsquare; // smallest positive quadratic non-residue mod p

    FieldContext() : p(0), default_precision(0), kappa_F(1), v3(0), zeta_nonsquare(0) {}
    FieldContext(long p_, int precision);

    bool operator==(const FieldContext& o) const {
        return p == o.p && default_precision == o.default_precision;
    }
};

/// An element of Q_p known to finite precision: x = unit * p^val with the
/// unit part stored modulo p^prec.  The tracked zero has val = +infinity.
class PadicScalar {
public:
    static constexpr int kInfValuation = INT_MAX;

    PadicScalar() : p_(0), val_(kInfValuation), prec_(0) {}

    // Tracked zero for a given prime.
    static PadicScalar zero(long p) {
        PadicScalar z;
        z.p_ = p;
        return z;
    }

    // unit * p^val, unit taken mod p^prec (must be coprime to p unless 0).
    static PadicScalar make(long p, int val, const BigInt& unit, int prec);

    static PadicScalar from_integer(const FieldContext& ctx, const BigInt& n) {
        return from_integer(ctx.p, n, ctx.default_precision);
    }
    static PadicScalar from_integer(long p, BigInt n, int prec);
    static PadicScalar from_rational(long p, const BigInt& num, const BigInt& den, int prec);
    static PadicScalar one(long p, int prec) { return make(p, 0, 1, prec); }

    bool is_zero() const { return val_ == kInfValuation; }
    long p() const { return p_; }
    int valuation() const { return val_; }
    const BigInt& unit() const { return unit_; }
    int precision() const { return prec_; }
    bool is_unit() const { return !is_zero() && val_ == 0; }

    // Residue of the unit part modulo p^k, k <= precision.
    BigInt unit_mod(int k) const;
    // Leading digit (unit mod p) as a plain integer.
    long leading_digit() const;
    // The value as an integer mod p^k (requires val >= 0 and enough digits).
    BigInt lift_mod(int k) const;

    std::string str() const;

private:
    long p_;
    int val_;
    BigInt unit_;
    int prec_;
};

std::ostream& operator<<(std::ostream& os, const PadicScalar& x);

PadicScalar add(const PadicScalar& a, const PadicScalar& b);
PadicScalar sub(const PadicScalar& a, const PadicScalar& b);
PadicScalar mul(const PadicScalar& a, const PadicScalar& b);
PadicScalar div(const PadicScalar& a, const PadicScalar& b);
PadicScalar neg(const PadicScalar& a);
PadicScalar inverse(const PadicScalar& a);
PadicScalar pow_int(const PadicScalar& a, int e);
PadicScalar mul_small(const PadicScalar& a, long c, int prec_hint = 0);
// x * p^k
PadicScalar shift(const PadicScalar& a, int k);

inline PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) { return add(a, b); }
inline PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return sub(a, b); }
inline PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) { return mul(a, b); }
inline PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) { return div(a, b); }
inline PadicScalar operator-(const PadicScalar& a) { return neg(a); }

// Equality to the shared precision: valuations agree and units agree
// mod p^min(N1, N2).  Tracked zeros compare by valuation only.
bool equal(const PadicScalar& a, const PadicScalar& b);

// v(a - b), capped by the absolute precision both sides are known to.
int diff_valuation(const PadicScalar& a, const PadicScalar& b);

/// Branch selector for square roots and quadratic solvers.
struct Branch {
    enum Kind { LeadingDigit, UnitRoot, SmallRoot, PlusSqrt } kind = LeadingDigit;
    long digit = 0; // for LeadingDigit: required leading digit of the result

    static Branch leading(long d) { return Branch{LeadingDigit, d}; }
    static Branch unit_root() { return Branch{UnitRoot, 0}; }
    static Branch small_root() { return Branch{SmallRoot, 0}; }
    static Branch plus_sqrt() { return Branch{PlusSqrt, 0}; }
};

// Square root with prescribed leading digit of its unit part.
// Requires v(x) even and the unit part a quadratic residue mod p.
PadicScalar sqrt_hensel(const PadicScalar& x, long branch_digit);
// Canonical branch: leading digit in [1, (p-1)/2].
PadicScalar sqrt_canonical(const PadicScalar& x);
bool is_square(const PadicScalar& x);
// Legendre symbol of the unit part (+1 / -1); requires x a unit.
int legendre_unit(const PadicScalar& x);

// log(x) = sum (-1)^(i-1) (x-1)^i / i for x in 1 + p O.
PadicScalar padic_log(const PadicScalar& x);

// A root R of R^2 + t R - Bsq = 0 selected by `branch`:
//  - UnitRoot:      the unit root (requires v(t)=0, v(Bsq)>0), R = -t mod p.
//  - SmallRoot:     the companion root -Bsq / R_unit.
//  - LeadingDigit:  Hensel root with the given leading digit (unit roots).
//  - PlusSqrt:      (-t + sqrt_canonical(t^2 + 4 Bsq)) / 2.
PadicScalar solve_quadratic_root(const PadicScalar& t, const PadicScalar& Bsq, Branch branch);

// Evaluate sum coeff(k) z^k.  `coeff` is consulted for k = 0, 1, ... until
// terms fall below the working precision; max_terms guards runaway series.
PadicScalar eval_power_series(const std::function<PadicScalar(int)>& coeff,
                              const PadicScalar& z, int max_terms = 4096);
PadicScalar eval_power_series(const std::vector<PadicScalar>& coeffs, const PadicScalar& z);

} // namespace whitlab
