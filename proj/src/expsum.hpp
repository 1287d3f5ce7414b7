#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>

#include "angle.hpp"

namespace whitlab {

/// Exact element of Q(zeta_L): a rational combination of L-th roots of
/// unity kept in canonical form.  The canonical basis omits, for every
/// prime l | L, the exponents whose l-adic "top digit" is l-1; reduction
/// uses the relations sum_k zeta^(x + k L/l) = 0.  The zero test is exact.
class ExpSum {
public:
    ExpSum() : L_(1) {}
    explicit ExpSum(int64_t L) : L_(L) {}

    static ExpSum zero(int64_t L = 1) { return ExpSum(L); }
    static ExpSum from_rational(const Rational& r);
    static ExpSum root_of_unity(const AngleQZ& a, const Rational& coeff = 1);

    int64_t modulus() const { return L_; }
    const std::map<int64_t, Rational>& coeffs() const { return c_; }

    void add_term(int64_t exponent, const Rational& coeff);
    void add_angle(const AngleQZ& a, const Rational& coeff);

    // Canonical reduction; shrinks the modulus when possible.
    void canonicalize();
    bool is_zero() const;

    std::complex<double> to_complex() const;
    double abs() const { return std::abs(to_complex()); }
    std::string str() const;

    friend ExpSum operator+(const ExpSum& a, const ExpSum& b);
    friend ExpSum operator-(const ExpSum& a, const ExpSum& b);
    friend ExpSum operator*(const ExpSum& a, const ExpSum& b);
    ExpSum conj() const;
    ExpSum scaled(const Rational& r) const;

    bool equals(const ExpSum& other) const;

private:
    void rebase(int64_t newL); // embed into Q(zeta_newL), L | newL
    int64_t L_;
    std::map<int64_t, Rational> c_;
};

/// A finite value of the form sum_r q^(r/12) * (element of Q(zeta_L)),
/// graded by twelfth powers of q with slots normalized to 0 <= r < 12.
/// Closed-form evaluators resolve half-integral powers of q into explicit
/// Gauss sums so that comparisons against brute-force oracles are slotwise.
class CycValue {
public:
    CycValue() : q_(0) {}
    explicit CycValue(long q) : q_(q) {}

    static CycValue zero(long q) { return CycValue(q); }
    static CycValue from_rational(long q, const Rational& r);
    static CycValue from_expsum(long q, const ExpSum& s, int r12 = 0);
    static CycValue from_angle(long q, const AngleQZ& a, const Rational& coeff = 1, int r12 = 0);

    long q() const { return q_; }
    const std::map<int, ExpSum>& slots() const { return slots_; }

    void accumulate(int r12, const ExpSum& s);
    void normalize();

    bool is_zero() const;
    std::complex<double> to_complex() const;
    double abs() const { return std::abs(to_complex()); }
    std::string str() const;

    friend CycValue operator+(const CycValue& a, const CycValue& b);
    friend CycValue operator*(const CycValue& a, const CycValue& b);
    CycValue conj() const;
    CycValue scaled(const Rational& r) const;
    CycValue shifted(int dr12) const; // multiply by q^(dr12/12)

    bool equals(const CycValue& other) const;

private:
    long q_;
    std::map<int, ExpSum> slots_;
};

} // namespace whitlab
