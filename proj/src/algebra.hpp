#pragma once

#include "padic.hpp"

namespace whitlab {

enum class AlgebraKind { Split, Unramified, Ramified };

const char* algebra_kind_name(AlgebraKind k);

/// The quadratic etale algebra E over F = Q_p:
///   Split:      E = F x F,          Omega = (p, p)
///   Unramified: E = F(sqrt(zeta)),  Omega = p
///   Ramified:   E = F(Omega),       Omega^2 = p
/// Convention (e, f, d) = (1, 2, 0) for Split and Unramified, (2, 1, 1) for
/// Ramified; n_psi_E = -d/f, kappa_E = 1 for all three since p is odd.
struct AlgebraDescriptor {
    AlgebraKind kind;
    long p;
    long zeta; // the fixed non-square unit class representative
    int e, f, d;
    int n_psi_E;
    int kappa_E;

    AlgebraDescriptor() : kind(AlgebraKind::Split), p(0), zeta(0), e(1), f(2), d(0), n_psi_E(0), kappa_E(1) {}
    AlgebraDescriptor(AlgebraKind k, const FieldContext& ctx);

    bool operator==(const AlgebraDescriptor& o) const { return kind == o.kind && p == o.p; }
};

/// Element of E.  Split: the pair (c0, c1).  Field cases: c0 + c1 * theta
/// with theta = sqrt(zeta) (unramified) or theta = Omega (ramified).
class AlgebraElement {
public:
    AlgebraElement() {}
    AlgebraElement(const AlgebraDescriptor& desc, const PadicScalar& c0, const PadicScalar& c1)
        : desc_(desc), c0_(c0), c1_(c1) {}

    // Embedding of F (diagonal for the split algebra).
    static AlgebraElement from_scalar(const AlgebraDescriptor& desc, const PadicScalar& x) {
        return desc.kind == AlgebraKind::Split ? AlgebraElement(desc, x, x)
                                               : AlgebraElement(desc, x, PadicScalar::zero(desc.p));
    }
    static AlgebraElement one(const AlgebraDescriptor& desc, int prec) {
        return from_scalar(desc, PadicScalar::one(desc.p, prec));
    }

    const AlgebraDescriptor& descriptor() const { return desc_; }
    const PadicScalar& c0() const { return c0_; }
    const PadicScalar& c1() const { return c1_; }

    bool is_zero() const { return c0_.is_zero() && c1_.is_zero(); }
    bool is_unit() const;
    // True when x lies in p_E^k (E-normalized valuation).
    bool in_pE(int k) const;

    std::string str() const;

private:
    AlgebraDescriptor desc_;
    PadicScalar c0_, c1_;
};

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement neg(const AlgebraElement& a);
AlgebraElement inverse(const AlgebraElement& a);
AlgebraElement div(const AlgebraElement& a, const AlgebraElement& b);

inline AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) { return add(a, b); }
inline AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) { return sub(a, b); }
inline AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return mul(a, b); }
inline AlgebraElement operator/(const AlgebraElement& a, const AlgebraElement& b) { return div(a, b); }

// sigma: the non-trivial automorphism (component swap for Split).
AlgebraElement conj(const AlgebraElement& a);
PadicScalar trace(const AlgebraElement& a);
PadicScalar norm(const AlgebraElement& a);

// The uniformizer Omega of E as an element.
AlgebraElement omega(const AlgebraDescriptor& desc, int prec);
// Multiply by Omega^k (k may be negative).
AlgebraElement mul_omega_pow(const AlgebraElement& a, int k);

// log_E on 1 + p_E; componentwise log_F on the split algebra.
AlgebraElement padic_log(const AlgebraElement& x);

bool equal(const AlgebraElement& a, const AlgebraElement& b);

} // namespace whitlab
