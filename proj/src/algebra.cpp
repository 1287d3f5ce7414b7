#include "algebra.hpp"

#include <cassert>
#include <sstream>

namespace whitlab {

const char* algebra_kind_name(AlgebraKind k) {
    switch (k) {
        case AlgebraKind::Split: return "split";
        case AlgebraKind::Unramified: return "unramified";
        case AlgebraKind::Ramified: return "ramified";
    }
    return "?";
}

AlgebraDescriptor::AlgebraDescriptor(AlgebraKind k, const FieldContext& ctx)
    : kind(k), p(ctx.p), zeta(ctx.zeta_nonsquare), kappa_E(1) {
    if (k == AlgebraKind::Ramified) {
        e = 2;
        f = 1;
        d = 1;
    } else {
        e = 1;
        f = 2;
        d = 0;
    }
    n_psi_E = -d / f; // 0 for split/unramified, -1 for ramified
    if (k == AlgebraKind::Ramified) n_psi_E = -1;
}

namespace {

// theta^2 as an F-scalar for the field cases.
PadicScalar theta_sq(const AlgebraDescriptor& desc, int prec) {
    if (desc.kind == AlgebraKind::Unramified)
        return PadicScalar::from_integer(desc.p, desc.zeta, prec);
    assert(desc.kind == AlgebraKind::Ramified);
    return PadicScalar::make(desc.p, 1, 1, prec);
}

int prec_of(const AlgebraElement& a) {
    int prec = INT_MAX;
    if (!a.c0().is_zero()) prec = std::min(prec, a.c0().precision());
    if (!a.c1().is_zero()) prec = std::min(prec, a.c1().precision());
    return prec == INT_MAX ? 8 : prec;
}

} // namespace

bool AlgebraElement::is_unit() const {
    switch (desc_.kind) {
        case AlgebraKind::Split:
            return c0_.is_unit() && c1_.is_unit();
        case AlgebraKind::Unramified:
            // v_E = min(v(c0), v(c1))
            return (!c0_.is_zero() && c0_.valuation() == 0) || (!c1_.is_zero() && c1_.valuation() == 0);
        case AlgebraKind::Ramified:
            // v_E = min(2 v(c0), 2 v(c1) + 1)
            return !c0_.is_zero() && c0_.valuation() == 0;
    }
    return false;
}

bool AlgebraElement::in_pE(int k) const {
    auto vge = [](const PadicScalar& x, int bound) {
        return x.is_zero() || x.valuation() >= bound;
    };
    switch (desc_.kind) {
        case AlgebraKind::Split:
            return vge(c0_, k) && vge(c1_, k);
        case AlgebraKind::Unramified:
            return vge(c0_, k) && vge(c1_, k);
        case AlgebraKind::Ramified:
            // v_E(c0 + c1*Omega) = min(2 v(c0), 2 v(c1) + 1)
            return vge(c0_, (k + 1) / 2) && vge(c1_, k / 2);
    }
    return false;
}

std::string AlgebraElement::str() const {
    std::ostringstream os;
    os << "(" << c0_.str() << ", " << c1_.str() << " | " << algebra_kind_name(desc_.kind) << ")";
    return os.str();
}

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) {
    assert(a.descriptor() == b.descriptor());
    return AlgebraElement(a.descriptor(), add(a.c0(), b.c0()), add(a.c1(), b.c1()));
}

AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) {
    assert(a.descriptor() == b.descriptor());
    return AlgebraElement(a.descriptor(), sub(a.c0(), b.c0()), sub(a.c1(), b.c1()));
}

AlgebraElement neg(const AlgebraElement& a) {
    return AlgebraElement(a.descriptor(), neg(a.c0()), neg(a.c1()));
}

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
    const AlgebraDescriptor& d = a.descriptor();
    assert(d == b.descriptor());
    if (d.kind == AlgebraKind::Split)
        return AlgebraElement(d, mul(a.c0(), b.c0()), mul(a.c1(), b.c1()));
    // (a0 + a1 th)(b0 + b1 th) = a0 b0 + a1 b1 th^2 + (a0 b1 + a1 b0) th
    PadicScalar t2 = theta_sq(d, std::max(prec_of(a), prec_of(b)));
    PadicScalar c0 = add(mul(a.c0(), b.c0()), mul(mul(a.c1(), b.c1()), t2));
    PadicScalar c1 = add(mul(a.c0(), b.c1()), mul(a.c1(), b.c0()));
    return AlgebraElement(d, c0, c1);
}

AlgebraElement conj(const AlgebraElement& a) {
    const AlgebraDescriptor& d = a.descriptor();
    if (d.kind == AlgebraKind::Split) return AlgebraElement(d, a.c1(), a.c0());
    return AlgebraElement(d, a.c0(), neg(a.c1()));
}

PadicScalar trace(const AlgebraElement& a) {
    if (a.descriptor().kind == AlgebraKind::Split) return add(a.c0(), a.c1());
    return mul_small(a.c0(), 2);
}

PadicScalar norm(const AlgebraElement& a) {
    const AlgebraDescriptor& d = a.descriptor();
    if (d.kind == AlgebraKind::Split) return mul(a.c0(), a.c1());
    // N(c0 + c1 th) = c0^2 - th^2 c1^2
    return sub(mul(a.c0(), a.c0()), mul(theta_sq(d, prec_of(a)), mul(a.c1(), a.c1())));
}

AlgebraElement inverse(const AlgebraElement& a) {
    const AlgebraDescriptor& d = a.descriptor();
    if (d.kind == AlgebraKind::Split)
        return AlgebraElement(d, inverse(a.c0()), inverse(a.c1()));
    PadicScalar n = norm(a);
    if (n.is_zero()) fail(ErrorCode::DivisionByZero, "inverse of a non-invertible element");
    AlgebraElement c = conj(a);
    PadicScalar ninv = inverse(n);
    return AlgebraElement(d, mul(c.c0(), ninv), mul(c.c1(), ninv));
}

AlgebraElement div(const AlgebraElement& a, const AlgebraElement& b) { return mul(a, inverse(b)); }

AlgebraElement omega(const AlgebraDescriptor& desc, int prec) {
    long p = desc.p;
    switch (desc.kind) {
        case AlgebraKind::Split: {
            PadicScalar w = PadicScalar::make(p, 1, 1, prec);
            return AlgebraElement(desc, w, w);
        }
        case AlgebraKind::Unramified:
            return AlgebraElement(desc, PadicScalar::make(p, 1, 1, prec), PadicScalar::zero(p));
        case AlgebraKind::Ramified:
            return AlgebraElement(desc, PadicScalar::zero(p), PadicScalar::one(p, prec));
    }
    fail(ErrorCode::Internal, "unreachable");
}

AlgebraElement mul_omega_pow(const AlgebraElement& a, int k) {
    const AlgebraDescriptor& d = a.descriptor();
    if (d.kind != AlgebraKind::Ramified)
        return AlgebraElement(d, shift(a.c0(), k), shift(a.c1(), k));
    // Omega^2 = p.
    int h = (k >= 0 ? k : k - 1) / 2; // floor(k/2)
    int r = k - 2 * h;                // 0 or 1
    AlgebraElement out(d, shift(a.c0(), h), shift(a.c1(), h));
    if (r == 1) {
        // multiply by Omega: (c0 + c1 Omega) Omega = p c1 + c0 Omega
        out = AlgebraElement(d, shift(out.c1(), 1), out.c0());
    }
    return out;
}

AlgebraElement padic_log(const AlgebraElement& x) {
    const AlgebraDescriptor& d = x.descriptor();
    if (d.kind == AlgebraKind::Split)
        return AlgebraElement(d, padic_log(x.c0()), padic_log(x.c1()));
    AlgebraElement w = sub(x, AlgebraElement::one(d, prec_of(x)));
    if (w.is_zero()) return w;
    if (!w.in_pE(d.kappa_E)) fail(ErrorCode::OutOfDomain, "log needs x in 1 + p_E");
    long p = d.p;
    int target = prec_of(x) + 1;
    AlgebraElement sum(d, PadicScalar::zero(p), PadicScalar::zero(p));
    AlgebraElement wi = w;
    for (int i = 1;; ++i) {
        if (i > 1) wi = mul(wi, w);
        // v_E(w^i) >= i; stop once w^i / i is negligible at working precision.
        if (wi.in_pE(d.e * (target + 2))) break;
        PadicScalar inv_i = inverse(PadicScalar::from_integer(p, i, target + 2));
        AlgebraElement term(d, mul(wi.c0(), inv_i), mul(wi.c1(), inv_i));
        if (i % 2 == 0) term = neg(term);
        sum = add(sum, term);
        if (i > 8 * target + 16) fail(ErrorCode::Divergent, "log_E did not settle");
    }
    return sum;
}

bool equal(const AlgebraElement& a, const AlgebraElement& b) {
    return equal(a.c0(), b.c0()) && equal(a.c1(), b.c1());
}

} // namespace whitlab
