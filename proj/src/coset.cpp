#include "coset.hpp"

#include <cassert>

#include "modarith.hpp"

namespace whitlab {

MatrixF mul(const MatrixF& x, const MatrixF& y) {
    return {add(mul(x.a, y.a), mul(x.b, y.c)), add(mul(x.a, y.b), mul(x.b, y.d)),
            add(mul(x.c, y.a), mul(x.d, y.c)), add(mul(x.c, y.b), mul(x.d, y.d))};
}

bool equal_mod(const MatrixF& x, const MatrixF& y, int k) {
    auto ok = [&](const PadicScalar& u, const PadicScalar& v) { return diff_valuation(u, v) >= k; };
    return ok(x.a, y.a) && ok(x.b, y.b) && ok(x.c, y.c) && ok(x.d, y.d);
}

MatrixF mat_a(const PadicScalar& y, int prec) {
    long p = y.p();
    return {y, PadicScalar::zero(p), PadicScalar::zero(p), PadicScalar::one(p, prec)};
}

MatrixF mat_n(const PadicScalar& x, int prec) {
    long p = x.p();
    return {PadicScalar::one(p, prec), x, PadicScalar::zero(p), PadicScalar::one(p, prec)};
}

MatrixF mat_kappa(long p, const CosetRep& kappa, int prec) {
    PadicScalar zero = PadicScalar::zero(p), one = PadicScalar::one(p, prec);
    if (kappa.family == CosetRep::Lower) {
        PadicScalar pg = kappa.infinite ? zero : PadicScalar::make(p, kappa.gamma, 1, prec);
        return {one, zero, pg, one};
    }
    PadicScalar pg = kappa.infinite ? zero : PadicScalar::make(p, kappa.gamma, 1, prec);
    return {zero, one, one, pg};
}

std::vector<CosetRep> coset_reps(int gamma_max) {
    std::vector<CosetRep> reps;
    for (int g = 0; g <= gamma_max; ++g) reps.push_back(CosetRep::lower(g));
    reps.push_back(CosetRep::lower_inf());
    for (int g = 1; g <= gamma_max; ++g) reps.push_back(CosetRep::weyl(g));
    reps.push_back(CosetRep::weyl_inf());
    return reps;
}

CosetRep orbit_classify(const MatrixF& g) {
    if (g.det().is_zero()) fail(ErrorCode::InvalidArgument, "singular matrix");
    bool c0 = g.c.is_zero(), d0 = g.d.is_zero();
    if (c0 && d0) fail(ErrorCode::InvalidArgument, "zero bottom row");
    if (c0) return CosetRep::lower_inf();
    if (d0) return CosetRep::weyl_inf();
    int delta = g.c.valuation() - g.d.valuation();
    return delta >= 0 ? CosetRep::lower(delta) : CosetRep::weyl(-delta);
}

FullCoordinates full_coordinates(const MatrixF& g) {
    CosetRep kappa = orbit_classify(g);
    FullCoordinates fc;
    fc.kappa = kappa;
    if (kappa.family == CosetRep::Lower) {
        // g ~ ((y + x p^g) u, x; p^g u, 1) after scaling by d.
        PadicScalar ap = div(g.a, g.d), bp = div(g.b, g.d), cp = div(g.c, g.d);
        fc.x = bp;
        PadicScalar detp = sub(mul(ap, PadicScalar::one(g.d.p(), g.d.precision())), mul(bp, cp));
        if (kappa.infinite) {
            fc.y = ap;
        } else {
            PadicScalar u = shift(cp, -kappa.gamma); // unit
            fc.y = div(detp, u);
        }
    } else {
        // g ~ (x, (y + x p^g) u, ; 1, p^g u) after scaling by c.
        PadicScalar ap = div(g.a, g.c), bp = div(g.b, g.c), dp = div(g.d, g.c);
        fc.x = ap;
        PadicScalar detp = sub(mul(ap, dp), bp);
        if (kappa.infinite) {
            fc.y = neg(detp);
        } else {
            PadicScalar u = shift(dp, -kappa.gamma); // unit
            fc.y = neg(div(detp, u));
        }
    }
    return fc;
}

WhittakerValue balanced_eval_direct(const RepresentationSpec& spec, const PadicScalar& t,
                                    const CosetRep& kappa) {
    long p = spec.p();
    int prec = t.is_zero() ? spec.ctx.default_precision : t.precision();
    MatrixF conj_l = mat_a(PadicScalar::make(p, -spec.n2, 1, prec), prec);
    MatrixF conj_r = mat_a(PadicScalar::make(p, spec.n2, 1, prec), prec);
    MatrixF M = mul(mul(mul(conj_l, mat_a(t, prec)), mat_kappa(p, kappa, prec)), conj_r);
    FullCoordinates fc = full_coordinates(M);
    WhittakerValue v = whittaker_eval(spec, fc.y, fc.kappa);
    if (!v.support) return v;
    AngleQZ pre = psi_eval(fc.x);
    for (AngleQZ& a : v.terms) a = a + pre;
    return v;
}

TransformResult transform_decompose(const RepresentationSpec& spec, const PadicScalar& y,
                                    const CosetRep& kappa) {
    if (y.is_zero()) fail(ErrorCode::InvalidArgument, "y must be nonzero");
    long p = spec.p();
    int n = spec.n;
    int s = y.valuation();
    PadicScalar w = PadicScalar::make(p, 0, y.unit(), y.precision());
    TransformResult out;
    if (kappa.family == CosetRep::Lower) {
        int gamma = kappa.infinite ? n : kappa.gamma;
        if (gamma < 0 || gamma > n) fail(ErrorCode::GammaOutOfRange, "lower decomposition needs 0 <= gamma <= n");
        PadicScalar fac = add(PadicScalar::one(p, y.precision()), PadicScalar::make(p, n, 1, y.precision()));
        out.psi_prefactor = psi_eval(shift(mul(fac, y), -gamma));
        out.g_t = -2 * gamma + s;
        out.g_l = gamma;
        out.g_v = inverse(w);
    } else {
        out.psi_prefactor = psi_eval(neg(shift(y, n)));
        out.g_t = s;
        out.g_l = 0;
        out.g_v = PadicScalar::one(p, y.precision());
    }
    return out;
}

bool transform_identity_check(const FieldContext& ctx, const PadicScalar& y, int gamma, int n,
                              bool weyl, int check_prec) {
    long p = ctx.p;
    int prec = y.precision();
    int s = y.valuation();
    PadicScalar w = PadicScalar::make(p, 0, y.unit(), prec);
    PadicScalar one = PadicScalar::one(p, prec), zero = PadicScalar::zero(p);
    PadicScalar pn = PadicScalar::make(p, n, 1, prec);
    auto g_tlv = [&](int t, int l, const PadicScalar& v) -> MatrixF {
        return {zero, PadicScalar::make(p, t, 1, prec), neg(one), neg(shift(v, -l))};
    };
    if (!weyl) {
        // (y 0; p^g 1) = (-p^g I) (1 p^-g (1+p^n) y; 0 1) g_{-2g+s, g, w^-1} K1-part
        MatrixF lhs = {y, zero, PadicScalar::make(p, gamma, 1, prec), one};
        PadicScalar mpg = neg(PadicScalar::make(p, gamma, 1, prec));
        MatrixF z = MatrixF::diag(mpg, mpg);
        MatrixF nx = mat_n(shift(mul(add(one, pn), y), -gamma), prec);
        MatrixF g = g_tlv(-2 * gamma + s, gamma, inverse(w));
        MatrixF k1 = {sub(one, pn), neg(PadicScalar::make(p, n - gamma, 1, prec)),
                      mul(w, PadicScalar::make(p, n + gamma, 1, prec)), mul(w, add(one, pn))};
        MatrixF rhs = mul(mul(mul(z, nx), g), k1);
        return equal_mod(lhs, rhs, check_prec);
    }
    // (0 y; 1 p^g) = (-I) (1 -p^n y; 0 1) g_{s,0,1} K1-part
    MatrixF lhs = {zero, y, one, PadicScalar::make(p, gamma, 1, prec)};
    MatrixF z = MatrixF::diag(PadicScalar::from_integer(p, -1, prec),
                              PadicScalar::from_integer(p, -1, prec));
    MatrixF nx = mat_n(neg(mul(pn, y)), prec);
    MatrixF g = g_tlv(s, 0, one);
    PadicScalar pg = PadicScalar::make(p, gamma, 1, prec);
    PadicScalar png1 = add(PadicScalar::make(p, n + gamma, 1, prec), one);
    MatrixF k1 = {add(one, mul(w, pn)), add(pg, mul(w, png1)), neg(mul(w, pn)), neg(mul(w, png1))};
    MatrixF rhs = mul(mul(mul(z, nx), g), k1);
    return equal_mod(lhs, rhs, check_prec);
}

Rational haar_volume(long p, const CosetRep& kappa) {
    if (kappa.infinite) return Rational(0);
    return Rational(p - 1, pow_big(p, kappa.gamma) * (p + 1));
}

Rational haar_volume_enumerated(long p, int m, const CosetRep& kappa, int64_t guard) {
    if (kappa.infinite) fail(ErrorCode::InvalidArgument, "enumerate finite cells only");
    if (kappa.gamma >= m) fail(ErrorCode::InvalidArgument, "needs m > gamma");
    int64_t pm = ipow64(p, m);
    if (pm * pm * pm > guard || pm > 1000)
        fail(ErrorCode::EnumerationTooLarge, "group too large to enumerate");
    auto val_at = [&](int64_t x) { return x == 0 ? m : val_p(x, p); };
    int64_t total = 0, hit = 0;
    for (int64_t c = 0; c < pm; ++c)
        for (int64_t d = 0; d < pm; ++d) {
            int vc = val_at(c), vd = val_at(d);
            if (vc > 0 && vd > 0) continue; // bottom row not unimodular
            // classify the cell of (c, d)
            bool is_hit;
            if (kappa.family == CosetRep::Lower)
                is_hit = (vd == 0 && vc == kappa.gamma);
            else
                is_hit = (vc == 0 && vd == kappa.gamma);
            for (int64_t a = 0; a < pm; ++a)
                for (int64_t b = 0; b < pm; ++b) {
                    if ((a * d - b * c) % p == 0) continue; // det must be a unit
                    ++total;
                    if (is_hit) ++hit;
                }
        }
    return Rational(hit, total);
}

} // namespace whitlab
