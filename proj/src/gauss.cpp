#include "gauss.hpp"

#include <cassert>
#include <map>
#include <mutex>

#include "modarith.hpp"

namespace whitlab {

namespace {
std::map<long, std::unique_ptr<GaussAtoms>> g_atoms;
std::mutex g_atoms_mutex;
} // namespace

GaussAtoms::GaussAtoms(const FieldContext& ctx) : ctx_(ctx) {
    long p = ctx.p;
    g_.resize(p);
    for (long A = 1; A < p; ++A) {
        ExpSum s(p);
        for (long x = 0; x < p; ++x) s.add_term((A * x * x) % p, 1);
        s.canonicalize();
        g_[A] = s;
    }
    // eps^2 = g_1^2 / q; the product reduces to a rational.
    ExpSum sq = g_[1] * g_[1];
    sq.canonicalize();
    if (sq.coeffs().size() != 1 || sq.coeffs().begin()->first != 0)
        fail(ErrorCode::Internal, "g_1^2 did not reduce to a rational");
    eps_sq_ = sq.coeffs().begin()->second / p;
    // Sanity: the calibrated eps^2 equals chi_F(-1).
    assert(eps_sq_ == Rational(chi_F(p - 1)));
}

const ExpSum& GaussAtoms::quad_sum(long A) const {
    long p = ctx_.p;
    A %= p;
    if (A < 0) A += p;
    if (A == 0) fail(ErrorCode::InvalidArgument, "quad_sum needs a unit class");
    return g_[A];
}

int GaussAtoms::chi_F(long A) const {
    long p = ctx_.p;
    A %= p;
    if (A < 0) A += p;
    if (A == 0) fail(ErrorCode::InvalidArgument, "chi_F of a non-unit");
    return powmod(A, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int GaussAtoms::chi_F(const PadicScalar& A) const { return chi_F(A.leading_digit()); }

CycValue GaussAtoms::gamma_factor(const PadicScalar& A, int rho) const {
    long q = ctx_.p;
    if (rho <= 0 || rho % 2 == 0) return CycValue::from_rational(q, 1);
    // chi_F(A) eps = g_A / sqrt(q): slot 6 with coefficient g_A / q.
    return CycValue::from_expsum(q, quad_sum(A.leading_digit()), -6);
}

CycValue GaussAtoms::scaled_gamma(const PadicScalar& A, int rho) const {
    long q = ctx_.p;
    if (rho <= 0) return CycValue::from_rational(q, 1);
    if (rho % 2 == 0) return CycValue::from_rational(q, Rational(1, pow_big(q, rho / 2)));
    // q^(-rho/2) g_A / sqrt(q) = q^(-(rho+1)/2) g_A.
    return CycValue::from_expsum(
        q, quad_sum(A.leading_digit()).scaled(Rational(1, pow_big(q, (rho + 1) / 2))), 0);
}

const GaussAtoms& gauss_atoms(const FieldContext& ctx) {
    std::lock_guard<std::mutex> lock(g_atoms_mutex);
    auto it = g_atoms.find(ctx.p);
    if (it != g_atoms.end()) return *it->second;
    auto a = std::make_unique<GaussAtoms>(ctx);
    const GaussAtoms& ref = *a;
    g_atoms.emplace(ctx.p, std::move(a));
    return ref;
}

CycValue gauss_1d(const FieldContext& ctx, const PadicScalar& A, int rho, const PadicScalar& B) {
    if (!A.is_unit()) fail(ErrorCode::InvalidArgument, "gauss_1d needs a unit A");
    long q = ctx.p;
    int support = std::min(-rho, 0);
    if (!B.is_zero() && B.valuation() < support) return CycValue::zero(q);
    if (rho <= 0) return CycValue::from_rational(q, 1); // phase lands in O
    const GaussAtoms& atoms = gauss_atoms(ctx);
    CycValue v = atoms.scaled_gamma(A, rho);
    if (!B.is_zero()) {
        // Completing the square leaves psi(-B^2 / (4 A p^-rho)).
        PadicScalar arg = neg(div(shift(mul(B, B), rho), mul_small(A, 4)));
        v = v * CycValue::from_angle(q, psi_eval(arg));
    }
    return v;
}

IntegralResult gauss_1d_brute(const FieldContext& ctx, const PadicScalar& A, int rho,
                              const PadicScalar& B, const IntegrateOptions& opt) {
    std::vector<PadicScalar> coeffs = {PadicScalar::zero(ctx.p), B, shift(A, -rho)};
    return brute_force_poly(ctx, coeffs, IntegralDomain::ring(1), opt);
}

namespace {

struct ChiRef {
    ExpSum ref;      // brute value at x0 = p^(-a)
    AngleQZ chi_x0;  // chi(x0)
};

std::map<std::tuple<long, int, int64_t, int64_t, int64_t>, ChiRef> g_chi_refs;
std::mutex g_chi_mutex;

ChiRef chi_reference(const FieldContext& ctx, const MultiplicativeCharacter& chi) {
    auto key = std::make_tuple(ctx.p, chi.a, chi.k, chi.value_at_p.num, chi.value_at_p.den);
    std::lock_guard<std::mutex> lock(g_chi_mutex);
    auto it = g_chi_refs.find(key);
    if (it != g_chi_refs.end()) return it->second;
    PadicScalar x0 = PadicScalar::make(ctx.p, -chi.a, 1, ctx.default_precision);
    IntegralResult r = gauss_chi_brute(ctx, x0, chi);
    if (!r.exact_ok) fail(ErrorCode::Internal, "chi calibration integral not exact");
    ChiRef ref{r.exact, chi_eval(chi, x0)};
    g_chi_refs.emplace(key, ref);
    return ref;
}

} // namespace

CycValue gauss_chi(const FieldContext& ctx, const PadicScalar& x,
                   const MultiplicativeCharacter& chi) {
    if (chi.a == 0) fail(ErrorCode::TrivialCharacter, "gauss_chi needs a ramified character");
    long q = ctx.p;
    if (x.is_zero() || x.valuation() != -chi.a) return CycValue::zero(q);
    ChiRef ref = chi_reference(ctx, chi);
    // q^(-a/2) zeta_F(1) eps(1/2, chi^-1) chi^-1(x) = ref * chi(x0) * chi^-1(x).
    AngleQZ rot = ref.chi_x0 - chi_eval(chi, x);
    return CycValue::from_expsum(q, ref.ref * ExpSum::root_of_unity(rot));
}

CycValue gauss_chi_epsilon(const FieldContext& ctx, const MultiplicativeCharacter& chi) {
    if (chi.a == 0) fail(ErrorCode::TrivialCharacter, "epsilon of an unramified character");
    long q = ctx.p;
    ChiRef ref = chi_reference(ctx, chi);
    // eps = ref * chi(x0) * q^(a/2) / zeta_F(1);  zeta_F(1) = q/(q-1).
    ExpSum base = ref.ref * ExpSum::root_of_unity(ref.chi_x0);
    return CycValue::from_expsum(q, base.scaled(Rational(q - 1, q)), 6 * chi.a);
}

IntegralResult gauss_chi_brute(const FieldContext& ctx, const PadicScalar& x,
                               const MultiplicativeCharacter& chi, const IntegrateOptions& opt) {
    long p = ctx.p;
    int M = std::max({chi.a, x.is_zero() ? 0 : -x.valuation(), 1});
    int64_t pm = ipow64(p, M);
    if (pm > opt.max_points) fail(ErrorCode::EnumerationTooLarge, "level too deep");
    // Angles lie in (1/L) Z with L = lcm(p^(-v(x)), phi(p^a)).
    int64_t Lx = x.is_zero() || x.valuation() >= 0 ? 1 : ipow64(p, -x.valuation());
    int64_t Lc = chi.a >= 1 ? ipow64(p, chi.a) / p * (p - 1) : 1;
    int64_t L = Lx / gcd64(Lx, Lc) * Lc;
    if (L > opt.dense_cap) fail(ErrorCode::EnumerationTooLarge, "root order too large");
    const DlogTable* dt = chi.a >= 1 ? &dlog_table(p, chi.a) : nullptr;
    int64_t xnum = Lx == 1 ? 0 : (int64_t)x.unit_mod(-x.valuation());
    std::vector<int64_t> counts((size_t)L, 0);
    int64_t pts = 0;
    for (int64_t y = 0; y < pm; ++y) {
        if (y % p == 0) continue;
        // exponent of zeta_L for psi(x y) chi(y)
        int64_t e = 0;
        if (Lx > 1) e = mulmod(xnum, y % Lx, Lx) * (L / Lx) % L;
        if (dt) e = addmod(e, mulmod(chi.k % Lc, dt->dlog(y % dt->modulus), Lc) * (L / Lc), L);
        counts[(size_t)e] += 1;
        ++pts;
    }
    Rational w(1, pow_big(p, M) / p * (p - 1));
    return finish_counts(counts, L, w, pts, M, opt.sparse_cap);
}

CycValue gauss_2d(const FieldContext& ctx, const Sym2& A, const PadicScalar& B1,
                  const PadicScalar& B2) {
    long q = ctx.p;
    auto in_O = [](const PadicScalar& s) { return s.is_zero() || s.valuation() >= 0; };
    if (!in_O(A.a) || !in_O(A.b) || !in_O(A.c))
        fail(ErrorCode::InvalidArgument, "gauss_2d needs integral A");
    auto vge = [](const PadicScalar& s, int k) { return s.is_zero() || s.valuation() >= k; };
    bool a_unit = !A.a.is_zero() && A.a.valuation() == 0;
    bool b_unit = !A.b.is_zero() && A.b.valuation() == 0;
    bool c_unit = !A.c.is_zero() && A.c.valuation() == 0;
    if (!a_unit && !b_unit && !c_unit) fail(ErrorCode::RankZero, "A vanishes mod p");
    const GaussAtoms& atoms = gauss_atoms(ctx);
    PadicScalar det = sub(mul(A.a, A.c), mul(A.b, A.b));
    bool det_unit = !det.is_zero() && det.valuation() == 0;
    PadicScalar two = PadicScalar::from_integer(q, 2, ctx.default_precision);

    if (det_unit) {
        // rank 2: q^-1 chi_F(det) eps^2 psi(-p (c B1^2 - 2 b B1 B2 + a B2^2) / (2 det)),
        // supported on B1, B2 in p^-1 O.
        if (!vge(B1, -1) || !vge(B2, -1)) return CycValue::zero(q);
        PadicScalar num = add(sub(mul(A.c, mul(B1, B1)), mul_small(mul(A.b, mul(B1, B2)), 2)),
                              mul(A.a, mul(B2, B2)));
        PadicScalar arg = neg(div(shift(num, 1), mul(two, det)));
        Rational scale = Rational(atoms.chi_F(det), q) * atoms.eps_sq();
        return CycValue::from_angle(q, psi_eval(arg), scale);
    }
    // rank 1: bring the unit onto the (1,1) entry.
    PadicScalar a = A.a, c = A.c, P1 = B1, P2 = B2;
    if (!a_unit) {
        std::swap(a, c);
        std::swap(P1, P2);
    }
    if (a.is_zero() || a.valuation() != 0)
        fail(ErrorCode::Internal, "rank-1 matrix without unit diagonal entry");
    if (!vge(P1, -1)) return CycValue::zero(q);
    // compatibility: B2 - (b/a) B1 in O
    PadicScalar comp = sub(P2, div(mul(A.b, P1), a));
    if (!comp.is_zero() && comp.valuation() < 0) return CycValue::zero(q);
    // q^-1/2 gamma(A_p) psi(-p B1^2 / (2a)) with gamma = chi_F(a/2) eps.
    PadicScalar arg = neg(div(shift(mul(P1, P1), 1), mul(two, a)));
    long cls = (long)((a.leading_digit() * invmod(2, q)) % q);
    ExpSum g = atoms.quad_sum(cls).scaled(Rational(1, q));
    return CycValue::from_expsum(q, g * ExpSum::root_of_unity(psi_eval(arg)));
}

IntegralResult gauss_2d_brute(const FieldContext& ctx, const Sym2& A, const PadicScalar& B1,
                              const PadicScalar& B2, const IntegrateOptions& opt) {
    long p = ctx.p;
    auto v_of = [](const PadicScalar& s) { return s.is_zero() ? 99 : s.valuation(); };
    int M = std::max({1, 1 - std::min({v_of(A.a), v_of(A.b), v_of(A.c)}),
                      -v_of(B1), -v_of(B2)});
    int D = std::max({0, 1 - std::min({v_of(A.a), v_of(A.b), v_of(A.c)}), -v_of(B1), -v_of(B2)});
    int64_t pm = ipow64(p, M);
    if (pm * pm > opt.max_points) fail(ErrorCode::EnumerationTooLarge, "2d level too deep");
    int64_t L = ipow64(p, D);
    auto lift = [&](const PadicScalar& s, int extra_shift) -> int64_t {
        // s p^extra_shift at denominator p^D -> numerator mod p^D
        if (s.is_zero()) return 0;
        int sh = s.valuation() + extra_shift + D;
        if (sh < 0) fail(ErrorCode::Internal, "denominator underflow");
        if (sh >= D) return 0;
        return (int64_t)(s.unit_mod(D - sh) * pow_big(p, sh) % pow_big(p, D));
    };
    // phase = (p^-1/2)(a x^2 + 2 b x y + c y^2) + B1 x + B2 y
    PadicScalar half = inverse(PadicScalar::from_integer(p, 2, ctx.default_precision));
    int64_t na = lift(mul(A.a, half), -1), nb = lift(mul(A.b, half), -1),
            nc = lift(mul(A.c, half), -1), n1 = lift(B1, 0), n2 = lift(B2, 0);
    std::vector<int64_t> counts((size_t)L, 0);
    for (int64_t x = 0; x < pm; ++x)
        for (int64_t y = 0; y < pm; ++y) {
            int64_t e = mulmod(na, mulmod(x, x, L), L);
            e = addmod(e, 2 * mulmod(nb, mulmod(x, y, L), L), L);
            e = addmod(e, mulmod(nc, mulmod(y, y, L), L), L);
            e = addmod(e, mulmod(n1, x, L) + mulmod(n2, y, L), L);
            counts[(size_t)e] += 1;
        }
    Rational w(1, pow_big(p, 2 * M));
    return finish_counts(counts, L, w, pm * pm, M, opt.sparse_cap);
}

CycValue cubic_integral(const FieldContext& ctx, const PadicScalar& a, const PadicScalar& b) {
    long q = ctx.p;
    int v3a = a.is_zero() ? INT_MAX : a.valuation() + ctx.v3;
    int vb = b.is_zero() ? INT_MAX : b.valuation();
    if (!(v3a > vb)) fail(ErrorCode::PreconditionViolated, "needs v(3a) > v(b)");
    if (b.is_zero() || b.valuation() >= 0) return CycValue::from_rational(q, 1);
    // At v(b) = -1 the stated evaluation needs the cubic term to be integral
    // on O.  For p = 3 the hypothesis still admits v(a) = -1, where the value
    // is a different unimodular multiple of q^(-1/2); callers fall back to
    // the brute-force oracle there.
    if (vb == -1 && !a.is_zero() && a.valuation() < 0)
        fail(ErrorCode::PreconditionViolated, "v(b) = -1 needs v(a) >= 0 for the closed form");
    return gauss_atoms(ctx).scaled_gamma(b, -b.valuation());
}

IntegralResult cubic_brute(const FieldContext& ctx, const PadicScalar& a, const PadicScalar& b,
                           const IntegrateOptions& opt) {
    std::vector<PadicScalar> coeffs = {PadicScalar::zero(ctx.p), PadicScalar::zero(ctx.p), b, a};
    return brute_force_poly(ctx, coeffs, IntegralDomain::ring(1), opt);
}

AiryResult airy_eval(const FieldContext& ctx, const PadicScalar& a, const PadicScalar& b,
                     const IntegrateOptions& opt) {
    long q = ctx.p;
    std::vector<PadicScalar> coeffs = {PadicScalar::zero(q), b, PadicScalar::zero(q), a};
    IntegralResult r = brute_force_poly(ctx, coeffs, IntegralDomain::ring(1), opt);
    AiryResult out;
    out.zero_known = r.zero_known;
    out.is_zero = r.is_zero;
    out.points = r.points;
    int va = a.is_zero() ? 0 : a.valuation();
    double qf = std::pow((double)q, -va / 3.0);
    out.approx = qf * r.approx;
    if (r.exact_ok) {
        out.exact_ok = true;
        out.exact = r.value(q).shifted(-4 * va); // q^(-v(a)/3) = q^(-4 v(a)/12)
    }
    return out;
}

AiryBound airy_bound(const FieldContext& ctx, int va, int vb) {
    if (va >= 0) fail(ErrorCode::OutOfDomain, "airy_bound needs v(a) < 0");
    long q = ctx.p;
    AiryBound out;
    if (vb < va) {
        out.zero = true;
        out.multiplier = 0;
        out.value = 0.0;
        return out;
    }
    if (3 * vb < va) {
        // 2 q^(2 + v(3)) q^(-v(a)/12 + v(b)/4)
        out.multiplier = 2;
        out.q12 = 12 * (2 + ctx.v3) - va + 3 * vb;
    } else {
        out.multiplier = 1;
        out.q12 = 12 * (1 + ctx.v3);
    }
    out.value = out.multiplier.convert_to<double>() * std::pow((double)q, out.q12 / 12.0);
    return out;
}

IntegralResult annulus_cubic_brute(const FieldContext& ctx, const PadicScalar& a,
                                   const PadicScalar& b, int m, const IntegrateOptions& opt) {
    std::vector<PadicScalar> coeffs = {PadicScalar::zero(ctx.p), b, PadicScalar::zero(ctx.p), a};
    return brute_force_poly(ctx, coeffs, IntegralDomain::annulus(m, m + 1), opt);
}

} // namespace whitlab
