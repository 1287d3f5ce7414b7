#include "whittaker.hpp"

#include <cassert>
#include <sstream>

namespace whitlab {

const char* rep_kind_name(RepKind k) {
    switch (k) {
        case RepKind::PrincipalSeries: return "principal-series";
        case RepKind::DihedralUnramified: return "dihedral-unramified";
        case RepKind::DihedralRamified: return "dihedral-ramified";
    }
    return "?";
}

std::string CosetRep::str() const {
    std::ostringstream os;
    os << (family == Lower ? "lower" : "weyl") << ":";
    if (infinite)
        os << "inf";
    else
        os << gamma;
    return os.str();
}

RepresentationSpec rep_derive(const FieldContext& ctx, const MultiplicativeCharacter& chi) {
    if (chi.p != ctx.p) fail(ErrorCode::InvalidArgument, "character prime mismatch");
    if (chi.a < 2) fail(ErrorCode::BadConductor, "principal series needs a(chi) >= 2 (n >= 4)");
    RepresentationSpec spec;
    spec.ctx = ctx;
    spec.kind = RepKind::PrincipalSeries;
    spec.chi = chi;
    spec.n = 2 * chi.a;
    spec.n1 = spec.n2 = chi.a;
    spec.d = 0;
    spec.b0 = derive_b_chi(chi, ctx.default_precision);
    spec.xi = XiCharacterData(AlgebraDescriptor(AlgebraKind::Split, ctx), spec.b0, chi.a);
    spec.xi.value_at_p = chi.value_at_p;
    return spec;
}

RepresentationSpec rep_derive(const FieldContext& ctx, AlgebraKind kind, const PadicScalar& b0,
                              int a_xi) {
    if (kind == AlgebraKind::Split)
        fail(ErrorCode::InvalidArgument, "split data enters through a character chi");
    RepresentationSpec spec;
    spec.ctx = ctx;
    spec.kind =
        kind == AlgebraKind::Unramified ? RepKind::DihedralUnramified : RepKind::DihedralRamified;
    AlgebraDescriptor desc(kind, ctx);
    spec.xi = XiCharacterData(desc, b0, a_xi); // checks a(xi) parity for ramified E
    spec.d = desc.d;
    spec.n = desc.f * a_xi + desc.d;
    spec.n1 = spec.n / 2;
    spec.n2 = spec.n - spec.n1;
    spec.b0 = b0;
    if (spec.n < 4) fail(ErrorCode::BadConductor, "conductor exponent must be at least 4");
    return spec;
}

CycValue WhittakerValue::to_cyc(long q) const {
    CycValue v(q);
    if (!support) return v;
    for (const AngleQZ& a : terms) v.accumulate(r12, ExpSum::root_of_unity(a, coeff));
    if (has_airy) {
        if (!airy.exact_ok) fail(ErrorCode::Internal, "Airy factor has no exact form");
        v = v * airy.exact;
    }
    return v;
}

std::complex<double> WhittakerValue::approx(long q) const {
    if (!support) return {0.0, 0.0};
    std::complex<double> s = 0;
    for (const AngleQZ& a : terms)
        s += std::exp(std::complex<double>(0, 2 * M_PI * a.to_double()));
    s *= coeff.convert_to<double>() * std::pow((double)q, r12 / 12.0);
    if (has_airy) s *= airy.approx;
    return s;
}

double WhittakerValue::magnitude(long q) const { return std::abs(approx(q)); }

PadicScalar delta_of(const RepresentationSpec& spec, const PadicScalar& y) {
    if (!y.is_unit()) fail(ErrorCode::InvalidArgument, "Delta(y) needs a unit y");
    if (spec.kind == RepKind::DihedralRamified)
        fail(ErrorCode::UnsupportedCase, "Delta is defined for the split/unramified kinds");
    long p = spec.p();
    PadicScalar one = PadicScalar::one(p, y.precision());
    return add(one, div(mul_small(spec.b_sq(), 4), mul(y, y)));
}

namespace {

AngleQZ xi_inverse_angle(const RepresentationSpec& spec, const AlgebraElement& z) {
    return -xi_eval(spec.xi, z);
}

AlgebraElement scalar_plus_bxi(const RepresentationSpec& spec, const PadicScalar& x0,
                               int omega_pow_on_x, const PadicScalar& b_scale, int omega_pow_on_b) {
    // omega^a * x0 + omega^b * (b_scale * b_xi)
    const AlgebraDescriptor& desc = spec.xi.desc;
    AlgebraElement xs = AlgebraElement::from_scalar(desc, x0);
    if (omega_pow_on_x != 0) xs = mul_omega_pow(xs, omega_pow_on_x);
    AlgebraElement bs = spec.xi.b_xi();
    if (!b_scale.is_zero()) bs = mul(bs, AlgebraElement::from_scalar(desc, b_scale));
    if (omega_pow_on_b != 0) bs = mul_omega_pow(bs, omega_pow_on_b);
    return add(xs, bs);
}

WhittakerValue zero_value(int case_id) {
    WhittakerValue v;
    v.support = false;
    v.case_id = case_id;
    return v;
}

// Case 2: 0 < gamma < n/2; support |y| = q^(n - 2 gamma).
WhittakerValue eval_case2(const RepresentationSpec& spec, const PadicScalar& y, int gamma) {
    if (y.is_zero() || y.valuation() != 2 * gamma - spec.n) return zero_value(2);
    // x0: the root in O of p^(n2-g) x^2 + (-1)^n y p^(n-2g) x - b^2 p^(n1-g) = 0.
    // Scaling by R = p^(n2-g) x turns it into R^2 + t R - Bsq = 0 with unit
    // t = (-1)^n y p^(n-2g) and Bsq = b^2 p^(n-2g); x0 is the small root.
    PadicScalar t = shift(y, spec.n - 2 * gamma);
    if (spec.n % 2 != 0) t = neg(t);
    PadicScalar Bsq = shift(spec.b_sq(), spec.n - 2 * gamma);
    PadicScalar R = solve_quadratic_root(t, Bsq, Branch::small_root());
    PadicScalar x0 = shift(R, gamma - spec.n2);
    AlgebraElement z = scalar_plus_bxi(spec, x0, spec.d, PadicScalar(), 0);
    WhittakerValue v;
    v.support = true;
    v.case_id = 2;
    AngleQZ ang = spec.constants.C_pi_kappa + xi_inverse_angle(spec, z) +
                  psi_eval(shift(y, -gamma)) + psi_eval(shift(x0, -spec.n1));
    v.terms = {ang};
    return v;
}

// Case 3: gamma = n/2 (n even; split or unramified).
WhittakerValue eval_case3(const RepresentationSpec& spec, const PadicScalar& y) {
    long p = spec.p();
    const FieldContext& ctx = spec.ctx;
    int s = y.is_zero() ? INT_MAX : y.valuation();
    if (spec.kind == RepKind::DihedralUnramified) {
        if (s != 0) return zero_value(3);
    } else if (y.is_zero() || s < 0) {
        return zero_value(3);
    }
    if (s > 0) {
        // Split principal series, 0 < |y| < 1.
        WhittakerValue v;
        v.case_id = (s >= spec.n2) ? 31 : 32;
        v.support = true;
        v.r12 = -6 * s; // |y|^(1/2)
        if (s >= spec.n2) {
            AngleQZ cy = chi_eval(spec.chi, y);
            v.terms = {spec.constants.C_y_plus + cy, spec.constants.C_y_minus - cy};
        } else {
            // x_pm: roots of x^2 + y x - b^2 = 0 with x_pm = -+ b0 mod p.
            for (int sign : {+1, -1}) {
                long digit = (sign > 0 ? -1 : 1) * spec.b0.leading_digit();
                PadicScalar x = solve_quadratic_root(y, spec.b_sq(), Branch::leading(digit));
                AlgebraElement z = scalar_plus_bxi(spec, x, 0, PadicScalar(), 0);
                AngleQZ c = sign > 0 ? spec.constants.C_y_plus : spec.constants.C_y_minus;
                v.terms.push_back(c + xi_inverse_angle(spec, z) +
                                  psi_eval(shift(add(x, y), -spec.n / 2)));
            }
        }
        return v;
    }
    // |y| = 1: the Delta stratification.
    PadicScalar Delta = delta_of(spec, y);
    int u = Delta.is_zero() ? INT_MAX : Delta.valuation();
    int half_n = spec.n / 2;
    int r = half_n / 2, rho = half_n - 2 * r;
    bool square = Delta.is_zero() ||
                  (u % 2 == 0 &&
                   legendre_unit(PadicScalar::make(p, 0, Delta.unit(), Delta.precision())) == 1);
    if (u < r) {
        if (!square) return zero_value(33);
        WhittakerValue v;
        v.support = true;
        v.case_id = 33;
        v.r12 = 3 * u; // |Delta|^(-1/4)
        PadicScalar sq = sqrt_canonical(mul(mul(y, y), Delta)); // sqrt(y^2 + 4 b^2)
        PadicScalar inv2 = inverse(PadicScalar::from_integer(p, 2, y.precision()));
        for (int sign : {+1, -1}) {
            PadicScalar x = mul(sign > 0 ? sub(sq, y) : neg(add(sq, y)), inv2);
            AlgebraElement z = scalar_plus_bxi(spec, x, 0, PadicScalar(), 0);
            AngleQZ c = sign > 0 ? spec.constants.T_delta_plus : spec.constants.T_delta_minus;
            v.terms.push_back(c + xi_inverse_angle(spec, z) + psi_eval(shift(add(x, y), -half_n)));
        }
        return v;
    }
    // v(Delta) >= r: the Airy branch; vanishes unless Delta is a square in O.
    if (!square) return zero_value(34);
    int delta = r / 2;
    PadicScalar two = PadicScalar::from_integer(p, 2, y.precision());
    PadicScalar b2 = spec.b_sq();
    PadicScalar y2 = mul(y, y);
    PadicScalar denom = sub(y2, mul_small(b2, 4)); // a unit on this stratum
    // U = b^2 (3 y^2 + 4 b^2) / (384 (y^2 - 4 b^2)) p^(r + 2 rho - 3 delta)
    PadicScalar Uval =
        shift(div(mul(b2, add(mul_small(y2, 3), mul_small(b2, 4))),
                  mul(PadicScalar::from_integer(p, 384, y.precision()), denom)),
              r + 2 * rho - 3 * delta);
    // W = (y^2 + 4 b^2) / (y^2 - 4 b^2) p^(-r - delta)
    PadicScalar Wval = shift(div(add(y2, mul_small(b2, 4)), denom), -(r + delta));
    WhittakerValue v;
    v.support = true;
    v.case_id = 34;
    v.coeff = 2;                 // C_Delta = 2 q^(-v(3)/3) * unimodular
    v.r12 = spec.n - 4 * ctx.v3; // q^(n/12) q^(-v(3)/3)
    AlgebraElement z = scalar_plus_bxi(spec, neg(mul(y, inverse(two))), 0, PadicScalar(), 0);
    PadicScalar phase_arg =
        shift(neg(add(mul(mul_small(y, 3), inverse(two)), div(b2, y))), -half_n);
    v.terms = {spec.constants.C_delta_phase + xi_inverse_angle(spec, z) + psi_eval(phase_arg)};
    v.has_airy = true;
    v.airy = airy_eval(ctx, Uval, Wval);
    return v;
}

// Case 4: n/2 < gamma < n; support |y| = 1.
WhittakerValue eval_case4(const RepresentationSpec& spec, const PadicScalar& y, int gamma) {
    if (y.is_zero() || y.valuation() != 0) return zero_value(4);
    PadicScalar Bsq = shift(spec.b_sq(), 2 * gamma - spec.n);
    PadicScalar x0 = solve_quadratic_root(y, Bsq, Branch::unit_root());
    PadicScalar one = PadicScalar::one(spec.p(), y.precision());
    AlgebraElement z = scalar_plus_bxi(spec, x0, 0, shift(one, gamma - spec.n2), spec.d);
    WhittakerValue v;
    v.support = true;
    v.case_id = 4;
    v.terms = {spec.constants.T_pi_kappa + xi_inverse_angle(spec, z) +
               psi_eval(shift(add(y, x0), -gamma))};
    return v;
}

} // namespace

WhittakerValue whittaker_eval(const RepresentationSpec& spec, const PadicScalar& y,
                              const CosetRep& kappa) {
    if (kappa.family == CosetRep::Weyl) {
        if (!kappa.infinite && kappa.gamma < 1)
            fail(ErrorCode::GammaOutOfRange, "Weyl cells have gamma >= 1");
        if (y.is_zero() || y.valuation() != -spec.n) return zero_value(6);
        WhittakerValue v;
        v.support = true;
        v.case_id = 6;
        v.terms = {spec.constants.eps_half_pi};
        return v;
    }
    if (!kappa.infinite && kappa.gamma < 0) fail(ErrorCode::GammaOutOfRange, "negative gamma");
    if (kappa.infinite || kappa.gamma >= spec.n) {
        if (y.is_zero() || y.valuation() != 0) return zero_value(5);
        WhittakerValue v;
        v.support = true;
        v.case_id = 5;
        v.terms = {AngleQZ()};
        return v;
    }
    int gamma = kappa.gamma;
    if (gamma == 0) {
        if (y.is_zero() || y.valuation() != -spec.n) return zero_value(1);
        WhittakerValue v;
        v.support = true;
        v.case_id = 1;
        v.terms = {spec.constants.eps_half_pi + psi_eval(y)};
        return v;
    }
    if (2 * gamma < spec.n) return eval_case2(spec, y, gamma);
    if (2 * gamma == spec.n) {
        if (spec.kind == RepKind::DihedralRamified)
            fail(ErrorCode::UnsupportedCase, "gamma = n/2 cannot arise for odd n");
        return eval_case3(spec, y);
    }
    return eval_case4(spec, y, gamma);
}

WhittakerValue balanced_eval(const RepresentationSpec& spec, const PadicScalar& t,
                             const CosetRep& kappa) {
    if (kappa.family == CosetRep::Lower) {
        CosetRep image =
            kappa.infinite ? CosetRep::lower_inf() : CosetRep::lower(spec.n2 + kappa.gamma);
        return whittaker_eval(spec, t, image);
    }
    if (!kappa.infinite && kappa.gamma < 1)
        fail(ErrorCode::GammaOutOfRange, "Weyl cells have gamma >= 1");
    if (kappa.infinite || kappa.gamma > spec.n2) {
        CosetRep image =
            kappa.infinite ? CosetRep::weyl_inf() : CosetRep::weyl(kappa.gamma - spec.n2);
        return whittaker_eval(spec, shift(t, -2 * spec.n2), image);
    }
    // 1 <= gamma <= n2: psi(p^(-n2-gamma) t) W_p(a(-p^(-2 gamma) t) kappa').
    int gamma = kappa.gamma;
    WhittakerValue v =
        whittaker_eval(spec, neg(shift(t, -2 * gamma)), CosetRep::lower(spec.n2 - gamma));
    if (!v.support) return v;
    AngleQZ pre = psi_eval(shift(t, -spec.n2 - gamma));
    for (AngleQZ& a : v.terms) a = a + pre;
    return v;
}

WhittakerValue dyadic_component(const RepresentationSpec& spec, const CosetRep& kappa,
                                const DyadicSelector& sel, const PadicScalar& t) {
    switch (sel.kind) {
        case DyadicSelector::None:
            return balanced_eval(spec, t, kappa);
        case DyadicSelector::S:
            if (kappa.family != CosetRep::Lower || kappa.infinite || kappa.gamma != 0)
                fail(ErrorCode::IncompatibleSelector, "S-components live at lower gamma = 0");
            if (sel.param < 0 || sel.param >= spec.n)
                fail(ErrorCode::IncompatibleSelector, "S-selector needs 0 <= s < n");
            if (t.is_zero() || t.valuation() != sel.param) return zero_value(32);
            return balanced_eval(spec, t, kappa);
        case DyadicSelector::SInfinity:
            if (kappa.family != CosetRep::Lower || kappa.infinite || kappa.gamma != 0)
                fail(ErrorCode::IncompatibleSelector, "S-components live at lower gamma = 0");
            if (!t.is_zero() && t.valuation() < spec.n) return zero_value(31);
            return balanced_eval(spec, t, kappa);
        case DyadicSelector::U:
        case DyadicSelector::UInfinity: {
            if (kappa.family != CosetRep::Lower || kappa.infinite || kappa.gamma != 0)
                fail(ErrorCode::IncompatibleSelector, "U-components live at lower gamma = 0");
            if (spec.kind == RepKind::DihedralRamified || spec.n % 2 != 0)
                fail(ErrorCode::IncompatibleSelector, "U-components need even n");
            if (t.is_zero() || t.valuation() != 0) return zero_value(33);
            PadicScalar Delta = delta_of(spec, t);
            if (sel.kind == DyadicSelector::U) {
                if (sel.param < 0 || sel.param >= spec.n2)
                    fail(ErrorCode::IncompatibleSelector, "U-selector needs 0 <= u < n2");
                if (Delta.is_zero() || Delta.valuation() != sel.param) return zero_value(33);
            } else {
                if (!Delta.is_zero() && Delta.valuation() < spec.n2) return zero_value(34);
            }
            return balanced_eval(spec, t, kappa);
        }
    }
    fail(ErrorCode::Internal, "unreachable");
}

PointCap table1_cap(const RepresentationSpec& spec, const PadicScalar& y, const CosetRep& kappa) {
    PointCap cap;
    long p = spec.p();
    long long vy = y.is_zero() ? INT_MAX : y.valuation();
    if (kappa.family == CosetRep::Weyl) {
        if (vy != -spec.n) return cap;
        cap = {true, "Const", 1, 0};
        return cap;
    }
    int gamma = kappa.infinite ? spec.n : kappa.gamma;
    if (gamma >= spec.n) {
        if (vy != 0) return cap;
        cap = {true, "Const", 1, 0};
        return cap;
    }
    if (2 * gamma < spec.n) {
        if (vy != 2 * gamma - spec.n) return cap;
        cap = {true, "Osc", 1, 0};
        return cap;
    }
    if (2 * gamma == spec.n) {
        if (spec.kind == RepKind::DihedralRamified) return cap; // cell cannot arise
        if (spec.kind == RepKind::DihedralUnramified && vy != 0) return cap;
        if (vy < 0 || vy == INT_MAX) return cap;
        if (vy > 0) {
            cap = {true, "Osc", 2, (int)(-6 * vy)}; // O(|y|^(1/2)), two terms
            return cap;
        }
        PadicScalar Delta = delta_of(spec, y);
        int u = Delta.is_zero() ? INT_MAX : Delta.valuation();
        bool square =
            Delta.is_zero() ||
            (u % 2 == 0 &&
             legendre_unit(PadicScalar::make(p, 0, Delta.unit(), Delta.precision())) == 1);
        if (!square) return cap;
        int r = (spec.n / 2) / 2;
        if (u < r) {
            cap = {true, "Osc", 2, 3 * u}; // O(|Delta|^(-1/4))
            return cap;
        }
        cap = {true, "Airy", 2 * Rational(pow_big(p, 2 + spec.ctx.v3)), spec.n};
        return cap;
    }
    if (vy != 0) return cap;
    cap = {true, "Osc", 1, 0};
    return cap;
}

PointCap table2_cap(const RepresentationSpec& spec, const PadicScalar& t, const CosetRep& kappa) {
    // The balanced rows are the Table-1 rows seen through the balancing
    // relations (unimodular prefactors drop out of the caps).
    if (kappa.family == CosetRep::Lower) {
        CosetRep image =
            kappa.infinite ? CosetRep::lower_inf() : CosetRep::lower(spec.n2 + kappa.gamma);
        return table1_cap(spec, t, image);
    }
    if (kappa.infinite || kappa.gamma > spec.n2) {
        CosetRep image =
            kappa.infinite ? CosetRep::weyl_inf() : CosetRep::weyl(kappa.gamma - spec.n2);
        return table1_cap(spec, shift(t, -2 * spec.n2), image);
    }
    return table1_cap(spec, neg(shift(t, -2 * kappa.gamma)), CosetRep::lower(spec.n2 - kappa.gamma));
}

double cap_value(long q, const PointCap& c) {
    if (!c.in_support) return 0.0;
    return c.mult.convert_to<double>() * std::pow((double)q, c.q12 / 12.0);
}

ProfileRow support_profile(const RepresentationSpec& spec, const CosetRep& kappa) {
    ProfileRow row;
    int n = spec.n;
    if (kappa.family == CosetRep::Weyl) {
        row = {"|y| = q^" + std::to_string(n), "Const", 1, 0};
        return row;
    }
    int gamma = kappa.infinite ? n : kappa.gamma;
    if (gamma >= n) {
        row = {"|y| = 1", "Const", 1, 0};
    } else if (2 * gamma < n) {
        row = {"|y| = q^" + std::to_string(n - 2 * gamma), "Osc", 1, 0};
    } else if (2 * gamma == n) {
        if (spec.kind == RepKind::PrincipalSeries)
            row = {"0 < |y| <= 1 (Delta square on |y| = 1)", "Osc/Airy",
                   2 * Rational(pow_big(spec.p(), 2 + spec.ctx.v3)), n};
        else
            row = {"|y| = 1, Delta square", "Osc/Airy",
                   2 * Rational(pow_big(spec.p(), 2 + spec.ctx.v3)), n};
    } else {
        row = {"|y| = 1", "Osc", 1, 0};
    }
    return row;
}

ProfileRow balanced_profile(const RepresentationSpec& spec, const CosetRep& kappa) {
    ProfileRow row;
    int n1 = spec.n1, n2 = spec.n2;
    std::string tsup = n1 == n2 ? "|t| = 1" : "|t| = q^-1";
    if (kappa.family == CosetRep::Weyl) {
        row = {tsup, (kappa.infinite || kappa.gamma > n2) ? "Const" : "Osc", 1, 0};
        return row;
    }
    int gamma = kappa.infinite ? n1 : kappa.gamma;
    if (gamma == 0) {
        if (spec.n % 2 != 0)
            row = {"|t| = 1", "Osc", 1, 0};
        else
            row = {"0 < |t| <= 1 (Delta square on |t| = 1)", "Osc/Airy",
                   2 * Rational(pow_big(spec.p(), 2 + spec.ctx.v3)), spec.n};
    } else if (gamma < n1) {
        row = {"|t| = 1", "Osc", 1, 0};
    } else {
        row = {"|t| = 1", "Const", 1, 0};
    }
    return row;
}

} // namespace whitlab
