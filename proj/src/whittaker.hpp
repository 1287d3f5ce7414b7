#pragma once

#include "gauss.hpp"

namespace whitlab {

enum class RepKind { PrincipalSeries, DihedralUnramified, DihedralRamified };

const char* rep_kind_name(RepKind k);

/// Unimodular constants the formulas leave unspecified.  Every downstream
/// check (support, magnitude, vanishing) is insensitive to them; they all
/// default to 1 (angle 0) and are configurable for experiments.
struct ConstantsPolicy {
    AngleQZ eps_half_pi;   // epsilon(1/2, pi) (Cases 1 and 6)
    AngleQZ C_pi_kappa;    // Case 2
    AngleQZ C_y_plus, C_y_minus;   // Case 3.1 / 3.2
    AngleQZ T_delta_plus, T_delta_minus; // Case 3.3
    AngleQZ T_pi_kappa;    // Case 4
    AngleQZ C_delta_phase; // unimodular part of C_Delta (Case 3.4)
};

struct RepresentationSpec {
    FieldContext ctx;
    RepKind kind;
    MultiplicativeCharacter chi; // principal series only
    XiCharacterData xi;          // all kinds
    int n = 0, n1 = 0, n2 = 0, d = 0;
    PadicScalar b0;
    ConstantsPolicy constants;

    long p() const { return ctx.p; }
    // b^2 as an F-scalar (Lemma: b^2 = (-1)^(n-1) N(b)).
    PadicScalar b_sq() const { return xi.b_sq(); }
};

// n = 2 a(chi); requires a(chi) >= 2 so that n >= 4.
RepresentationSpec rep_derive(const FieldContext& ctx, const MultiplicativeCharacter& chi);
// Dihedral data: n = f a(xi) + d; ramified needs a(xi) even (and n >= 4 always).
RepresentationSpec rep_derive(const FieldContext& ctx, AlgebraKind kind, const PadicScalar& b0,
                              int a_xi);

/// One cell of the coset decomposition: (1 0; p^gamma 1) or (0 1; 1 p^gamma).
struct CosetRep {
    enum Family { Lower, Weyl };
    Family family = Lower;
    int gamma = 0;
    bool infinite = false;

    static CosetRep lower(int g) { return {Lower, g, false}; }
    static CosetRep weyl(int g) { return {Weyl, g, false}; }
    static CosetRep lower_inf() { return {Lower, 0, true}; }
    static CosetRep weyl_inf() { return {Weyl, 0, true}; }
    std::string str() const;
};

/// W(a(y) kappa) as (coeff) * q^(r12/12) * sum_i psi(terms[i]) (times an
/// Airy value in the transition branch).  support == false means exact zero.
struct WhittakerValue {
    bool support = false;
    int case_id = 0; // 1..6; 31/32/33/34 for the Case 3 branches
    Rational coeff = 1;
    int r12 = 0;
    std::vector<AngleQZ> terms;
    bool has_airy = false;
    AiryResult airy;

    CycValue to_cyc(long q) const;
    std::complex<double> approx(long q) const;
    double magnitude(long q) const; // |value|
};

// Delta(y) = 1 + 4 b^2 y^-2 for |y| = 1 (split or unramified kinds).
PadicScalar delta_of(const RepresentationSpec& spec, const PadicScalar& y);

// The theorem's formulas, Cases 1-6.
WhittakerValue whittaker_eval(const RepresentationSpec& spec, const PadicScalar& y,
                              const CosetRep& kappa);

// The balanced newvector W_b(a(t) kappa) through the three relations.
WhittakerValue balanced_eval(const RepresentationSpec& spec, const PadicScalar& t,
                             const CosetRep& kappa);

/// Selector for the dyadic components of the balanced newvector.
struct DyadicSelector {
    enum Kind { S, SInfinity, U, UInfinity, None };
    Kind kind = None;
    int param = 0;

    static DyadicSelector none() { return {None, 0}; }
    static DyadicSelector s(int v) { return {S, v}; }
    static DyadicSelector s_inf() { return {SInfinity, 0}; }
    static DyadicSelector u(int v) { return {U, v}; }
    static DyadicSelector u_inf() { return {UInfinity, 0}; }
};

WhittakerValue dyadic_component(const RepresentationSpec& spec, const CosetRep& kappa,
                                const DyadicSelector& sel, const PadicScalar& t);

/// Support-and-magnitude oracle rows (Tables 1 and 2).
struct PointCap {
    bool in_support = false;
    const char* type = "Zero";
    Rational mult = 0;
    int q12 = 0; // cap = mult * q^(q12/12)
    double value() const { return 0; }
};
// Pointwise Table-1 cap for W_pi(a(y) kappa).
PointCap table1_cap(const RepresentationSpec& spec, const PadicScalar& y, const CosetRep& kappa);
// Pointwise Table-2 cap for W_b(a(t) kappa).
PointCap table2_cap(const RepresentationSpec& spec, const PadicScalar& t, const CosetRep& kappa);
double cap_value(long q, const PointCap& c);

/// Table row summary (the coarse support set and worst-case bound).
struct ProfileRow {
    std::string support;
    std::string type;
    Rational cap_mult = 1;
    int cap_q12 = 0;
};
ProfileRow support_profile(const RepresentationSpec& spec, const CosetRep& kappa);
ProfileRow balanced_profile(const RepresentationSpec& spec, const CosetRep& kappa);

} // namespace whitlab
