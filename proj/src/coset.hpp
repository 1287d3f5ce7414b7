#pragma once

#include <array>
#include <vector>

#include "whittaker.hpp"

namespace whitlab {

/// 2x2 matrix over F with exact entries.
struct MatrixF {
    PadicScalar a, b, c, d; // row-major

    static MatrixF diag(const PadicScalar& x, const PadicScalar& y) {
        return {x, PadicScalar::zero(x.p() ? x.p() : y.p()),
                PadicScalar::zero(x.p() ? x.p() : y.p()), y};
    }
    PadicScalar det() const { return sub(mul(a, d), mul(b, c)); }
};

MatrixF mul(const MatrixF& x, const MatrixF& y);
bool equal_mod(const MatrixF& x, const MatrixF& y, int k); // entrywise to p^k

// a(y) and n(x).
MatrixF mat_a(const PadicScalar& y, int prec);
MatrixF mat_n(const PadicScalar& x, int prec);
// kappa as a matrix (gamma must be finite).
MatrixF mat_kappa(long p, const CosetRep& kappa, int prec);

// The representatives for the two-sided action, both families, gamma up to
// gamma_max plus the infinite cells.
std::vector<CosetRep> coset_reps(int gamma_max);

// Classification of an invertible matrix by the invariant v(c) - v(d).
CosetRep orbit_classify(const MatrixF& g);

/// Coordinates of g in Z N A kappa K_A: g = z n(x) a(y) kappa a(u), so that
/// W(g) = psi(x) W(a(y) kappa) for a Whittaker function of trivial central
/// character that is right K_A-invariant.
struct FullCoordinates {
    PadicScalar x;
    PadicScalar y;
    CosetRep kappa;
};
FullCoordinates full_coordinates(const MatrixF& g);

// W_b(a(t) kappa) computed from the definition: conjugate by a(p^n2) and
// substitute the theorem's formulas at the decomposed coordinates.  The
// independent route behind the balancing relations.
WhittakerValue balanced_eval_direct(const RepresentationSpec& spec, const PadicScalar& t,
                                    const CosetRep& kappa);

/// The two decomposition identities of the transform lemma.
struct TransformResult {
    AngleQZ psi_prefactor;
    long long g_t; // indices of g_{t, l, v}
    int g_l;
    PadicScalar g_v;
};
TransformResult transform_decompose(const RepresentationSpec& spec, const PadicScalar& y,
                                    const CosetRep& kappa);
// Entrywise verification of the matrix identity behind the decomposition,
// mod p^check_prec; returns the residual valuation floor reached.
bool transform_identity_check(const FieldContext& ctx, const PadicScalar& y, int gamma, int n,
                              bool weyl, int check_prec);

// Haar volume of the K_kappa cell: (q-1) / (q^gamma (q+1)); zero for the
// infinite cells.
Rational haar_volume(long p, const CosetRep& kappa);
// Exact volume by enumeration of PGL_2(Z/p^m); requires m > gamma.
Rational haar_volume_enumerated(long p, int m, const CosetRep& kappa, int64_t guard = 10'000'000);

} // namespace whitlab
