#pragma once

#include "characters.hpp"
#include "integrate.hpp"

namespace whitlab {

/// Calibrated convention atoms for one prime.  chi_F is realized as the
/// quadratic-residue character and the epsilon constant is *defined* by the
/// brute-force quadratic sums g_A = sum_{x mod p} psi(A x^2 / p), so that
/// the one-dimensional Gauss sum evaluation holds by construction; the
/// verification suites then re-test it at independent parameters.
class GaussAtoms {
public:
    explicit GaussAtoms(const FieldContext& ctx);

    const FieldContext& field() const { return ctx_; }
    // g_A in Z[zeta_p]; A taken mod p, A a unit.
    const ExpSum& quad_sum(long A) const;
    int chi_F(long A) const; // Legendre symbol
    int chi_F(const PadicScalar& A) const;
    // epsilon(1/2, chi_F)^2 as an exact rational; equals chi_F(-1).
    const Rational& eps_sq() const { return eps_sq_; }

    // gamma_F(A, rho): 1 unless rho odd and positive, else chi_F(A) eps.
    CycValue gamma_factor(const PadicScalar& A, int rho) const;
    // min(q^(-rho/2), 1) * gamma_F(A, rho) with sqrt(q) resolved into g_A,
    // so the result lives in slot 0 and compares exactly with brute force.
    CycValue scaled_gamma(const PadicScalar& A, int rho) const;

private:
    FieldContext ctx_;
    std::vector<ExpSum> g_;
    Rational eps_sq_;
};

const GaussAtoms& gauss_atoms(const FieldContext& ctx);

// ---- Lemma: one-dimensional quadratic Gauss sums ----
// G(A p^-rho, B) = int_O psi(p^-rho A x^2 + B x) dx, A a unit.
CycValue gauss_1d(const FieldContext& ctx, const PadicScalar& A, int rho, const PadicScalar& B);
IntegralResult gauss_1d_brute(const FieldContext& ctx, const PadicScalar& A, int rho,
                              const PadicScalar& B, const IntegrateOptions& opt = {});

// ---- Lemma: character Gauss sums ----
// G(x, chi) = int_{O^*} psi(x y) chi(y) d^* y for ramified chi.
CycValue gauss_chi(const FieldContext& ctx, const PadicScalar& x,
                   const MultiplicativeCharacter& chi);
IntegralResult gauss_chi_brute(const FieldContext& ctx, const PadicScalar& x,
                               const MultiplicativeCharacter& chi,
                               const IntegrateOptions& opt = {});
// The operationally defined epsilon(1/2, chi^-1) (for reports).
CycValue gauss_chi_epsilon(const FieldContext& ctx, const MultiplicativeCharacter& chi);

// ---- Lemma: two-dimensional Gauss sums at rho = 1 ----
struct Sym2 {
    PadicScalar a, b, c; // [[a, b], [b, c]], entries in O
};
// G((p^-1/2) A, B) = int_{O^2} psi((p^-1/2) x^t A x + x^t B) dx.
CycValue gauss_2d(const FieldContext& ctx, const Sym2& A, const PadicScalar& B1,
                  const PadicScalar& B2);
IntegralResult gauss_2d_brute(const FieldContext& ctx, const Sym2& A, const PadicScalar& B1,
                              const PadicScalar& B2, const IntegrateOptions& opt = {});

// ---- Lemma: the easy cubic integral ----
// int_O psi(a t^3 + b t^2) dt for v(3a) > v(b).
CycValue cubic_integral(const FieldContext& ctx, const PadicScalar& a, const PadicScalar& b);
IntegralResult cubic_brute(const FieldContext& ctx, const PadicScalar& a, const PadicScalar& b,
                           const IntegrateOptions& opt = {});

// ---- The p-adic Airy function ----
struct AiryResult {
    bool exact_ok = false;
    CycValue exact;     // q^(-v(a)/3) int_O psi(a t^3 + b t) dt
    std::complex<double> approx{0.0, 0.0};
    bool zero_known = false;
    bool is_zero = false;
    int64_t points = 0;
};
AiryResult airy_eval(const FieldContext& ctx, const PadicScalar& a, const PadicScalar& b,
                     const IntegrateOptions& opt = {});

struct AiryBound {
    bool zero = false;      // case (1): the value is exactly 0
    Rational multiplier;    // 2 or 1
    int q12 = 0;            // bound = multiplier * q^(q12/12)
    double value = 0.0;
};
AiryBound airy_bound(const FieldContext& ctx, int va, int vb);

// int_{p^m O^*} psi(a t^3 + b t) dt  (the annulus vanishing lemma).
IntegralResult annulus_cubic_brute(const FieldContext& ctx, const PadicScalar& a,
                                   const PadicScalar& b, int m, const IntegrateOptions& opt = {});

} // namespace whitlab
