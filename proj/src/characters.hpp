#pragma once

#include <memory>
#include <vector>

#include "algebra.hpp"
#include "angle.hpp"

namespace whitlab {

/// psi(x) = e^{2 pi i {x}_p}: the unramified additive character of Q_p.
inline AngleQZ psi_eval(const PadicScalar& x) { return frac_angle(x); }

/// psi_E = psi o Tr_{E/F}.
inline AngleQZ psi_E_eval(const AlgebraElement& x) { return frac_angle(trace(x)); }

/// Shared discrete-logarithm table for (Z/p^a)^* against the fixed
/// primitive root g (the smallest one that generates for every exponent).
struct DlogTable {
    long p;
    int a;
    int64_t modulus;   // p^a
    int64_t order;     // phi(p^a)
    long g;            // primitive root
    std::vector<int64_t> ind; // ind[x] for x coprime to p, else -1

    int64_t dlog(int64_t x) const;
};

const DlogTable& dlog_table(long p, int a);

/// chi with conductor exponent a(chi), stored by its exponent k against the
/// fixed primitive root: chi(g) = e^{2 pi i k / phi(p^a)}.
struct MultiplicativeCharacter {
    long p = 0;
    int a = 0;            // conductor exponent
    int64_t k = 0;        // generator exponent mod phi(p^a)
    AngleQZ value_at_p;   // extension to F^*: chi(p), default angle 0

    MultiplicativeCharacter() = default;
    MultiplicativeCharacter(long p_, int a_, int64_t k_, AngleQZ at_p = AngleQZ());

    bool is_trivial_on_units() const { return a == 0; }
};

// chi(u) for any nonzero scalar (value_at_p^(v(u)) times the unit-part value).
AngleQZ chi_eval(const MultiplicativeCharacter& chi, const PadicScalar& u);

// The unit b with chi(1+zp) = psi(b p^{-a} log(1+zp)) for all z, unique
// mod p^{a-1}; derived by exhaustive search and full verification.
PadicScalar derive_b_chi(const MultiplicativeCharacter& chi, int prec);

/// Character data for xi on E^*, in the normalized form of the conductor
/// dictionary: b_xi = (b0,-b0) / b0 sqrt(zeta) / b0 for split / unramified /
/// ramified E.  On principal units xi is the logarithm formula; elsewhere it
/// is pinned by xi(base point) = 1 with one fixed lift per residue class
/// mod p_E.
struct XiCharacterData {
    AlgebraDescriptor desc;
    PadicScalar b0;   // unit
    int a_xi = 0;     // conductor exponent of xi
    AngleQZ value_at_p; // split only: xi(p, 1); xi(1, p) gets the negative

    XiCharacterData() = default;
    XiCharacterData(const AlgebraDescriptor& d, const PadicScalar& b0_, int a_xi_);

    // b_xi as an element of E.
    AlgebraElement b_xi() const;
    // b_xi^2 = (-1)^(n-1) N(b_xi) as an F-scalar.
    PadicScalar b_sq() const;
};

// Base-point lift of the residue class of a unit z mod p_E.
AlgebraElement base_point_lift(const XiCharacterData& xi, const AlgebraElement& z, int prec);

// xi(z) for a unit z of E (base-point normalized).
AngleQZ xi_eval(const XiCharacterData& xi, const AlgebraElement& z);

// The logarithm branch alone: xi(1+w) for w in p_E.
AngleQZ xi_eval_principal(const XiCharacterData& xi, const AlgebraElement& one_plus_w);

} // namespace whitlab
