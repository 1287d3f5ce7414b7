#include "characters.hpp"

#include <cassert>
#include <map>
#include <mutex>

namespace whitlab {

namespace {

long find_primitive_root(long p) {
    // Factor p-1 on small ints.
    std::vector<long> primes;
    long m = p - 1;
    for (long d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            primes.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) primes.push_back(m);
    for (long g = 2; g < p; ++g) {
        bool ok = true;
        for (long q : primes)
            if (powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        // g must stay primitive mod p^2 (then it is primitive mod every p^a).
        if (ok && powmod(g, p - 1, p * p) == 1) ok = false;
        if (ok) return g;
    }
    fail(ErrorCode::Internal, "no primitive root found");
}

std::map<std::pair<long, int>, std::unique_ptr<DlogTable>> g_tables;
std::mutex g_tables_mutex;

} // namespace

int64_t DlogTable::dlog(int64_t x) const {
    x %= modulus;
    if (x < 0) x += modulus;
    if (x == 0 || ind[x] < 0) fail(ErrorCode::NotAUnit, "dlog of a non-unit");
    return ind[x];
}

const DlogTable& dlog_table(long p, int a) {
    if (a < 1) fail(ErrorCode::InvalidArgument, "dlog table needs a >= 1");
    std::lock_guard<std::mutex> lock(g_tables_mutex);
    auto key = std::make_pair(p, a);
    auto it = g_tables.find(key);
    if (it != g_tables.end()) return *it->second;

    auto t = std::make_unique<DlogTable>();
    t->p = p;
    t->a = a;
    t->modulus = ipow64(p, a);
    if (t->modulus > 4'000'000) fail(ErrorCode::EnumerationTooLarge, "dlog table too large");
    t->order = t->modulus / p * (p - 1);
    t->g = find_primitive_root(p);
    t->ind.assign(t->modulus, -1);
    int64_t x = 1;
    for (int64_t e = 0; e < t->order; ++e) {
        t->ind[x] = e;
        x = mulmod(x, t->g, t->modulus);
    }
    assert(x == 1);
    const DlogTable& ref = *t;
    g_tables.emplace(key, std::move(t));
    return ref;
}

MultiplicativeCharacter::MultiplicativeCharacter(long p_, int a_, int64_t k_, AngleQZ at_p)
    : p(p_), a(a_), k(k_), value_at_p(at_p) {
    if (a < 0) fail(ErrorCode::InvalidArgument, "negative conductor exponent");
    if (a == 0) {
        if (k != 0) fail(ErrorCode::InvalidArgument, "unramified character must have k = 0");
        return;
    }
    int64_t order = ipow64(p, a) / p * (p - 1);
    k %= order;
    if (k < 0) k += order;
    this->k = k;
    // Conductor exactness: non-trivial on 1 + p^(a-1) O.
    bool exact = (a == 1) ? (k % (p - 1) != 0) : (k % p != 0);
    if (!exact) fail(ErrorCode::BadConductor, "character conductor is not exactly a");
}

AngleQZ chi_eval(const MultiplicativeCharacter& chi, const PadicScalar& u) {
    if (u.is_zero()) fail(ErrorCode::NotAUnit, "chi of zero");
    AngleQZ out = scale(chi.value_at_p, (int64_t)u.valuation());
    if (chi.a == 0) return out;
    const DlogTable& t = dlog_table(chi.p, chi.a);
    int64_t x = (int64_t)u.unit_mod(chi.a);
    AngleQZ unit_part(0, 1);
    // angle = k * ind(u) / phi(p^a)
    __int128 prod = (__int128)chi.k * t.dlog(x) % t.order;
    unit_part = AngleQZ((int64_t)prod, t.order);
    return out + unit_part;
}

PadicScalar derive_b_chi(const MultiplicativeCharacter& chi, int prec) {
    long p = chi.p;
    int a = chi.a;
    if (a < 1) fail(ErrorCode::ConductorTooSmall, "need a(chi) >= kappa_F = 1");
    int64_t pa1 = ipow64(p, a - 1); // b ranges over units mod p^(a-1); z over Z/p^(a-1)
    // Precompute the target angles chi(1+zp) and the logs log(1+zp).
    std::vector<AngleQZ> target(pa1);
    std::vector<PadicScalar> logs(pa1);
    for (int64_t z = 0; z < pa1; ++z) {
        PadicScalar x = PadicScalar::from_integer(p, 1 + z * p, prec);
        target[z] = chi_eval(chi, x);
        logs[z] = padic_log(x);
    }
    PadicScalar pa = PadicScalar::make(p, a, 1, prec);
    for (int64_t b = 1; b < std::max<int64_t>(pa1, 2); ++b) {
        if (b % p == 0) continue;
        PadicScalar bs = PadicScalar::from_integer(p, b, prec);
        bool ok = true;
        for (int64_t z = 0; z < pa1 && ok; ++z)
            ok = (psi_eval(div(mul(bs, logs[z]), pa)) == target[z]);
        if (ok) return bs;
    }
    fail(ErrorCode::Internal, "no b_chi found; conductor data inconsistent");
}

XiCharacterData::XiCharacterData(const AlgebraDescriptor& d, const PadicScalar& b0_, int a_xi_)
    : desc(d), b0(b0_), a_xi(a_xi_) {
    if (!b0.is_unit()) fail(ErrorCode::InvalidArgument, "b0 must be a unit");
    if (a_xi < 1) fail(ErrorCode::ConductorTooSmall, "a(xi) must be positive");
    if (d.kind == AlgebraKind::Ramified && a_xi % 2 != 0)
        fail(ErrorCode::BadConductor, "ramified dihedral data needs a(xi) even");
}

AlgebraElement XiCharacterData::b_xi() const {
    long p = desc.p;
    switch (desc.kind) {
        case AlgebraKind::Split:
            return AlgebraElement(desc, b0, neg(b0));
        case AlgebraKind::Unramified:
            return AlgebraElement(desc, PadicScalar::zero(p), b0);
        case AlgebraKind::Ramified:
            return AlgebraElement(desc, b0, PadicScalar::zero(p));
    }
    fail(ErrorCode::Internal, "unreachable");
}

PadicScalar XiCharacterData::b_sq() const {
    PadicScalar s = mul(b0, b0);
    if (desc.kind == AlgebraKind::Unramified)
        s = mul(s, PadicScalar::from_integer(desc.p, desc.zeta, b0.precision()));
    return s; // split: b0^2; unramified: zeta b0^2; ramified: b0^2
}

AlgebraElement base_point_lift(const XiCharacterData& xi, const AlgebraElement& z, int prec) {
    const AlgebraDescriptor& d = xi.desc;
    long p = d.p;
    auto lift = [&](const PadicScalar& c, bool unit_required) {
        long r = c.is_zero() || c.valuation() > 0 ? 0 : c.leading_digit();
        if (unit_required && r == 0) fail(ErrorCode::NotAUnit, "base point of a non-unit");
        return PadicScalar::from_integer(p, r, prec);
    };
    switch (d.kind) {
        case AlgebraKind::Split:
            return AlgebraElement(d, lift(z.c0(), true), lift(z.c1(), true));
        case AlgebraKind::Unramified: {
            PadicScalar r0 = lift(z.c0(), false), r1 = lift(z.c1(), false);
            if (r0.is_zero() && r1.is_zero()) fail(ErrorCode::NotAUnit, "base point of a non-unit");
            return AlgebraElement(d, r0, r1);
        }
        case AlgebraKind::Ramified:
            return AlgebraElement(d, lift(z.c0(), true), PadicScalar::zero(p));
    }
    fail(ErrorCode::Internal, "unreachable");
}

AngleQZ xi_eval_principal(const XiCharacterData& xi, const AlgebraElement& z) {
    const AlgebraDescriptor& d = xi.desc;
    AlgebraElement w = sub(z, AlgebraElement::one(d, xi.b0.precision()));
    if (!w.is_zero() && !w.in_pE(d.kappa_E))
        fail(ErrorCode::OutOfDomain, "xi log formula needs z in 1 + p_E");
    AlgebraElement lg = padic_log(z);
    AlgebraElement scaled = mul_omega_pow(mul(xi.b_xi(), lg), -(xi.a_xi - d.n_psi_E));
    return psi_E_eval(scaled);
}

AngleQZ xi_eval(const XiCharacterData& xi, const AlgebraElement& z) {
    if (!z.is_unit()) {
        // Only the split algebra has non-unit invertible elements of mixed
        // valuation; pull the uniformizer parts out through value_at_p.
        if (xi.desc.kind == AlgebraKind::Split) {
            const PadicScalar& z1 = z.c0();
            const PadicScalar& z2 = z.c1();
            if (z1.is_zero() || z2.is_zero()) fail(ErrorCode::NotAUnit, "xi of a non-invertible element");
            long p = xi.desc.p;
            int prec = xi.b0.precision();
            AlgebraElement unit(xi.desc, PadicScalar::make(p, 0, z1.unit(), z1.precision()),
                                PadicScalar::make(p, 0, z2.unit(), z2.precision()));
            AngleQZ at_p = scale(xi.value_at_p, (int64_t)(z1.valuation() - z2.valuation()));
            return at_p + xi_eval(xi, unit);
        }
        fail(ErrorCode::NotAUnit, "xi of a non-unit");
    }
    AlgebraElement z0 = base_point_lift(xi, z, xi.b0.precision());
    return xi_eval_principal(xi, div(z, z0));
}

} // namespace whitlab
