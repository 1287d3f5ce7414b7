#include "padic.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <sstream>

namespace whitlab {

BigInt pow_big(long base, int exp) {
    assert(exp >= 0);
    BigInt r = 1;
    BigInt b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

namespace {

bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

BigInt mod_pos(BigInt x, const BigInt& m) {
    x %= m;
    if (x < 0) x += m;
    return x;
}

// Inverse mod p^k via extended Euclid.
BigInt inv_mod_big(const BigInt& a, const BigInt& m) {
    BigInt t = 0, newt = 1, r = m, newr = mod_pos(a, m);
    while (newr != 0) {
        BigInt q = r / newr;
        BigInt tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) fail(ErrorCode::DivisionByZero, "unit not invertible");
    return mod_pos(t, m);
}

constexpr int kMinDigits = 2;

} // namespace

FieldContext::FieldContext(long p_, int precision)
    : p(p_), default_precision(precision), kappa_F(1), v3(p_ == 3 ? 1 : 0), zeta_nonsquare(0) {
    if (!is_odd_prime(p)) fail(ErrorCode::InvalidArgument, "p must be an odd prime");
    if (precision < kMinDigits) fail(ErrorCode::InvalidArgument, "precision too small");
    for (long z = 2; z < p; ++z) {
        // Euler criterion on small ints.
        long r = 1, b = z % p;
        for (long e = (p - 1) / 2; e; e >>= 1) {
            if (e & 1) r = (r * b) % p;
            b = (b * b) % p;
        }
        if (r == p - 1) {
            zeta_nonsquare = z;
            break;
        }
    }
    assert(zeta_nonsquare != 0);
}

PadicScalar PadicScalar::make(long p, int val, const BigInt& unit, int prec) {
    assert(p >= 3);
    if (prec < 1) fail(ErrorCode::PrecisionExhausted, "no significant digits");
    BigInt m = pow_big(p, prec);
    BigInt u = mod_pos(unit, m);
    if (u == 0) return zero(p);
    // Normalize away factors of p that slipped into the unit part.
    int c = 0;
    while (u % p == 0) {
        u /= p;
        ++c;
    }
    if (c > 0) {
        prec -= c;
        if (prec < 1) fail(ErrorCode::PrecisionExhausted, "no significant digits");
        val += c;
        u = mod_pos(u, pow_big(p, prec));
        if (u == 0) return zero(p);
    }
    PadicScalar x;
    x.p_ = p;
    x.val_ = val;
    x.unit_ = u;
    x.prec_ = prec;
    return x;
}

PadicScalar PadicScalar::from_integer(long p, BigInt n, int prec) {
    if (n == 0) return zero(p);
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return make(p, v, n, prec);
}

PadicScalar PadicScalar::from_rational(long p, const BigInt& num, const BigInt& den, int prec) {
    if (den == 0) fail(ErrorCode::DivisionByZero, "rational with zero denominator");
    if (num == 0) return zero(p);
    BigInt n = num, d = den;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    while (d % p == 0) {
        d /= p;
        --v;
    }
    BigInt m = pow_big(p, prec);
    return make(p, v, mod_pos(n, m) * inv_mod_big(d, m), prec);
}

BigInt PadicScalar::unit_mod(int k) const {
    if (is_zero()) return 0;
    if (k > prec_) fail(ErrorCode::PrecisionExhausted, "unit digits beyond known precision");
    return mod_pos(unit_, pow_big(p_, k));
}

long PadicScalar::leading_digit() const {
    if (is_zero()) fail(ErrorCode::InvalidArgument, "leading digit of zero");
    return (long)(unit_ % p_);
}

BigInt PadicScalar::lift_mod(int k) const {
    if (is_zero()) return 0;
    if (val_ < 0) fail(ErrorCode::OutOfDomain, "lift of a non-integral scalar");
    if (val_ >= k) return 0;
    return mod_pos(unit_mod(k - val_) * pow_big(p_, val_), pow_big(p_, k));
}

std::string PadicScalar::str() const {
    std::ostringstream os;
    if (is_zero()) {
        os << "0 (tracked zero)";
    } else {
        os << unit_ << " * " << p_ << "^" << val_ << " + O(" << p_ << "^" << (val_ + prec_) << ")";
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const PadicScalar& x) { return os << x.str(); }

PadicScalar add(const PadicScalar& a, const PadicScalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    assert(a.p() == b.p());
    long p = a.p();
    int m = std::min(a.valuation(), b.valuation());
    int abs_prec = std::min(a.valuation() + a.precision(), b.valuation() + b.precision());
    int digits = abs_prec - m;
    if (digits < 1) fail(ErrorCode::PrecisionExhausted, "add: operands do not overlap");
    BigInt mod = pow_big(p, digits);
    BigInt s = a.unit() * pow_big(p, a.valuation() - m) + b.unit() * pow_big(p, b.valuation() - m);
    s %= mod;
    if (s < 0) s += mod;
    if (s == 0) return PadicScalar::zero(p);
    int c = 0;
    BigInt u = s;
    while (u % p == 0) {
        u /= p;
        ++c;
    }
    int prec = digits - c;
    if (prec < kMinDigits)
        fail(ErrorCode::PrecisionExhausted, "add: cancellation consumed the working digits");
    return PadicScalar::make(p, m + c, u, prec);
}

PadicScalar neg(const PadicScalar& a) {
    if (a.is_zero()) return a;
    return PadicScalar::make(a.p(), a.valuation(), pow_big(a.p(), a.precision()) - a.unit(),
                             a.precision());
}

PadicScalar sub(const PadicScalar& a, const PadicScalar& b) { return add(a, neg(b)); }

PadicScalar mul(const PadicScalar& a, const PadicScalar& b) {
    if (a.is_zero() || b.is_zero()) return PadicScalar::zero(a.p() ? a.p() : b.p());
    assert(a.p() == b.p());
    int prec = std::min(a.precision(), b.precision());
    return PadicScalar::make(a.p(), a.valuation() + b.valuation(), a.unit_mod(prec) * b.unit_mod(prec),
                             prec);
}

PadicScalar inverse(const PadicScalar& a) {
    if (a.is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    BigInt m = pow_big(a.p(), a.precision());
    return PadicScalar::make(a.p(), -a.valuation(), inv_mod_big(a.unit(), m), a.precision());
}

PadicScalar div(const PadicScalar& a, const PadicScalar& b) {
    if (b.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
    if (a.is_zero()) return a;
    return mul(a, inverse(b));
}

PadicScalar pow_int(const PadicScalar& a, int e) {
    if (e < 0) return pow_int(inverse(a), -e);
    PadicScalar r = PadicScalar::one(a.p(), a.is_zero() ? 8 : a.precision());
    PadicScalar b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

PadicScalar mul_small(const PadicScalar& a, long c, int prec_hint) {
    if (a.is_zero()) return a;
    if (c == 0) return PadicScalar::zero(a.p());
    int prec = prec_hint > 0 ? std::min(prec_hint, a.precision()) : a.precision();
    return PadicScalar::make(a.p(), a.valuation(), a.unit() * c, prec);
}

PadicScalar shift(const PadicScalar& a, int k) {
    if (a.is_zero()) return a;
    return PadicScalar::make(a.p(), a.valuation() + k, a.unit(), a.precision());
}

bool equal(const PadicScalar& a, const PadicScalar& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.p() != b.p() || a.valuation() != b.valuation()) return false;
    int k = std::min(a.precision(), b.precision());
    return a.unit_mod(k) == b.unit_mod(k);
}

int diff_valuation(const PadicScalar& a, const PadicScalar& b) {
    int cap = std::min(a.is_zero() ? INT_MAX : a.valuation() + a.precision(),
                       b.is_zero() ? INT_MAX : b.valuation() + b.precision());
    try {
        PadicScalar d = sub(a, b);
        if (d.is_zero()) return cap;
        return d.valuation();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::PrecisionExhausted) return cap;
        throw;
    }
}

int legendre_unit(const PadicScalar& x) {
    if (!x.is_unit()) fail(ErrorCode::InvalidArgument, "legendre_unit needs a unit");
    long p = x.p();
    BigInt r = boost::multiprecision::powm(x.unit_mod(1), BigInt((p - 1) / 2), BigInt(p));
    return r == 1 ? 1 : -1;
}

bool is_square(const PadicScalar& x) {
    if (x.is_zero()) return true;
    if (x.valuation() % 2 != 0) return false;
    return legendre_unit(PadicScalar::make(x.p(), 0, x.unit(), x.precision())) == 1;
}

PadicScalar sqrt_hensel(const PadicScalar& x, long branch_digit) {
    if (x.is_zero()) return x;
    long p = x.p();
    if (x.valuation() % 2 != 0) fail(ErrorCode::NonSquare, "odd valuation");
    PadicScalar u = PadicScalar::make(p, 0, x.unit(), x.precision());
    if (legendre_unit(u) != 1) fail(ErrorCode::NonSquare, "unit part is a non-residue");
    branch_digit %= p;
    if (branch_digit < 0) branch_digit += p;
    if ((branch_digit * branch_digit - (long)(u.unit() % p)) % p != 0)
        fail(ErrorCode::BadBranch, "branch is not a square root of the leading digit");
    int prec = x.precision();
    // Newton iteration y <- (y + u/y)/2, doubling correct digits each step.
    BigInt y = branch_digit;
    int k = 1;
    BigInt um = u.unit_mod(prec);
    while (k < prec) {
        k = std::min(2 * k, prec);
        BigInt m = pow_big(p, k);
        BigInt inv_y = inv_mod_big(y, m);
        BigInt inv2 = inv_mod_big(2, m);
        y = ((y + (um % m) * inv_y) % m) * inv2 % m;
    }
    PadicScalar r = PadicScalar::make(p, x.valuation() / 2, y, prec);
    assert(diff_valuation(mul(r, r), x) >= x.valuation() + prec - 1);
    return r;
}

PadicScalar sqrt_canonical(const PadicScalar& x) {
    if (x.is_zero()) return x;
    long p = x.p();
    if (x.valuation() % 2 != 0) fail(ErrorCode::NonSquare, "odd valuation");
    PadicScalar u = PadicScalar::make(p, 0, x.unit(), x.precision());
    if (legendre_unit(u) != 1) fail(ErrorCode::NonSquare, "unit part is a non-residue");
    // Find the square root of the leading digit with representative in [1,(p-1)/2].
    long d0 = (long)(u.unit() % p);
    long seed = 0;
    for (long d = 1; d <= (p - 1) / 2; ++d)
        if ((d * d) % p == d0) {
            seed = d;
            break;
        }
    assert(seed != 0);
    return sqrt_hensel(x, seed);
}

PadicScalar padic_log(const PadicScalar& x) {
    if (x.is_zero()) fail(ErrorCode::OutOfDomain, "log of zero");
    long p = x.p();
    PadicScalar w = sub(x, PadicScalar::one(p, x.precision()));
    if (w.is_zero()) return w;
    if (!x.is_unit() || w.valuation() < 1) fail(ErrorCode::OutOfDomain, "log needs x in 1 + pO");
    int target = x.precision() + 1;
    PadicScalar sum = PadicScalar::zero(p);
    PadicScalar wi = w; // w^i
    for (int i = 1;; ++i) {
        if (i > 1) wi = mul(wi, w);
        if (wi.valuation() >= target + 2) break;
        PadicScalar term = div(wi, PadicScalar::from_integer(p, i, x.precision()));
        if (i % 2 == 0) term = neg(term);
        sum = add(sum, term);
    }
    return sum;
}

namespace {

PadicScalar newton_quadratic(const PadicScalar& t, const PadicScalar& Bsq, long seed_digit) {
    long p = t.p();
    int prec = t.precision();
    if (!Bsq.is_zero()) prec = std::min(prec, Bsq.precision() + std::max(0, Bsq.valuation()));
    BigInt m = pow_big(p, prec);
    BigInt tm = t.lift_mod(prec);
    BigInt bm = Bsq.is_zero() ? BigInt(0) : Bsq.lift_mod(prec);
    BigInt r = seed_digit;
    for (int k = 1; k < 2 * prec; k *= 2) {
        BigInt f = mod_pos(r * r + tm * r - bm, m);
        BigInt fp = mod_pos(2 * r + tm, m);
        if (fp % p == 0) fail(ErrorCode::NoSuchRoot, "quadratic root not simple");
        r = mod_pos(r - f * inv_mod_big(fp, m), m);
    }
    assert(mod_pos(r * r + tm * r - bm, m) == 0);
    return PadicScalar::from_integer(p, r, prec);
}

} // namespace

PadicScalar solve_quadratic_root(const PadicScalar& t, const PadicScalar& Bsq, Branch branch) {
    long p = t.p();
    switch (branch.kind) {
        case Branch::UnitRoot: {
            if (!t.is_unit() || (!Bsq.is_zero() && Bsq.valuation() <= 0))
                fail(ErrorCode::NoSuchRoot, "unit root needs v(t)=0 and v(Bsq)>0");
            long seed = (long)((p - t.unit() % p) % p);
            return newton_quadratic(t, Bsq, seed);
        }
        case Branch::SmallRoot: {
            PadicScalar big = solve_quadratic_root(t, Bsq, Branch::unit_root());
            if (Bsq.is_zero()) return PadicScalar::zero(p);
            return neg(div(Bsq, big));
        }
        case Branch::LeadingDigit: {
            long d = branch.digit % p;
            if (d < 0) d += p;
            BigInt f = mod_pos(BigInt(d) * d + t.lift_mod(1) * d - (Bsq.is_zero() ? BigInt(0) : Bsq.lift_mod(1)),
                               BigInt(p));
            if (f != 0) fail(ErrorCode::NoSuchRoot, "no root with the requested residue");
            return newton_quadratic(t, Bsq, d);
        }
        case Branch::PlusSqrt: {
            PadicScalar disc = add(mul(t, t), mul_small(Bsq, 4));
            PadicScalar s;
            try {
                s = sqrt_canonical(disc);
            } catch (const Error& e) {
                if (e.code() == ErrorCode::NonSquare)
                    fail(ErrorCode::NoSuchRoot, "discriminant is not a square");
                throw;
            }
            return div(sub(s, t), PadicScalar::from_integer(p, 2, t.precision()));
        }
    }
    fail(ErrorCode::Internal, "unreachable");
}

PadicScalar eval_power_series(const std::function<PadicScalar(int)>& coeff, const PadicScalar& z,
                              int max_terms) {
    PadicScalar c0 = coeff(0);
    long p = z.p() ? z.p() : c0.p();
    if (z.is_zero()) return c0;
    if (z.valuation() < 0) fail(ErrorCode::Divergent, "series evaluated outside O");
    int target = z.valuation() + z.precision() + 1;
    PadicScalar sum = c0;
    PadicScalar zk = PadicScalar::one(p, z.precision());
    int prev_val = INT_MIN, stagnant = 0;
    for (int k = 1; k <= max_terms; ++k) {
        zk = mul(zk, z);
        PadicScalar ck = coeff(k);
        if (ck.is_zero()) continue;
        PadicScalar term = mul(ck, zk);
        if (term.valuation() >= target + 1) return sum;
        if (term.valuation() <= prev_val) {
            if (++stagnant >= 8 || z.valuation() == 0)
                fail(ErrorCode::Divergent, "term valuations do not grow");
        } else {
            stagnant = 0;
        }
        prev_val = term.valuation();
        sum = add(sum, term);
    }
    fail(ErrorCode::Divergent, "series did not settle within the term budget");
}

PadicScalar eval_power_series(const std::vector<PadicScalar>& coeffs, const PadicScalar& z) {
    if (coeffs.empty()) fail(ErrorCode::InvalidArgument, "empty coefficient list");
    long p = z.p() ? z.p() : coeffs[0].p();
    // Divergence screen mirroring the infinite-series semantics.
    if (!z.is_zero() && z.valuation() <= 0) {
        int nonzero_tail = 0;
        for (size_t k = 1; k < coeffs.size(); ++k)
            if (!coeffs[k].is_zero()) ++nonzero_tail;
        if (z.valuation() < 0 || nonzero_tail >= 2)
            fail(ErrorCode::Divergent, "series does not converge at z");
    }
    PadicScalar sum = PadicScalar::zero(p);
    // Horner from the top.
    for (size_t i = coeffs.size(); i-- > 0;) {
        sum = mul(sum, z);
        sum = add(sum, coeffs[i]);
    }
    return sum;
}

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::Ok: return "Ok";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorCode::NonSquare: return "NonSquare";
        case ErrorCode::BadBranch: return "BadBranch";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::NoSuchRoot: return "NoSuchRoot";
        case ErrorCode::Divergent: return "Divergent";
        case ErrorCode::ConductorTooSmall: return "ConductorTooSmall";
        case ErrorCode::NotAUnit: return "NotAUnit";
        case ErrorCode::TrivialCharacter: return "TrivialCharacter";
        case ErrorCode::LevelTooLow: return "LevelTooLow";
        case ErrorCode::DomainEmpty: return "DomainEmpty";
        case ErrorCode::RankZero: return "RankZero";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::BadConductor: return "BadConductor";
        case ErrorCode::CentralCharacterNotTrivial: return "CentralCharacterNotTrivial";
        case ErrorCode::UnsupportedCase: return "UnsupportedCase";
        case ErrorCode::IncompatibleSelector: return "IncompatibleSelector";
        case ErrorCode::GammaOutOfRange: return "GammaOutOfRange";
        case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
        case ErrorCode::UnsupportedStratum: return "UnsupportedStratum";
        case ErrorCode::HypothesisFailed: return "HypothesisFailed";
        case ErrorCode::ConstraintViolated: return "ConstraintViolated";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::VerifyFailed: return "VerifyFailed";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

} // namespace whitlab
