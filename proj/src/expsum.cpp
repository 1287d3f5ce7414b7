#include "expsum.hpp"

#include <cassert>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace whitlab {

namespace {

std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
    std::vector<std::pair<int64_t, int>> f;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            f.push_back({d, e});
        }
    if (n > 1) f.push_back({n, 1});
    return f;
}

int64_t lcm64(int64_t a, int64_t b) { return a / gcd64(a, b) * b; }

} // namespace

ExpSum ExpSum::from_rational(const Rational& r) {
    ExpSum s(1);
    if (r != 0) s.c_[0] = r;
    return s;
}

ExpSum ExpSum::root_of_unity(const AngleQZ& a, const Rational& coeff) {
    ExpSum s(a.den);
    if (coeff != 0) s.c_[a.num] = coeff;
    return s;
}

void ExpSum::rebase(int64_t newL) {
    assert(newL % L_ == 0);
    if (newL == L_) return;
    int64_t k = newL / L_;
    std::map<int64_t, Rational> nc;
    for (auto& [e, v] : c_) nc[e * k] = v;
    c_ = std::move(nc);
    L_ = newL;
}

void ExpSum::add_term(int64_t exponent, const Rational& coeff) {
    exponent %= L_;
    if (exponent < 0) exponent += L_;
    Rational& slot = c_[exponent];
    slot += coeff;
    if (slot == 0) c_.erase(exponent);
}

void ExpSum::add_angle(const AngleQZ& a, const Rational& coeff) {
    if (L_ % a.den != 0) rebase(lcm64(L_, a.den));
    add_term(a.num * (L_ / a.den), coeff);
}

void ExpSum::canonicalize() {
    // Eliminate, for each prime l | L, the exponents whose l-adic digit at
    // l^(e-1) (after untwisting by L/l^e) equals l-1, using the order-l
    // subgroup relations sum_k zeta^(x + k L/l) = 0.
    for (auto [l, e] : factorize(L_)) {
        int64_t le = 1;
        for (int i = 0; i < e; ++i) le *= l;
        int64_t sub = le / l;       // l^(e-1)
        int64_t step = L_ / l;      // generator of the order-l subgroup
        int64_t u = (L_ / le) % le; // step has l-part u * l^(e-1), u a unit
        int64_t uinv = invmod(u, le);
        std::vector<int64_t> tops;
        for (auto& [x, v] : c_) {
            int64_t digit = (int64_t)((x % le) * (__int128)uinv % le) / sub % l;
            if (digit == l - 1) tops.push_back(x);
        }
        for (int64_t top : tops) {
            auto it = c_.find(top);
            if (it == c_.end()) continue;
            Rational v = it->second;
            c_.erase(it);
            if (v == 0) continue;
            for (int64_t k = 1; k < l; ++k) add_term(top + k * step, -v);
        }
    }
    for (auto it = c_.begin(); it != c_.end();)
        it = (it->second == 0) ? c_.erase(it) : std::next(it);
    // Shrink the modulus when all exponents share a factor with L.
    if (c_.empty()) {
        L_ = 1;
        return;
    }
    int64_t g = L_;
    for (auto& [e, v] : c_) g = gcd64(g, e);
    if (g > 1) {
        std::map<int64_t, Rational> nc;
        for (auto& [e, v] : c_) nc[e / g] = v;
        c_ = std::move(nc);
        L_ /= g;
    }
}

bool ExpSum::is_zero() const {
    ExpSum t = *this;
    t.canonicalize();
    return t.c_.empty();
}

std::complex<double> ExpSum::to_complex() const {
    std::complex<double> z = 0;
    for (auto& [e, v] : c_) {
        double x = 2.0 * M_PI * (double)e / (double)L_;
        z += v.convert_to<double>() * std::complex<double>(std::cos(x), std::sin(x));
    }
    return z;
}

std::string ExpSum::str() const {
    std::ostringstream os;
    os << "{L=" << L_;
    int shown = 0;
    for (auto& [e, v] : c_) {
        os << " " << v << "*z^" << e;
        if (++shown >= 12) {
            os << " ...";
            break;
        }
    }
    os << "}";
    return os.str();
}

ExpSum operator+(const ExpSum& a, const ExpSum& b) {
    ExpSum x = a, y = b;
    int64_t L = lcm64(x.L_, y.L_);
    x.rebase(L);
    y.rebase(L);
    for (auto& [e, v] : y.c_) x.add_term(e, v);
    return x;
}

ExpSum operator-(const ExpSum& a, const ExpSum& b) { return a + b.scaled(-1); }

ExpSum operator*(const ExpSum& a, const ExpSum& b) {
    ExpSum x = a, y = b;
    int64_t L = lcm64(x.L_, y.L_);
    x.rebase(L);
    y.rebase(L);
    ExpSum out(L);
    if ((__int128)x.c_.size() * y.c_.size() > 20'000'000)
        fail(ErrorCode::EnumerationTooLarge, "cyclotomic product too large");
    for (auto& [e1, v1] : x.c_)
        for (auto& [e2, v2] : y.c_) out.add_term(e1 + e2, v1 * v2);
    out.canonicalize();
    return out;
}

ExpSum ExpSum::conj() const {
    ExpSum out(L_);
    for (auto& [e, v] : c_) out.add_term(e == 0 ? 0 : L_ - e, v);
    return out;
}

ExpSum ExpSum::scaled(const Rational& r) const {
    if (r == 0) return ExpSum::zero();
    ExpSum out(L_);
    for (auto& [e, v] : c_) out.c_[e] = v * r;
    return out;
}

bool ExpSum::equals(const ExpSum& other) const { return (*this - other).is_zero(); }

CycValue CycValue::from_rational(long q, const Rational& r) {
    CycValue v(q);
    if (r != 0) v.slots_[0] = ExpSum::from_rational(r);
    return v;
}

CycValue CycValue::from_expsum(long q, const ExpSum& s, int r12) {
    CycValue v(q);
    v.accumulate(r12, s);
    return v;
}

CycValue CycValue::from_angle(long q, const AngleQZ& a, const Rational& coeff, int r12) {
    return from_expsum(q, ExpSum::root_of_unity(a, coeff), r12);
}

void CycValue::accumulate(int r12, const ExpSum& s) {
    // Fold whole powers of q into the coefficients: q^(r/12), r = 12k + r'.
    int k = r12 >= 0 ? r12 / 12 : -((-r12 + 11) / 12);
    int rp = r12 - 12 * k;
    Rational scale = k >= 0 ? Rational(pow_big(q_, k)) : Rational(1, pow_big(q_, -k));
    auto it = slots_.find(rp);
    if (it == slots_.end())
        slots_[rp] = s.scaled(scale);
    else
        it->second = it->second + s.scaled(scale);
}

void CycValue::normalize() {
    for (auto it = slots_.begin(); it != slots_.end();) {
        it->second.canonicalize();
        it = it->second.coeffs().empty() ? slots_.erase(it) : std::next(it);
    }
}

bool CycValue::is_zero() const {
    for (auto& [r, s] : slots_)
        if (!s.is_zero()) return false;
    return true;
}

std::complex<double> CycValue::to_complex() const {
    std::complex<double> z = 0;
    for (auto& [r, s] : slots_) z += std::pow((double)q_, r / 12.0) * s.to_complex();
    return z;
}

std::string CycValue::str() const {
    std::ostringstream os;
    os << "[q=" << q_;
    for (auto& [r, s] : slots_) os << " q^(" << r << "/12)*" << s.str();
    os << "]";
    return os.str();
}

CycValue operator+(const CycValue& a, const CycValue& b) {
    assert(a.q_ == 0 || b.q_ == 0 || a.q_ == b.q_);
    CycValue out(a.q_ ? a.q_ : b.q_);
    out.slots_ = a.slots_;
    for (auto& [r, s] : b.slots_) out.accumulate(r, s);
    return out;
}

CycValue operator*(const CycValue& a, const CycValue& b) {
    assert(a.q_ == 0 || b.q_ == 0 || a.q_ == b.q_);
    CycValue out(a.q_ ? a.q_ : b.q_);
    for (auto& [r1, s1] : a.slots_)
        for (auto& [r2, s2] : b.slots_) out.accumulate(r1 + r2, s1 * s2);
    return out;
}

CycValue CycValue::conj() const {
    CycValue out(q_);
    for (auto& [r, s] : slots_) out.slots_[r] = s.conj();
    return out;
}

CycValue CycValue::scaled(const Rational& r) const {
    CycValue out(q_);
    if (r == 0) return out;
    for (auto& [k, s] : slots_) out.slots_[k] = s.scaled(r);
    return out;
}

CycValue CycValue::shifted(int dr12) const {
    CycValue out(q_);
    for (auto& [k, s] : slots_) out.accumulate(k + dr12, s);
    return out;
}

bool CycValue::equals(const CycValue& other) const {
    CycValue d = *this + other.scaled(-1);
    return d.is_zero();
}

} // namespace whitlab
