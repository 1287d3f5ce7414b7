#include "integrate.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <thread>
#include <vector>

#include "modarith.hpp"

namespace whitlab {

namespace {

struct PointSet {
    // Points are t = p^shift * u with u running over `count` residues;
    // stride/base describe the u-range: u = base + stride * j.
    int shift;       // 0 except for the annulus
    int64_t base;
    int64_t stride;
    int64_t count;
    bool units_only; // skip u divisible by p
    int64_t umod;    // u ranges in Z/p^(M - shift)
};

PointSet resolve_points(const FieldContext& ctx, const IntegralDomain& dom) {
    long p = ctx.p;
    int M = dom.level;
    if (M < 0) fail(ErrorCode::InvalidArgument, "negative level");
    switch (dom.set) {
        case IntegralDomain::Set::RingO: {
            if (dom.measure != IntegralDomain::Measure::Additive)
                fail(ErrorCode::InvalidArgument, "O carries the additive measure");
            int64_t n = ipow64(p, M);
            return {0, 0, 1, n, false, n};
        }
        case IntegralDomain::Set::Units: {
            if (M < 1) fail(ErrorCode::DomainEmpty, "units need level >= 1");
            int64_t n = ipow64(p, M);
            return {0, 0, 1, n, true, n};
          }
        case IntegralDomain::Set::CosetAdd:
        case IntegralDomain::Set::CosetMul: {
            int k = dom.k;
            if (k < 0 || k > M) fail(ErrorCode::InvalidArgument, "coset depth out of range");
            const PadicScalar& t0 = dom.t0;
            if (t0.is_zero() && dom.set == IntegralDomain::Set::CosetMul)
                fail(ErrorCode::InvalidArgument, "multiplicative coset of zero");
            if (!t0.is_zero() && t0.valuation() < 0)
                fail(ErrorCode::InvalidArgument, "coset base point outside O");
            bool mult = dom.measure == IntegralDomain::Measure::Multiplicative;
            if (mult && (t0.is_zero() || t0.valuation() != 0))
                fail(ErrorCode::InvalidArgument, "multiplicative coset needs a unit base point");
            if (mult && k < 1) fail(ErrorCode::InvalidArgument, "unit coset needs depth >= 1");
            int64_t base = (int64_t)(t0.is_zero() ? BigInt(0) : t0.lift_mod(M));
            int64_t stride = ipow64(p, k);
            return {0, base, stride, ipow64(p, M - k), false, ipow64(p, M)};
        }
        case IntegralDomain::Set::Annulus: {
            if (dom.measure != IntegralDomain::Measure::Additive)
                fail(ErrorCode::InvalidArgument, "annulus carries the additive measure");
            if (M <= dom.m) fail(ErrorCode::DomainEmpty, "annulus below resolution");
            int64_t n = ipow64(p, M - dom.m);
            return {dom.m, 0, 1, n, true, n};
        }
    }
    fail(ErrorCode::Internal, "unreachable");
}

Rational point_weight(const FieldContext& ctx, const IntegralDomain& dom) {
    BigInt pm = pow_big(ctx.p, dom.level);
    if (dom.measure == IntegralDomain::Measure::Additive) return Rational(1, pm);
    return Rational(1, pm / ctx.p * (ctx.p - 1)); // 1 / phi(p^M)
}

std::vector<std::pair<int64_t, int>> factorize64(int64_t n) {
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

// In-place reduction of a coefficient vector over Z/L to the canonical
// power-basis support, via the order-l subgroup relations.  Repeats until
// no "top digit" positions remain (eliminations for one prime can rewrite
// positions carrying top digits of another).
void canonical_dense(std::vector<int64_t>& c, int64_t L) {
    auto primes = factorize64(L);
    bool dirty = true;
    int sweeps = 0;
    while (dirty) {
        dirty = false;
        if (++sweeps > 12) fail(ErrorCode::Internal, "canonical reduction did not settle");
        for (auto [l, e] : primes) {
            int64_t le = 1;
            for (int i = 0; i < e; ++i) le *= l;
            int64_t sub = le / l;
            int64_t step = L / l;
            int64_t u = (L / le) % le;
            int64_t uinv = invmod(u, le);
            for (int64_t x = 0; x < L; ++x) {
                if (c[x] == 0) continue;
                int64_t digit = (int64_t)((x % le) * (__int128)uinv % le) / sub % l;
                if (digit != l - 1) continue;
                int64_t v = c[x];
                c[x] = 0;
                for (int64_t k = 1; k < l; ++k) {
                    int64_t y = x + k * step;
                    if (y >= L) y -= L * ((y) / L);
                    c[y % L] -= v;
                }
                dirty = true;
            }
        }
    }
}

} // namespace

IntegralResult finish_counts(std::vector<int64_t>& counts, int64_t L, const Rational& w,
                             int64_t points, int level, int sparse_cap) {
    canonical_dense(counts, L);
    IntegralResult res;
    res.points = points;
    res.level = level;
    int64_t nnz = 0;
    for (int64_t x = 0; x < L; ++x)
        if (counts[x]) ++nnz;
    res.zero_known = true;
    res.is_zero = (nnz == 0);
    // Deterministic floating rendering from the canonical form.
    double wr = w.convert_to<double>();
    std::complex<double> acc = 0, comp = 0;
    for (int64_t x = 0; x < L; ++x) {
        if (!counts[x]) continue;
        double ang = 2.0 * M_PI * (double)x / (double)L;
        std::complex<double> term =
            wr * (double)counts[x] * std::complex<double>(std::cos(ang), std::sin(ang));
        // Kahan compensation.
        std::complex<double> y = term - comp;
        std::complex<double> t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    res.approx = acc;
    if (nnz <= sparse_cap) {
        ExpSum s(L);
        for (int64_t x = 0; x < L; ++x)
            if (counts[x]) s.add_term(x, w * counts[x]);
        s.canonicalize();
        res.exact = s;
        res.exact_ok = true;
    }
    return res;
}

namespace {

PadicScalar build_point(const FieldContext& ctx, const PointSet& ps, int64_t u, int prec) {
    if (ps.shift == 0) return PadicScalar::from_integer(ctx.p, u, prec);
    assert(u % ctx.p != 0);
    return PadicScalar::make(ctx.p, ps.shift, u, prec);
}

} // namespace

IntegralResult brute_force_integral(const FieldContext& ctx, const PhaseFn& phase,
                                    const IntegralDomain& dom, const IntegrateOptions& opt) {
    long p = ctx.p;
    PointSet ps = resolve_points(ctx, dom);
    if (ps.count > opt.max_points)
        fail(ErrorCode::EnumerationTooLarge, "domain exceeds the point budget");
    int prec = dom.level - std::min(0, ps.shift) + 4;

    // Declared-level check by sampled refinement.
    if (opt.verify_level) {
        std::mt19937_64 rng(0xA5C3ull + dom.level);
        int64_t pm = ipow64(p, dom.level - ps.shift);
        for (int s = 0; s < opt.verify_samples; ++s) {
            int64_t j = (int64_t)(rng() % (uint64_t)ps.count);
            int64_t u = (ps.base + ps.stride * j) % ps.umod;
            if (ps.units_only && u % p == 0) continue;
            PadicScalar t1 = build_point(ctx, ps, u, prec);
            PadicScalar t2 = build_point(ctx, ps, u + pm, prec); // same level-M class
            if (!(phase(t1) == phase(t2)))
                fail(ErrorCode::LevelTooLow, "phase is not constant on level-M classes");
        }
    }

    std::map<AngleQZ, int64_t> counts_map;
    int64_t actual = 0;
    for (int64_t j = 0; j < ps.count; ++j) {
        int64_t u = (ps.base + ps.stride * j) % ps.umod;
        if (ps.units_only && u % p == 0) continue;
        PadicScalar t = build_point(ctx, ps, u, prec);
        counts_map[phase(t)] += 1;
        ++actual;
        if ((int64_t)counts_map.size() > opt.sparse_cap)
            fail(ErrorCode::EnumerationTooLarge,
                 "angle spectrum too rich for the generic engine; use a kernel");
    }
    if (actual == 0) fail(ErrorCode::DomainEmpty, "no residue classes in the domain");

    int64_t L = 1;
    for (auto& [a, n] : counts_map) L = L / gcd64(L, a.den) * a.den;
    if (L > opt.dense_cap) fail(ErrorCode::EnumerationTooLarge, "root-of-unity order too large");
    std::vector<int64_t> counts((size_t)L, 0);
    for (auto& [a, n] : counts_map) counts[(size_t)(a.num * (L / a.den))] += n;
    return finish_counts(counts, L, point_weight(ctx, dom), actual, dom.level, opt.sparse_cap);
}

IntegralResult brute_force_poly(const FieldContext& ctx, const std::vector<PadicScalar>& coeffs,
                                const IntegralDomain& dom, const IntegrateOptions& opt) {
    long p = ctx.p;
    IntegralDomain d = dom;
    int deg = (int)coeffs.size() - 1;
    int mmin = (dom.set == IntegralDomain::Set::Annulus) ? dom.m : 0;
    // Denominator exponent for the phase and the level it truly needs.
    int D = 0, need = 1;
    for (int i = 0; i <= deg; ++i) {
        if (coeffs[i].is_zero()) continue;
        D = std::max(D, -(coeffs[i].valuation() + i * mmin));
        if (i >= 1) need = std::max(need, -coeffs[i].valuation() - (i - 1) * mmin);
    }
    d.level = std::max(dom.level, std::max(need, mmin + 1));
    PointSet ps = resolve_points(ctx, d);
    if (ps.count > opt.max_points)
        fail(ErrorCode::EnumerationTooLarge, "domain exceeds the point budget");
    int64_t L = ipow64(p, D);
    if (L > opt.dense_cap) fail(ErrorCode::EnumerationTooLarge, "root-of-unity order too large");

    // Integerized coefficients: n_i = u_i p^(v_i + i*mmin + D) mod p^D.
    std::vector<int64_t> n(deg + 1, 0);
    for (int i = 0; i <= deg; ++i) {
        if (coeffs[i].is_zero()) continue;
        int sh = coeffs[i].valuation() + i * mmin + D;
        assert(sh >= 0);
        if (sh >= D) continue;
        n[i] = (int64_t)(coeffs[i].unit_mod(D - sh) * pow_big(p, sh) % pow_big(p, D));
    }

    auto eval = [&](int64_t u) {
        int64_t acc = 0;
        for (int i = deg; i >= 0; --i) acc = addmod(mulmod(acc, u, L), n[i], L);
        return acc;
    };

    int64_t total_pts = 0;
    std::vector<int64_t> counts((size_t)L, 0);
    int nworkers = std::max(1, opt.workers);
    if (nworkers > 1 && ps.count > 200'000) {
        std::vector<std::vector<int64_t>> local(nworkers);
        std::vector<int64_t> pts(nworkers, 0);
        std::vector<std::thread> th;
        for (int w = 0; w < nworkers; ++w)
            th.emplace_back([&, w]() {
                local[w].assign((size_t)L, 0);
                for (int64_t j = w; j < ps.count; j += nworkers) {
                    int64_t u = (ps.base + ps.stride * j) % ps.umod;
                    if (ps.units_only && u % p == 0) continue;
                    local[w][(size_t)eval(u)] += 1;
                    ++pts[w];
                }
            });
        for (auto& t : th) t.join();
        for (int w = 0; w < nworkers; ++w) {
            total_pts += pts[w];
            for (int64_t x = 0; x < L; ++x) counts[x] += local[w][x];
        }
    } else {
        for (int64_t j = 0; j < ps.count; ++j) {
            int64_t u = (ps.base + ps.stride * j) % ps.umod;
            if (ps.units_only && u % p == 0) continue;
            counts[(size_t)eval(u)] += 1;
            ++total_pts;
        }
    }
    if (total_pts == 0) fail(ErrorCode::DomainEmpty, "no residue classes in the domain");
    IntegralResult res =
        finish_counts(counts, L, point_weight(ctx, d), total_pts, d.level, opt.sparse_cap);
    return res;
}

} // namespace whitlab
