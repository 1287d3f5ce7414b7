#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "coset.hpp"

using namespace whitlab;

namespace {

PadicScalar S(long p, long n, int prec) { return PadicScalar::from_integer(p, n, prec); }

std::vector<RepresentationSpec> specs_for(const FieldContext& ctx, int n) {
    std::vector<RepresentationSpec> out;
    if (n % 2 == 0) {
        MultiplicativeCharacter chi(ctx.p, n / 2, 1);
        out.push_back(rep_derive(ctx, chi));
        out.push_back(rep_derive(ctx, AlgebraKind::Unramified,
                                 PadicScalar::one(ctx.p, ctx.default_precision), n / 2));
    } else {
        out.push_back(rep_derive(ctx, AlgebraKind::Ramified,
                                 PadicScalar::one(ctx.p, ctx.default_precision), n - 1));
    }
    return out;
}

} // namespace

TEST_CASE("rep_derive conductor dictionary") {
    FieldContext ctx(5, 20);
    MultiplicativeCharacter chi(5, 4, 1);
    RepresentationSpec ps = rep_derive(ctx, chi);
    CHECK(ps.n == 8);
    CHECK(ps.n1 == 4);
    CHECK(ps.n2 == 4);
    CHECK(ps.d == 0);
    // b satisfies b^2 = (-1)^(n-1) N(b) as stored forms.
    PadicScalar lhs = ps.b_sq();
    PadicScalar nb = norm(ps.xi.b_xi());
    PadicScalar rhs = (ps.n % 2 == 0) ? neg(nb) : nb;
    CHECK(equal(lhs, rhs));

    RepresentationSpec ram = rep_derive(ctx, AlgebraKind::Ramified, S(5, 1, 20), 8);
    CHECK(ram.n == 9);
    CHECK(ram.n1 == 4);
    CHECK(ram.n2 == 5);
    CHECK(ram.d == 1);
    CHECK(equal(ram.b_sq(), (ram.n % 2 == 0) ? neg(norm(ram.xi.b_xi())) : norm(ram.xi.b_xi())));
    CHECK_THROWS_AS(rep_derive(ctx, AlgebraKind::Ramified, S(5, 1, 20), 7), Error);

    RepresentationSpec un = rep_derive(ctx, AlgebraKind::Unramified, S(5, 2, 20), 3);
    CHECK(un.n == 6);
    CHECK(equal(un.b_sq(), neg(norm(un.xi.b_xi()))));
}

TEST_CASE("case anchors") {
    FieldContext ctx(5, 30);
    for (const RepresentationSpec& spec :
         {specs_for(ctx, 8)[0], specs_for(ctx, 8)[1], specs_for(ctx, 9)[0]}) {
        int n = spec.n;
        // Case 5: gamma = n, |y| = 1 -> 1.
        WhittakerValue v5 = whittaker_eval(spec, S(5, 1, 30), CosetRep::lower(n));
        CHECK(v5.support);
        CHECK(v5.terms.size() == 1);
        CHECK(v5.terms[0].is_zero());
        // Case 1 off support: |y| = q^(n-1) -> exact zero.
        CHECK(!whittaker_eval(spec, PadicScalar::make(5, -(n - 1), 1, 30), CosetRep::lower(0)).support);
        // Case 1 on support: |psi(y)| phase present.
        WhittakerValue v1 = whittaker_eval(spec, PadicScalar::make(5, -n, 1, 30), CosetRep::lower(0));
        CHECK(v1.support);
        CHECK(v1.terms[0] == AngleQZ(1, ipow64(5, n)));
        // Case 6: Weyl, any gamma.
        WhittakerValue v6 = whittaker_eval(spec, PadicScalar::make(5, -n, 3, 30), CosetRep::weyl(2));
        CHECK(v6.support);
        CHECK(v6.magnitude(5) == doctest::Approx(1.0));
    }
}

TEST_CASE("case 3 delta stratification") {
    FieldContext ctx(5, 30);
    RepresentationSpec spec = specs_for(ctx, 8)[0]; // principal series, n = 8
    // Delta(y) = 1 + 4 b^2 y^-2; find strata.
    int found_ns = 0, found_sq = 0;
    for (long w = 1; w < 25; ++w) {
        if (w % 5 == 0) continue;
        PadicScalar y = S(5, w, 30);
        PadicScalar Delta = delta_of(spec, y);
        int u = Delta.is_zero() ? 99 : Delta.valuation();
        bool sq = Delta.is_zero() || (u % 2 == 0 && is_square(Delta));
        WhittakerValue v = whittaker_eval(spec, y, CosetRep::lower(4));
        if (!sq) {
            CHECK(!v.support);
            ++found_ns;
        } else if (v.support) {
            ++found_sq;
            if (u < 2)
                CHECK(v.case_id == 33);
            else
                CHECK(v.case_id == 34);
        }
    }
    CHECK(found_ns > 0);
    CHECK(found_sq > 0);

    // Within a U(u) stratum, the roots x_pm mod p^(u/2+1) depend on y only
    // through y mod p^(u+1).
    std::mt19937_64 rng(31);
    int tested = 0;
    for (int trial = 0; trial < 6000 && tested < 40; ++trial) {
        long w = 1 + (long)(rng() % 10000);
        if (w % 5 == 0) continue;
        PadicScalar y = S(5, w, 30);
        PadicScalar Delta = delta_of(spec, y);
        if (Delta.is_zero()) continue;
        int u = Delta.valuation();
        if (u < 1 || u % 2 != 0 || !is_square(Delta)) continue;
        PadicScalar y2 = add(y, PadicScalar::make(5, u + 1, 1 + (long)(rng() % 4), 30));
        PadicScalar sq1 = sqrt_canonical(add(mul(y, y), mul_small(spec.b_sq(), 4)));
        PadicScalar sq2 = sqrt_canonical(add(mul(y2, y2), mul_small(spec.b_sq(), 4)));
        PadicScalar half = inverse(S(5, 2, 30));
        for (int sign : {1, -1}) {
            PadicScalar x1 = mul(sign > 0 ? sub(sq1, y) : neg(add(sq1, y)), half);
            PadicScalar x2 = mul(sign > 0 ? sub(sq2, y2) : neg(add(sq2, y2)), half);
            CHECK(diff_valuation(x1, x2) >= u / 2 + 1);
        }
        ++tested;
    }
    CHECK(tested >= 10);
}

TEST_CASE("support exactness and magnitude caps on a small grid") {
    FieldContext ctx(5, 40);
    std::mt19937_64 rng(77);
    for (int n : {4, 5, 6}) {
        for (const RepresentationSpec& spec : specs_for(ctx, n)) {
            std::vector<CosetRep> cells = coset_reps(n + 1);
            for (const CosetRep& kappa : cells) {
                for (int vy = -n - 1; vy <= n + 1; ++vy) {
                    for (int rep = 0; rep < 3; ++rep) {
                        long w = 1 + (long)(rng() % (5 - 1)) + 5 * (long)(rng() % 100);
                        PadicScalar y = PadicScalar::make(5, vy, w, 40);
                        WhittakerValue v = whittaker_eval(spec, y, kappa);
                        PointCap cap = table1_cap(spec, y, kappa);
                        CHECK(v.support == cap.in_support);
                        if (v.support) {
                            CHECK(v.magnitude(5) <= cap_value(5, cap) + 1e-9);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("right K_A invariance at working precision") {
    FieldContext ctx(5, 40);
    std::mt19937_64 rng(123);
    for (int n : {6, 8, 9}) {
        for (const RepresentationSpec& spec : specs_for(ctx, n)) {
            for (int trial = 0; trial < 40; ++trial) {
                int vy = (int)(rng() % (2 * n + 3)) - n - 1;
                long w = 1 + (long)(rng() % 4) + 5 * (long)(rng() % 50);
                PadicScalar y = PadicScalar::make(5, vy, w, 40);
                PadicScalar u = add(PadicScalar::one(5, 40),
                                    PadicScalar::make(5, n + 2, 1 + (long)(rng() % 100), 40));
                std::vector<CosetRep> cells = {CosetRep::lower((int)(rng() % (n + 2))),
                                               CosetRep::weyl(1 + (int)(rng() % (n + 1)))};
                for (const CosetRep& kappa : cells) {
                    WhittakerValue v1 = whittaker_eval(spec, y, kappa);
                    WhittakerValue v2 = whittaker_eval(spec, mul(y, u), kappa);
                    CHECK(v1.support == v2.support);
                    if (v1.support && !v1.has_airy) {
                        REQUIRE(v1.terms.size() == v2.terms.size());
                        CHECK(v1.to_cyc(5).equals(v2.to_cyc(5)));
                    }
                }
            }
        }
    }
}

TEST_CASE("balanced relations against direct conjugation") {
    FieldContext ctx(5, 45);
    std::mt19937_64 rng(999);
    for (int n : {4, 5, 6, 7}) {
        for (const RepresentationSpec& spec : specs_for(ctx, n)) {
            std::vector<CosetRep> cells = coset_reps(n + 1);
            for (const CosetRep& kappa : cells) {
                for (int vt = -n - 1; vt <= n + 1; ++vt) {
                    long w = 1 + (long)(rng() % 4) + 5 * (long)(rng() % 20);
                    PadicScalar t = PadicScalar::make(5, vt, w, 45);
                    WhittakerValue rel = balanced_eval(spec, t, kappa);
                    WhittakerValue dir = balanced_eval_direct(spec, t, kappa);
                    CHECK(rel.support == dir.support);
                    if (rel.support) {
                        REQUIRE(rel.terms.size() == dir.terms.size());
                        bool both_exact = (!rel.has_airy || rel.airy.exact_ok) &&
                                          (!dir.has_airy || dir.airy.exact_ok);
                        REQUIRE(both_exact);
                        CHECK(rel.to_cyc(5).equals(dir.to_cyc(5)));
                    }
                }
            }
        }
    }
}

TEST_CASE("dyadic selectors restrict the balanced vector") {
    FieldContext ctx(5, 40);
    RepresentationSpec spec = specs_for(ctx, 8)[0];
    CosetRep low0 = CosetRep::lower(0);
    // S(s) kills |t| = q^(-s-1).
    PadicScalar t1 = PadicScalar::make(5, 2, 1, 40);
    CHECK(!dyadic_component(spec, low0, DyadicSelector::s(1), t1).support);
    WhittakerValue pass = dyadic_component(spec, low0, DyadicSelector::s(2), t1);
    CHECK(pass.support == balanced_eval(spec, t1, low0).support);
    // SInfinity kills |t| > q^-n.
    CHECK(!dyadic_component(spec, low0, DyadicSelector::s_inf(), t1).support);
    PadicScalar tdeep = PadicScalar::make(5, spec.n, 1, 40);
    CHECK(dyadic_component(spec, low0, DyadicSelector::s_inf(), tdeep).support ==
          balanced_eval(spec, tdeep, low0).support);
    // U(u) passes only matching Delta strata.
    for (long w : {1L, 2L, 3L, 4L, 6L, 7L}) {
        PadicScalar t = S(5, w, 40);
        PadicScalar Delta = delta_of(spec, t);
        int u = Delta.is_zero() ? 99 : Delta.valuation();
        for (int usel = 0; usel < 3; ++usel) {
            WhittakerValue v = dyadic_component(spec, low0, DyadicSelector::u(usel), t);
            if (usel != u || !balanced_eval(spec, t, low0).support)
                CHECK(!v.support);
        }
    }
    // Selector compatibility errors.
    CHECK_THROWS_AS(dyadic_component(spec, CosetRep::lower(1), DyadicSelector::s(1), t1), Error);
    RepresentationSpec ram = specs_for(ctx, 9)[0];
    CHECK_THROWS_AS(dyadic_component(ram, low0, DyadicSelector::u(0), S(5, 1, 40)), Error);
}

TEST_CASE("table 2 support matches the balanced evaluator") {
    FieldContext ctx(5, 40);
    std::mt19937_64 rng(55);
    for (int n : {4, 5, 8, 9}) {
        for (const RepresentationSpec& spec : specs_for(ctx, n)) {
            for (const CosetRep& kappa : coset_reps(n + 1)) {
                for (int vt = -3; vt <= n + 1; ++vt) {
                    long w = 1 + (long)(rng() % 4) + 5 * (long)(rng() % 30);
                    PadicScalar t = PadicScalar::make(5, vt, w, 40);
                    WhittakerValue v = balanced_eval(spec, t, kappa);
                    PointCap cap = table2_cap(spec, t, kappa);
                    CHECK(v.support == cap.in_support);
                    if (v.support) CHECK(v.magnitude(5) <= cap_value(5, cap) + 1e-9);
                }
            }
        }
    }
}
