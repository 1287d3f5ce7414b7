#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gauss.hpp"

using namespace whitlab;

namespace {
PadicScalar S(long p, long n, int prec = 14) { return PadicScalar::from_integer(p, n, prec); }
PadicScalar U(long p, int v, long u, int prec = 14) { return PadicScalar::make(p, v, u, prec); }
}

TEST_CASE("cyclotomic zero test and reduction") {
    // Full sum of p-th roots of unity vanishes.
    ExpSum s(5);
    for (int e = 0; e < 5; ++e) s.add_term(e, Rational(1, 3));
    CHECK(s.is_zero());

    // Same at prime powers and mixed moduli.
    ExpSum t(45);
    for (int k = 0; k < 3; ++k) t.add_term(7 + k * 15, 2); // order-3 subgroup coset
    CHECK(t.is_zero());

    ExpSum u(45);
    u.add_term(1, 1);
    u.add_term(2, -1);
    CHECK(!u.is_zero());

    // Embedding consistency: zeta_10^2 = zeta_5.
    ExpSum a = ExpSum::root_of_unity(AngleQZ(1, 5));
    ExpSum b = ExpSum::root_of_unity(AngleQZ(2, 10));
    CHECK(a.equals(b));

    // Complex rendering agrees with the coefficient evaluation.
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        ExpSum r(75);
        std::complex<double> direct = 0;
        for (int i = 0; i < 10; ++i) {
            int64_t e = (int64_t)(rng() % 75);
            r.add_term(e, 1);
            direct += std::exp(std::complex<double>(0, 2 * M_PI * (double)e / 75.0));
        }
        CHECK(std::abs(r.to_complex() - direct) < 1e-12);
        ExpSum rc = r;
        rc.canonicalize();
        CHECK(std::abs(rc.to_complex() - direct) < 1e-10);
    }
}

TEST_CASE("cyclotomic products and conjugation") {
    ExpSum z = ExpSum::root_of_unity(AngleQZ(1, 5));
    ExpSum w = ExpSum::root_of_unity(AngleQZ(3, 25));
    ExpSum prod = z * w;
    CHECK(prod.equals(ExpSum::root_of_unity(AngleQZ(8, 25))));
    CHECK((z * z.conj()).equals(ExpSum::from_rational(1)));
    CycValue a = CycValue::from_expsum(5, z, 7);
    CycValue b = CycValue::from_expsum(5, w, 5);
    CycValue p = a * b;
    CHECK(std::abs(p.to_complex() - a.to_complex() * b.to_complex()) < 1e-10);
}

TEST_CASE("brute force basics") {
    FieldContext ctx(5, 12);
    // phase 0 on O -> total mass 1
    auto zero_phase = [](const PadicScalar&) { return AngleQZ(); };
    IntegralResult r = brute_force_integral(ctx, zero_phase, IntegralDomain::ring(1));
    CHECK(r.exact_ok);
    CHECK(r.exact.equals(ExpSum::from_rational(1)));

    // phase x/p on O -> exact zero by orthogonality
    auto lin = [](const PadicScalar& t) { return psi_eval(shift(t, -1)); };
    IntegralResult r2 = brute_force_integral(ctx, lin, IntegralDomain::ring(1));
    CHECK(r2.zero_known);
    CHECK(r2.is_zero);

    // phase x^2/5: |value| = 5^(-1/2)
    auto quad = [](const PadicScalar& t) { return psi_eval(shift(mul(t, t), -1)); };
    IntegralResult r3 = brute_force_integral(ctx, quad, IntegralDomain::ring(1));
    CHECK(!r3.is_zero);
    CHECK(std::abs(std::abs(r3.approx) - 1.0 / std::sqrt(5.0)) < 1e-12);

    // Declared level too low is detected.
    auto deep = [](const PadicScalar& t) { return psi_eval(shift(t, -3)); };
    CHECK_THROWS_AS(brute_force_integral(ctx, deep, IntegralDomain::ring(1)), Error);

    // Level stability: recomputing one level deeper gives the identical sum.
    IntegralResult r4 = brute_force_integral(ctx, quad, IntegralDomain::ring(2));
    CHECK(r4.exact.equals(r3.exact));
}

TEST_CASE("poly kernel agrees with the generic engine") {
    std::mt19937_64 rng(5);
    for (long p : {3L, 5L}) {
        FieldContext ctx(p, 14);
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<PadicScalar> c = {
                PadicScalar::zero(p),
                U(p, -2 + (int)(rng() % 3), 1 + (long)(rng() % (p - 1))),
                U(p, -1 + (int)(rng() % 2), 1 + (long)(rng() % (p - 1))),
                U(p, -2 + (int)(rng() % 2), 1 + (long)(rng() % (p - 1)))};
            auto phase = [&](const PadicScalar& t) {
                PadicScalar acc = PadicScalar::zero(p);
                for (size_t i = c.size(); i-- > 0;) acc = add(mul(acc, t), c[i]);
                return psi_eval(acc);
            };
            IntegralResult a = brute_force_poly(ctx, c, IntegralDomain::ring(1));
            IntegralResult b = brute_force_integral(ctx, phase, IntegralDomain::ring(a.level));
            REQUIRE(a.exact_ok);
            REQUIRE(b.exact_ok);
            CHECK(a.exact.equals(b.exact));
        }
    }
}

TEST_CASE("gauss_1d closed form versus oracle") {
    for (long p : {3L, 5L, 7L}) {
        FieldContext ctx(p, 14);
        std::mt19937_64 rng(100 + p);
        for (int rho = -2; rho <= 4; ++rho) {
            for (long A0 = 1; A0 < p; ++A0) {
                PadicScalar A = S(p, A0);
                // rho = 0, B = 0 -> 1 ; off-support B -> 0 ; plus random B
                std::vector<PadicScalar> Bs = {PadicScalar::zero(p)};
                for (int vb = -rho - 1; vb <= 1; ++vb)
                    Bs.push_back(U(p, vb, 1 + (long)(rng() % (p - 1)) + p * (long)(rng() % p)));
                for (const PadicScalar& B : Bs) {
                    CycValue closed = gauss_1d(ctx, A, rho, B);
                    IntegralResult brute = gauss_1d_brute(ctx, A, rho, B);
                    REQUIRE(brute.exact_ok);
                    CHECK(closed.equals(brute.value(p)));
                }
            }
        }
    }
}

TEST_CASE("gauss_1d spec anchors") {
    FieldContext ctx(5, 14);
    // rho=0, B=0, A=1 -> 1
    CHECK(gauss_1d(ctx, S(5, 1), 0, PadicScalar::zero(5)).equals(CycValue::from_rational(5, 1)));
    // rho=2, B with v(B) = -3 -> 0
    CHECK(gauss_1d(ctx, S(5, 1), 2, U(5, -3, 1)).is_zero());
    // rho=1, B=0: |G| = 5^(-1/2)
    CycValue g = gauss_1d(ctx, S(5, 1), 1, PadicScalar::zero(5));
    CHECK(std::abs(std::abs(g.to_complex()) - 1.0 / std::sqrt(5.0)) < 1e-12);
}

TEST_CASE("gamma factor") {
    FieldContext ctx(5, 12);
    const GaussAtoms& atoms = gauss_atoms(ctx);
    // rho even -> 1
    CHECK(atoms.gamma_factor(S(5, 2), 2).equals(CycValue::from_rational(5, 1)));
    CHECK(atoms.gamma_factor(S(5, 2), -1).equals(CycValue::from_rational(5, 1)));
    // |gamma_F| = 1 for rho odd
    CHECK(std::abs(std::abs(atoms.gamma_factor(S(5, 3), 1).to_complex()) - 1.0) < 1e-12);
    // eps^2 = chi_F(-1): p=5 -> +1, p=3 -> -1
    CHECK(atoms.eps_sq() == 1);
    FieldContext ctx3(3, 12);
    CHECK(gauss_atoms(ctx3).eps_sq() == -1);
}

TEST_CASE("gauss_chi closed form versus oracle") {
    for (long p : {3L, 5L}) {
        FieldContext ctx(p, 14);
        for (int a = 1; a <= 2; ++a) {
            int64_t order = ipow64(p, a) / p * (p - 1);
            for (int64_t k = 1; k < order; ++k) {
                MultiplicativeCharacter chi;
                try {
                    chi = MultiplicativeCharacter(p, a, k);
                } catch (const Error&) {
                    continue; // conductor not exact
                }
                for (int vx = -a - 1; vx <= -a + 1; ++vx) {
                    PadicScalar x = U(p, vx, 1 + (k % (p - 1)));
                    CycValue closed = gauss_chi(ctx, x, chi);
                    IntegralResult brute = gauss_chi_brute(ctx, x, chi);
                    REQUIRE(brute.exact_ok);
                    CHECK(closed.equals(brute.value(p)));
                    if (vx != -a) CHECK(closed.is_zero());
                }
            }
        }
        MultiplicativeCharacter trivial(p, 0, 0);
        CHECK_THROWS_AS(gauss_chi(ctx, S(p, 1), trivial), Error);
    }
}

TEST_CASE("quadratic character example p=5") {
    // p=5, a=1, g=2, k=2 is the Legendre symbol; chi(2) = -1.
    MultiplicativeCharacter chi(5, 1, 2);
    const DlogTable& t = dlog_table(5, 1);
    CHECK(t.g == 2);
    CHECK(chi_eval(chi, S(5, 2)) == AngleQZ(1, 2));
    CHECK(chi_eval(chi, S(5, 1)) == AngleQZ());
    CHECK(chi_eval(chi, S(5, 4)) == AngleQZ());
}

TEST_CASE("gauss_2d closed form versus oracle") {
    std::mt19937_64 rng(42);
    for (long p : {3L, 5L}) {
        FieldContext ctx(p, 14);
        auto rnd_unit = [&]() { return S(p, 1 + (long)(rng() % (p - 1)) + p * (long)(rng() % p)); };
        auto rnd_B = [&]() {
            int v = (int)(rng() % 3) - 1;
            return U(p, v, 1 + (long)(rng() % (p - 1)));
        };
        for (int trial = 0; trial < 60; ++trial) {
            Sym2 A;
            int cls = trial % 3;
            if (cls == 0) { // rank 2 generic
                A = {rnd_unit(), S(p, (long)(rng() % p)), rnd_unit()};
                PadicScalar det = sub(mul(A.a, A.c), mul(A.b, A.b));
                if (det.is_zero() || det.valuation() != 0) continue;
            } else if (cls == 1) { // rank 1: c = b^2 / a mod higher terms
                PadicScalar a = rnd_unit(), b = rnd_unit();
                A = {a, b, add(div(mul(b, b), a), U(p, 1 + (int)(rng() % 2), 1))};
            } else { // antidiagonal-ish: a, c in p
                A = {U(p, 1, 1 + (long)(rng() % (p - 1))), rnd_unit(),
                     U(p, 1, 1 + (long)(rng() % (p - 1)))};
            }
            PadicScalar B1 = rnd_B(), B2 = rnd_B();
            CycValue closed = gauss_2d(ctx, A, B1, B2);
            IntegralResult brute = gauss_2d_brute(ctx, A, B1, B2);
            REQUIRE(brute.exact_ok);
            CHECK(closed.equals(brute.value(p)));
        }
        // Spec anchors: identity A, B=0 -> q^-1 gamma(A_p), |.| = 1/q.
        Sym2 I{S(p, 1), PadicScalar::zero(p), S(p, 1)};
        CycValue v = gauss_2d(ctx, I, PadicScalar::zero(p), PadicScalar::zero(p));
        CHECK(std::abs(std::abs(v.to_complex()) - 1.0 / p) < 1e-12);
        CHECK(v.equals(gauss_2d_brute(ctx, I, PadicScalar::zero(p), PadicScalar::zero(p)).value(p)));
        // rank-1 compatibility failure: A = diag(1,0), B = (0, p^-1) -> 0.
        Sym2 D{S(p, 1), PadicScalar::zero(p), PadicScalar::zero(p)};
        CHECK(gauss_2d(ctx, D, PadicScalar::zero(p), U(p, -1, 1)).is_zero());
        // a, c in p with unit b, B = 0 -> q^-1 gamma (gamma = 1 here).
        Sym2 AD{U(p, 1, 1), S(p, 1), U(p, 1, 1)};
        CycValue w = gauss_2d(ctx, AD, PadicScalar::zero(p), PadicScalar::zero(p));
        CHECK(w.equals(CycValue::from_rational(p, Rational(1, p))));
    }
}

TEST_CASE("cubic integral closed form versus oracle") {
    std::mt19937_64 rng(77);
    for (long p : {3L, 5L}) {
        FieldContext ctx(p, 16);
        for (int trial = 0; trial < 120; ++trial) {
            int vb = (int)(rng() % 8) - 5; // [-5, 2]
            int va = vb - ctx.v3 + 1 + (int)(rng() % 3);
            PadicScalar a = U(p, va, 1 + (long)(rng() % (p - 1)) + p * (long)(rng() % p));
            PadicScalar b = U(p, vb, 1 + (long)(rng() % (p - 1)) + p * (long)(rng() % p));
            IntegralResult brute = cubic_brute(ctx, a, b);
            REQUIRE(brute.exact_ok);
            try {
                CycValue closed = cubic_integral(ctx, a, b);
                CHECK(closed.equals(brute.value(p)));
            } catch (const Error& e) {
                // The p=3 corner v(a) = v(b) = -1: magnitude still q^(v(b)/2).
                REQUIRE(e.code() == ErrorCode::PreconditionViolated);
                CHECK(p == 3);
                CHECK(vb == -1);
                CHECK(va == -1);
                CHECK(std::abs(std::abs(brute.approx) - std::pow((double)p, vb / 2.0)) < 1e-12);
            }
        }
        // v(b) >= 0 -> 1
        CHECK(cubic_integral(ctx, U(p, 1, 1), S(p, 1)).equals(CycValue::from_rational(p, 1)));
        // precondition violated
        CHECK_THROWS_AS(cubic_integral(ctx, S(p, 1), U(p, 2, 1)), Error);
    }
}

TEST_CASE("cubic p=3 corner counterexample is real") {
    // a = 4/3, b = 1/3: the integral is (1 - zeta_3)/3, not gamma_F/sqrt(3).
    FieldContext ctx(3, 16);
    IntegralResult r = cubic_brute(ctx, U(3, -1, 4), U(3, -1, 1));
    REQUIRE(r.exact_ok);
    ExpSum expect(3);
    expect.add_term(0, Rational(1, 3));
    expect.add_term(1, Rational(-1, 3));
    CHECK(r.exact.equals(expect));
    CHECK_THROWS_AS(cubic_integral(ctx, U(3, -1, 4), U(3, -1, 1)), Error);
}

TEST_CASE("airy evaluation, bounds, annulus vanishing") {
    std::mt19937_64 rng(99);
    for (long p : {3L, 5L}) {
        FieldContext ctx(p, 16);
        // Prop (1): v(b) < v(a) < 0 -> exact zero.
        for (int trial = 0; trial < 25; ++trial) {
            int va = -(int)(rng() % 4) - 1;
            int vb = va - 1 - (int)(rng() % 2);
            PadicScalar a = U(p, va, 1 + (long)(rng() % (p - 1)));
            PadicScalar b = U(p, vb, 1 + (long)(rng() % (p - 1)));
            AiryResult r = airy_eval(ctx, a, b);
            REQUIRE(r.zero_known);
            CHECK(r.is_zero);
        }
        // Bounds on a small grid.
        for (int va = -6; va <= -1; ++va)
            for (int vb = -6; vb <= 2; ++vb) {
                PadicScalar a = U(p, va, 1 + (long)(rng() % (p - 1)));
                PadicScalar b = U(p, vb, 1 + (long)(rng() % (p - 1)));
                AiryResult r = airy_eval(ctx, a, b);
                AiryBound bd = airy_bound(ctx, va, vb);
                CHECK(std::abs(r.approx) <= bd.value + 1e-9);
                if (bd.zero) CHECK(r.is_zero);
            }
        // Annulus vanishing for m < -v(3), v(a) <= min(0, v(b)).
        int checked = 0;
        for (int va = -4; va <= 0; ++va)
            for (int vb = va; vb <= 2; ++vb)
                for (int m = -2 - ctx.v3; m < -ctx.v3; ++m) {
                    PadicScalar a = U(p, va, 1 + (long)(rng() % (p - 1)));
                    PadicScalar b = U(p, vb, 1 + (long)(rng() % (p - 1)));
                    try {
                        IntegralResult r = annulus_cubic_brute(ctx, a, b, m);
                        REQUIRE(r.zero_known);
                        CHECK(r.is_zero);
                        ++checked;
                    } catch (const Error& e) {
                        // Deep cells exceed desk scale; skipping them is expected.
                        CHECK(e.code() == ErrorCode::EnumerationTooLarge);
                    }
                }
        CHECK(checked > 10);
    }
    // Spec anchor: b=0, v(a)=-1, p=5: 5^(1/3) times the 5-term average.
    FieldContext ctx5(5, 16);
    AiryResult r = airy_eval(ctx5, U(5, -1, 1), PadicScalar::zero(5));
    std::complex<double> direct = 0;
    for (int t = 0; t < 5; ++t)
        direct += std::exp(std::complex<double>(0, 2 * M_PI * ((t * t * t) % 5) / 5.0)) / 5.0;
    CHECK(std::abs(r.approx - std::pow(5.0, 1.0 / 3.0) * direct) < 1e-12);
}
