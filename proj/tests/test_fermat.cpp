#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "kummerlab/fermat.hpp"
#include "kummerlab/lfunc.hpp"
#include "kummerlab/solver.hpp"

using namespace kummerlab;

TEST_CASE("Fermat quotients") {
    CHECK(fermat_quotient(1, 7, 4).is_zero_to_precision());

    // q(ab) = q(a) + q(b) mod p on random pairs
    std::mt19937_64 rng(71);
    for (long p : {5L, 13L, 101L}) {
        for (int i = 0; i < 34; ++i) {
            mpz_class a(1 + static_cast<long>(rng() % 10000));
            mpz_class b(1 + static_cast<long>(rng() % 10000));
            if (a % p == 0 || b % p == 0)
                continue;
            PadicApprox lhs = fermat_quotient(a * b, p, 1);
            PadicApprox rhs = fermat_quotient(a, p, 1) + fermat_quotient(b, p, 1);
            CHECK((lhs - rhs).is_zero_to_precision());
        }
    }

    // 1093 is a Wieferich prime: q(2) = 0 mod p, checked against direct
    // modular exponentiation
    {
        mpz_class direct;
        mpz_class base(2), e(1092), m(mpz_class(1093) * 1093);
        mpz_powm(direct.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(),
                 m.get_mpz_t());
        CHECK(direct == 1);
        CHECK(fermat_quotient(2, 1093, 1).is_zero_to_precision());
        CHECK(!fermat_quotient(2, 1091, 1).is_zero_to_precision());
    }

    // u(a) = 1 + p q(a)
    PadicApprox u = fermat_unit(10, 7, 5);
    PadicApprox q = fermat_quotient(10, 7, 4);
    CHECK((u - (PadicApprox(7, 1, 5) + q.mul_pow_p(1))).is_zero_to_precision());

    CHECK_THROWS_AS(fermat_quotient(14, 7, 3), NotAUnit);
}

TEST_CASE("Teichmuller lifts") {
    CHECK(teichmuller(1, 7, 5).residue() == 1);

    std::mt19937_64 rng(73);
    for (long p : {5L, 13L, 37L}) {
        for (int i = 0; i < 10; ++i) {
            mpz_class a(1 + static_cast<long>(rng() % (5 * p)));
            if (a % p == 0)
                continue;
            int prec = 5;
            PadicApprox w = teichmuller(a, p, prec);
            // w = a mod p
            CHECK(mpz_class((w.residue() - a) % p) == 0);
            // w^{p-1} = 1 mod p^prec
            mpz_class pw, e(p - 1), m = pow_p(p, prec);
            mpz_powm(pw.get_mpz_t(), w.residue().get_mpz_t(), e.get_mpz_t(),
                     m.get_mpz_t());
            CHECK(pw == 1);
            // a = w(a) <a> with <a> = 1 mod p
            PadicApprox unit_part = PadicApprox(p, a, prec).div_unit(w);
            CHECK(mpz_class((unit_part.residue() - 1) % p) == 0);
        }
    }
}

TEST_CASE("coefficient-first T build against direct values") {
    for (long long d : {1LL, 5LL, -4LL}) {
        QuadChar chi = d == 1 ? QuadChar() : QuadChar::kronecker_char(d);
        TSpec spec{13, 4, 1, chi, 6};
        KummerFn t = build_T(spec);
        // cross-check from values at s = 0..3
        std::vector<PadicApprox> values;
        TSpec vspec = spec;
        for (long s = 0; s < 6; ++s)
            values.push_back(t_direct_value(vspec, s));
        KummerFn tv = KummerFn::from_values(13, values, 6);
        for (int nu = 0; nu < 4; ++nu)
            CHECK((t.coefficient(nu) - tv.coefficient(nu)).is_zero_to_precision());
    }
}

TEST_CASE("shift operator sends T^r to T^{r+1}") {
    QuadChar chi5 = QuadChar::kronecker_char(5);
    TSpec t1{11, 2, 1, chi5, 6};
    TSpec t2{11, 2, 2, chi5, 5};
    KummerFn f1 = build_T(t1).shift_op(1);
    KummerFn f2 = build_T(t2);
    for (int nu = 0; nu < f1.coefficient_count() - 1; ++nu)
        CHECK((f1.coefficient(nu) - f2.coefficient(nu).reduced(5 - nu))
                  .is_zero_to_precision());
}

TEST_CASE("power-sum route agrees with the direct sums") {
    // principal (7, 2, 1) at s = 0..4
    for (long s = 0; s <= 4; ++s) {
        TSpec spec{7, 2, 1, QuadChar(), 5};
        PadicApprox direct = t_direct_value(spec, s);
        PadicApprox via_sums = t_from_power_sums(spec, s);
        CHECK((direct.reduced(via_sums.precision()) -
               via_sums.reduced(direct.precision()))
                  .is_zero_to_precision());
    }
    // character version
    QuadChar chi5 = QuadChar::kronecker_char(5);
    for (long s = 0; s <= 3; ++s) {
        TSpec spec{7, 2, 2, chi5, 4};
        PadicApprox direct = t_direct_value(spec, s);
        PadicApprox via_sums = t_from_power_sums(spec, s);
        CHECK((direct.reduced(via_sums.precision()) -
               via_sums.reduced(direct.precision()))
                  .is_zero_to_precision());
    }
    // l = 0, s = 0, principal: S_0(p) = p - 1 is constant in t, so the
    // difference and hence T vanishes in the numerator position
    {
        TSpec spec{11, 0, 1, QuadChar(), 3};
        PadicApprox direct = t_direct_value(spec, 0);
        PadicApprox via_sums = t_from_power_sums(spec, 0);
        CHECK((direct.reduced(3) - via_sums.reduced(3)).is_zero_to_precision());
    }
}

TEST_CASE("periodicity in l and r") {
    QuadChar chi5 = QuadChar::kronecker_char(5);
    for (long long d : {1LL, 5LL}) {
        QuadChar chi = d == 1 ? QuadChar() : chi5;
        long p = 11;
        TSpec base{p, 2, 1, chi, 2};
        TSpec lshift{p, 2 + (p - 1), 1, chi, 2};
        TSpec rshift{p, 2, 1 + static_cast<int>(p) - 1, chi, 2};
        for (long s = 0; s <= 4; ++s) {
            long v0 = mpz_fdiv_ui(t_direct_value(base, s).residue().get_mpz_t(),
                                  static_cast<unsigned long>(p));
            long vl = mpz_fdiv_ui(t_direct_value(lshift, s).residue().get_mpz_t(),
                                  static_cast<unsigned long>(p));
            long vr = mpz_fdiv_ui(t_direct_value(rshift, s).residue().get_mpz_t(),
                                  static_cast<unsigned long>(p));
            CHECK(v0 == vl);
            CHECK(v0 == vr);
        }
        // coefficient recurrence Delta(nu) = Delta(nu + p - 1) mod p
        TSpec spec{p, 2, 1, chi, 12};
        KummerFn t = build_T(spec);
        for (int nu = 0; nu + static_cast<int>(p) - 1 < t.coefficient_count();
             ++nu) {
            long a = mpz_fdiv_ui(t.coefficient(nu).residue().get_mpz_t(),
                                 static_cast<unsigned long>(p));
            long b = mpz_fdiv_ui(
                t.coefficient(nu + p - 1).residue().get_mpz_t(),
                static_cast<unsigned long>(p));
            CHECK(a == b);
        }
    }
}

TEST_CASE("congruence suite at known irregular pairs") {
    CongruenceReport r1 = congruence_suite(37, 32, QuadChar(), 5);
    for (const auto& c : r1.checks)
        CHECK_MESSAGE(c.pass, c.name);

    CongruenceReport r2 = congruence_suite(19, 10, QuadChar::kronecker_char(-4), 5);
    for (const auto& c : r2.checks)
        CHECK_MESSAGE(c.pass, c.name);

    // a regular pair exercises the KS* branch
    CongruenceReport r3 = congruence_suite(11, 4, QuadChar(), 4);
    for (const auto& c : r3.checks)
        CHECK_MESSAGE(c.pass, c.name);
}

TEST_CASE("exponential fixed points: kappa is injective on samples") {
    long p = 7;
    int n_prec = 7;
    std::mt19937_64 rng(79);
    std::vector<std::vector<long>> seen;
    for (long u = 1; u <= 5; ++u) {
        PadicApprox a(p, 1 + p * u, n_prec + 1);
        KummerFn fa = KummerFn::exponential(a, n_prec);
        FixedPointResult tau = find_fixed_point(fa, n_prec - 1);
        CHECK(tau.consistent);
        // tau lies in 1 + pZ_p
        CHECK(tau.digits.digits[0] == 1);
        for (const auto& other : seen)
            CHECK(other != tau.digits.digits);
        seen.push_back(tau.digits.digits);
    }

    // a^tau = 1 forces a = 1: for a = 1 + p^r alpha the value a^tau - 1 has
    // valuation exactly r
    for (int r = 1; r <= 3; ++r) {
        for (int i = 0; i < 5; ++i) {
            long alpha = 1 + static_cast<long>(rng() % (p - 1));
            PadicApprox a(p, 1 + pow_p(p, r) * alpha, n_prec + 1);
            KummerFn fa = KummerFn::exponential(a, n_prec);
            mpz_class tau = 1 + p * static_cast<long>(rng() % 40);
            PadicApprox v = fa.evaluate(PadicApprox(p, tau, n_prec), n_prec - 1) -
                            PadicApprox(p, 1, n_prec);
            CHECK(v.valuation() == r);
        }
    }
}

TEST_CASE("classification transfer between T and zeta for p < 200") {
    ScanOptions opt;
    opt.p_max = 200;
    auto pairs = scan_irregular(QuadChar(), opt);
    for (const auto& rec : pairs) {
        TSpec spec{rec.p, rec.l, 1, QuadChar(), 4};
        KummerFn t = build_T(spec);
        Classification cls = t.classify();
        CHECK(cls.label == KsLabel::Wks0);
        // Delta_T = 2 Delta_zeta mod p
        CHECK((cls.delta - 2 * rec.delta) % rec.p == 0);
    }
}
