#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "kummerlab/padic.hpp"

using namespace kummerlab;

namespace {

// Independent modular-inverse oracle (extended Euclid on integers).
mpz_class ext_gcd_inverse(const mpz_class& a, const mpz_class& m) {
    mpz_class old_r = a % m, r = m, old_s = 1, s = 0;
    while (r != 0) {
        mpz_class q = old_r / r;
        mpz_class t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    mpz_class inv = old_s % m;
    if (inv < 0)
        inv += m;
    return inv;
}

int ord_by_factoring(mpz_class v, long p) {
    int ord = 0;
    while (v % p == 0) {
        v /= p;
        ++ord;
    }
    return ord;
}

} // namespace

TEST_CASE("ring operations") {
    PadicApprox a(5, 3, 4), b(5, 2, 4);
    PadicApprox sum = a + b;
    CHECK(sum.residue() == 5);
    CHECK(sum.valuation() == 1);
    CHECK(sum.precision() == 4);

    PadicApprox x(5, 123, 3);
    PadicApprox z = x * PadicApprox::zero(5);
    CHECK(z.is_exact_zero());
    CHECK(z.valuation() == kInfiniteValuation);

    PadicApprox c(5, 7, 2), d(5, 8, 4);
    PadicApprox prod = c * d;
    CHECK(prod.precision() == 2);
    CHECK(prod.residue() == 6); // 56 mod 25

    CHECK_THROWS_AS(a + PadicApprox(7, 1, 3), PrimeMismatch);
}

TEST_CASE("exact division by p") {
    PadicApprox a(5, 25, 4);
    PadicApprox q = a.div_exact_p(2);
    CHECK(q.residue() == 1);
    CHECK(q.precision() == 2);

    CHECK(PadicApprox::zero(5).div_exact_p(7).is_exact_zero());

    PadicApprox b(5, 50, 4);
    PadicApprox qb = b.div_exact_p(1);
    CHECK(qb.residue() == 10);
    CHECK(qb.precision() == 3);

    CHECK_THROWS_AS(PadicApprox(5, 3, 3).div_exact_p(1), NotDivisible);
    CHECK_THROWS_AS(PadicApprox(5, 25, 2).div_exact_p(2), PrecisionExhausted);
}

TEST_CASE("unit inversion against the extended-Euclid oracle") {
    CHECK(PadicApprox(7, 1, 5).invert_unit().residue() == 1);

    PadicApprox a(5, 2, 2);
    CHECK(a.invert_unit().residue() == 13); // 2*13 = 26 = 1 mod 25

    PadicApprox b(2, 3, 4);
    CHECK(b.invert_unit().residue() == 11); // 3*11 = 33 = 1 mod 16

    std::mt19937_64 rng(7);
    for (long p : {2L, 3L, 5L, 13L}) {
        for (int i = 0; i < 50; ++i) {
            int prec = 1 + static_cast<int>(rng() % 6);
            mpz_class m = pow_p(p, prec);
            mpz_class r = mpz_class(static_cast<unsigned long>(rng())) % m;
            if (r % p == 0)
                r += 1;
            if (r % p == 0)
                continue;
            PadicApprox u(p, r, prec);
            PadicApprox inv = u.invert_unit();
            CHECK(inv.residue() == ext_gcd_inverse(r, m));
            CHECK((u * inv).residue() == 1);
        }
    }
    CHECK_THROWS_AS(PadicApprox(5, 10, 3).invert_unit(), NotAUnit);
}

TEST_CASE("factorial valuation agrees with direct factorization") {
    CHECK(ord_factorial(3, 9) == 4);
    CHECK(ord_factorial(5, 0) == 0);
    CHECK(ord_factorial(2, 4) == 3);
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        mpz_class factorial = 1;
        int direct = 0;
        for (int n = 1; n <= 200; ++n) {
            factorial *= n;
            direct += ord_by_factoring(n, p);
            CHECK(ord_factorial(p, n) == direct);
        }
    }
}

TEST_CASE("binomial polynomial at p-adic arguments") {
    PadicApprox s(7, 123, 5);
    CHECK(binom_padic(s, 0).residue() == 1);

    // C(-1, k) = (-1)^k
    for (long p : {3L, 5L}) {
        int n_prec = 6;
        PadicApprox minus_one(p, pow_p(p, n_prec) - 1, n_prec);
        for (unsigned long k = 1; k <= 12; ++k) {
            PadicApprox c = binom_padic(minus_one, k);
            int j = floor_log_p(p, k);
            CHECK(c.precision() == n_prec - j);
            mpz_class expected =
                (k % 2 == 0) ? mpz_class(1) : pow_p(p, n_prec - j) - 1;
            CHECK(c.residue() == expected);
        }
    }
    CHECK_THROWS_AS(binom_padic(PadicApprox(3, 2, 1), 3), PrecisionExhausted);
}

TEST_CASE("Lucas digit product matches binomials mod p") {
    std::mt19937_64 rng(99);
    for (long p : {3L, 5L, 13L}) {
        for (int i = 0; i < 334; ++i) {
            int prec = 5;
            mpz_class xi = mpz_class(static_cast<unsigned long>(rng())) %
                           pow_p(p, prec);
            unsigned long r = rng() % 200;
            PadicApprox x(p, xi, prec);
            if (floor_log_p(p, r == 0 ? 1 : r) >= prec)
                continue;
            mpz_class direct = binom_int(xi, r);
            long expected = static_cast<long>(
                mpz_fdiv_ui(direct.get_mpz_t(), static_cast<unsigned long>(p)));
            CHECK(lucas_binom_mod_p(x.digits(prec), r, p) == expected);
        }
    }
}

TEST_CASE("forward differences") {
    // identity function at 0,1: first difference is 1
    std::vector<PadicApprox> id{PadicApprox(5, 0, 4), PadicApprox(5, 1, 4)};
    CHECK(forward_diff(id, 1, 1).residue() == 1);

    // constants vanish under any positive-order difference
    std::vector<PadicApprox> c(6, PadicApprox(7, 3, 4));
    for (int n = 1; n <= 5; ++n)
        CHECK(forward_diff(c, 1, n).is_zero_to_precision());

    CHECK_THROWS_AS(forward_diff(id, 1, 2), InsufficientValues);
}

TEST_CASE("difference of p^m C(s,m) gains valuation n(1 + ord_p h)") {
    std::mt19937_64 rng(5);
    for (long p : {3L, 5L}) {
        for (int trial = 0; trial < 20; ++trial) {
            int m = 2 + static_cast<int>(rng() % 5);
            int n = 1 + static_cast<int>(rng() % m);
            long h = 1 + static_cast<long>(rng() % 10);
            long s0 = static_cast<long>(rng() % 40);
            std::vector<mpz_class> values;
            for (int j = 0; j <= n; ++j)
                values.push_back(pow_p(p, m) *
                                 binom_int(mpz_class(s0 + j * h),
                                           static_cast<unsigned long>(m)));
            mpz_class d = forward_diff_int(values, n);
            int bound = n * (1 + ord_by_factoring(h, p));
            if (d == 0)
                continue;
            CHECK(ord_by_factoring(d, p) >= bound);
        }
    }
}

TEST_CASE("difference of binomial values shifts the index") {
    // Delta^n C(s, m) = C(s, m-n) on integer tables
    for (int m = 2; m <= 6; ++m) {
        for (int n = 1; n <= m; ++n) {
            for (long s = 0; s < 8; ++s) {
                std::vector<mpz_class> values;
                for (int j = 0; j <= n; ++j)
                    values.push_back(
                        binom_int(mpz_class(s + j), static_cast<unsigned long>(m)));
                CHECK(forward_diff_int(values, n) ==
                      binom_int(mpz_class(s), static_cast<unsigned long>(m - n)));
            }
        }
    }
}

TEST_CASE("h-nomial coefficients") {
    // h = 2 reduces to binomials
    for (int n = 1; n <= 6; ++n)
        for (long nu = 0; nu <= n; ++nu)
            CHECK(hnomial(n, nu, 2) == binom_int(n, static_cast<unsigned long>(nu)));

    CHECK(hnomial(2, 2, 3) == 3); // (1+x+x^2)^2 = 1+2x+3x^2+2x^3+x^4

    for (int h = 1; h <= 5; ++h)
        for (int n = 1; n <= 6; ++n) {
            mpz_class total = 0;
            for (long nu = 0; nu <= static_cast<long>(n) * (h - 1); ++nu)
                total += hnomial(n, nu, h);
            mpz_class expected;
            mpz_ui_pow_ui(expected.get_mpz_t(), static_cast<unsigned long>(h),
                          static_cast<unsigned long>(n));
            CHECK(total == expected);
        }
}

TEST_CASE("theta(n,k) = h^{-n} p^k sum hnomial * C(nu,k) is p-integral") {
    for (long p : {2L, 3L, 5L})
        for (int h = 1; h <= 6; ++h)
            for (int n = 1; n <= 6; ++n)
                for (unsigned long k = 0; k <= 6; ++k) {
                    mpz_class sum = 0;
                    auto row = hnomial_row(n, h);
                    for (std::size_t nu = 0; nu < row.size(); ++nu)
                        sum += row[nu] * binom_int(mpz_class(nu), k);
                    if (sum == 0)
                        continue;
                    // ord_p(p^k sum / h^n) >= 0
                    int ord = static_cast<int>(k) + ord_by_factoring(sum, p) -
                              static_cast<int>(n) * ord_by_factoring(h, p);
                    CHECK(ord >= 0);
                }
}

TEST_CASE("digit expansions round-trip") {
    PadicApprox a(7, 1234, 5);
    DigitExpansion d = DigitExpansion::from_padic(a, 5);
    CHECK(d.to_padic().residue() == a.residue());
    CHECK(d.value() == 1234);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 40; ++i) {
        long p = (i % 2) ? 5 : 13;
        mpz_class r = mpz_class(static_cast<unsigned long>(rng())) % pow_p(p, 6);
        PadicApprox x(p, r, 6);
        CHECK(DigitExpansion::from_padic(x, 6).to_padic().residue() == r);
    }
}

TEST_CASE("valuation and precision semantics") {
    PadicApprox a(5, 50, 4);
    CHECK(a.valuation() == 2);
    CHECK(PadicApprox(5, 0, 3).valuation() == 3); // capped by precision
    CHECK(PadicApprox::zero(5).valuation() == kInfiniteValuation);

    // multiplying by an exact power of p raises precision
    PadicApprox b = a.mul_pow_p(2);
    CHECK(b.precision() == 6);
    CHECK(b.valuation() == 4);

    // reduction drops information
    CHECK(a.reduced(2).precision() == 2);
    CHECK(a.reduced(2).residue() == 0);
}
