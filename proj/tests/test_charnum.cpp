#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "kummerlab/charnum.hpp"

using namespace kummerlab;

namespace {

// Slow Jacobi oracle (odd positive n), straight from the textbook rules.
int slow_jacobi(long long a, long long n) {
    a %= n;
    if (a < 0)
        a += n;
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            if (n % 8 == 3 || n % 8 == 5)
                t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

// Defining recurrence sum_{k<=m} C(m+1,k) B_k = 0 as an independent oracle.
ExactRational bernoulli_by_recurrence(unsigned n) {
    std::vector<ExactRational> b{1};
    for (unsigned m = 1; m <= n; ++m) {
        ExactRational acc = 0;
        for (unsigned k = 0; k < m; ++k)
            acc += ExactRational(binom_int(m + 1, k)) * b[k];
        acc /= ExactRational(static_cast<long>(m) + 1);
        b.push_back(-acc);
    }
    return b[n];
}

// Defining recurrence sum_k C(2m, 2k) E_{2k} = 0.
ExactRational euler_by_recurrence(unsigned n) {
    if (n % 2 == 1)
        return 0;
    std::vector<ExactRational> e{1};
    for (unsigned m = 1; 2 * m <= n; ++m) {
        ExactRational acc = 0;
        for (unsigned k = 0; k < m; ++k)
            acc += ExactRational(binom_int(2 * m, 2 * k)) * e[k];
        e.push_back(-acc);
    }
    return e[n / 2];
}

bool is_prime(long n) {
    if (n < 2)
        return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

} // namespace

TEST_CASE("Kronecker symbol") {
    CHECK(kronecker(15, 9) == 0); // shared factor
    CHECK(kronecker(5, 2) == -1); // chi_5(2): 2 is a non-residue mod 5
    CHECK(kronecker(-4, 13) == 1);
    CHECK(kronecker(-4, 7) == -1);

    // chi_{-4}(p) = 1 iff p = 1 mod 4
    for (long p = 3; p < 300; p += 2)
        if (is_prime(p))
            CHECK(kronecker(-4, p) == (p % 4 == 1 ? 1 : -1));

    // against the Jacobi oracle for odd positive n
    for (long long n = 1; n < 101; n += 2)
        for (long long a = 0; a <= n; ++a)
            CHECK(kronecker(a, n) == slow_jacobi(a, n));

    // 2-adic and sign conventions (values from the standard tables)
    CHECK(kronecker(2, 0) == 0);
    CHECK(kronecker(1, 0) == 1);
    CHECK(kronecker(-2, -11) == -1);
    CHECK(kronecker(-2, 11) == 1);
    CHECK(kronecker(2, 9) == 1);
    CHECK(kronecker(3, 15) == 0);
}

TEST_CASE("fundamental discriminants and characters") {
    for (long long d : {1LL, 5LL, -3LL, -4LL, 8LL, -8LL, 77LL, 12LL})
        CHECK(is_fundamental_discriminant(d));
    CHECK(!is_fundamental_discriminant(9));
    CHECK(!is_fundamental_discriminant(-2));
    CHECK(!is_fundamental_discriminant(-12));
    CHECK(!is_fundamental_discriminant(45));
    CHECK_THROWS_AS(QuadChar::kronecker_char(9), InvalidDiscriminant);

    QuadChar chi5 = QuadChar::kronecker_char(5);
    CHECK(chi5.conductor() == 5);
    CHECK(chi5.parity() == 0);
    QuadChar chi3 = QuadChar::kronecker_char(-3);
    CHECK(chi3.conductor() == 3);
    CHECK(chi3.is_odd());
    CHECK(chi3(-1) == -1);
    // chi(n) = 0 iff gcd(n, conductor) > 1
    QuadChar chi77 = QuadChar::kronecker_char(77);
    for (long n = 1; n < 200; ++n)
        CHECK((chi77(n) == 0) == (std::gcd(n, 77L) > 1));
}

TEST_CASE("Bernoulli numbers") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == ExactRational(-1, 2));
    CHECK(bernoulli(12) == ExactRational("-691/2730"));
    CHECK(bernoulli(3) == 0);
    CHECK(bernoulli(32) == ExactRational("-7709321041217/510"));

    for (unsigned n = 0; n <= 40; ++n)
        CHECK(bernoulli(n) == bernoulli_by_recurrence(n));
}

TEST_CASE("von Staudt-Clausen") {
    for (unsigned n = 2; n <= 200; n += 2) {
        mpz_class expected_den = 1;
        ExactRational correction = 0;
        for (long p = 2; p <= static_cast<long>(n) + 1; ++p) {
            if (!is_prime(p) || n % static_cast<unsigned>(p - 1) != 0)
                continue;
            expected_den *= p;
            correction += ExactRational(1, p);
        }
        CHECK(mpz_class(bernoulli(n).get_den()) == expected_den);
        ExactRational integer_part = bernoulli(n) + correction;
        integer_part.canonicalize();
        CHECK(integer_part.get_den() == 1);
    }
}

TEST_CASE("Euler numbers") {
    CHECK(euler(0) == 1);
    for (unsigned n = 1; n <= 15; n += 2)
        CHECK(euler(n) == 0);
    CHECK(euler(8) == 1385);
    for (unsigned n = 0; n <= 30; n += 2)
        CHECK(euler(n) == euler_by_recurrence(n));

    // E_n mod p^r for phi(p^r) | n: 0 when p = 1 (mod 4), 2 when p = 3 (mod 4)
    {
        mpz_class e4(euler(4).get_num());
        CHECK(e4 % 5 == 0);
        mpz_class e20(euler(20).get_num());
        CHECK(e20 % 25 == 0);
        mpz_class e6(euler(6).get_num());
        CHECK(((e6 - 2) % 7 + 7) % 7 == 0);
        mpz_class e2(euler(2).get_num());
        CHECK(((e2 - 2) % 3 + 3) % 3 == 0);
        mpz_class e42(euler(42).get_num());
        CHECK(((e42 - 2) % 49 + 49) % 49 == 0);
    }
}

TEST_CASE("generalized Bernoulli numbers") {
    QuadChar chi4 = QuadChar::kronecker_char(-4);
    QuadChar chi5 = QuadChar::kronecker_char(5);

    // parity mismatch vanishes
    CHECK(gen_bernoulli(2, chi4) == 0);
    CHECK(gen_bernoulli(3, chi5) == 0);

    // B_{1,chi_{-4}} = (1*1 + 3*(-1))/4 = -1/2
    CHECK(gen_bernoulli(1, chi4) == ExactRational(-1, 2));

    // E_n = -2 B_{n+1,chi_{-4}}/(n+1) for n <= 20
    for (unsigned n = 0; n <= 20; ++n) {
        ExactRational lhs = euler(n);
        ExactRational rhs = ExactRational(-2) * gen_bernoulli(n + 1, chi4) /
                            ExactRational(n + 1);
        rhs.canonicalize();
        CHECK(lhs == rhs);
    }

    // principal reduces to B_n for n >= 2
    QuadChar one;
    for (unsigned n = 2; n <= 30; ++n)
        CHECK(gen_bernoulli(n, one) == bernoulli(n));
    CHECK_THROWS_AS(gen_bernoulli(1, one), UnsupportedCase);

    // B_{n,chi}/n is p-integral for p coprime to the conductor
    for (long p : {7L, 11L, 13L})
        for (unsigned n = 1; n <= 13; ++n) {
            ExactRational q = gen_bernoulli(n + (n % 2 == 0 ? 1 : 0), chi4);
            if (q == 0)
                continue;
            q /= ExactRational(static_cast<long>(n));
            q.canonicalize();
            CHECK(ord_p_rational(q, p) >= 0);
        }
}

TEST_CASE("power sums") {
    for (long m : {1L, 2L, 7L, 30L})
        CHECK(power_sum(1, m) == ExactRational(m * (m - 1) / 2));

    QuadChar chi5 = QuadChar::kronecker_char(5);
    std::mt19937_64 rng(67);
    // restricted sum identity S* = S - chi(p) p^n S(m/p)
    for (int i = 0; i < 10; ++i) {
        long p = 7;
        unsigned n = 1 + static_cast<unsigned>(rng() % 6);
        mpz_class m = 15 * p;
        ExactRational lhs = power_sum_chi_restricted(n, chi5, m, p);
        ExactRational rhs = power_sum_chi(n, chi5, m) -
                            ExactRational(chi5(p)) * ExactRational(pow_p(p, n)) *
                                power_sum_chi(n, chi5, m / p);
        CHECK(lhs == rhs);
    }

    // S_{n,chi}(m)/m = B_{n,chi} mod p^2 for p f | m, n = parity (mod 2)
    for (long p : {7L, 11L}) {
        for (unsigned n : {2u, 4u, 8u}) {
            mpz_class m = p * 5;
            ExactRational s = power_sum_chi(n, chi5, m) / ExactRational(m);
            ExactRational diff = s - gen_bernoulli(n, chi5);
            diff.canonicalize();
            if (diff != 0)
                CHECK(ord_p_rational(diff, p) >= 2);
        }
    }
}

TEST_CASE("Kummer congruences of 1851") {
    // sum C(r,nu)(-1)^{r-nu} B_{n+nu(p-1)}/(n+nu(p-1)) = 0 mod p^r
    for (long p : {5L, 7L, 11L}) {
        for (int r = 1; r <= 4; ++r) {
            for (unsigned n = static_cast<unsigned>(r) + 1; n <= 20; n += 2) {
                if (n % 2 != 0)
                    ++n;
                if (n <= static_cast<unsigned>(r) ||
                    n % static_cast<unsigned>(p - 1) == 0)
                    continue;
                ExactRational acc = 0;
                for (int nu = 0; nu <= r; ++nu) {
                    unsigned idx = n + static_cast<unsigned>(nu) *
                                           static_cast<unsigned>(p - 1);
                    ExactRational term =
                        bernoulli(idx) / ExactRational(static_cast<long>(idx));
                    if ((r - nu) % 2 != 0)
                        term = -term;
                    acc += ExactRational(binom_int(r, nu)) * term;
                }
                acc.canonicalize();
                if (acc != 0)
                    CHECK(ord_p_rational(acc, p) >= r);
            }
        }
    }
}

TEST_CASE("higher difference congruences of the modified L-values") {
    // Delta_h^n applied to (1 - chi(p) p^{t-1}) B_{t,chi}/t at t = m vanishes
    // mod p^{nr} for h = k phi(p^r) even.
    auto modified = [&](unsigned t, const QuadChar& chi, long p) {
        ExactRational v = gen_bernoulli(t, chi) / ExactRational(t);
        v *= ExactRational(1) -
             ExactRational(chi(p)) * ExactRational(pow_p(p, t - 1));
        v.canonicalize();
        return v;
    };
    struct Sample {
        long p;
        long long d; // 1 = principal
        unsigned m;
    };
    for (const Sample& smp : {Sample{5, 1, 6}, Sample{7, 1, 4}, Sample{5, -4, 3},
                              Sample{7, 5, 2}, Sample{11, -3, 5}}) {
        QuadChar chi = smp.d == 1 ? QuadChar() : QuadChar::kronecker_char(smp.d);
        if (smp.m % 2 != static_cast<unsigned>(chi.parity()))
            continue;
        for (int r = 1; r <= 2; ++r) {
            unsigned h = static_cast<unsigned>((smp.p - 1)) *
                         static_cast<unsigned>(pow_p(smp.p, r - 1).get_si());
            if (h % 2 != 0)
                h *= 2;
            for (int n = 1; n <= 3; ++n) {
                ExactRational acc = 0;
                for (int nu = 0; nu <= n; ++nu) {
                    unsigned t = smp.m + static_cast<unsigned>(nu) * h;
                    ExactRational term = modified(t, chi, smp.p);
                    if ((n - nu) % 2 != 0)
                        term = -term;
                    acc += ExactRational(binom_int(n, nu)) * term;
                }
                acc.canonicalize();
                if (acc != 0)
                    CHECK(ord_p_rational(acc, smp.p) >= n * r);
            }
        }
    }
}

TEST_CASE("modular backends agree with the exact one") {
    QuadChar chi4 = QuadChar::kronecker_char(-4);
    QuadChar chi3 = QuadChar::kronecker_char(-3);
    long p = 37;
    for (unsigned n = 1; n <= 400; n += 24) {
        for (const QuadChar& chi : {chi4, chi3}) {
            unsigned m = n + (n % 2 == static_cast<unsigned>(chi.parity()) ? 0 : 1);
            PadicApprox fast = gen_bernoulli_mod(m, chi, p, 4);
            PadicApprox exact = rational_to_padic(gen_bernoulli(m, chi), p, 4);
            CHECK((fast - exact).is_zero_to_precision());
        }
    }
    // principal backend against exact values
    for (long q : {7L, 37L})
        for (unsigned n : {8u, 44u, 150u, 392u}) {
            if (n % static_cast<unsigned>(q - 1) == 0)
                continue;
            PadicApprox fast = bernoulli_mod_principal(n, q, 4);
            PadicApprox exact = rational_to_padic(bernoulli(n), q, 4);
            CHECK((fast - exact).is_zero_to_precision());
        }
}

TEST_CASE("cache file round trip") {
    bernoulli(64);
    std::string path = "bcache_test.txt";
    BernoulliCache::instance().save(path);
    BernoulliCache::instance().load(path);
    CHECK(bernoulli(12) == ExactRational("-691/2730"));
    std::remove(path.c_str());
}
