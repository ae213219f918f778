#pragma once

#include <gmpxx.h>

#include <mutex>
#include <string>
#include <vector>

#include "kummerlab/padic.hpp"

namespace kummerlab {

/// Kronecker symbol (D/n) with the usual 2-adic and sign conventions.
int kronecker(long long D, long long n);

/// True when D is a fundamental discriminant: D = 1, or D = 1 mod 4 and
/// squarefree, or D = 4m with m = 2, 3 mod 4 squarefree.
bool is_fundamental_discriminant(long long D);

/// A real primitive Dirichlet character: the principal character (conductor
/// 1) or the Kronecker symbol of a fundamental discriminant D != 1.
class QuadChar {
public:
    /// Principal character.
    QuadChar();

    /// Kronecker character of the fundamental discriminant D.
    /// Raises InvalidDiscriminant otherwise. D = 1 yields the principal one.
    static QuadChar kronecker_char(long long D);

    bool is_principal() const { return principal_; }
    long long discriminant() const { return d_; }
    long conductor() const { return conductor_; }
    int parity() const { return parity_; } // delta_chi: 0 even, 1 odd
    bool is_odd() const { return parity_ == 1; }

    int operator()(long long n) const;

    std::string describe() const;

    bool operator==(const QuadChar& other) const = default;

private:
    bool principal_ = true;
    long long d_ = 1;
    long conductor_ = 1;
    int parity_ = 0;
};

/// Exact rationals are carried as mpq_class. Helpers below.
using ExactRational = mpq_class;

/// ord_p of a nonzero rational.
int ord_p_rational(const ExactRational& q, long p);

/// Projection to Z_p mod p^N; requires p not dividing the denominator.
PadicApprox rational_to_padic(const ExactRational& q, long p, int precision);

/// Memoized exact Bernoulli numbers. B(n) is computed through the tangent-
/// number triangle (integer arithmetic); the textbook recurrence is kept in
/// the tests as an independent oracle. Append-only under a single writer.
class BernoulliCache {
public:
    static BernoulliCache& instance();

    ExactRational get(unsigned n);

    /// Cache file format: header "BCACHE1", lines "n num/den".
    void save(const std::string& path);
    void load(const std::string& path);

private:
    BernoulliCache() = default;
    void extend_locked(unsigned n);

    std::mutex mutex_;
    std::vector<ExactRational> even_; // B_0, B_2, B_4, ...
};

/// Exact Bernoulli number B_n.
ExactRational bernoulli(unsigned n);

/// Exact Euler number E_n (integer-valued; odd indices vanish).
ExactRational euler(unsigned n);

/// Exact generalized Bernoulli number B_{n,chi}; UnsupportedCase for
/// (n, chi) = (1, principal).
ExactRational gen_bernoulli(unsigned n, const QuadChar& chi);

/// S_n(m) = sum_{a=1}^{m-1} a^n (the 0-started power sum).
ExactRational power_sum(unsigned n, const mpz_class& m);

/// S_{n,chi}(m) = sum_{a=1}^{m} chi(a) a^n.
ExactRational power_sum_chi(unsigned n, const QuadChar& chi, const mpz_class& m);

/// S*_{n,chi}(m): same sum restricted to gcd(a, p) = 1 (requires p | m).
ExactRational power_sum_chi_restricted(unsigned n, const QuadChar& chi,
                                       const mpz_class& m, long p);

/// Modular power sum sum_{a=1}^{m} chi(a) a^n mod p^N.
PadicApprox power_sum_chi_mod(unsigned long n, const QuadChar& chi,
                              const mpz_class& m, long p, int precision);

/// B_{n,chi} mod p^N through power-sum congruences with m = p f_chi and one
/// correction term; chi non-principal, p coprime to f_chi, n = delta_chi
/// (mod 2). Raises BackendOutOfRange when N exceeds what one correction
/// level can certify.
PadicApprox gen_bernoulli_mod(unsigned long n, const QuadChar& chi, long p,
                              int precision);

/// B_n mod p^N for the principal character via S_n(p^c), valid for even
/// n >= 4 with (p-1) not dividing n. Cost p^c with
/// c = ceil((N + 1 + floor(log_p(n+1))) / 2); BackendOutOfRange when p^c
/// exceeds the work bound.
PadicApprox bernoulli_mod_principal(unsigned long n, long p, int precision);

/// Exact divided value B_{n,chi}/n as a p-adic number, choosing the exact or
/// power-sum backend by size. exact_cap bounds the exact route.
PadicApprox divided_bernoulli_mod(unsigned long n, const QuadChar& chi, long p,
                                  int precision, unsigned exact_cap = 2000);

} // namespace kummerlab
