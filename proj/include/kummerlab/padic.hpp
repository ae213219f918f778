#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "kummerlab/errors.hpp"

namespace kummerlab {

/// Sentinel valuation reported by exact zeros.
inline constexpr int kInfiniteValuation = 1 << 28;

/// p^k as an exact integer.
mpz_class pow_p(long p, int k);

/// ord_p(v) for v != 0; `cap` bounds the search (returns cap if p^cap | v).
int ord_p(const mpz_class& v, long p, int cap = kInfiniteValuation);

/// Binomial coefficient C(n, k) for arbitrary integer n (negative allowed)
/// and k >= 0, as an exact integer.
mpz_class binom_int(const mpz_class& n, unsigned long k);

/// An element of Z_p known modulo p^precision.
///
/// Invariants: 0 <= residue < p^precision, precision >= 1. The exact_zero
/// flag marks the element that is exactly 0 rather than merely divisible by
/// p^precision; it absorbs multiplication and survives exact division.
/// Values are immutable; all operations are pure.
class PadicApprox {
public:
    PadicApprox(long p, mpz_class residue, int precision);

    /// The exact zero of Z_p.
    static PadicApprox zero(long p);

    long prime() const { return p_; }
    int precision() const { return precision_; }
    bool is_exact_zero() const { return exact_zero_; }
    const mpz_class& residue() const { return residue_; }

    /// Canonical integer lift in [0, p^precision).
    const mpz_class& lift() const { return residue_; }

    /// min(ord_p residue, precision); kInfiniteValuation for the exact zero.
    int valuation() const;
    bool is_unit() const { return valuation() == 0; }
    bool is_zero_to_precision() const;

    /// Same value, known only modulo p^new_precision (new_precision >= 1).
    PadicApprox reduced(int new_precision) const;

    PadicApprox operator-() const;
    friend PadicApprox operator+(const PadicApprox& a, const PadicApprox& b);
    friend PadicApprox operator-(const PadicApprox& a, const PadicApprox& b);
    friend PadicApprox operator*(const PadicApprox& a, const PadicApprox& b);

    /// Multiply by the exact integer p^k; precision grows by k.
    PadicApprox mul_pow_p(int k) const;

    /// Multiply by an exact integer; precision grows by ord_p(m).
    PadicApprox mul_integer(const mpz_class& m) const;

    /// Exact division by p^k. Requires valuation >= k (NotDivisible) and
    /// precision - k >= 1 (PrecisionExhausted).
    PadicApprox div_exact_p(int k) const;

    /// Division by a p-unit integer.
    PadicApprox div_unit_integer(const mpz_class& u) const;

    /// Multiplicative inverse of a unit, modulo p^precision.
    PadicApprox invert_unit() const;

    /// this / u for a unit u of the same prime.
    PadicApprox div_unit(const PadicApprox& u) const;

    /// First n p-adic digits s_0, ..., s_{n-1} (requires precision >= n).
    std::vector<long> digits(int n) const;

    bool congruent(const PadicApprox& other, int modulus_exponent) const;

private:
    long p_;
    mpz_class residue_;
    int precision_;
    bool exact_zero_ = false;

    void reduce_();
    static void check_same_prime(const PadicApprox& a, const PadicApprox& b);
};

/// A truncated p-adic expansion s_0 + s_1 p + ... + s_{n-1} p^{n-1}.
struct DigitExpansion {
    long p = 0;
    std::vector<long> digits;

    DigitExpansion() = default;
    DigitExpansion(long p_, std::vector<long> digits_);

    static DigitExpansion from_padic(const PadicApprox& a, int n);
    mpz_class value() const;
    PadicApprox to_padic() const;

    bool operator==(const DigitExpansion& other) const = default;
};

/// ord_p(n!) = (n - S_p(n)) / (p - 1) with S_p the base-p digit sum.
mpz_class ord_factorial(long p, const mpz_class& n);

/// Binomial polynomial C(s, k) evaluated at a p-adic argument. The result is
/// well defined modulo p^{precision - floor(log_p k)}; raises
/// PrecisionExhausted when that would drop below 1.
PadicApprox binom_padic(const PadicApprox& s, unsigned long k);

/// floor(log_p k) for k >= 1.
int floor_log_p(long p, unsigned long k);

/// n-th forward difference of a value table read as f(s), f(s+h), ...,
/// f(s+nh). The increment h only fixes the interpretation of the table.
PadicApprox forward_diff(const std::vector<PadicApprox>& values, long h, int n);

/// Exact integer n-th forward difference of a value table.
mpz_class forward_diff_int(const std::vector<mpz_class>& values, int n);

/// h-nomial coefficient of order n: coefficient of x^nu in (1+x+...+x^{h-1})^n.
mpz_class hnomial(int n, long nu, int h);

/// All h-nomial coefficients of order n, indices 0..n(h-1).
std::vector<mpz_class> hnomial_row(int n, int h);

/// Lucas product: C(x, r) mod p from the base-p digits of x and r.
long lucas_binom_mod_p(const std::vector<long>& x_digits, unsigned long r, long p);

} // namespace kummerlab
