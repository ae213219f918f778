#include "kummerlab/padic.hpp"

#include <algorithm>

namespace kummerlab {

mpz_class pow_p(long p, int k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(k));
    return r;
}

int ord_p(const mpz_class& v, long p, int cap) {
    if (v == 0)
        return cap;
    mpz_class t = v, q, r;
    int ord = 0;
    while (ord < cap) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(),
                       static_cast<unsigned long>(p));
        if (r != 0)
            break;
        t = q;
        ++ord;
    }
    return ord;
}

mpz_class binom_int(const mpz_class& n, unsigned long k) {
    if (n >= 0) {
        mpz_class r;
        mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
        return r;
    }
    // C(n, k) = (-1)^k C(k - n - 1, k) for n < 0.
    mpz_class m = k - n - 1;
    mpz_class r;
    mpz_bin_ui(r.get_mpz_t(), m.get_mpz_t(), k);
    return (k % 2 == 0) ? r : mpz_class(-r);
}

PadicApprox::PadicApprox(long p, mpz_class residue, int precision)
    : p_(p), residue_(std::move(residue)), precision_(precision) {
    if (p < 2)
        throw ParseError("prime must be >= 2");
    if (precision_ < 1)
        throw PrecisionExhausted("precision below 1");
    reduce_();
}

PadicApprox PadicApprox::zero(long p) {
    PadicApprox z(p, 0, 1);
    z.exact_zero_ = true;
    z.precision_ = kInfiniteValuation;
    return z;
}

void PadicApprox::reduce_() {
    mpz_class m = pow_p(p_, precision_);
    mpz_fdiv_r(residue_.get_mpz_t(), residue_.get_mpz_t(), m.get_mpz_t());
}

void PadicApprox::check_same_prime(const PadicApprox& a, const PadicApprox& b) {
    if (a.p_ != b.p_)
        throw PrimeMismatch("operands live in different Z_p");
}

int PadicApprox::valuation() const {
    if (exact_zero_)
        return kInfiniteValuation;
    if (residue_ == 0)
        return precision_;
    return ord_p(residue_, p_, precision_);
}

bool PadicApprox::is_zero_to_precision() const {
    return exact_zero_ || residue_ == 0;
}

PadicApprox PadicApprox::reduced(int new_precision) const {
    if (exact_zero_)
        return *this;
    if (new_precision < 1)
        throw PrecisionExhausted("reduction below precision 1");
    if (new_precision >= precision_)
        return *this;
    return PadicApprox(p_, residue_, new_precision);
}

PadicApprox PadicApprox::operator-() const {
    if (exact_zero_)
        return *this;
    return PadicApprox(p_, -residue_, precision_);
}

PadicApprox operator+(const PadicApprox& a, const PadicApprox& b) {
    PadicApprox::check_same_prime(a, b);
    if (a.exact_zero_)
        return b;
    if (b.exact_zero_)
        return a;
    int prec = std::min(a.precision_, b.precision_);
    return PadicApprox(a.p_, a.residue_ + b.residue_, prec);
}

PadicApprox operator-(const PadicApprox& a, const PadicApprox& b) {
    return a + (-b);
}

PadicApprox operator*(const PadicApprox& a, const PadicApprox& b) {
    PadicApprox::check_same_prime(a, b);
    if (a.exact_zero_ || b.exact_zero_)
        return PadicApprox::zero(a.p_);
    // a*b is known modulo p^{min(ma + ord b, mb + ord a)}; the valuations of
    // the representatives are capped by the opposite precision.
    int va = std::min(a.valuation(), b.precision_);
    int vb = std::min(b.valuation(), a.precision_);
    int prec = std::min(a.precision_ + vb, b.precision_ + va);
    prec = std::min(prec, kInfiniteValuation);
    return PadicApprox(a.p_, a.residue_ * b.residue_, prec);
}

PadicApprox PadicApprox::mul_pow_p(int k) const {
    if (exact_zero_)
        return *this;
    if (k == 0)
        return *this;
    if (k < 0)
        return div_exact_p(-k);
    return PadicApprox(p_, residue_ * pow_p(p_, k), precision_ + k);
}

PadicApprox PadicApprox::mul_integer(const mpz_class& m) const {
    if (exact_zero_)
        return *this;
    if (m == 0)
        return zero(p_);
    int v = ord_p(m, p_, precision_ + 64);
    return PadicApprox(p_, residue_ * m, precision_ + v);
}

PadicApprox PadicApprox::div_exact_p(int k) const {
    if (k == 0)
        return *this;
    if (exact_zero_)
        return *this;
    if (valuation() < k)
        throw NotDivisible("valuation below requested power of p");
    if (precision_ - k < 1)
        throw PrecisionExhausted("exact division exhausts precision");
    mpz_class q = residue_ / pow_p(p_, k);
    return PadicApprox(p_, q, precision_ - k);
}

PadicApprox PadicApprox::div_unit_integer(const mpz_class& u) const {
    if (exact_zero_)
        return *this;
    if (mpz_fdiv_ui(u.get_mpz_t(), static_cast<unsigned long>(p_)) == 0)
        throw NotAUnit("integer divisor is divisible by p");
    mpz_class m = pow_p(p_, precision_);
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t()) == 0)
        throw NotAUnit("no modular inverse");
    return PadicApprox(p_, residue_ * inv, precision_);
}

PadicApprox PadicApprox::invert_unit() const {
    if (exact_zero_ || valuation() != 0)
        throw NotAUnit("cannot invert a non-unit");
    mpz_class m = pow_p(p_, precision_);
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), residue_.get_mpz_t(), m.get_mpz_t()) == 0)
        throw NotAUnit("no modular inverse");
    return PadicApprox(p_, inv, precision_);
}

PadicApprox PadicApprox::div_unit(const PadicApprox& u) const {
    check_same_prime(*this, u);
    PadicApprox inv = u.reduced(std::min(u.precision(), precision_)).invert_unit();
    return *this * inv;
}

std::vector<long> PadicApprox::digits(int n) const {
    if (!exact_zero_ && precision_ < n)
        throw PrecisionExhausted("not enough digits known");
    std::vector<long> out;
    out.reserve(n);
    mpz_class t = residue_;
    for (int i = 0; i < n; ++i) {
        out.push_back(
            mpz_fdiv_ui(t.get_mpz_t(), static_cast<unsigned long>(p_)));
        t /= p_;
    }
    return out;
}

bool PadicApprox::congruent(const PadicApprox& other, int modulus_exponent) const {
    check_same_prime(*this, other);
    PadicApprox d = *this - other;
    if (d.is_exact_zero())
        return true;
    if (d.precision() < modulus_exponent)
        throw PrecisionExhausted("congruence beyond known precision");
    return d.valuation() >= modulus_exponent;
}

DigitExpansion::DigitExpansion(long p_, std::vector<long> digits_)
    : p(p_), digits(std::move(digits_)) {}

DigitExpansion DigitExpansion::from_padic(const PadicApprox& a, int n) {
    return DigitExpansion(a.prime(), a.digits(n));
}

mpz_class DigitExpansion::value() const {
    mpz_class v = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it)
        v = v * p + *it;
    return v;
}

PadicApprox DigitExpansion::to_padic() const {
    return PadicApprox(p, value(), static_cast<int>(digits.size()));
}

mpz_class ord_factorial(long p, const mpz_class& n) {
    mpz_class digit_sum = 0, t = n;
    while (t > 0) {
        digit_sum += mpz_fdiv_ui(t.get_mpz_t(), static_cast<unsigned long>(p));
        t /= p;
    }
    return (n - digit_sum) / (p - 1);
}

int floor_log_p(long p, unsigned long k) {
    int j = 0;
    unsigned long q = k;
    while (q >= static_cast<unsigned long>(p)) {
        q /= static_cast<unsigned long>(p);
        ++j;
    }
    return j;
}

PadicApprox binom_padic(const PadicApprox& s, unsigned long k) {
    if (k == 0)
        return PadicApprox(s.prime(), 1,
                           s.is_exact_zero() ? 1 : s.precision());
    if (s.is_exact_zero())
        return PadicApprox::zero(s.prime());
    int j = floor_log_p(s.prime(), k);
    if (s.precision() - j < 1)
        throw PrecisionExhausted("binomial argument precision too small");
    // C(s, k) is p^j-Lipschitz, so the integer lift determines the value
    // modulo p^{precision - j}.
    mpz_class b = binom_int(s.lift(), k);
    return PadicApprox(s.prime(), b, s.precision() - j);
}

PadicApprox forward_diff(const std::vector<PadicApprox>& values, long h, int n) {
    (void)h; // the table is already h-spaced
    if (static_cast<int>(values.size()) < n + 1)
        throw InsufficientValues("need n+1 values for the n-th difference");
    std::vector<PadicApprox> d(values.begin(), values.begin() + (n + 1));
    for (int level = 0; level < n; ++level)
        for (int i = 0; i + level < n; ++i)
            d[i] = d[i + 1] - d[i];
    return d[0];
}

mpz_class forward_diff_int(const std::vector<mpz_class>& values, int n) {
    if (static_cast<int>(values.size()) < n + 1)
        throw InsufficientValues("need n+1 values for the n-th difference");
    std::vector<mpz_class> d(values.begin(), values.begin() + (n + 1));
    for (int level = 0; level < n; ++level)
        for (int i = 0; i + level < n; ++i)
            d[i] = d[i + 1] - d[i];
    return d[0];
}

std::vector<mpz_class> hnomial_row(int n, int h) {
    std::vector<mpz_class> row{1};
    for (int step = 0; step < n; ++step) {
        std::vector<mpz_class> next(row.size() + h - 1, mpz_class(0));
        for (std::size_t i = 0; i < row.size(); ++i)
            for (int d = 0; d < h; ++d)
                next[i + d] += row[i];
        row = std::move(next);
    }
    return row;
}

mpz_class hnomial(int n, long nu, int h) {
    if (nu < 0 || nu > static_cast<long>(n) * (h - 1))
        return 0;
    return hnomial_row(n, h)[static_cast<std::size_t>(nu)];
}

long lucas_binom_mod_p(const std::vector<long>& x_digits, unsigned long r, long p) {
    long result = 1;
    std::size_t i = 0;
    unsigned long rr = r;
    while (rr > 0) {
        long ri = static_cast<long>(rr % static_cast<unsigned long>(p));
        long xi = i < x_digits.size() ? x_digits[i] : 0;
        if (ri > xi)
            return 0;
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(xi),
                     static_cast<unsigned long>(ri));
        result = static_cast<long>(
            (result * mpz_fdiv_ui(b.get_mpz_t(), static_cast<unsigned long>(p))) %
            p);
        rr /= static_cast<unsigned long>(p);
        ++i;
    }
    return result;
}

} // namespace kummerlab
