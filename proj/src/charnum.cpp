#include "kummerlab/charnum.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

namespace kummerlab {

int kronecker(long long D, long long n) {
    long long a = D;
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0)
        return 0;
    int k = 1;
    // factor out 2s of n: (a/2) = 0, +-1 by a mod 8
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    if (v & 1) {
        long long am = ((a % 8) + 8) % 8;
        if (am == 3 || am == 5)
            k = -k;
    }
    if (n < 0) {
        n = -n;
        if (a < 0)
            k = -k;
    }
    a %= n;
    if (a < 0)
        a += n;
    // now n odd positive, 0 <= a < n
    while (a != 0) {
        v = 0;
        while ((a & 1) == 0) {
            a >>= 1;
            ++v;
        }
        if (v & 1) {
            long long nm = n % 8;
            if (nm == 3 || nm == 5)
                k = -k;
        }
        if ((a % 4 == 3) && (n % 4 == 3))
            k = -k;
        long long r = n % a;
        n = a;
        a = r;
    }
    return n == 1 ? k : 0;
}

namespace {

bool squarefree(long long m) {
    if (m < 0)
        m = -m;
    if (m == 0)
        return false;
    for (long long d = 2; d * d <= m; ++d) {
        if (m % (d * d) == 0)
            return false;
        while (m % d == 0)
            m /= d;
    }
    return true;
}

} // namespace

bool is_fundamental_discriminant(long long D) {
    if (D == 1)
        return true;
    long long mod4 = ((D % 4) + 4) % 4;
    if (mod4 == 1)
        return squarefree(D);
    if (mod4 == 0) {
        long long m = D / 4;
        long long m4 = ((m % 4) + 4) % 4;
        return (m4 == 2 || m4 == 3) && squarefree(m);
    }
    return false;
}

QuadChar::QuadChar() = default;

QuadChar QuadChar::kronecker_char(long long D) {
    if (!is_fundamental_discriminant(D))
        throw InvalidDiscriminant(std::to_string(D) +
                                  " is not a fundamental discriminant");
    QuadChar chi;
    if (D == 1)
        return chi;
    chi.principal_ = false;
    chi.d_ = D;
    chi.conductor_ = static_cast<long>(D < 0 ? -D : D);
    chi.parity_ = D < 0 ? 1 : 0;
    return chi;
}

int QuadChar::operator()(long long n) const {
    if (principal_)
        return 1;
    return kronecker(d_, n);
}

std::string QuadChar::describe() const {
    if (principal_)
        return "principal";
    return "chi_" + std::to_string(d_);
}

int ord_p_rational(const ExactRational& q, long p) {
    if (q == 0)
        throw NotDivisible("ord_p of zero");
    return ord_p(mpz_class(q.get_num()), p) - ord_p(mpz_class(q.get_den()), p);
}

PadicApprox rational_to_padic(const ExactRational& q, long p, int precision) {
    if (q == 0)
        return PadicApprox::zero(p);
    mpz_class den(q.get_den());
    if (mpz_fdiv_ui(den.get_mpz_t(), static_cast<unsigned long>(p)) == 0)
        throw NotPIntegral("denominator divisible by p");
    mpz_class m = pow_p(p, precision);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    return PadicApprox(p, mpz_class(q.get_num()) * inv, precision);
}

BernoulliCache& BernoulliCache::instance() {
    static BernoulliCache cache;
    return cache;
}

void BernoulliCache::extend_locked(unsigned n) {
    // Tangent numbers by the in-place triangle; B_{2k} follows from
    // B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1)).
    unsigned half = n / 2;
    if (even_.size() > half)
        return;
    unsigned top = std::max<unsigned>(half, even_.empty() ? 8 : 2 * even_.size());
    std::vector<mpz_class> t(top + 1);
    t[1] = 1;
    for (unsigned k = 2; k <= top; ++k)
        t[k] = mpz_class(k - 1) * t[k - 1];
    for (unsigned k = 2; k <= top; ++k)
        for (unsigned j = k; j <= top; ++j)
            t[j] = mpz_class(j - k) * t[j - 1] + mpz_class(j - k + 2) * t[j];
    even_.assign(top + 1, ExactRational(0));
    even_[0] = 1;
    mpz_class four_k = 1;
    for (unsigned k = 1; k <= top; ++k) {
        four_k *= 4;
        mpq_class num(mpz_class(2 * k) * t[k]);
        mpq_class den(four_k * (four_k - 1));
        ExactRational b = num / den;
        if (k % 2 == 0)
            b = -b;
        b.canonicalize();
        even_[k] = b;
    }
}

ExactRational BernoulliCache::get(unsigned n) {
    if (n == 0)
        return 1;
    if (n == 1)
        return ExactRational(-1, 2);
    if (n % 2 == 1)
        return 0;
    std::lock_guard<std::mutex> lock(mutex_);
    extend_locked(n);
    return even_[n / 2];
}

void BernoulliCache::save(const std::string& path) {
    std::lock_guard<std::mutex> lock(mutex_);
    std::ofstream os(path);
    os << "BCACHE1\n";
    for (std::size_t k = 0; k < even_.size(); ++k)
        os << 2 * k << ' ' << even_[k] << '\n';
}

void BernoulliCache::load(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        return;
    std::string tag;
    if (!(is >> tag) || tag != "BCACHE1")
        throw ParseError("bad BCACHE1 header in " + path);
    std::lock_guard<std::mutex> lock(mutex_);
    unsigned n;
    std::string value;
    while (is >> n >> value) {
        if (n % 2 != 0)
            continue;
        if (even_.size() <= n / 2)
            even_.resize(n / 2 + 1, ExactRational(0));
        ExactRational q(value);
        q.canonicalize();
        even_[n / 2] = q;
    }
}

ExactRational bernoulli(unsigned n) { return BernoulliCache::instance().get(n); }

ExactRational euler(unsigned n) {
    if (n % 2 == 1)
        return 0;
    static std::mutex mutex;
    static std::vector<mpz_class> zigzag{1}; // |E_{2k}|
    std::lock_guard<std::mutex> lock(mutex);
    unsigned half = n / 2;
    if (zigzag.size() <= half) {
        unsigned top = std::max<unsigned>(half, 2 * zigzag.size());
        std::vector<mpz_class> s(top + 1);
        s[0] = 1;
        for (unsigned k = 1; k <= top; ++k)
            s[k] = mpz_class(k) * s[k - 1];
        for (unsigned k = 1; k <= top; ++k)
            for (unsigned j = k + 1; j <= top; ++j)
                s[j] = mpz_class(j - k) * s[j - 1] + mpz_class(j - k + 1) * s[j];
        zigzag = std::move(s);
    }
    mpz_class e = zigzag[half];
    if (half % 2 == 1)
        e = -e;
    return ExactRational(e);
}

ExactRational gen_bernoulli(unsigned n, const QuadChar& chi) {
    if (chi.is_principal()) {
        if (n == 1)
            throw UnsupportedCase("B_{1,1} is excluded");
        return bernoulli(n);
    }
    if (n == 0)
        return 0;
    const long f = chi.conductor();
    // B_{n,chi} = sum_k C(n,k) B_k f^{k-1} P_{n-k},  P_j = sum_a chi(a) a^j.
    std::vector<mpz_class> powers(static_cast<std::size_t>(f) + 1);
    std::vector<mpz_class> p_sums(n + 1);
    for (long a = 1; a <= f; ++a)
        powers[a] = chi(a);
    for (unsigned j = 0; j <= n; ++j) {
        mpz_class sum = 0;
        for (long a = 1; a <= f; ++a) {
            if (j > 0)
                powers[a] *= a;
            sum += powers[a];
        }
        p_sums[j] = sum;
    }
    ExactRational total = 0;
    ExactRational f_inv(1, f);
    f_inv.canonicalize();
    for (unsigned k = 0; k <= n; ++k) {
        ExactRational b = bernoulli(k);
        if (b == 0)
            continue;
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), n, k);
        ExactRational f_part = (k == 0) ? f_inv : ExactRational(pow_p(f, k - 1));
        total += ExactRational(c) * b * f_part * ExactRational(p_sums[n - k]);
    }
    total.canonicalize();
    return total;
}

ExactRational power_sum(unsigned n, const mpz_class& m) {
    mpz_class total = 0, a = 1;
    for (; a < m; ++a) {
        mpz_class t;
        mpz_pow_ui(t.get_mpz_t(), a.get_mpz_t(), n);
        total += t;
    }
    return ExactRational(total);
}

ExactRational power_sum_chi(unsigned n, const QuadChar& chi, const mpz_class& m) {
    mpz_class total = 0;
    for (mpz_class a = 1; a <= m; ++a) {
        int c = chi(a.get_si());
        if (c == 0)
            continue;
        mpz_class t;
        mpz_pow_ui(t.get_mpz_t(), a.get_mpz_t(), n);
        total += c > 0 ? t : mpz_class(-t);
    }
    return ExactRational(total);
}

ExactRational power_sum_chi_restricted(unsigned n, const QuadChar& chi,
                                       const mpz_class& m, long p) {
    if (m % p != 0)
        throw UnsupportedCase("restricted power sum needs p | m");
    mpz_class total = 0;
    for (mpz_class a = 1; a <= m; ++a) {
        if (a % p == 0)
            continue;
        int c = chi(a.get_si());
        if (c == 0)
            continue;
        mpz_class t;
        mpz_pow_ui(t.get_mpz_t(), a.get_mpz_t(), n);
        total += c > 0 ? t : mpz_class(-t);
    }
    return ExactRational(total);
}

namespace {

using uint128 = unsigned __int128;

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<uint128>(a) * b % m);
}

uint64_t powmod_u64(uint64_t base, const mpz_class& exp, uint64_t m) {
    uint64_t result = 1 % m;
    uint64_t b = base % m;
    mpz_class e = exp;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            result = mulmod_u64(result, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return result;
}

} // namespace

PadicApprox power_sum_chi_mod(unsigned long n, const QuadChar& chi,
                              const mpz_class& m, long p, int precision) {
    mpz_class modulus = pow_p(p, precision);
    mpz_class nexp(static_cast<unsigned long>(n));
    if (modulus.fits_ulong_p() && modulus.get_ui() < (1ULL << 62) &&
        m.fits_slong_p()) {
        uint64_t mod = modulus.get_ui();
        uint64_t total = 0;
        long long mm = m.get_si();
        for (long long a = 1; a <= mm; ++a) {
            int c = chi(a);
            if (c == 0)
                continue;
            uint64_t t = powmod_u64(static_cast<uint64_t>(a % mod), nexp, mod);
            total = c > 0 ? (total + t) % mod : (total + mod - t) % mod;
        }
        return PadicApprox(p, mpz_class(total), precision);
    }
    mpz_class total = 0;
    for (mpz_class a = 1; a <= m; ++a) {
        int c = chi(a.get_si());
        if (c == 0)
            continue;
        mpz_class t;
        mpz_powm(t.get_mpz_t(), a.get_mpz_t(), nexp.get_mpz_t(),
                 modulus.get_mpz_t());
        total += c > 0 ? t : mpz_class(-t);
    }
    return PadicApprox(p, total, precision);
}

namespace {

PadicApprox gen_bernoulli_mod_impl(unsigned long n, const QuadChar& chi, long p,
                                   int precision, int depth) {
    if (depth > 6)
        throw BackendOutOfRange("correction recursion too deep");
    if (chi.is_principal())
        throw BackendOutOfRange("power-sum backend needs a non-principal character");
    if (static_cast<long>(n % 2) != chi.parity() % 2)
        return PadicApprox::zero(p); // parity mismatch: B_{n,chi} = 0
    const long f = chi.conductor();
    if (f % p == 0)
        throw UnsupportedCase("p divides the conductor");
    int k = std::max(1, (precision + 3) / 4);
    mpz_class m = pow_p(p, k) * f;
    if (m > 200000000)
        throw BackendOutOfRange("power-sum modulus too large");
    PadicApprox s = power_sum_chi_mod(n, chi, m, p, precision + k);
    PadicApprox base = s.div_exact_p(k).div_unit_integer(f).reduced(precision);
    if (precision <= 2 * k || n < 3)
        return base;
    // one correction term: C(n,3) * (B_{n-2,chi}/(n-2)) * m^2
    unsigned long n2 = n - 2;
    int e2 = ord_p(mpz_class(n2), p, precision);
    PadicApprox b2 = gen_bernoulli_mod_impl(n2, chi, p, precision - 2 * k + e2,
                                            depth + 1);
    PadicApprox divided =
        b2.div_exact_p(e2).div_unit_integer(mpz_class(n2) / pow_p(p, e2));
    mpz_class c3 = mpz_class(n) * (n - 1) * (n - 2) / 6;
    PadicApprox corr = divided.mul_integer(c3 * f * f).mul_pow_p(2 * k);
    return (base - corr).reduced(precision);
}

} // namespace

PadicApprox gen_bernoulli_mod(unsigned long n, const QuadChar& chi, long p,
                              int precision) {
    return gen_bernoulli_mod_impl(n, chi, p, precision, 0);
}

PadicApprox bernoulli_mod_principal(unsigned long n, long p, int precision) {
    if (n < 4 || n % 2 != 0)
        throw BackendOutOfRange("principal power-sum backend needs even n >= 4");
    if (n % static_cast<unsigned long>(p - 1) == 0)
        throw NotPIntegral("B_n has a pole-adjacent denominator (p-1 | n)");
    int c = (precision + 1 + floor_log_p(p, n + 1) + 1) / 2;
    mpz_class m = pow_p(p, c);
    if (m > 80000000)
        throw BackendOutOfRange("power-sum modulus too large");
    mpz_class modulus = pow_p(p, c + precision);
    mpz_class nexp(n);
    mpz_class total = 0;
    if (modulus.fits_ulong_p() && modulus.get_ui() < (1ULL << 62)) {
        uint64_t mod = modulus.get_ui();
        uint64_t acc = 0;
        unsigned long mm = m.get_ui();
        for (unsigned long a = 1; a < mm; ++a)
            acc = (acc + powmod_u64(a, nexp, mod)) % mod;
        total = acc;
    } else {
        for (mpz_class a = 1; a < m; ++a) {
            mpz_class t;
            mpz_powm(t.get_mpz_t(), a.get_mpz_t(), nexp.get_mpz_t(),
                     modulus.get_mpz_t());
            total += t;
        }
    }
    PadicApprox s(p, total, c + precision);
    return s.div_exact_p(c).reduced(precision);
}

PadicApprox divided_bernoulli_mod(unsigned long n, const QuadChar& chi, long p,
                                  int precision, unsigned exact_cap) {
    int e = ord_p(mpz_class(n), p, precision + 8);
    if (n <= exact_cap) {
        ExactRational q = gen_bernoulli(static_cast<unsigned>(n), chi);
        q /= ExactRational(static_cast<long>(n));
        q.canonicalize();
        return rational_to_padic(q, p, precision);
    }
    PadicApprox b = chi.is_principal()
                        ? bernoulli_mod_principal(n, p, precision + e)
                        : gen_bernoulli_mod(n, chi, p, precision + e);
    return b.div_exact_p(e)
        .div_unit_integer(mpz_class(n) / pow_p(p, e))
        .reduced(precision);
}

} // namespace kummerlab
