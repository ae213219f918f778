#include "kummerlab/lfunc.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "kummerlab/modarith.hpp"
#include "kummerlab/solver.hpp"

namespace kummerlab {

PadicApprox lp_value(unsigned long n, const QuadChar& chi, long p, int precision,
                     unsigned exact_cap) {
    if (n == 0)
        throw UnsupportedCase("L_p(1-n, chi) needs n >= 1");
    if (chi.is_principal() && n % static_cast<unsigned long>(p - 1) == 0)
        throw NotPIntegral("principal character with (p-1) | n");
    int chi_p = chi(p);
    // chi odd with chi(p) = 1 and n = 1: the Euler factor vanishes exactly.
    if (n == 1 && !chi.is_principal() && chi_p == 1)
        return PadicApprox::zero(p);
    PadicApprox divided = divided_bernoulli_mod(n, chi, p, precision, exact_cap);
    PadicApprox value = -divided;
    if (chi_p != 0 && n - 1 < static_cast<unsigned long>(precision)) {
        mpz_class factor = 1 - mpz_class(chi_p) * pow_p(p, static_cast<int>(n - 1));
        value = value * PadicApprox(p, factor, precision);
    }
    if (value.is_exact_zero())
        return value;
    return value.reduced(std::min(value.precision(), precision));
}

KummerFn build_Lpl(const LplSpec& spec) {
    const long p = spec.p;
    const long phi = spec.phi_q();
    const int n_prec = spec.precision;
    if (spec.l % 2 != 0 || spec.l < 0 || spec.l > phi - 2)
        throw UnsupportedCase("l must be even with 0 <= l <= phi(q)-2");
    if (spec.chi.is_principal() && spec.l == 0)
        throw NotPIntegral("principal character excludes the class l = 0");
    const unsigned long base =
        static_cast<unsigned long>(spec.chi.parity()) +
        static_cast<unsigned long>(spec.l);
    const int shift = spec.shifted() ? 1 : 0;
    std::vector<PadicApprox> values;
    values.reserve(n_prec);
    for (int k = 0; k < n_prec; ++k) {
        unsigned long n = base + static_cast<unsigned long>(phi) *
                                     static_cast<unsigned long>(k + shift);
        values.push_back(lp_value(n, spec.chi, p, n_prec, spec.exact_cap));
    }
    KummerFn f = KummerFn::from_values(p, values, n_prec);
    if (shift == 0)
        return f;
    // Shifted construction: the table above is g(s) = L_{p,0}(s+1, chi);
    // translate back by one to fill the removable discontinuity at s = 0.
    return f.compose_linear(PadicApprox(p, -1, n_prec), 1);
}

KummerFn build_product_L(const std::vector<LplSpec>& specs) {
    if (specs.empty())
        throw UnsupportedCase("empty product");
    for (const auto& s : specs) {
        if (s.p != specs[0].p || s.l != specs[0].l ||
            s.precision != specs[0].precision)
            throw UnsupportedCase("product factors must share (p, l, N)");
        if (s.chi.parity() != specs[0].chi.parity())
            throw ParityMismatch("product characters must share parity");
    }
    KummerFn f = build_Lpl(specs[0]);
    for (std::size_t i = 1; i < specs.size(); ++i)
        f = f.multiply(build_Lpl(specs[i]));
    return f;
}

DegenerateFn build_tilde_L(long p, const QuadChar& chi, int precision) {
    if (p <= 3)
        throw UnsupportedCase("tilde L needs p > 3");
    if (!chi.is_odd())
        throw UnsupportedCase("tilde L needs an odd character");
    if (chi(p) != 1)
        throw UnsupportedCase("tilde L needs chi(p) = 1");
    LplSpec spec{p, 0, chi, precision};
    KummerFn f = build_Lpl(spec);
    return divide_out_zero(f);
}

namespace {

bool is_prime_small(long n) {
    if (n < 2)
        return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::vector<long> primes_in(long lo, long hi) {
    std::vector<long> out;
    if (hi < 2)
        return out;
    std::vector<bool> composite(static_cast<std::size_t>(hi) + 1, false);
    for (long i = 2; i * i <= hi; ++i)
        if (!composite[i])
            for (long j = i * i; j <= hi; j += i)
                composite[j] = true;
    for (long i = std::max(lo, 2L); i <= hi; ++i)
        if (!composite[i])
            out.push_back(i);
    return out;
}

// Fermat quotients q(a) mod p for a in [1, p*f), gcd(a, p) = 1, computed
// multiplicatively: u(a) = a^{p-1} mod p^2 needs a modular exponentiation
// only at prime a.
struct QuotientTable {
    std::vector<uint64_t> u; // a^{p-1} mod p^2, 0 at multiples of p
};

QuotientTable build_quotient_table(long p, long f) {
    const uint64_t p2 = static_cast<uint64_t>(p) * static_cast<uint64_t>(p);
    const long size = p * f;
    QuotientTable table;
    table.u.assign(static_cast<std::size_t>(size), 0);
    std::vector<int32_t> spf(static_cast<std::size_t>(size), 0);
    for (long i = 2; i < size; ++i)
        if (spf[i] == 0)
            for (long j = i; j < size; j += i)
                if (spf[j] == 0)
                    spf[j] = static_cast<int32_t>(i);
    if (size > 1)
        table.u[1] = 1;
    for (long a = 2; a < size; ++a) {
        if (a % p == 0)
            continue;
        long d = spf[a];
        if (d == a)
            table.u[a] = powmod64(static_cast<uint64_t>(a),
                                  static_cast<uint64_t>(p - 1), p2);
        else
            table.u[a] = mulmod64(table.u[d], table.u[a / d], p2);
    }
    return table;
}

inline uint64_t quotient_mod_p(uint64_t u_val, long p) {
    return (u_val - 1) / static_cast<uint64_t>(p) % static_cast<uint64_t>(p);
}

// T^r_{p,l}(0, chi) mod p from a quotient table (exponent = l + delta_chi).
uint64_t t_value_mod_p(long p, const QuadChar& chi, long exponent, int r,
                       const QuotientTable& table) {
    const long f = chi.conductor();
    const uint64_t pu = static_cast<uint64_t>(p);
    uint64_t total = 0;
    for (long a = 1; a < p * f; ++a) {
        if (a % p == 0)
            continue;
        int c = chi(a);
        if (c == 0)
            continue;
        uint64_t q = quotient_mod_p(table.u[a], p);
        if (q == 0 && r > 0)
            continue;
        uint64_t term = powmod64(static_cast<uint64_t>(a % p),
                                 static_cast<uint64_t>(exponent), pu);
        for (int i = 0; i < r; ++i)
            term = mulmod64(term, q, pu);
        total = c > 0 ? (total + term) % pu : (total + pu - term) % pu;
    }
    return mulmod64(total, invmod64(static_cast<uint64_t>(f % p), pu), pu);
}

void write_records(std::ostream& os, const std::string& tag,
                   const std::vector<IrregularPair>& pairs,
                   std::optional<long> scanned_to = {}) {
    os << tag << '\n';
    for (const auto& r : pairs)
        os << r.p << ' ' << r.l << ' ' << r.D << ' ' << r.ord_f0 << ' '
           << r.delta << ' ' << r.lambda << '\n';
    if (scanned_to)
        os << "# scanned_to " << *scanned_to << '\n';
}

std::pair<std::vector<IrregularPair>, long>
read_checkpoint(const std::string& path, const std::string& tag) {
    std::vector<IrregularPair> found;
    long scanned_to = 0;
    std::ifstream is(path);
    if (!is)
        return {found, scanned_to};
    std::string header;
    std::getline(is, header);
    if (header != tag)
        return {found, scanned_to};
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("# scanned_to ", 0) == 0) {
            scanned_to = std::stol(line.substr(13));
            continue;
        }
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        IrregularPair r;
        if (ls >> r.p >> r.l >> r.D >> r.ord_f0 >> r.delta >> r.lambda)
            found.push_back(r);
    }
    return {found, scanned_to};
}

// Runs `work` over the primes in ordered blocks; within a block the primes
// are processed in parallel. `flush(done_upto)` runs after each block on the
// accumulating thread. Worker exceptions are rethrown after joining.
template <typename PerPrime, typename Flush>
void blocked_parallel_scan(const std::vector<long>& primes, int jobs,
                           int block_size, PerPrime&& work, Flush&& flush) {
    jobs = std::max(1, jobs);
    std::size_t begin = 0;
    while (begin < primes.size()) {
        std::size_t end = std::min(primes.size(),
                                   begin + static_cast<std::size_t>(block_size));
        std::atomic<std::size_t> next{begin};
        std::string error;
        std::mutex error_mutex;
        auto runner = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= end)
                    return;
                try {
                    work(i);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (error.empty())
                        error = e.what();
                }
            }
        };
        if (jobs == 1) {
            runner();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < jobs; ++t)
                pool.emplace_back(runner);
            for (auto& th : pool)
                th.join();
        }
        if (!error.empty())
            throw RelationViolated("scan worker failed: " + error);
        flush(primes[end - 1]);
        begin = end;
    }
}

} // namespace

std::vector<IrregularPair> scan_irregular(const QuadChar& chi,
                                          const ScanOptions& options) {
    const long f = chi.conductor();
    long resume_from = options.p_min;
    std::vector<IrregularPair> out;
    if (!options.checkpoint_path.empty()) {
        auto [found, scanned_to] = read_checkpoint(options.checkpoint_path, "IRR1");
        if (scanned_to >= resume_from) {
            out = std::move(found);
            resume_from = scanned_to + 1;
        }
    }
    std::vector<long> primes = primes_in(std::max(resume_from, 5L), options.p_max);
    primes.erase(std::remove_if(primes.begin(), primes.end(),
                                [&](long p) { return f % p == 0; }),
                 primes.end());
    std::vector<std::vector<IrregularPair>> per_prime(primes.size());

    auto work = [&](std::size_t idx) {
        const long p = primes[idx];
        const uint64_t pu = static_cast<uint64_t>(p);
        QuotientTable table = build_quotient_table(p, f);
        // W_b = sum over a = b (mod p) of chi(a) q(a) mod p
        std::vector<uint64_t> w(static_cast<std::size_t>(p), 0);
        for (long a = 1; a < p * f; ++a) {
            if (a % p == 0)
                continue;
            int c = chi(a);
            if (c == 0)
                continue;
            uint64_t q = quotient_mod_p(table.u[a], p);
            uint64_t& slot = w[static_cast<std::size_t>(a % p)];
            slot = c > 0 ? (slot + q) % pu : (slot + pu - q) % pu;
        }
        // T_{p,l}(0,chi) = (1/f) sum_b b^{l+delta} W_b over even l, keeping
        // the powers b^{l+delta} up to date by one multiplication per step.
        const long delta = chi.parity();
        std::vector<uint64_t> bpow(static_cast<std::size_t>(p)),
            bsq(static_cast<std::size_t>(p));
        for (long b = 1; b < p; ++b) {
            bpow[b] = powmod64(static_cast<uint64_t>(b),
                               static_cast<uint64_t>(2 + delta), pu);
            bsq[b] = mulmod64(static_cast<uint64_t>(b),
                              static_cast<uint64_t>(b), pu);
        }
        uint64_t f_inv = invmod64(static_cast<uint64_t>(f % p), pu);
        for (long l = 2; l <= p - 3; l += 2) {
            uint64_t total = 0;
            for (long b = 1; b < p; ++b) {
                if (w[b])
                    total = (total + mulmod64(bpow[b], w[b], pu)) % pu;
                bpow[b] = mulmod64(bpow[b], bsq[b], pu);
            }
            total = mulmod64(total, f_inv, pu);
            if (total != 0)
                continue;
            IrregularPair rec;
            rec.p = p;
            rec.l = l;
            rec.D = chi.is_principal() ? 1 : chi.discriminant();
            rec.delta = -1;
            rec.lambda = -1;
            if (options.verify) {
                unsigned long n0 = static_cast<unsigned long>(delta + l);
                PadicApprox v0 = lp_value(n0, chi, p, 2);
                rec.ord_f0 = v0.valuation();
                if (rec.ord_f0 < 1)
                    throw RelationViolated(
                        "sieve hit not confirmed by the Bernoulli backend at p=" +
                        std::to_string(p));
                try {
                    LplSpec small{p, l, chi, 3, 3200};
                    Classification cls = build_Lpl(small).classify();
                    rec.delta = cls.delta;
                    rec.lambda = cls.lambda.value_or(-1);
                } catch (const BackendOutOfRange&) {
                    // diagnostics unavailable at this size; ord is verified
                }
            }
            per_prime[idx].push_back(rec);
        }
    };
    auto flush = [&](long done_upto) {
        if (options.checkpoint_path.empty())
            return;
        std::vector<IrregularPair> merged = out;
        for (std::size_t i = 0; i < primes.size() && primes[i] <= done_upto; ++i)
            for (const auto& r : per_prime[i])
                merged.push_back(r);
        std::ofstream os(options.checkpoint_path);
        write_records(os, "IRR1", merged, done_upto);
    };
    blocked_parallel_scan(primes, options.jobs, options.checkpoint_stride, work,
                          flush);
    for (auto& block : per_prime)
        for (auto& r : block)
            out.push_back(std::move(r));
    return out;
}

int irregularity_index(const std::vector<IrregularPair>& pairs, long p) {
    int count = 0;
    for (const auto& r : pairs)
        if (r.p == p)
            ++count;
    return count;
}

std::vector<ExceptionalPair> scan_exceptional(const QuadChar& chi,
                                              const ScanOptions& options) {
    if (!chi.is_odd())
        throw UnsupportedCase("exceptional pairs need an odd character");
    const long f = chi.conductor();
    long resume_from = options.p_min;
    std::vector<ExceptionalPair> out;
    if (!options.checkpoint_path.empty()) {
        auto [found, scanned_to] = read_checkpoint(options.checkpoint_path, "EXC1");
        if (scanned_to >= resume_from) {
            for (const auto& r : found)
                out.push_back(ExceptionalPair{r.p, r.D, r.ord_f0, r.lambda, 0});
            resume_from = scanned_to + 1;
        }
    }
    std::vector<long> primes = primes_in(std::max(resume_from, 5L), options.p_max);
    primes.erase(std::remove_if(primes.begin(), primes.end(),
                                [&](long p) { return chi(p) != 1; }),
                 primes.end());
    std::vector<std::optional<ExceptionalPair>> per_prime(primes.size());

    auto work = [&](std::size_t idx) {
        const long p = primes[idx];
        const uint64_t pu = static_cast<uint64_t>(p);
        QuotientTable table = build_quotient_table(p, f);
        // T^2_{p,0}(0, chi) = (1/f) sum chi(a) a q(a)^2 mod p
        uint64_t total = 0;
        for (long a = 1; a < p * f; ++a) {
            if (a % p == 0)
                continue;
            int c = chi(a);
            if (c == 0)
                continue;
            uint64_t q = quotient_mod_p(table.u[a], p);
            uint64_t term = mulmod64(static_cast<uint64_t>(a % p),
                                     mulmod64(q, q, pu), pu);
            total = c > 0 ? (total + term) % pu : (total + pu - term) % pu;
        }
        total = mulmod64(total, invmod64(static_cast<uint64_t>(f % p), pu), pu);
        if (total != 0)
            return;
        ExceptionalPair rec;
        rec.p = p;
        rec.D = chi.discriminant();
        // lambda = 2 criterion: T^3_{p,0}(0,chi) != f^2 T_{p,p-3}(0,chi).
        uint64_t t3 = t_value_mod_p(p, chi, chi.parity(), 3, table);
        uint64_t tl2 = t_value_mod_p(p, chi, p - 3 + chi.parity(), 1, table);
        uint64_t f2 = mulmod64(static_cast<uint64_t>(f % p),
                               static_cast<uint64_t>(f % p), pu);
        rec.lambda = (t3 != mulmod64(f2, tl2, pu)) ? 2 : -1;
        rec.ord_delta2 = rec.lambda == 2 ? 0 : -1;
        if (options.verify) {
            // ord_p L_{p,0}(1, chi) = ord_p(B_{p,chi}/p) >= 2
            PadicApprox b = gen_bernoulli_mod(static_cast<unsigned long>(p),
                                              chi, p, 4);
            PadicApprox v = b.div_exact_p(1);
            rec.ord_L1 = v.valuation();
            if (rec.ord_L1 < 2)
                throw RelationViolated(
                    "exceptional sieve hit not confirmed at p=" +
                    std::to_string(p));
            try {
                LplSpec small{p, 0, chi, 3};
                KummerFn fn = build_Lpl(small);
                Classification cls = fn.classify();
                rec.lambda = cls.lambda.value_or(-1);
                rec.ord_delta2 = fn.coefficient_count() > 2
                                     ? fn.coefficient(2).valuation()
                                     : -1;
            } catch (const BackendOutOfRange&) {
            }
        }
        per_prime[idx] = rec;
    };
    auto flush = [&](long done_upto) {
        if (options.checkpoint_path.empty())
            return;
        std::vector<IrregularPair> merged;
        for (const auto& r : out)
            merged.push_back(IrregularPair{r.p, 0, r.D, r.ord_L1, 0, r.lambda});
        for (std::size_t i = 0; i < primes.size() && primes[i] <= done_upto; ++i)
            if (per_prime[i])
                merged.push_back(IrregularPair{per_prime[i]->p, 0, per_prime[i]->D,
                                               per_prime[i]->ord_L1, 0,
                                               per_prime[i]->lambda});
        std::ofstream os(options.checkpoint_path);
        write_records(os, "EXC1", merged, done_upto);
    };
    blocked_parallel_scan(primes, options.jobs, options.checkpoint_stride, work,
                          flush);
    for (auto& slot : per_prime)
        if (slot)
            out.push_back(*slot);
    return out;
}

void write_pair_file(const std::string& path, const std::string& tag,
                     const std::vector<IrregularPair>& pairs) {
    std::ofstream os(path);
    write_records(os, tag, pairs);
}

std::vector<IrregularPair> read_pair_file(const std::string& path,
                                          const std::string& tag) {
    std::ifstream is(path);
    if (!is)
        throw ParseError("cannot open " + path);
    std::string header;
    std::getline(is, header);
    if (header != tag)
        throw ParseError("expected header " + tag + " in " + path);
    std::vector<IrregularPair> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        IrregularPair r;
        if (ls >> r.p >> r.l >> r.D >> r.ord_f0 >> r.delta >> r.lambda)
            out.push_back(r);
    }
    return out;
}

namespace {

bool verify_irregular_single(long p, long l, const QuadChar& chi) {
    QuotientTable table = build_quotient_table(p, chi.conductor());
    return t_value_mod_p(p, chi, l + chi.parity(), 1, table) == 0;
}

} // namespace

StructureReport structure_check(unsigned n, const std::vector<QuadChar>& chars,
                                long irregular_pmax, int zero_digits) {
    if (n == 0 || n % 2 != 0)
        throw UnsupportedCase("structure check needs even n >= 2");
    if (chars.empty())
        throw UnsupportedCase("no characters given");
    StructureReport rep;
    rep.n = n;
    rep.value = 1;
    for (const auto& chi : chars) {
        unsigned m = n + static_cast<unsigned>(chi.parity());
        ExactRational l_val = -gen_bernoulli(m, chi) / ExactRational(m);
        l_val.canonicalize();
        rep.value *= l_val;
    }
    rep.value.canonicalize();
    if (rep.value == 0)
        throw UnsupportedCase("vanishing L-value");

    mpz_class num(rep.value.get_num()), den(rep.value.get_den());
    if (num < 0)
        num = -num;
    mpz_class leftover = num;

    auto strip = [&](long q) {
        int ord = 0;
        while (mpz_divisible_ui_p(leftover.get_mpz_t(),
                                  static_cast<unsigned long>(q))) {
            mpz_divexact_ui(leftover.get_mpz_t(), leftover.get_mpz_t(),
                            static_cast<unsigned long>(q));
            ++ord;
        }
        return ord;
    };
    auto is_s_prime = [&](long q) {
        return std::any_of(chars.begin(), chars.end(), [&](const auto& c) {
            return c.conductor() % q == 0;
        });
    };

    // Denominator primes (negative ord): von Staudt (D) or conductor (S).
    {
        mpz_class d = den;
        for (long q = 2; d > 1; ++q) {
            if (!mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(q)))
                continue;
            int ord = 0;
            while (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(q))) {
                mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(),
                                static_cast<unsigned long>(q));
                ++ord;
            }
            rep.factors.push_back(StructureFactor{
                q, is_s_prime(q) ? "S" : "D", -1, -ord, {}, false});
        }
    }
    // Numerator: conductor primes first, then von Staudt classes, then the
    // irregular part.
    for (const auto& chi : chars)
        for (long q = 2; q <= chi.conductor(); ++q)
            if (is_prime_small(q) && chi.conductor() % q == 0) {
                int ord = strip(q);
                if (ord > 0)
                    rep.factors.push_back(
                        StructureFactor{q, "S", -1, ord, {}, false});
            }
    for (long q = 2; q <= static_cast<long>(n) + 1; ++q) {
        if (!is_prime_small(q) || n % static_cast<unsigned>(q - 1) != 0 ||
            is_s_prime(q))
            continue;
        int ord = strip(q);
        if (ord > 0) {
            bool exceptional = std::any_of(
                chars.begin(), chars.end(),
                [&](const auto& c) { return c.is_odd() && c(q) == 1; });
            rep.factors.push_back(StructureFactor{
                q, exceptional ? "EXC" : "D", -1, ord, {}, false});
        }
    }
    // Remaining prime factors are irregular contributions.
    for (long q = 5; q <= irregular_pmax && leftover > 1; ++q) {
        if (!is_prime_small(q))
            continue;
        int ord = strip(q);
        if (ord == 0)
            continue;
        StructureFactor fac;
        fac.p = q;
        fac.kind = "I";
        fac.l = static_cast<long>(n % static_cast<unsigned>(q - 1));
        fac.ord = ord;
        for (const auto& chi : chars)
            if (chi.conductor() % q != 0 &&
                verify_irregular_single(q, fac.l, chi))
                fac.verified_irregular = true;
        rep.factors.push_back(fac);
    }
    while (leftover > 1) {
        mpz_class q = leftover;
        if (mpz_probab_prime_p(q.get_mpz_t(), 30) == 0) {
            bool split = false;
            for (long d = 2; d < 2000000; ++d)
                if (mpz_divisible_ui_p(leftover.get_mpz_t(),
                                       static_cast<unsigned long>(d))) {
                    q = d;
                    split = true;
                    break;
                }
            if (!split) {
                rep.note = "unfactored composite cofactor " + leftover.get_str();
                break;
            }
        }
        StructureFactor fac;
        fac.p = q.fits_slong_p() ? q.get_si() : -1;
        fac.kind = "I";
        int ord = 0;
        while (mpz_divisible_p(leftover.get_mpz_t(), q.get_mpz_t())) {
            mpz_divexact(leftover.get_mpz_t(), leftover.get_mpz_t(), q.get_mpz_t());
            ++ord;
        }
        fac.ord = ord;
        if (fac.p > 0) {
            fac.l = static_cast<long>(n) % (static_cast<long>(fac.p) - 1);
            if (fac.p <= 2000000)
                for (const auto& chi : chars)
                    if (chi.conductor() % fac.p != 0 &&
                        verify_irregular_single(static_cast<long>(fac.p), fac.l,
                                                chi))
                        fac.verified_irregular = true;
        } else {
            rep.note = "irregular prime beyond machine range: " + q.get_str();
        }
        rep.factors.push_back(fac);
    }
    rep.identity_holds = (leftover <= 1);

    // Conjectural linear forms |p (s_{p,l} - xi)|_p for solvable factors.
    for (auto& fac : rep.factors) {
        if (fac.kind != "I" || fac.p <= 3 || fac.p > irregular_pmax)
            continue;
        long p = static_cast<long>(fac.p);
        long l_cls = fac.l;
        if (l_cls < 2 || l_cls > p - 3)
            continue;
        for (const auto& chi : chars) {
            if (chi.conductor() % p == 0)
                continue;
            if (!verify_irregular_single(p, l_cls, chi))
                continue;
            try {
                LplSpec spec{p, l_cls, chi, zero_digits + 1};
                KummerFn fn = build_Lpl(spec);
                Classification cls = fn.classify();
                if (cls.label != KsLabel::Wks0)
                    continue;
                ZeroResult zero = find_zero(fn, zero_digits);
                mpz_class xi = zero.digits.value();
                mpz_class s((n - static_cast<unsigned>(l_cls)) /
                            static_cast<unsigned>(p - 1));
                int dist = ord_p(mpz_class(s - xi), p, zero_digits - 1);
                int predicted = 1 + dist;
                fac.predicted_ord =
                    fac.predicted_ord ? *fac.predicted_ord + predicted : predicted;
            } catch (const Error&) {
                // leave the factor without a prediction
            }
        }
        if (fac.predicted_ord && *fac.predicted_ord != fac.ord)
            rep.conjecture_holds = false;
    }
    return rep;
}

SmallestIndices smallest_indices(const LplSpec& spec, int nu_max,
                                 int verify_count) {
    SmallestIndices out;
    LplSpec build = spec;
    build.precision = nu_max + 2;
    KummerFn fn = build_Lpl(build);
    ZeroResult zero = find_zero(fn, nu_max);
    const long p = spec.p;
    const long phi = spec.phi_q();
    mpz_class xi = zero.digits.value();
    for (int nu = 1; nu <= nu_max; ++nu) {
        mpz_class modulus = pow_p(p, nu - 1);
        mpz_class x = xi % modulus;
        long digit = zero.digits.digits[static_cast<std::size_t>(nu - 1)];
        mpz_class s = (digit != 0) ? x : x + modulus;
        mpz_class n = spec.l + phi * s;
        out.indices.push_back(n);
        bool verified = false;
        if (nu <= verify_count) {
            unsigned long m = mpz_class(n + spec.chi.parity()).get_ui();
            PadicApprox v = lp_value(m, spec.chi, p, nu + 1);
            verified = (v.valuation() == nu);
            if (!verified)
                throw RelationViolated("smallest index failed the valuation check");
        }
        out.verified.push_back(verified);
    }
    return out;
}

StrongKummerReport strong_kummer_check(long p, long l, int samples,
                                       unsigned seed) {
    StrongKummerReport rep;
    if (p <= 3 || l <= 0 || l % 2 != 0 || l >= p - 1)
        throw UnsupportedCase("strong Kummer needs p > 3 and even 0 < l < p-1");
    // Delta != 0 iff B_{l+p-1}/(l+p-1) != eps_l B_l/l (mod p^2).
    ExactRational lhs = bernoulli(static_cast<unsigned>(l + p - 1)) /
                        ExactRational(l + p - 1);
    ExactRational rhs = bernoulli(static_cast<unsigned>(l)) / ExactRational(l);
    if (l == 2)
        rhs *= ExactRational(1 - p);
    ExactRational diff = lhs - rhs;
    diff.canonicalize();
    rep.delta_nonzero = (diff != 0) && ord_p_rational(diff, p) < 2;

    auto modified = [&](unsigned nn, int r) {
        ExactRational v = bernoulli(nn) / ExactRational(nn);
        v *= ExactRational(1) - ExactRational(pow_p(p, static_cast<int>(nn) - 1));
        v.canonicalize();
        return rational_to_padic(v, p, r);
    };

    std::mt19937_64 rng(seed);
    bool ok = true;
    std::string witness;
    int checked = 0;
    for (int i = 0; i < samples; ++i) {
        int r = 1 + static_cast<int>(rng() % 3);
        long phi_r = (p - 1) * pow_p(p, r - 1).get_si();
        unsigned span = 1600 / static_cast<unsigned>(p - 1) + 2;
        unsigned a = static_cast<unsigned>(rng() % span);
        unsigned b = static_cast<unsigned>(rng() % span);
        unsigned nn = static_cast<unsigned>(l) + a * static_cast<unsigned>(p - 1);
        unsigned mm = static_cast<unsigned>(l) + b * static_cast<unsigned>(p - 1);
        if (nn == mm || nn < 2 || mm < 2)
            continue;
        ++checked;
        bool congruent_index =
            ((static_cast<long>(nn) - static_cast<long>(mm)) % phi_r) == 0;
        PadicApprox vn = modified(nn, r);
        PadicApprox vm = modified(mm, r);
        bool congruent_value = (vn - vm).is_exact_zero() ||
                               (vn - vm).valuation() >= r;
        bool match = rep.delta_nonzero ? (congruent_index == congruent_value)
                                       : (congruent_index <= congruent_value);
        if (!match) {
            ok = false;
            witness = "n=" + std::to_string(nn) + " m=" + std::to_string(mm) +
                      " r=" + std::to_string(r);
            break;
        }
        if (!rep.delta_nonzero && congruent_value && !congruent_index)
            rep.witness = "n=" + std::to_string(nn) + " m=" + std::to_string(mm) +
                          " r=" + std::to_string(r);
    }
    rep.samples_checked = checked;
    rep.biconditional_ok = ok;
    if (!ok)
        rep.witness = witness;
    return rep;
}

} // namespace kummerlab
