#include "kummerlab/solver.hpp"

#include <algorithm>
#include <random>

namespace kummerlab {

namespace {

long inverse_mod_p(long a, long p) {
    mpz_class inv, az(a), m(p);
    if (mpz_invert(inv.get_mpz_t(), az.get_mpz_t(), m.get_mpz_t()) == 0)
        throw NotAUnit("not invertible mod p");
    return inv.get_si();
}

long negated_inverse_mod_p(long delta, long p) {
    return (p - inverse_mod_p(delta, p)) % p;
}

std::vector<long> digits_of_integer(const mpz_class& x, long p, int n) {
    std::vector<long> out;
    out.reserve(n);
    mpz_class t = x;
    for (int i = 0; i < n; ++i) {
        out.push_back(mpz_fdiv_ui(t.get_mpz_t(), static_cast<unsigned long>(p)));
        t /= p;
    }
    return out;
}

} // namespace

ZeroResult find_zero(const KummerFn& f, int n, ZeroMethod method) {
    const long p = f.prime();
    Classification cls = f.classify();
    if (cls.label != KsLabel::Wks0)
        throw NotInWKS0("function classifies as " + std::string(to_string(cls.label)));
    if (f.base_precision() < n + 1 || f.max_level() < n)
        throw PrecisionExhausted("zero lift to " + std::to_string(n) +
                                 " digits needs base precision n+1");

    long delta_inv_neg = negated_inverse_mod_p(cls.delta, p);

    // Values path: f(nu)/p mod p^n for nu = 0..n.
    std::vector<PadicApprox> tilde;
    if (method == ZeroMethod::Values) {
        tilde.reserve(n + 1);
        for (int nu = 0; nu <= n; ++nu)
            tilde.push_back(
                f.evaluate_at_integer(nu, n).div_exact_p(1).reduced(n));
    }

    ZeroResult result;
    result.method = method;
    result.digits.p = p;
    mpz_class xi = 0;
    for (int r = 1; r <= n; ++r) {
        PadicApprox gamma = PadicApprox::zero(p);
        if (method == ZeroMethod::Values) {
            for (int nu = 0; nu <= r; ++nu) {
                mpz_class w = binom_int(xi, nu) *
                              binom_int(mpz_class(r) - xi,
                                        static_cast<unsigned long>(r - nu));
                gamma = gamma + tilde[nu].mul_integer(w);
            }
        } else {
            for (int nu = 0; nu < r; ++nu) {
                const PadicApprox& c = f.coefficient(nu);
                if (c.is_exact_zero())
                    continue;
                PadicApprox term = (nu == 0) ? c.div_exact_p(1)
                                             : c.mul_pow_p(nu - 1);
                gamma = gamma + term.mul_integer(binom_int(xi, nu));
            }
            // Top term nu = r enters only mod p: Lucas digit product.
            const PadicApprox& cr = f.coefficient(r);
            if (!cr.is_exact_zero()) {
                long lb = lucas_binom_mod_p(digits_of_integer(xi, p, r), r, p);
                PadicApprox top =
                    cr.reduced(1).mul_integer(lb).mul_pow_p(r - 1);
                gamma = gamma + top;
            }
        }
        gamma = gamma.reduced(std::min(gamma.precision(), r));
        int v = gamma.valuation();
        if (v < r - 1)
            throw RelationViolated("lifting residual below p^{r-1} at step " +
                                   std::to_string(r));
        long digit = 0;
        if (v < r) {
            PadicApprox unit = gamma.div_exact_p(r - 1);
            digit = (unit.residue().get_si() % p * delta_inv_neg) % p;
        }
        result.digits.digits.push_back(digit);
        xi += mpz_class(digit) * pow_p(p, r - 1);
        result.residual_valuations.push_back(std::min(v, r) + 1);
    }
    return result;
}

FixedPointResult find_fixed_point(const KummerFn& f, int n) {
    const long p = f.prime();
    if (f.base_precision() < n || f.max_level() < n - 1)
        throw PrecisionExhausted("fixed-point lift to " + std::to_string(n) +
                                 " digits needs base precision n");
    FixedPointResult result;
    result.digits.p = p;

    const PadicApprox& c0 = f.coefficient(0);
    long t0 = c0.is_exact_zero()
                  ? 0
                  : static_cast<long>(mpz_fdiv_ui(
                        c0.residue().get_mpz_t(), static_cast<unsigned long>(p)));
    result.digits.digits.push_back(t0);
    mpz_class tau = t0;

    for (int r = 1; r < n; ++r) {
        PadicApprox acc = PadicApprox::zero(p);
        for (int nu = 0; nu < r; ++nu) {
            const PadicApprox& c = f.coefficient(nu);
            if (c.is_exact_zero())
                continue;
            acc = acc + c.mul_pow_p(nu).mul_integer(binom_int(tau, nu));
        }
        acc = acc - PadicApprox(p, tau, r + 1);
        acc = acc.reduced(std::min(acc.precision(), r + 1));
        if (acc.valuation() < r)
            throw RelationViolated("fixed-point residual below p^r at step " +
                                   std::to_string(r));
        long tr = 0;
        if (acc.valuation() == r)
            tr = static_cast<long>(mpz_fdiv_ui(
                acc.div_exact_p(r).residue().get_mpz_t(),
                static_cast<unsigned long>(p)));
        const PadicApprox& cr = f.coefficient(r);
        if (!cr.is_exact_zero() && cr.valuation() == 0) {
            long lb = lucas_binom_mod_p(result.digits.digits,
                                        static_cast<unsigned long>(r), p);
            tr += static_cast<long>(mpz_fdiv_ui(cr.residue().get_mpz_t(),
                                                static_cast<unsigned long>(p))) *
                  lb;
        }
        tr %= p;
        result.digits.digits.push_back(tr);
        tau += mpz_class(tr) * pow_p(p, r);
    }

    PadicApprox t(p, tau, n);
    PadicApprox value = f.evaluate(t, n - 1);
    result.consistent = (value - t.reduced(n)).valuation() >= n ||
                        (value - t.reduced(n)).is_exact_zero();
    return result;
}

ZeroResult find_zero_degenerate(const DegenerateFn& g, int n) {
    const long p = g.prime();
    if (!g.is_ksd())
        throw NotInWKSd("schedule violates the KS^d bounds");
    long delta = g.delta_mod_p();
    if (delta == 0)
        throw NotInWKSd("first coefficient vanishes mod p");
    PadicApprox g0 = g.value_at_origin();
    if (!g0.is_exact_zero() && g0.valuation() < 1)
        throw NotInWKSd("value at the origin is a unit");
    long delta_inv_neg = negated_inverse_mod_p(delta, p);

    ZeroResult result;
    result.method = ZeroMethod::Coefficients;
    result.digits.p = p;
    mpz_class xi = 0; // zero in the internal variable t
    for (int r = 1; r <= n; ++r) {
        int top = g.eta(r + 1);
        PadicApprox gamma = PadicApprox::zero(p);
        for (int nu = 0; nu < top; ++nu) {
            const DegenerateFn::Entry& e = g.entry(nu);
            if (e.coeff.is_exact_zero())
                continue;
            PadicApprox term = (e.exponent == 0) ? e.coeff.div_exact_p(1)
                                                 : e.coeff.mul_pow_p(e.exponent - 1);
            gamma = gamma + term.mul_integer(binom_int(xi, nu));
        }
        gamma = gamma.reduced(std::min(gamma.precision(), r));
        int v = gamma.valuation();
        if (v < r - 1)
            throw RelationViolated("degenerate residual below p^{r-1} at step " +
                                   std::to_string(r));
        long digit = 0;
        if (v < r) {
            PadicApprox unit = gamma.div_exact_p(r - 1);
            digit = (unit.residue().get_si() % p * delta_inv_neg) % p;
        }
        xi += mpz_class(digit) * pow_p(p, r - 1);
        result.residual_valuations.push_back(std::min(v, r) + 1);
    }
    // Express the zero in the caller-facing variable s = t + origin_shift.
    mpz_class shifted = xi + g.origin_shift();
    mpz_class m = pow_p(p, n);
    mpz_fdiv_r(shifted.get_mpz_t(), shifted.get_mpz_t(), m.get_mpz_t());
    result.digits.digits = digits_of_integer(shifted, p, n);
    return result;
}

TwoZeroResult find_two_zeros(const KummerFn& f, int n,
                             std::optional<std::pair<long, long>> seeds) {
    const long p = f.prime();
    Classification cls = f.classify();
    if (p <= 3 || cls.label != KsLabel::Ks2)
        throw NotInKS2("function is not a KS2 candidate");
    if (f.base_precision() < n + 2 || f.max_level() < n + 1)
        throw PrecisionExhausted("two-zero lift to " + std::to_string(n) +
                                 " digits needs base precision n+2");

    // Quadratic f(0)/p^2 + (Delta_f(1)/p) s + Delta_f(2) s(s-1)/2 mod p.
    auto quad_coeff = [&](const PadicApprox& c, int k) -> long {
        PadicApprox r = c.is_exact_zero() ? c : c.div_exact_p(k);
        if (r.is_exact_zero())
            return 0;
        return static_cast<long>(mpz_fdiv_ui(r.residue().get_mpz_t(),
                                             static_cast<unsigned long>(p)));
    };
    long a0 = quad_coeff(f.coefficient(0), 2);
    long a1 = quad_coeff(f.coefficient(1), 1);
    long a2 = quad_coeff(f.coefficient(2), 0); // unit by the Ks2 label
    long inv2 = inverse_mod_p(2, p);

    std::vector<long> roots;
    for (long s = 0; s < p; ++s) {
        long q = (a0 + a1 * s + ((a2 * ((s * (s - 1)) % p)) % p * inv2)) % p;
        if (q % p == 0)
            roots.push_back(s);
    }
    if (roots.empty())
        throw NoZeroModP("mod-p quadratic has no root");
    if (roots.size() == 1)
        throw DoubleRootModP("mod-p quadratic has a double root at " +
                             std::to_string(roots[0]));

    long r1 = roots[0], r2 = roots[1];
    if (seeds) {
        auto is_root = [&](long s) {
            return std::find(roots.begin(), roots.end(), s) != roots.end();
        };
        if (!is_root(seeds->first) || !is_root(seeds->second))
            throw NoZeroModP("supplied seed is not a root of the quadratic");
        r1 = seeds->first;
        r2 = seeds->second;
    }

    // Lift one simple zero: through the level functions of f, the residual
    // f(xi_r) / p^{r+2} determines the next digit via the constant
    // (seed - other) * Delta_f(2)/2 mod p.
    auto lift = [&](long seed, long other) {
        // f(x)/p^{r+2} = (t - u) * (seed - other) * Delta_f(2)/2 mod p at
        // x = xi_r + t p^r, so one evaluation per digit suffices.
        long d = ((seed - other) % p + p) % p;
        long c = static_cast<long>(static_cast<long long>(d) * a2 % p *
                                   inv2 % p);
        if (c == 0)
            throw DoubleRootModP("coincident residues while lifting");
        long cinv = inverse_mod_p(c, p);
        mpz_class xi = seed;
        std::vector<long> digits{seed};
        for (int r = 1; r < n; ++r) {
            PadicApprox val =
                f.evaluate(PadicApprox(p, xi, r + 3), r + 2);
            long digit = 0;
            if (!val.is_exact_zero()) {
                if (val.valuation() < r + 2)
                    throw RelationViolated("two-zero residual below p^{r+2}");
                if (val.valuation() == r + 2) {
                    PadicApprox unit = val.div_exact_p(r + 2);
                    long gamma = static_cast<long>(mpz_fdiv_ui(
                        unit.residue().get_mpz_t(), static_cast<unsigned long>(p)));
                    digit = (p - gamma * cinv % p) % p;
                }
            }
            digits.push_back(digit);
            xi += mpz_class(digit) * pow_p(p, r);
        }
        return DigitExpansion(p, digits);
    };

    TwoZeroResult out;
    out.first = lift(r1, r2);
    out.second = lift(r2, r1);
    return out;
}

RelationReport verify_zero_relations(const KummerFn& f, const DigitExpansion& xi,
                                     const DigitExpansion& tau, int samples) {
    const long p = f.prime();
    Classification cls = f.classify();
    if (cls.label != KsLabel::Wks0)
        throw NotInWKS0("relations require a WKS0 function");
    int n = static_cast<int>(std::min(xi.digits.size(), tau.digits.size()));
    mpz_class xv = xi.value(), tv = tau.value();
    if (tv == 0 || xv == 0)
        throw RelationViolated("relations need f(0) != 0 (tau, xi nonzero)");

    RelationReport rep;
    PadicApprox f0 = f.coefficient(0);
    int ord_f0 = f0.valuation();
    int ord_tau = ord_p(tv, p);
    int ord_xi = ord_p(xv, p);
    rep.ord_chain = (ord_f0 == ord_tau) && (ord_tau == 1 + ord_xi);

    // tau / (p xi) = -Delta_f (mod p)
    if (rep.ord_chain && 1 + ord_xi + 1 <= n) {
        mpz_class t_unit = tv / pow_p(p, ord_tau);
        mpz_class x_unit = xv / pow_p(p, ord_xi);
        mpz_class m(p), xinv;
        mpz_invert(xinv.get_mpz_t(), x_unit.get_mpz_t(), m.get_mpz_t());
        long lhs = static_cast<long>(mpz_fdiv_ui(mpz_class(t_unit * xinv).get_mpz_t(),
                                                 static_cast<unsigned long>(p)));
        rep.tau_over_p_xi = (lhs + cls.delta) % p == 0;
    }

    // f(0)/tau = 1 (mod p)
    if (rep.ord_chain) {
        PadicApprox quotient =
            f0.div_exact_p(ord_tau).div_unit_integer(tv / pow_p(p, ord_tau));
        rep.f0_over_tau = quotient.residue() % p == 1;
    }

    // |f(s)|_p = |p(s - xi)|_p on random samples.
    std::mt19937_64 rng(0xC0FFEE);
    int level = std::min(f.max_level(), n);
    bool norm_ok = true;
    for (int i = 0; i < samples && norm_ok; ++i) {
        mpz_class s(rng() % 1000003);
        int ord_dist = ord_p(mpz_class(s - xv), p, level - 2);
        PadicApprox value = f.evaluate(PadicApprox(p, s, level + 1), level);
        int ord_val = value.is_exact_zero() ? kInfiniteValuation : value.valuation();
        norm_ok = (ord_val == 1 + ord_dist);
    }
    rep.norm_law = norm_ok;
    return rep;
}

} // namespace kummerlab
