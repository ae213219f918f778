#include "kummerlab/fermat.hpp"

#include "kummerlab/lfunc.hpp"
#include "kummerlab/solver.hpp"

namespace kummerlab {

PadicApprox fermat_unit(const mpz_class& a, long p, int precision) {
    if (p == 2)
        throw UnsupportedCase("Fermat quotients need an odd prime");
    if (mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(p)) == 0)
        throw NotAUnit("argument divisible by p");
    mpz_class modulus = pow_p(p, precision);
    mpz_class u;
    mpz_class e(p - 1);
    mpz_powm(u.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), modulus.get_mpz_t());
    return PadicApprox(p, u, precision);
}

PadicApprox fermat_quotient(const mpz_class& a, long p, int precision) {
    PadicApprox u = fermat_unit(a, p, precision + 1);
    PadicApprox one(p, 1, precision + 1);
    return (u - one).div_exact_p(1);
}

PadicApprox teichmuller(const mpz_class& a, long p, int precision) {
    if (mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(p)) == 0)
        throw NotAUnit("argument divisible by p");
    mpz_class modulus = pow_p(p, precision);
    mpz_class x = a % modulus, prev;
    mpz_class e(p);
    do {
        prev = x;
        mpz_powm(x.get_mpz_t(), prev.get_mpz_t(), e.get_mpz_t(),
                 modulus.get_mpz_t());
    } while (x != prev);
    return PadicApprox(p, x, precision);
}

namespace {

// One pass over a in [1, p f] accumulating sum chi(a) a^{l+delta} q(a)^{r+nu}
// for nu = 0..count-1, everything mod p^prec.
std::vector<PadicApprox> t_coefficient_block(const TSpec& spec, int count,
                                             int prec) {
    const long p = spec.p;
    const long f = spec.chi.conductor();
    // q(a) = (u(a) - 1)/p is needed mod p^prec, so u(a) is taken mod p^{prec+1}
    const mpz_class modulus = pow_p(p, prec + 1);
    const long exponent = spec.l + spec.chi.parity();
    std::vector<mpz_class> acc(static_cast<std::size_t>(count), mpz_class(0));
    for (long a = 1; a <= p * f; ++a) {
        if (a % p == 0)
            continue;
        int c = spec.chi(a);
        if (c == 0)
            continue;
        mpz_class az(a);
        mpz_class u;
        mpz_class e(p - 1);
        mpz_powm(u.get_mpz_t(), az.get_mpz_t(), e.get_mpz_t(), modulus.get_mpz_t());
        // q(a) mod p^{prec-1}; powers stay reduced mod p^prec.
        mpz_class q = (u - 1) / p;
        mpz_class apow;
        if (exponent >= 0) {
            mpz_class ee(exponent);
            mpz_powm(apow.get_mpz_t(), az.get_mpz_t(), ee.get_mpz_t(),
                     modulus.get_mpz_t());
        } else {
            mpz_class ee(-exponent), t;
            mpz_powm(t.get_mpz_t(), az.get_mpz_t(), ee.get_mpz_t(),
                     modulus.get_mpz_t());
            mpz_invert(apow.get_mpz_t(), t.get_mpz_t(), modulus.get_mpz_t());
        }
        mpz_class qr = 1;
        for (int i = 0; i < spec.r; ++i)
            qr = qr * q % modulus;
        mpz_class term = apow * qr % modulus;
        for (int nu = 0; nu < count; ++nu) {
            acc[nu] += c > 0 ? term : modulus - term;
            term = term * q % modulus;
        }
    }
    mpz_class f_inv;
    mpz_class fz(f);
    mpz_invert(f_inv.get_mpz_t(), fz.get_mpz_t(), modulus.get_mpz_t());
    std::vector<PadicApprox> out;
    out.reserve(count);
    for (int nu = 0; nu < count; ++nu)
        out.push_back(PadicApprox(p, acc[nu] * f_inv, prec));
    return out;
}

} // namespace

KummerFn build_T(const TSpec& spec) {
    if (spec.p == 2)
        throw UnsupportedCase("T-functions need an odd prime");
    if (spec.r < 1)
        throw UnsupportedCase("T-functions need r >= 1");
    if (!spec.chi.is_principal() && spec.chi.conductor() % spec.p == 0)
        throw UnsupportedCase("p must not divide the conductor");
    std::vector<PadicApprox> coeffs =
        t_coefficient_block(spec, spec.precision, spec.precision);
    // c_nu is only needed mod p^{N-nu}; from_coefficients performs the cut.
    return KummerFn::from_coefficients(spec.p, std::move(coeffs), spec.precision);
}

PadicApprox t_direct_value(const TSpec& spec, long s) {
    const long p = spec.p;
    const long f = spec.chi.conductor();
    const int prec = spec.precision;
    const mpz_class modulus = pow_p(p, prec + 1);
    const long exponent = spec.l + spec.chi.parity();
    mpz_class total = 0;
    for (long a = 1; a <= p * f; ++a) {
        if (a % p == 0)
            continue;
        int c = spec.chi(a);
        if (c == 0)
            continue;
        mpz_class az(a);
        mpz_class u, e(p - 1);
        mpz_powm(u.get_mpz_t(), az.get_mpz_t(), e.get_mpz_t(), modulus.get_mpz_t());
        mpz_class q = (u - 1) / p;
        mpz_class apow, ee(exponent >= 0 ? exponent : -exponent);
        mpz_powm(apow.get_mpz_t(), az.get_mpz_t(), ee.get_mpz_t(),
                 modulus.get_mpz_t());
        if (exponent < 0)
            mpz_invert(apow.get_mpz_t(), apow.get_mpz_t(), modulus.get_mpz_t());
        mpz_class term = apow;
        for (int i = 0; i < spec.r; ++i)
            term = term * q % modulus;
        if (s != 0) {
            mpz_class us, se(s >= 0 ? s : -s);
            mpz_powm(us.get_mpz_t(), u.get_mpz_t(), se.get_mpz_t(),
                     modulus.get_mpz_t());
            if (s < 0)
                mpz_invert(us.get_mpz_t(), us.get_mpz_t(), modulus.get_mpz_t());
            term = term * us % modulus;
        }
        total += c > 0 ? term : modulus - term;
    }
    mpz_class f_inv, fz(f);
    mpz_invert(f_inv.get_mpz_t(), fz.get_mpz_t(), modulus.get_mpz_t());
    return PadicApprox(p, total * f_inv, prec);
}

PadicApprox t_from_power_sums(const TSpec& spec, long s) {
    const long p = spec.p;
    const int prec = spec.precision;
    if (spec.l + spec.chi.parity() < 0 || s < 0)
        throw UnsupportedCase("power-sum route needs l + delta >= 0 and s >= 0");
    const int work = prec + spec.r;
    std::vector<PadicApprox> table;
    table.reserve(spec.r + 1);
    for (int j = 0; j <= spec.r; ++j) {
        unsigned long t = static_cast<unsigned long>(
            spec.l + spec.chi.parity() + (s + j) * (p - 1));
        if (spec.chi.is_principal()) {
            // S_t(p) = 1^t + ... + (p-1)^t mod p^work
            mpz_class modulus = pow_p(p, work), total = 0, e(t);
            for (long a = 1; a < p; ++a) {
                mpz_class az(a), v;
                mpz_powm(v.get_mpz_t(), az.get_mpz_t(), e.get_mpz_t(),
                         modulus.get_mpz_t());
                total += v;
            }
            table.push_back(PadicApprox(p, total, work));
        } else {
            // S*_{t,chi}(p f) restricted to gcd(a, p) = 1
            const long f = spec.chi.conductor();
            mpz_class modulus = pow_p(p, work), total = 0, e(t);
            for (long a = 1; a <= p * f; ++a) {
                if (a % p == 0)
                    continue;
                int c = spec.chi(a);
                if (c == 0)
                    continue;
                mpz_class az(a), v;
                mpz_powm(v.get_mpz_t(), az.get_mpz_t(), e.get_mpz_t(),
                         modulus.get_mpz_t());
                total += c > 0 ? v : mpz_class(-v);
            }
            table.push_back(PadicApprox(p, total, work));
        }
    }
    PadicApprox diff = forward_diff(table, p - 1, spec.r);
    PadicApprox out = diff.div_exact_p(spec.r);
    if (!spec.chi.is_principal())
        out = out.div_unit_integer(spec.chi.conductor());
    return out.reduced(std::min(out.precision(), prec));
}

CongruenceReport congruence_suite(long p, long l, const QuadChar& chi,
                                  int digits) {
    if (p <= 3)
        throw UnsupportedCase("congruence suite needs p > 3");
    CongruenceReport rep;
    const long f = chi.conductor();
    auto record = [&](std::string name, bool pass, std::string detail = {}) {
        rep.checks.push_back({std::move(name), pass, std::move(detail)});
    };

    // (1) T_{p,l}(s, chi) = L_{p,l}(s, chi) mod p at s = 0..10.
    {
        TSpec t1{p, l, 1, chi, 2};
        bool ok = true;
        for (long s = 0; s <= 10 && ok; ++s) {
            long t_side = mpz_fdiv_ui(
                t_direct_value(t1, s).residue().get_mpz_t(),
                static_cast<unsigned long>(p));
            unsigned long n = static_cast<unsigned long>(
                chi.parity() + l + s * (p - 1));
            long l_side = mpz_fdiv_ui(lp_value(n, chi, p, 1).residue().get_mpz_t(),
                                      static_cast<unsigned long>(p));
            ok = (t_side == l_side);
        }
        record("T = L (mod p), s = 0..10", ok);
    }

    // (2) Delta_T = 2 Delta_L (mod p); for the principal character only l > 2.
    if (!(chi.is_principal() && l == 2)) {
        TSpec t2{p, l, 2, chi, 1};
        long delta_t = mpz_fdiv_ui(t_direct_value(t2, 0).residue().get_mpz_t(),
                                   static_cast<unsigned long>(p));
        unsigned long n0 = static_cast<unsigned long>(chi.parity() + l);
        unsigned long n1 = n0 + static_cast<unsigned long>(p - 1);
        PadicApprox d =
            (lp_value(n1, chi, p, 2) - lp_value(n0, chi, p, 2)).div_exact_p(1);
        long delta_l =
            mpz_fdiv_ui(d.residue().get_mpz_t(), static_cast<unsigned long>(p));
        record("Delta_T = 2 Delta_L (mod p)",
               (delta_t - 2 * delta_l) % p == 0,
               "T: " + std::to_string(delta_t) + ", L: " + std::to_string(delta_l));
    }

    // (3),(4) second and third coefficient identities (non-principal chi).
    if (!chi.is_principal()) {
        long l2 = l >= 2 ? l - 2 : p - 3;
        LplSpec lspec{p, l, chi, 4};
        KummerFn lf = build_Lpl(lspec);
        auto coeff_mod_p = [&](const PadicApprox& c) -> long {
            if (c.is_exact_zero())
                return 0;
            return mpz_fdiv_ui(c.residue().get_mpz_t(),
                               static_cast<unsigned long>(p));
        };
        long dl2 = coeff_mod_p(lf.coefficient(2));
        long dl3 = coeff_mod_p(lf.coefficient(3));
        TSpec t3{p, l, 3, chi, 1};
        TSpec t4{p, l, 4, chi, 1};
        TSpec s1{p, l2, 1, chi, 1};
        TSpec s2{p, l2, 2, chi, 1};
        long dt2 = coeff_mod_p(t_direct_value(t3, 0));
        long dt3 = coeff_mod_p(t_direct_value(t4, 0));
        long u1 = coeff_mod_p(t_direct_value(s1, 0));
        long u2 = coeff_mod_p(t_direct_value(s2, 0));
        long ff = (f % p) * (f % p) % p;
        record("3 Delta_L(2) = Delta_T(2) - f^2 Delta_{T,l-2}(0) (mod p)",
               ((3 * dl2 - (dt2 - ff * u1)) % p + p) % p % p == 0);
        record("4 Delta_L(3) = Delta_T(3) - 2 f^2 Delta_{T,l-2} (mod p)",
               ((4 * dl3 - (dt3 - 2 * ff * u2)) % p + p) % p % p == 0);
    }

    // (5) zero / fixed-point reciprocity for irregular pairs.
    {
        LplSpec lspec{p, l, chi, digits + 1};
        KummerFn lf = build_Lpl(lspec);
        Classification lcls = lf.classify();
        if (lcls.label == KsLabel::Wks0 && lcls.ord_f0 >= 1 &&
            lcls.ord_f0 < kInfiniteValuation) {
            TSpec tspec{p, l, 1, chi, digits + 1};
            KummerFn tf = build_T(tspec);
            Classification tcls = tf.classify();
            record("T in WKS0 iff L in WKS0", tcls.label == KsLabel::Wks0);
            ZeroResult xi_l = find_zero(lf, digits);
            ZeroResult xi_t = find_zero(tf, digits);
            FixedPointResult tau_l = find_fixed_point(lf, digits);
            FixedPointResult tau_t = find_fixed_point(tf, digits);
            // tau_T / tau_L * xi_L / xi_T = 2 (mod p)
            mpz_class tl = tau_l.digits.value(), tt = tau_t.digits.value();
            mpz_class xl = xi_l.digits.value(), xt = xi_t.digits.value();
            int ord = ord_p(tl, p);
            bool ok = false;
            if (ord_p(tt, p) == ord && ord_p(xl, p) == ord - 1 &&
                ord_p(xt, p) == ord - 1 && ord + 1 <= digits) {
                mpz_class m(p);
                mpz_class num = (tt / pow_p(p, ord)) * (xl / pow_p(p, ord - 1));
                mpz_class den = (tl / pow_p(p, ord)) * (xt / pow_p(p, ord - 1));
                mpz_class den_inv;
                mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
                ok = mpz_class(num * den_inv - 2) % p == 0;
            }
            record("tau_T/tau_L * xi_L/xi_T = 2 (mod p)", ok);
        } else {
            TSpec tspec{p, l, 1, chi, 3};
            KummerFn tf = build_T(tspec);
            record("T in KS* iff L in KS*",
                   (tf.classify().label == KsLabel::KsUnit) ==
                       (lcls.label == KsLabel::KsUnit));
        }
    }
    return rep;
}

} // namespace kummerlab
