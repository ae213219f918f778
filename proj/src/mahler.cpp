#include "kummerlab/mahler.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace kummerlab {

const char* to_string(KsLabel label) {
    switch (label) {
    case KsLabel::KsUnit: return "KS*";
    case KsLabel::Wks0: return "WKS0";
    case KsLabel::Ks2: return "KS2";
    case KsLabel::KsConstant: return "KSc";
    case KsLabel::PKsUnit: return "pKS*";
    case KsLabel::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

KummerFn::KummerFn(long p, std::vector<PadicApprox> coeffs, int base_precision)
    : p_(p), base_precision_(base_precision), coeffs_(std::move(coeffs)) {}

KummerFn KummerFn::from_values(long p, const std::vector<PadicApprox>& values,
                               int base_precision) {
    if (values.empty())
        throw InsufficientValues("empty value table");
    for (const auto& v : values) {
        if (v.prime() != p)
            throw PrimeMismatch("value table prime mismatch");
        if (!v.is_exact_zero() && v.precision() < base_precision)
            throw PrecisionExhausted("value below requested base precision");
    }
    int count = std::min<int>(static_cast<int>(values.size()), base_precision);
    std::vector<PadicApprox> diffs(values.begin(), values.end());
    std::vector<PadicApprox> coeffs;
    coeffs.reserve(count);
    for (int nu = 0; nu < count; ++nu) {
        PadicApprox d = diffs[0];
        if (!d.is_exact_zero() && d.reduced(std::min(d.precision(), base_precision))
                                          .valuation() < nu)
            throw NotKummer("Delta^" + std::to_string(nu) +
                            " f(0) is not divisible by p^" + std::to_string(nu));
        coeffs.push_back(d.div_exact_p(nu).reduced(
            d.is_exact_zero() ? 1 : base_precision - nu));
        for (std::size_t i = 0; i + 1 + static_cast<std::size_t>(nu) < diffs.size(); ++i)
            diffs[i] = diffs[i + 1] - diffs[i];
    }
    return KummerFn(p, std::move(coeffs), base_precision);
}

KummerFn KummerFn::from_coefficients(long p, std::vector<PadicApprox> coeffs,
                                     int base_precision) {
    if (coeffs.empty() || static_cast<int>(coeffs.size()) > base_precision)
        throw InsufficientValues("coefficient count must be in [1, N]");
    for (int nu = 0; nu < static_cast<int>(coeffs.size()); ++nu) {
        if (coeffs[nu].prime() != p)
            throw PrimeMismatch("coefficient prime mismatch");
        if (!coeffs[nu].is_exact_zero())
            coeffs[nu] = coeffs[nu].reduced(
                std::min(coeffs[nu].precision(), base_precision - nu));
    }
    return KummerFn(p, std::move(coeffs), base_precision);
}

KummerFn KummerFn::exponential(const PadicApprox& a, int base_precision) {
    if (!a.is_exact_zero() && a.precision() < base_precision)
        throw PrecisionExhausted("exponential base needs precision >= N");
    PadicApprox one(a.prime(), 1, a.is_exact_zero() ? base_precision : a.precision());
    PadicApprox u = (a - one).div_exact_p(1);
    std::vector<PadicApprox> coeffs;
    coeffs.reserve(base_precision);
    PadicApprox power(a.prime(), 1, base_precision);
    for (int nu = 0; nu < base_precision; ++nu) {
        coeffs.push_back(power);
        if (nu + 1 < base_precision)
            power = power * u;
    }
    return from_coefficients(a.prime(), std::move(coeffs), base_precision);
}

KummerFn KummerFn::constant(const PadicApprox& c, int base_precision) {
    std::vector<PadicApprox> coeffs;
    coeffs.reserve(base_precision);
    coeffs.push_back(c);
    for (int nu = 1; nu < base_precision; ++nu)
        coeffs.push_back(PadicApprox::zero(c.prime()));
    return from_coefficients(c.prime(), std::move(coeffs), base_precision);
}

PadicApprox KummerFn::evaluate(const PadicApprox& s, int level) const {
    if (level > max_level())
        throw PrecisionExhausted("evaluation level beyond stored coefficients");
    if (!s.is_exact_zero() && s.precision() < level + 1)
        throw PrecisionExhausted("argument precision below level+1");
    PadicApprox acc = PadicApprox::zero(p_);
    for (int nu = 0; nu <= level; ++nu) {
        if (coeffs_[nu].is_exact_zero())
            continue;
        PadicApprox term = coeffs_[nu].mul_pow_p(nu) * binom_padic(s, nu);
        acc = acc + term;
    }
    if (acc.is_exact_zero())
        return acc;
    if (acc.precision() < level + 1)
        throw PrecisionExhausted("evaluation lost precision");
    return acc.reduced(level + 1);
}

PadicApprox KummerFn::evaluate_at_integer(const mpz_class& k, int level) const {
    if (level > max_level())
        throw PrecisionExhausted("evaluation level beyond stored coefficients");
    int top = level;
    if (k >= 0 && k < level)
        top = static_cast<int>(k.get_si());
    PadicApprox acc = PadicApprox::zero(p_);
    for (int nu = 0; nu <= top; ++nu) {
        if (coeffs_[nu].is_exact_zero())
            continue;
        PadicApprox term =
            coeffs_[nu].mul_pow_p(nu).mul_integer(binom_int(k, nu));
        acc = acc + term;
    }
    if (acc.is_exact_zero())
        return acc;
    return acc.reduced(std::min(acc.precision(), level + 1));
}

std::vector<PadicApprox> KummerFn::value_table(int count, int level) const {
    std::vector<PadicApprox> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k)
        out.push_back(evaluate_at_integer(k, level));
    return out;
}

PadicApprox KummerFn::evaluate_negative(long r, int level) const {
    if (r <= 0)
        throw ParseError("argument must be a positive integer");
    std::vector<PadicApprox> table;
    table.reserve(level + 1);
    for (int k = 0; k <= level; ++k) {
        if ((k + r) % p_ == 0)
            throw DivisionByP("s + r hits a multiple of p in the table");
        table.push_back(
            evaluate_at_integer(k, level).div_unit_integer(k + r));
    }
    PadicApprox d = forward_diff(table, 1, level);
    mpz_class factor = binom_int(mpz_class(level) + r, static_cast<unsigned long>(r));
    factor *= r;
    if (level % 2 != 0)
        factor = -factor;
    PadicApprox out = d.mul_integer(factor);
    if (out.is_exact_zero())
        return out;
    return out.reduced(std::min(out.precision(), level + 1));
}

std::pair<std::vector<PadicApprox>, PadicApprox>
KummerFn::reflect_coeffs(const PadicApprox& s, int level) const {
    PadicApprox n_minus_s =
        PadicApprox(p_, level, s.is_exact_zero() ? base_precision_ : s.precision()) - s;
    std::vector<PadicApprox> weights;
    weights.reserve(level + 1);
    for (int nu = 0; nu <= level; ++nu)
        weights.push_back(binom_padic(s, nu) *
                          binom_padic(n_minus_s, static_cast<unsigned long>(level - nu)));
    PadicApprox acc = PadicApprox::zero(p_);
    for (int nu = 0; nu <= level; ++nu)
        acc = acc + weights[static_cast<std::size_t>(level - nu)] *
                        evaluate_at_integer(nu, level);
    if (!acc.is_exact_zero()) {
        if (acc.precision() < level + 1)
            throw PrecisionExhausted("reflection lost precision");
        acc = acc.reduced(level + 1);
    }
    return {std::move(weights), std::move(acc)};
}

KummerFn KummerFn::shift_op(int r) const {
    if (r == 0)
        return *this;
    if (r > max_level())
        throw PrecisionExhausted("shift beyond stored coefficients");
    std::vector<PadicApprox> coeffs(coeffs_.begin() + r, coeffs_.end());
    return KummerFn(p_, std::move(coeffs), base_precision_ - r);
}

KummerFn KummerFn::multiply(const KummerFn& other) const {
    if (p_ != other.p_)
        throw PrimeMismatch("product of functions over different primes");
    int n = std::min(std::min(base_precision_, other.base_precision_),
                     std::min(coefficient_count(), other.coefficient_count()));
    std::vector<PadicApprox> values;
    values.reserve(n);
    for (int k = 0; k < n; ++k)
        values.push_back(evaluate_at_integer(k, n - 1) *
                         other.evaluate_at_integer(k, n - 1));
    return from_values(p_, values, n);
}

KummerFn KummerFn::invert() const {
    if (coeffs_[0].is_exact_zero() || coeffs_[0].valuation() != 0)
        throw NotAUnit("f(0) is not a unit");
    int n = std::min(base_precision_, coefficient_count());
    std::vector<PadicApprox> values;
    values.reserve(n);
    for (int k = 0; k < n; ++k)
        values.push_back(evaluate_at_integer(k, n - 1).invert_unit());
    return from_values(p_, values, n);
}

KummerFn KummerFn::compose_linear(const PadicApprox& a, long b) const {
    int n = std::min(base_precision_, coefficient_count());
    if (!a.is_exact_zero() && a.precision() < n)
        throw PrecisionExhausted("translation point precision below N");
    if (b == 0)
        return constant(evaluate(a, n - 1), n);
    std::vector<PadicApprox> values;
    values.reserve(n);
    mpz_class a0 = a.is_exact_zero() ? mpz_class(0) : a.lift();
    int aprec = a.is_exact_zero() ? n : a.precision();
    for (int k = 0; k < n; ++k)
        values.push_back(evaluate(PadicApprox(p_, a0 + mpz_class(b) * k, aprec), n - 1));
    KummerFn out = from_values(p_, values, n);
    // Composition with a + bs sharpens the congruences to p^{nu(1+ord_p b)}.
    int e = ord_p(mpz_class(b), p_, n);
    if (e > 0) {
        for (int nu = 1; nu < out.coefficient_count(); ++nu) {
            const PadicApprox& c = out.coefficient(nu);
            if (c.is_exact_zero())
                continue;
            int need = std::min(nu * e, c.precision());
            if (c.valuation() < need)
                throw NotKummer("composed differences miss the sharpened bound");
        }
    }
    return out;
}

PadicApprox KummerFn::volkenborn() const {
    PadicApprox acc = PadicApprox::zero(p_);
    for (int nu = 0; nu < coefficient_count(); ++nu) {
        if (coeffs_[nu].is_exact_zero())
            continue;
        int e = ord_p(mpz_class(nu + 1), p_, 64);
        mpz_class unit_part = mpz_class(nu + 1) / pow_p(p_, e);
        PadicApprox term =
            coeffs_[nu].mul_pow_p(nu - e).div_unit_integer(unit_part);
        if (nu % 2 != 0)
            term = -term;
        acc = acc + term;
    }
    if (acc.is_exact_zero())
        return acc;
    // Truncation: omitted terms have valuation >= M+1 - floor(log_p(M+2)).
    int m = coefficient_count();
    int trunc = m - floor_log_p(p_, static_cast<unsigned long>(m) + 1);
    return acc.reduced(std::max(1, std::min(acc.precision(), trunc)));
}

Classification KummerFn::classify() const {
    Classification c;
    const PadicApprox& c0 = coeffs_[0];
    if (c0.is_exact_zero()) {
        c.ord_f0 = kInfiniteValuation;
        c.ord_f0_exact = true;
    } else {
        c.ord_f0 = c0.valuation();
        c.ord_f0_exact = c.ord_f0 < c0.precision();
    }
    if (coefficient_count() > 1 && !coeffs_[1].is_exact_zero())
        c.delta = mpz_fdiv_ui(coeffs_[1].residue().get_mpz_t(),
                              static_cast<unsigned long>(p_));
    for (int nu = 0; nu < coefficient_count(); ++nu) {
        if (!coeffs_[nu].is_exact_zero() && coeffs_[nu].valuation() == 0) {
            c.lambda = nu;
            break;
        }
    }
    if (!c.lambda)
        c.lambda_lower_bound = coefficient_count();
    {
        int best = kInfiniteValuation;
        bool exact = false;
        for (const auto& cf : coeffs_) {
            if (cf.is_exact_zero())
                continue;
            int v = cf.valuation();
            if (v < best) {
                best = v;
                exact = v < cf.precision();
            }
        }
        if (exact)
            c.mu = best;
    }
    if (p_ == 2) {
        c.p2_condition = coefficient_count() > 2 &&
                         (coeffs_[2].is_exact_zero() || coeffs_[2].valuation() >= 1);
    }

    if (c.ord_f0 == 0) {
        c.label = KsLabel::KsUnit;
    } else if (c.lambda && *c.lambda == 1 && c.p2_condition) {
        c.label = KsLabel::Wks0;
    } else if (p_ > 3 && c.lambda && *c.lambda == 2 && c.ord_f0 >= 2) {
        c.label = KsLabel::Ks2;
    } else if (c.ord_f0_exact && c.ord_f0 >= 1 && c.lambda &&
               *c.lambda > c.ord_f0) {
        // |f(s)|_p constant: ord c_nu > ord f(0) - nu for nu = 1..ord f(0).
        bool ok = true;
        for (int nu = 1; nu <= c.ord_f0 && nu < coefficient_count(); ++nu) {
            const auto& cf = coeffs_[nu];
            if (!cf.is_exact_zero() && cf.valuation() <= c.ord_f0 - nu) {
                ok = false;
                break;
            }
        }
        c.label = ok ? KsLabel::KsConstant : KsLabel::Indeterminate;
    } else if (c.ord_f0 == 1 && c.ord_f0_exact && !c.lambda && c.mu &&
               *c.mu == 1) {
        c.label = KsLabel::PKsUnit;
    } else {
        c.label = KsLabel::Indeterminate;
    }
    return c;
}

void KummerFn::serialize(std::ostream& os) const {
    os << "KFN1 " << p_ << ' ' << base_precision_ << '\n';
    for (int nu = 0; nu < coefficient_count(); ++nu) {
        const auto& cf = coeffs_[nu];
        if (cf.is_exact_zero())
            os << nu << " zero\n";
        else
            os << nu << ' ' << cf.residue() << ' ' << cf.precision() << '\n';
    }
}

KummerFn KummerFn::deserialize(std::istream& is) {
    std::string tag;
    long p = 0;
    int n = 0;
    if (!(is >> tag >> p >> n) || tag != "KFN1")
        throw ParseError("bad KFN1 header");
    std::vector<PadicApprox> coeffs;
    int nu = 0;
    std::string res;
    while (is >> nu >> res) {
        if (nu != static_cast<int>(coeffs.size()))
            throw ParseError("non-contiguous coefficient index");
        if (res == "zero") {
            coeffs.push_back(PadicApprox::zero(p));
        } else {
            int prec = 0;
            if (!(is >> prec))
                throw ParseError("missing coefficient precision");
            coeffs.push_back(PadicApprox(p, mpz_class(res), prec));
        }
    }
    return from_coefficients(p, std::move(coeffs), n);
}

DegenerateFn::DegenerateFn(long p, std::vector<Entry> entries, int base_precision,
                           long origin_shift)
    : p_(p), base_precision_(base_precision), origin_shift_(origin_shift),
      entries_(std::move(entries)) {
    for (std::size_t i = 1; i < entries_.size(); ++i)
        if (entries_[i].exponent < entries_[i - 1].exponent)
            throw ParseError("exponent schedule must be non-decreasing");
}

int DegenerateFn::eta(int n) const {
    for (int nu = 0; nu < entry_count(); ++nu)
        if (entries_[nu].exponent >= n)
            return nu;
    throw InsufficientEntries("exponent schedule does not reach " +
                              std::to_string(n));
}

int DegenerateFn::defect_index() const {
    for (int nu = 0; nu < entry_count(); ++nu)
        if (entries_[nu].exponent < nu)
            return nu;
    return entry_count();
}

bool DegenerateFn::is_ksd() const {
    if (defect_index() < 3)
        return false;
    for (int nu = 3; nu < entry_count(); ++nu)
        if (entries_[nu].exponent <
            2 + floor_log_p(p_, static_cast<unsigned long>(nu)))
            return false;
    return true;
}

PadicApprox DegenerateFn::evaluate(const PadicApprox& s, int target_precision) const {
    int top = eta(target_precision);
    PadicApprox t = s;
    if (origin_shift_ != 0) {
        int prec = s.is_exact_zero() ? base_precision_ : s.precision();
        mpz_class lifted = s.is_exact_zero() ? mpz_class(0) : s.lift();
        t = PadicApprox(p_, lifted - origin_shift_, prec);
    }
    PadicApprox acc = PadicApprox::zero(p_);
    for (int nu = 0; nu < top; ++nu) {
        const Entry& e = entries_[nu];
        if (e.coeff.is_exact_zero())
            continue;
        acc = acc + e.coeff.mul_pow_p(e.exponent) * binom_padic(t, nu);
    }
    if (acc.is_exact_zero())
        return acc;
    if (acc.precision() < target_precision)
        throw PrecisionExhausted("degenerate evaluation lost precision");
    return acc.reduced(target_precision);
}

long DegenerateFn::delta_mod_p() const {
    if (entry_count() < 2)
        return 0;
    const Entry& e = entries_[1];
    if (e.exponent > 1)
        return 0;
    if (e.exponent < 1)
        throw NotInWKSd("schedule has a defect at index 1");
    if (e.coeff.is_exact_zero())
        return 0;
    return mpz_fdiv_ui(e.coeff.residue().get_mpz_t(),
                       static_cast<unsigned long>(p_));
}

PadicApprox DegenerateFn::value_at_origin() const {
    const Entry& e = entries_[0];
    return e.coeff.mul_pow_p(e.exponent);
}

DegenerateFn divide_out_zero(const KummerFn& f) {
    if (!f.coefficient(0).is_zero_to_precision())
        throw NonzeroConstant("f(0) does not vanish to full precision");
    long p = f.prime();
    int count = f.coefficient_count() - 1;
    if (count < 1)
        throw InsufficientEntries("no coefficients past the constant term");
    // Raw exponents nu - ord_p(nu+1) dip at multiples of p; the schedule must
    // be monotone, so take the running minimum over the tail and move the
    // slack power of p into the coefficient. Unstored indices mu >= count
    // contribute at least count - floor(log_p(count+1)).
    std::vector<int> raw(count), sched(count);
    for (int nu = 0; nu < count; ++nu)
        raw[nu] = nu - ord_p(mpz_class(nu + 1), p, 64);
    int tail = count - floor_log_p(p, static_cast<unsigned long>(count) + 1);
    int running = tail;
    for (int nu = count - 1; nu >= 0; --nu) {
        running = std::min(running, raw[nu]);
        sched[nu] = running;
    }
    std::vector<DegenerateFn::Entry> entries;
    entries.reserve(count);
    for (int nu = 0; nu < count; ++nu) {
        int e = ord_p(mpz_class(nu + 1), p, 64);
        mpz_class unit_part = mpz_class(nu + 1) / pow_p(p, e);
        PadicApprox u = f.coefficient(nu + 1);
        if (!u.is_exact_zero()) {
            u = u.div_unit_integer(unit_part);
            if (raw[nu] > sched[nu])
                u = u.mul_pow_p(raw[nu] - sched[nu]);
        }
        entries.push_back(DegenerateFn::Entry{sched[nu], std::move(u)});
    }
    return DegenerateFn(p, std::move(entries), f.base_precision() - 1, 1);
}

} // namespace kummerlab
