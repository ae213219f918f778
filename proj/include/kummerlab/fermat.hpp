#pragma once

#include <string>
#include <vector>

#include "kummerlab/charnum.hpp"
#include "kummerlab/mahler.hpp"

namespace kummerlab {

/// Fermat quotient q(a) = (a^{p-1} - 1)/p mod p^N for a p-unit a, p odd.
PadicApprox fermat_quotient(const mpz_class& a, long p, int precision);

/// u(a) = a^{p-1} = 1 + p q(a) mod p^N.
PadicApprox fermat_unit(const mpz_class& a, long p, int precision);

/// Teichmuller lift: the (p-1)-th root of unity congruent to a mod p,
/// obtained by iterating x <- x^p.
PadicApprox teichmuller(const mpz_class& a, long p, int precision);

/// A Fermat-quotient function
///   T^r_{p,l}(s, chi) = (1/f) sum_{a coprime to p} chi(a) a^{l+delta}
///                        q(a)^r u(a)^s
/// summed over a in [1, p f]; the principal case reduces to a in [1, p-1].
struct TSpec {
    long p = 5;
    long l = 0;
    int r = 1;
    QuadChar chi;
    int precision = 10;
};

/// Coefficient-first construction: c_nu = T^{r+nu}_{p,l}(0, chi) mod
/// p^{N-nu}, each a single O(p f) sum.
KummerFn build_T(const TSpec& spec);

/// Direct evaluation of T^r_{p,l}(s, chi) mod p^N at an integer s.
PadicApprox t_direct_value(const TSpec& spec, long s);

/// Power-sum route of evaluation (difference of power sums divided by p^r);
/// must agree with the direct sum.
PadicApprox t_from_power_sums(const TSpec& spec, long s);

struct CongruenceCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CongruenceReport {
    std::vector<CongruenceCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass)
                return false;
        return true;
    }
};

/// Executable congruences linking T-functions to the Bernoulli-backed
/// L-values: value congruence mod p, the doubled first coefficient, the
/// second/third coefficient identities, and (for irregular pairs) the
/// zero/fixed-point reciprocity. Both sides are computed independently.
CongruenceReport congruence_suite(long p, long l, const QuadChar& chi,
                                  int digits = 5);

} // namespace kummerlab
