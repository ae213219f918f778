#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kummerlab/padic.hpp"

namespace kummerlab {

/// Coarse class of a function inside KS_{p,2} (see classify()).
enum class KsLabel {
    KsUnit,        // f(0) a unit: |f(s)|_p = 1 everywhere
    Wks0,          // unique simple zero, |f(s)|_p = |p(s-xi)|_p
    Ks2,           // delta = 0, second coefficient a unit: two-zero candidate
    KsConstant,    // |f(s)|_p constant = p^{-ord f(0)}
    PKsUnit,       // p * unit function
    Indeterminate,
};

const char* to_string(KsLabel label);

struct Classification {
    long delta = 0;                       // first coefficient mod p
    std::optional<int> lambda;            // least index with a unit coefficient
    int lambda_lower_bound = 0;           // meaningful when lambda is empty
    std::optional<int> mu;                // min coefficient valuation
    int ord_f0 = 0;                       // valuation of f(0), capped
    bool ord_f0_exact = true;             // false when capped by precision
    bool p2_condition = true;             // 2 | Delta_f(2) (only checked for p=2)
    KsLabel label = KsLabel::Indeterminate;
};

/// A function of KS_{p,2} held as its normalized Mahler coefficient sequence
/// c_nu = Delta^nu f(0) / p^nu, with c_nu known modulo p^{N-nu} for base
/// precision N. Values are reconstructed via
///     f(s) = sum_nu c_nu p^nu C(s, nu).
/// Immutable; all operations are pure.
class KummerFn {
public:
    /// Builds from a table of values f(0), ..., f(M) each known mod p^N
    /// (M <= N-1; surplus values are used to tighten the differences).
    /// Raises NotKummer when some Delta^nu f(0) is not divisible by p^nu.
    static KummerFn from_values(long p, const std::vector<PadicApprox>& values,
                                int base_precision);

    /// Builds directly from normalized coefficients (c_nu reduced to
    /// precision N - nu).
    static KummerFn from_coefficients(long p, std::vector<PadicApprox> coeffs,
                                      int base_precision);

    /// The function a^s for a in 1 + pZ_p, with coefficients ((a-1)/p)^nu.
    static KummerFn exponential(const PadicApprox& a, int base_precision);

    /// Constant function.
    static KummerFn constant(const PadicApprox& c, int base_precision);

    long prime() const { return p_; }
    int base_precision() const { return base_precision_; }
    int coefficient_count() const { return static_cast<int>(coeffs_.size()); }
    int max_level() const { return coefficient_count() - 1; }
    const PadicApprox& coefficient(int nu) const { return coeffs_[nu]; }

    /// Value f(s) modulo p^{n+1} via the finite Mahler expansion at level n.
    PadicApprox evaluate(const PadicApprox& s, int level) const;

    /// Value at a (small) integer argument, modulo p^{level+1}.
    PadicApprox evaluate_at_integer(const mpz_class& k, int level) const;

    /// Value table f(0), ..., f(count-1) each modulo p^{level+1}.
    std::vector<PadicApprox> value_table(int count, int level) const;

    /// f(-r) modulo p^{n+1} via the difference formula
    /// f(-r) = (-1)^n r C(n+r, r) Delta^n [f(s)/(s+r)] at s=0.
    /// Raises DivisionByP when some s+r is divisible by p.
    PadicApprox evaluate_negative(long r, int level) const;

    /// Reflection weights a_nu = C(s,nu) C(n-s,n-nu) together with the value
    /// f(n-s) = sum a_{n-nu} f(nu) (mod p^{n+1}).
    std::pair<std::vector<PadicApprox>, PadicApprox>
    reflect_coeffs(const PadicApprox& s, int level) const;

    /// The coefficient-shift operator: result has c'_nu = c_{nu+r}.
    KummerFn shift_op(int r) const;

    /// Pointwise product, built from the value tables.
    KummerFn multiply(const KummerFn& other) const;

    /// Pointwise inverse of a unit function (f(0) a unit).
    KummerFn invert() const;

    /// f(a + b s); for b != 0 the difference table is checked for the
    /// sharpened divisibility p^{nu (1 + ord_p b)}.
    KummerFn compose_linear(const PadicApprox& a, long b) const;

    /// Volkenborn integral: sum (-1)^nu c_nu p^nu / (nu+1).
    PadicApprox volkenborn() const;

    Classification classify() const;

    /// Serialization: header "KFN1 p N" then one line "nu residue precision"
    /// per coefficient ("nu zero" for exact zeros). Bit-exact round trip.
    void serialize(std::ostream& os) const;
    static KummerFn deserialize(std::istream& is);

private:
    KummerFn(long p, std::vector<PadicApprox> coeffs, int base_precision);

    long p_;
    int base_precision_;
    std::vector<PadicApprox> coeffs_;
};

/// A delta-degenerate function: Mahler series
///     f(t) = sum_nu u_nu p^{delta(nu)} C(t, nu)
/// with a monotone exponent schedule delta. The stored expansion lives in
/// the variable t = s - origin_shift; evaluation and the zero solver accept
/// and return values of the caller-facing variable s.
class DegenerateFn {
public:
    struct Entry {
        int exponent;       // delta(nu)
        PadicApprox coeff;  // u_nu
    };

    DegenerateFn(long p, std::vector<Entry> entries, int base_precision,
                 long origin_shift = 0);

    long prime() const { return p_; }
    int base_precision() const { return base_precision_; }
    long origin_shift() const { return origin_shift_; }
    int entry_count() const { return static_cast<int>(entries_.size()); }
    const Entry& entry(int nu) const { return entries_[nu]; }

    /// eta(n) = min{nu : delta(nu) >= n}; InsufficientEntries when the
    /// stored schedule never reaches n.
    int eta(int n) const;

    /// theta = min{nu : delta(nu) < nu}, or entry_count() when no defect
    /// occurs in the stored range.
    int defect_index() const;

    /// Membership test for KS^d over the stored range:
    /// theta >= 3 and delta(nu) >= 2 + floor(log_p nu) for nu >= 3.
    bool is_ksd() const;

    /// Value modulo p^n at the caller-facing argument s.
    PadicApprox evaluate(const PadicApprox& s, int target_precision) const;

    /// First coefficient mod p (u_1 when delta(1) = 1).
    long delta_mod_p() const;

    /// u_0 p^{delta(0)} = f(origin_shift), the value at the stored origin.
    PadicApprox value_at_origin() const;

private:
    long p_;
    int base_precision_;
    long origin_shift_;
    std::vector<Entry> entries_;
};

/// For f in KS_{p,2} with f(0) = 0 (to full precision): the factor
/// g = f / (p s), represented in the variable t = s - 1 with entries
/// delta(nu) = nu - ord_p(nu+1), u_nu = c_{nu+1} / unit(nu+1).
DegenerateFn divide_out_zero(const KummerFn& f);

} // namespace kummerlab
