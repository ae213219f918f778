#pragma once

#include <optional>
#include <vector>

#include "kummerlab/mahler.hpp"

namespace kummerlab {

enum class ZeroMethod { Values, Coefficients };

struct ZeroResult {
    DigitExpansion digits;
    ZeroMethod method = ZeroMethod::Coefficients;
    // residual_valuations[r] = valuation(f(xi_{r+1})) observed after placing
    // digit r; always >= r+2 for a simple zero.
    std::vector<int> residual_valuations;
};

struct FixedPointResult {
    DigitExpansion digits;
    bool consistent = false; // f(tau_n) == tau_n mod p^n re-checked by value
};

struct TwoZeroResult {
    DigitExpansion first;
    DigitExpansion second;
};

struct RelationReport {
    bool ord_chain = false;        // ord f(0) = ord tau = 1 + ord xi
    bool tau_over_p_xi = false;    // tau/(p xi) = -Delta_f  (mod p)
    bool f0_over_tau = false;      // f(0)/tau = 1           (mod p)
    bool norm_law = false;         // |f(s)|_p = |p(s-xi)|_p on samples
    bool all() const { return ord_chain && tau_over_p_xi && f0_over_tau && norm_law; }
};

/// Digit-by-digit lift of the unique simple zero of f in WKS^0_{p,2}.
/// Needs base precision >= n+1. Both methods produce identical digits; the
/// coefficients method applies the Lucas shortcut to the top term.
ZeroResult find_zero(const KummerFn& f, int n,
                     ZeroMethod method = ZeroMethod::Coefficients);

/// Digit-by-digit lift of the fixed point of f in KS_{p,2}.
/// Needs base precision >= n.
FixedPointResult find_fixed_point(const KummerFn& f, int n);

/// Zero of a degenerate function in WKS^d with g(0) in pZ_p, via the
/// truncated degenerate expansion. The result is expressed in the
/// caller-facing variable (origin shift applied).
ZeroResult find_zero_degenerate(const DegenerateFn& g, int n);

/// Both zeros of f in KS^2_{p,2} (p > 3, Delta_f = 0, Delta_f(2) a unit).
/// Seeds are residues mod p of the zeros; without seeds the mod-p quadratic
///   f(0)/p^2 + (Delta_f(1)/p) s + Delta_f(2) s(s-1)/2 = 0  (mod p)
/// is scanned. Each simple root is lifted through the level functions of f.
/// Needs base precision >= n+2.
TwoZeroResult find_two_zeros(const KummerFn& f, int n,
                             std::optional<std::pair<long, long>> seeds = {});

/// Checks the zero/fixed-point relations of a WKS^0 function with f(0) != 0.
RelationReport verify_zero_relations(const KummerFn& f, const DigitExpansion& xi,
                                     const DigitExpansion& tau, int samples = 100);

} // namespace kummerlab
