#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kummerlab/charnum.hpp"
#include "kummerlab/mahler.hpp"

namespace kummerlab {

/// Specification of a p-adic L-function on a residue class:
///   f(s) = L_p(1 - (delta_chi + l + phi(q) s), chi),  q = p (p odd), 4 (p=2).
/// `shifted` marks the l = delta_chi = 0 construction for even non-principal
/// characters, where the removable discontinuity at s = 0 is filled in.
struct LplSpec {
    long p = 5;
    long l = 0;
    QuadChar chi;
    int precision = 10;
    unsigned exact_cap = 2000;   // largest index served by exact rationals

    bool shifted() const {
        return l == 0 && !chi.is_principal() && chi.parity() == 0;
    }
    long phi_q() const { return p == 2 ? 2 : p - 1; }
};

struct IrregularPair {
    long p = 0;
    long l = 0;
    long long D = 1;      // 1 = principal
    int ord_f0 = 0;       // ord_p L_{p,l}(0, chi)
    long delta = 0;       // first coefficient mod p
    int lambda = 0;
};

struct ExceptionalPair {
    long p = 0;
    long long D = 1;
    int ord_L1 = 0;       // ord_p L_{p,0}(1, chi) >= 2
    int lambda = 0;       // 2 when the T-criterion certifies two zeros
    int ord_delta2 = 0;   // ord_p Delta_f(2)
};

/// L_p(1-n, chi) = (1 - chi(p) p^{n-1}) (-B_{n,chi}/n) mod p^N.
/// Principal character: NotPIntegral when (p-1) | n.
PadicApprox lp_value(unsigned long n, const QuadChar& chi, long p, int precision,
                     unsigned exact_cap = 2000);

/// Values-first construction of L_{p,l}(., chi) as a KummerFn at base
/// precision N. The success of the difference table is the executable form
/// of the Kummer-type congruences.
KummerFn build_Lpl(const LplSpec& spec);

/// Product of L-functions sharing (p, l, N); characters must share parity.
KummerFn build_product_L(const std::vector<LplSpec>& specs);

/// tilde L_{p,0}(s, chi) = L_{p,0}(s, chi)/(p s) for odd chi with
/// chi(p) = 1, p > 3, as a degenerate function.
DegenerateFn build_tilde_L(long p, const QuadChar& chi, int precision);

struct ScanOptions {
    long p_min = 5;
    long p_max = 100;
    int jobs = 1;
    bool verify = true;              // re-verify positives through Bernoulli side
    std::string checkpoint_path;     // empty: no checkpointing
    int checkpoint_stride = 100;
};

/// chi-irregular pairs (p, l): L_{p,l}(0,chi) in pZ_p, p > 3, p coprime to
/// the conductor, 2 <= l <= p-3 even. Fast path is the mod-p Fermat-quotient
/// sieve T_{p,l}(0,chi); positives are re-verified through exact/modular
/// Bernoulli values when `verify`.
std::vector<IrregularPair> scan_irregular(const QuadChar& chi,
                                          const ScanOptions& options);

/// Index of chi-irregularity of p within a scan result.
int irregularity_index(const std::vector<IrregularPair>& pairs, long p);

/// chi-exceptional pairs (p, 0): chi odd, chi(p) = 1, ord_p L_{p,0}(1,chi)
/// >= 2. Fast path is T^2_{p,0}(0,chi) = 0 mod p.
std::vector<ExceptionalPair> scan_exceptional(const QuadChar& chi,
                                              const ScanOptions& options);

/// Persistence: header IRR1/EXC1, lines "p l D ord delta lambda", sorted.
void write_pair_file(const std::string& path, const std::string& tag,
                     const std::vector<IrregularPair>& pairs);
std::vector<IrregularPair> read_pair_file(const std::string& path,
                                          const std::string& tag);

struct StructureFactor {
    long long p = 0;
    std::string kind;   // "S", "D", "I", "EXC"
    long l = -1;        // residue class for irregular factors
    int ord = 0;        // ord_p of the exact value
    std::optional<int> predicted_ord; // conjectural linear form, when solved
    bool verified_irregular = false;  // T-sieve confirmation (feasible p only)
};

struct StructureReport {
    unsigned n = 0;
    ExactRational value;           // L(1-(delta+n), chi) exact (product)
    std::vector<StructureFactor> factors;
    bool identity_holds = false;   // |value| = product of enumerated norms
    bool conjecture_holds = true;  // all solved linear forms match
    std::string note;
};

/// Decomposes |L(1-(delta+n), chi_1 x ... x chi_k)|_infty into irregular,
/// conductor and denominator contributions, checks the product identity
/// exactly, and evaluates the conjectural linear forms |p(s-xi)|_p against
/// the directly computed norms.
StructureReport structure_check(unsigned n, const std::vector<QuadChar>& chars,
                                long irregular_pmax = 200, int zero_digits = 8);

struct SmallestIndices {
    std::vector<mpz_class> indices;      // n_1 .. n_k
    std::vector<bool> verified;          // direct valuation check performed+passed
};

/// Smallest n with ord_p of the divided value equal to nu, from the zero
/// digits of the pair's function; the first `verify_count` are re-verified
/// by direct modular valuation.
SmallestIndices smallest_indices(const LplSpec& spec, int nu_max,
                                 int verify_count = 3);

struct StrongKummerReport {
    bool delta_nonzero = false;   // the mod-p^2 condition of the proposition
    int samples_checked = 0;
    bool biconditional_ok = false;
    std::string witness;          // failing witness when delta == 0
};

/// Strong Kummer congruences for (p, l): the sharpened biconditional holds
/// exactly when Delta_{zeta_{p,l}} != 0.
StrongKummerReport strong_kummer_check(long p, long l, int samples = 50,
                                       unsigned seed = 1);

} // namespace kummerlab
