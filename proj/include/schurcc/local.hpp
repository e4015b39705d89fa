#pragma once

// Per-prime local data for odd primes r not dividing the conductor: the
// Frobenius psi_r, residue degree f_r, d(r), nu(r), beta(r), and the
// residue-class oracle that quantifies over unit classes mod
// M = lcm(m, p^{a+b+1}) instead of actual primes (nu and beta depend only
// on psi_r and d(r), and every class contains primes).

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "schurcc/context.hpp"

namespace schurcc {

inline constexpr u64 kDefaultScanListBound = 1'000'000;
inline constexpr u64 kDefaultOracleStreamBound = 4'000'000;
inline constexpr u64 kDefaultPrimeSearchBound = 1'000'000'000;

enum class LocalCase {
    Generic,          // beta = max(nu, v_p(|eta B^{p^d}|))
    NoncyclicParity,  // G/C non-cyclic and j != j' mod 2: beta = 1
};

struct LocalIndexReport {
    u64 source = 0;          // the prime r, or the class value u
    bool source_is_prime = false;
    u64 class_modulus = 0;   // M when the source is a residue class

    UnitClass psi;           // Frobenius in Gamma
    u64 f_r = 1;             // order of psi mod G
    u64 f = 0;               // v_p(f_r)
    u64 d = 0;               // min(a, v_p(r-1))
    u64 nu = 0;              // max(0, a - f)
    u64 beta = 0;
    GDecomposition decomposition;  // of phi_r = psi^{f_r}
    LocalCase case_tag = LocalCase::Generic;

    // diagnostics, only for realized primes
    std::optional<u64> nu_diag;  // max(0, a + v_p(r-1) - v_p(r^{f_r}-1))
    std::optional<u64> a_r;      // v_p(r^{f_r}-1) - a
};

/// The class of r mod n_F.  Throws for r not coprime to the conductor of F.
UnitClass frobenius(const SchurContext& ctx, u64 r);

u64 nu_r(const SchurContext& ctx, u64 r);
u64 beta_r(const SchurContext& ctx, u64 r);

/// nu from the ramification/roots-of-unity formula, for an actual odd prime
/// r not dividing m: max(0, a + v_p(r-1) - v_p(r^{f_r}-1)).  Can disagree
/// with nu_r away from the p | r-1 regime; disagreements are reported, never
/// fatal.
u64 nu_r_diagnostic(const SchurContext& ctx, u64 r);

/// Full report for a realized prime r (not dividing m), with diagnostics.
LocalIndexReport local_report_for_prime(const SchurContext& ctx, u64 r);

/// Report for a unit class u mod M = lcm(m, p^{a+b+1}); d is computed from
/// u mod p^{a+b+1} (classes with u = 1 mod p^{a+b+1} get d = a).
LocalIndexReport local_report_for_class(const SchurContext& ctx, u64 u);

/// M = lcm(m, p^{a+b+1}).
u64 scan_modulus(const SchurContext& ctx);

/// One report per unit class mod M, ascending.  Errors if phi(M) exceeds
/// the bound.
std::vector<LocalIndexReport> scan_residues(const SchurContext& ctx,
                                            u64 bound = kDefaultScanListBound);

/// Streaming variant: invokes fn on each class report in ascending order;
/// stops early if fn returns false.  Returns false when stopped early.
bool scan_residues_streaming(const SchurContext& ctx,
                             const std::function<bool(const LocalIndexReport&)>& fn,
                             u64 bound = kDefaultOracleStreamBound);

/// Smallest prime <= bound congruent to u mod M, by Dirichlet search.
std::optional<u64> find_prime_in_class(u64 u, u64 M, u64 bound);

/// v_p(r^f - 1) computed without big integers (lifting-the-exponent plus a
/// bounded climb); values beyond 320 are reported as 320.
u64 valuation_of_power_minus_one(u64 r, u64 f, u64 p);

/// Diagnostic nu at an odd ramified prime r | m, r != p, from the
/// ramification formula: max(0, a + v_p(e) - v_p(|W(K_r)|)) with
/// v_p(e) = v_p(|inertia(r) intersect G|) and v_p(|W(K_r)|) = v_p(r^f - 1),
/// f the residue degree of r in K/Q.  beta at ramified primes is out of
/// scope and reported as undetermined.
struct RamifiedReport {
    u64 r = 0;
    u64 inertia_order_in_G = 1;
    u64 e_valuation = 0;   // v_p of the ramification of K(zeta_r)/K at r
    u64 f = 1;             // residue degree f(K/Q, r)
    u64 w_valuation = 0;   // v_p(|W(K_r)|)
    u64 nu = 0;
};
RamifiedReport ramified_report(const SchurContext& ctx, u64 r);

}  // namespace schurcc
