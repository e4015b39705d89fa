#pragma once

// Construction of the decision apparatus for a pair (K, p) with zeta_p in K:
// the tower K <= L = Q(zeta_m) <= F = Q(zeta_{n_F}), the Galois groups
//
//   Gamma = Gal(F/Q)           = (Z/n_F)*
//   G     = Gal(F/K)           = {x : x mod m in H}
//   C     = Gal(F/K(zeta))     = {x in G : x =  1 mod p^{a+b}}
//   D     = Gal(F/K(zeta+1/zeta)) = {x in G : x = +-1 mod p^{a+b}}
//
// where zeta = zeta_{p^{a+b}}, together with elements rho, sigma and a
// complement B with D = B x <rho>, C = B x <rho^2>, G/C = <rho C> x <sigma C>.

#include <cstdint>
#include <optional>

#include "schurcc/fields.hpp"
#include "schurcc/residue.hpp"

namespace schurcc {

/// Two readings of the b invariant in the non-cyclic branch; see b_value.
enum class BMode { Definition, Example };

enum class ScanOrder { Ascending, Descending };

struct SchurContext {
    u64 p = 2;
    FieldSpec field;
    BMode mode = BMode::Definition;

    u64 a = 1;  // largest a with zeta_{p^a} in K
    u64 s = 1;  // largest s with zeta_{p^s} in Q(zeta_m)
    u64 b = 1;
    u64 zeta_modulus = 1;  // p^{a+b}
    u64 f_conductor = 1;   // n_F = lcm(m, p^{a+b})

    UnitGroup gamma;
    ResidueSubgroup G, C, D, B;
    UnitClass rho, sigma;
    u64 q = 1;  // |sigma C|
    u64 t = 0;  // v_p(exp B)
    bool cyclic_case = true;
    // v_2([K intersect Q(zeta) : Q]) + 2; non-cyclic case only
    std::optional<u64> d_nc;

    std::vector<UnitClass> gamma_p;  // elements of p-power order of Gamma, ascending
};

/// The case split for b.  In the non-cyclic branch the printed definition
/// gives b = s + v + 2 while the worked example computes a+b = s + v + 2;
/// both readings are implemented and reported.
u64 b_value(const FieldSpec& K, u64 p, u64 a, u64 s, BMode mode);

/// Builds the full context.  Selection of rho, sigma, B is deterministic;
/// the scan order can be perturbed to check that decisions do not depend on
/// the admissible choice.
SchurContext build_context(const FieldSpec& K, u64 p, BMode mode = BMode::Definition,
                           ScanOrder order = ScanOrder::Ascending);

/// Per-automorphism data for psi in Gamma.
struct PsiProfile {
    UnitClass psi;
    u64 ord_mod_G = 1;  // |psi G|
    u64 h = 0;          // max{0 <= h <= a+b : psi = 1 mod p^h}
    u64 d = 0;          // min(a, h)
    u64 nu = 0;         // max(0, a - v_p(|psi G|))
    ResidueSubgroup T;  // {eta in B : eta^{p^nu} in B^{p^d}}
};
PsiProfile psi_profile(const SchurContext& ctx, const UnitClass& psi);

/// g = rho^{j_rho} * sigma^{j_sigma} * eta with eta in B,
/// 0 <= j_rho < |rho|, 0 <= j_sigma < |sigma C|.
struct GDecomposition {
    u64 j_rho = 0;
    u64 j_sigma = 0;
    UnitClass eta;
};
GDecomposition decompose_G(const SchurContext& ctx, const UnitClass& g);

/// Checks every structural invariant of the context; throws
/// InvariantViolationError with diagnostics on failure.
void assert_context_invariants(const SchurContext& ctx);

}  // namespace schurcc
