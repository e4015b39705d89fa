#pragma once

// The finiteness decision for [S(K)_p : CC(K)_p]: the group-theoretic route
// (scan of the p-power-order elements of Gamma), the fast-path corollaries,
// and the independent residue-class oracle (nu(r) = beta(r) for every class).

#include <optional>
#include <string>
#include <vector>

#include "schurcc/local.hpp"

namespace schurcc {

enum class Verdict { Finite, Infinite };
enum class Method { Cond2, Cond3, Noncyclic, Oracle, Corollary };

std::string to_string(Verdict v);
std::string to_string(Method m);

struct DecisionWitness {
    UnitClass psi;       // minimal failing element (ascending value)
    PsiProfile profile;
    std::string detail;  // which part of the condition failed
};

struct Decision {
    Verdict verdict = Verdict::Finite;
    Method method = Method::Cond2;
    std::string certificate;                    // fast-path tag, when applicable
    std::optional<DecisionWitness> witness;     // set for INFINITE group-route verdicts
    std::optional<LocalIndexReport> failing_class;  // set for INFINITE oracle verdicts
};

/// Condition (2): every psi of p-power order satisfies
/// psi^{|psi G|} in union of sigma^i T(psi), i < |sigma C|.  Cyclic case only.
Decision decide_cond2(const SchurContext& ctx);

/// Condition (3): same test, quantified only over psi with
/// nu(psi) < min(t, d(psi)).  Equivalent to (2); cyclic case only.
Decision decide_cond3(const SchurContext& ctx);

/// Non-cyclic case: every psi of 2-power order outside G must satisfy
/// psi^{|psi G|} = 1 mod 2^{d+1} and lie in a sigma-coset of <rho, T(psi)>.
Decision decide_noncyclic(const SchurContext& ctx);

/// Dispatch on the case split.
Decision decide(const SchurContext& ctx);

/// FINITE iff nu = beta for every residue class mod lcm(m, p^{a+b+1}).
Decision oracle_decide(const SchurContext& ctx, u64 bound = kDefaultOracleStreamBound);

/// Sufficient-condition shortcuts; nullopt when none applies.
/// Certificates: "t=0", "t=1b=0", "SuffFinite", "SuffFinite2".
std::optional<Decision> fast_paths(const SchurContext& ctx);

/// Structure of CC(K)_p by prime: the r-local summand is cyclic of order
/// p^{nu(r)} for odd r not dividing m; the r = 2 and r = infinity summands
/// are undetermined here (order at most 2, exponent at most 2).
struct CCReportEntry {
    u64 r = 0;
    u64 nu = 0;
    std::string local_order;  // "p^nu"
    std::string generator;    // "(K(zeta_r)/K, zeta_{p^a})"
};
struct CCReport {
    std::vector<CCReportEntry> entries;
    std::string two_flag;
    std::string infinity_flag;
};
CCReport cc_report(const SchurContext& ctx, std::span<const u64> r_list);

}  // namespace schurcc
