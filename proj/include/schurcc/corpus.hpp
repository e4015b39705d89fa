#pragma once

// Invariant suite over every subfield of Q(zeta_m) up to a conductor bound:
// for each field, each prime p with zeta_p in K and each b-mode, checks that
// the group-theoretic decision, its two equivalent conditions, the fast
// paths and the residue-class oracle all agree, plus the per-class local
// index properties (nu <= beta, class/prime consistency, diagnostics).

#include <iosfwd>
#include <vector>

#include "schurcc/decision.hpp"

namespace schurcc {

struct CorpusOptions {
    u64 max_conductor = 120;
    std::vector<u64> primes_filter;  // empty = all valid primes
    bool realize_primes = true;      // two primes per class (Lemma-alpha check)
    u64 prime_search_bound = kDefaultPrimeSearchBound;
    bool verbose = false;
};

struct CorpusResult {
    u64 fields = 0;
    u64 contexts = 0;
    u64 decisions_checked = 0;
    u64 classes_scanned = 0;
    u64 primes_realized = 0;
    u64 finite_count = 0;
    u64 infinite_count = 0;
    // decide/oracle/cond3/fast-path/scan-order disagreements
    std::vector<std::string> decision_violations;
    // per-class local-index failures (nu <= beta, realized-prime agreement,
    // diagnostics)
    std::vector<std::string> local_violations;
    // context invariants and decomposition failures
    std::vector<std::string> structure_violations;
    // b-mode verdict mismatches are findings (reported, not violations)
    std::vector<std::string> bmode_findings;

    bool ok() const {
        return decision_violations.empty() && local_violations.empty() &&
               structure_violations.empty();
    }
};

/// All subgroups of (Z/mZ)*, deterministically ordered.
std::vector<ResidueSubgroup> all_subgroups(u64 m);

/// All distinct normalized subfields of Q(zeta_m) over m <= max_conductor.
std::vector<FieldSpec> all_subfields_up_to(u64 max_conductor);

CorpusResult run_corpus(const CorpusOptions& opts, std::ostream& log);

/// Verifies that the generator map of unit_group(n) is a bijection onto the
/// residues coprime to n, for every n <= max_n.  Returns failing n (empty =
/// all good).
std::vector<u64> check_unit_group_bijectivity(u64 max_n);

}  // namespace schurcc
