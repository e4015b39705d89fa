#pragma once

// The built-in worked examples: field constructions, their pinned invariants
// and verdicts.  run_fixtures executes every assertion and reports one line
// per fixture; tests and the `examples` CLI subcommand share this code.

#include <iosfwd>
#include <string>

#include "schurcc/decision.hpp"

namespace schurcc {

/// K = the index-p subextension of Q(zeta_pq)/Q(zeta_p); requires
/// v_p(q-1) = 2.  With p = 3, q = 19 this is the infinite-index example.
FieldSpec simple_example_field(u64 p, u64 q);

/// Search for the auxiliary prime of the finite-nontrivial example:
/// the smallest prime r with v_p(r-1) = 2, v_q(r^p - 1) = 0 and
/// v_q(r^{p^2} - 1) = 1.
u64 finite_nontrivial_auxiliary_prime(u64 p, u64 q, u64 bound = 1'000'000);

/// K = compositum of the index-p subextensions of Q(zeta_{p^2 q})/Q(zeta_{p^2})
/// and Q(zeta_{p^2 r})/Q(zeta_{p^2}).
FieldSpec finite_nontrivial_field(u64 p, u64 q, u64 r);

/// K = Q(zeta_q, sqrt 2), conductor 8q.
FieldSpec zeta_q_sqrt2_field(u64 q);

/// Runs all fixture assertions; prints one line per fixture to out.
/// Returns the number of failed fixtures.
int run_fixtures(std::ostream& out);

}  // namespace schurcc
