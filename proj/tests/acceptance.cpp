// Acceptance suite: one pass/fail line per criterion.  Exits nonzero when
// any criterion fails.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "schurcc/corpus.hpp"
#include "schurcc/fixtures.hpp"

using namespace schurcc;

namespace {

int g_failures = 0;

struct Criterion {
    explicit Criterion(std::string l) : label(std::move(l)) {}

    std::string label;
    std::vector<std::string> problems;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void check(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
    void finish(double limit_seconds = 0) {
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (limit_seconds > 0 && secs > limit_seconds) {
            std::ostringstream os;
            os << "runtime " << secs << " s exceeds " << limit_seconds << " s";
            problems.push_back(os.str());
        }
        if (problems.empty()) {
            std::printf("PASS  %s  (%.2f s)\n", label.c_str(), secs);
        } else {
            ++g_failures;
            std::printf("FAIL  %s  (%.2f s)\n", label.c_str(), secs);
            for (const auto& p : problems) std::printf("      - %s\n", p.c_str());
        }
        std::fflush(stdout);
    }
};

void criterion1() {
    Criterion c{"criterion 1: K = Q, p = 2 is FINITE by both routes"};
    SchurContext ctx = build_context(rationals(), 2);
    c.check(decide(ctx).verdict == Verdict::Finite, "decide != FINITE");
    c.check(oracle_decide(ctx).verdict == Verdict::Finite, "oracle != FINITE");
    c.finish(1.0);
}

void criterion2() {
    Criterion c{"criterion 2: cyclotomic fields are FINITE by both routes"};
    for (u64 m : {3, 4, 5, 7, 8, 9, 12, 15, 16, 20}) {
        FieldSpec K = cyclotomic_field(m);
        std::vector<u64> ps{2};
        for (const auto& pp : factorize(K.conductor))
            if (pp.prime != 2) ps.push_back(pp.prime);
        for (u64 p : ps) {
            SchurContext ctx = build_context(K, p);
            std::string tag = "m=" + std::to_string(m) + ", p=" + std::to_string(p);
            c.check(decide(ctx).verdict == Verdict::Finite, tag + ": decide != FINITE");
            c.check(oracle_decide(ctx).verdict == Verdict::Finite, tag + ": oracle != FINITE");
        }
    }
    c.finish(10.0);
}

void criterion3() {
    Criterion c{"criterion 3: simple example (p=3, q=19) is INFINITE with pinned context"};
    FieldSpec K = simple_example_field(3, 19);
    SchurContext ctx = build_context(K, 3);
    assert_context_invariants(ctx);
    c.check(ctx.G.order() == 9, "|G| != 9");
    c.check(subgroup_exponent(ctx.G) == 3, "G not elementary abelian");
    c.check(ctx.a == 1, "a != 1");
    c.check(ctx.f_conductor == 171, "F-conductor != 171");

    bool profile_found = false;
    for (const UnitClass& psi : ctx.gamma_p) {
        PsiProfile prof = psi_profile(ctx, psi);
        if (prof.nu == 0 && prof.d == 1 && prof.T.is_trivial()) profile_found = true;
    }
    c.check(profile_found, "no psi with nu = 0, d = 1, T = 1");

    c.check(decide_cond2(ctx).verdict == Verdict::Infinite, "cond2 != INFINITE");
    c.check(decide_cond3(ctx).verdict == Verdict::Infinite, "cond3 != INFINITE");
    auto fast = fast_paths(ctx);
    c.check(fast && fast->certificate == "SuffFinite2" && fast->verdict == Verdict::Infinite,
            "SuffFinite2 fast path did not fire INFINITE");
    c.check(oracle_decide(ctx).verdict == Verdict::Infinite, "oracle != INFINITE");
    c.finish(5.0);
}

void criterion4() {
    Criterion c{"criterion 4: finite nontrivial example (p=3, q=19) is FINITE"};
    u64 r = finite_nontrivial_auxiliary_prime(3, 19);
    FieldSpec K = finite_nontrivial_field(3, 19, r);
    SchurContext ctx = build_context(K, 3);
    assert_context_invariants(ctx);
    c.check(ctx.a == 2, "a != 2");
    c.check(ctx.f_conductor == 81 * 19 * r, "F-conductor != p^4 q r");
    c.check(ctx.t == 1, "t != 1");
    c.check(valuation(galois_group_exponent(K), 3) == 1, "v_p(exp Gal(K/Q)) != 1");

    auto fast = fast_paths(ctx);
    c.check(fast && fast->certificate == "t=1b=0" && fast->verdict == Verdict::Finite,
            "t=1b=0 fast path did not fire FINITE");
    c.check(decide_cond2(ctx).verdict == Verdict::Finite, "cond2 != FINITE");
    c.check(decide_cond3(ctx).verdict == Verdict::Finite, "cond3 != FINITE");
    c.check(oracle_decide(ctx).verdict == Verdict::Finite, "oracle != FINITE");

    c.check(ramified_report(ctx, r).nu == 0, "nu at the auxiliary ramified prime != 0");
    c.finish(60.0);
}

void criterion5() {
    Criterion c{"criterion 5: K = Q(zeta_7, sqrt 2), p = 2 is INFINITE in both b-modes"};
    FieldSpec K = zeta_q_sqrt2_field(7);
    SchurContext ctx = build_context(K, 2, BMode::Example);
    assert_context_invariants(ctx);
    c.check(ctx.f_conductor == 448, "F-conductor != 448");
    c.check(ctx.C.is_trivial(), "C != 1");
    c.check(ctx.d_nc && *ctx.d_nc == 3, "d != 3");

    u64 r = 0;
    for (u64 cand = 5; r == 0; cand += 64)
        if (is_prime(cand) && powmod(cand, 2, 7) == 1) r = cand;
    GDecomposition dec = decompose_G(ctx, pow(frobenius(ctx, r), 2));
    c.check(dec.j_rho == 0 && dec.j_sigma == 3 && dec.eta.is_identity(),
            "decompose_G(psi_r^2) != (0, 3, 1)");
    c.check(nu_r(ctx, r) == 0, "nu(r) != 0");
    c.check(beta_r(ctx, r) == 1, "beta(r) != 1");

    c.check(decide(ctx).verdict == Verdict::Infinite, "example mode != INFINITE");
    SchurContext ctx_def = build_context(K, 2, BMode::Definition);
    c.check(decide(ctx_def).verdict == Verdict::Infinite, "definition mode != INFINITE");
    c.finish(10.0);
}

CorpusResult run_shared_corpus() {
    CorpusOptions opts;
    opts.max_conductor = 120;
    opts.realize_primes = true;
    std::cout << "running the conductor <= 120 corpus (criteria 6-8)...\n";
    std::ostringstream sink;
    CorpusResult result = run_corpus(opts, sink);
    std::cout << sink.str();
    return result;
}

void criterion6(const CorpusResult& corpus) {
    Criterion c{"criterion 6: decide = oracle and cond2 = cond3 over the corpus"};
    c.check(corpus.structure_violations.empty(), "context structure violations (see log)");
    for (const auto& v : corpus.decision_violations) c.check(false, v);
    c.finish();
}

void criterion7(const CorpusResult& corpus) {
    Criterion c{"criterion 7: local-index properties over the corpus"};
    for (const auto& v : corpus.local_violations) c.check(false, v);
    c.finish();
}

void criterion8(const CorpusResult& corpus) {
    Criterion c{"criterion 8: algebra-layer properties"};

    // complement_of_cyclic on 1000 randomized instances with |C| <= 4096;
    // postconditions are asserted on every call
    std::mt19937_64 rng(424242);
    int runs = 0;
    int complements = 0;
    while (runs < 1000) {
        u64 n = 3 + rng() % 60000;
        UnitGroup g = unit_group(n);
        if (g.generators.empty()) continue;
        std::vector<u64> gens;
        size_t count = 1 + rng() % std::min<size_t>(3, g.generators.size());
        for (size_t i = 0; i < count; ++i) {
            const UnitClass& gen = g.generators[rng() % g.generators.size()];
            gens.push_back(powmod(gen.value, 1 + rng() % element_order(gen), n));
        }
        ResidueSubgroup C;
        try {
            C = subgroup_from_generators(n, gens);
        } catch (const ResourceLimitError&) {
            continue;
        }
        if (C.order() > 4096) continue;
        UnitClass r{n, C.elements[rng() % C.order()]};
        try {
            if (complement_of_cyclic(C, r)) ++complements;
        } catch (const SchurError& e) {
            c.check(false, std::string("complement postcondition: ") + e.what());
        }
        ++runs;
    }
    c.check(runs == 1000, "randomized complement run count != 1000");
    c.check(complements > 0, "no complement ever found (generator bug?)");

    // decompose_G recomposition over all of G for every corpus context is
    // exercised inside the corpus run
    c.check(corpus.structure_violations.empty(), "decompose/recompose violations (see log)");

    // unit group bijectivity for n <= 10^4
    std::vector<u64> bad = check_unit_group_bijectivity(10'000);
    for (u64 n : bad) c.check(false, "unit_group not bijective for n = " + std::to_string(n));

    c.finish();
}

}  // namespace

int main() {
    try {
        criterion1();
        criterion2();
        criterion3();
        criterion4();
        criterion5();
        CorpusResult corpus = run_shared_corpus();
        criterion6(corpus);
        criterion7(corpus);
        criterion8(corpus);
    } catch (const std::exception& e) {
        std::printf("FAIL  acceptance aborted: %s\n", e.what());
        return 1;
    }
    if (g_failures == 0) {
        std::printf("acceptance: all criteria pass\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
