#include "schurcc/fixtures.hpp"

#include <ostream>
#include <vector>

namespace schurcc {

FieldSpec simple_example_field(u64 p, u64 q) {
    if (!is_prime(p) || !is_prime(q) || p == 2 || q == 2)
        throw std::invalid_argument("simple_example_field: p, q must be odd primes");
    if (valuation(q - 1, p) != 2)
        throw std::invalid_argument("simple_example_field: need v_p(q-1) = 2");
    std::vector<u64> ps{p};
    FieldSpec K = index_p_subfield(p * q, ps);
    K.name = "index-" + std::to_string(p) + " subfield of Q(zeta_" + std::to_string(p * q) + ")";
    return K;
}

u64 finite_nontrivial_auxiliary_prime(u64 p, u64 q, u64 bound) {
    if (valuation(q - 1, p) != 2)
        throw std::invalid_argument("finite_nontrivial_auxiliary_prime: need v_p(q-1) = 2");
    u64 q2 = q * q;
    for (u64 r = 3; r <= bound; r += 2) {
        if (r == p || r == q || !is_prime(r)) continue;
        if (valuation(r - 1, p) != 2) continue;
        u64 op = powmod(r, p, q);
        if (op == 1) continue;                  // v_q(r^p - 1) must be 0
        if (powmod(r, p * p, q) != 1) continue; // p^2-th power must reach 1 mod q
        if (powmod(r % q2, p * p, q2) == 1) continue;  // but not mod q^2
        return r;
    }
    throw std::invalid_argument("finite_nontrivial_auxiliary_prime: bound exhausted");
}

FieldSpec finite_nontrivial_field(u64 p, u64 q, u64 r) {
    std::vector<u64> ps{p};
    FieldSpec K1 = index_p_subfield(p * p * q, ps);
    FieldSpec K2 = index_p_subfield(p * p * r, ps);
    FieldSpec K = compositum(K1, K2);
    K.name = "compositum fixture (p=" + std::to_string(p) + ", q=" + std::to_string(q) +
             ", r=" + std::to_string(r) + ")";
    return K;
}

FieldSpec zeta_q_sqrt2_field(u64 q) {
    if (!is_prime(q) || q <= 5)
        throw std::invalid_argument("zeta_q_sqrt2_field: q must be a prime greater than 5");
    FieldSpec K = compositum(cyclotomic_field(q), quadratic_field(2));
    K.name = "Q(zeta_" + std::to_string(q) + ", sqrt 2)";
    return K;
}

namespace {

struct FixtureRun {
    std::string name;
    std::vector<std::string> failures;

    void check(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    template <typename T, typename U>
    void check_eq(const T& got, const U& want, const std::string& what) {
        if (!(got == static_cast<T>(want)))
            failures.push_back(what + " (got " + std::to_string(got) + ")");
    }
};

void fixture_rationals(FixtureRun& run) {
    FieldSpec K = rationals();
    for (BMode mode : {BMode::Definition, BMode::Example}) {
        SchurContext ctx = build_context(K, 2, mode);
        assert_context_invariants(ctx);
        run.check(decide(ctx).verdict == Verdict::Finite, "decide(Q, 2) must be FINITE");
        run.check(oracle_decide(ctx).verdict == Verdict::Finite, "oracle(Q, 2) must be FINITE");
    }
}

void fixture_cyclotomics(FixtureRun& run) {
    for (u64 m : {3, 4, 5, 7, 8, 9, 12, 15, 16, 20}) {
        FieldSpec K = cyclotomic_field(m);
        std::vector<u64> primes{2};
        for (const auto& pp : factorize(K.conductor))
            if (pp.prime != 2) primes.push_back(pp.prime);
        for (u64 p : primes) {
            SchurContext ctx = build_context(K, p);
            assert_context_invariants(ctx);
            run.check(decide(ctx).verdict == Verdict::Finite,
                      "decide(Q(zeta_" + std::to_string(m) + "), " + std::to_string(p) +
                          ") must be FINITE");
            run.check(oracle_decide(ctx).verdict == Verdict::Finite,
                      "oracle(Q(zeta_" + std::to_string(m) + "), " + std::to_string(p) +
                          ") must be FINITE");
        }
    }
}

void fixture_simple_example(FixtureRun& run) {
    const u64 p = 3, q = 19;
    FieldSpec K = simple_example_field(p, q);
    run.check_eq(K.conductor, 57ull, "conductor must be 57");
    run.check(K.fixing_group.elements == std::vector<u64>({1, 7, 49}),
              "fixing subgroup must be {1, 7, 49}");

    SchurContext ctx = build_context(K, p);
    assert_context_invariants(ctx);
    run.check_eq(ctx.a, 1ull, "a = 1");
    run.check_eq(ctx.f_conductor, 171ull, "F-conductor = 171");
    run.check_eq(ctx.G.order(), 9ull, "|G| = 9");
    run.check_eq(ctx.C.order(), 3ull, "|C| = 3");
    run.check_eq(subgroup_exponent(ctx.G), 3ull, "G elementary abelian of order p^2");
    QuotientData gc = quotient_data(ctx.G, ctx.C);
    run.check(gc.is_cyclic && gc.order == p, "G/C cyclic of order p");

    // an element psi of Gamma_p with psi^p generating C: nu = 0, d = 1, T = 1
    bool found = false;
    for (const UnitClass& psi : ctx.gamma_p) {
        PsiProfile prof = psi_profile(ctx, psi);
        if (prof.ord_mod_G != p) continue;
        UnitClass cube = pow(psi, p);
        if (!ctx.C.contains(cube.value) || cube.is_identity()) continue;
        found = true;
        run.check_eq(prof.nu, 0ull, "nu(psi) = 0");
        run.check_eq(prof.d, 1ull, "d(psi) = 1");
        run.check(prof.T.is_trivial(), "T(psi) = 1");
        run.check(!in_coset_union(cube, ctx.sigma, ctx.q, prof.T).has_value(),
                  "psi^p must avoid every sigma^i T(psi)");
        break;
    }
    run.check(found, "some psi in Gamma_p has psi^p generating C");

    run.check(decide_cond2(ctx).verdict == Verdict::Infinite, "cond2 INFINITE");
    run.check(decide_cond3(ctx).verdict == Verdict::Infinite, "cond3 INFINITE");
    auto fast = fast_paths(ctx);
    run.check(fast && fast->verdict == Verdict::Infinite && fast->certificate == "SuffFinite2",
              "SuffFinite2 fast path fires INFINITE");
    run.check(oracle_decide(ctx).verdict == Verdict::Infinite, "oracle INFINITE");
}

void fixture_finite_nontrivial(FixtureRun& run) {
    const u64 p = 3, q = 19;
    u64 r = finite_nontrivial_auxiliary_prime(p, q);
    run.check_eq(r, 73ull, "auxiliary prime of the search recipe");
    FieldSpec K = finite_nontrivial_field(p, q, r);
    run.check_eq(K.conductor, p * p * q * r, "conductor = p^2 q r");

    SchurContext ctx = build_context(K, p);
    assert_context_invariants(ctx);
    run.check_eq(ctx.a, 2ull, "a = 2");
    run.check_eq(ctx.b, 2ull, "b = 2");
    run.check_eq(ctx.f_conductor, 81 * q * r, "F-conductor = p^4 q r");
    run.check_eq(ctx.t, 1ull, "t = v_p(exp B) = 1");
    run.check_eq(static_cast<u64>(valuation(galois_group_exponent(K), p)), 1ull,
                 "v_p(exp Gal(K/Q)) = 1");

    auto fast = fast_paths(ctx);
    run.check(fast && fast->verdict == Verdict::Finite && fast->certificate == "t=1b=0",
              "t=1b=0 fast path fires FINITE");
    run.check(decide_cond2(ctx).verdict == Verdict::Finite, "cond2 FINITE");
    run.check(decide_cond3(ctx).verdict == Verdict::Finite, "cond3 FINITE");
    run.check(oracle_decide(ctx).verdict == Verdict::Finite, "oracle FINITE");

    // at the ramified prime r itself: v_p(e) = 1, v_p(|W(K_r)|) = 3, nu = 0
    RamifiedReport ram = ramified_report(ctx, r);
    run.check_eq(ram.inertia_order_in_G, p, "|inertia(r) in G| = p");
    run.check_eq(ram.f, p, "f(K/Q, r) = p");
    run.check_eq(ram.w_valuation, 3ull, "v_p(|W(K_r)|) = 3");
    run.check_eq(ram.nu, 0ull, "nu at the ramified prime = 0");
}

void fixture_zeta_q_sqrt2(FixtureRun& run) {
    const u64 q = 7;
    FieldSpec K = zeta_q_sqrt2_field(q);
    run.check_eq(K.conductor, 56ull, "conductor = 56");
    run.check(K.fixing_group.elements == std::vector<u64>({1, 15}), "fixing subgroup = <15>");
    run.check(!contains_root_of_unity(K, 4), "zeta_4 not in K");

    SchurContext ctx = build_context(K, 2, BMode::Example);
    assert_context_invariants(ctx);
    run.check_eq(ctx.a + ctx.b, 6ull, "a + b = 6 in example mode");
    run.check_eq(ctx.f_conductor, 448ull, "F-conductor = 448 = 64 q");
    run.check(ctx.C.is_trivial(), "C = 1");
    run.check(!ctx.cyclic_case, "non-cyclic case");
    run.check(ctx.d_nc && *ctx.d_nc == 3, "d = 3");

    u64 r = 0;
    for (u64 cand = 5;; cand += 64) {
        if (is_prime(cand) && powmod(cand, 2, q) == 1) {
            r = cand;
            break;
        }
    }
    run.check_eq(r, 197ull, "smallest prime with r = 5 mod 64, r^2 = 1 mod q");

    UnitClass psi = frobenius(ctx, r);
    run.check(!ctx.G.contains(psi), "psi_r not in G");
    run.check_eq(order_mod_subgroup(psi, ctx.G), 2ull, "|psi_r G| = 2");
    GDecomposition dec = decompose_G(ctx, pow(psi, 2));
    run.check(dec.j_rho == 0 && dec.j_sigma == 3 && dec.eta.is_identity(),
              "psi_r^2 = sigma^3 (decomposition (0, 3, 1))");
    run.check_eq(nu_r(ctx, r), 0ull, "nu(r) = 0");
    run.check_eq(beta_r(ctx, r), 1ull, "beta(r) = 1");

    run.check(decide(ctx).verdict == Verdict::Infinite, "example mode INFINITE");
    run.check(oracle_decide(ctx).verdict == Verdict::Infinite, "oracle INFINITE");

    SchurContext ctx_def = build_context(K, 2, BMode::Definition);
    assert_context_invariants(ctx_def);
    run.check(decide(ctx_def).verdict == Verdict::Infinite, "definition mode INFINITE");
    run.check(oracle_decide(ctx_def).verdict == Verdict::Infinite,
              "definition mode oracle INFINITE");
}

int report(std::ostream& out, FixtureRun& run) {
    if (run.failures.empty()) {
        out << "ok   " << run.name << "\n";
        return 0;
    }
    out << "FAIL " << run.name << "\n";
    for (const auto& f : run.failures) out << "     - " << f << "\n";
    return 1;
}

}  // namespace

int run_fixtures(std::ostream& out) {
    int failed = 0;
    {
        FixtureRun run{"K = Q, p = 2 (S(Q) = CC(Q))", {}};
        fixture_rationals(run);
        failed += report(out, run);
    }
    {
        FixtureRun run{"cyclotomic fields (S = CC)", {}};
        fixture_cyclotomics(run);
        failed += report(out, run);
    }
    {
        FixtureRun run{"simple example with infinite index (p=3, q=19)", {}};
        fixture_simple_example(run);
        failed += report(out, run);
    }
    {
        FixtureRun run{"finite nontrivial index (p=3, q=19)", {}};
        fixture_finite_nontrivial(run);
        failed += report(out, run);
    }
    {
        FixtureRun run{"K = Q(zeta_7, sqrt 2), p = 2", {}};
        fixture_zeta_q_sqrt2(run);
        failed += report(out, run);
    }
    return failed;
}

}  // namespace schurcc
