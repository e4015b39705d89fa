#include "schurcc/decision.hpp"

#include <algorithm>

namespace schurcc {

std::string to_string(Verdict v) { return v == Verdict::Finite ? "FINITE" : "INFINITE"; }

std::string to_string(Method m) {
    switch (m) {
        case Method::Cond2: return "cond2";
        case Method::Cond3: return "cond3";
        case Method::Noncyclic: return "noncyclic";
        case Method::Oracle: return "oracle";
        case Method::Corollary: return "corollary";
    }
    return "?";
}

namespace {

Decision finite(Method m, std::string certificate = "") {
    Decision d;
    d.verdict = Verdict::Finite;
    d.method = m;
    d.certificate = std::move(certificate);
    return d;
}

Decision infinite(Method m, DecisionWitness w, std::string certificate = "") {
    Decision d;
    d.verdict = Verdict::Infinite;
    d.method = m;
    d.certificate = std::move(certificate);
    d.witness = std::move(w);
    return d;
}

bool coset_union_test(const SchurContext& ctx, const PsiProfile& prof,
                      const ResidueSubgroup& S) {
    UnitClass x = pow(prof.psi, prof.ord_mod_G);
    return in_coset_union(x, ctx.sigma, ctx.q, S).has_value();
}

}  // namespace

Decision decide_cond2(const SchurContext& ctx) {
    if (!ctx.cyclic_case) throw std::invalid_argument("decide_cond2: G/C must be cyclic");
    for (const UnitClass& psi : ctx.gamma_p) {
        PsiProfile prof = psi_profile(ctx, psi);
        if (!coset_union_test(ctx, prof, prof.T))
            return infinite(Method::Cond2,
                            {psi, prof, "psi^{|psi G|} not in any sigma^i T(psi)"});
    }
    return finite(Method::Cond2);
}

Decision decide_cond3(const SchurContext& ctx) {
    if (!ctx.cyclic_case) throw std::invalid_argument("decide_cond3: G/C must be cyclic");
    for (const UnitClass& psi : ctx.gamma_p) {
        PsiProfile prof = psi_profile(ctx, psi);
        if (prof.nu >= std::min(ctx.t, prof.d)) continue;
        if (!coset_union_test(ctx, prof, prof.T))
            return infinite(Method::Cond3,
                            {psi, prof, "psi^{|psi G|} not in any sigma^i T(psi)"});
    }
    return finite(Method::Cond3);
}

Decision decide_noncyclic(const SchurContext& ctx) {
    if (ctx.cyclic_case) throw std::invalid_argument("decide_noncyclic: G/C must be non-cyclic");
    u64 congruence_mod = 1ull << (*ctx.d_nc + 1);
    for (const UnitClass& psi : ctx.gamma_p) {
        if (ctx.G.contains(psi)) continue;
        PsiProfile prof = psi_profile(ctx, psi);
        UnitClass x = pow(psi, prof.ord_mod_G);
        if (x.value % congruence_mod != 1)
            return infinite(Method::Noncyclic,
                            {psi, prof, "psi^{|psi G|} moves zeta_{2^{d+1}}"});
        std::vector<u64> gens = prof.T.generators;
        gens.push_back(ctx.rho.value);
        ResidueSubgroup rho_t = subgroup_from_generators(ctx.f_conductor, gens);
        if (!coset_union_test(ctx, prof, rho_t))
            return infinite(Method::Noncyclic,
                            {psi, prof, "psi^{|psi G|} not in any sigma^i <rho, T(psi)>"});
    }
    return finite(Method::Noncyclic);
}

Decision decide(const SchurContext& ctx) {
    return ctx.cyclic_case ? decide_cond2(ctx) : decide_noncyclic(ctx);
}

Decision oracle_decide(const SchurContext& ctx, u64 bound) {
    std::optional<LocalIndexReport> failing;
    scan_residues_streaming(
        ctx,
        [&](const LocalIndexReport& rep) {
            if (rep.nu != rep.beta) {
                failing = rep;
                return false;
            }
            return true;
        },
        bound);
    if (failing) {
        Decision d;
        d.verdict = Verdict::Infinite;
        d.method = Method::Oracle;
        d.failing_class = std::move(failing);
        return d;
    }
    Decision d;
    d.verdict = Verdict::Finite;
    d.method = Method::Oracle;
    return d;
}

std::optional<Decision> fast_paths(const SchurContext& ctx) {
    if (ctx.cyclic_case) {
        if (ctx.t == 0) return finite(Method::Corollary, "SuffFinite");  // T(psi) = B throughout
        if (ctx.t + valuation(galois_group_exponent(ctx.field), ctx.p) <= ctx.a)
            return finite(Method::Corollary, "t=1b=0");
        bool all_large_nu = true;
        for (const UnitClass& psi : ctx.gamma_p) {
            PsiProfile prof = psi_profile(ctx, psi);
            if (prof.nu < std::min(ctx.t, prof.d)) {
                all_large_nu = false;
                break;
            }
        }
        if (all_large_nu) return finite(Method::Corollary, "SuffFinite");
    }
    // SuffFinite2: some psi with psi^{|psi G|} outside <sigma, rho, T(psi)>
    for (const UnitClass& psi : ctx.gamma_p) {
        PsiProfile prof = psi_profile(ctx, psi);
        std::vector<u64> gens = prof.T.generators;
        gens.push_back(ctx.rho.value);
        gens.push_back(ctx.sigma.value);
        ResidueSubgroup span = subgroup_from_generators(ctx.f_conductor, gens);
        if (!span.contains(pow(psi, prof.ord_mod_G).value))
            return infinite(Method::Corollary, {psi, prof, "psi^{|psi G|} not in <sigma, rho, T(psi)>"},
                            "SuffFinite2");
    }
    return std::nullopt;
}

CCReport cc_report(const SchurContext& ctx, std::span<const u64> r_list) {
    CCReport rep;
    for (u64 r : r_list) {
        if (r == 2 || !is_prime(r) || ctx.field.conductor % r == 0)
            throw std::invalid_argument("cc_report: r = " + std::to_string(r) +
                                        " must be an odd prime not dividing m");
        CCReportEntry e;
        e.r = r;
        e.nu = nu_r(ctx, r);
        e.local_order = std::to_string(ctx.p) + "^" + std::to_string(e.nu);
        u64 pa = 1;
        for (u64 i = 0; i < ctx.a; ++i) pa *= ctx.p;
        e.generator = "(K(zeta_" + std::to_string(r) + ")/K, zeta_" + std::to_string(pa) + ")";
        rep.entries.push_back(std::move(e));
    }
    rep.two_flag = "undetermined (out of scope); order at most 2";
    rep.infinity_flag = "undetermined (out of scope); exponent at most 2";
    return rep;
}

}  // namespace schurcc
