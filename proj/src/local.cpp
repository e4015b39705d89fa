#include "schurcc/local.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace schurcc {

namespace {

constexpr u64 kValuationCap = 320;

u64 pow_u64_nocheck(u64 base, u64 exp) {
    u64 r = 1;
    while (exp--) r *= base;
    return r;
}

// Shared computation of (f_r, f, nu, beta, decomposition, case) from the
// Frobenius class and d; nu and beta depend only on these.
void fill_from_psi_and_d(const SchurContext& ctx, const UnitClass& psi, u64 d,
                         LocalIndexReport& rep) {
    rep.psi = psi;
    rep.d = d;
    rep.f_r = order_mod_subgroup(psi, ctx.G);
    rep.f = valuation(rep.f_r, ctx.p);
    rep.nu = (ctx.a > rep.f) ? ctx.a - rep.f : 0;

    UnitClass phi_r = pow(psi, rep.f_r);
    rep.decomposition = decompose_G(ctx, phi_r);

    if (!ctx.cyclic_case &&
        (rep.decomposition.j_sigma % 2) != (rep.decomposition.j_rho % 2)) {
        rep.case_tag = LocalCase::NoncyclicParity;
        rep.beta = 1;
        if (ctx.a != 1)
            throw InvariantViolationError("parity case outside p^a = 2");
    } else {
        rep.case_tag = LocalCase::Generic;
        ResidueSubgroup bpd = power_subgroup(ctx.B, pow_u64_nocheck(ctx.p, d));
        u64 eta_ord = order_mod_subgroup(rep.decomposition.eta, bpd);
        rep.beta = std::max<u64>(rep.nu, valuation(eta_ord, ctx.p));
    }
    if (rep.nu > rep.beta)
        throw InvariantViolationError("nu(r) > beta(r)");
}

}  // namespace

UnitClass frobenius(const SchurContext& ctx, u64 r) {
    u64 n = ctx.f_conductor;
    if (std::gcd(r % n, n) != 1)
        throw std::invalid_argument("frobenius: r = " + std::to_string(r) +
                                    " divides the conductor of F");
    return UnitClass{n, r % n};
}

u64 nu_r(const SchurContext& ctx, u64 r) {
    u64 f = valuation(order_mod_subgroup(frobenius(ctx, r), ctx.G), ctx.p);
    return (ctx.a > f) ? ctx.a - f : 0;
}

u64 beta_r(const SchurContext& ctx, u64 r) {
    LocalIndexReport rep;
    u64 vp = (r % ctx.p == 1) ? static_cast<u64>(valuation(r - 1, ctx.p)) : 0;
    fill_from_psi_and_d(ctx, frobenius(ctx, r), std::min(ctx.a, vp), rep);
    return rep.beta;
}

u64 valuation_of_power_minus_one(u64 r, u64 f, u64 p) {
    if (r < 2 || f == 0) throw std::invalid_argument("valuation_of_power_minus_one: bad input");
    if (p == 2) {
        // lifting the exponent at 2: r odd
        if (r % 2 == 0) return 0;
        u64 v1 = valuation(r - 1, 2);
        if (f % 2 == 1) return v1;
        return v1 + valuation(r + 1, 2) + valuation(f, 2) - 1;
    }
    if (r % p == 0) return 0;
    // order of r mod p
    u64 o = element_order(unit_class(p, r % p));
    if (f % o != 0) return 0;
    // base = v_p(r^o - 1) by climbing the prime-power ladder
    u64 base = 0;
    u64 pj = 1;
    while (base < kValuationCap) {
        if (pj > (std::numeric_limits<u64>::max() >> 1) / p) return kValuationCap;
        pj *= p;
        if (powmod(r % pj, o, pj) != 1) break;
        ++base;
    }
    // o | p-1, so v_p(f/o) = v_p(f)
    return std::min(base + static_cast<u64>(valuation(f / o, p)), kValuationCap);
}

u64 nu_r_diagnostic(const SchurContext& ctx, u64 r) {
    if (!is_prime(r) || r == 2 || ctx.field.conductor % r == 0)
        throw std::invalid_argument("nu_r_diagnostic: r must be an odd prime not dividing m");
    u64 f_r = order_mod_subgroup(frobenius(ctx, r), ctx.G);
    u64 e_val = (r % ctx.p == 1) ? static_cast<u64>(valuation(r - 1, ctx.p)) : 0;
    u64 w_val = valuation_of_power_minus_one(r, f_r, ctx.p);
    return (ctx.a + e_val > w_val) ? ctx.a + e_val - w_val : 0;
}

LocalIndexReport local_report_for_prime(const SchurContext& ctx, u64 r) {
    if (!is_prime(r) || r == 2 || ctx.field.conductor % r == 0)
        throw std::invalid_argument("local_report_for_prime: r must be an odd prime not dividing m");
    LocalIndexReport rep;
    rep.source = r;
    rep.source_is_prime = true;
    u64 vp = (r % ctx.p == 1) ? static_cast<u64>(valuation(r - 1, ctx.p)) : 0;
    fill_from_psi_and_d(ctx, frobenius(ctx, r), std::min(ctx.a, vp), rep);
    u64 w_val = valuation_of_power_minus_one(r, rep.f_r, ctx.p);
    u64 e_val = vp;
    rep.nu_diag = (ctx.a + e_val > w_val) ? ctx.a + e_val - w_val : 0;
    if (w_val < ctx.a)
        throw InvariantViolationError("v_p(|W(K_r)|) < a; zeta_{p^a} must embed in K_r");
    rep.a_r = w_val - ctx.a;
    return rep;
}

u64 scan_modulus(const SchurContext& ctx) {
    return std::lcm(ctx.field.conductor, ctx.zeta_modulus * ctx.p);
}

LocalIndexReport local_report_for_class(const SchurContext& ctx, u64 u) {
    u64 M = scan_modulus(ctx);
    u %= M;
    if (std::gcd(u, M) != 1)
        throw std::invalid_argument("local_report_for_class: class not coprime to M");
    LocalIndexReport rep;
    rep.source = u;
    rep.source_is_prime = false;
    rep.class_modulus = M;
    u64 pcap = ctx.zeta_modulus * ctx.p;  // p^{a+b+1}
    u64 residue = u % pcap;
    u64 d;
    if (residue == 1 % pcap) {
        d = ctx.a;  // v_p(r-1) > a+b for every prime in the class; capped
    } else {
        u64 vp = (residue % ctx.p == 1) ? static_cast<u64>(valuation(residue - 1, ctx.p)) : 0;
        d = std::min(ctx.a, vp);
    }
    fill_from_psi_and_d(ctx, UnitClass{ctx.f_conductor, u % ctx.f_conductor}, d, rep);
    return rep;
}

bool scan_residues_streaming(const SchurContext& ctx,
                             const std::function<bool(const LocalIndexReport&)>& fn, u64 bound) {
    u64 M = scan_modulus(ctx);
    if (euler_phi(M) > bound)
        throw ResourceLimitError("residue scan over " + std::to_string(euler_phi(M)) +
                                 " classes exceeds bound " + std::to_string(bound));
    for (u64 u = 1; u < M; ++u) {
        if (std::gcd(u, M) != 1) continue;
        if (!fn(local_report_for_class(ctx, u))) return false;
    }
    return true;
}

std::vector<LocalIndexReport> scan_residues(const SchurContext& ctx, u64 bound) {
    u64 M = scan_modulus(ctx);
    if (euler_phi(M) > bound)
        throw ResourceLimitError("residue scan over " + std::to_string(euler_phi(M)) +
                                 " classes exceeds bound " + std::to_string(bound));
    std::vector<LocalIndexReport> out;
    out.reserve(euler_phi(M));
    scan_residues_streaming(
        ctx,
        [&](const LocalIndexReport& rep) {
            out.push_back(rep);
            return true;
        },
        bound);
    return out;
}

std::optional<u64> find_prime_in_class(u64 u, u64 M, u64 bound) {
    if (M == 0) throw std::invalid_argument("find_prime_in_class: M must be positive");
    u %= M;
    if (std::gcd(u, M) != 1)
        throw std::invalid_argument("find_prime_in_class: class not coprime to modulus");
    for (u64 r = (u == 0 ? M : u);; r += M) {
        if (r > bound) return std::nullopt;
        if (is_prime(r)) return r;
        if (r > std::numeric_limits<u64>::max() - M) return std::nullopt;
    }
}

RamifiedReport ramified_report(const SchurContext& ctx, u64 r) {
    u64 m = ctx.field.conductor;
    if (!is_prime(r) || r == 2 || r == ctx.p || m % r != 0)
        throw std::invalid_argument(
            "ramified_report: r must be an odd prime dividing m, distinct from p");
    RamifiedReport rep;
    rep.r = r;

    // inertia at r inside Gamma is {x = 1 mod n_F / r^c}; intersect with G
    u64 n = ctx.f_conductor;
    u64 rc = pow_u64_nocheck(r, valuation(n, r));
    u64 unram = n / rc;
    u64 count = 0;
    for (u64 g : ctx.G.elements)
        if (g % unram == 1 % unram) ++count;
    rep.inertia_order_in_G = count;
    rep.e_valuation = valuation(count, ctx.p);

    // residue degree of r in K/Q: order of the Frobenius lift in the
    // unramified quotient (Z/m'')*/image(H)
    u64 m2 = m / pow_u64_nocheck(r, valuation(m, r));
    std::vector<u64> hbar_gens;
    for (u64 h : ctx.field.fixing_group.elements) hbar_gens.push_back(h % m2);
    ResidueSubgroup hbar = subgroup_from_generators(m2, hbar_gens);
    rep.f = order_mod_subgroup(unit_class(m2, r % m2), hbar);

    rep.w_valuation = valuation_of_power_minus_one(r, rep.f, ctx.p);
    rep.nu = (ctx.a + rep.e_valuation > rep.w_valuation)
                 ? ctx.a + rep.e_valuation - rep.w_valuation
                 : 0;
    return rep;
}

}  // namespace schurcc
