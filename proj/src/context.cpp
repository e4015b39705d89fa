#include "schurcc/context.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace schurcc {

namespace {

u64 pow_u64(u64 base, u64 exp) {
    u64 r = 1;
    for (u64 i = 0; i < exp; ++i) {
        if (r > (std::numeric_limits<u64>::max() >> 1) / base)
            throw ResourceLimitError("prime power exceeds the 64-bit modulus range");
        r *= base;
    }
    return r;
}

}  // namespace

u64 b_value(const FieldSpec& K, u64 p, u64 a, u64 s, BMode mode) {
    if (p != 2 || contains_root_of_unity(K, 4)) return s;
    // p = 2, zeta_4 not in K, so a = 1
    u64 test_mod = pow_u64(2, 2 * a + s);
    bool noncyclic = !quotient_data(relative_gal_image(K, test_mod),
                                    trivial_subgroup(test_mod))
                          .is_cyclic;
    if (!noncyclic) return s + 1;
    u64 v = valuation(cyclotomic_intersection_degree(K, pow_u64(2, s)), 2);
    if (mode == BMode::Definition) return s + v + 2;
    return s + v + 2 - a;  // so that a + b = s + v + 2
}

namespace {

// Residue of x modulo the p^{a+b} component.
u64 zeta_component(const SchurContext& ctx, u64 x) { return x % ctx.zeta_modulus; }

std::vector<u64> ordered(std::vector<u64> v, ScanOrder order) {
    if (order == ScanOrder::Descending) std::reverse(v.begin(), v.end());
    return v;
}

void select_rho_sigma(SchurContext& ctx, ScanOrder order) {
    u64 n = ctx.f_conductor;
    u64 gc = ctx.G.order() / ctx.C.order();

    if (ctx.cyclic_case) {
        ctx.rho = identity_class(n);
        ctx.B = ctx.C;
        for (u64 g : ordered(ctx.G.elements, order)) {
            UnitClass cand{n, g};
            if (order_mod_subgroup(cand, ctx.C) == gc) {
                ctx.sigma = cand;
                ctx.q = gc;
                return;
            }
        }
        throw SelectionFailureError("no generator of the cyclic quotient G/C found");
    }

    // non-cyclic: rho in D\C with <rho^2> a direct factor of C, then sigma
    // with sigma = 1 mod 4 and G/C = <rho C> x <sigma C>.  sigma candidates
    // are ordered by their action on zeta (value mod p^{a+b}) first; the
    // residue value only breaks ties.
    std::vector<u64> rho_candidates;
    for (u64 d : ctx.D.elements)
        if (!ctx.C.contains(d)) rho_candidates.push_back(d);

    std::vector<u64> sigma_candidates;
    for (u64 g : ctx.G.elements)
        if (g % 4 == 1) sigma_candidates.push_back(g);
    std::stable_sort(sigma_candidates.begin(), sigma_candidates.end(),
                     [&](u64 x, u64 y) { return zeta_component(ctx, x) < zeta_component(ctx, y); });

    u64 q_target = gc / 2;
    for (u64 rv : ordered(rho_candidates, order)) {
        UnitClass rho{n, rv};
        auto B = complement_of_cyclic(ctx.C, pow(rho, 2));
        if (!B) continue;
        for (u64 sv : ordered(sigma_candidates, order)) {
            UnitClass sigma{n, sv};
            if (order_mod_subgroup(sigma, ctx.C) != q_target) continue;
            // <rho C> intersect <sigma C> trivial, i.e. rho C not in <sigma C>
            bool rho_in_sigma_span = false;
            UnitClass cur = identity_class(n);
            for (u64 i = 0; i < q_target; ++i) {
                if (ctx.C.contains(mul(inverse(cur), rho).value)) {
                    rho_in_sigma_span = true;
                    break;
                }
                cur = mul(cur, sigma);
            }
            if (rho_in_sigma_span) continue;
            ctx.rho = rho;
            ctx.sigma = sigma;
            ctx.B = std::move(*B);
            ctx.q = q_target;
            return;
        }
    }
    throw SelectionFailureError("no admissible (rho, sigma, B) found in the non-cyclic case");
}

}  // namespace

SchurContext build_context(const FieldSpec& K, u64 p, BMode mode, ScanOrder order) {
    if (!is_prime(p)) throw std::invalid_argument("build_context: p must be prime");
    SchurContext ctx;
    ctx.p = p;
    ctx.field = K;
    ctx.mode = mode;
    ctx.a = a_value(K, p);
    ctx.s = s_value(K, p);
    ctx.b = b_value(K, p, ctx.a, ctx.s, mode);
    ctx.zeta_modulus = pow_u64(p, ctx.a + ctx.b);
    ctx.f_conductor = std::lcm(K.conductor, ctx.zeta_modulus);

    ctx.gamma = unit_group(ctx.f_conductor);
    ctx.G = subgroup_from_generators(
        ctx.f_conductor, preimage_generators(ctx.f_conductor, K.conductor, K.fixing_group));
    if (ctx.G.order() * euler_phi(K.conductor) !=
        K.fixing_group.order() * ctx.gamma.order)
        throw InvariantViolationError("|G| != |H| * phi(n_F) / phi(m)");

    std::vector<u64> c_elems, d_elems;
    u64 zm = ctx.zeta_modulus;
    for (u64 g : ctx.G.elements) {
        u64 r = g % zm;
        if (r == 1 % zm) {
            c_elems.push_back(g);
            d_elems.push_back(g);
        } else if (r == zm - 1) {
            d_elems.push_back(g);
        }
    }
    ctx.C.modulus = ctx.f_conductor;
    ctx.C.generators = c_elems;
    ctx.C.elements = c_elems;
    ctx.D.modulus = ctx.f_conductor;
    ctx.D.generators = d_elems;
    ctx.D.elements = d_elems;

    if (ctx.D == ctx.G)
        throw InvariantViolationError("D = G; contradicts the definition of b");
    ctx.cyclic_case = (ctx.C == ctx.D);
    if (p != 2 && !ctx.cyclic_case)
        throw InvariantViolationError("non-cyclic case with odd p");

    select_rho_sigma(ctx, order);
    ctx.t = 0;
    for (u64 e : ctx.B.elements)
        ctx.t = std::max<u64>(ctx.t, valuation(element_order(UnitClass{ctx.f_conductor, e}), p));

    if (!ctx.cyclic_case)
        ctx.d_nc = valuation(cyclotomic_intersection_degree(K, ctx.zeta_modulus), 2) + 2;

    ctx.gamma_p = sylow_p_elements(ctx.gamma, p);
    return ctx;
}

PsiProfile psi_profile(const SchurContext& ctx, const UnitClass& psi) {
    if (psi.modulus != ctx.f_conductor) throw std::invalid_argument("psi_profile: psi not in Gamma");
    PsiProfile prof;
    prof.psi = psi;
    prof.ord_mod_G = order_mod_subgroup(psi, ctx.G);

    u64 r = psi.value % ctx.zeta_modulus;
    if (r == 1 % ctx.zeta_modulus) {
        prof.h = ctx.a + ctx.b;  // psi fixes zeta; v_p(0) capped at a+b
    } else {
        prof.h = static_cast<u64>(valuation(r - 1, ctx.p));
    }
    prof.d = std::min(ctx.a, prof.h);
    u64 fv = valuation(prof.ord_mod_G, ctx.p);
    prof.nu = (ctx.a > fv) ? ctx.a - fv : 0;

    u64 pd = 1;
    for (u64 i = 0; i < prof.d; ++i) pd *= ctx.p;
    u64 pnu = 1;
    for (u64 i = 0; i < prof.nu; ++i) pnu *= ctx.p;
    ResidueSubgroup target = power_subgroup(ctx.B, pd);
    std::vector<u64> t_elems;
    for (u64 e : ctx.B.elements)
        if (target.contains(powmod(e, pnu, ctx.f_conductor))) t_elems.push_back(e);
    prof.T.modulus = ctx.f_conductor;
    prof.T.generators = t_elems;
    prof.T.elements = std::move(t_elems);
    if (!is_subgroup_of(target, prof.T))
        throw InvariantViolationError("T(psi) does not contain B^{p^d}");
    return prof;
}

GDecomposition decompose_G(const SchurContext& ctx, const UnitClass& g) {
    if (g.modulus != ctx.f_conductor || !ctx.G.contains(g))
        throw std::invalid_argument("decompose_G: element not in G");
    u64 rho_c_order = ctx.cyclic_case ? 1 : 2;

    GDecomposition out;
    // class of g in G/C = <rho C> x <sigma C>
    bool found = false;
    for (u64 alpha = 0; alpha < rho_c_order && !found; ++alpha) {
        UnitClass base = pow(ctx.rho, alpha);
        for (u64 j = 0; j < ctx.q; ++j) {
            UnitClass cand = mul(base, pow(ctx.sigma, j));
            if (ctx.C.contains(mul(inverse(cand), g).value)) {
                out.j_rho = alpha;
                out.j_sigma = j;
                found = true;
                break;
            }
        }
    }
    if (!found) throw InvariantViolationError("decompose_G: no (rho, sigma) class matches");

    // split the C-remainder in <rho^2> x B
    UnitClass rem = mul(g, inverse(mul(pow(ctx.rho, out.j_rho), pow(ctx.sigma, out.j_sigma))));
    UnitClass rho2 = pow(ctx.rho, 2);
    u64 rho2_order = element_order(rho2);
    for (u64 gammaexp = 0; gammaexp < rho2_order; ++gammaexp) {
        UnitClass eta = mul(rem, inverse(pow(rho2, gammaexp)));
        if (ctx.B.contains(eta.value)) {
            out.j_rho += 2 * gammaexp;
            out.eta = eta;
            u64 rho_order = element_order(ctx.rho);
            if (out.j_rho >= rho_order)
                throw InvariantViolationError("decompose_G: j' out of range");
            UnitClass recomposed =
                mul(mul(pow(ctx.rho, out.j_rho), pow(ctx.sigma, out.j_sigma)), out.eta);
            if (!(recomposed == g))
                throw InvariantViolationError("decompose_G: recomposition failed");
            return out;
        }
    }
    throw InvariantViolationError("decompose_G: C-remainder not in <rho^2> x B");
}

void assert_context_invariants(const SchurContext& ctx) {
    auto fail = [](const std::string& what) { throw InvariantViolationError(what); };
    u64 n = ctx.f_conductor;

    if (!is_subgroup_of(ctx.C, ctx.D) || !is_subgroup_of(ctx.D, ctx.G)) fail("C <= D <= G violated");
    if (ctx.D == ctx.G) fail("D = G");
    if (ctx.cyclic_case != (ctx.C == ctx.D)) fail("cyclic_case mismatch with C = D");
    bool gc_cyclic = quotient_data(ctx.G, ctx.C).is_cyclic;
    if (gc_cyclic != ctx.cyclic_case) fail("G/C cyclicity disagrees with C = D");
    if (ctx.p != 2 && !ctx.cyclic_case) fail("odd p must be cyclic");

    // D = B x <rho>, C = B x <rho^2>
    UnitClass rho2 = pow(ctx.rho, 2);
    ResidueSubgroup rho_span = subgroup_from_generators(n, std::vector<u64>{ctx.rho.value});
    ResidueSubgroup rho2_span = subgroup_from_generators(n, std::vector<u64>{rho2.value});
    if (!subgroup_intersection(ctx.B, rho_span).is_trivial()) fail("B and <rho> intersect");
    if (ctx.B.order() * element_order(ctx.rho) != ctx.D.order()) fail("|B||rho| != |D|");
    if (ctx.B.order() * element_order(rho2) != ctx.C.order()) fail("|B||rho^2| != |C|");
    std::vector<u64> gens = ctx.B.generators;
    gens.push_back(ctx.rho.value);
    if (!(subgroup_from_generators(n, gens) == ctx.D)) fail("B and rho do not generate D");
    gens = ctx.B.generators;
    gens.push_back(rho2.value);
    if (!(subgroup_from_generators(n, gens) == ctx.C)) fail("B and rho^2 do not generate C");

    // G = <rho, sigma, C>; G/C = <rho C> x <sigma C>
    gens = ctx.C.generators;
    gens.push_back(ctx.rho.value);
    gens.push_back(ctx.sigma.value);
    if (!(subgroup_from_generators(n, gens) == ctx.G)) fail("rho, sigma, C do not generate G");
    u64 rho_c = ctx.cyclic_case ? 1 : 2;
    if (order_mod_subgroup(ctx.sigma, ctx.C) != ctx.q) fail("q != |sigma C|");
    if (rho_c * ctx.q != ctx.G.order() / ctx.C.order()) fail("G/C is not <rho C> x <sigma C>");
    if (element_order(ctx.rho) * ctx.q * ctx.B.order() != ctx.G.order())
        fail("|rho| * q * |B| != |G| (decomposition not bijective)");

    if (ctx.cyclic_case) {
        if (!ctx.rho.is_identity()) fail("cyclic case must select rho = 1");
        if (!(ctx.B == ctx.C)) fail("cyclic case must select B = C");
    } else {
        if (ctx.p != 2 || ctx.a != 1) fail("non-cyclic case requires p^a = 2");
        if (ctx.sigma.value % 4 != 1) fail("sigma must fix zeta_4");
        for (u64 d : ctx.D.elements)
            if (!ctx.C.contains(d) && d % ctx.zeta_modulus != ctx.zeta_modulus - 1)
                fail("element of D \\ C not acting as -1 on zeta");
        if (!ctx.d_nc) fail("missing d_nc");
        if (*ctx.d_nc + 1 > ctx.a + ctx.b) fail("d_nc + 1 exceeds a + b");
        // sigma(zeta) = zeta^c with v_2(c - 1) = d_nc
        u64 c = ctx.sigma.value % ctx.zeta_modulus;
        if (c == 1 || static_cast<u64>(valuation(c - 1, 2)) != *ctx.d_nc)
            fail("v_2(sigma action on zeta - 1) != d_nc");
    }

    // t = v_p(exp B)
    u64 exp_b = subgroup_exponent(ctx.B);
    if (static_cast<u64>(valuation(exp_b, ctx.p)) != ctx.t) fail("t != v_p(exp B)");
}

}  // namespace schurcc
