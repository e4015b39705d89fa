#include <doctest.h>

#include <random>

#include "schurcc/context.hpp"
#include "schurcc/fixtures.hpp"

using namespace schurcc;

TEST_CASE("b_value cases") {
    // odd p: b = s
    FieldSpec simple = simple_example_field(3, 19);
    CHECK(b_value(simple, 3, 1, 1, BMode::Definition) == 1);
    CHECK(b_value(simple, 3, 1, 1, BMode::Example) == 1);

    // finite nontrivial: a = s = 2, odd p, so b = 2 and F = Q(zeta_{p^4 q r})
    u64 r = finite_nontrivial_auxiliary_prime(3, 19);
    FieldSpec fnt = finite_nontrivial_field(3, 19, r);
    CHECK(b_value(fnt, 3, 2, 2, BMode::Definition) == 2);

    // K = Q(zeta_q, sqrt 2): non-cyclic branch; the two readings differ
    FieldSpec k7 = zeta_q_sqrt2_field(7);
    CHECK(b_value(k7, 2, 1, 3, BMode::Definition) == 6);  // a+b = 7
    CHECK(b_value(k7, 2, 1, 3, BMode::Example) == 5);     // a+b = 6

    // zeta_4 in K: b = s regardless of mode
    CHECK(b_value(cyclotomic_field(4), 2, 2, 2, BMode::Definition) == 2);
    CHECK(b_value(cyclotomic_field(4), 2, 2, 2, BMode::Example) == 2);

    // p = 2 with cyclic Gal(K(zeta_{2^{2a+s}})/K): b = s + 1
    // K = Q(zeta_16): relative image mod 2^{2a+s} is cyclic
    FieldSpec k16 = cyclotomic_field(16);
    u64 a16 = a_value(k16, 2), s16 = s_value(k16, 2);
    CHECK(a16 == 4);
    CHECK(b_value(k16, 2, a16, s16, BMode::Definition) == s16);  // zeta_4 in K
}

TEST_CASE("build_context on the simple example") {
    SchurContext ctx = build_context(simple_example_field(3, 19), 3);
    assert_context_invariants(ctx);
    CHECK(ctx.a == 1);
    CHECK(ctx.s == 1);
    CHECK(ctx.b == 1);
    CHECK(ctx.f_conductor == 171);
    CHECK(ctx.G.order() == 9);
    CHECK(ctx.C.order() == 3);
    CHECK(ctx.cyclic_case);
    CHECK(ctx.rho.is_identity());
    CHECK(ctx.B == ctx.C);
    CHECK(ctx.q == 3);
    CHECK(ctx.t == 1);
    CHECK(subgroup_exponent(ctx.G) == 3);  // elementary abelian of order p^2

    QuotientData gc = quotient_data(ctx.G, ctx.C);
    CHECK(gc.is_cyclic);
    CHECK(gc.order == 3);
}

TEST_CASE("build_context on Q(zeta_7, sqrt 2)") {
    FieldSpec K = zeta_q_sqrt2_field(7);

    SchurContext ex = build_context(K, 2, BMode::Example);
    assert_context_invariants(ex);
    CHECK(ex.f_conductor == 448);
    CHECK(ex.C.is_trivial());
    CHECK(!ex.cyclic_case);
    CHECK(ex.d_nc.value() == 3);
    CHECK(ex.rho.value % ex.zeta_modulus == ex.zeta_modulus - 1);  // rho inverts zeta
    CHECK(ex.sigma.value % 4 == 1);

    SchurContext def = build_context(K, 2, BMode::Definition);
    assert_context_invariants(def);
    CHECK(def.f_conductor == 896);
    CHECK(def.C.is_trivial());
    CHECK(def.d_nc.value() == 3);
}

TEST_CASE("build_context on cyclotomic fields") {
    // K = Q(zeta_9), p = 3: G = Gal(F/K) is cyclic of order p^s, C = 1
    SchurContext ctx = build_context(cyclotomic_field(9), 3);
    assert_context_invariants(ctx);
    CHECK(ctx.a == 2);
    CHECK(ctx.s == 2);
    CHECK(ctx.f_conductor == 81);
    CHECK(ctx.C.is_trivial());
    CHECK(ctx.cyclic_case);
    CHECK(ctx.G.order() == 9);
    CHECK(ctx.t == 0);

    // K = Q, p = 2 lands in the non-cyclic branch with F = Q(zeta_16)
    SchurContext q2 = build_context(rationals(), 2);
    assert_context_invariants(q2);
    CHECK(q2.a == 1);
    CHECK(q2.s == 1);
    CHECK(q2.b == 3);
    CHECK(q2.f_conductor == 16);
    CHECK(!q2.cyclic_case);
    CHECK(q2.G.order() == 8);
    CHECK(q2.gamma_p.size() == 8);
}

TEST_CASE("build_context rejects invalid primes") {
    CHECK_THROWS_AS((void)build_context(rationals(), 3), PrimeNotInFieldError);
    CHECK_THROWS_AS((void)build_context(quadratic_field(2), 7), PrimeNotInFieldError);
}

TEST_CASE("psi_profile") {
    SchurContext ctx = build_context(simple_example_field(3, 19), 3);

    // psi = 1: ord 1, d = a, nu = a, T = B
    PsiProfile one = psi_profile(ctx, identity_class(ctx.f_conductor));
    CHECK(one.ord_mod_G == 1);
    CHECK(one.h == ctx.a + ctx.b);
    CHECK(one.d == ctx.a);
    CHECK(one.nu == ctx.a);
    CHECK(one.T == ctx.B);

    // any psi with nu >= min(t, d) has T = B
    for (const UnitClass& psi : ctx.gamma_p) {
        PsiProfile prof = psi_profile(ctx, psi);
        CHECK(prof.T.order() <= ctx.B.order());
        CHECK(is_subgroup_of(prof.T, ctx.B));
        if (prof.nu >= std::min(ctx.t, prof.d)) CHECK(prof.T == ctx.B);
        // ord_mod_G depends only on the class psi G
        for (u64 c : ctx.C.elements) {
            UnitClass shifted = mul(psi, UnitClass{ctx.f_conductor, c});
            CHECK(psi_profile(ctx, shifted).ord_mod_G == prof.ord_mod_G);
        }
    }
}

TEST_CASE("decompose_G") {
    SchurContext ctx = build_context(zeta_q_sqrt2_field(7), 2, BMode::Example);
    GDecomposition one = decompose_G(ctx, identity_class(ctx.f_conductor));
    CHECK(one.j_rho == 0);
    CHECK(one.j_sigma == 0);
    CHECK(one.eta.is_identity());

    // recomposition identity over all of G, and ranges
    u64 rho_order = element_order(ctx.rho);
    for (u64 g : ctx.G.elements) {
        GDecomposition dec = decompose_G(ctx, UnitClass{ctx.f_conductor, g});
        CHECK(dec.j_rho < rho_order);
        CHECK(dec.j_sigma < ctx.q);
        CHECK(ctx.B.contains(dec.eta));
        UnitClass back =
            mul(mul(pow(ctx.rho, dec.j_rho), pow(ctx.sigma, dec.j_sigma)), dec.eta);
        CHECK(back.value == g);
    }

    CHECK_THROWS_AS((void)decompose_G(ctx, unit_class(ctx.f_conductor, 5)),
                    std::invalid_argument);  // 5 mod 56 = 5 not in H
}

TEST_CASE("selection scan order does not change verdicts") {
    // rho, sigma, B may differ, the structure facts must not
    for (auto [m, gen, p] : {std::tuple<u64, u64, u64>{57, 7, 3},
                             {56, 15, 2},
                             {20, 1, 2},
                             {40, 31, 2}}) {
        std::vector<u64> gens{gen};
        FieldSpec K = fixed_field(m, gens);
        for (BMode mode : {BMode::Definition, BMode::Example}) {
            SchurContext asc = build_context(K, p, mode, ScanOrder::Ascending);
            SchurContext desc = build_context(K, p, mode, ScanOrder::Descending);
            assert_context_invariants(asc);
            assert_context_invariants(desc);
            CHECK(asc.cyclic_case == desc.cyclic_case);
            CHECK(asc.t == desc.t);
            CHECK(asc.q == desc.q);
            CHECK(asc.B.order() == desc.B.order());
        }
    }
}
