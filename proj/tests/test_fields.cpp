#include <doctest.h>

#include <numeric>

#include "schurcc/fields.hpp"

using namespace schurcc;

namespace {

FieldSpec field(u64 m, std::vector<u64> gens) { return fixed_field(m, gens); }

}  // namespace

TEST_CASE("normalize") {
    // full fixing group collapses to Q
    FieldSpec q = normalize(5, full_unit_subgroup(5));
    CHECK(q.conductor == 1);
    CHECK(q.degree() == 1);

    // Q(sqrt 3) keeps conductor 12: no proper divisor works
    FieldSpec sqrt3 = field(12, {11});
    CHECK(sqrt3.conductor == 12);
    CHECK(sqrt3.degree() == 2);

    // Q(zeta_7, sqrt 2) keeps conductor 56
    FieldSpec big = field(56, {15});
    CHECK(big.conductor == 56);

    // m = 2 mod 4 is rewritten
    CHECK(field(14, {}).conductor == 7);

    // idempotent, degree preserving
    for (const FieldSpec& K : {sqrt3, big, field(45, {2}), field(171, {7})}) {
        FieldSpec again = normalize(K.conductor, K.fixing_group);
        CHECK(again == K);
        CHECK(again.degree() == K.degree());
    }
}

TEST_CASE("contains_root_of_unity") {
    CHECK(contains_root_of_unity(rationals(), 2));        // -1 in Q
    CHECK(contains_root_of_unity(field(56, {15}), 2));
    CHECK(!contains_root_of_unity(field(56, {15}), 4));   // zeta_4 not in Q(zeta_7, sqrt 2)
    CHECK(contains_root_of_unity(field(56, {15}), 7));
    CHECK(contains_root_of_unity(cyclotomic_field(9), 9));
    CHECK(contains_root_of_unity(cyclotomic_field(9), 18));  // zeta_18 = -zeta_9^{-4}
    CHECK(!contains_root_of_unity(cyclotomic_field(9), 27));

    // agreement with the intersection degree: zeta_k in K iff
    // [K cap Q(zeta_k) : Q] = phi(k), over a small sample
    for (const FieldSpec& K : {cyclotomic_field(9), field(56, {15}), field(57, {7})}) {
        for (u64 k : {2, 3, 4, 7, 8, 9, 12}) {
            u64 kk = (k % 4 == 2) ? k / 2 : k;
            CHECK(contains_root_of_unity(K, k) ==
                  (cyclotomic_intersection_degree(K, kk) == euler_phi(kk)));
        }
    }
}

TEST_CASE("a_value and s_value") {
    CHECK(a_value(rationals(), 2) == 1);
    CHECK(s_value(rationals(), 2) == 1);
    CHECK_THROWS_AS((void)a_value(rationals(), 3), PrimeNotInFieldError);

    CHECK(a_value(field(57, {7}), 3) == 1);
    CHECK(s_value(field(57, {7}), 3) == 1);

    CHECK(a_value(field(56, {15}), 2) == 1);
    CHECK(s_value(field(56, {15}), 2) == 3);

    CHECK(s_value(quadratic_field(5), 2) == 1);  // m = 5 odd

    CHECK(a_value(cyclotomic_field(9), 3) == 2);
    CHECK(s_value(cyclotomic_field(9), 3) == 2);
}

TEST_CASE("cyclotomic_intersection_degree") {
    CHECK(cyclotomic_intersection_degree(field(56, {15}), 1) == 1);
    CHECK(cyclotomic_intersection_degree(field(56, {15}), 8) == 2);  // Q(sqrt 2)
    CHECK(cyclotomic_intersection_degree(cyclotomic_field(9), 27) == 6);

    // |relative_gal_image(K, t)| * [K cap Q(zeta_t) : Q] = phi(t)
    for (const FieldSpec& K :
         {rationals(), quadratic_field(2), field(57, {7}), field(56, {15}), cyclotomic_field(20)}) {
        for (u64 t : {1, 3, 4, 8, 9, 16, 21, 32, 40}) {
            CHECK(relative_gal_image(K, t).order() * cyclotomic_intersection_degree(K, t) ==
                  euler_phi(t));
        }
    }
}

TEST_CASE("relative_gal_image") {
    // zeta_t in K: trivial image
    CHECK(relative_gal_image(cyclotomic_field(9), 9).is_trivial());
    CHECK(relative_gal_image(rationals(), 8).order() == 4);  // full (Z/8)*

    ResidueSubgroup img = relative_gal_image(quadratic_field(2), 16);
    CHECK(img.order() == 4);
    CHECK(!quotient_data(img, trivial_subgroup(16)).is_cyclic);
}

TEST_CASE("compositum") {
    FieldSpec sqrt2 = quadratic_field(2);
    CHECK(compositum(sqrt2, rationals()) == sqrt2);
    CHECK(compositum(rationals(), sqrt2) == sqrt2);

    FieldSpec K = compositum(sqrt2, cyclotomic_field(7));
    CHECK(K.conductor == 56);
    CHECK(K.fixing_group.elements == std::vector<u64>{1, 15});

    CHECK(compositum(cyclotomic_field(9), cyclotomic_field(19)) == cyclotomic_field(171));

    // commutative, associative on a sample
    FieldSpec a = quadratic_field(-1), b = field(57, {7}), c = quadratic_field(2);
    CHECK(compositum(a, b) == compositum(b, a));
    CHECK(compositum(compositum(a, b), c) == compositum(a, compositum(b, c)));
}

TEST_CASE("quadratic_field") {
    FieldSpec sqrt2 = quadratic_field(2);
    CHECK(sqrt2.conductor == 8);
    CHECK(sqrt2.fixing_group.elements == std::vector<u64>{1, 7});

    CHECK(quadratic_field(-1) == cyclotomic_field(4));
    CHECK(quadratic_field(-3) == cyclotomic_field(3));
    CHECK(quadratic_field(5).conductor == 5);
    CHECK(quadratic_field(12) == quadratic_field(3));  // square part stripped
    CHECK_THROWS_AS((void)quadratic_field(9), std::invalid_argument);

    for (std::int64_t d : {2, 3, 5, -1, -2, -5, 6, 7, 10, -7, 11, -11, 15}) {
        FieldSpec K = quadratic_field(d);
        CHECK(K.degree() == 2);
        CHECK(normalize(K.conductor, K.fixing_group) == K);
    }
}

TEST_CASE("index_p_subfield") {
    std::vector<u64> p3{3};
    FieldSpec K = index_p_subfield(57, p3);
    CHECK(K.conductor == 57);
    CHECK(K.fixing_group.elements == std::vector<u64>{1, 7, 49});

    // not unique inside Q(zeta_91): Gal = C6 x C12 has four order-3 subgroups
    CHECK_THROWS_AS((void)index_p_subfield(91, p3), std::invalid_argument);
    // nonexistent: no order-5 subgroup fixing Q(zeta_5) inside Q(zeta_15)
    std::vector<u64> p5{5};
    CHECK_THROWS_AS((void)index_p_subfield(15, p5), std::invalid_argument);
}

TEST_CASE("galois_group_exponent") {
    CHECK(galois_group_exponent(rationals()) == 1);
    CHECK(galois_group_exponent(quadratic_field(3)) == 2);
    CHECK(galois_group_exponent(cyclotomic_field(9)) == 6);

    // brute-force oracle on a sample
    for (const FieldSpec& K : {field(57, {7}), field(56, {15}), quadratic_field(-1)}) {
        u64 want = 1;
        for (u64 x = 1; x < K.conductor; ++x) {
            if (std::gcd(x, K.conductor) != 1) continue;
            want = std::lcm(want, order_mod_subgroup(unit_class(K.conductor, x), K.fixing_group));
        }
        CHECK(galois_group_exponent(K) == want);
    }
}

TEST_CASE("field text formats") {
    FieldSpec K = parse_field_text("# a comment\nname = fixture\nconductor = 57\nsubgroup = 7\n");
    CHECK(K.conductor == 57);
    CHECK(K.name == "fixture");
    CHECK(K.fixing_group.elements == std::vector<u64>{1, 7, 49});

    CHECK(parse_field_inline("56:15") == field(56, {15}));
    CHECK(parse_field_inline("9:") == cyclotomic_field(9));
    CHECK_THROWS_AS((void)parse_field_text("subgroup = 7\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_field_inline("57"), std::invalid_argument);
}
