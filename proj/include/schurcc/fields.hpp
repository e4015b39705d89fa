#pragma once

// Abelian number fields modelled as pairs (conductor m, fixing subgroup H)
// with K the fixed field of H acting on Q(zeta_m).  Conductors are kept
// minimal and normalized to m != 2 mod 4 (Q(zeta_m) = Q(zeta_2m) for odd m).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "schurcc/residue.hpp"

namespace schurcc {

struct FieldSpec {
    u64 conductor = 1;
    ResidueSubgroup fixing_group;  // subgroup of (Z/mZ)*
    std::string name;

    u64 degree() const { return euler_phi(conductor) / fixing_group.order(); }
    bool is_rationals() const { return conductor == 1; }
    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        return a.conductor == b.conductor && a.fixing_group.elements == b.fixing_group.elements;
    }
};

/// Push (m, H) down to the minimal conductor; idempotent, degree-preserving.
FieldSpec normalize(u64 m, const ResidueSubgroup& H);

/// True iff zeta_k lies in K (k = 2 mod 4 is reduced to k/2 first).
bool contains_root_of_unity(const FieldSpec& K, u64 k);

/// Largest a >= 1 with zeta_{p^a} in K.  Throws PrimeNotInFieldError for odd
/// p with zeta_p not in K; always defined for p = 2 (zeta_2 = -1).
u64 a_value(const FieldSpec& K, u64 p);

/// Largest s >= 1 with zeta_{p^s} in Q(zeta_m): v_p(m) for odd p,
/// max(1, v_2(m)) for p = 2.
u64 s_value(const FieldSpec& K, u64 p);

/// [K intersect Q(zeta_t) : Q].
u64 cyclotomic_intersection_degree(const FieldSpec& K, u64 t);

/// Gal(K(zeta_t)/K) as a subgroup of (Z/tZ)*: the image mod t of the
/// preimage of H in (Z/lcm(m,t)Z)*.
ResidueSubgroup relative_gal_image(const FieldSpec& K, u64 t);

FieldSpec compositum(const FieldSpec& K1, const FieldSpec& K2);

/// Exponent of Gal(K/Q) = (Z/mZ)*/H.
u64 galois_group_exponent(const FieldSpec& K);

// Builders.  All results are normalized.
FieldSpec rationals();
FieldSpec cyclotomic_field(u64 m);
FieldSpec quadratic_field(std::int64_t d);  // Q(sqrt(d)), d not a square
FieldSpec fixed_field(u64 m, std::span<const u64> subgroup_gens);
/// For each p in ps: the unique subextension of index p in
/// Q(zeta_m)/Q(zeta_{p^{v_p(m)}}); the compositum-style intersection of all
/// of them.  Throws if a requested subfield is missing or ambiguous.
FieldSpec index_p_subfield(u64 m, std::span<const u64> ps);

/// Generators mod n of the preimage {x in (Z/nZ)* : x mod m in H}, m | n.
std::vector<u64> preimage_generators(u64 n, u64 m, const ResidueSubgroup& H);

// Text format: lines `conductor = <int>`, `subgroup = <g1>,<g2>,...`
// (generators, optional), `name = <string>` (optional); `#` comments.
FieldSpec parse_field_text(const std::string& text);
FieldSpec load_field_file(const std::string& path);
/// Inline form `m:g1,g2,...` (empty generator list means the full
/// cyclotomic field Q(zeta_m)).
FieldSpec parse_field_inline(const std::string& spec);

}  // namespace schurcc
