#pragma once

// Exact arithmetic and finite abelian group algorithms in the unit groups
// (Z/nZ)*, which model the Galois groups of cyclotomic fields.
//
// Subgroups are stored as explicit sorted element sets.  Enumerations are
// capped at kMaxSubgroupSize and fail with ResourceLimitError beyond that.
// All scans run in ascending residue order, so selections and witnesses are
// deterministic and reproducible.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace schurcc {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr u64 kMaxSubgroupSize = 1'000'000;

struct SchurError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Enumeration or scan exceeded the configured size bound.
struct ResourceLimitError : SchurError {
    using SchurError::SchurError;
};
// zeta_p is not contained in the field (odd p only; p = 2 never fails).
struct PrimeNotInFieldError : SchurError {
    using SchurError::SchurError;
};
// No admissible (rho, sigma, B) found; indicates an internal inconsistency
// since existence is guaranteed.
struct SelectionFailureError : SchurError {
    using SchurError::SchurError;
};
// A structural invariant failed after construction.
struct InvariantViolationError : SchurError {
    using SchurError::SchurError;
};

inline u64 mulmod(u64 a, u64 b, u64 n) {
    if (n <= 1) return 0;
    return static_cast<u64>(static_cast<u128>(a) * b % n);
}
u64 powmod(u64 a, u64 e, u64 n);
u64 invmod(u64 a, u64 n);

bool is_prime(u64 n);

struct PrimePower {
    u64 prime = 0;
    int exponent = 0;
    u64 value = 0;  // prime^exponent
};
std::vector<PrimePower> factorize(u64 n);
u64 euler_phi(u64 n);

// v_p(n) for n >= 1.
int valuation(u64 n, u64 p);

// x with x = residues[i] mod moduli[i]; moduli pairwise coprime.
u64 crt_combine(std::span<const u64> residues, std::span<const u64> moduli);

/// A unit residue t mod n.  Acts on roots of unity by zeta_n -> zeta_n^t;
/// the action on zeta_k for k | n is given by t mod k.
struct UnitClass {
    u64 modulus = 1;
    u64 value = 0;  // canonical representative in [0, n); 0 only for n = 1

    bool is_identity() const { return value == 1 % modulus; }
    friend bool operator==(const UnitClass&, const UnitClass&) = default;
};

UnitClass unit_class(u64 n, u64 t);  // validates gcd(t, n) = 1
UnitClass identity_class(u64 n);
UnitClass mul(const UnitClass& a, const UnitClass& b);
UnitClass pow(const UnitClass& a, u64 e);
UnitClass inverse(const UnitClass& a);

/// Least k >= 1 with x^k = 1.
u64 element_order(const UnitClass& x);

/// Structure of (Z/nZ)*: one independent generator per cyclic factor of the
/// prime-power decomposition (two factors for 2^k, k >= 3).
struct UnitGroup {
    u64 modulus = 1;
    u64 order = 1;  // phi(n)
    std::vector<UnitClass> generators;
    std::vector<u64> generator_orders;
};
UnitGroup unit_group(u64 n);

/// Subgroup of (Z/nZ)* with its element set enumerated explicitly.
struct ResidueSubgroup {
    u64 modulus = 1;
    std::vector<u64> generators;
    std::vector<u64> elements;  // sorted ascending; closed; contains 1

    u64 order() const { return elements.size(); }
    bool contains(u64 v) const;
    bool contains(const UnitClass& x) const;
    bool is_trivial() const { return elements.size() == 1; }
    friend bool operator==(const ResidueSubgroup& a, const ResidueSubgroup& b) {
        return a.modulus == b.modulus && a.elements == b.elements;
    }
};

ResidueSubgroup trivial_subgroup(u64 n);
ResidueSubgroup subgroup_from_generators(u64 n, std::span<const u64> gens);
// Validates that elems is multiplicatively closed (by regenerating it).
ResidueSubgroup subgroup_from_elements(u64 n, std::vector<u64> elems);
ResidueSubgroup full_unit_subgroup(u64 n);

bool is_subgroup_of(const ResidueSubgroup& H, const ResidueSubgroup& G);
ResidueSubgroup subgroup_intersection(const ResidueSubgroup& A, const ResidueSubgroup& B);

/// Least k >= 1 with x^k in H (divides element_order(x)).
u64 order_mod_subgroup(const UnitClass& x, const ResidueSubgroup& H);

/// Exponent of the group: max element order (= lcm, the group being abelian).
u64 subgroup_exponent(const ResidueSubgroup& S);

/// The elements of p-power order, ascending.  Their count is the p-part of
/// phi(n).
std::vector<UnitClass> sylow_p_elements(const UnitGroup& gamma, u64 p);

/// Subgroup of elements of p-power order of S.
ResidueSubgroup sylow_subgroup(const ResidueSubgroup& S, u64 p);

/// Projection of x onto the p-primary component: x^c with c = 1 mod p^e,
/// c = 0 mod u, where |x| = p^e * u, p not dividing u.
UnitClass p_part(const UnitClass& x, u64 p);

/// {b^k : b in B}.
ResidueSubgroup power_subgroup(const ResidueSubgroup& B, u64 k);

struct QuotientData {
    u64 order = 1;
    u64 exponent = 1;
    bool is_cyclic = true;
};
/// Order, exponent and cyclicity of G/H.  Requires H <= G.
QuotientData quotient_data(const ResidueSubgroup& G, const ResidueSubgroup& H);

/// A basis of an abelian ell-group: independent generators of non-increasing
/// order whose direct product is S.
std::vector<UnitClass> abelian_basis(const ResidueSubgroup& S, u64 ell);

/// A subgroup B with C = B x <r>, or nullopt if <r> is not a direct factor
/// of C.  Works prime by prime; deterministic.  Requires r in C.
/// Postconditions (|B| * |<r>| = |C|, trivial intersection, joint closure)
/// are asserted on every call.
std::optional<ResidueSubgroup> complement_of_cyclic(const ResidueSubgroup& C,
                                                    const UnitClass& r);

/// Least witness 0 <= i < q with sigma^-i * x in S, if any.
std::optional<u64> in_coset_union(const UnitClass& x, const UnitClass& sigma,
                                  u64 q, const ResidueSubgroup& S);

}  // namespace schurcc
