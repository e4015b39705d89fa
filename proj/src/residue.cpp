#include "schurcc/residue.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace schurcc {

u64 powmod(u64 a, u64 e, u64 n) {
    if (n <= 1) return 0;
    u64 r = 1;
    a %= n;
    while (e) {
        if (e & 1) r = mulmod(r, a, n);
        a = mulmod(a, a, n);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 n) {
    if (n <= 1) return 0;
    // extended Euclid on (a mod n, n)
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(n);
    std::int64_t newr = static_cast<std::int64_t>(a % n);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw std::invalid_argument("invmod: not invertible");
    if (t < 0) t += static_cast<std::int64_t>(n);
    return static_cast<u64>(t);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<PrimePower> factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    // the scans call this with the same handful of arguments millions of times
    static thread_local std::unordered_map<u64, std::vector<PrimePower>> cache;
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    u64 orig = n;
    std::vector<PrimePower> out;
    auto strip = [&](u64 p) {
        if (n % p) return;
        PrimePower pp{p, 0, 1};
        while (n % p == 0) {
            n /= p;
            ++pp.exponent;
            pp.value *= p;
        }
        out.push_back(pp);
    };
    strip(2);
    strip(3);
    for (u64 d = 5; d <= n / d; d += 6) {
        strip(d);
        strip(d + 2);
    }
    if (n > 1) out.push_back({n, 1, n});
    if (cache.size() < 8192) cache.emplace(orig, out);
    return out;
}

u64 euler_phi(u64 n) {
    u64 phi = 1;
    for (const auto& pp : factorize(n)) phi *= pp.value / pp.prime * (pp.prime - 1);
    return phi;
}

int valuation(u64 n, u64 p) {
    if (n == 0 || p < 2) throw std::invalid_argument("valuation: bad arguments");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

u64 crt_combine(std::span<const u64> residues, std::span<const u64> moduli) {
    if (residues.size() != moduli.size())
        throw std::invalid_argument("crt_combine: size mismatch");
    u64 x = 0, m = 1;
    for (size_t i = 0; i < residues.size(); ++i) {
        u64 mi = moduli[i], ri = residues[i] % mi;
        // solve x + m*k = ri mod mi
        u64 k = mulmod((ri + mi - x % mi) % mi, invmod(m % mi, mi), mi);
        x += m * k;
        m *= mi;
    }
    return x % m;
}

UnitClass unit_class(u64 n, u64 t) {
    if (n == 0) throw std::invalid_argument("unit_class: modulus must be positive");
    t %= n;
    if (std::gcd(t, n) != 1) throw std::invalid_argument("unit_class: value not coprime to modulus");
    return UnitClass{n, t};
}

UnitClass identity_class(u64 n) { return UnitClass{n, 1 % n}; }

UnitClass mul(const UnitClass& a, const UnitClass& b) {
    if (a.modulus != b.modulus) throw std::invalid_argument("mul: modulus mismatch");
    return UnitClass{a.modulus, mulmod(a.value, b.value, a.modulus)};
}

UnitClass pow(const UnitClass& a, u64 e) { return UnitClass{a.modulus, powmod(a.value, e, a.modulus)}; }

UnitClass inverse(const UnitClass& a) { return UnitClass{a.modulus, invmod(a.value, a.modulus)}; }

u64 element_order(const UnitClass& x) {
    if (x.modulus == 1) return 1;
    // start from phi(n) and strip primes while the power stays 1
    u64 ord = euler_phi(x.modulus);
    for (const auto& pp : factorize(ord)) {
        for (int i = 0; i < pp.exponent; ++i) {
            if (powmod(x.value, ord / pp.prime, x.modulus) == 1)
                ord /= pp.prime;
            else
                break;
        }
    }
    return ord;
}

namespace {

// Smallest generator of the cyclic group (Z/q^e)*, q odd prime.
u64 smallest_primitive_root(u64 q, int e, u64 qe) {
    u64 phi = qe / q * (q - 1);
    auto fac = factorize(phi);
    for (u64 g = 2; g < qe; ++g) {
        if (g % q == 0) continue;
        bool primitive = true;
        for (const auto& pp : fac) {
            if (powmod(g, phi / pp.prime, qe) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    throw SelectionFailureError("no primitive root found mod " + std::to_string(qe));
    (void)e;
}

}  // namespace

UnitGroup unit_group(u64 n) {
    UnitGroup g;
    g.modulus = n;
    g.order = (n == 0) ? 0 : euler_phi(n);
    if (n <= 2) return g;  // trivial group

    auto fac = factorize(n);
    std::vector<u64> moduli;
    moduli.reserve(fac.size());
    for (const auto& pp : fac) moduli.push_back(pp.value);

    auto lift = [&](size_t idx, u64 residue) {
        std::vector<u64> rs(moduli.size(), 1);
        rs[idx] = residue;
        return unit_class(n, crt_combine(rs, moduli));
    };

    for (size_t i = 0; i < fac.size(); ++i) {
        const auto& pp = fac[i];
        if (pp.prime == 2) {
            if (pp.exponent == 1) continue;  // (Z/2)* trivial
            if (pp.exponent == 2) {
                g.generators.push_back(lift(i, 3));
                g.generator_orders.push_back(2);
            } else {
                g.generators.push_back(lift(i, pp.value - 1));  // -1, order 2
                g.generator_orders.push_back(2);
                g.generators.push_back(lift(i, 5));
                g.generator_orders.push_back(pp.value / 4);
            }
        } else {
            u64 root = smallest_primitive_root(pp.prime, pp.exponent, pp.value);
            g.generators.push_back(lift(i, root));
            g.generator_orders.push_back(pp.value / pp.prime * (pp.prime - 1));
        }
    }
    return g;
}

bool ResidueSubgroup::contains(u64 v) const {
    return std::binary_search(elements.begin(), elements.end(), v % modulus);
}

bool ResidueSubgroup::contains(const UnitClass& x) const {
    if (x.modulus != modulus) throw std::invalid_argument("contains: modulus mismatch");
    return contains(x.value);
}

ResidueSubgroup trivial_subgroup(u64 n) {
    ResidueSubgroup s;
    s.modulus = n;
    s.elements = {1 % n};
    return s;
}

ResidueSubgroup subgroup_from_generators(u64 n, std::span<const u64> gens) {
    ResidueSubgroup s = trivial_subgroup(n);
    for (u64 raw : gens) {
        u64 gval = raw % n;
        if (std::gcd(gval, n) != 1)
            throw std::invalid_argument("subgroup generator " + std::to_string(raw) +
                                        " not coprime to modulus " + std::to_string(n));
        s.generators.push_back(gval);
        if (s.contains(gval)) continue;
        // order of g modulo the current subgroup
        u64 k = 1;
        u64 p = gval;
        while (!s.contains(p)) {
            p = mulmod(p, gval, n);
            ++k;
        }
        if (s.elements.size() * k > kMaxSubgroupSize)
            throw ResourceLimitError("subgroup enumeration exceeds " + std::to_string(kMaxSubgroupSize));
        std::vector<u64> next;
        next.reserve(s.elements.size() * k);
        u64 coset = 1 % n;
        for (u64 j = 0; j < k; ++j) {
            for (u64 e : s.elements) next.push_back(mulmod(e, coset, n));
            coset = mulmod(coset, gval, n);
        }
        std::sort(next.begin(), next.end());
        s.elements = std::move(next);
    }
    return s;
}

ResidueSubgroup subgroup_from_elements(u64 n, std::vector<u64> elems) {
    ResidueSubgroup s = subgroup_from_generators(n, elems);
    std::sort(elems.begin(), elems.end());
    if (s.elements != elems)
        throw std::invalid_argument("subgroup_from_elements: set is not multiplicatively closed");
    return s;
}

ResidueSubgroup full_unit_subgroup(u64 n) {
    UnitGroup g = unit_group(n);
    if (g.order > kMaxSubgroupSize)
        throw ResourceLimitError("full unit group too large to enumerate");
    std::vector<u64> gens;
    for (const auto& c : g.generators) gens.push_back(c.value);
    ResidueSubgroup s = subgroup_from_generators(n, gens);
    if (s.order() != g.order)
        throw InvariantViolationError("unit group generators do not generate (Z/nZ)*");
    return s;
}

bool is_subgroup_of(const ResidueSubgroup& H, const ResidueSubgroup& G) {
    if (H.modulus != G.modulus) return false;
    return std::includes(G.elements.begin(), G.elements.end(), H.elements.begin(), H.elements.end());
}

ResidueSubgroup subgroup_intersection(const ResidueSubgroup& A, const ResidueSubgroup& B) {
    if (A.modulus != B.modulus) throw std::invalid_argument("intersection: modulus mismatch");
    std::vector<u64> common;
    std::set_intersection(A.elements.begin(), A.elements.end(), B.elements.begin(),
                          B.elements.end(), std::back_inserter(common));
    ResidueSubgroup s;
    s.modulus = A.modulus;
    s.generators = common;
    s.elements = std::move(common);
    return s;
}

u64 order_mod_subgroup(const UnitClass& x, const ResidueSubgroup& H) {
    if (x.modulus != H.modulus) throw std::invalid_argument("order_mod_subgroup: modulus mismatch");
    u64 ord = element_order(x);
    // the least k with x^k in H divides ord; scan divisors ascending
    std::vector<u64> divisors{1};
    for (const auto& pp : factorize(ord)) {
        size_t sz = divisors.size();
        u64 q = 1;
        for (int i = 0; i < pp.exponent; ++i) {
            q *= pp.prime;
            for (size_t j = 0; j < sz; ++j) divisors.push_back(divisors[j] * q);
        }
    }
    std::sort(divisors.begin(), divisors.end());
    for (u64 d : divisors) {
        if (H.contains(powmod(x.value, d, x.modulus))) return d;
    }
    throw InvariantViolationError("order_mod_subgroup: no exponent found");
}

u64 subgroup_exponent(const ResidueSubgroup& S) {
    u64 exp = 1;
    for (u64 e : S.elements) exp = std::lcm(exp, element_order(UnitClass{S.modulus, e}));
    return exp;
}

std::vector<UnitClass> sylow_p_elements(const UnitGroup& gamma, u64 p) {
    if (!is_prime(p)) throw std::invalid_argument("sylow_p_elements: p must be prime");
    std::vector<UnitClass> parts;
    std::vector<u64> sizes;
    u64 total = 1;
    for (size_t i = 0; i < gamma.generators.size(); ++i) {
        int v = valuation(gamma.generator_orders[i], p);
        if (v == 0) continue;
        parts.push_back(p_part(gamma.generators[i], p));
        u64 sz = 1;
        for (int j = 0; j < v; ++j) sz *= p;
        sizes.push_back(sz);
        total *= sz;
        if (total > kMaxSubgroupSize)
            throw ResourceLimitError("Sylow p-subgroup enumeration exceeds bound");
    }
    // odometer over the independent p-power generators
    std::vector<u64> values;
    values.reserve(total);
    std::vector<u64> idx(parts.size(), 0);
    values.push_back(1 % gamma.modulus);
    while (values.size() < total) {
        size_t pos = 0;
        while (pos < parts.size()) {
            if (++idx[pos] < sizes[pos]) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == parts.size()) break;
        u64 cur = 1 % gamma.modulus;
        for (size_t i = 0; i < parts.size(); ++i)
            cur = mulmod(cur, powmod(parts[i].value, idx[i], gamma.modulus), gamma.modulus);
        values.push_back(cur);
    }
    std::sort(values.begin(), values.end());
    if (values.size() != total)
        throw InvariantViolationError("sylow_p_elements: generators not independent");
    std::vector<UnitClass> out;
    out.reserve(values.size());
    for (u64 v : values) out.push_back(UnitClass{gamma.modulus, v});
    return out;
}

ResidueSubgroup sylow_subgroup(const ResidueSubgroup& S, u64 p) {
    std::vector<u64> elems;
    for (u64 e : S.elements) {
        u64 ord = element_order(UnitClass{S.modulus, e});
        u64 q = 1;
        while (ord % p == 0) {
            ord /= p;
            q *= p;
        }
        if (ord == 1) elems.push_back(e);
    }
    ResidueSubgroup out;
    out.modulus = S.modulus;
    out.generators = elems;
    out.elements = std::move(elems);
    return out;
}

UnitClass p_part(const UnitClass& x, u64 p) {
    if (!is_prime(p)) throw std::invalid_argument("p_part: p must be prime");
    u64 ord = element_order(x);
    u64 pe = 1;
    while (ord % p == 0) {
        ord /= p;
        pe *= p;
    }
    u64 u = ord;  // prime-to-p part of |x|
    if (pe == 1) return identity_class(x.modulus);
    if (u == 1) return x;
    // c = 1 mod pe, c = 0 mod u
    u64 rs[] = {1, 0};
    u64 ms[] = {pe, u};
    u64 c = crt_combine(rs, ms);
    return pow(x, c);
}

ResidueSubgroup power_subgroup(const ResidueSubgroup& B, u64 k) {
    std::vector<u64> elems;
    elems.reserve(B.elements.size());
    for (u64 e : B.elements) elems.push_back(powmod(e, k, B.modulus));
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    ResidueSubgroup out;
    out.modulus = B.modulus;
    for (u64 g : B.generators) out.generators.push_back(powmod(g, k, B.modulus));
    out.elements = std::move(elems);
    return out;
}

QuotientData quotient_data(const ResidueSubgroup& G, const ResidueSubgroup& H) {
    if (!is_subgroup_of(H, G)) throw std::invalid_argument("quotient_data: H is not a subgroup of G");
    QuotientData q;
    q.order = G.order() / H.order();
    q.exponent = 1;
    for (u64 e : G.elements)
        q.exponent = std::lcm(q.exponent, order_mod_subgroup(UnitClass{G.modulus, e}, H));
    q.is_cyclic = (q.exponent == q.order);
    return q;
}

namespace {

// Greedy complement of <g> in the abelian ell-group S, where |g| = exp(S).
// A subgroup maximal with trivial intersection against <g> is a complement
// when g has maximal order.
ResidueSubgroup max_order_complement(const ResidueSubgroup& S, const UnitClass& g) {
    ResidueSubgroup cyc = subgroup_from_generators(S.modulus, std::vector<u64>{g.value});
    ResidueSubgroup B = trivial_subgroup(S.modulus);
    for (u64 x : S.elements) {
        if (B.contains(x)) continue;
        std::vector<u64> gens = B.generators;
        gens.push_back(x);
        ResidueSubgroup T = subgroup_from_generators(S.modulus, gens);
        if (subgroup_intersection(T, cyc).is_trivial()) B = std::move(T);
    }
    if (B.order() * cyc.order() != S.order())
        throw SelectionFailureError("max_order_complement: greedy complement failed");
    return B;
}

}  // namespace

std::vector<UnitClass> abelian_basis(const ResidueSubgroup& S, u64 ell) {
    if (S.is_trivial()) return {};
    // first element of maximal order, ascending scan
    u64 best = 0, best_ord = 0;
    for (u64 e : S.elements) {
        u64 ord = element_order(UnitClass{S.modulus, e});
        if (ord > best_ord) {
            best_ord = ord;
            best = e;
        }
    }
    if (best_ord % ell != 0 && best_ord != 1)
        throw std::invalid_argument("abelian_basis: S is not an ell-group");
    UnitClass g{S.modulus, best};
    ResidueSubgroup rest = max_order_complement(S, g);
    std::vector<UnitClass> basis{g};
    for (const UnitClass& b : abelian_basis(rest, ell)) basis.push_back(b);
    return basis;
}

namespace {

// Exponent vector of x in the direct product of the basis elements, found by
// odometer enumeration (sizes are small by construction).
std::vector<u64> basis_digits(const std::vector<UnitClass>& basis, const std::vector<u64>& orders,
                              const UnitClass& x) {
    std::vector<u64> idx(basis.size(), 0);
    while (true) {
        u64 cur = 1 % x.modulus;
        for (size_t i = 0; i < basis.size(); ++i)
            cur = mulmod(cur, powmod(basis[i].value, idx[i], x.modulus), x.modulus);
        if (cur == x.value) return idx;
        size_t pos = 0;
        while (pos < basis.size()) {
            if (++idx[pos] < orders[pos]) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == basis.size())
            throw SelectionFailureError("basis_digits: element not in span of basis");
    }
}

}  // namespace

std::optional<ResidueSubgroup> complement_of_cyclic(const ResidueSubgroup& C, const UnitClass& r) {
    if (r.modulus != C.modulus) throw std::invalid_argument("complement_of_cyclic: modulus mismatch");
    if (!C.contains(r)) throw std::invalid_argument("complement_of_cyclic: r not in C");

    std::vector<u64> b_gens;
    u64 r_ord = element_order(r);
    for (const auto& pp : factorize(C.order())) {
        u64 ell = pp.prime;
        ResidueSubgroup S = sylow_subgroup(C, ell);
        UnitClass r_ell = p_part(r, ell);
        if (r_ell.is_identity()) {
            for (u64 e : S.elements) b_gens.push_back(e);
            continue;
        }
        std::vector<UnitClass> basis = abelian_basis(S, ell);
        std::vector<u64> orders;
        for (const auto& b : basis) orders.push_back(element_order(b));
        std::vector<u64> digits = basis_digits(basis, orders, r_ell);
        int e = valuation(element_order(r_ell), ell);
        // <r_ell> splits off iff some digit is a unit at a basis element of
        // order exactly ell^e; swap that basis element for r_ell
        size_t swap_idx = basis.size();
        for (size_t i = 0; i < basis.size(); ++i) {
            if (digits[i] % ell != 0 && valuation(orders[i], ell) == e) {
                swap_idx = i;
                break;
            }
        }
        if (swap_idx == basis.size()) return std::nullopt;
        for (size_t i = 0; i < basis.size(); ++i)
            if (i != swap_idx) b_gens.push_back(basis[i].value);
    }

    ResidueSubgroup B = subgroup_from_generators(C.modulus, b_gens);
    ResidueSubgroup cyc = subgroup_from_generators(C.modulus, std::vector<u64>{r.value});
    if (B.order() * r_ord != C.order() || !subgroup_intersection(B, cyc).is_trivial())
        throw InvariantViolationError("complement_of_cyclic: postcondition failed");
    std::vector<u64> joint = B.generators;
    joint.push_back(r.value);
    if (!(subgroup_from_generators(C.modulus, joint) == C))
        throw InvariantViolationError("complement_of_cyclic: B and r do not generate C");
    return B;
}

std::optional<u64> in_coset_union(const UnitClass& x, const UnitClass& sigma, u64 q,
                                  const ResidueSubgroup& S) {
    if (x.modulus != sigma.modulus || x.modulus != S.modulus)
        throw std::invalid_argument("in_coset_union: modulus mismatch");
    u64 sigma_inv = invmod(sigma.value, sigma.modulus);
    u64 cur = x.value;
    for (u64 i = 0; i < q; ++i) {
        if (S.contains(cur)) return i;
        cur = mulmod(cur, sigma_inv, x.modulus);
    }
    return std::nullopt;
}

}  // namespace schurcc
