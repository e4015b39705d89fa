#include "schurcc/fields.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace schurcc {

namespace {

// Image of H under the reduction (Z/mZ)* -> (Z/m1Z)*, m1 | m.
ResidueSubgroup reduce_subgroup(const ResidueSubgroup& H, u64 m1) {
    std::vector<u64> gens;
    gens.reserve(H.generators.size());
    for (u64 g : H.generators) gens.push_back(g % m1);
    if (gens.empty())
        for (u64 e : H.elements) gens.push_back(e % m1);
    return subgroup_from_generators(m1, gens);
}

// Does H contain the whole kernel of (Z/mZ)* -> (Z/m1Z)*?  Equivalent to
// K being contained in Q(zeta_m1).
bool kernel_inside(const ResidueSubgroup& H, u64 m, u64 m1) {
    for (u64 x = 1; x < m; x += m1) {
        if (std::gcd(x, m) == 1 && !H.contains(x)) return false;
    }
    return true;
}

}  // namespace

FieldSpec normalize(u64 m, const ResidueSubgroup& H) {
    if (m == 0) throw std::invalid_argument("normalize: conductor must be positive");
    if (H.modulus != m) throw std::invalid_argument("normalize: subgroup modulus mismatch");

    u64 cur_m = m;
    ResidueSubgroup cur_h = H;
    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        if (cur_m % 4 == 2) {
            // (Z/mZ)* = (Z/(m/2)Z)* canonically
            cur_m /= 2;
            cur_h = reduce_subgroup(cur_h, cur_m);
            shrunk = true;
            continue;
        }
        for (const auto& pp : factorize(cur_m)) {
            u64 m1 = cur_m / pp.prime;
            if (kernel_inside(cur_h, cur_m, m1)) {
                cur_h = reduce_subgroup(cur_h, m1);
                cur_m = m1;
                shrunk = true;
                break;
            }
        }
    }
    FieldSpec K;
    K.conductor = cur_m;
    K.fixing_group = std::move(cur_h);
    return K;
}

bool contains_root_of_unity(const FieldSpec& K, u64 k) {
    if (k == 0) throw std::invalid_argument("contains_root_of_unity: k must be positive");
    if (k % 4 == 2) k /= 2;  // zeta_2 = -1 is rational
    if (k == 1) return true;
    if (K.conductor % k != 0) return false;
    for (u64 h : K.fixing_group.elements)
        if (h % k != 1 % k) return false;
    return true;
}

u64 a_value(const FieldSpec& K, u64 p) {
    if (!is_prime(p)) throw std::invalid_argument("a_value: p must be prime");
    if (p != 2 && !contains_root_of_unity(K, p))
        throw PrimeNotInFieldError("zeta_" + std::to_string(p) + " is not contained in the field");
    u64 a = 1;
    u64 pk = p * p;
    while (contains_root_of_unity(K, pk)) {
        ++a;
        pk *= p;
    }
    return a;
}

u64 s_value(const FieldSpec& K, u64 p) {
    if (!is_prime(p)) throw std::invalid_argument("s_value: p must be prime");
    if (p != 2 && !contains_root_of_unity(K, p))
        throw PrimeNotInFieldError("zeta_" + std::to_string(p) + " is not contained in the field");
    int v = valuation(K.conductor, p);
    if (p == 2) return std::max(1, v);
    return static_cast<u64>(v);
}

ResidueSubgroup relative_gal_image(const FieldSpec& K, u64 t) {
    u64 n = std::lcm(K.conductor, t);
    std::vector<u64> gens = preimage_generators(n, K.conductor, K.fixing_group);
    for (u64& g : gens) g %= t;
    return subgroup_from_generators(t, gens);
}

u64 cyclotomic_intersection_degree(const FieldSpec& K, u64 t) {
    if (t == 0) throw std::invalid_argument("cyclotomic_intersection_degree: t must be positive");
    return euler_phi(t) / relative_gal_image(K, t).order();
}

FieldSpec compositum(const FieldSpec& K1, const FieldSpec& K2) {
    u64 m = std::lcm(K1.conductor, K2.conductor);
    ResidueSubgroup p1 =
        subgroup_from_generators(m, preimage_generators(m, K1.conductor, K1.fixing_group));
    ResidueSubgroup p2 =
        subgroup_from_generators(m, preimage_generators(m, K2.conductor, K2.fixing_group));
    return normalize(m, subgroup_intersection(p1, p2));
}

u64 galois_group_exponent(const FieldSpec& K) {
    UnitGroup g = unit_group(K.conductor);
    u64 exp = 1;
    for (const auto& gen : g.generators)
        exp = std::lcm(exp, order_mod_subgroup(gen, K.fixing_group));
    return exp;
}

FieldSpec rationals() {
    FieldSpec K;
    K.conductor = 1;
    K.fixing_group = trivial_subgroup(1);
    K.name = "Q";
    return K;
}

FieldSpec cyclotomic_field(u64 m) {
    if (m == 0) throw std::invalid_argument("cyclotomic_field: m must be positive");
    if (m % 4 == 2) m /= 2;
    FieldSpec K = normalize(m, trivial_subgroup(m));
    K.name = "Q(zeta_" + std::to_string(m) + ")";
    return K;
}

namespace {

// Kronecker symbol (a/n).
int kronecker(std::int64_t a, u64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int unit = 1;
    if (n % 2 == 0 && a % 2 == 0) return 0;
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v % 2 == 1) {
        std::int64_t am8 = ((a % 8) + 8) % 8;
        if (am8 == 3 || am8 == 5) unit = -unit;
    }
    // reduce into [0, n); the Jacobi symbol depends only on the residue
    std::int64_t aa = a % static_cast<std::int64_t>(n);
    if (aa < 0) aa += static_cast<std::int64_t>(n);
    // Jacobi symbol (aa/n), n odd
    u64 x = static_cast<u64>(aa), y = n;
    int s = unit;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            if (y % 8 == 3 || y % 8 == 5) s = -s;
        }
        std::swap(x, y);
        if (x % 4 == 3 && y % 4 == 3) s = -s;
        x %= y;
    }
    return (y == 1) ? s : 0;
}

}  // namespace

FieldSpec quadratic_field(std::int64_t d) {
    if (d == 0) throw std::invalid_argument("quadratic_field: d must be nonzero");
    // squarefree core
    std::int64_t core = (d < 0) ? -1 : 1;
    for (const auto& pp : factorize(static_cast<u64>(d < 0 ? -d : d)))
        if (pp.exponent % 2 == 1) core *= static_cast<std::int64_t>(pp.prime);
    if (core == 1) throw std::invalid_argument("quadratic_field: d is a square");
    std::int64_t disc = (((core % 4) + 4) % 4 == 1) ? core : 4 * core;
    u64 m = static_cast<u64>(disc < 0 ? -disc : disc);
    std::vector<u64> kernel;
    for (u64 x = 1; x < m; ++x) {
        if (std::gcd(x, m) != 1) continue;
        if (kronecker(disc, x) == 1) kernel.push_back(x);
    }
    if (m == 1) kernel = {0};
    FieldSpec K = normalize(m, subgroup_from_elements(m, kernel));
    K.name = "Q(sqrt(" + std::to_string(d) + "))";
    return K;
}

FieldSpec fixed_field(u64 m, std::span<const u64> subgroup_gens) {
    return normalize(m, subgroup_from_generators(m, subgroup_gens));
}

FieldSpec index_p_subfield(u64 m, std::span<const u64> ps) {
    std::vector<u64> gens;
    for (u64 p : ps) {
        if (!is_prime(p)) throw std::invalid_argument("index_p_subfield: p must be prime");
        int c = valuation(m, p);
        u64 pc = 1;
        for (int i = 0; i < c; ++i) pc *= p;
        // N = Gal(Q(zeta_m)/Q(zeta_{p^c})) = {x = 1 mod p^c}
        std::vector<u64> order_p;
        for (u64 x = 1; x < std::max<u64>(m, 2); ++x) {
            if (std::gcd(x, m) != 1) continue;
            if (x % pc != 1 % pc) continue;
            UnitClass cls{m, x};
            if (element_order(cls) == p) order_p.push_back(x);
        }
        // distinct subgroups of order p among them
        std::vector<std::vector<u64>> candidates;
        std::vector<u64> seen;
        for (u64 x : order_p) {
            if (std::find(seen.begin(), seen.end(), x) != seen.end()) continue;
            ResidueSubgroup sub = subgroup_from_generators(m, std::vector<u64>{x});
            for (u64 e : sub.elements)
                if (e != 1 % m) seen.push_back(e);
            candidates.push_back(sub.elements);
        }
        if (candidates.empty())
            throw std::invalid_argument("index_p_subfield: no subextension of index " +
                                        std::to_string(p) + " over Q(zeta_" + std::to_string(pc) +
                                        ") inside Q(zeta_" + std::to_string(m) + ")");
        if (candidates.size() > 1) {
            std::string msg = "index_p_subfield: subextension of index " + std::to_string(p) +
                              " is not unique; candidate fixing subgroups:";
            for (const auto& cand : candidates) {
                msg += " {";
                for (size_t i = 0; i < cand.size(); ++i)
                    msg += (i ? "," : "") + std::to_string(cand[i]);
                msg += "}";
            }
            throw std::invalid_argument(msg);
        }
        for (u64 e : candidates[0]) gens.push_back(e);
    }
    return normalize(m, subgroup_from_generators(m, gens));
}

std::vector<u64> preimage_generators(u64 n, u64 m, const ResidueSubgroup& H) {
    if (n % m != 0) throw std::invalid_argument("preimage_generators: m must divide n");
    if (H.modulus != m) throw std::invalid_argument("preimage_generators: subgroup modulus mismatch");

    auto fac = factorize(n);
    std::vector<u64> moduli;
    for (const auto& pp : fac) moduli.push_back(pp.value);

    auto component_lift = [&](size_t idx, u64 residue) {
        std::vector<u64> rs(moduli.size(), 1);
        rs[idx] = residue % moduli[idx];
        return crt_combine(rs, moduli);
    };

    std::vector<u64> gens;
    // lifts of H's generators: keep the value mod m, fill with 1 elsewhere
    std::vector<u64> h_gens = H.generators;
    if (h_gens.empty()) h_gens.assign(H.elements.begin(), H.elements.end());
    for (u64 h : h_gens) {
        std::vector<u64> rs(moduli.size());
        for (size_t i = 0; i < fac.size(); ++i) {
            u64 q = fac[i].prime;
            int e_in_m = valuation(std::max<u64>(m, 1), q);
            u64 qe = 1;
            for (int j = 0; j < e_in_m; ++j) qe *= q;
            rs[i] = (e_in_m == 0) ? 1 : (h % qe);
        }
        gens.push_back(crt_combine(rs, moduli));
    }
    // generators of the kernel of (Z/nZ)* -> (Z/mZ)*
    for (size_t i = 0; i < fac.size(); ++i) {
        u64 q = fac[i].prime;
        int f = fac[i].exponent;
        int e = valuation(std::max<u64>(m, 1), q);
        if (e == f) continue;
        u64 qf = fac[i].value;
        if (e == 0 || (q == 2 && e == 1)) {
            // full component
            if (q == 2) {
                if (f == 2) {
                    gens.push_back(component_lift(i, 3));
                } else if (f >= 3) {
                    gens.push_back(component_lift(i, qf - 1));
                    gens.push_back(component_lift(i, 5));
                }
            } else {
                gens.push_back(component_lift(i, unit_group(qf).generators[0].value % qf));
            }
        } else {
            // kernel of (Z/q^f)* -> (Z/q^e)* is cyclic, generated by 1 + q^e
            u64 qe = 1;
            for (int j = 0; j < e; ++j) qe *= q;
            gens.push_back(component_lift(i, 1 + qe));
        }
    }
    return gens;
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<u64> parse_int_list(const std::string& s) {
    std::vector<u64> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        out.push_back(std::stoull(tok));
    }
    return out;
}

}  // namespace

FieldSpec parse_field_text(const std::string& text) {
    u64 m = 0;
    bool have_m = false;
    std::vector<u64> gens;
    std::string name;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("field file: malformed line: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "conductor") {
            m = std::stoull(val);
            have_m = true;
        } else if (key == "subgroup") {
            gens = parse_int_list(val);
        } else if (key == "name") {
            name = val;
        } else {
            throw std::invalid_argument("field file: unknown key: " + key);
        }
    }
    if (!have_m) throw std::invalid_argument("field file: missing conductor");
    FieldSpec K = fixed_field(m, gens);
    K.name = name;
    return K;
}

FieldSpec load_field_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open field file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_field_text(buf.str());
}

FieldSpec parse_field_inline(const std::string& spec) {
    size_t colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("inline field spec must look like m:g1,g2,...");
    u64 m = std::stoull(trim(spec.substr(0, colon)));
    std::vector<u64> gens = parse_int_list(spec.substr(colon + 1));
    return fixed_field(m, gens);
}

}  // namespace schurcc
