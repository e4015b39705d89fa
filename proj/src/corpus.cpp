#include "schurcc/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace schurcc {

std::vector<ResidueSubgroup> all_subgroups(u64 m) {
    ResidueSubgroup full = full_unit_subgroup(m);
    std::set<std::vector<u64>> seen;
    std::vector<ResidueSubgroup> out;
    std::vector<ResidueSubgroup> frontier{trivial_subgroup(m)};
    seen.insert(frontier[0].elements);
    out.push_back(frontier[0]);
    while (!frontier.empty()) {
        std::vector<ResidueSubgroup> next;
        for (const auto& S : frontier) {
            for (u64 x : full.elements) {
                if (S.contains(x)) continue;
                std::vector<u64> gens = S.generators;
                gens.push_back(x);
                ResidueSubgroup T = subgroup_from_generators(m, gens);
                if (seen.insert(T.elements).second) {
                    out.push_back(T);
                    next.push_back(std::move(T));
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end(), [](const ResidueSubgroup& a, const ResidueSubgroup& b) {
        return a.elements < b.elements;
    });
    return out;
}

std::vector<FieldSpec> all_subfields_up_to(u64 max_conductor) {
    std::set<std::pair<u64, std::vector<u64>>> seen;
    std::vector<FieldSpec> out;
    for (u64 m = 1; m <= max_conductor; ++m) {
        if (m % 4 == 2) continue;
        for (const ResidueSubgroup& H : all_subgroups(m)) {
            FieldSpec K = normalize(m, H);
            if (seen.insert({K.conductor, K.fixing_group.elements}).second)
                out.push_back(std::move(K));
        }
    }
    std::sort(out.begin(), out.end(), [](const FieldSpec& a, const FieldSpec& b) {
        if (a.conductor != b.conductor) return a.conductor < b.conductor;
        return a.fixing_group.elements < b.fixing_group.elements;
    });
    return out;
}

namespace {

std::vector<u64> valid_primes(const FieldSpec& K) {
    std::vector<u64> ps{2};
    for (const auto& pp : factorize(K.conductor)) {
        if (pp.prime == 2) continue;
        if (contains_root_of_unity(K, pp.prime)) ps.push_back(pp.prime);
    }
    return ps;
}

std::string field_tag(const FieldSpec& K, u64 p, BMode mode) {
    std::ostringstream os;
    os << "K(m=" << K.conductor << ", H={";
    for (size_t i = 0; i < K.fixing_group.elements.size(); ++i)
        os << (i ? "," : "") << K.fixing_group.elements[i];
    os << "}), p=" << p << ", b-mode=" << (mode == BMode::Definition ? "definition" : "example");
    return os.str();
}

bool reports_agree(const LocalIndexReport& a, const LocalIndexReport& b) {
    return a.psi == b.psi && a.f_r == b.f_r && a.f == b.f && a.d == b.d && a.nu == b.nu &&
           a.beta == b.beta && a.case_tag == b.case_tag &&
           a.decomposition.j_rho == b.decomposition.j_rho &&
           a.decomposition.j_sigma == b.decomposition.j_sigma &&
           a.decomposition.eta == b.decomposition.eta;
}

struct ContextChecker {
    const CorpusOptions& opts;
    CorpusResult& result;
    std::string tag;

    void decision_violation(const std::string& what) {
        result.decision_violations.push_back(tag + ": " + what);
    }
    void local_violation(const std::string& what) {
        result.local_violations.push_back(tag + ": " + what);
    }
    void structure_violation(const std::string& what) {
        result.structure_violations.push_back(tag + ": " + what);
    }

    // Returns the verdict for the b-mode cross-check.
    std::optional<Verdict> run(const FieldSpec& K, u64 p, BMode mode) {
        SchurContext ctx;
        try {
            ctx = build_context(K, p, mode);
            assert_context_invariants(ctx);
        } catch (const SchurError& e) {
            structure_violation(std::string("context build: ") + e.what());
            return std::nullopt;
        }
        ++result.contexts;

        // recomposition over all of G (asserted inside decompose_G)
        try {
            for (u64 g : ctx.G.elements) decompose_G(ctx, UnitClass{ctx.f_conductor, g});
        } catch (const SchurError& e) {
            structure_violation(std::string("decompose_G: ") + e.what());
        }

        Decision dec;
        Decision oracle;
        try {
            dec = decide(ctx);
            oracle = oracle_decide(ctx);
        } catch (const SchurError& e) {
            decision_violation(std::string("decision: ") + e.what());
            return std::nullopt;
        }
        ++result.decisions_checked;
        (dec.verdict == Verdict::Finite ? result.finite_count : result.infinite_count)++;

        if (dec.verdict != oracle.verdict)
            decision_violation("decide = " + to_string(dec.verdict) +
                               " but oracle_decide = " + to_string(oracle.verdict));

        if (ctx.cyclic_case) {
            Decision c3 = decide_cond3(ctx);
            if (c3.verdict != dec.verdict)
                decision_violation("cond2 = " + to_string(dec.verdict) + " but cond3 = " +
                                   to_string(c3.verdict));
        }

        if (auto fast = fast_paths(ctx); fast && fast->verdict != dec.verdict)
            decision_violation("fast path " + fast->certificate + " = " +
                               to_string(fast->verdict) + " but decide = " +
                               to_string(dec.verdict));

        // decision must not depend on the admissible (rho, sigma, B)
        try {
            SchurContext perturbed = build_context(K, p, mode, ScanOrder::Descending);
            assert_context_invariants(perturbed);
            if (decide(perturbed).verdict != dec.verdict)
                decision_violation("verdict changed under descending selection scan");
        } catch (const SchurError& e) {
            decision_violation(std::string("perturbed build: ") + e.what());
        }

        // per-class local properties; nu <= beta is asserted inside the scan
        u64 M = scan_modulus(ctx);
        try {
            scan_residues_streaming(ctx, [&](const LocalIndexReport& rep) {
                ++result.classes_scanned;
                if (rep.case_tag == LocalCase::NoncyclicParity && ctx.cyclic_case)
                    local_violation("parity case fired in the cyclic case");
                if (opts.realize_primes) check_class_realization(ctx, rep, M);
                return true;
            });
        } catch (const SchurError& e) {
            local_violation(std::string("class scan: ") + e.what());
        }

        return dec.verdict;
    }

    void check_class_realization(const SchurContext& ctx, const LocalIndexReport& class_rep,
                                 u64 M) {
        u64 r1 = 0, r2 = 0;
        u64 from = class_rep.source;
        for (u64* slot : {&r1, &r2}) {
            auto found = find_prime_in_class(from, M, opts.prime_search_bound);
            while (found && *found == 2)
                found = find_prime_in_class(*found + M, M, opts.prime_search_bound);
            if (!found) {
                local_violation("no prime found in class " + std::to_string(class_rep.source) +
                                " mod " + std::to_string(M));
                return;
            }
            *slot = *found;
            from = *found + M;
        }
        result.primes_realized += 2;
        for (u64 r : {r1, r2}) {
            LocalIndexReport prime_rep = local_report_for_prime(ctx, r);
            if (!reports_agree(class_rep, prime_rep)) {
                local_violation("class " + std::to_string(class_rep.source) + " mod " +
                                std::to_string(M) + " disagrees with realized prime " +
                                std::to_string(r));
                return;
            }
            // diagnostic formula agrees with (nu) whenever p is odd and p | r-1
            if (ctx.p != 2 && r % ctx.p == 1 && prime_rep.nu_diag &&
                *prime_rep.nu_diag != prime_rep.nu)
                local_violation("nu_diag != nu at prime " + std::to_string(r) +
                                " despite p | r-1");
        }
    }
};

}  // namespace

CorpusResult run_corpus(const CorpusOptions& opts, std::ostream& log) {
    CorpusResult result;
    std::vector<FieldSpec> fields = all_subfields_up_to(opts.max_conductor);
    result.fields = fields.size();
    log << "corpus: " << fields.size() << " distinct subfields with conductor <= "
        << opts.max_conductor << "\n";

    for (const FieldSpec& K : fields) {
        for (u64 p : valid_primes(K)) {
            if (!opts.primes_filter.empty() &&
                std::find(opts.primes_filter.begin(), opts.primes_filter.end(), p) ==
                    opts.primes_filter.end())
                continue;
            u64 a = a_value(K, p), s = s_value(K, p);
            bool modes_differ =
                b_value(K, p, a, s, BMode::Definition) != b_value(K, p, a, s, BMode::Example);
            std::vector<BMode> modes{BMode::Definition};
            if (modes_differ) modes.push_back(BMode::Example);

            std::optional<Verdict> first_verdict;
            for (BMode mode : modes) {
                ContextChecker checker{opts, result, field_tag(K, p, mode)};
                std::optional<Verdict> v = checker.run(K, p, mode);
                if (opts.verbose && v)
                    log << "  " << checker.tag << " -> " << to_string(*v) << "\n";
                if (v && first_verdict && *v != *first_verdict)
                    result.bmode_findings.push_back(field_tag(K, p, mode) +
                                                    ": verdict differs between b-modes");
                if (v && !first_verdict) first_verdict = v;
            }
        }
    }

    log << "corpus: " << result.contexts << " contexts, " << result.decisions_checked
        << " decisions (" << result.finite_count << " finite, " << result.infinite_count
        << " infinite), " << result.classes_scanned << " classes scanned, "
        << result.primes_realized << " primes realized\n";
    for (const auto& f : result.bmode_findings) log << "finding: " << f << "\n";
    for (const auto& v : result.decision_violations) log << "VIOLATION [decision]: " << v << "\n";
    for (const auto& v : result.local_violations) log << "VIOLATION [local]: " << v << "\n";
    for (const auto& v : result.structure_violations) log << "VIOLATION [structure]: " << v << "\n";
    log << (result.ok() ? "corpus: all invariants hold\n" : "corpus: INVARIANT VIOLATIONS\n");
    return result;
}

std::vector<u64> check_unit_group_bijectivity(u64 max_n) {
    std::vector<u64> failing;
    std::vector<char> hit;
    for (u64 n = 1; n <= max_n; ++n) {
        UnitGroup g = unit_group(n);
        u64 expect = euler_phi(n);
        u64 product = 1;
        for (u64 o : g.generator_orders) product *= o;
        if (product != expect) {
            failing.push_back(n);
            continue;
        }
        hit.assign(n == 1 ? 1 : n, 0);
        // incremental odometer: rolling a digit from order-1 back to 0
        // multiplies by the generator (g^order = 1)
        std::vector<u64> idx(g.generators.size(), 0);
        u64 val = 1 % n;
        u64 count = 0;
        bool bad = false;
        while (true) {
            if (hit[val]) {
                bad = true;
                break;
            }
            hit[val] = 1;
            ++count;
            size_t pos = 0;
            while (pos < idx.size()) {
                val = mulmod(val, g.generators[pos].value, n);
                if (++idx[pos] < g.generator_orders[pos]) break;
                idx[pos] = 0;
                ++pos;
            }
            if (pos == idx.size()) break;
        }
        if (bad || count != expect) failing.push_back(n);
    }
    return failing;
}

}  // namespace schurcc
