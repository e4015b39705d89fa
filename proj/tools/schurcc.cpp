// Command-line surface: decide whether the classes of cyclic cyclotomic
// algebras generate a finite-index subgroup of the Schur group S(K)_p, and
// inspect the per-prime local data behind the decision.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schurcc/corpus.hpp"
#include "schurcc/decision.hpp"
#include "schurcc/fixtures.hpp"

namespace {

using namespace schurcc;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitResource = 4;

FieldSpec resolve_field(const std::string& arg) {
    if (arg.find(':') != std::string::npos) return parse_field_inline(arg);
    return load_field_file(arg);
}

BMode resolve_mode(const std::string& name) {
    if (name == "definition") return BMode::Definition;
    if (name == "example") return BMode::Example;
    throw CLI::ValidationError("--b-mode must be 'definition' or 'example'");
}

std::string field_display(const FieldSpec& K) {
    std::string s = K.name.empty() ? "" : K.name + "  ";
    s += "(conductor " + std::to_string(K.conductor) + ", subgroup {";
    for (size_t i = 0; i < K.fixing_group.elements.size(); ++i)
        s += (i ? "," : "") + std::to_string(K.fixing_group.elements[i]);
    s += "}, degree " + std::to_string(K.degree()) + ")";
    return s;
}

void print_context(std::ostream& out, const SchurContext& ctx, bool machine) {
    if (machine) {
        out << "m = " << ctx.field.conductor << "\n";
        out << "degree = " << ctx.field.degree() << "\n";
        out << "p = " << ctx.p << "\n";
        out << "bmode = " << (ctx.mode == BMode::Definition ? "definition" : "example") << "\n";
        out << "a = " << ctx.a << "\n";
        out << "s = " << ctx.s << "\n";
        out << "b = " << ctx.b << "\n";
        out << "ab = " << ctx.a + ctx.b << "\n";
        out << "nF = " << ctx.f_conductor << "\n";
        out << "gamma_order = " << ctx.gamma.order << "\n";
        out << "G_order = " << ctx.G.order() << "\n";
        out << "C_order = " << ctx.C.order() << "\n";
        out << "D_order = " << ctx.D.order() << "\n";
        out << "B_order = " << ctx.B.order() << "\n";
        out << "rho = " << ctx.rho.value << "\n";
        out << "sigma = " << ctx.sigma.value << "\n";
        out << "q = " << ctx.q << "\n";
        out << "t = " << ctx.t << "\n";
        out << "cyclic = " << (ctx.cyclic_case ? 1 : 0) << "\n";
        if (ctx.d_nc) out << "d_nc = " << *ctx.d_nc << "\n";
        return;
    }
    out << "field: " << field_display(ctx.field) << "\n";
    out << "prime p = " << ctx.p << ", b-mode = "
        << (ctx.mode == BMode::Definition ? "definition" : "example") << "\n";
    out << "a = " << ctx.a << "  s = " << ctx.s << "  b = " << ctx.b << "  a+b = "
        << ctx.a + ctx.b << "\n";
    out << "F = Q(zeta_" << ctx.f_conductor << ")  |Gamma| = " << ctx.gamma.order << "\n";
    out << "|G| = " << ctx.G.order() << "  |C| = " << ctx.C.order() << "  |D| = "
        << ctx.D.order() << "  |B| = " << ctx.B.order() << "\n";
    out << "case: " << (ctx.cyclic_case ? "cyclic (C = D)" : "non-cyclic (C != D)")
        << "  rho = " << ctx.rho.value << "  sigma = " << ctx.sigma.value << "  q = " << ctx.q
        << "  t = " << ctx.t;
    if (ctx.d_nc) out << "  d = " << *ctx.d_nc;
    out << "\n";
}

void print_decision(std::ostream& out, const Decision& dec, bool machine,
                    const std::string& key_prefix = "") {
    if (machine) {
        out << key_prefix << "verdict = " << to_string(dec.verdict) << "\n";
        out << key_prefix << "method = " << to_string(dec.method) << "\n";
        if (!dec.certificate.empty())
            out << key_prefix << "certificate = " << dec.certificate << "\n";
        if (dec.witness) out << key_prefix << "witness_psi = " << dec.witness->psi.value << "\n";
        if (dec.failing_class)
            out << key_prefix << "failing_class = " << dec.failing_class->source << "\n";
        return;
    }
    out << "verdict: " << to_string(dec.verdict) << "  (method " << to_string(dec.method);
    if (!dec.certificate.empty()) out << ", certificate " << dec.certificate;
    out << ")\n";
    if (dec.witness) {
        const auto& w = *dec.witness;
        out << "witness: psi = " << w.psi.value << ", |psi G| = " << w.profile.ord_mod_G
            << ", d = " << w.profile.d << ", nu = " << w.profile.nu << ", |T| = "
            << w.profile.T.order() << "; " << w.detail << "\n";
    }
    if (dec.failing_class) {
        const auto& c = *dec.failing_class;
        out << "failing class: " << c.source << " mod " << c.class_modulus << " with nu = "
            << c.nu << " < beta = " << c.beta << "\n";
    }
}

void print_local_report(std::ostream& out, const LocalIndexReport& rep, bool machine) {
    if (machine) {
        out << "source = " << rep.source << "\n";
        out << "source_kind = " << (rep.source_is_prime ? "prime" : "class") << "\n";
        if (!rep.source_is_prime) out << "class_modulus = " << rep.class_modulus << "\n";
        out << "psi = " << rep.psi.value << "\n";
        out << "f_r = " << rep.f_r << "\n";
        out << "f = " << rep.f << "\n";
        out << "d = " << rep.d << "\n";
        out << "nu = " << rep.nu << "\n";
        out << "beta = " << rep.beta << "\n";
        out << "j_rho = " << rep.decomposition.j_rho << "\n";
        out << "j_sigma = " << rep.decomposition.j_sigma << "\n";
        out << "eta = " << rep.decomposition.eta.value << "\n";
        out << "case = "
            << (rep.case_tag == LocalCase::NoncyclicParity ? "noncyclic-parity" : "generic")
            << "\n";
        if (rep.nu_diag) out << "nu_diag = " << *rep.nu_diag << "\n";
        if (rep.a_r) out << "a_r = " << *rep.a_r << "\n";
        return;
    }
    if (rep.source_is_prime)
        out << "r = " << rep.source << "\n";
    else
        out << "class " << rep.source << " mod " << rep.class_modulus << "\n";
    out << "psi_r = " << rep.psi.value << " mod " << rep.psi.modulus << "\n";
    out << "f_r = " << rep.f_r << "  f(r) = " << rep.f << "  d(r) = " << rep.d << "\n";
    out << "nu(r) = " << rep.nu << "  beta(r) = " << rep.beta << "  ["
        << (rep.case_tag == LocalCase::NoncyclicParity ? "noncyclic-parity" : "generic") << "]\n";
    out << "phi_r = rho^" << rep.decomposition.j_rho << " sigma^" << rep.decomposition.j_sigma
        << " eta, eta = " << rep.decomposition.eta.value << "\n";
    if (rep.nu_diag) {
        out << "nu (ramification formula) = " << *rep.nu_diag;
        if (*rep.nu_diag != rep.nu) out << "   ** disagrees with (nu); (nu) is normative **";
        out << "\n";
    }
    if (rep.a_r) out << "a(r) = " << *rep.a_r << "\n";
}

int run_analyze(const std::string& field_arg, u64 p, const std::string& mode_name,
                bool check_oracle, bool machine) {
    FieldSpec K = resolve_field(field_arg);
    SchurContext ctx = build_context(K, p, resolve_mode(mode_name));
    assert_context_invariants(ctx);
    print_context(std::cout, ctx, machine);

    auto fast = fast_paths(ctx);
    if (!machine)
        std::cout << "fast path: " << (fast ? fast->certificate : std::string("none")) << "\n";
    Decision dec = decide(ctx);
    print_decision(std::cout, dec, machine);

    // structure of CC(K)_p at the first few unramified odd primes
    std::vector<u64> rs;
    for (u64 r = 3; rs.size() < 5; r += 2)
        if (is_prime(r) && ctx.f_conductor % r != 0) rs.push_back(r);
    CCReport cc = cc_report(ctx, rs);
    if (machine) {
        for (const auto& e : cc.entries)
            std::cout << "cc_order_" << e.r << " = " << e.local_order << "\n";
    } else {
        std::cout << "CC structure at small unramified odd primes:\n";
        for (const auto& e : cc.entries)
            std::cout << "  r = " << e.r << ": local order " << e.local_order
                      << ", generated by " << e.generator << "\n";
        std::cout << "  r = 2: " << cc.two_flag << "\n";
        std::cout << "  r = infinity: " << cc.infinity_flag << "\n";
    }

    if (check_oracle) {
        Decision oracle = oracle_decide(ctx);
        print_decision(std::cout, oracle, machine, machine ? "oracle_" : "");
        if (oracle.verdict != dec.verdict) {
            std::cerr << "oracle disagrees with the group-theoretic decision\n";
            return kExitInvariant;
        }
        if (!machine) std::cout << "oracle agrees\n";
    }
    return kExitOk;
}

int run_local(const std::string& field_arg, u64 p, u64 r, const std::string& mode_name,
              bool machine) {
    FieldSpec K = resolve_field(field_arg);
    SchurContext ctx = build_context(K, p, resolve_mode(mode_name));
    if (r == 2 || r == p) {
        std::cerr << "local data at r = " << r
                  << " (r = 2 or r = p) is undetermined here: out of scope\n";
        return kExitPrecondition;
    }
    if (K.conductor % r == 0) {
        RamifiedReport ram = ramified_report(ctx, r);
        if (machine) {
            std::cout << "r = " << ram.r << "\n";
            std::cout << "ramified = 1\n";
            std::cout << "inertia_order = " << ram.inertia_order_in_G << "\n";
            std::cout << "e_valuation = " << ram.e_valuation << "\n";
            std::cout << "f = " << ram.f << "\n";
            std::cout << "w_valuation = " << ram.w_valuation << "\n";
            std::cout << "nu = " << ram.nu << "\n";
            std::cout << "beta = undetermined\n";
        } else {
            std::cout << "r = " << r << " ramifies in K; ramification-formula diagnostics:\n";
            std::cout << "|inertia(r) in G| = " << ram.inertia_order_in_G << "  v_p(e) = "
                      << ram.e_valuation << "  f(K/Q,r) = " << ram.f << "  v_p(|W(K_r)|) = "
                      << ram.w_valuation << "\n";
            std::cout << "nu(r) = " << ram.nu << "  beta(r) = undetermined (out of scope)\n";
        }
        return kExitOk;
    }
    print_local_report(std::cout, local_report_for_prime(ctx, r), machine);
    return kExitOk;
}

int run_oracle(const std::string& field_arg, u64 p, const std::string& mode_name,
               bool realize, u64 bound, bool machine) {
    FieldSpec K = resolve_field(field_arg);
    SchurContext ctx = build_context(K, p, resolve_mode(mode_name));
    u64 M = scan_modulus(ctx);
    Decision dec = oracle_decide(ctx);
    print_decision(std::cout, dec, machine, machine ? "oracle_" : "");
    if (!machine)
        std::cout << "classes mod M = " << M << ":\n"
                  << "  class  psi  f_r  f  d  nu  beta  case" << (realize ? "  prime" : "")
                  << "\n";
    scan_residues_streaming(ctx, [&](const LocalIndexReport& rep) {
        std::optional<u64> realized;
        if (realize) {
            realized = find_prime_in_class(rep.source, M, bound);
            while (realized && *realized == 2)
                realized = find_prime_in_class(*realized + M, M, bound);
        }
        if (machine) {
            std::cout << "class = " << rep.source << "," << rep.psi.value << "," << rep.f_r
                      << "," << rep.f << "," << rep.d << "," << rep.nu << "," << rep.beta << ","
                      << (rep.case_tag == LocalCase::NoncyclicParity ? "parity" : "generic");
            if (realized) std::cout << "," << *realized;
            std::cout << "\n";
        } else {
            std::cout << "  " << rep.source << "  " << rep.psi.value << "  " << rep.f_r << "  "
                      << rep.f << "  " << rep.d << "  " << rep.nu << "  " << rep.beta << "  "
                      << (rep.case_tag == LocalCase::NoncyclicParity ? "parity" : "generic");
            if (realized)
                std::cout << "  " << *realized;
            else if (realize)
                std::cout << "  (none <= bound)";
            if (rep.nu != rep.beta) std::cout << "  <-- nu < beta";
            std::cout << "\n";
        }
        return true;
    });
    return kExitOk;
}

int run_corpus_cmd(u64 max_conductor, const std::vector<u64>& primes, bool realize,
                   bool verbose) {
    CorpusOptions opts;
    opts.max_conductor = max_conductor;
    opts.primes_filter = primes;
    opts.realize_primes = realize;
    opts.verbose = verbose;
    CorpusResult result = run_corpus(opts, std::cout);
    return result.ok() ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finiteness of the index of cyclic cyclotomic classes in the Schur group"};
    app.require_subcommand(1);
    bool machine = false;
    app.add_flag("--machine", machine, "line-oriented key = value output");

    std::string field_arg, mode_name = "definition";
    u64 prime = 2, r_arg = 3, bound = kDefaultPrimeSearchBound, max_conductor = 120;
    bool check_oracle = false, realize = false, verbose = false;
    std::vector<u64> primes_filter;

    auto* analyze = app.add_subcommand("analyze", "full report and finiteness decision");
    analyze->add_option("--field", field_arg, "field file path or inline m:g1,g2,...")->required();
    analyze->add_option("--prime", prime, "the prime p (zeta_p must lie in K)")->required();
    analyze->add_option("--b-mode", mode_name, "definition|example");
    analyze->add_flag("--check-oracle", check_oracle, "cross-check with the residue-class oracle");

    auto* local = app.add_subcommand("local", "local index data at one prime r");
    local->add_option("--field", field_arg, "field file path or inline m:g1,g2,...")->required();
    local->add_option("--prime", prime, "the prime p")->required();
    local->add_option("--r", r_arg, "the local prime r")->required();
    local->add_option("--b-mode", mode_name, "definition|example");

    auto* oracle = app.add_subcommand("oracle", "residue-class oracle decision and table");
    oracle->add_option("--field", field_arg, "field file path or inline m:g1,g2,...")->required();
    oracle->add_option("--prime", prime, "the prime p")->required();
    oracle->add_option("--b-mode", mode_name, "definition|example");
    oracle->add_flag("--realize-primes", realize, "realize each class by an actual prime");
    oracle->add_option("--bound", bound, "prime search bound");

    bool no_realize = false;
    auto* corpus = app.add_subcommand("corpus", "invariant suite over all small subfields");
    corpus->add_option("--max-conductor", max_conductor, "largest conductor")->required();
    corpus->add_option("--primes", primes_filter, "restrict to these primes")->delimiter(',');
    corpus->add_flag("--no-realize", no_realize, "skip the realized-prime consistency checks");
    corpus->add_flag("--verbose", verbose, "per-context log lines");

    auto* examples = app.add_subcommand("examples", "run the built-in worked examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(analyze))
            return run_analyze(field_arg, prime, mode_name, check_oracle, machine);
        if (app.got_subcommand(local))
            return run_local(field_arg, prime, r_arg, mode_name, machine);
        if (app.got_subcommand(oracle))
            return run_oracle(field_arg, prime, mode_name, realize, bound, machine);
        if (app.got_subcommand(corpus))
            return run_corpus_cmd(max_conductor, primes_filter, !no_realize, verbose);
        if (app.got_subcommand(examples))
            return run_fixtures(std::cout) == 0 ? kExitOk : kExitInvariant;
    } catch (const PrimeNotInFieldError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource bound: " << e.what() << "\n";
        return kExitResource;
    } catch (const InvariantViolationError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const SelectionFailureError& e) {
        std::cerr << "internal selection failure: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
