#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quasivar/acceptance.hpp"
#include "quasivar/brouwer.hpp"
#include "quasivar/closure.hpp"
#include "quasivar/congruence.hpp"
#include "quasivar/demorgan.hpp"
#include "quasivar/formats.hpp"
#include "quasivar/morphisms.hpp"
#include "quasivar/quasivar.hpp"

using namespace qv;

namespace {

constexpr int kExitError = 3;

struct Globals {
    std::vector<std::string> gens;
    std::vector<std::string> catalogs;
    std::size_t guard_size = 0;
    std::size_t bound = 2;
    bool json_out = false;
    std::uint64_t seed = AcceptanceOptions{}.seed;
    int threads = 0;
};

// A catalog name, one of the extra named algebras, or a JSON file.
FiniteAlgebra load_algebra(std::string const& spec) {
    if (spec == "heyting-chain5") return heyting_chain5();
    if (spec == "heyting-square-top") return heyting_square_plus_top();
    if (std::filesystem::exists(spec)) return parse_algebra(spec);
    auto names = catalog_names();
    if (std::find(names.begin(), names.end(), spec) != names.end() || spec.starts_with("s"))
        return catalog(spec);
    throw Error("no algebra file or catalog entry named '" + spec + "'");
}

// p6, k<n>, hat-<name>, or a JSON file.
Poset load_poset(std::string const& spec) {
    if (spec.starts_with("hat-")) return hat(load_poset(spec.substr(4)));
    if (spec == "p6") return p6();
    if (spec.size() > 1 && spec[0] == 'k' && std::isdigit(static_cast<unsigned char>(spec[1])))
        return k_poset(static_cast<unsigned>(std::stoul(spec.substr(1))));
    if (std::filesystem::exists(spec)) return parse_poset(spec);
    throw Error("no poset file or named poset '" + spec + "'");
}

AlgebraList inputs(Globals const& g) {
    AlgebraList out;
    for (auto const& c : g.catalogs) out.push_back(catalog(c));
    for (auto const& f : g.gens) out.push_back(load_algebra(f));
    if (out.empty()) throw Error("no algebras given (use --gen or --catalog)");
    return out;
}

// Binary tables are stored densely, so carriers much beyond this do not fit in memory.
constexpr std::size_t kMaxGuardSize = 8192;

Guards guards(Globals const& g) {
    Guards out = default_guards();
    if (g.guard_size > kMaxGuardSize)
        throw Error("--guard-size above " + std::to_string(kMaxGuardSize) + " is not supported");
    if (g.guard_size) out.derived_carrier = g.guard_size;
    return out;
}

std::string element_label(FiniteAlgebra const& a, Elem x) { return a.name(x); }

Elem element_from_json(FiniteAlgebra const& a, json const& j) {
    if (j.is_number_unsigned()) return j.get<Elem>();
    auto x = a.find_name(j.get<std::string>());
    if (!x) throw Error("witness names unknown element " + j.dump());
    return *x;
}

// ---- witness replay: evaluation only, no search

bool replay_counterexample(QuasiEquation const& q, GeneratorSet const& gens, json const& w) {
    auto const& a = gens[w.at("generator").get<std::size_t>()];
    Assignment v;
    for (auto const& [name, val] : w.at("assignment").items()) v[name] = element_from_json(a, val);
    for (auto const& p : q.premises)
        if (eval(p.lhs, a, v) != eval(p.rhs, a, v)) return false;
    return eval(q.conclusion.lhs, a, v) != eval(q.conclusion.rhs, a, v);
}

// Calls visit on every assignment of `vars` over A.
template <class F>
void each_assignment(FiniteAlgebra const& a, std::vector<std::string> const& vars, F&& visit) {
    Assignment v;
    for (auto const& x : vars) v[x] = 0;
    for (;;) {
        visit(v);
        std::size_t i = vars.size();
        while (i > 0) {
            --i;
            if (++v[vars[i]] < a.size()) break;
            v[vars[i]] = 0;
            if (i == 0) return;
        }
        if (vars.empty()) return;
    }
}

// Substitutes the unifier's terms and checks every equation in every generator.
bool replay_unifier(std::vector<Equation> const& eqs, GeneratorSet const& gens, json const& w) {
    std::map<std::string, Term> sub;
    std::vector<std::string> free_vars;
    for (auto const& [name, entry] : w.at("unifier").items()) {
        Term t = parse_term(entry.at("term").get<std::string>(), &gens.signature());
        for (auto const& x : t.variables())
            if (std::find(free_vars.begin(), free_vars.end(), x) == free_vars.end())
                free_vars.push_back(x);
        sub.emplace(name, std::move(t));
    }
    for (auto const& a : gens.algebras()) {
        bool ok = true;
        each_assignment(a, free_vars, [&](Assignment const& v) {
            Assignment image;
            for (auto const& [name, t] : sub) image[name] = eval(t, a, v);
            for (auto const& e : eqs)
                ok = ok && eval(e.lhs, a, image) == eval(e.rhs, a, image);
        });
        if (!ok) return false;
    }
    return true;
}

// The substituted premises hold identically and the substituted conclusion fails somewhere.
bool replay_admissibility(QuasiEquation const& q, GeneratorSet const& gens, json const& w) {
    std::map<std::string, Term> sub;
    std::vector<std::string> free_vars;
    for (auto const& [name, text] : w.at("assignment").items()) {
        Term t = parse_term(text.get<std::string>(), &gens.signature());
        for (auto const& x : t.variables())
            if (std::find(free_vars.begin(), free_vars.end(), x) == free_vars.end())
                free_vars.push_back(x);
        sub.emplace(name, std::move(t));
    }
    bool premises = true, refuted = false;
    for (auto const& a : gens.algebras())
        each_assignment(a, free_vars, [&](Assignment const& v) {
            Assignment image;
            for (auto const& [name, t] : sub) image[name] = eval(t, a, v);
            for (auto const& p : q.premises)
                premises = premises && eval(p.lhs, a, image) == eval(p.rhs, a, image);
            refuted = refuted ||
                      eval(q.conclusion.lhs, a, image) != eval(q.conclusion.rhs, a, image);
        });
    return premises && refuted;
}

bool replay_trivial_point(GeneratorSet const& gens, json const& w) {
    auto const& a = gens[w.at("generator").get<std::size_t>()];
    Elem x = element_from_json(a, w.at("trivial_point"));
    auto const& sig = a.signature();
    for (std::size_t op = 0; op < sig.size(); ++op) {
        std::vector<Elem> args(sig[op].arity, x);
        if (a.apply(op, args) != x) return false;
    }
    return true;
}

// ---- output

struct Outcome {
    json result;
    int exit_code = 0;
    std::string text;  // human-readable form
};

Outcome verdict_outcome(Verdict const& v, std::optional<bool> replayed = std::nullopt) {
    Outcome o;
    o.result = v.to_json();
    if (replayed) {
        o.result["replayed"] = *replayed;
        if (!*replayed) throw Error("witness failed to replay");
    }
    o.exit_code = v.exit_code();
    o.text = std::string(to_string(v.answer)) + " (" + v.stage + ")";
    if (v.answer == Answer::CertifiedUpTo || v.answer == Answer::Unknown)
        o.text += " bound " + std::to_string(v.bound);
    if (!v.witness.is_null() && !v.witness.empty()) o.text += "\nwitness: " + v.witness.dump();
    return o;
}

Outcome algebra_outcome(FiniteAlgebra const& a) {
    return {algebra_to_json(a), 0, algebra_to_json(a).dump()};
}

Outcome poset_outcome(Poset const& p) { return {poset_to_json(p), 0, poset_to_json(p).dump()}; }

std::string map_text(FiniteAlgebra const& a, FiniteAlgebra const& b, Map const& m) {
    std::string s;
    for (Elem x = 0; x < m.size(); ++x)
        s += (x ? " " : "") + element_label(a, x) + "->" + element_label(b, m[x]);
    return s;
}

// ---- verbs

Outcome cmd_axioms(Globals const& g) {
    json rows = json::array();
    std::string text;
    bool all = true;
    for (auto const& a : inputs(g)) {
        auto const& sig = a.signature();
        json r{{"size", a.size()}, {"signature", sig.to_string()}};
        auto add = [&](char const* family, AxiomReport const& rep) {
            r[family] = rep.ok ? json(true) : json(rep.failed);
            all = all && rep.ok;
            text += std::string(family) + ": " + (rep.ok ? "ok" : "fails " + rep.failed) + "\n";
        };
        if (sig == dmm_signature()) add("demorgan_monoid", check_demorgan_monoid(a));
        else if (sig == dunn_signature()) add("dunn_monoid", check_dunn_monoid(a));
        else if (sig == heyting_signature()) add("heyting", check_heyting(a));
        else if (sig == brouwer_signature()) add("brouwerian", check_brouwerian(a));
        else throw Error("no axiom set for signature " + sig.to_string());
        rows.push_back(r);
    }
    return {rows, all ? 0 : 1, text};
}

Outcome cmd_homs(Globals const& g, bool injective, std::size_t limit) {
    auto algs = inputs(g);
    if (algs.size() != 2) throw Error("homs needs exactly two algebras: domain and codomain");
    auto const& a = algs[0];
    auto const& b = algs[1];
    json maps = json::array();
    std::string text;
    HomSearchOptions opt;
    opt.injective = injective;
    opt.limit = limit;
    for_each_hom(a, b, opt, [&](Map const& m) {
        if (!(injective ? is_embedding(a, b, m) : is_homomorphism(a, b, m)))
            throw Error("homomorphism failed to replay");
        maps.push_back(m);
        text += map_text(a, b, m) + "\n";
        return true;
    });
    text += std::to_string(maps.size()) + " found";
    return {{{"count", maps.size()}, {"maps", maps}}, maps.empty() ? 1 : 0, text};
}

Outcome cmd_congruences(Globals const& g) {
    json rows = json::array();
    std::string text;
    for (auto const& a : inputs(g)) {
        auto cons = all_congruences(a, guards(g));
        json list = json::array();
        for (auto const& c : cons) {
            list.push_back(c.to_string());
            text += c.to_string() + "\n";
        }
        auto si = classify_in_lattice(cons, a.size());
        rows.push_back({{"congruences", list}, {"si_status", to_string(si)}});
        text += std::to_string(cons.size()) + " congruences, " + to_string(si) + "\n";
    }
    return {rows, 0, text};
}

Outcome cmd_free(Globals const& g, std::size_t rank) {
    GeneratorSet gens(inputs(g));
    FreeAlgebra f = free_algebra(gens, rank, guards(g));
    json terms = json::array();
    std::string text = "F(" + std::to_string(rank) + ") has " + std::to_string(f.algebra.size()) +
                       " elements\n";
    for (auto const& t : element_terms(f)) {
        terms.push_back(t.to_string());
        text += "  " + t.to_string() + "\n";
    }
    return {{{"rank", rank}, {"size", f.algebra.size()}, {"terms", terms},
             {"algebra", algebra_to_json(f.algebra)}},
            0, text};
}

Outcome cmd_valid(Globals const& g, std::string const& text) {
    GeneratorSet gens(inputs(g));
    auto q = parse_qe(text, &gens.signature());
    Verdict v = valid(q, gens, guards(g));
    std::optional<bool> replayed;
    if (v.no()) replayed = replay_counterexample(q, gens, v.witness);
    return verdict_outcome(v, replayed);
}

Outcome cmd_unify(Globals const& g, std::string const& text) {
    GeneratorSet gens(inputs(g));
    auto eqs = parse_equations(text, &gens.signature());
    Verdict v = unifiable(eqs, gens, guards(g));
    std::optional<bool> replayed;
    if (v.yes() && v.witness.contains("unifier")) replayed = replay_unifier(eqs, gens, v.witness);
    return verdict_outcome(v, replayed);
}

Outcome cmd_admissible(Globals const& g, std::string const& text) {
    GeneratorSet gens(inputs(g));
    auto q = parse_qe(text, &gens.signature());
    Verdict v = admissible_upto(q, gens, g.bound, guards(g));
    std::optional<bool> replayed;
    if (v.no()) replayed = replay_admissibility(q, gens, v.witness);
    return verdict_outcome(v, replayed);
}

Outcome cmd_psc(Globals const& g) {
    GeneratorSet gens(inputs(g));
    Verdict v = psc_check(gens, guards(g));
    std::optional<bool> replayed;
    if (v.stage == "not-kollar") replayed = replay_trivial_point(gens, v.witness);
    Outcome o = verdict_outcome(v, replayed);
    PscClass c = classify_psc_variety(gens);
    if (gens.signature() == dmm_signature()) {
        o.result["variety_class"] = to_string(c);
        o.text += "\nvariety class: " + std::string(to_string(c));
    }
    return o;
}

Outcome cmd_membership(Globals const& g, std::string const& candidate, bool variety) {
    GeneratorSet gens(inputs(g));
    FiniteAlgebra a = load_algebra(candidate);
    bool in = variety ? v_membership(a, gens, guards(g)) : q_membership(a, gens);
    json r{{"member", in}, {"class", variety ? "V" : "Q"}};
    if (!variety && !in) {
        auto s = separates(a, gens.algebras());
        if (s.failing_pair)
            r["unseparated"] = {a.name(s.failing_pair->first), a.name(s.failing_pair->second)};
    }
    return {r, in ? 0 : 1, in ? "member" : "not a member"};
}

FiniteAlgebra as_dunn(FiniteAlgebra const& a) {
    auto const& sig = a.signature();
    if (sig == dunn_signature()) return a;
    if (sig == dmm_signature()) return dunn_reduct(a);
    if (sig == brouwer_signature()) return brouwer_as_dunn(a);
    throw Error("reflect expects a Dunn monoid, De Morgan monoid or Brouwerian algebra");
}

Outcome cmd_verify(Globals const& g, std::vector<int> const& only, bool verbose) {
    AcceptanceOptions opt;
    opt.seed = g.seed;
    opt.only = only;
    if (verbose) opt.log = &std::cerr;
    json rows = json::array();
    std::string text = "seed " + std::to_string(g.seed) + "\n";
    bool all = true;
    for (auto const& r : run_acceptance(opt)) {
        rows.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail},
                        {"seconds", r.seconds}, {"budget", r.budget}});
        text += format_result(r) + "\n";
        all = all && r.pass;
    }
    return {{{"seed", g.seed}, {"criteria", rows}}, all ? 0 : 1, text};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite quasivariety toolkit: joint embedding, passive structural completeness, "
                 "De Morgan monoids and Brouwerian duality"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));
    Globals g;
    auto add_globals = [&](CLI::App* c) {
        c->add_option("--gen", g.gens, "generator: JSON file or catalog name (repeatable)");
        c->add_option("--catalog", g.catalogs, "catalog algebra name (repeatable)");
        c->add_option("--guard-size", g.guard_size, "carrier limit for derived algebras");
        c->add_option("--bound", g.bound, "free-algebra rank bound for semi-decisions");
        c->add_flag("--json", g.json_out, "print a JSON report");
        c->add_option("--seed", g.seed, "seed for randomized suites");
        c->add_option("--threads", g.threads, "OpenMP threads (0: runtime default)");
    };

    std::string qe_text, candidate, poset_spec, name;
    std::size_t rank = 1, limit = 1000;
    bool injective = false, no_cd = false, verbose = false;
    std::vector<int> only;
    std::function<Outcome()> action;

    auto verb = [&](char const* n, char const* help, std::function<Outcome()> f) {
        CLI::App* c = app.add_subcommand(n, help);
        add_globals(c);
        c->callback([&action, f] { action = f; });
        return c;
    };

    verb("axioms", "check the axioms of the algebra's family", [&] { return cmd_axioms(g); });
    auto homs = verb("homs", "enumerate homomorphisms from the first algebra to the second",
                     [&] { return cmd_homs(g, injective, limit); });
    homs->add_flag("--injective", injective, "embeddings only");
    homs->add_option("--limit", limit, "stop after this many");
    verb("congruences", "list congruences and subdirect irreducibility",
         [&] { return cmd_congruences(g); });
    verb("free", "free algebra of the quasivariety", [&] { return cmd_free(g, rank); })
        ->add_option("--rank", rank, "number of free generators");
    verb("valid", "validity of a quasi-equation", [&] { return cmd_valid(g, qe_text); })
        ->add_option("--qe", qe_text, "quasi-equation")
        ->required();
    verb("unify", "unifiability of a finite set of equations", [&] { return cmd_unify(g, qe_text); })
        ->add_option("--eqs", qe_text, "equations separated by '&' or ','")
        ->required();
    verb("admissible", "admissibility in free algebras up to --bound",
         [&] { return cmd_admissible(g, qe_text); })
        ->add_option("--qe", qe_text, "quasi-equation")
        ->required();
    verb("jep", "joint embedding property", [&] {
        return verdict_outcome(jep_check(GeneratorSet(inputs(g)), guards(g)));
    });
    verb("psc", "passive structural completeness", [&] { return cmd_psc(g); });
    verb("minimal", "whether the quasivariety is minimal", [&] {
        return verdict_outcome(minimal_quasivariety_check(GeneratorSet(inputs(g)), guards(g)));
    });
    verb("sc", "structural completeness, certified up to --bound", [&] {
        return verdict_outcome(sc_check(GeneratorSet(inputs(g)), g.bound, !no_cd, guards(g)));
    })->add_flag("--no-cd", no_cd, "do not assume a congruence distributive variety");
    verb("member-q", "membership of --candidate in the quasivariety",
         [&] { return cmd_membership(g, candidate, false); })
        ->add_option("--candidate", candidate, "JSON file or catalog name")
        ->required();
    verb("member-v", "membership of --candidate in the variety",
         [&] { return cmd_membership(g, candidate, true); })
        ->add_option("--candidate", candidate, "JSON file or catalog name")
        ->required();
    verb("reflect", "reflection R(A) of a Dunn monoid", [&] {
        return algebra_outcome(reflect(as_dunn(inputs(g).front())));
    });
    verb("xcon", "the one-point extension X(A) of R(A+)", [&] {
        return algebra_outcome(x_construction(inputs(g).front()));
    });
    verb("up", "Brouwerian algebra of non-empty up-sets of a poset",
         [&] { return algebra_outcome(up_algebra(load_poset(poset_spec), guards(g)).algebra); })
        ->add_option("--poset", poset_spec, "JSON file, p6, k<n> or hat-<poset>")
        ->required();
    verb("dual", "prime filter poset of a Brouwerian algebra",
         [&] { return poset_outcome(prime_filter_poset(inputs(g).front())); });
    verb("hat", "the hat construction on a poset", [&] { return poset_outcome(hat(load_poset(poset_spec))); })
        ->add_option("--poset", poset_spec, "JSON file, p6, k<n> or hat-<poset>")
        ->required();
    verb("catalog", "list catalog algebras, or print one", [&]() -> Outcome {
        if (!name.empty()) return algebra_outcome(load_algebra(name));
        json names = catalog_names();
        std::string text;
        for (auto const& n : catalog_names()) text += n + "\n";
        return {names, 0, text};
    })->add_option("name", name, "catalog entry to print");
    auto vp = verb("verify-paper", "run the acceptance suite",
                   [&] { return cmd_verify(g, only, verbose); });
    vp->add_option("--only", only, "criterion ids to run");
    vp->add_flag("-v,--verbose", verbose, "progress on stderr");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    if (g.threads > 0) set_thread_count(g.threads);
    try {
        auto start = std::chrono::steady_clock::now();
        Outcome o = action();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (g.json_out) {
            AlgebraList used;
            try {
                used = inputs(g);
            } catch (Error const&) {
            }
            std::cout << report(app.get_subcommands().front()->get_name(), o.result, used, secs)
                             .dump(2)
                      << "\n";
        } else {
            std::cout << o.text << (o.text.empty() || o.text.back() == '\n' ? "" : "\n");
        }
        return o.exit_code;
    } catch (ParseError const& e) {
        std::cerr << "parse error: " << e.what() << "\n";
    } catch (GuardError const& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return 2;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return kExitError;
}
