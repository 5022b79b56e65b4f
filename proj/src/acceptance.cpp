#include "quasivar/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "quasivar/brouwer.hpp"
#include "quasivar/canonical.hpp"
#include "quasivar/demorgan.hpp"
#include "quasivar/formats.hpp"
#include "quasivar/oracles.hpp"
#include "quasivar/quasivar.hpp"

namespace qv {

namespace {

struct Tally {
    std::size_t checks = 0;
    std::vector<std::string> failures;

    void expect(bool ok, std::string const& what) {
        ++checks;
        if (!ok) failures.push_back(what);
    }
    bool pass() const { return failures.empty(); }
    std::string detail() const {
        std::ostringstream s;
        s << checks << " checks";
        if (!failures.empty()) {
            s << ", " << failures.size() << " failed: " << failures.front();
            if (failures.size() > 1) s << " (+" << failures.size() - 1 << " more)";
        }
        return s.str();
    }
};

FiniteAlgebra x_two_s3() { return x_construction(direct_product({catalog("two"), catalog("s3")})); }

GeneratorSet heyting_pair() { return GeneratorSet({heyting_chain5(), heyting_square_plus_top()}); }

FiniteAlgebra up(Poset const& p) { return up_algebra(p).algebra; }

std::string label(std::vector<std::string> const& names) {
    std::string s = "{";
    for (auto const& n : names) s += (s.size() > 1 ? "," : "") + n;
    return s + "}";
}

// Catalog generator sets with one or two members.
std::vector<std::pair<std::string, GeneratorSet>> catalog_sets() {
    std::vector<std::pair<std::string, GeneratorSet>> out;
    auto names = catalog_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        out.emplace_back(label({names[i]}), GeneratorSet({catalog(names[i])}));
        for (std::size_t j = i + 1; j < names.size(); ++j)
            out.emplace_back(label({names[i], names[j]}),
                             GeneratorSet({catalog(names[i]), catalog(names[j])}));
    }
    return out;
}

void catalog_validity(Tally& t) {
    for (auto name : {"two", "s3", "s5", "s7", "c4", "d4", "x-trivial"}) {
        auto r = check_demorgan_monoid(catalog(name));
        t.expect(r.ok, std::string(name) + " fails " + r.failed);
    }
    for (auto name : {"c4", "d4", "two", "x-trivial"})
        t.expect(si_status(catalog(name)) == SiStatus::Simple, std::string(name) + " not simple");
}

void minimality(Tally& t) {
    for (auto name : {"two", "s3", "c4", "d4"}) {
        auto v = minimal_quasivariety_check(GeneratorSet({catalog(name)}));
        t.expect(v.answer == Answer::Yes, std::string(name) + ": " + to_string(v.answer));
    }
}

void psc_classification(Tally& t) {
    struct Case {
        std::string name;
        AlgebraList gens;
        PscClass expected;
    };
    std::vector<Case> cases = {
        {"{2}", {catalog("two")}, PscClass::Boolean},
        {"{D4}", {catalog("d4")}, PscClass::D4},
        {"{S3}", {catalog("s3")}, PscClass::OddSugihara},
        {"{C4}", {catalog("c4")}, PscClass::SubM},
        {"{2,S3}", {catalog("two"), catalog("s3")}, PscClass::NotPSC},
        {"{X(2xS3)}", {x_two_s3()}, PscClass::NotPSC},
    };
    for (auto const& c : cases) {
        GeneratorSet g(c.gens);
        PscClass got = classify_psc_variety(g);
        t.expect(got == c.expected, c.name + " classified " + to_string(got));
        Verdict v = psc_check(g);
        t.expect(v.definite() && v.no() == (got == PscClass::NotPSC),
                 c.name + " psc_check " + to_string(v.answer) + " at " + v.stage);
    }
}

void jep_cases(Tally& t) {
    auto expect = [&](std::string const& name, GeneratorSet const& g, Answer want) {
        Verdict v = jep_check(g);
        t.expect(v.answer == want, name + ": " + to_string(v.answer));
    };
    expect("{X(2xS3)}", GeneratorSet({x_two_s3()}), Answer::Yes);
    expect("Heyting pair", heyting_pair(), Answer::Yes);
    expect("{2,S3}", GeneratorSet({catalog("two"), catalog("s3")}), Answer::No);
    expect("{C4,D4}", GeneratorSet({catalog("c4"), catalog("d4")}), Answer::No);
}

void no_single_fsi_generator(Tally& t) {
    auto run = [&](std::string const& name, GeneratorSet const& g, bool embed_check) {
        AlgebraList fsi = si_members_of_hs(g);
        t.expect(fsi.size() >= 2, name + ": fewer than two FSI members");
        for (std::size_t i = 0; i < fsi.size(); ++i) {
            AlgebraList hs = hs_class(fsi[i]);
            bool misses = false;
            for (std::size_t j = 0; j < fsi.size() && !misses; ++j)
                misses = std::none_of(hs.begin(), hs.end(), [&](FiniteAlgebra const& b) {
                    return isomorphic(b, fsi[j]);
                });
            t.expect(misses, name + ": FSI member " + std::to_string(i) + " covers all others");
            if (embed_check)
                t.expect(embedding_exists(fsi[i], g[0]).has_value(),
                         name + ": FSI member " + std::to_string(i) + " does not embed");
        }
    };
    run("Heyting pair", heyting_pair(), false);
    run("X(2xS3)", GeneratorSet({x_two_s3()}), true);
}

void reflection_lemma(Tally& t) {
    std::vector<std::pair<std::string, FiniteAlgebra>> inputs = {
        {"trivial", FiniteAlgebra::trivial(dunn_signature())},
        {"2+", dunn_reduct(catalog("two"))},
        {"S3+", dunn_reduct(catalog("s3"))},
        {"(2xS3)+", dunn_reduct(direct_product({catalog("two"), catalog("s3")}))},
    };
    for (auto const& [name, a] : inputs) {
        FiniteAlgebra r = reflect(a);
        Elem n = static_cast<Elem>(a.size());
        t.expect(in_M(r), name + ": reflection not in M");

        std::set<ElementSet> expected_subs;
        for (auto const& s : enumerate_subuniverses(a)) {
            std::vector<Elem> u;
            for (Elem x : s.elements()) {
                u.push_back(x);
                u.push_back(n + x);
            }
            u.push_back(2 * n);
            u.push_back(2 * n + 1);
            ElementSet rs = ElementSet::of(r.size(), u);
            expected_subs.insert(rs);
            t.expect(isomorphic(induced_subalgebra(r, rs).algebra,
                                reflect(induced_subalgebra(a, s).algebra)),
                     name + ": subalgebra is not the reflection of its trace");
        }
        auto subs = enumerate_subuniverses(r);
        t.expect(std::set<ElementSet>(subs.begin(), subs.end()) == expected_subs,
                 name + ": subuniverses of the reflection do not match");

        std::set<std::vector<Elem>> expected_cons;
        for (auto const& theta : all_congruences(a)) {
            Congruence rt = reflect_congruence(a, theta);
            expected_cons.insert(rt.block_ids());
            t.expect(isomorphic(quotient(r, rt).algebra, reflect(quotient(a, theta).algebra)),
                     name + ": quotient by a reflected congruence is not a reflection");
        }
        expected_cons.insert(Congruence::total(r.size()).block_ids());
        std::set<std::vector<Elem>> cons;
        for (auto const& c : all_congruences(r)) cons.insert(c.block_ids());
        t.expect(cons == expected_cons, name + ": congruences of the reflection do not match");
    }
    t.expect(isomorphic(reflect(FiniteAlgebra::trivial(dunn_signature())), catalog("c4")),
             "R(trivial) is not C4");
}

void duality(Tally& t, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size(1, 7);
    for (int i = 0; i < 200; ++i) {
        Poset x = random_dominated_poset(rng, size(rng));
        t.expect(posets_isomorphic(prime_filter_poset(up(x)), x).has_value(),
                 "poset round trip " + std::to_string(i));
    }
    for (int i = 0; i < 200; ++i) {
        FiniteAlgebra a = random_brouwerian(rng, 12);
        t.expect(isomorphic(up(prime_filter_poset(a)), a), "algebra round trip " + std::to_string(i));
    }
    auto injective = [](auto const& m) {
        std::set<std::size_t> s(m.begin(), m.end());
        return s.size() == m.size();
    };
    auto surjective = [](auto const& m, std::size_t n) {
        std::set<std::size_t> s(m.begin(), m.end());
        return s.size() == n;
    };
    for (int i = 0; i < 200; ++i) {
        FiniteAlgebra a = random_brouwerian(rng, 10);
        FiniteAlgebra dom, cod;
        Map h;
        int kind = i % 3;
        if (kind == 2) {
            FiniteAlgebra b = random_brouwerian(rng, 8);
            auto homs = enumerate_homs(a, b, 64);
            if (homs.empty()) {
                kind = 0;
            } else {
                dom = a;
                cod = b;
                h = homs[std::uniform_int_distribution<std::size_t>(0, homs.size() - 1)(rng)];
            }
        }
        if (kind == 0) {
            std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(a.size() - 1));
            Quotient q = quotient(a, principal_congruence(a, pick(rng), pick(rng)));
            dom = a;
            cod = q.algebra;
            h = q.projection;
        } else if (kind == 1) {
            std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(a.size() - 1));
            std::vector<Elem> seed_elems{pick(rng), pick(rng)};
            Subalgebra s = subalgebra_generated(a, seed_elems);
            dom = s.algebra;
            cod = a;
            h = s.inclusion;
        }
        auto d = dual_of_hom(dom, cod, h);
        std::size_t dom_points = prime_filter_generators(dom).size();
        bool ok = surjective(h, cod.size()) == injective(d) &&
                  injective(h) == surjective(d, dom_points);
        t.expect(ok, "dual of hom instance " + std::to_string(i));
    }
}

void hard_part(Tally& t) {
    std::vector<std::pair<std::string, Poset>> ps = {{"P6", p6()}, {"K3", k_poset(3)}, {"K4", k_poset(4)}};
    for (std::size_t z = 0; z < ps.size(); ++z) {
        Poset hz = hat(ps[z].second);
        for (std::size_t y = 1; y < ps.size(); ++y) {
            if (y == z) continue;
            t.expect(!sh_membership_dual(ps[y].second, hz),
                     ps[y].first + " in SH of hat " + ps[z].first);
        }
        for (auto const& [wn, w] : ps)
            t.expect(!surjective_pmorphism_exists(hz, w).has_value(),
                     "hat " + ps[z].first + " maps onto " + wn);
    }
}

void incompleteness_witness(Tally& t) {
    FiniteAlgebra hp = up(hat(p6())), hk = up(hat(k_poset(3))), p = up(p6());
    GeneratorSet gens({hp, hk});
    Verdict v = sc_check(gens, 2, true);
    bool witness_ok = false;
    if (v.no() && v.witness.contains("witness"))
        witness_ok = isomorphic(algebra_from_json(v.witness["witness"]), p);
    t.expect(v.no(), std::string("sc_check answered ") + to_string(v.answer));
    t.expect(witness_ok, "witness is not P6*");
    t.expect(!q_membership(p, GeneratorSet({direct_product({hp, hk})})), "P6* in Q(product)");
    t.expect(v_membership(p, GeneratorSet({hp})), "P6* not in V(hat P6*)");
}

void kuznetsov(Tally& t) {
    FiniteAlgebra k3 = up(k_poset(3)), k4 = up(k_poset(4));
    t.expect(!v_membership(k3, GeneratorSet({k4})), "K3* in V(K4*)");
    t.expect(!v_membership(k4, GeneratorSet({k3})), "K4* in V(K3*)");
}

void facts(Tally& t, std::uint64_t seed) {
    auto run = [&](std::string const& name, FiniteAlgebra const& a) {
        for (auto const& f : dmm_facts_suite(a))
            t.expect(f.holds, name + ": fact " + f.fact + " (" + f.detail + ")");
    };
    for (auto const& name : catalog_names()) run(name, catalog(name));
    std::mt19937_64 rng(seed);
    int found = 0;
    for (int tries = 0; found < 100 && tries < 1000; ++tries)
        if (auto a = random_demorgan_monoid(rng)) run("random " + std::to_string(found++), *a);
    t.expect(found == 100, "only " + std::to_string(found) + " random De Morgan monoids found");
}

void oracle_equivalence(Tally& t, std::ostream* log) {
    for (auto const& [name, g] : catalog_sets()) {
        try {
            Verdict j = jep_check(g);
            auto oj = oracle::jep(g);
            t.expect(j.definite() && j.yes() == oj.holds,
                     name + ": jep " + to_string(j.answer) + " vs oracle " + (oj.holds ? "yes" : "no"));
            Verdict p = psc_check(g);
            auto op = oracle::psc(g);
            t.expect(p.definite() && p.yes() == op.holds,
                     name + ": psc " + to_string(p.answer) + " vs oracle " + (op.holds ? "yes" : "no"));
            if (log)
                *log << "  " << name << " jep=" << to_string(j.answer) << " psc=" << to_string(p.answer)
                     << " (oracle members " << op.members << ")\n";
        } catch (Error const& e) {
            t.expect(false, name + ": " + e.what());
        }
    }
}

void hierarchy(Tally& t, std::ostream* log) {
    auto sets = catalog_sets();
    sets.emplace_back("{X(2xS3)}", GeneratorSet({x_two_s3()}));
    sets.emplace_back("Heyting pair", heyting_pair());
    sets.emplace_back("{Up(hat P6),Up(hat K3)}",
                      GeneratorSet({up(hat(p6())), up(hat(k_poset(3)))}));
    auto guarded = [](auto fn) {
        try {
            return fn();
        } catch (GuardError const&) {
            return Verdict{};
        }
    };
    for (auto const& [name, g] : sets) {
        Verdict sc = guarded([&] { return sc_check(g, 2, true); });
        Verdict psc = guarded([&] { return psc_check(g); });
        Verdict jep = guarded([&] { return jep_check(g); });
        if (sc.answer == Answer::Yes && psc.definite())
            t.expect(psc.yes(), name + ": SC but not PSC");
        if (psc.answer == Answer::Yes && jep.definite())
            t.expect(jep.yes(), name + ": PSC but not JEP");
        if (sc.answer == Answer::Yes && jep.definite())
            t.expect(jep.yes(), name + ": SC but not JEP");
        if (log)
            *log << "  " << name << " sc=" << to_string(sc.answer) << " psc=" << to_string(psc.answer)
                 << " jep=" << to_string(jep.answer) << "\n";
    }
}

}  // namespace

std::vector<CriterionResult> run_acceptance(AcceptanceOptions const& opt) {
    struct Item {
        int id;
        std::string title;
        double budget;
        std::function<void(Tally&)> run;
    };
    std::vector<Item> items = {
        {1, "catalog validity", 1, catalog_validity},
        {2, "minimality of the four minimal varieties", 30, minimality},
        {3, "PSC classification agrees with psc_check", 120, psc_classification},
        {4, "JEP verdicts", 300, jep_cases},
        {5, "no single FSI generator", 600, no_single_fsi_generator},
        {6, "reflection lemma instances", 60, reflection_lemma},
        {7, "duality round trips", 120, [&](Tally& t) { duality(t, opt.seed); }},
        {8, "hard-part lemma instances", 300, hard_part},
        {9, "structural incompleteness witness", 600, incompleteness_witness},
        {10, "Kuznetsov separation instance", 300, kuznetsov},
        {11, "facts suite", 120, [&](Tally& t) { facts(t, opt.seed + 11); }},
        {12, "oracle equivalence", 900, [&](Tally& t) { oracle_equivalence(t, opt.log); }},
        {13, "hierarchy SC => PSC => JEP", 900, [&](Tally& t) { hierarchy(t, opt.log); }},
    };
    std::vector<CriterionResult> out;
    for (auto const& item : items) {
        if (!opt.only.empty() &&
            std::find(opt.only.begin(), opt.only.end(), item.id) == opt.only.end())
            continue;
        if (opt.log) *opt.log << "running [" << item.id << "] " << item.title << "\n" << std::flush;
        Tally t;
        auto start = std::chrono::steady_clock::now();
        try {
            item.run(t);
        } catch (std::exception const& e) {
            t.expect(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        CriterionResult r{item.id, item.title, t.pass() && secs <= item.budget, t.detail(), secs,
                          item.budget};
        if (secs > item.budget) r.detail += ", over time budget";
        out.push_back(r);
    }
    return out;
}

std::string format_result(CriterionResult const& r) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << " (" << r.seconds
      << "s / " << r.budget << "s budget): " << r.detail;
    return s.str();
}

}  // namespace qv
