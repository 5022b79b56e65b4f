#include <doctest.h>

#include "quasivar/canonical.hpp"
#include "quasivar/demorgan.hpp"
#include "quasivar/formats.hpp"
#include "quasivar/oracles.hpp"
#include "quasivar/quasivar.hpp"

using namespace qv;

namespace {

GeneratorSet gens_of(std::initializer_list<char const*> names) {
    AlgebraList out;
    for (auto n : names) out.push_back(catalog(n));
    return GeneratorSet(out);
}

}  // namespace

TEST_CASE("free algebras have the universal mapping property") {
    for (auto set : {gens_of({"two"}), gens_of({"s3"}), gens_of({"c4"}), gens_of({"two", "s3"}),
                     gens_of({"d4"})}) {
        auto f = free_algebra(set, 1);
        CHECK(separates(f.algebra, set.algebras()).separated);
        for (auto const& g : set.algebras()) {
            auto homs = oracle::all_homs(f.algebra, g);
            for (Elem v = 0; v < g.size(); ++v)
                CHECK(std::any_of(homs.begin(), homs.end(),
                                  [&](auto const& h) { return h[f.generators[0]] == v; }));
        }
        auto terms = element_terms(f);
        for (Elem x = 0; x < f.algebra.size(); ++x)
            CHECK(eval(terms[x], f.algebra, {{"x1", f.generators[0]}}) == x);
    }
}

TEST_CASE("free algebra of rank two over the two-element algebra") {
    auto f = free_algebra(gens_of({"two"}), 2);
    // Boolean De Morgan monoids are Boolean algebras with e on top: 2^(2^2) elements
    CHECK(f.algebra.size() == 16);
    CHECK(f.coordinates.size() == 4);
}

TEST_CASE("serial and parallel free algebra kernels agree") {
    for (auto set : {gens_of({"s5"}), gens_of({"c4", "s3"}), gens_of({"d4"})}) {
        auto a = free_algebra(set, 1, default_guards(), Kernel::Serial);
        auto b = free_algebra(set, 1, default_guards(), Kernel::Parallel);
        CHECK(a.algebra.same_tables(b.algebra));
        CHECK(a.tuples == b.tuples);
    }
}

TEST_CASE("free algebra respects the carrier guard") {
    Guards g;
    g.derived_carrier = 10;
    CHECK_THROWS_AS(free_algebra(gens_of({"c4"}), 1, g), GuardError);
}

TEST_CASE("validity with replayable counterexamples") {
    auto& sig = dmm_signature();
    auto idem = parse_qe("x * x = x", &sig);
    CHECK(valid(idem, gens_of({"s5"})).yes());
    auto v = valid(idem, gens_of({"s3", "c4"}));
    REQUIRE(v.no());
    CHECK(v.witness["generator"] == 1);
    Assignment cx;
    CHECK_FALSE(holds_in(idem, catalog("c4"), default_guards(), &cx));
    CHECK(eval(idem.conclusion.lhs, catalog("c4"), cx) != eval(idem.conclusion.rhs, catalog("c4"), cx));
    CHECK(valid(parse_qe("x <= e & e <= x => x = e", &sig), gens_of({"d4"})).yes());
}

TEST_CASE("unifiability through the one-generated free algebra") {
    auto& sig = dmm_signature();
    CHECK(unifiable(parse_equations("x = ~x", &sig), gens_of({"s3"})).yes());
    CHECK(unifiable(parse_equations("x = ~x", &sig), gens_of({"two"})).no());
    CHECK(unifiable(parse_equations("e = f", &sig), gens_of({"c4"})).no());
    CHECK(passive(parse_qe("x = ~x => x = e", &sig), gens_of({"two"})));
    CHECK_FALSE(passive(parse_qe("x = ~x => x = e", &sig), gens_of({"s3"})));
}

TEST_CASE("Kollar and membership") {
    CHECK_FALSE(kollar_check(gens_of({"s3"})));
    CHECK(kollar_check(gens_of({"c4", "d4"})));
    CHECK(q_membership(catalog("two"), gens_of({"c4"})) == separates(catalog("two"), {catalog("c4")}).separated);
    CHECK(q_membership(catalog("s3"), gens_of({"s5"})));
    CHECK_FALSE(q_membership(catalog("s5"), gens_of({"s3"})));
    CHECK(v_membership(direct_product({catalog("s3"), catalog("s3")}), gens_of({"s5"})));
    CHECK_FALSE(v_membership(catalog("two"), gens_of({"s5"})));
    CHECK_FALSE(v_membership(catalog("c4"), gens_of({"s7"})));
    CHECK(excludes(catalog("c4"), catalog("s5")));
    CHECK_FALSE(excludes(catalog("c4"), catalog("c4")));
}

TEST_CASE("hs class and SI members") {
    auto hs = hs_class(catalog("s5"));
    // subalgebras and quotients of S5 are the odd and even Sugihara chains it contains
    for (auto const& a : hs) CHECK(v_membership(a, gens_of({"s5"})));
    auto si = si_members_of_hs(gens_of({"s5"}));
    for (auto const& a : si) CHECK(si_status(a) >= SiStatus::SI);
    CHECK(std::any_of(si.begin(), si.end(), [](auto const& a) { return isomorphic(a, catalog("s5")); }));
}

TEST_CASE("decision procedures on small generator sets") {
    CHECK(jep_check(gens_of({"two"})).answer == Answer::Yes);
    CHECK(jep_check(gens_of({"two", "s3"})).answer == Answer::No);
    CHECK(psc_check(gens_of({"c4"})).answer == Answer::Yes);
    CHECK(psc_check(gens_of({"s1"})).answer == Answer::Yes);
    CHECK(psc_check(gens_of({"two", "s3"})).answer == Answer::No);
    CHECK(minimal_quasivariety_check(gens_of({"s3"})).answer == Answer::Yes);
    CHECK(minimal_quasivariety_check(gens_of({"s5"})).answer == Answer::No);
    CHECK(minimal_quasivariety_check(gens_of({"s1"})).answer == Answer::No);
    CHECK(sc_check(gens_of({"two"}), 2, true).answer == Answer::Yes);
    CHECK(sc_check(gens_of({"two"}), 2, false).answer == Answer::Unknown);
}

TEST_CASE("oracles agree on singleton catalog sets") {
    for (auto const& n : catalog_names()) {
        GeneratorSet g({catalog(n)});
        CHECK(jep_check(g).yes() == oracle::jep(g).holds);
        CHECK(psc_check(g).yes() == oracle::psc(g).holds);
    }
}

TEST_CASE("admissibility is certified up to the bound") {
    auto& sig = dmm_signature();
    auto q = parse_qe("x = ~x => x = e", &sig);
    auto v = admissible_upto(q, gens_of({"s3"}), 1);
    CHECK(v.answer == Answer::CertifiedUpTo);
    auto w = admissible_upto(parse_qe("e <= x => x = e", &sig), gens_of({"s3"}), 1);
    CHECK(w.no());
}

TEST_CASE("verdict exit codes and JSON") {
    Verdict v{Answer::CertifiedUpTo, 3, "x", {}};
    CHECK(v.exit_code() == 0);
    CHECK(v.to_json()["bound"] == 3);
    CHECK(Verdict{Answer::No, 0, "x", {}}.exit_code() == 1);
    CHECK(Verdict{}.exit_code() == 2);
}
