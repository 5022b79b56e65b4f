#include <doctest.h>

#include "quasivar/demorgan.hpp"
#include "quasivar/formats.hpp"

using namespace qv;

TEST_CASE("catalog members are De Morgan monoids") {
    for (auto const& n : catalog_names()) {
        auto r = check_demorgan_monoid(catalog(n));
        CHECK_MESSAGE(r.ok, n << ": " << r.failed);
    }
    for (unsigned n = 0; n <= 4; ++n) CHECK(is_demorgan_monoid(sugihara(n)));
    CHECK(catalog("s7").size() == 7);
    CHECK_THROWS_AS(catalog("nonsense"), Error);
}

TEST_CASE("broken tables are rejected") {
    auto c4 = catalog("c4");
    auto t = c4.tables();
    auto neg = c4.signature().index_of("neg");
    t[neg] = {0, 1, 2, 3};
    CHECK_FALSE(is_demorgan_monoid(FiniteAlgebra(c4.signature(), 4, t)));
    t = c4.tables();
    t[c4.signature().index_of("e")] = {2};
    CHECK_FALSE(is_demorgan_monoid(FiniteAlgebra(c4.signature(), 4, t)));
}

TEST_CASE("Sugihara fusion on an odd chain") {
    auto s = sugihara(2);
    auto fuse = s.signature().index_of("fuse");
    // values -2..2 at indices 0..4
    CHECK(s.binary(fuse, 1, 3) == 1);  // -1 * 1 = -1
    CHECK(s.binary(fuse, 3, 0) == 0);  // 1 * -2 = -2
    CHECK(s.binary(fuse, 3, 4) == 4);
    CHECK(s.op("e") == 2);
}

TEST_CASE("reducts") {
    for (auto const& n : catalog_names()) CHECK(is_dunn_monoid(dunn_reduct(catalog(n))));
    auto h = heyting_chain5();
    CHECK(check_heyting(h).ok);
    CHECK(check_heyting(heyting_square_plus_top()).ok);
}

TEST_CASE("reflection and the one-point extension") {
    auto a = dunn_reduct(catalog("s3"));
    auto r = reflect(a);
    CHECK(r.size() == 2 * a.size() + 2);
    CHECK(is_demorgan_monoid(r));
    CHECK(in_M(r));
    auto x = x_construction(catalog("s3"));
    CHECK(x.size() == r.size() + 1);
    CHECK(is_demorgan_monoid(x));
    Elem xe = static_cast<Elem>(x.size() - 1);
    CHECK(x.op("neg", xe) == xe);
    // R(A+) sits inside X(A) on the first indices
    std::vector<Elem> first(r.size());
    for (Elem i = 0; i < r.size(); ++i) first[i] = i;
    CHECK(is_embedding(r, x, first));
    CHECK_FALSE(in_M(x_construction(direct_product({catalog("two"), catalog("s3")}))));
}

TEST_CASE("M and N membership") {
    CHECK(in_M(catalog("c4")));
    CHECK_FALSE(in_M(catalog("s3")));
    CHECK(in_N(catalog("c4")));
    CHECK_FALSE(in_N(catalog("d4")));
}

TEST_CASE("PSC variety classes") {
    CHECK(classify_psc_variety(GeneratorSet({catalog("two")})) == PscClass::Boolean);
    CHECK(classify_psc_variety(GeneratorSet({catalog("d4")})) == PscClass::D4);
    CHECK(classify_psc_variety(GeneratorSet({catalog("s5"), catalog("s3")})) ==
          PscClass::OddSugihara);
    CHECK(classify_psc_variety(GeneratorSet({catalog("c4")})) == PscClass::SubM);
    CHECK(classify_psc_variety(GeneratorSet({catalog("c4"), catalog("two")})) == PscClass::NotPSC);
}

TEST_CASE("JEP condition report") {
    auto c = jep_classification_conditions(GeneratorSet({catalog("d4")}));
    CHECK(c.psc);
    CHECK(c.any());
    auto d = jep_classification_conditions(GeneratorSet({catalog("two"), catalog("s3")}));
    CHECK_FALSE(d.any());
}

TEST_CASE("amendment") {
    auto& sig = brouwer_signature();
    auto t = amendment(parse_term("x -> y", &sig));
    CHECK(t.to_string() == "meet(imp(meet(x, e), meet(y, e)), e)");
    CHECK(amendment(parse_term("e", &sig)).to_string() == "e");
    auto q = amendment(parse_qe("x -> y <= x v z => e = x", &sig));
    CHECK(q.premises.size() == 1);
    CHECK(q.conclusion.rhs.to_string() == "meet(x, e)");
}

TEST_CASE("random De Morgan monoids are seeded and valid") {
    std::mt19937_64 r1(42), r2(42);
    int found = 0;
    for (int i = 0; i < 30; ++i) {
        auto a = random_demorgan_monoid(r1);
        auto b = random_demorgan_monoid(r2);
        REQUIRE(a.has_value() == b.has_value());
        if (!a) continue;
        ++found;
        CHECK(a->same_tables(*b));
        CHECK(is_demorgan_monoid(*a));
    }
    CHECK(found >= 20);
}

TEST_CASE("facts suite on the catalog") {
    for (auto const& n : catalog_names())
        for (auto const& f : dmm_facts_suite(catalog(n))) CHECK_MESSAGE(f.holds, n << " " << f.fact);
}
