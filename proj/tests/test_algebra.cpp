#include <doctest.h>

#include <set>

#include "quasivar/canonical.hpp"
#include "quasivar/demorgan.hpp"
#include "quasivar/oracles.hpp"
#include "support.hpp"

using namespace qv;

TEST_CASE("signature lookup and arity checks") {
    Signature sig({{"f", 2}, {"g", 1}, {"c", 0}});
    CHECK(sig.index_of("g") == 1);
    CHECK_FALSE(sig.find("h").has_value());
    CHECK(sig.has_constant());
    CHECK(sig.max_arity() == 2);
    CHECK_THROWS_AS(FiniteAlgebra(sig, 2, {{0, 1, 1, 0}, {1, 0}}), Error);
    CHECK_THROWS_AS(FiniteAlgebra(sig, 2, {{0, 1, 1, 2}, {1, 0}, {0}}), Error);
}

TEST_CASE("direct product is componentwise with lexicographic element order") {
    auto two = catalog("two"), s3 = catalog("s3");
    AlgebraList f{two, s3};
    auto p = direct_product(f);
    REQUIRE(p.size() == 6);
    auto fuse = p.signature().index_of("fuse");
    for (Elem x = 0; x < p.size(); ++x) {
        auto cx = product_coordinates(f, x);
        CHECK(product_index(f, cx) == x);
        for (Elem y = 0; y < p.size(); ++y) {
            auto cy = product_coordinates(f, y);
            auto cz = product_coordinates(f, p.binary(fuse, x, y));
            CHECK(cz[0] == two.binary(fuse, cx[0], cy[0]));
            CHECK(cz[1] == s3.binary(fuse, cx[1], cy[1]));
        }
    }
    CHECK(product_coordinates(f, 1) == std::vector<Elem>{0, 1});
    CHECK(direct_product(dmm_signature(), {}).size() == 1);
}

TEST_CASE("subuniverse enumeration matches the closure oracle") {
    std::vector<FiniteAlgebra> algs;
    for (auto const& n : catalog_names()) algs.push_back(catalog(n));
    algs.push_back(direct_product({catalog("two"), catalog("s3")}));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10; ++i)
        if (auto a = random_demorgan_monoid(rng)) algs.push_back(*a);
    for (auto const& a : algs) {
        auto got = enumerate_subuniverses(a);
        auto want = oracle::small_subuniverses(a, a.size());
        CHECK(std::set<ElementSet>(got.begin(), got.end()) ==
              std::set<ElementSet>(want.begin(), want.end()));
        for (auto const& s : got) CHECK(is_closed(a, s));
    }
}

TEST_CASE("subalgebra enumeration is guarded") {
    Guards g;
    g.subalgebra_enumeration = 4;
    CHECK_THROWS_AS(enumerate_subuniverses(catalog("s5"), g), GuardError);
    CHECK_NOTHROW(enumerate_subuniverses(catalog("c4"), g));
}

TEST_CASE("quotient tables respect the projection") {
    auto a = direct_product({catalog("two"), catalog("s3")});
    for (auto const& theta : all_congruences(a)) {
        auto q = quotient(a, theta);
        CHECK(q.algebra.size() == theta.num_blocks());
        CHECK(is_homomorphism(a, q.algebra, q.projection));
    }
}

TEST_CASE("canonical forms are invariant under relabelling") {
    std::mt19937_64 rng(11);
    for (auto const& n : catalog_names()) {
        auto a = catalog(n);
        for (int i = 0; i < 5; ++i) {
            auto b = testing::permuted(a, testing::random_permutation(a.size(), rng));
            CHECK(canonical_form(a).code == canonical_form(b).code);
            auto iso = are_isomorphic(a, b);
            REQUIRE(iso.has_value());
            CHECK(is_embedding(a, b, *iso));
        }
    }
    CHECK_FALSE(isomorphic(catalog("c4"), catalog("d4")));
    CHECK(canonical_form(catalog("c4")).code != canonical_form(catalog("d4")).code);
}

TEST_CASE("dedupe keeps the first of each isomorphism class") {
    std::mt19937_64 rng(3);
    auto c4 = catalog("c4");
    AlgebraList list{c4, testing::permuted(c4, testing::random_permutation(4, rng)), catalog("d4")};
    auto d = dedupe_isomorphic(list);
    REQUIRE(d.size() == 2);
    CHECK(d[0].same_tables(c4));
}

TEST_CASE("element sets") {
    ElementSet s(70);
    CHECK(s.insert(3));
    CHECK(s.insert(68));
    CHECK_FALSE(s.insert(3));
    CHECK(s.count() == 2);
    CHECK(s.elements() == std::vector<Elem>{3, 68});
    CHECK(s.subset_of(ElementSet::full(70)));
}
