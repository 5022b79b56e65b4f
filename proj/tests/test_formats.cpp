#include <doctest.h>

#include "quasivar/demorgan.hpp"
#include "quasivar/formats.hpp"

using namespace qv;

TEST_CASE("algebra JSON round trip") {
    for (auto const& n : catalog_names()) {
        auto a = catalog(n);
        auto j = algebra_to_json(a);
        auto b = algebra_from_json(j);
        CHECK(a.same_tables(b));
        CHECK(a.names() == b.names());
        CHECK(algebra_to_json(b) == j);
    }
    auto j = algebra_to_json(catalog("c4"));
    CHECK(j["ops"]["e"] == 1);
    CHECK(j["ops"]["fuse"].size() == 4);
}

TEST_CASE("flat tables and malformed algebra JSON") {
    auto j = algebra_to_json(catalog("two"));
    j["ops"]["fuse"] = json::array({0, 0, 0, 1});
    CHECK(algebra_from_json(j).same_tables(catalog("two")));
    j["ops"]["fuse"] = json::array({0, 0, 0, 5});
    CHECK_THROWS_AS(algebra_from_json(j), Error);
    j.erase("size");
    CHECK_THROWS_AS(algebra_from_json(j), Error);
}

TEST_CASE("poset JSON") {
    auto p = p6();
    auto q = poset_from_json(poset_to_json(p));
    CHECK(q.size() == p.size());
    CHECK(q.names() == p.names());
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(q.up(i) == p.up(i));
    json bad = {{"size", 2}, {"leq", {{0, 0}, {1, 1}, {0, 1}, {1, 0}}}};
    CHECK_THROWS_AS(poset_from_json(bad), Error);
}

TEST_CASE("quasi-equation grammar") {
    auto q = parse_qe("x ^ y <= z & e <= x => x = y");
    REQUIRE(q.premises.size() == 2);
    CHECK(q.premises[0].to_string() == "meet(x, y) = meet(meet(x, y), z)");
    CHECK(q.premises[1].to_string() == "e = meet(e, x)");
    CHECK(q.conclusion.to_string() == "x = y");

    auto mints = parse_qe("x -> y <= x v z => ((x->y)->x) v ((x->y)->z) = e");
    REQUIRE(mints.premises.size() == 1);
    CHECK(mints.conclusion.lhs.to_string() == "join(imp(imp(x, y), x), imp(imp(x, y), z))");

    CHECK(parse_term("x -> y -> z").to_string() == "imp(x, imp(y, z))");
    CHECK(parse_term("~x * y ^ z v w").to_string() == "join(meet(fuse(neg(x), y), z), w)");
    CHECK(parse_qe("=> x = x").premises.empty());
}

TEST_CASE("De Morgan signature sugar") {
    auto& sig = dmm_signature();
    CHECK(parse_term("x -> y", &sig).to_string() == "neg(fuse(x, neg(y)))");
    CHECK(parse_term("f", &sig).to_string() == "neg(e)");
    CHECK(parse_term("fuse(x, e)", &sig).to_string() == "fuse(x, e)");
    CHECK_THROWS_AS(parse_term("imp(x, y)", &sig), ParseError);
    CHECK_THROWS_AS(parse_term("fuse(x)", &sig), ParseError);
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_qe("x = y &\n  x = $");
        FAIL("expected a parse error");
    } catch (ParseError const& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 7);
    }
    CHECK_THROWS_AS(parse_qe("x = "), ParseError);
    CHECK_THROWS_AS(parse_qe("x y"), ParseError);
    CHECK_THROWS_AS(parse_qe("X = y"), ParseError);
}

TEST_CASE("reports") {
    auto a = catalog("c4");
    CHECK(digest(a) == digest(algebra_from_json(algebra_to_json(a))));
    CHECK(digest(a) != digest(catalog("d4")));
    CHECK(digest(a).size() == 16);
    auto r = report("psc", {{"answer", "Yes"}}, {a}, 0.5);
    CHECK(r["version"] == kVersion);
    CHECK(r["inputs"][0] == digest(a));
    CHECK(r["verb"] == "psc");
}
