#include <doctest.h>

#include <bit>

#include "quasivar/brouwer.hpp"
#include "quasivar/canonical.hpp"
#include "quasivar/demorgan.hpp"

using namespace qv;

namespace {

std::size_t brute_nonempty_up_sets(Poset const& x) {
    std::size_t count = 0;
    for (Mask m = 1; m <= x.all(); ++m) count += x.is_up_set(m);
    return count;
}

}  // namespace

TEST_CASE("poset validation") {
    CHECK_THROWS_AS(Poset::generated(2, {{0, 1}, {1, 0}}), Error);
    CHECK_THROWS_AS(Poset({0b011, 0b110, 0b100}), Error);  // not transitive
    CHECK_THROWS_AS(Poset({0b10, 0b11}), Error);           // not reflexive
    auto p = Poset::generated(3, {{0, 1}, {1, 2}});
    CHECK(p.leq(0, 2));
    CHECK(p.top() == 2u);
    CHECK(p.bottom() == 0u);
}

TEST_CASE("named posets") {
    auto p = p6();
    CHECK(p.size() == 6);
    CHECK(depth(p) == 3);
    CHECK(element_depth(p, *p.top()) == 0);
    for (unsigned n = 2; n <= 5; ++n) {
        auto k = k_poset(n);
        CHECK(k.size() == 2 * n + 2);
        CHECK(k.bounded());
        CHECK(depth(k) == 3);
    }
    // three depth-2 points give three new points
    CHECK(hat(p6()).size() == 9);
    CHECK(depth(hat(p6())) == 3);
    CHECK(hat(k_poset(3)).size() == 8 + 3);
}

TEST_CASE("up-set algebras") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 40; ++i) {
        auto x = random_dominated_poset(rng, 1 + i % 6);
        auto u = up_algebra(x);
        CHECK(u.algebra.size() == brute_nonempty_up_sets(x));
        CHECK(is_brouwerian(u.algebra));
        for (Elem e = 0; e < u.algebra.size(); ++e) CHECK(u.element_of(u.masks[e]) == e);
        CHECK(posets_isomorphic(prime_filter_poset(u.algebra), x).has_value());
    }
}

TEST_CASE("random Brouwerian algebras") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 30; ++i) {
        auto a = random_brouwerian(rng, 10);
        CHECK(is_brouwerian(a));
        CHECK(a.size() <= 10);
        CHECK(isomorphic(up_algebra(prime_filter_poset(a)).algebra, a));
    }
}

TEST_CASE("p-morphisms and their duals") {
    std::mt19937_64 rng(21);
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
        auto x = random_dominated_poset(rng, 2 + i % 5);
        auto y = random_dominated_poset(rng, 1 + i % 3);
        auto g = surjective_pmorphism_exists(x, y);
        if (!g) continue;
        ++checked;
        CHECK(is_pmorphism(x, y, *g));
        CHECK(is_isotone(x, y, *g));
        auto d = dual_of_pmorphism(x, y, *g);
        CHECK(is_embedding(up_algebra(y).algebra, up_algebra(x).algebra, d));
    }
    CHECK(checked > 10);
    auto p = p6();
    std::vector<std::size_t> id(p.size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
    CHECK(is_pmorphism(p, p, id));
    CHECK(sh_membership_dual(p, p));
    CHECK(sh_membership_dual(p, hat(p)));
}

TEST_CASE("Kuznetsov posets are pairwise separated") {
    for (unsigned m = 3; m <= 5; ++m)
        for (unsigned n = 3; n <= 5; ++n)
            if (m != n) CHECK_FALSE(surjective_pmorphism_exists(k_poset(m), k_poset(n)).has_value());
}
