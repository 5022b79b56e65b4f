#include <doctest.h>

#include <set>

#include "quasivar/demorgan.hpp"
#include "quasivar/morphisms.hpp"
#include "quasivar/oracles.hpp"

using namespace qv;

namespace {

AlgebraList sample() {
    AlgebraList out;
    for (auto const& n : catalog_names()) out.push_back(catalog(n));
    out.push_back(direct_product({catalog("two"), catalog("s3")}));
    return out;
}

}  // namespace

TEST_CASE("hom enumeration agrees with brute force and is lexicographic") {
    auto algs = sample();
    for (auto const& a : algs)
        for (auto const& b : algs) {
            auto got = enumerate_homs(a, b);
            auto want = oracle::all_homs(a, b);
            CHECK(got == want);
            CHECK(std::is_sorted(got.begin(), got.end()));
            CHECK(embedding_exists(a, b).has_value() == oracle::find_hom(a, b, true).has_value());
            bool onto = std::any_of(want.begin(), want.end(), [&](Map const& m) {
                return std::set<Elem>(m.begin(), m.end()).size() == b.size();
            });
            CHECK(surjective_hom_exists(a, b).has_value() == onto);
        }
}

TEST_CASE("hom limit and early stop") {
    auto s = catalog("s5");
    CHECK(enumerate_homs(s, s, 1).size() == 1);
    HomSearchOptions opt;
    std::size_t seen = 0;
    for_each_hom(s, s, opt, [&](Map const&) { return ++seen < 2; });
    CHECK(seen <= 2);
}

TEST_CASE("composition of homomorphisms is a homomorphism") {
    auto a = catalog("s3"), b = catalog("s5"), c = catalog("s7");
    for (auto const& f : enumerate_homs(a, b))
        for (auto const& g : enumerate_homs(b, c)) CHECK(is_homomorphism(a, c, compose(g, f)));
}

TEST_CASE("trivial points are the idempotent fixed points") {
    for (auto const& a : sample()) {
        std::vector<Elem> want;
        for (Elem x = 0; x < a.size(); ++x) {
            bool fixed = true;
            for (std::size_t op = 0; op < a.signature().size(); ++op) {
                std::vector<Elem> args(a.signature()[op].arity, x);
                fixed = fixed && a.apply(op, args) == x;
            }
            if (fixed) want.push_back(x);
        }
        CHECK(trivial_subalgebra_points(a) == want);
    }
    CHECK(trivial_subalgebra_points(catalog("s1")).size() == 1);
    CHECK(trivial_subalgebra_points(catalog("c4")).empty());
}

TEST_CASE("separation matches a brute-force kernel meet") {
    auto algs = sample();
    for (auto const& a : algs)
        for (auto const& g : algs) {
            auto homs = oracle::all_homs(a, g);
            bool all_pairs = true;
            for (Elem x = 0; x < a.size(); ++x)
                for (Elem y = x + 1; y < a.size(); ++y)
                    all_pairs = all_pairs && std::any_of(homs.begin(), homs.end(),
                                                         [&](auto const& h) { return h[x] != h[y]; });
            CHECK(separates(a, {g}).separated == all_pairs);
        }
}

TEST_CASE("retracts") {
    auto x = catalog("x-trivial");
    CHECK(is_retract(catalog("c4"), catalog("c4")).has_value());
    auto r = is_retract(catalog("two"), direct_product({catalog("two"), catalog("s3")}));
    REQUIRE(r.has_value());
    CHECK(compose(r->retraction, r->embedding) == Map{0, 1});
    CHECK_FALSE(is_retract(catalog("d4"), catalog("c4")).has_value());
    CHECK(x.size() == 5);
}

TEST_CASE("zero-generated subalgebras") {
    // in odd Sugihara chains e = f is idempotent
    CHECK(zero_generated_subalgebra(catalog("s3")).size() == 1);
    CHECK(zero_generated_subalgebra(catalog("d4")).size() == 4);
    CHECK(is_zero_generated(catalog("c4")));
    CHECK(is_zero_generated(catalog("two")));
    CHECK_FALSE(is_zero_generated(catalog("s5")));
}
