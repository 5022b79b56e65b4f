#include <doctest.h>

#include "quasivar/demorgan.hpp"
#include "quasivar/oracles.hpp"

using namespace qv;

TEST_CASE("oracle homs include identities and respect injectivity") {
    for (auto const& n : catalog_names()) {
        auto a = catalog(n);
        auto homs = oracle::all_homs(a, a);
        std::vector<Elem> id(a.size());
        for (Elem i = 0; i < a.size(); ++i) id[i] = i;
        CHECK(std::find(homs.begin(), homs.end(), id) != homs.end());
        CHECK(oracle::find_hom(a, a, true).has_value());
    }
    CHECK_FALSE(oracle::find_hom(catalog("s5"), catalog("s3"), true).has_value());
}

TEST_CASE("oracle subuniverses are closed and capped") {
    auto a = catalog("s7");
    for (auto const& s : oracle::small_subuniverses(a, 3)) {
        CHECK(s.count() <= 3);
        CHECK(is_closed(a, s));
    }
}

TEST_CASE("oracle verdicts on known cases") {
    CHECK(oracle::jep(GeneratorSet({catalog("s5")})).holds);
    CHECK_FALSE(oracle::jep(GeneratorSet({catalog("two"), catalog("s3")})).holds);
    CHECK(oracle::psc(GeneratorSet({catalog("c4")})).holds);
    CHECK_FALSE(oracle::psc(GeneratorSet({catalog("two"), catalog("s3")})).holds);
}
