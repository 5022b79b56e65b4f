#include <doctest.h>

#include <set>

#include "quasivar/congruence.hpp"
#include "quasivar/demorgan.hpp"
#include "support.hpp"

using namespace qv;

namespace {

AlgebraList sample() {
    AlgebraList out;
    for (auto const& n : catalog_names()) out.push_back(catalog(n));
    out.push_back(direct_product({catalog("two"), catalog("s3")}));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 8; ++i)
        if (auto a = random_demorgan_monoid(rng)) out.push_back(*a);
    return out;
}

std::vector<std::vector<Elem>> brute_congruences(FiniteAlgebra const& a) {
    std::vector<std::vector<Elem>> out;
    for (auto const& p : testing::all_partitions(a.size()))
        if (testing::compatible(a, p)) out.push_back(Congruence(p).block_ids());
    return out;
}

}  // namespace

TEST_CASE("congruence lattice equals the set of compatible partitions") {
    for (auto const& a : sample()) {
        if (a.size() > 8) continue;
        auto cons = all_congruences(a);
        std::set<std::vector<Elem>> got;
        for (auto const& c : cons) got.insert(c.block_ids());
        auto want = brute_congruences(a);
        CHECK(got == std::set<std::vector<Elem>>(want.begin(), want.end()));
        CHECK(cons.front().is_total());
        CHECK(std::is_sorted(cons.begin(), cons.end()));
    }
}

TEST_CASE("principal congruence is the least compatible partition joining the pair") {
    for (auto const& a : sample()) {
        if (a.size() > 8) continue;
        auto all = brute_congruences(a);
        for (Elem x = 0; x < a.size(); ++x)
            for (Elem y = x + 1; y < a.size(); ++y) {
                auto p = principal_congruence(a, x, y);
                CHECK(p.related(x, y));
                for (auto const& q : all)
                    if (q[x] == q[y]) CHECK(p.refines(Congruence(q)));
            }
    }
}

TEST_CASE("serial and parallel principal congruence kernels agree") {
    for (auto const& a : sample())
        CHECK(all_principal_congruences(a, Kernel::Serial) ==
              all_principal_congruences(a, Kernel::Parallel));
    auto big = direct_product({catalog("s5"), catalog("c4"), catalog("two")});
    CHECK(all_principal_congruences(big, Kernel::Serial) ==
          all_principal_congruences(big, Kernel::Parallel));
}

TEST_CASE("subdirect irreducibility via the count of atoms") {
    for (auto const& a : sample()) {
        if (a.size() > 8 || a.is_trivial()) continue;
        auto all = brute_congruences(a);
        std::vector<Congruence> nonid;
        for (auto const& p : all)
            if (!Congruence(p).is_identity()) nonid.push_back(Congruence(p));
        std::size_t atoms = 0;
        for (auto const& c : nonid) {
            bool minimal = std::none_of(nonid.begin(), nonid.end(), [&](Congruence const& d) {
                return d != c && d.refines(c);
            });
            atoms += minimal;
        }
        auto s = si_status(a);
        CHECK((s >= SiStatus::SI) == (atoms == 1));
        CHECK((s == SiStatus::Simple) == (all.size() == 2));
    }
    CHECK(si_status(catalog("c4")) == SiStatus::Simple);
    CHECK(si_status(catalog("s5")) == SiStatus::SI);
    CHECK(si_status(direct_product({catalog("two"), catalog("two")})) == SiStatus::None);
}

TEST_CASE("join and meet of congruences") {
    auto a = catalog("s7");
    auto p = principal_congruence(a, 2, 3), q = principal_congruence(a, 4, 5);
    auto j = join(p, q), m = meet(p, q);
    CHECK(p.refines(j));
    CHECK(q.refines(j));
    CHECK(m.refines(p));
    CHECK(m.refines(q));
    CHECK(congruence_generated(a, {{2, 3}, {4, 5}}) == j);
}

TEST_CASE("relative congruences are meets of hom kernels") {
    auto a = catalog("s5");
    auto rel = relative_congruences(a, {catalog("s3")});
    for (auto const& c : rel) CHECK(is_compatible(a, c));
    CHECK(rel.front().is_total());
    auto img = relatively_simple_image(catalog("s5"), {catalog("s5")});
    CHECK(img.algebra.size() >= 2);
}
