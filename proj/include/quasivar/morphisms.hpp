#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "quasivar/algebra.hpp"

namespace qv {

using Map = std::vector<Elem>;

struct HomSearchOptions {
    bool injective = false;
    // Allowed images per domain element; an empty inner list means unrestricted.
    std::vector<std::vector<Elem>> const* domains = nullptr;
    std::size_t limit = std::numeric_limits<std::size_t>::max();
};

// Visits homomorphisms A -> B in increasing lexicographic order of the map.
// The visitor returns false to stop early. Returns the number visited.
std::size_t for_each_hom(FiniteAlgebra const& a, FiniteAlgebra const& b,
                         HomSearchOptions const& opt,
                         std::function<bool(Map const&)> const& visit);

std::vector<Map> enumerate_homs(FiniteAlgebra const& a, FiniteAlgebra const& b,
                                std::optional<std::size_t> limit = std::nullopt);
std::optional<Map> hom_exists(FiniteAlgebra const& a, FiniteAlgebra const& b);
std::optional<Map> embedding_exists(FiniteAlgebra const& a, FiniteAlgebra const& b);
std::optional<Map> surjective_hom_exists(FiniteAlgebra const& a, FiniteAlgebra const& b);

bool is_homomorphism(FiniteAlgebra const& a, FiniteAlgebra const& b, Map const& map);
bool is_embedding(FiniteAlgebra const& a, FiniteAlgebra const& b, Map const& map);
Map compose(Map const& second, Map const& first);  // second after first

struct Retraction {
    Map embedding;   // A -> B
    Map retraction;  // B -> A
};
std::optional<Retraction> is_retract(FiniteAlgebra const& a, FiniteAlgebra const& b);

std::vector<Elem> trivial_subalgebra_points(FiniteAlgebra const& a);
FiniteAlgebra zero_generated_subalgebra(FiniteAlgebra const& a);
bool is_zero_generated(FiniteAlgebra const& a);

struct Separation {
    bool separated = true;
    std::optional<std::pair<Elem, Elem>> failing_pair;
};

// Whether homomorphisms into members of `gens` separate the points of A,
// i.e. whether A belongs to ISP(gens).
Separation separates(FiniteAlgebra const& a, AlgebraList const& gens);

// Kernels of all homomorphisms A -> G for G in gens, deduplicated and sorted.
std::vector<Congruence> hom_kernels(FiniteAlgebra const& a, AlgebraList const& gens);

}  // namespace qv
