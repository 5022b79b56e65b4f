#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "quasivar/algebra.hpp"

namespace qv {

struct CanonicalForm {
    std::vector<Elem> code;      // size, then every table under the canonical labelling
    std::vector<Elem> labeling;  // element -> canonical label
};

CanonicalForm canonical_form(FiniteAlgebra const& a);

// Stable colour refinement; colours are label-invariant hashes, so colours of two
// algebras refined for the same number of rounds are comparable.
std::vector<std::uint64_t> refine_colors(FiniteAlgebra const& a, std::vector<std::uint64_t> colors,
                                         std::size_t rounds);
std::vector<std::uint64_t> initial_colors(FiniteAlgebra const& a);

// Least isomorphism A -> B in lexicographic order of the map, if any.
std::optional<std::vector<Elem>> are_isomorphic(FiniteAlgebra const& a, FiniteAlgebra const& b);
bool isomorphic(FiniteAlgebra const& a, FiniteAlgebra const& b);

// Keeps the first representative of each isomorphism class, preserving order.
std::vector<FiniteAlgebra> dedupe_isomorphic(std::vector<FiniteAlgebra> algebras);

}  // namespace qv
