#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "quasivar/algebra.hpp"

namespace qv {

enum class Kernel { Serial, Parallel };

Congruence principal_congruence(FiniteAlgebra const& a, Elem x, Elem y);
Congruence congruence_generated(FiniteAlgebra const& a,
                                std::vector<std::pair<Elem, Elem>> const& pairs);

// Principal congruences Cg(x, y) for all x < y, in pair order.
std::vector<Congruence> all_principal_congruences(FiniteAlgebra const& a,
                                                  Kernel kernel = Kernel::Parallel);

// Sorted by (number of blocks, block ids); the total relation comes first.
std::vector<Congruence> all_congruences(FiniteAlgebra const& a,
                                        Guards const& g = default_guards(),
                                        Kernel kernel = Kernel::Parallel);

// Meets of kernels of homomorphisms into the generators, plus the total relation.
std::vector<Congruence> relative_congruences(FiniteAlgebra const& a, AlgebraList const& gens,
                                             Guards const& g = default_guards());

enum class SiStatus { None, FSI, SI, Simple };
char const* to_string(SiStatus s);

SiStatus classify_in_lattice(std::vector<Congruence> const& lattice, std::size_t size);
SiStatus si_status(FiniteAlgebra const& a);
SiStatus si_status(FiniteAlgebra const& a, AlgebraList const& gens);

// A/theta for the least maximal proper relative congruence theta.
Quotient relatively_simple_image(FiniteAlgebra const& a, AlgebraList const& gens);

}  // namespace qv
