#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quasivar/algebra.hpp"
#include "quasivar/quasivar.hpp"

// Bounded brute-force deciders used to cross-check the library's decision procedures. They share
// only the algebra kernel (tables, products, subalgebras, isomorphism) with the code under test.
namespace qv::oracle {

// Plain backtracking over A's elements in index order; checks each operation instance once all
// of its arguments are mapped.
std::optional<std::vector<Elem>> find_hom(FiniteAlgebra const& a, FiniteAlgebra const& b,
                                          bool injective = false);
std::vector<std::vector<Elem>> all_homs(FiniteAlgebra const& a, FiniteAlgebra const& b);

struct JepOutcome {
    bool holds = true;
    std::string detail;  // the failing pair when !holds
};

// For every pair of nontrivial subalgebras A, B of generators, builds explicit embeddings of A and
// B into one product of generator copies (one copy per point pair to separate) and verifies them.
JepOutcome jep(GeneratorSet const& gens);

struct PscOutcome {
    bool holds = true;
    std::size_t members = 0;  // isomorphism classes examined
    std::string detail;
};

// Nontrivial members of size <= max_size found as subalgebras of products of at most max_fold
// generators; PSC holds within the bound iff each maps homomorphically into every other.
PscOutcome psc(GeneratorSet const& gens, std::size_t max_size = 8, std::size_t max_fold = 3);

// Subuniverses of A with at most max_size elements.
std::vector<ElementSet> small_subuniverses(FiniteAlgebra const& a, std::size_t max_size);

}  // namespace qv::oracle
