#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "quasivar/algebra.hpp"
#include "quasivar/morphisms.hpp"

namespace qv {

using Mask = std::uint64_t;

// Finite poset with order rows stored as bitmasks: bit j of up(i) is set iff i <= j.
class Poset {
public:
    Poset() = default;
    Poset(std::vector<Mask> up_rows, std::vector<std::string> names = {});
    // Reflexive-transitive closure of the given pairs (i <= j); rejects cycles.
    static Poset generated(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> const& le,
                           std::vector<std::string> names = {});

    std::size_t size() const { return up_.size(); }
    bool leq(std::size_t i, std::size_t j) const { return up_[i] >> j & 1; }
    Mask up(std::size_t i) const { return up_[i]; }
    Mask down(std::size_t i) const { return down_[i]; }
    Mask all() const { return size() == 64 ? ~Mask{0} : (Mask{1} << size()) - 1; }
    Mask up_closure(Mask m) const;
    Mask down_closure(Mask m) const;
    bool is_up_set(Mask m) const { return up_closure(m) == m; }

    std::optional<std::size_t> top() const;
    std::optional<std::size_t> bottom() const;
    bool dominated() const { return top().has_value(); }
    bool bounded() const { return top() && bottom(); }

    std::vector<std::string> const& names() const { return names_; }
    std::string name(std::size_t i) const;

    // Subposet on the points of m, in index order, with the inclusion map.
    std::pair<Poset, std::vector<std::size_t>> induced(Mask m) const;

private:
    std::vector<Mask> up_, down_;
    std::vector<std::string> names_;
};

std::optional<std::vector<std::size_t>> posets_isomorphic(Poset const& x, Poset const& y);

struct UpSetAlgebra {
    FiniteAlgebra algebra;     // Brouwerian signature
    std::vector<Mask> masks;   // up-set of each element, sorted by (size, mask)
    Elem element_of(Mask m) const;
};

// Non-empty up-sets of a dominated poset; U -> V is X minus the down-closure of U \ V.
UpSetAlgebra up_algebra(Poset const& x, Guards const& g = default_guards());

// Prime filters of a finite Brouwerian algebra ordered by inclusion. Point i is the filter
// generated by prime_filter_generators(a)[i]; the whole algebra is included.
Poset prime_filter_poset(FiniteAlgebra const& a);
std::vector<Elem> prime_filter_generators(FiniteAlgebra const& a);

// h: A -> B induces B_* -> A_*, Q |-> h^-1[Q], on prime filter poset indices.
std::vector<std::size_t> dual_of_hom(FiniteAlgebra const& a, FiniteAlgebra const& b, Map const& h);
// g: X -> Y induces Up(Y) -> Up(X), V |-> g^-1[V], on up_algebra element indices.
Map dual_of_pmorphism(Poset const& x, Poset const& y, std::vector<std::size_t> const& g,
                      Guards const& gd = default_guards());

bool is_isotone(Poset const& x, Poset const& y, std::vector<std::size_t> const& g);
bool is_pmorphism(Poset const& x, Poset const& y, std::vector<std::size_t> const& g);

std::vector<int> element_depths(Poset const& x);
int element_depth(Poset const& x, std::size_t i);
int depth(Poset const& x);

// Adds a minimal point below each pair of distinct depth-2 points; new points follow the old
// ones, ordered by their pair.
Poset hat(Poset const& x);

Poset k_poset(unsigned n);
// 0 < a, b, c < 1 < top
Poset p6();

// Least surjective p-morphism U -> Y in the order used by the search, if any.
std::optional<std::vector<std::size_t>> surjective_pmorphism_exists(Poset const& u,
                                                                    Poset const& y);
// Whether some non-empty up-set of Z maps onto Y by a p-morphism, i.e. Y* is in SH(Z*).
bool sh_membership_dual(Poset const& y, Poset const& z, Guards const& g = default_guards());
std::vector<Mask> nonempty_up_sets(Poset const& x, Guards const& g = default_guards());

// Dominated poset on n points: a random order on n-1 points plus a new top.
Poset random_dominated_poset(std::mt19937_64& rng, std::size_t n);
// Brouwerian algebra on the down-set lattice of a random poset, residuum computed by search.
FiniteAlgebra random_brouwerian(std::mt19937_64& rng, std::size_t max_size);

}  // namespace qv
