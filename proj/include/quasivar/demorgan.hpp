#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "quasivar/algebra.hpp"
#include "quasivar/quasivar.hpp"
#include "quasivar/term.hpp"

namespace qv {

// fuse/2, meet/2, join/2, neg/1, e/0
Signature const& dmm_signature();
// fuse/2, imp/2, meet/2, join/2, e/0
Signature const& dunn_signature();
// imp/2, meet/2, join/2, e/0
Signature const& brouwer_signature();
// imp/2, meet/2, join/2, e/0, bot/0
Signature const& heyting_signature();

struct AxiomReport {
    bool ok = true;
    std::string failed;  // first failed axiom, empty when ok
    explicit operator bool() const { return ok; }
};

AxiomReport check_demorgan_monoid(FiniteAlgebra const& a);
AxiomReport check_dunn_monoid(FiniteAlgebra const& a);
AxiomReport check_brouwerian(FiniteAlgebra const& a);
AxiomReport check_heyting(FiniteAlgebra const& a);
bool is_demorgan_monoid(FiniteAlgebra const& a);
bool is_dunn_monoid(FiniteAlgebra const& a);
bool is_brouwerian(FiniteAlgebra const& a);

// Lattice order through the meet operation.
bool leq(FiniteAlgebra const& a, Elem x, Elem y);

// Sugihara chain S_{2n+1}; element i stands for i - n.
FiniteAlgebra sugihara(unsigned n);
// two, s1, s3, s5, ..., c4, d4, x-trivial
FiniteAlgebra catalog(std::string const& name);
std::vector<std::string> catalog_names();

FiniteAlgebra dunn_reduct(FiniteAlgebra const& dmm);
// Brouwerian algebra viewed as a Dunn monoid (fusion = meet).
FiniteAlgebra brouwer_as_dunn(FiniteAlgebra const& b);

struct FactResult {
    std::string fact;
    bool holds = false;
    std::string detail;
};
std::vector<FactResult> dmm_facts_suite(FiniteAlgebra const& a);

// Element order: A, then A' in A's order, then bottom, then top.
FiniteAlgebra reflect(FiniteAlgebra const& dunn);
Congruence reflect_congruence(FiniteAlgebra const& dunn, Congruence const& theta);
// R(A+) extended by one element x (the last index).
FiniteAlgebra x_construction(FiniteAlgebra const& dmm);

bool in_M(FiniteAlgebra const& a);
bool in_N(FiniteAlgebra const& a);

enum class PscClass { Boolean, D4, OddSugihara, SubM, NotPSC };
char const* to_string(PscClass c);
PscClass classify_psc_variety(GeneratorSet const& gens);

struct JepConditions {
    bool psc = false;            // (i)
    bool simple_over_d4 = false; // (ii)
    bool simple_over_c4 = false; // (iii)
    json witnesses;
    bool any() const { return psc || simple_over_d4 || simple_over_c4; }
};
JepConditions jep_classification_conditions(GeneratorSet const& gens,
                                            Guards const& g = default_guards());

// Heyting algebra on a finite distributive lattice given by its order; bot and e are the bounds.
FiniteAlgebra heyting_from_order(std::vector<std::vector<bool>> const& le,
                                 std::vector<std::string> names = {});
// The two subdirectly irreducible five-element Heyting algebras: the chain and 2x2 with a new top.
FiniteAlgebra heyting_chain5();
FiniteAlgebra heyting_square_plus_top();

// The transform of Brouwerian terms into Dunn monoid terms; applied to both sides of every
// (in)equation of a quasi-equation by amendment(QuasiEquation).
Term amendment(Term const& t);
QuasiEquation amendment(QuasiEquation const& q);

struct RandomDmmOptions {
    std::size_t max_size = 6;
    std::size_t attempts = 2000;
};
// A random De Morgan monoid found by seeded search; nullopt if none was found.
std::optional<FiniteAlgebra> random_demorgan_monoid(std::mt19937_64& rng,
                                                   RandomDmmOptions const& opt = {});

}  // namespace qv
