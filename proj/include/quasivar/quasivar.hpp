#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "quasivar/algebra.hpp"
#include "quasivar/closure.hpp"
#include "quasivar/congruence.hpp"
#include "quasivar/morphisms.hpp"
#include "quasivar/term.hpp"

namespace qv {

using json = nlohmann::json;

// A non-empty list of finite algebras over one signature, presenting Q(G) = ISP(G).
class GeneratorSet {
public:
    explicit GeneratorSet(AlgebraList algebras);
    AlgebraList const& algebras() const { return algebras_; }
    Signature const& signature() const { return algebras_.front().signature(); }
    std::size_t size() const { return algebras_.size(); }
    FiniteAlgebra const& operator[](std::size_t i) const { return algebras_[i]; }
    bool all_trivial() const;

private:
    AlgebraList algebras_;
};

struct FreeAlgebra {
    std::size_t rank = 0;
    FiniteAlgebra algebra;
    std::vector<Elem> generators;
    // one coordinate per (generator index, assignment of the free generators)
    std::vector<std::pair<std::size_t, std::vector<Elem>>> coordinates;
    std::vector<Elem> tuples;  // row-major, one row of coordinates per element

    Map projection(std::size_t coordinate) const;
    // Kernels of the coordinate projections; every homomorphism into a generator is one.
    std::vector<Congruence> projection_kernels() const;
};

FreeAlgebra free_algebra(GeneratorSet const& gens, std::size_t rank,
                         Guards const& g = default_guards(), Kernel kernel = Kernel::Parallel);

// Relative congruences of a free algebra, computed from its coordinate projections.
std::vector<Congruence> free_relative_congruences(FreeAlgebra const& f,
                                                  Guards const& g = default_guards());

// A shortest term denoting each element of the free algebra, over variables x1..xn.
std::vector<Term> element_terms(FreeAlgebra const& f);

enum class Answer { Yes, No, CertifiedUpTo, Unknown };
char const* to_string(Answer a);

struct Verdict {
    Answer answer = Answer::Unknown;
    std::size_t bound = 0;
    std::string stage;
    json witness;

    bool yes() const { return answer == Answer::Yes || answer == Answer::CertifiedUpTo; }
    bool no() const { return answer == Answer::No; }
    bool definite() const { return answer == Answer::Yes || answer == Answer::No; }
    int exit_code() const;
    json to_json() const;
};

Verdict valid(QuasiEquation const& q, GeneratorSet const& gens,
              Guards const& g = default_guards());
bool holds_in(QuasiEquation const& q, FiniteAlgebra const& a, Guards const& g = default_guards(),
              Assignment* counterexample = nullptr);

Verdict unifiable(std::vector<Equation> const& eqs, GeneratorSet const& gens,
                  Guards const& g = default_guards());
bool passive(QuasiEquation const& q, GeneratorSet const& gens, Guards const& g = default_guards());

bool kollar_check(GeneratorSet const& gens);

// Subalgebras of generators, up to isomorphism, that are relatively SI [relatively simple].
AlgebraList rsi_members(GeneratorSet const& gens, Guards const& g = default_guards());
AlgebraList relatively_simple_members(GeneratorSet const& gens,
                                      Guards const& g = default_guards());

// Nontrivial subdirectly irreducible members of HS(G), up to isomorphism. Quotients of the
// generators come first, in generator order and by decreasing size.
AlgebraList si_members_of_hs(GeneratorSet const& gens, Guards const& g = default_guards());
// All members of HS(A), up to isomorphism.
AlgebraList hs_class(FiniteAlgebra const& a, Guards const& g = default_guards());

Verdict jep_check(GeneratorSet const& gens, Guards const& g = default_guards());
Verdict psc_check(GeneratorSet const& gens, Guards const& g = default_guards());
Verdict minimal_quasivariety_check(GeneratorSet const& gens, Guards const& g = default_guards());
Verdict sc_check(GeneratorSet const& gens, std::size_t bound, bool assume_cd,
                 Guards const& g = default_guards());
Verdict admissible_upto(QuasiEquation const& q, GeneratorSet const& gens, std::size_t max_rank,
                        Guards const& g = default_guards());

bool q_membership(FiniteAlgebra const& a, GeneratorSet const& gens);
bool v_membership(FiniteAlgebra const& a, GeneratorSet const& gens,
                  Guards const& g = default_guards());
bool ret_membership(FiniteAlgebra const& b, GeneratorSet const& gens, FiniteAlgebra const& a);
bool excludes(FiniteAlgebra const& a, FiniteAlgebra const& b, Guards const& g = default_guards());

// Signatures of the residuated-lattice families shipped here; all have congruence
// distributive varieties with equationally definable principal congruences.
bool has_edpc_signature(Signature const& sig);
// Whether meet and join are binary operations forming a lattice.
bool has_lattice_reduct(FiniteAlgebra const& a);

json map_json(Map const& m);

}  // namespace qv
