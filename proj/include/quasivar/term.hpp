#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "quasivar/algebra.hpp"

namespace qv {

class Term {
public:
    static Term variable(std::string name);
    static Term apply(std::string op, std::vector<Term> args = {});

    bool is_variable() const { return variable_; }
    std::string const& symbol() const { return symbol_; }
    std::vector<Term> const& args() const { return args_; }

    // Variables in order of first occurrence.
    std::vector<std::string> variables() const;
    void collect_variables(std::vector<std::string>& out) const;
    std::string to_string() const;
    bool operator==(Term const&) const = default;

private:
    bool variable_ = true;
    std::string symbol_;
    std::vector<Term> args_;
};

using Assignment = std::map<std::string, Elem>;

Elem eval(Term const& t, FiniteAlgebra const& a, Assignment const& v);
void check_term(Term const& t, Signature const& sig);

// A term resolved against a signature and a variable order; evaluation is a flat loop.
class CompiledTerm {
public:
    CompiledTerm(Term const& t, Signature const& sig, std::vector<std::string> const& vars);
    Elem eval(FiniteAlgebra const& a, std::vector<Elem> const& values) const;

private:
    struct Step {
        bool is_var;
        std::size_t index;  // variable slot or operation index
        unsigned arity;
    };
    std::vector<Step> postfix_;
};

struct Equation {
    Term lhs;
    Term rhs;
    std::string to_string() const;
    bool operator==(Equation const&) const = default;
};

// s <= t, encoded as s = s ^ t with the given meet symbol.
Equation leq(Term s, Term t, std::string const& meet = "meet");

struct QuasiEquation {
    std::vector<Equation> premises;
    Equation conclusion;

    std::vector<std::string> variables() const;
    std::string to_string() const;
    bool operator==(QuasiEquation const&) const = default;
};

std::vector<std::string> variables_of(std::vector<Equation> const& eqs);

}  // namespace qv
