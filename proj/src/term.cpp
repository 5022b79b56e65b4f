#include "quasivar/term.hpp"

#include <algorithm>

namespace qv {

Term Term::variable(std::string name) {
    Term t;
    t.variable_ = true;
    t.symbol_ = std::move(name);
    return t;
}

Term Term::apply(std::string op, std::vector<Term> args) {
    Term t;
    t.variable_ = false;
    t.symbol_ = std::move(op);
    t.args_ = std::move(args);
    return t;
}

void Term::collect_variables(std::vector<std::string>& out) const {
    if (variable_) {
        if (std::find(out.begin(), out.end(), symbol_) == out.end()) out.push_back(symbol_);
        return;
    }
    for (auto const& a : args_) a.collect_variables(out);
}

std::vector<std::string> Term::variables() const {
    std::vector<std::string> out;
    collect_variables(out);
    return out;
}

std::string Term::to_string() const {
    if (variable_ || args_.empty()) return symbol_;
    std::string s = symbol_ + "(";
    for (std::size_t i = 0; i < args_.size(); ++i) s += (i ? ", " : "") + args_[i].to_string();
    return s + ")";
}

void check_term(Term const& t, Signature const& sig) {
    if (t.is_variable()) return;
    auto idx = sig.find(t.symbol());
    if (!idx) throw Error("unknown operation '" + t.symbol() + "'");
    if (sig[*idx].arity != t.args().size())
        throw Error("arity mismatch for '" + t.symbol() + "': expected " +
                    std::to_string(sig[*idx].arity) + ", got " + std::to_string(t.args().size()));
    for (auto const& a : t.args()) check_term(a, sig);
}

Elem eval(Term const& t, FiniteAlgebra const& a, Assignment const& v) {
    if (t.is_variable()) {
        auto it = v.find(t.symbol());
        if (it == v.end()) throw Error("unassigned variable '" + t.symbol() + "'");
        if (it->second >= a.size()) throw Error("assignment out of range for '" + t.symbol() + "'");
        return it->second;
    }
    auto const& sig = a.signature();
    auto idx = sig.find(t.symbol());
    if (!idx) throw Error("unknown operation '" + t.symbol() + "'");
    if (sig[*idx].arity != t.args().size()) throw Error("arity mismatch for '" + t.symbol() + "'");
    std::vector<Elem> args;
    args.reserve(t.args().size());
    for (auto const& s : t.args()) args.push_back(eval(s, a, v));
    return a.apply(*idx, args);
}

CompiledTerm::CompiledTerm(Term const& t, Signature const& sig,
                           std::vector<std::string> const& vars) {
    check_term(t, sig);
    auto emit = [&](auto&& self, Term const& s) -> void {
        if (s.is_variable()) {
            auto it = std::find(vars.begin(), vars.end(), s.symbol());
            if (it == vars.end()) throw Error("unassigned variable '" + s.symbol() + "'");
            postfix_.push_back({true, static_cast<std::size_t>(it - vars.begin()), 0});
            return;
        }
        for (auto const& a : s.args()) self(self, a);
        std::size_t op = sig.index_of(s.symbol());
        postfix_.push_back({false, op, sig[op].arity});
    };
    emit(emit, t);
}

Elem CompiledTerm::eval(FiniteAlgebra const& a, std::vector<Elem> const& values) const {
    Elem stack[64];
    std::vector<Elem> big;
    Elem* top = stack;
    if (postfix_.size() > 64) {
        big.resize(postfix_.size());
        top = big.data();
    }
    Elem* base = top;
    for (auto const& s : postfix_) {
        if (s.is_var) {
            *top++ = values[s.index];
            continue;
        }
        switch (s.arity) {
            case 0: *top++ = a.constant(s.index); break;
            case 1: top[-1] = a.unary(s.index, top[-1]); break;
            case 2:
                top[-2] = a.binary(s.index, top[-2], top[-1]);
                --top;
                break;
            default: {
                Elem r = a.apply(s.index, std::span<Elem const>(top - s.arity, s.arity));
                top -= s.arity;
                *top++ = r;
            }
        }
    }
    return base[0];
}

std::string Equation::to_string() const { return lhs.to_string() + " = " + rhs.to_string(); }

Equation leq(Term s, Term t, std::string const& meet) {
    Term m = Term::apply(meet, {s, std::move(t)});
    return {std::move(s), std::move(m)};
}

std::vector<std::string> variables_of(std::vector<Equation> const& eqs) {
    std::vector<std::string> out;
    for (auto const& e : eqs) {
        e.lhs.collect_variables(out);
        e.rhs.collect_variables(out);
    }
    return out;
}

std::vector<std::string> QuasiEquation::variables() const {
    auto out = variables_of(premises);
    conclusion.lhs.collect_variables(out);
    conclusion.rhs.collect_variables(out);
    return out;
}

std::string QuasiEquation::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < premises.size(); ++i)
        s += (i ? " & " : "") + premises[i].to_string();
    if (!premises.empty()) s += " => ";
    return s + conclusion.to_string();
}

}  // namespace qv
