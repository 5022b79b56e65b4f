#include "quasivar/formats.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qv {

// ---- algebras

json algebra_to_json(FiniteAlgebra const& a) {
    json sig = json::array();
    for (auto const& op : a.signature()) sig.push_back({{"name", op.name}, {"arity", op.arity}});
    json ops = json::object();
    std::size_t n = a.size();
    for (std::size_t i = 0; i < a.signature().size(); ++i) {
        auto const& op = a.signature()[i];
        auto const& t = a.table(i);
        if (op.arity == 0) {
            ops[op.name] = t[0];
        } else if (op.arity == 2) {
            json rows = json::array();
            for (std::size_t r = 0; r < n; ++r)
                rows.push_back(std::vector<Elem>(t.begin() + r * n, t.begin() + (r + 1) * n));
            ops[op.name] = rows;
        } else {
            ops[op.name] = t;
        }
    }
    json j = {{"signature", sig}, {"size", n}, {"ops", ops}};
    if (a.has_names()) j["names"] = a.names();
    return j;
}

FiniteAlgebra algebra_from_json(json const& j) {
    try {
        std::vector<Operation> ops;
        for (auto const& o : j.at("signature"))
            ops.push_back({o.at("name").get<std::string>(), o.at("arity").get<unsigned>()});
        Signature sig(ops);
        std::size_t n = j.at("size").get<std::size_t>();
        std::vector<std::vector<Elem>> tables;
        for (auto const& op : sig) {
            json const& t = j.at("ops").at(op.name);
            std::vector<Elem> flat;
            if (op.arity == 0) {
                flat.push_back(t.is_array() ? t.at(0).get<Elem>() : t.get<Elem>());
            } else {
                for (auto const& row : t) {
                    if (row.is_array())
                        for (auto const& v : row) flat.push_back(v.get<Elem>());
                    else
                        flat.push_back(row.get<Elem>());
                }
            }
            tables.push_back(std::move(flat));
        }
        std::vector<std::string> names;
        if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
        return FiniteAlgebra(sig, n, std::move(tables), std::move(names));
    } catch (json::exception const& e) {
        throw Error(std::string("algebra JSON: ") + e.what());
    }
}

namespace {

json read_json(std::string const& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (json::parse_error const& e) {
        throw Error(path + ": " + e.what());
    }
}

}  // namespace

FiniteAlgebra parse_algebra(std::string const& path) { return algebra_from_json(read_json(path)); }

json poset_to_json(Poset const& p) {
    json le = json::array();
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            if (p.leq(i, j)) le.push_back({i, j});
    json out = {{"size", p.size()}, {"leq", le}};
    if (!p.names().empty()) out["names"] = p.names();
    return out;
}

Poset poset_from_json(json const& j) {
    try {
        std::size_t n = j.at("size").get<std::size_t>();
        if (n == 0 || n > 64) throw Error("poset JSON: size out of range");
        std::vector<Mask> up(n, 0);
        for (auto const& pr : j.at("leq")) {
            auto a = pr.at(0).get<std::size_t>(), b = pr.at(1).get<std::size_t>();
            if (a >= n || b >= n) throw Error("poset JSON: index out of range");
            up[a] |= Mask{1} << b;
        }
        std::vector<std::string> names;
        if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
        return Poset(std::move(up), std::move(names));
    } catch (json::exception const& e) {
        throw Error(std::string("poset JSON: ") + e.what());
    }
}

Poset parse_poset(std::string const& path) { return poset_from_json(read_json(path)); }

// ---- quasi-equations

ParseError::ParseError(std::string const& msg, std::size_t line, std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, Arrow, Leq, Implies, Eq, Amp, LParen, RParen, Comma, Neg, Star, Meet, Join, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, col;
};

std::vector<Token> lex(std::string const& s) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < s.size();) {
        char c = s[i];
        auto push = [&](Tok k, std::size_t len) {
            out.push_back({k, s.substr(i, len), line, col});
            i += len;
            col += len;
        };
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++col;
        } else if (s.compare(i, 2, "->") == 0) {
            push(Tok::Arrow, 2);
        } else if (s.compare(i, 2, "<=") == 0) {
            push(Tok::Leq, 2);
        } else if (s.compare(i, 2, "=>") == 0) {
            push(Tok::Implies, 2);
        } else if (c == '=') {
            push(Tok::Eq, 1);
        } else if (c == '&') {
            push(Tok::Amp, 1);
        } else if (c == '(') {
            push(Tok::LParen, 1);
        } else if (c == ')') {
            push(Tok::RParen, 1);
        } else if (c == ',') {
            push(Tok::Comma, 1);
        } else if (c == '~') {
            push(Tok::Neg, 1);
        } else if (c == '*') {
            push(Tok::Star, 1);
        } else if (c == '^') {
            push(Tok::Meet, 1);
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            push(s.substr(i, j - i) == "v" ? Tok::Join : Tok::Ident, j - i);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(std::string const& text, Signature const* sig) : toks_(lex(text)), sig_(sig) {}

    QuasiEquation quasi_equation() {
        QuasiEquation q;
        if (accept(Tok::Implies)) {
            q.conclusion = equation();
        } else {
            Equation first = equation();
            if (peek().kind == Tok::Amp || peek().kind == Tok::Implies) {
                q.premises.push_back(first);
                while (accept(Tok::Amp)) q.premises.push_back(equation());
                expect(Tok::Implies, "'=>'");
                q.conclusion = equation();
            } else {
                q.conclusion = first;
            }
        }
        expect(Tok::End, "end of input");
        return q;
    }

    std::vector<Equation> equations() {
        std::vector<Equation> out;
        if (peek().kind == Tok::End) return out;
        out.push_back(equation());
        while (accept(Tok::Amp) || accept(Tok::Comma)) out.push_back(equation());
        expect(Tok::End, "end of input");
        return out;
    }

    Term whole_term() {
        Term t = imp();
        expect(Tok::End, "end of input");
        return t;
    }

private:
    Token const& peek() const { return toks_[pos_]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    Token expect(Tok k, char const* what) {
        if (peek().kind != k) fail(std::string("expected ") + what);
        return toks_[pos_++];
    }
    [[noreturn]] void fail(std::string const& msg) const {
        auto const& t = peek();
        throw ParseError(msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"),
                         t.line, t.col);
    }

    bool has_op(std::string const& name, unsigned arity) const {
        if (!sig_) return true;
        auto i = sig_->find(name);
        return i && (*sig_)[*i].arity == arity;
    }

    Equation equation() {
        Term lhs = imp();
        if (accept(Tok::Eq)) return {lhs, imp()};
        if (accept(Tok::Leq)) return leq(lhs, imp());
        fail("expected '=' or '<='");
    }

    Term imp() {
        Term lhs = join();
        if (!accept(Tok::Arrow)) return lhs;
        Term rhs = imp();
        if (sig_ && !has_op("imp", 2) && has_op("neg", 1) && has_op("fuse", 2))
            return Term::apply("neg", {Term::apply("fuse", {lhs, Term::apply("neg", {rhs})})});
        return Term::apply("imp", {lhs, rhs});
    }

    Term join() {
        Term t = meet();
        while (accept(Tok::Join)) t = Term::apply("join", {t, meet()});
        return t;
    }

    Term meet() {
        Term t = fuse();
        while (accept(Tok::Meet)) t = Term::apply("meet", {t, fuse()});
        return t;
    }

    Term fuse() {
        Term t = unary();
        while (accept(Tok::Star)) t = Term::apply("fuse", {t, unary()});
        return t;
    }

    Term unary() {
        if (accept(Tok::Neg)) return Term::apply("neg", {unary()});
        return atom();
    }

    Term atom() {
        if (accept(Tok::LParen)) {
            Term t = imp();
            expect(Tok::RParen, "')'");
            return t;
        }
        if (peek().kind != Tok::Ident) fail("expected a term");
        Token id = toks_[pos_++];
        if (accept(Tok::LParen)) {
            std::vector<Term> args;
            if (!accept(Tok::RParen)) {
                args.push_back(imp());
                while (accept(Tok::Comma)) args.push_back(imp());
                expect(Tok::RParen, "')'");
            }
            if (sig_) {
                auto i = sig_->find(id.text);
                if (!i) throw ParseError("unknown operation '" + id.text + "'", id.line, id.col);
                if ((*sig_)[*i].arity != args.size())
                    throw ParseError("wrong number of arguments for '" + id.text + "'", id.line,
                                     id.col);
            }
            return Term::apply(id.text, std::move(args));
        }
        if (sig_) {
            if (has_op(id.text, 0)) return Term::apply(id.text);
            if (id.text == "f" && has_op("neg", 1) && has_op("e", 0))
                return Term::apply("neg", {Term::apply("e")});
        } else if (id.text == "e") {
            return Term::apply("e");
        }
        if (!std::islower(static_cast<unsigned char>(id.text[0])))
            throw ParseError("variables start with a lower-case letter", id.line, id.col);
        return Term::variable(id.text);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Signature const* sig_;
};

}  // namespace

QuasiEquation parse_qe(std::string const& text, Signature const* sig) {
    return Parser(text, sig).quasi_equation();
}

Term parse_term(std::string const& text, Signature const* sig) {
    return Parser(text, sig).whole_term();
}

std::vector<Equation> parse_equations(std::string const& text, Signature const* sig) {
    return Parser(text, sig).equations();
}

// ---- reports

std::string digest(FiniteAlgebra const& a) {
    std::string s = algebra_to_json(a).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json report(std::string const& verb, json result, std::vector<FiniteAlgebra> const& inputs,
            double seconds) {
    json digests = json::array();
    for (auto const& a : inputs) digests.push_back(digest(a));
    return {{"version", kVersion},
            {"verb", verb},
            {"inputs", digests},
            {"seconds", seconds},
            {"result", std::move(result)}};
}

}  // namespace qv
