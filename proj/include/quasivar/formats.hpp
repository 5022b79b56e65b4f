#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "quasivar/algebra.hpp"
#include "quasivar/brouwer.hpp"
#include "quasivar/term.hpp"

namespace qv {

using json = nlohmann::json;

inline constexpr char const* kVersion = "1.0.0";

json algebra_to_json(FiniteAlgebra const& a);
FiniteAlgebra algebra_from_json(json const& j);
FiniteAlgebra parse_algebra(std::string const& path);

json poset_to_json(Poset const& p);
Poset poset_from_json(json const& j);
Poset parse_poset(std::string const& path);

class ParseError : public Error {
public:
    ParseError(std::string const& msg, std::size_t line, std::size_t column);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

// Quasi-equation text: `eq (& eq)* => eq`, `=> eq` or `eq`, where `eq` is `t = t` or `t <= t`.
// Infix `~` (neg), `*` (fuse), `^` (meet), `v` (join), `->` (imp) bind in that order, `->` to
// the right. With a signature, 0-ary names are constants; over a signature with neg but no imp,
// `a -> b` stands for ~(a * ~b) and `f` for ~e.
QuasiEquation parse_qe(std::string const& text, Signature const* sig = nullptr);
Term parse_term(std::string const& text, Signature const* sig = nullptr);
std::vector<Equation> parse_equations(std::string const& text, Signature const* sig = nullptr);

// FNV-1a digest of the algebra's JSON serialization, as 16 hex digits.
std::string digest(FiniteAlgebra const& a);

json report(std::string const& verb, json result, std::vector<FiniteAlgebra> const& inputs,
            double seconds);

}  // namespace qv
