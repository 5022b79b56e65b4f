#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qv {

using Elem = std::uint32_t;
inline constexpr Elem kUnset = static_cast<Elem>(-1);

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a configured size limit would be exceeded.
class GuardError : public Error {
public:
    using Error::Error;
};

struct Guards {
    std::size_t subalgebra_enumeration = 24;
    std::size_t derived_carrier = 4096;
    std::size_t free_coordinates = 1u << 20;
    std::size_t poset_points = 30;
    std::size_t assignment_space = 50'000'000;
};

Guards const& default_guards();

struct Operation {
    std::string name;
    unsigned arity = 0;
    bool operator==(Operation const&) const = default;
};

class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<Operation> ops);

    std::size_t size() const { return ops_.size(); }
    Operation const& operator[](std::size_t i) const { return ops_[i]; }
    auto begin() const { return ops_.begin(); }
    auto end() const { return ops_.end(); }

    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index_of(std::string_view name) const;
    bool has_constant() const;
    unsigned max_arity() const;
    std::string to_string() const;

    bool operator==(Signature const&) const = default;

private:
    std::vector<Operation> ops_;
};

class FiniteAlgebra;
using AlgebraList = std::vector<FiniteAlgebra>;

class FiniteAlgebra {
public:
    FiniteAlgebra() = default;
    FiniteAlgebra(Signature sig, std::size_t size, std::vector<std::vector<Elem>> tables,
                  std::vector<std::string> names = {});

    static FiniteAlgebra trivial(Signature sig);

    Signature const& signature() const { return sig_; }
    std::size_t size() const { return size_; }
    bool is_trivial() const { return size_ == 1; }

    std::vector<Elem> const& table(std::size_t op) const { return tables_[op]; }
    std::vector<std::vector<Elem>> const& tables() const { return tables_; }

    Elem constant(std::size_t op) const { return tables_[op][0]; }
    Elem unary(std::size_t op, Elem a) const { return tables_[op][a]; }
    Elem binary(std::size_t op, Elem a, Elem b) const { return tables_[op][a * size_ + b]; }
    Elem apply(std::size_t op, std::span<Elem const> args) const;

    Elem op(std::string_view name) const;
    Elem op(std::string_view name, Elem a) const;
    Elem op(std::string_view name, Elem a, Elem b) const;

    bool has_names() const { return !names_.empty(); }
    std::vector<std::string> const& names() const { return names_; }
    std::string name(Elem a) const;
    std::optional<Elem> find_name(std::string_view label) const;
    FiniteAlgebra with_names(std::vector<std::string> names) const;

    // Factors this algebra was built from by direct_product; empty otherwise.
    std::shared_ptr<AlgebraList const> const& factors() const { return factors_; }
    void set_factors(std::shared_ptr<AlgebraList const> f) { factors_ = std::move(f); }

    // Tables and signature only; labels and factor metadata are ignored.
    bool same_tables(FiniteAlgebra const& other) const;

private:
    Signature sig_;
    std::size_t size_ = 0;
    std::vector<std::vector<Elem>> tables_;
    std::vector<std::string> names_;
    std::shared_ptr<AlgebraList const> factors_;
};

std::size_t table_length(std::size_t size, unsigned arity);

// Dense bitset over a carrier.
class ElementSet {
public:
    ElementSet() = default;
    explicit ElementSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
    static ElementSet full(std::size_t n);
    static ElementSet of(std::size_t n, std::span<Elem const> elems);

    std::size_t universe() const { return n_; }
    bool contains(Elem a) const { return (words_[a >> 6] >> (a & 63)) & 1u; }
    bool insert(Elem a);
    void erase(Elem a) { words_[a >> 6] &= ~(std::uint64_t{1} << (a & 63)); }
    std::size_t count() const;
    bool empty() const { return count() == 0; }
    std::vector<Elem> elements() const;
    bool subset_of(ElementSet const& o) const;

    bool operator==(ElementSet const&) const = default;
    bool operator<(ElementSet const& o) const { return words_ < o.words_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

// Partition of a carrier; blocks are numbered in order of least member.
class Congruence {
public:
    Congruence() = default;
    explicit Congruence(std::vector<Elem> block_of);

    static Congruence identity(std::size_t n);
    static Congruence total(std::size_t n);

    std::size_t universe() const { return block_.size(); }
    std::size_t num_blocks() const { return nblocks_; }
    Elem block(Elem a) const { return block_[a]; }
    std::vector<Elem> const& block_ids() const { return block_; }
    bool related(Elem a, Elem b) const { return block_[a] == block_[b]; }
    bool is_identity() const { return nblocks_ == block_.size(); }
    bool is_total() const { return nblocks_ == 1; }
    std::vector<std::vector<Elem>> blocks() const;
    bool refines(Congruence const& coarser) const;
    std::string to_string() const;

    bool operator==(Congruence const& o) const { return block_ == o.block_; }
    // Fewer blocks first, then lexicographic on the block-id array.
    bool operator<(Congruence const& o) const;

private:
    std::vector<Elem> block_;
    std::size_t nblocks_ = 0;
};

Congruence meet(Congruence const& a, Congruence const& b);
Congruence join(Congruence const& a, Congruence const& b);
Congruence kernel(std::span<Elem const> map, std::size_t domain_size);

struct Subalgebra {
    FiniteAlgebra algebra;
    std::vector<Elem> inclusion;
};

struct Quotient {
    FiniteAlgebra algebra;
    std::vector<Elem> projection;
};

ElementSet close_subset(FiniteAlgebra const& a, ElementSet seed);
bool is_closed(FiniteAlgebra const& a, ElementSet const& s);
Subalgebra induced_subalgebra(FiniteAlgebra const& a, ElementSet const& universe);
Subalgebra subalgebra_generated(FiniteAlgebra const& a, std::span<Elem const> seed);
std::vector<ElementSet> enumerate_subuniverses(FiniteAlgebra const& a,
                                               Guards const& g = default_guards());
std::vector<FiniteAlgebra> enumerate_subalgebras(FiniteAlgebra const& a, bool up_to_iso,
                                                 Guards const& g = default_guards());

FiniteAlgebra direct_product(Signature const& sig, AlgebraList const& factors);
FiniteAlgebra direct_product(AlgebraList const& factors);
std::vector<Elem> product_coordinates(AlgebraList const& factors, Elem x);
Elem product_index(AlgebraList const& factors, std::span<Elem const> coords);

bool is_compatible(FiniteAlgebra const& a, Congruence const& theta);
Quotient quotient(FiniteAlgebra const& a, Congruence const& theta);

void require_same_signature(FiniteAlgebra const& a, FiniteAlgebra const& b);

}  // namespace qv
