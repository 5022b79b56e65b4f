#include "quasivar/algebra.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "quasivar/canonical.hpp"

namespace qv {

Guards const& default_guards() {
    static Guards const g{};
    return g;
}

Signature::Signature(std::vector<Operation> ops) : ops_(std::move(ops)) {
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        if (ops_[i].name.empty()) throw Error("signature: empty operation name");
        for (std::size_t j = 0; j < i; ++j)
            if (ops_[i].name == ops_[j].name)
                throw Error("signature: duplicate operation name '" + ops_[i].name + "'");
    }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
    for (std::size_t i = 0; i < ops_.size(); ++i)
        if (ops_[i].name == name) return i;
    return std::nullopt;
}

std::size_t Signature::index_of(std::string_view name) const {
    auto i = find(name);
    if (!i) throw Error("unknown operation '" + std::string(name) + "'");
    return *i;
}

bool Signature::has_constant() const {
    return std::any_of(ops_.begin(), ops_.end(), [](auto const& o) { return o.arity == 0; });
}

unsigned Signature::max_arity() const {
    unsigned m = 0;
    for (auto const& o : ops_) m = std::max(m, o.arity);
    return m;
}

std::string Signature::to_string() const {
    std::string s;
    for (auto const& o : ops_) {
        if (!s.empty()) s += ", ";
        s += o.name + "/" + std::to_string(o.arity);
    }
    return s;
}

std::size_t table_length(std::size_t size, unsigned arity) {
    std::size_t len = 1;
    for (unsigned i = 0; i < arity; ++i) len *= size;
    return len;
}

FiniteAlgebra::FiniteAlgebra(Signature sig, std::size_t size,
                             std::vector<std::vector<Elem>> tables,
                             std::vector<std::string> names)
    : sig_(std::move(sig)), size_(size), tables_(std::move(tables)), names_(std::move(names)) {
    if (size_ == 0) throw Error("algebra: carrier must be non-empty");
    if (tables_.size() != sig_.size()) throw Error("algebra: table count does not match signature");
    for (std::size_t i = 0; i < sig_.size(); ++i) {
        if (tables_[i].size() != table_length(size_, sig_[i].arity))
            throw Error("algebra: table for '" + sig_[i].name + "' has wrong length");
        for (Elem v : tables_[i])
            if (v >= size_) throw Error("algebra: table for '" + sig_[i].name + "' out of range");
    }
    if (!names_.empty() && names_.size() != size_) throw Error("algebra: wrong number of names");
}

FiniteAlgebra FiniteAlgebra::trivial(Signature sig) {
    std::vector<std::vector<Elem>> t(sig.size(), std::vector<Elem>{0});
    return FiniteAlgebra(std::move(sig), 1, std::move(t));
}

Elem FiniteAlgebra::apply(std::size_t op, std::span<Elem const> args) const {
    std::size_t idx = 0;
    for (Elem a : args) idx = idx * size_ + a;
    return tables_[op][idx];
}

Elem FiniteAlgebra::op(std::string_view name) const { return constant(sig_.index_of(name)); }
Elem FiniteAlgebra::op(std::string_view name, Elem a) const {
    return unary(sig_.index_of(name), a);
}
Elem FiniteAlgebra::op(std::string_view name, Elem a, Elem b) const {
    return binary(sig_.index_of(name), a, b);
}

std::string FiniteAlgebra::name(Elem a) const {
    return names_.empty() ? std::to_string(a) : names_[a];
}

std::optional<Elem> FiniteAlgebra::find_name(std::string_view label) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == label) return static_cast<Elem>(i);
    return std::nullopt;
}

FiniteAlgebra FiniteAlgebra::with_names(std::vector<std::string> names) const {
    FiniteAlgebra copy(sig_, size_, tables_, std::move(names));
    copy.factors_ = factors_;
    return copy;
}

bool FiniteAlgebra::same_tables(FiniteAlgebra const& other) const {
    return sig_ == other.sig_ && size_ == other.size_ && tables_ == other.tables_;
}

void require_same_signature(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    if (!(a.signature() == b.signature()))
        throw Error("signature mismatch: [" + a.signature().to_string() + "] vs [" +
                    b.signature().to_string() + "]");
}

// ---- ElementSet

ElementSet ElementSet::full(std::size_t n) {
    ElementSet s(n);
    for (Elem a = 0; a < n; ++a) s.insert(a);
    return s;
}

ElementSet ElementSet::of(std::size_t n, std::span<Elem const> elems) {
    ElementSet s(n);
    for (Elem a : elems) {
        if (a >= n) throw Error("element index out of range");
        s.insert(a);
    }
    return s;
}

bool ElementSet::insert(Elem a) {
    auto& w = words_[a >> 6];
    auto bit = std::uint64_t{1} << (a & 63);
    bool fresh = !(w & bit);
    w |= bit;
    return fresh;
}

std::size_t ElementSet::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::vector<Elem> ElementSet::elements() const {
    std::vector<Elem> out;
    for (Elem a = 0; a < n_; ++a)
        if (contains(a)) out.push_back(a);
    return out;
}

bool ElementSet::subset_of(ElementSet const& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
    return true;
}

// ---- Congruence

Congruence::Congruence(std::vector<Elem> block_of) {
    std::map<Elem, Elem> renumber;
    block_.resize(block_of.size());
    for (std::size_t i = 0; i < block_of.size(); ++i) {
        auto [it, fresh] = renumber.emplace(block_of[i], static_cast<Elem>(renumber.size()));
        block_[i] = it->second;
    }
    nblocks_ = renumber.size();
}

Congruence Congruence::identity(std::size_t n) {
    std::vector<Elem> b(n);
    std::iota(b.begin(), b.end(), 0);
    return Congruence(std::move(b));
}

Congruence Congruence::total(std::size_t n) { return Congruence(std::vector<Elem>(n, 0)); }

std::vector<std::vector<Elem>> Congruence::blocks() const {
    std::vector<std::vector<Elem>> out(nblocks_);
    for (Elem a = 0; a < block_.size(); ++a) out[block_[a]].push_back(a);
    return out;
}

bool Congruence::refines(Congruence const& coarser) const {
    // every block of *this lies inside one block of coarser
    std::vector<Elem> image(nblocks_, kUnset);
    for (Elem a = 0; a < block_.size(); ++a) {
        Elem& slot = image[block_[a]];
        if (slot == kUnset) slot = coarser.block(a);
        else if (slot != coarser.block(a)) return false;
    }
    return true;
}

std::string Congruence::to_string() const {
    std::string s;
    for (auto const& b : blocks()) {
        s += "{";
        for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
        s += "}";
    }
    return s;
}

bool Congruence::operator<(Congruence const& o) const {
    if (nblocks_ != o.nblocks_) return nblocks_ < o.nblocks_;
    return block_ < o.block_;
}

Congruence meet(Congruence const& a, Congruence const& b) {
    std::vector<Elem> ids(a.universe());
    for (Elem x = 0; x < ids.size(); ++x)
        ids[x] = static_cast<Elem>(a.block(x) * b.num_blocks() + b.block(x));
    return Congruence(std::move(ids));
}

namespace {
Elem find_root(std::vector<Elem>& parent, Elem x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}
}  // namespace

Congruence join(Congruence const& a, Congruence const& b) {
    std::size_t n = a.universe();
    std::vector<Elem> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto unite = [&](Congruence const& c) {
        std::vector<Elem> first(c.num_blocks(), kUnset);
        for (Elem x = 0; x < n; ++x) {
            Elem& f = first[c.block(x)];
            if (f == kUnset) f = x;
            else parent[find_root(parent, x)] = find_root(parent, f);
        }
    };
    unite(a);
    unite(b);
    for (Elem x = 0; x < n; ++x) parent[x] = find_root(parent, x);
    return Congruence(std::move(parent));
}

Congruence kernel(std::span<Elem const> map, std::size_t domain_size) {
    if (map.size() != domain_size) throw Error("kernel: map has wrong length");
    return Congruence(std::vector<Elem>(map.begin(), map.end()));
}

// ---- subalgebras

namespace {

// Closes `in` under all operations. `members` lists `in` and grows with it; each round only
// visits tuples that touch an element added in the previous round.
void saturate(FiniteAlgebra const& a, ElementSet& in, std::vector<Elem>& members) {
    auto const& sig = a.signature();
    for (std::size_t op = 0; op < sig.size(); ++op)
        if (sig[op].arity == 0 && in.insert(a.constant(op))) members.push_back(a.constant(op));
    std::size_t done = 0;
    std::vector<std::size_t> pos;
    std::vector<Elem> args;
    while (done < members.size()) {
        std::size_t frontier = members.size();
        for (std::size_t op = 0; op < sig.size(); ++op) {
            unsigned k = sig[op].arity;
            if (k == 0) continue;
            pos.assign(k, 0);
            args.assign(k, 0);
            // tuples over members[0..frontier) with some coordinate >= done
            for (;;) {
                bool touches_new = false;
                for (unsigned i = 0; i < k; ++i) {
                    args[i] = members[pos[i]];
                    touches_new |= pos[i] >= done;
                }
                if (touches_new) {
                    Elem r = a.apply(op, args);
                    if (in.insert(r)) members.push_back(r);
                }
                unsigned i = k;
                while (i > 0) {
                    --i;
                    if (++pos[i] < frontier) break;
                    pos[i] = 0;
                    if (i == 0) goto next_op;
                }
            }
        next_op:;
        }
        done = frontier;
    }
}

}  // namespace

ElementSet close_subset(FiniteAlgebra const& a, ElementSet seed) {
    std::vector<Elem> members = seed.elements();
    saturate(a, seed, members);
    return seed;
}

bool is_closed(FiniteAlgebra const& a, ElementSet const& s) {
    return close_subset(a, s) == s;
}

Subalgebra induced_subalgebra(FiniteAlgebra const& a, ElementSet const& universe) {
    if (!is_closed(a, universe)) throw Error("induced_subalgebra: subset is not closed");
    std::vector<Elem> incl = universe.elements();
    if (incl.empty()) throw Error("induced_subalgebra: empty subset");
    std::vector<Elem> index(a.size(), kUnset);
    for (Elem i = 0; i < incl.size(); ++i) index[incl[i]] = i;
    std::size_t m = incl.size();
    auto const& sig = a.signature();
    std::vector<std::vector<Elem>> tables(sig.size());
    std::vector<Elem> args;
    for (std::size_t op = 0; op < sig.size(); ++op) {
        unsigned k = sig[op].arity;
        std::size_t len = table_length(m, k);
        tables[op].resize(len);
        args.assign(k, 0);
        for (std::size_t t = 0; t < len; ++t) {
            std::size_t rest = t;
            for (unsigned i = k; i-- > 0;) {
                args[i] = incl[rest % m];
                rest /= m;
            }
            tables[op][t] = index[a.apply(op, args)];
        }
    }
    std::vector<std::string> names;
    if (a.has_names())
        for (Elem x : incl) names.push_back(a.name(x));
    return {FiniteAlgebra(sig, m, std::move(tables), std::move(names)), std::move(incl)};
}

Subalgebra subalgebra_generated(FiniteAlgebra const& a, std::span<Elem const> seed) {
    if (seed.empty() && !a.signature().has_constant())
        throw Error("subalgebra_generated: empty seed in a signature without constants");
    return induced_subalgebra(a, close_subset(a, ElementSet::of(a.size(), seed)));
}

std::vector<ElementSet> enumerate_subuniverses(FiniteAlgebra const& a, Guards const& g) {
    if (a.size() > g.subalgebra_enumeration)
        throw GuardError("enumerate_subuniverses: |A| = " + std::to_string(a.size()) +
                         " exceeds guard " + std::to_string(g.subalgebra_enumeration));
    std::set<ElementSet> seen;
    std::vector<ElementSet> queue;
    auto push = [&](ElementSet s) {
        if (seen.insert(s).second) queue.push_back(std::move(s));
    };
    if (a.signature().has_constant()) {
        push(close_subset(a, ElementSet(a.size())));
    } else {
        for (Elem x = 0; x < a.size(); ++x) {
            ElementSet s(a.size());
            s.insert(x);
            push(close_subset(a, std::move(s)));
        }
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (Elem x = 0; x < a.size(); ++x) {
            if (queue[i].contains(x)) continue;
            ElementSet s = queue[i];
            s.insert(x);
            push(close_subset(a, std::move(s)));
        }
    }
    std::vector<ElementSet> out(queue.begin(), queue.end());
    std::sort(out.begin(), out.end(), [](ElementSet const& x, ElementSet const& y) {
        if (x.count() != y.count()) return x.count() < y.count();
        return x.elements() < y.elements();
    });
    return out;
}

std::vector<FiniteAlgebra> enumerate_subalgebras(FiniteAlgebra const& a, bool up_to_iso,
                                                 Guards const& g) {
    std::vector<FiniteAlgebra> out;
    if (!up_to_iso) {
        for (auto const& s : enumerate_subuniverses(a, g))
            out.push_back(induced_subalgebra(a, s).algebra);
        return out;
    }
    std::vector<std::pair<std::vector<Elem>, FiniteAlgebra>> keyed;
    std::set<std::vector<Elem>> codes;
    for (auto const& s : enumerate_subuniverses(a, g)) {
        FiniteAlgebra sub = induced_subalgebra(a, s).algebra;
        auto code = canonical_form(sub).code;
        if (codes.insert(code).second) keyed.emplace_back(std::move(code), std::move(sub));
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](auto const& x, auto const& y) {
        if (x.second.size() != y.second.size()) return x.second.size() < y.second.size();
        return x.first < y.first;
    });
    for (auto& [code, alg] : keyed) out.push_back(std::move(alg));
    return out;
}

// ---- products

std::vector<Elem> product_coordinates(AlgebraList const& factors, Elem x) {
    std::vector<Elem> c(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
        c[i] = static_cast<Elem>(x % factors[i].size());
        x = static_cast<Elem>(x / factors[i].size());
    }
    return c;
}

Elem product_index(AlgebraList const& factors, std::span<Elem const> coords) {
    std::size_t x = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) x = x * factors[i].size() + coords[i];
    return static_cast<Elem>(x);
}

FiniteAlgebra direct_product(Signature const& sig, AlgebraList const& factors) {
    for (auto const& f : factors)
        if (!(f.signature() == sig)) throw Error("direct_product: mixed signatures");
    std::size_t n = 1;
    for (auto const& f : factors) {
        n *= f.size();
        if (n > (std::size_t{1} << 31)) throw GuardError("direct_product: carrier too large");
    }
    std::vector<std::vector<Elem>> coords(n);
    for (Elem x = 0; x < n; ++x) coords[x] = product_coordinates(factors, x);
    std::vector<std::vector<Elem>> tables(sig.size());
    std::vector<Elem> args, fargs, out(factors.size());
    for (std::size_t op = 0; op < sig.size(); ++op) {
        unsigned k = sig[op].arity;
        std::size_t len = table_length(n, k);
        tables[op].resize(len);
        args.assign(k, 0);
        fargs.assign(k, 0);
        for (std::size_t t = 0; t < len; ++t) {
            std::size_t rest = t;
            for (unsigned i = k; i-- > 0;) {
                args[i] = static_cast<Elem>(rest % n);
                rest /= n;
            }
            for (std::size_t f = 0; f < factors.size(); ++f) {
                for (unsigned i = 0; i < k; ++i) fargs[i] = coords[args[i]][f];
                out[f] = factors[f].apply(op, fargs);
            }
            tables[op][t] = product_index(factors, out);
        }
    }
    std::vector<std::string> names;
    bool labelled = !factors.empty() && std::all_of(factors.begin(), factors.end(),
                                                    [](auto const& f) { return f.has_names(); });
    if (labelled) {
        for (Elem x = 0; x < n; ++x) {
            std::string s = "(";
            for (std::size_t f = 0; f < factors.size(); ++f)
                s += (f ? "," : "") + factors[f].name(coords[x][f]);
            names.push_back(s + ")");
        }
    }
    FiniteAlgebra p(sig, n, std::move(tables), std::move(names));
    p.set_factors(std::make_shared<AlgebraList const>(factors));
    return p;
}

FiniteAlgebra direct_product(AlgebraList const& factors) {
    if (factors.empty()) throw Error("direct_product: empty family needs an explicit signature");
    return direct_product(factors.front().signature(), factors);
}

// ---- quotients

bool is_compatible(FiniteAlgebra const& a, Congruence const& theta) {
    if (theta.universe() != a.size()) return false;
    auto const& sig = a.signature();
    // Compatibility with every operation follows from compatibility in each argument
    // separately, with the other arguments fixed.
    auto blocks = theta.blocks();
    std::vector<Elem> rep(theta.num_blocks());
    for (std::size_t b = 0; b < blocks.size(); ++b) rep[b] = blocks[b][0];
    std::vector<Elem> args;
    for (std::size_t op = 0; op < sig.size(); ++op) {
        unsigned k = sig[op].arity;
        if (k == 0) continue;
        std::size_t len = table_length(a.size(), k);
        args.assign(k, 0);
        for (std::size_t t = 0; t < len; ++t) {
            std::size_t rest = t;
            for (unsigned i = k; i-- > 0;) {
                args[i] = static_cast<Elem>(rest % a.size());
                rest /= a.size();
            }
            Elem base = theta.block(a.apply(op, args));
            for (unsigned i = 0; i < k; ++i) {
                Elem keep = args[i];
                args[i] = rep[theta.block(keep)];
                bool ok = theta.block(a.apply(op, args)) == base;
                args[i] = keep;
                if (!ok) return false;
            }
        }
    }
    return true;
}

Quotient quotient(FiniteAlgebra const& a, Congruence const& theta) {
    if (!is_compatible(a, theta)) throw Error("quotient: partition is not a congruence");
    std::size_t m = theta.num_blocks();
    std::vector<Elem> rep(m, kUnset);
    for (Elem x = 0; x < a.size(); ++x)
        if (rep[theta.block(x)] == kUnset) rep[theta.block(x)] = x;
    auto const& sig = a.signature();
    std::vector<std::vector<Elem>> tables(sig.size());
    std::vector<Elem> args;
    for (std::size_t op = 0; op < sig.size(); ++op) {
        unsigned k = sig[op].arity;
        std::size_t len = table_length(m, k);
        tables[op].resize(len);
        args.assign(k, 0);
        for (std::size_t t = 0; t < len; ++t) {
            std::size_t rest = t;
            for (unsigned i = k; i-- > 0;) {
                args[i] = rep[rest % m];
                rest /= m;
            }
            tables[op][t] = theta.block(a.apply(op, args));
        }
    }
    std::vector<std::string> names;
    if (a.has_names())
        for (Elem r : rep) names.push_back(a.name(r));
    return {FiniteAlgebra(sig, m, std::move(tables), std::move(names)), theta.block_ids()};
}

}  // namespace qv
