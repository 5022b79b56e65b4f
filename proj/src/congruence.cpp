#include "quasivar/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "quasivar/morphisms.hpp"

namespace qv {

namespace {

struct UnionFind {
    std::vector<Elem> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    Elem find(Elem x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(Elem x, Elem y) {
        x = find(x);
        y = find(y);
        if (x == y) return false;
        if (y < x) std::swap(x, y);
        parent[y] = x;
        return true;
    }
};

// Each merged edge is pushed through every basic translation; the equivalence generated by
// the edges is then closed under all unary polynomials.
Congruence generate(FiniteAlgebra const& a, std::vector<std::pair<Elem, Elem>> const& seeds) {
    std::size_t n = a.size();
    auto const& sig = a.signature();
    UnionFind uf(n);
    std::vector<std::pair<Elem, Elem>> edges;
    for (auto [x, y] : seeds) {
        if (x >= n || y >= n) throw Error("principal_congruence: element out of range");
        if (uf.unite(x, y)) edges.emplace_back(x, y);
    }
    std::vector<Elem> args;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [u, v] = edges[e];
        for (std::size_t op = 0; op < sig.size(); ++op) {
            unsigned k = sig[op].arity;
            if (k == 1) {
                Elem p = a.unary(op, u), q = a.unary(op, v);
                if (uf.unite(p, q)) edges.emplace_back(p, q);
            } else if (k == 2) {
                for (Elem z = 0; z < n; ++z) {
                    Elem p = a.binary(op, u, z), q = a.binary(op, v, z);
                    if (uf.unite(p, q)) edges.emplace_back(p, q);
                    p = a.binary(op, z, u);
                    q = a.binary(op, z, v);
                    if (uf.unite(p, q)) edges.emplace_back(p, q);
                }
            } else if (k > 2) {
                std::size_t others = table_length(n, k - 1);
                args.assign(k, 0);
                for (unsigned pos = 0; pos < k; ++pos) {
                    for (std::size_t t = 0; t < others; ++t) {
                        std::size_t rest = t;
                        for (unsigned i = k; i-- > 0;) {
                            if (i == pos) continue;
                            args[i] = static_cast<Elem>(rest % n);
                            rest /= n;
                        }
                        args[pos] = u;
                        Elem p = a.apply(op, args);
                        args[pos] = v;
                        Elem q = a.apply(op, args);
                        if (uf.unite(p, q)) edges.emplace_back(p, q);
                    }
                }
            }
        }
    }
    std::vector<Elem> ids(n);
    for (Elem x = 0; x < n; ++x) ids[x] = uf.find(x);
    return Congruence(std::move(ids));
}

void check_guard(FiniteAlgebra const& a, Guards const& g, char const* what) {
    if (a.size() > g.derived_carrier)
        throw GuardError(std::string(what) + ": |A| = " + std::to_string(a.size()) +
                         " exceeds guard " + std::to_string(g.derived_carrier));
}

}  // namespace

Congruence principal_congruence(FiniteAlgebra const& a, Elem x, Elem y) {
    return generate(a, {{x, y}});
}

Congruence congruence_generated(FiniteAlgebra const& a,
                                std::vector<std::pair<Elem, Elem>> const& pairs) {
    return generate(a, pairs);
}

std::vector<Congruence> all_principal_congruences(FiniteAlgebra const& a, Kernel kernel) {
    std::size_t n = a.size();
    std::vector<std::pair<Elem, Elem>> pairs;
    for (Elem x = 0; x < n; ++x)
        for (Elem y = x + 1; y < n; ++y) pairs.emplace_back(x, y);
    std::vector<Congruence> out(pairs.size());
    if (kernel == Kernel::Serial) {
        for (std::size_t i = 0; i < pairs.size(); ++i)
            out[i] = principal_congruence(a, pairs[i].first, pairs[i].second);
        return out;
    }
    std::int64_t count = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < count; ++i)
        out[i] = principal_congruence(a, pairs[i].first, pairs[i].second);
    return out;
}

std::vector<Congruence> all_congruences(FiniteAlgebra const& a, Guards const& g, Kernel kernel) {
    check_guard(a, g, "all_congruences");
    std::size_t n = a.size();
    auto principals = all_principal_congruences(a, kernel);
    std::set<Congruence> uniq(principals.begin(), principals.end());
    std::vector<Congruence> gens(uniq.begin(), uniq.end());
    std::set<Congruence> seen{Congruence::identity(n)};
    std::vector<Congruence> queue{Congruence::identity(n)};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (auto const& p : gens) {
            if (p.refines(queue[i])) continue;
            Congruence j = join(queue[i], p);
            if (seen.insert(j).second) {
                queue.push_back(j);
                if (queue.size() > g.derived_carrier)
                    throw GuardError("all_congruences: lattice exceeds guard");
            }
        }
    }
    return {seen.begin(), seen.end()};
}

std::vector<Congruence> relative_congruences(FiniteAlgebra const& a, AlgebraList const& gens,
                                             Guards const& g) {
    check_guard(a, g, "relative_congruences");
    auto kernels = hom_kernels(a, gens);
    std::set<Congruence> seen{Congruence::total(a.size())};
    std::vector<Congruence> queue{Congruence::total(a.size())};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (auto const& k : kernels) {
            Congruence m = meet(queue[i], k);
            if (seen.insert(m).second) {
                queue.push_back(m);
                if (queue.size() > g.derived_carrier)
                    throw GuardError("relative_congruences: lattice exceeds guard");
            }
        }
    }
    return {seen.begin(), seen.end()};
}

char const* to_string(SiStatus s) {
    switch (s) {
        case SiStatus::None: return "None";
        case SiStatus::FSI: return "FSI";
        case SiStatus::SI: return "SI";
        case SiStatus::Simple: return "Simple";
    }
    return "?";
}

SiStatus classify_in_lattice(std::vector<Congruence> const& lattice, std::size_t size) {
    if (size <= 1) return SiStatus::None;
    Congruence id = Congruence::identity(size);
    if (std::find(lattice.begin(), lattice.end(), id) == lattice.end())
        throw Error("si_status: identity is not in the lattice");
    if (lattice.size() == 2) return SiStatus::Simple;
    // In a finite lattice, meet-irreducible and completely meet-irreducible coincide,
    // so FSI is never reported separately.
    Congruence acc = Congruence::total(size);
    for (auto const& c : lattice)
        if (!c.is_identity()) acc = meet(acc, c);
    return acc.is_identity() ? SiStatus::None : SiStatus::SI;
}

SiStatus si_status(FiniteAlgebra const& a) {
    if (a.is_trivial()) return SiStatus::None;
    return classify_in_lattice(all_congruences(a), a.size());
}

SiStatus si_status(FiniteAlgebra const& a, AlgebraList const& gens) {
    if (a.is_trivial()) return SiStatus::None;
    auto lattice = relative_congruences(a, gens);
    if (!lattice.back().is_identity())
        throw Error("si_status: algebra is not in the quasivariety of the generators");
    return classify_in_lattice(lattice, a.size());
}

Quotient relatively_simple_image(FiniteAlgebra const& a, AlgebraList const& gens) {
    if (a.is_trivial()) throw Error("relatively_simple_image: trivial algebra");
    auto lattice = relative_congruences(a, gens);
    if (!lattice.back().is_identity())
        throw Error("relatively_simple_image: algebra is not in the quasivariety");
    for (auto const& c : lattice) {
        if (c.is_total()) continue;
        bool maximal = std::none_of(lattice.begin(), lattice.end(), [&](Congruence const& d) {
            return !d.is_total() && !(d == c) && c.refines(d);
        });
        if (maximal) return quotient(a, c);
    }
    throw Error("relatively_simple_image: no proper relative congruence");
}

}  // namespace qv
