#include "quasivar/brouwer.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "quasivar/demorgan.hpp"

namespace qv {

namespace {

int popcount(Mask m) { return std::popcount(m); }

std::vector<std::size_t> bits(Mask m) {
    std::vector<std::size_t> out;
    while (m) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        m &= m - 1;
    }
    return out;
}

}  // namespace

Poset::Poset(std::vector<Mask> up_rows, std::vector<std::string> names)
    : up_(std::move(up_rows)), names_(std::move(names)) {
    std::size_t n = up_.size();
    if (n == 0) throw Error("poset: empty carrier");
    if (n > 64) throw Error("poset: more than 64 points");
    if (!names_.empty() && names_.size() != n) throw Error("poset: wrong number of names");
    down_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if ((up_[i] & ~all()) != 0) throw Error("poset: index out of range");
        if (!leq(i, i)) throw Error("poset: not reflexive at " + std::to_string(i));
        for (std::size_t j : bits(up_[i])) {
            if (j != i && leq(j, i)) throw Error("poset: not antisymmetric");
            if ((up_[j] & ~up_[i]) != 0) throw Error("poset: not transitive");
            down_[j] |= Mask{1} << i;
        }
    }
}

Poset Poset::generated(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> const& le,
                       std::vector<std::string> names) {
    if (n == 0 || n > 64) throw Error("poset: size out of range");
    std::vector<Mask> up(n);
    for (std::size_t i = 0; i < n; ++i) up[i] = Mask{1} << i;
    for (auto [i, j] : le) {
        if (i >= n || j >= n) throw Error("poset: index out of range");
        up[i] |= Mask{1} << j;
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            Mask m = up[i];
            for (std::size_t j : bits(up[i])) m |= up[j];
            if (m != up[i]) {
                up[i] = m;
                changed = true;
            }
        }
    }
    return Poset(std::move(up), std::move(names));
}

Mask Poset::up_closure(Mask m) const {
    Mask out = 0;
    for (std::size_t i : bits(m)) out |= up_[i];
    return out;
}

Mask Poset::down_closure(Mask m) const {
    Mask out = 0;
    for (std::size_t i : bits(m)) out |= down_[i];
    return out;
}

std::optional<std::size_t> Poset::top() const {
    for (std::size_t i = 0; i < size(); ++i)
        if (down_[i] == all()) return i;
    return std::nullopt;
}

std::optional<std::size_t> Poset::bottom() const {
    for (std::size_t i = 0; i < size(); ++i)
        if (up_[i] == all()) return i;
    return std::nullopt;
}

std::string Poset::name(std::size_t i) const {
    return names_.empty() ? std::to_string(i) : names_[i];
}

std::pair<Poset, std::vector<std::size_t>> Poset::induced(Mask m) const {
    std::vector<std::size_t> pts = bits(m & all());
    if (pts.empty()) throw Error("poset: empty induced subposet");
    std::vector<Mask> up(pts.size(), 0);
    std::vector<std::string> nm;
    for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = 0; b < pts.size(); ++b)
            if (leq(pts[a], pts[b])) up[a] |= Mask{1} << b;
        if (!names_.empty()) nm.push_back(names_[pts[a]]);
    }
    return {Poset(std::move(up), std::move(nm)), pts};
}

std::optional<std::vector<std::size_t>> posets_isomorphic(Poset const& x, Poset const& y) {
    std::size_t n = x.size();
    if (y.size() != n) return std::nullopt;
    auto profile = [](Poset const& p, std::size_t i) {
        return std::pair(popcount(p.up(i)), popcount(p.down(i)));
    };
    std::vector<std::size_t> g(n);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) return true;
        for (std::size_t c = 0; c < n; ++c) {
            if (used[c] || profile(x, i) != profile(y, c)) continue;
            bool ok = true;
            for (std::size_t z = 0; z < i && ok; ++z)
                ok = x.leq(i, z) == y.leq(c, g[z]) && x.leq(z, i) == y.leq(g[z], c);
            if (!ok) continue;
            g[i] = c;
            used[c] = true;
            if (rec(i + 1)) return true;
            used[c] = false;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return g;
}

// ---- up-set algebras

Elem UpSetAlgebra::element_of(Mask m) const {
    auto it = std::lower_bound(masks.begin(), masks.end(), m, [](Mask a, Mask b) {
        return std::pair(popcount(a), a) < std::pair(popcount(b), b);
    });
    if (it == masks.end() || *it != m) throw Error("up_algebra: not an element");
    return static_cast<Elem>(it - masks.begin());
}

std::vector<Mask> nonempty_up_sets(Poset const& x, Guards const& g) {
    if (x.size() > g.poset_points)
        throw GuardError("poset exceeds guard of " + std::to_string(g.poset_points) + " points");
    auto d = element_depths(x);
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    std::vector<Mask> out;
    std::function<void(std::size_t, Mask)> rec = [&](std::size_t k, Mask cur) {
        if (k == order.size()) {
            if (cur != 0) {
                out.push_back(cur);
                if (out.size() > g.derived_carrier)
                    throw GuardError("up-set count exceeds guard " +
                                     std::to_string(g.derived_carrier));
            }
            return;
        }
        std::size_t p = order[k];
        rec(k + 1, cur);
        Mask strict = x.up(p) & ~(Mask{1} << p);
        if ((strict & ~cur) == 0) rec(k + 1, cur | Mask{1} << p);
    };
    rec(0, 0);
    std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
        return std::pair(popcount(a), a) < std::pair(popcount(b), b);
    });
    return out;
}

UpSetAlgebra up_algebra(Poset const& x, Guards const& g) {
    if (!x.dominated()) throw Error("up_algebra: poset has no greatest element");
    UpSetAlgebra u;
    u.masks = nonempty_up_sets(x, g);
    std::size_t n = u.masks.size();
    std::vector<std::vector<Elem>> t(4);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            Mask ua = u.masks[a], ub = u.masks[b];
            t[0].push_back(u.element_of(x.all() & ~x.down_closure(ua & ~ub)));
            t[1].push_back(u.element_of(ua & ub));
            t[2].push_back(u.element_of(ua | ub));
        }
    t[3].push_back(static_cast<Elem>(n - 1));
    std::vector<std::string> names;
    for (Mask m : u.masks) {
        std::string s = "{";
        for (std::size_t i : bits(m)) s += (s.size() > 1 ? "," : "") + x.name(i);
        names.push_back(s + "}");
    }
    u.algebra = FiniteAlgebra(brouwer_signature(), n, std::move(t), std::move(names));
    return u;
}

// ---- prime filters

std::vector<Elem> prime_filter_generators(FiniteAlgebra const& a) {
    if (auto r = check_brouwerian(a); !r)
        throw Error("prime_filter_poset: not a Brouwerian algebra (" + r.failed + ")");
    std::size_t n = a.size();
    std::vector<Elem> out;
    for (Elem x = 0; x < n; ++x) {
        std::optional<Elem> below;
        bool least = true;
        for (Elem y = 0; y < n; ++y) {
            if (!leq(a, x, y)) least = false;
            if (y != x && leq(a, y, x)) below = below ? a.op("join", *below, y) : y;
        }
        // the least element, or a join-irreducible one
        if (least || (below && *below != x)) out.push_back(x);
    }
    return out;
}

Poset prime_filter_poset(FiniteAlgebra const& a) {
    auto gens = prime_filter_generators(a);
    std::size_t n = gens.size();
    std::vector<Mask> up(n, 0);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (leq(a, gens[j], gens[i])) up[i] |= Mask{1} << j;
        names.push_back(a.name(gens[i]));
    }
    return Poset(std::move(up), std::move(names));
}

std::vector<std::size_t> dual_of_hom(FiniteAlgebra const& a, FiniteAlgebra const& b, Map const& h) {
    if (!is_homomorphism(a, b, h)) throw Error("dual_of_hom: not a homomorphism");
    auto ga = prime_filter_generators(a);
    auto gb = prime_filter_generators(b);
    std::vector<std::size_t> out;
    for (Elem q : gb) {
        std::optional<Elem> least;
        for (Elem x = 0; x < a.size(); ++x)
            if (leq(b, q, h[x])) least = least ? a.op("meet", *least, x) : x;
        auto it = std::find(ga.begin(), ga.end(), *least);
        if (it == ga.end()) throw Error("dual_of_hom: preimage is not a prime filter");
        out.push_back(static_cast<std::size_t>(it - ga.begin()));
    }
    return out;
}

Map dual_of_pmorphism(Poset const& x, Poset const& y, std::vector<std::size_t> const& g,
                      Guards const& gd) {
    if (!is_pmorphism(x, y, g)) throw Error("dual_of_pmorphism: not a p-morphism");
    UpSetAlgebra ux = up_algebra(x, gd), uy = up_algebra(y, gd);
    Map out;
    for (Mask v : uy.masks) {
        Mask pre = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (v >> g[i] & 1) pre |= Mask{1} << i;
        out.push_back(ux.element_of(pre));
    }
    return out;
}

bool is_isotone(Poset const& x, Poset const& y, std::vector<std::size_t> const& g) {
    if (g.size() != x.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (g[i] >= y.size()) return false;
        for (std::size_t j : bits(x.up(i)))
            if (!y.leq(g[i], g[j])) return false;
    }
    return true;
}

bool is_pmorphism(Poset const& x, Poset const& y, std::vector<std::size_t> const& g) {
    if (!is_isotone(x, y, g)) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        Mask image = 0;
        for (std::size_t j : bits(x.up(i))) image |= Mask{1} << g[j];
        if (image != y.up(g[i])) return false;
    }
    return true;
}

// ---- depth, hat, K_n

std::vector<int> element_depths(Poset const& x) {
    std::size_t n = x.size();
    std::vector<int> d(n, -1);
    std::function<int(std::size_t)> rec = [&](std::size_t i) {
        if (d[i] >= 0) return d[i];
        int best = 0;
        for (std::size_t j : bits(x.up(i)))
            if (j != i) best = std::max(best, rec(j) + 1);
        return d[i] = best;
    };
    for (std::size_t i = 0; i < n; ++i) rec(i);
    return d;
}

int element_depth(Poset const& x, std::size_t i) { return element_depths(x).at(i); }

int depth(Poset const& x) {
    auto d = element_depths(x);
    return *std::max_element(d.begin(), d.end());
}

Poset hat(Poset const& x) {
    if (!x.dominated()) throw Error("hat: poset has no greatest element");
    auto d = element_depths(x);
    std::vector<std::size_t> two;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (d[i] == 2) two.push_back(i);
    std::size_t n = x.size();
    std::vector<std::pair<std::size_t, std::size_t>> le;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : bits(x.up(i))) le.emplace_back(i, j);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(x.name(i));
    std::size_t next = n;
    for (std::size_t p = 0; p < two.size(); ++p)
        for (std::size_t q = p + 1; q < two.size(); ++q) {
            le.emplace_back(next, two[p]);
            le.emplace_back(next, two[q]);
            names.push_back("e_" + x.name(two[p]) + x.name(two[q]));
            ++next;
        }
    return Poset::generated(next, le, std::move(names));
}

Poset k_poset(unsigned n) {
    if (n == 0) throw Error("k_poset: n must be at least 1");
    std::size_t size = 2 * n + 2, top = 2 * n + 1;
    std::vector<std::pair<std::size_t, std::size_t>> le;
    std::vector<std::string> names{"0"};
    for (unsigned i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
    for (unsigned j = 1; j <= n; ++j) names.push_back("c" + std::to_string(j));
    names.push_back("1");
    for (unsigned i = 1; i <= n; ++i) {
        le.emplace_back(0, i);
        le.emplace_back(0, n + i);
        le.emplace_back(i, top);
        le.emplace_back(n + i, top);
        for (unsigned j = 1; j <= n; ++j)
            if (i != j) le.emplace_back(i, n + j);
    }
    return Poset::generated(size, le, std::move(names));
}

Poset p6() {
    return Poset::generated(6, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}, {4, 5}},
                            {"0", "a", "b", "c", "1", "T"});
}

// ---- p-morphism search

std::optional<std::vector<std::size_t>> surjective_pmorphism_exists(Poset const& u,
                                                                    Poset const& y) {
    if (!u.dominated() || !y.dominated()) throw Error("p-morphism search: posets must be dominated");
    std::size_t n = u.size(), m = y.size();
    if (m > n) return std::nullopt;
    auto du = element_depths(u), dy = element_depths(y);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return du[a] < du[b]; });
    std::vector<std::size_t> g(n, SIZE_MAX);
    std::vector<std::size_t> hits(m, 0);
    std::size_t covered = 0;
    std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
        if (m - covered > n - k) return false;
        if (k == n) return true;
        std::size_t x = order[k];
        for (std::size_t c = 0; c < m; ++c) {
            if (dy[c] > du[x]) continue;
            bool ok = true;
            Mask image = Mask{1} << c;
            for (std::size_t z : bits(u.up(x))) {
                if (z == x) continue;
                if (!y.leq(c, g[z])) {
                    ok = false;
                    break;
                }
                image |= Mask{1} << g[z];
            }
            if (!ok || image != y.up(c)) continue;
            g[x] = c;
            if (hits[c]++ == 0) ++covered;
            if (rec(k + 1)) return true;
            if (--hits[c] == 0) --covered;
            g[x] = SIZE_MAX;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return g;
}

bool sh_membership_dual(Poset const& y, Poset const& z, Guards const& g) {
    for (Mask up : nonempty_up_sets(z, g)) {
        if (static_cast<std::size_t>(popcount(up)) < y.size()) continue;
        if (surjective_pmorphism_exists(z.induced(up).first, y)) return true;
    }
    return false;
}

// ---- random instances

Poset random_dominated_poset(std::mt19937_64& rng, std::size_t n) {
    if (n == 0) throw Error("random_dominated_poset: empty");
    std::bernoulli_distribution edge(std::uniform_real_distribution<double>(0.15, 0.6)(rng));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    // perm[n-1] is the top; other edges follow perm order
    std::vector<std::pair<std::size_t, std::size_t>> le;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        le.emplace_back(perm[i], perm[n - 1]);
        for (std::size_t j = i + 1; j + 1 < n; ++j)
            if (edge(rng)) le.emplace_back(perm[i], perm[j]);
    }
    return Poset::generated(n, le);
}

FiniteAlgebra random_brouwerian(std::mt19937_64& rng, std::size_t max_size) {
    std::uniform_int_distribution<int> points(0, 5);
    for (;;) {
        int k = points(rng);
        std::vector<Mask> below(k, 0);
        std::bernoulli_distribution edge(0.35);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < j; ++i)
                if (edge(rng)) below[j] |= (Mask{1} << i) | below[i];
        std::vector<Mask> downs;
        for (Mask s = 0; s < (Mask{1} << k); ++s) {
            bool closed = true;
            for (int j = 0; j < k && closed; ++j)
                if ((s >> j & 1) && (below[j] & ~s)) closed = false;
            if (closed) downs.push_back(s);
        }
        if (downs.size() > max_size) continue;
        std::shuffle(downs.begin(), downs.end(), rng);
        std::size_t n = downs.size();
        auto index = [&](Mask s) {
            return static_cast<Elem>(std::find(downs.begin(), downs.end(), s) - downs.begin());
        };
        Mask full = (Mask{1} << k) - 1;
        std::vector<std::vector<Elem>> t(4);
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b) {
                // largest c with a ^ c <= b
                Mask best = 0;
                for (Mask c : downs)
                    if ((downs[a] & c & ~downs[b]) == 0) best |= c;
                t[0].push_back(index(best));
                t[1].push_back(index(downs[a] & downs[b]));
                t[2].push_back(index(downs[a] | downs[b]));
            }
        t[3].push_back(index(full));
        return FiniteAlgebra(brouwer_signature(), n, std::move(t));
    }
}

}  // namespace qv
