#include "quasivar/canonical.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "quasivar/morphisms.hpp"

namespace qv {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    v *= 0x9E3779B97F4A7C15ull;
    v ^= v >> 31;
    h ^= v + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
    return h * 0xBF58476D1CE4E5B9ull;
}

std::size_t distinct(std::vector<std::uint64_t> const& c) {
    return std::set<std::uint64_t>(c.begin(), c.end()).size();
}

std::vector<std::uint64_t> refine_once(FiniteAlgebra const& a,
                                       std::vector<std::uint64_t> const& col) {
    std::size_t n = a.size();
    auto const& sig = a.signature();
    std::vector<std::uint64_t> out(n);
    std::vector<std::uint64_t> bag;
    // preimage signatures for unary operations
    std::vector<std::vector<std::uint64_t>> pre(n);
    for (Elem x = 0; x < n; ++x) {
        std::uint64_t h = mix(0x51, col[x]);
        for (std::size_t op = 0; op < sig.size(); ++op) {
            unsigned k = sig[op].arity;
            if (k == 1) {
                h = mix(h, mix(op, col[a.unary(op, x)]));
            } else if (k == 2) {
                bag.clear();
                for (Elem y = 0; y < n; ++y) {
                    bag.push_back(mix(mix(1, col[y]), col[a.binary(op, x, y)]));
                    bag.push_back(mix(mix(2, col[y]), col[a.binary(op, y, x)]));
                }
                std::sort(bag.begin(), bag.end());
                std::uint64_t hb = mix(0x77, op);
                for (auto v : bag) hb = mix(hb, v);
                h = mix(h, hb);
            }
        }
        out[x] = h;
    }
    for (std::size_t op = 0; op < sig.size(); ++op) {
        if (sig[op].arity != 1) continue;
        for (auto& p : pre) p.clear();
        for (Elem x = 0; x < n; ++x) pre[a.unary(op, x)].push_back(col[x]);
        for (Elem x = 0; x < n; ++x) {
            std::sort(pre[x].begin(), pre[x].end());
            std::uint64_t h = mix(0x99, op);
            for (auto v : pre[x]) h = mix(h, v);
            out[x] = mix(out[x], h);
        }
    }
    return out;
}

std::vector<std::uint64_t> refine_stable(FiniteAlgebra const& a, std::vector<std::uint64_t> col) {
    std::size_t d = distinct(col);
    for (;;) {
        auto next = refine_once(a, col);
        std::size_t dn = distinct(next);
        col = std::move(next);
        if (dn == d) return col;
        d = dn;
    }
}

std::vector<Elem> relabelled_code(FiniteAlgebra const& a, std::vector<Elem> const& label) {
    std::size_t n = a.size();
    std::vector<Elem> inv(n);
    for (Elem x = 0; x < n; ++x) inv[label[x]] = x;
    std::vector<Elem> code{static_cast<Elem>(n)};
    auto const& sig = a.signature();
    std::vector<Elem> args;
    for (std::size_t op = 0; op < sig.size(); ++op) {
        unsigned k = sig[op].arity;
        std::size_t len = table_length(n, k);
        args.assign(k, 0);
        for (std::size_t t = 0; t < len; ++t) {
            std::size_t rest = t;
            for (unsigned i = k; i-- > 0;) {
                args[i] = inv[rest % n];
                rest /= n;
            }
            code.push_back(label[a.apply(op, args)]);
        }
    }
    return code;
}

struct Canonizer {
    FiniteAlgebra const& a;
    CanonicalForm best;
    bool have = false;

    void search(std::vector<std::uint64_t> col) {
        col = refine_stable(a, std::move(col));
        std::map<std::uint64_t, std::vector<Elem>> cells;
        for (Elem x = 0; x < a.size(); ++x) cells[col[x]].push_back(x);
        if (cells.size() == a.size()) {
            std::vector<Elem> label(a.size());
            Elem next = 0;
            for (auto const& [c, members] : cells) label[members[0]] = next++;
            auto code = relabelled_code(a, label);
            if (!have || code < best.code) {
                best.code = std::move(code);
                best.labeling = std::move(label);
                have = true;
            }
            return;
        }
        // smallest non-singleton cell, ties by colour value
        std::uint64_t target = 0;
        std::size_t tsize = SIZE_MAX;
        for (auto const& [c, members] : cells)
            if (members.size() > 1 && members.size() < tsize) {
                tsize = members.size();
                target = c;
            }
        for (Elem x : cells[target]) {
            auto next = col;
            next[x] = mix(next[x], 0xABCDEF);
            search(std::move(next));
        }
    }
};

}  // namespace

std::vector<std::uint64_t> initial_colors(FiniteAlgebra const& a) {
    auto const& sig = a.signature();
    std::vector<std::uint64_t> col(a.size());
    std::vector<Elem> args;
    for (Elem x = 0; x < a.size(); ++x) {
        std::uint64_t h = 0x1234;
        for (std::size_t op = 0; op < sig.size(); ++op) {
            args.assign(sig[op].arity, x);
            Elem r = a.apply(op, args);
            h = mix(h, sig[op].arity == 0 ? (r == x ? 3 : 5) : (r == x ? 7 : 11));
        }
        col[x] = h;
    }
    return col;
}

std::vector<std::uint64_t> refine_colors(FiniteAlgebra const& a, std::vector<std::uint64_t> colors,
                                         std::size_t rounds) {
    for (std::size_t i = 0; i < rounds; ++i) colors = refine_once(a, colors);
    return colors;
}

CanonicalForm canonical_form(FiniteAlgebra const& a) {
    Canonizer c{a, {}, false};
    c.search(initial_colors(a));
    return c.best;
}

std::optional<std::vector<Elem>> are_isomorphic(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    require_same_signature(a, b);
    if (a.size() != b.size()) return std::nullopt;
    std::size_t n = a.size();
    auto ca = initial_colors(a), cb = initial_colors(b);
    // refine both for the same number of rounds
    std::size_t da = distinct(ca), db = distinct(cb);
    for (std::size_t round = 0; round <= n; ++round) {
        auto sa = ca, sb = cb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
        auto na = refine_once(a, ca), nb = refine_once(b, cb);
        std::size_t dna = distinct(na), dnb = distinct(nb);
        if (dna != dnb) return std::nullopt;
        ca = std::move(na);
        cb = std::move(nb);
        if (dna == da && dnb == db) break;
        da = dna;
        db = dnb;
    }
    std::vector<std::vector<Elem>> dom(n);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            if (ca[x] == cb[y]) dom[x].push_back(y);
    for (auto const& d : dom)
        if (d.empty()) return std::nullopt;
    HomSearchOptions opt;
    opt.injective = true;
    opt.domains = &dom;
    opt.limit = 1;
    std::optional<std::vector<Elem>> out;
    for_each_hom(a, b, opt, [&](Map const& m) {
        out = m;
        return false;
    });
    return out;
}

bool isomorphic(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    return are_isomorphic(a, b).has_value();
}

std::vector<FiniteAlgebra> dedupe_isomorphic(std::vector<FiniteAlgebra> algebras) {
    std::vector<FiniteAlgebra> out;
    std::set<std::vector<Elem>> seen;
    for (auto& alg : algebras) {
        if (seen.insert(canonical_form(alg).code).second) out.push_back(std::move(alg));
    }
    return out;
}

}  // namespace qv
