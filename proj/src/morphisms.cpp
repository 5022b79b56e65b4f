#include "quasivar/morphisms.hpp"

#include <algorithm>
#include <set>

namespace qv {

namespace {

// Products above this size are handled through their factors when possible.
constexpr std::size_t kFactorThreshold = 256;

class HomSearch {
public:
    HomSearch(FiniteAlgebra const& a, FiniteAlgebra const& b, HomSearchOptions const& opt)
        : a_(a), b_(b), opt_(opt), map_(a.size(), kUnset) {
        require_same_signature(a, b);
        if (opt.injective) used_.assign(b.size(), 0);
        if (opt.domains) {
            if (opt.domains->size() != a.size()) throw Error("hom search: domain list has wrong length");
            allowed_.assign(a.size(), {});
            for (Elem x = 0; x < a.size(); ++x) {
                auto const& d = (*opt.domains)[x];
                if (d.empty()) continue;
                allowed_[x].assign(b.size(), 0);
                for (Elem v : d) {
                    if (v >= b.size()) throw Error("hom search: domain value out of range");
                    allowed_[x][v] = 1;
                }
            }
        }
    }

    std::size_t run(std::function<bool(Map const&)> const& visit) {
        visit_ = &visit;
        if (opt_.limit == 0) return 0;
        if (opt_.injective && a_.size() > b_.size()) return 0;
        bool ok = true;
        auto const& sig = a_.signature();
        for (std::size_t op = 0; op < sig.size() && ok; ++op)
            if (sig[op].arity == 0) ok = assign(a_.constant(op), b_.constant(op));
        if (ok && propagate()) descend(0);
        return found_;
    }

private:
    bool allowed(Elem x, Elem v) const {
        return allowed_.empty() || allowed_[x].empty() || allowed_[x][v];
    }

    bool assign(Elem x, Elem v) {
        if (map_[x] != kUnset) return map_[x] == v;
        if (!allowed(x, v)) return false;
        if (!used_.empty()) {
            if (used_[v]) return false;
            used_[v] = 1;
        }
        map_[x] = v;
        trail_.push_back(x);
        return true;
    }

    // Every tuple over processed elements is checked once its last member is processed.
    bool propagate() {
        auto const& sig = a_.signature();
        std::vector<Elem> args, imgs;
        while (qhead_ < trail_.size()) {
            Elem x = trail_[qhead_++];
            processed_.push_back(x);
            for (std::size_t op = 0; op < sig.size(); ++op) {
                unsigned k = sig[op].arity;
                if (k == 0) continue;
                if (k == 1) {
                    if (!assign(a_.unary(op, x), b_.unary(op, map_[x]))) return false;
                    continue;
                }
                if (k == 2) {
                    Elem mx = map_[x];
                    for (Elem y : processed_) {
                        Elem my = map_[y];
                        if (!assign(a_.binary(op, x, y), b_.binary(op, mx, my))) return false;
                        if (y != x && !assign(a_.binary(op, y, x), b_.binary(op, my, mx)))
                            return false;
                    }
                    continue;
                }
                std::size_t p = processed_.size();
                std::vector<std::size_t> pos(k, 0);
                args.assign(k, 0);
                imgs.assign(k, 0);
                for (;;) {
                    bool has_x = false;
                    for (unsigned i = 0; i < k; ++i) {
                        args[i] = processed_[pos[i]];
                        imgs[i] = map_[args[i]];
                        has_x |= pos[i] == p - 1;
                    }
                    if (has_x && !assign(a_.apply(op, args), b_.apply(op, imgs))) return false;
                    unsigned i = k;
                    bool done = true;
                    while (i-- > 0) {
                        if (++pos[i] < p) {
                            done = false;
                            break;
                        }
                        pos[i] = 0;
                    }
                    if (done) break;
                }
            }
        }
        return true;
    }

    void undo(std::size_t trail_size, std::size_t processed_size) {
        while (trail_.size() > trail_size) {
            Elem x = trail_.back();
            trail_.pop_back();
            if (!used_.empty()) used_[map_[x]] = 0;
            map_[x] = kUnset;
        }
        processed_.resize(processed_size);
        qhead_ = trail_size;
    }

    // Returns false once the search should stop.
    bool descend(Elem from) {
        Elem x = from;
        while (x < a_.size() && map_[x] != kUnset) ++x;
        if (x == a_.size()) {
            ++found_;
            if (!(*visit_)(map_)) return false;
            return found_ < opt_.limit;
        }
        std::size_t ts = trail_.size(), ps = processed_.size();
        for (Elem v = 0; v < b_.size(); ++v) {
            if (!allowed(x, v)) continue;
            if (!used_.empty() && used_[v]) continue;
            bool ok = assign(x, v) && propagate();
            bool go_on = !ok || descend(x + 1);
            undo(ts, ps);
            if (!go_on) return false;
        }
        return true;
    }

    FiniteAlgebra const& a_;
    FiniteAlgebra const& b_;
    HomSearchOptions const& opt_;
    Map map_;
    std::vector<char> used_;
    std::vector<std::vector<char>> allowed_;
    std::vector<Elem> trail_;
    std::vector<Elem> processed_;
    std::size_t qhead_ = 0;
    std::size_t found_ = 0;
    std::function<bool(Map const&)> const* visit_ = nullptr;
};

bool use_factors(FiniteAlgebra const& b) {
    return b.factors() && !b.factors()->empty() && b.size() > kFactorThreshold;
}

Map combine(AlgebraList const& factors, std::vector<Map> const& parts, std::size_t n) {
    Map m(n);
    std::vector<Elem> coords(factors.size());
    for (Elem x = 0; x < n; ++x) {
        for (std::size_t i = 0; i < factors.size(); ++i) coords[i] = parts[i][x];
        m[x] = product_index(factors, coords);
    }
    return m;
}

// Embedding into a product: choose one homomorphism per factor so that the kernels meet
// to the identity.
std::optional<Map> embedding_into_product(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    auto const& factors = *b.factors();
    std::vector<std::vector<Map>> homs(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
        homs[i] = enumerate_homs(a, factors[i]);
        if (homs[i].empty()) return std::nullopt;
    }
    std::vector<Map> chosen(factors.size());
    auto rec = [&](auto&& self, std::size_t i, Congruence const& acc) -> bool {
        if (i == factors.size()) return acc.is_identity();
        for (auto const& h : homs[i]) {
            chosen[i] = h;
            if (self(self, i + 1, meet(acc, kernel(h, a.size())))) return true;
        }
        return false;
    };
    if (!rec(rec, 0, Congruence::total(a.size()))) return std::nullopt;
    return combine(factors, chosen, a.size());
}

}  // namespace

std::size_t for_each_hom(FiniteAlgebra const& a, FiniteAlgebra const& b,
                         HomSearchOptions const& opt,
                         std::function<bool(Map const&)> const& visit) {
    HomSearch s(a, b, opt);
    return s.run(visit);
}

std::vector<Map> enumerate_homs(FiniteAlgebra const& a, FiniteAlgebra const& b,
                                std::optional<std::size_t> limit) {
    std::vector<Map> out;
    HomSearchOptions opt;
    if (limit) opt.limit = *limit;
    for_each_hom(a, b, opt, [&](Map const& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

std::optional<Map> hom_exists(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    require_same_signature(a, b);
    if (use_factors(b)) {
        auto const& factors = *b.factors();
        std::vector<Map> parts;
        for (auto const& f : factors) {
            auto h = hom_exists(a, f);
            if (!h) return std::nullopt;
            parts.push_back(std::move(*h));
        }
        return combine(factors, parts, a.size());
    }
    std::optional<Map> out;
    HomSearchOptions opt;
    opt.limit = 1;
    for_each_hom(a, b, opt, [&](Map const& m) {
        out = m;
        return false;
    });
    return out;
}

std::optional<Map> embedding_exists(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    require_same_signature(a, b);
    if (a.size() > b.size()) return std::nullopt;
    if (use_factors(b)) return embedding_into_product(a, b);
    std::optional<Map> out;
    HomSearchOptions opt;
    opt.injective = true;
    opt.limit = 1;
    for_each_hom(a, b, opt, [&](Map const& m) {
        out = m;
        return false;
    });
    return out;
}

std::optional<Map> surjective_hom_exists(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    require_same_signature(a, b);
    if (b.size() > a.size()) return std::nullopt;
    std::optional<Map> out;
    std::vector<char> hit(b.size());
    for_each_hom(a, b, {}, [&](Map const& m) {
        std::fill(hit.begin(), hit.end(), 0);
        std::size_t c = 0;
        for (Elem v : m) c += !hit[v]++ ? 1 : 0;
        if (c == b.size()) {
            out = m;
            return false;
        }
        return true;
    });
    return out;
}

bool is_homomorphism(FiniteAlgebra const& a, FiniteAlgebra const& b, Map const& map) {
    if (!(a.signature() == b.signature()) || map.size() != a.size()) return false;
    for (Elem v : map)
        if (v >= b.size()) return false;
    auto const& sig = a.signature();
    std::vector<Elem> args, imgs;
    for (std::size_t op = 0; op < sig.size(); ++op) {
        unsigned k = sig[op].arity;
        std::size_t len = table_length(a.size(), k);
        args.assign(k, 0);
        imgs.assign(k, 0);
        for (std::size_t t = 0; t < len; ++t) {
            std::size_t rest = t;
            for (unsigned i = k; i-- > 0;) {
                args[i] = static_cast<Elem>(rest % a.size());
                imgs[i] = map[args[i]];
                rest /= a.size();
            }
            if (map[a.table(op)[t]] != b.apply(op, imgs)) return false;
        }
    }
    return true;
}

bool is_embedding(FiniteAlgebra const& a, FiniteAlgebra const& b, Map const& map) {
    if (!is_homomorphism(a, b, map)) return false;
    std::set<Elem> img(map.begin(), map.end());
    return img.size() == map.size();
}

Map compose(Map const& second, Map const& first) {
    Map out(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) out[i] = second[first[i]];
    return out;
}

bool is_zero_generated(FiniteAlgebra const& a) {
    if (!a.signature().has_constant()) return false;
    return close_subset(a, ElementSet(a.size())).count() == a.size();
}

std::optional<Retraction> is_retract(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    require_same_signature(a, b);
    if (a.size() > b.size()) return std::nullopt;
    if (is_zero_generated(a)) {
        // Any endomorphism of a 0-generated algebra is the identity.
        auto g = hom_exists(a, b);
        if (!g) return std::nullopt;
        auto h = hom_exists(b, a);
        if (!h) return std::nullopt;
        return Retraction{std::move(*g), std::move(*h)};
    }
    std::optional<Retraction> out;
    for_each_hom(b, a, {}, [&](Map const& h) {
        std::vector<std::vector<Elem>> dom(a.size());
        for (Elem y = 0; y < b.size(); ++y) dom[h[y]].push_back(y);
        for (auto const& d : dom)
            if (d.empty()) return true;  // h not surjective
        HomSearchOptions opt;
        opt.domains = &dom;
        opt.limit = 1;
        for_each_hom(a, b, opt, [&](Map const& g) {
            out = Retraction{g, h};
            return false;
        });
        return !out;
    });
    return out;
}

std::vector<Elem> trivial_subalgebra_points(FiniteAlgebra const& a) {
    auto const& sig = a.signature();
    std::vector<Elem> out;
    std::vector<Elem> args;
    for (Elem c = 0; c < a.size(); ++c) {
        bool ok = true;
        for (std::size_t op = 0; op < sig.size() && ok; ++op) {
            args.assign(sig[op].arity, c);
            ok = a.apply(op, args) == c;
        }
        if (ok) out.push_back(c);
    }
    return out;
}

FiniteAlgebra zero_generated_subalgebra(FiniteAlgebra const& a) {
    if (!a.signature().has_constant())
        throw Error("zero_generated_subalgebra: signature has no constant");
    return subalgebra_generated(a, {}).algebra;
}

namespace {

// Generators with product structure are replaced by their factors, provided every factor
// receives a homomorphism from A (otherwise the product receives none).
AlgebraList effective_targets(FiniteAlgebra const& a, AlgebraList const& gens) {
    AlgebraList out;
    for (auto const& g : gens) {
        require_same_signature(a, g);
        if (!use_factors(g)) {
            out.push_back(g);
            continue;
        }
        bool all = true;
        for (auto const& f : *g.factors()) all = all && hom_exists(a, f).has_value();
        if (!all) continue;
        auto sub = effective_targets(a, *g.factors());
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

}  // namespace

Separation separates(FiniteAlgebra const& a, AlgebraList const& gens) {
    AlgebraList targets = effective_targets(a, gens);
    std::size_t n = a.size();
    Congruence acc = Congruence::total(n);
    for (Elem x = 0; x < n; ++x) {
        for (Elem y = x + 1; y < n; ++y) {
            if (!acc.related(x, y)) continue;
            bool split = false;
            for (auto const& g : targets) {
                std::vector<std::vector<Elem>> dom(n);
                for (Elem u = 0; u < g.size() && !split; ++u) {
                    dom[x] = {u};
                    dom[y].clear();
                    for (Elem w = 0; w < g.size(); ++w)
                        if (w != u) dom[y].push_back(w);
                    if (dom[y].empty()) break;
                    HomSearchOptions opt;
                    opt.domains = &dom;
                    opt.limit = 1;
                    for_each_hom(a, g, opt, [&](Map const& h) {
                        acc = meet(acc, kernel(h, n));
                        split = true;
                        return false;
                    });
                }
                if (split) break;
            }
            if (!split) return {false, std::make_pair(x, y)};
        }
    }
    return {true, std::nullopt};
}

std::vector<Congruence> hom_kernels(FiniteAlgebra const& a, AlgebraList const& gens) {
    std::set<Congruence> ks;
    for (auto const& g : effective_targets(a, gens))
        for_each_hom(a, g, {}, [&](Map const& h) {
            ks.insert(kernel(h, a.size()));
            return true;
        });
    return {ks.begin(), ks.end()};
}

}  // namespace qv
