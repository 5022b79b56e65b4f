#include "quasivar/oracles.hpp"

#include <functional>
#include <set>

#include "quasivar/canonical.hpp"

namespace qv::oracle {

namespace {

struct Instance {
    std::size_t op;
    std::vector<Elem> args;
    Elem result;
};

// Operation instances of A grouped by the largest element they mention.
std::vector<std::vector<Instance>> instances_by_max(FiniteAlgebra const& a) {
    std::size_t n = a.size();
    std::vector<std::vector<Instance>> out(n);
    auto const& sig = a.signature();
    for (std::size_t op = 0; op < sig.size(); ++op) {
        unsigned k = sig[op].arity;
        std::size_t len = table_length(n, k);
        for (std::size_t t = 0; t < len; ++t) {
            std::vector<Elem> args(k);
            std::size_t rest = t;
            for (unsigned i = k; i-- > 0;) {
                args[i] = static_cast<Elem>(rest % n);
                rest /= n;
            }
            Elem r = a.table(op)[t];
            Elem top = r;
            for (Elem x : args) top = std::max(top, x);
            out[top].push_back({op, std::move(args), r});
        }
    }
    return out;
}

bool brute_homs(FiniteAlgebra const& a, FiniteAlgebra const& b, bool injective,
                std::function<bool(std::vector<Elem> const&)> const& visit) {
    require_same_signature(a, b);
    auto inst = instances_by_max(a);
    std::size_t n = a.size();
    std::vector<Elem> h(n);
    std::vector<bool> used(b.size(), false);
    std::vector<Elem> img;
    std::function<bool(std::size_t)> rec = [&](std::size_t x) -> bool {
        if (x == n) return visit(h);
        for (Elem v = 0; v < b.size(); ++v) {
            if (injective && used[v]) continue;
            h[x] = v;
            bool ok = true;
            for (auto const& in : inst[x]) {
                img.resize(in.args.size());
                for (std::size_t i = 0; i < in.args.size(); ++i) img[i] = h[in.args[i]];
                if (b.apply(in.op, img) != h[in.result]) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            used[v] = true;
            bool stop = !rec(x + 1);
            used[v] = false;
            if (stop) return false;
        }
        return true;
    };
    return rec(0);
}

// Independent homomorphism test by full table scan.
bool preserves(FiniteAlgebra const& a, FiniteAlgebra const& b, std::vector<Elem> const& h) {
    for (auto const& group : instances_by_max(a))
        for (auto const& in : group) {
            std::vector<Elem> img;
            for (Elem x : in.args) img.push_back(h[x]);
            if (b.apply(in.op, img) != h[in.result]) return false;
        }
    return true;
}

std::vector<Elem> closure_capped(FiniteAlgebra const& a, std::vector<Elem> seed,
                                 std::size_t cap) {
    std::vector<bool> in(a.size(), false);
    std::vector<Elem> members;
    auto add = [&](Elem x) {
        if (!in[x]) {
            in[x] = true;
            members.push_back(x);
        }
    };
    for (Elem x : seed) add(x);
    auto const& sig = a.signature();
    for (std::size_t op = 0; op < sig.size(); ++op)
        if (sig[op].arity == 0) add(a.constant(op));
    for (bool grew = true; grew && members.size() <= cap;) {
        grew = false;
        std::size_t m = members.size();
        for (std::size_t op = 0; op < sig.size() && members.size() <= cap; ++op) {
            unsigned k = sig[op].arity;
            if (k == 0) continue;
            std::vector<std::size_t> pos(k, 0);
            std::vector<Elem> args(k);
            for (;;) {
                for (unsigned i = 0; i < k; ++i) args[i] = members[pos[i]];
                std::size_t before = members.size();
                add(a.apply(op, args));
                grew |= members.size() != before;
                unsigned i = k;
                while (i-- > 0 && ++pos[i] == m) pos[i] = 0;
                if (i == static_cast<unsigned>(-1)) break;
            }
        }
    }
    return members;
}

}  // namespace

std::optional<std::vector<Elem>> find_hom(FiniteAlgebra const& a, FiniteAlgebra const& b,
                                          bool injective) {
    std::optional<std::vector<Elem>> out;
    brute_homs(a, b, injective, [&](std::vector<Elem> const& h) {
        out = h;
        return false;
    });
    return out;
}

std::vector<std::vector<Elem>> all_homs(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    std::vector<std::vector<Elem>> out;
    brute_homs(a, b, false, [&](std::vector<Elem> const& h) {
        out.push_back(h);
        return true;
    });
    return out;
}

std::vector<ElementSet> small_subuniverses(FiniteAlgebra const& a, std::size_t max_size) {
    std::size_t n = a.size();
    std::set<ElementSet> seen;
    std::vector<ElementSet> queue;
    auto consider = [&](std::vector<Elem> seed) {
        auto c = closure_capped(a, std::move(seed), max_size);
        if (c.empty() || c.size() > max_size) return;
        auto s = ElementSet::of(n, c);
        if (seen.insert(s).second) queue.push_back(s);
    };
    if (a.signature().has_constant()) consider({});
    for (Elem x = 0; x < n; ++x) consider({x});
    for (std::size_t i = 0; i < queue.size(); ++i) {
        ElementSet s = queue[i];
        auto base = s.elements();
        for (Elem x = 0; x < n; ++x) {
            if (s.contains(x)) continue;
            auto seed = base;
            seed.push_back(x);
            consider(std::move(seed));
        }
    }
    return {seen.begin(), seen.end()};
}

JepOutcome jep(GeneratorSet const& gens) {
    AlgebraList subs;
    for (auto const& g : gens.algebras())
        for (auto& s : enumerate_subalgebras(g, true))
            if (!s.is_trivial()) subs.push_back(std::move(s));
    subs = dedupe_isomorphic(std::move(subs));

    struct Coordinate {
        std::size_t gen;
        std::vector<Elem> fa, fb;
    };
    for (std::size_t i = 0; i < subs.size(); ++i)
        for (std::size_t j = i; j < subs.size(); ++j) {
            auto const& a = subs[i];
            auto const& b = subs[j];
            std::vector<std::vector<std::vector<Elem>>> ha, hb;
            for (auto const& g : gens.algebras()) {
                ha.push_back(all_homs(a, g));
                hb.push_back(all_homs(b, g));
            }
            std::vector<Coordinate> coords;
            // one coordinate per pair of points of `x` that still needs separating
            auto cover = [&](FiniteAlgebra const& x, auto const& hx, auto const& hy,
                             bool x_is_a) -> std::optional<std::string> {
                for (Elem p = 0; p < x.size(); ++p)
                    for (Elem q = p + 1; q < x.size(); ++q) {
                        bool found = false;
                        for (std::size_t g = 0; g < gens.size() && !found; ++g) {
                            if (hy[g].empty()) continue;
                            for (auto const& f : hx[g])
                                if (f[p] != f[q]) {
                                    coords.push_back(x_is_a ? Coordinate{g, f, hy[g][0]}
                                                            : Coordinate{g, hy[g][0], f});
                                    found = true;
                                    break;
                                }
                        }
                        if (!found)
                            return "points " + x.name(p) + "," + x.name(q) + " of a " +
                                   std::to_string(x.size()) + "-element member";
                    }
                return std::nullopt;
            };
            if (auto bad = cover(a, ha, hb, true))
                return {false, "pair (" + std::to_string(i) + "," + std::to_string(j) + "): " + *bad};
            if (auto bad = cover(b, hb, ha, false))
                return {false, "pair (" + std::to_string(i) + "," + std::to_string(j) + "): " + *bad};
            // verify the two embeddings into the product of the chosen coordinates
            auto embeds = [&](FiniteAlgebra const& x, bool use_a) {
                std::set<std::vector<Elem>> tuples;
                for (auto const& c : coords)
                    if (!preserves(x, gens[c.gen], use_a ? c.fa : c.fb)) return false;
                for (Elem p = 0; p < x.size(); ++p) {
                    std::vector<Elem> t;
                    for (auto const& c : coords) t.push_back((use_a ? c.fa : c.fb)[p]);
                    if (!tuples.insert(t).second) return false;
                }
                return true;
            };
            if (!embeds(a, true) || !embeds(b, false))
                return {false, "internal: constructed maps are not embeddings"};
        }
    return {};
}

PscOutcome psc(GeneratorSet const& gens, std::size_t max_size, std::size_t max_fold) {
    PscOutcome out;
    std::set<std::vector<Elem>> codes;
    AlgebraList members;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> products = [&](std::size_t from) {
        if (!pick.empty()) {
            AlgebraList factors;
            for (std::size_t i : pick) factors.push_back(gens[i]);
            FiniteAlgebra p = direct_product(gens.signature(), factors);
            for (auto const& s : small_subuniverses(p, max_size)) {
                if (s.count() < 2) continue;
                FiniteAlgebra m = induced_subalgebra(p, s).algebra;
                if (codes.insert(canonical_form(m).code).second) members.push_back(m);
            }
        }
        if (pick.size() == max_fold) return;
        for (std::size_t i = from; i < gens.size(); ++i) {
            pick.push_back(i);
            products(i);
            pick.pop_back();
        }
    };
    products(0);
    out.members = members.size();
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = 0; j < members.size(); ++j)
            if (!find_hom(members[i], members[j])) {
                out.holds = false;
                out.detail = "no homomorphism from a " + std::to_string(members[i].size()) +
                             "-element member into a " + std::to_string(members[j].size()) +
                             "-element member";
                return out;
            }
    return out;
}

}  // namespace qv::oracle
