#include "quasivar/closure.hpp"

#include <omp.h>

#include <cstdint>
#include <string_view>
#include <unordered_map>

namespace qv {

void set_thread_count(int threads) {
    if (threads > 0) omp_set_num_threads(threads);
}

namespace {

struct TupleKey {
    std::u32string_view view;
    bool operator==(TupleKey const& o) const { return view == o.view; }
};

struct TupleHash {
    std::size_t operator()(TupleKey const& k) const {
        return std::hash<std::u32string_view>{}(k.view);
    }
};

class TupleStore {
public:
    explicit TupleStore(std::size_t width) : width_(width) {}

    std::size_t size() const { return count_; }
    Elem const* at(Elem x) const { return &chunks_[x / kChunk][(x % kChunk) * width_]; }

    Elem lookup(Elem const* t) const {
        auto it = index_.find(key(t));
        return it == index_.end() ? kUnset : it->second;
    }

    // Returns the index of t, inserting it if new.
    Elem insert(Elem const* t) {
        Elem found = lookup(t);
        if (found != kUnset) return found;
        if (count_ % kChunk == 0) chunks_.emplace_back(kChunk * width_);
        Elem x = static_cast<Elem>(count_++);
        Elem* slot = &chunks_.back()[(x % kChunk) * width_];
        std::copy(t, t + width_, slot);
        index_.emplace(key(slot), x);
        return x;
    }

private:
    static constexpr std::size_t kChunk = 1024;
    TupleKey key(Elem const* t) const {
        return {std::u32string_view(reinterpret_cast<char32_t const*>(t), width_)};
    }
    std::size_t width_;
    std::size_t count_ = 0;
    // chunks never move once allocated, so keys stay valid
    std::vector<std::vector<Elem>> chunks_;
    std::unordered_map<TupleKey, Elem, TupleHash> index_;
};

void compute(Signature const& sig, std::vector<FiniteAlgebra const*> const& coords,
             std::size_t op, std::vector<Elem const*> const& args, Elem* out) {
    unsigned k = sig[op].arity;
    Elem buf[8];
    for (std::size_t c = 0; c < coords.size(); ++c) {
        FiniteAlgebra const& g = *coords[c];
        if (k == 1) out[c] = g.unary(op, args[0][c]);
        else if (k == 2) out[c] = g.binary(op, args[0][c], args[1][c]);
        else if (k <= 8) {
            for (unsigned i = 0; i < k; ++i) buf[i] = args[i][c];
            out[c] = g.apply(op, std::span<Elem const>(buf, k));
        } else {
            std::vector<Elem> v(k);
            for (unsigned i = 0; i < k; ++i) v[i] = args[i][c];
            out[c] = g.apply(op, v);
        }
    }
}

// All results of one round for tuples whose first argument is `first`; only tuples touching
// [done, frontier) are produced. Results are appended to `out` in enumeration order.
void round_for_first(Signature const& sig, std::vector<FiniteAlgebra const*> const& coords,
                     TupleStore const& store, std::size_t done, std::size_t frontier,
                     Elem first, std::vector<Elem>& out) {
    std::size_t w = coords.size();
    std::vector<Elem const*> args;
    std::vector<std::size_t> pos;
    for (std::size_t op = 0; op < sig.size(); ++op) {
        unsigned k = sig[op].arity;
        if (k == 0) continue;
        if (k == 1) {
            if (first < done) continue;
            args = {store.at(first)};
            out.resize(out.size() + w);
            compute(sig, coords, op, args, out.data() + out.size() - w);
            continue;
        }
        pos.assign(k, 0);
        pos[0] = first;
        args.assign(k, nullptr);
        for (;;) {
            bool touches = false;
            for (unsigned i = 0; i < k; ++i) {
                args[i] = store.at(static_cast<Elem>(pos[i]));
                touches |= pos[i] >= done;
            }
            if (touches) {
                out.resize(out.size() + w);
                compute(sig, coords, op, args, out.data() + out.size() - w);
            }
            unsigned i = k;
            bool finished = true;
            while (--i > 0) {
                if (++pos[i] < frontier) {
                    finished = false;
                    break;
                }
                pos[i] = 0;
            }
            if (finished) break;
        }
    }
}

}  // namespace

GeneratedProduct generate_in_product(Signature const& sig,
                                     std::vector<FiniteAlgebra const*> const& coords,
                                     std::vector<std::vector<Elem>> const& seeds,
                                     std::size_t carrier_guard, Kernel kernel) {
    for (auto const* g : coords)
        if (!(g->signature() == sig)) throw Error("generate_in_product: mixed signatures");
    std::size_t w = coords.size();
    TupleStore store(w);
    GeneratedProduct result;
    result.width = w;
    auto guard = [&] {
        if (store.size() > carrier_guard)
            throw GuardError("generated subalgebra exceeds carrier guard " +
                             std::to_string(carrier_guard));
    };
    for (auto const& s : seeds) {
        if (s.size() != w) throw Error("generate_in_product: seed has wrong width");
        result.seed_index.push_back(store.insert(s.data()));
    }
    std::vector<Elem> tmp(w);
    for (std::size_t op = 0; op < sig.size(); ++op) {
        if (sig[op].arity != 0) continue;
        for (std::size_t c = 0; c < w; ++c) tmp[c] = coords[c]->constant(op);
        store.insert(tmp.data());
    }
    guard();
    if (store.size() == 0) throw Error("generate_in_product: nothing to generate from");

    std::size_t done = 0;
    while (done < store.size()) {
        std::size_t frontier = store.size();
        std::vector<std::vector<Elem>> results(frontier);
        if (kernel == Kernel::Serial) {
            for (std::size_t f = 0; f < frontier; ++f)
                round_for_first(sig, coords, store, done, frontier, static_cast<Elem>(f),
                                results[f]);
        } else {
            std::int64_t nf = static_cast<std::int64_t>(frontier);
#pragma omp parallel for schedule(dynamic, 4)
            for (std::int64_t f = 0; f < nf; ++f) {
                round_for_first(sig, coords, store, done, frontier, static_cast<Elem>(f),
                                results[f]);
                // drop tuples already present; the store is read-only inside this loop
                auto& r = results[f];
                std::size_t keep = 0;
                for (std::size_t i = 0; i < r.size(); i += w) {
                    if (store.lookup(&r[i]) != kUnset) continue;
                    if (keep != i) std::copy(r.begin() + i, r.begin() + i + w, r.begin() + keep);
                    keep += w;
                }
                r.resize(keep);
            }
        }
        for (auto const& r : results)
            for (std::size_t i = 0; i < r.size(); i += w) {
                store.insert(&r[i]);
                if (store.size() > carrier_guard) guard();
            }
        done = frontier;
    }

    std::size_t n = store.size();
    std::vector<std::vector<Elem>> tables(sig.size());
    for (std::size_t op = 0; op < sig.size(); ++op) {
        unsigned k = sig[op].arity;
        std::size_t len = table_length(n, k);
        tables[op].assign(len, 0);
        std::int64_t ilen = static_cast<std::int64_t>(len);
        auto fill = [&](std::int64_t t, std::vector<Elem>& out, std::vector<Elem const*>& args) {
            std::size_t rest = static_cast<std::size_t>(t);
            for (unsigned i = k; i-- > 0;) {
                args[i] = store.at(static_cast<Elem>(rest % n));
                rest /= n;
            }
            if (k == 0) {
                for (std::size_t c = 0; c < w; ++c) out[c] = coords[c]->constant(op);
            } else {
                compute(sig, coords, op, args, out.data());
            }
            tables[op][t] = store.lookup(out.data());
        };
        if (kernel == Kernel::Serial) {
            std::vector<Elem> out(w);
            std::vector<Elem const*> args(k);
            for (std::int64_t t = 0; t < ilen; ++t) fill(t, out, args);
        } else {
#pragma omp parallel
            {
                std::vector<Elem> out(w);
                std::vector<Elem const*> args(k);
#pragma omp for schedule(static)
                for (std::int64_t t = 0; t < ilen; ++t) fill(t, out, args);
            }
        }
    }
    result.tuples.resize(n * w);
    for (Elem x = 0; x < n; ++x) std::copy(store.at(x), store.at(x) + w, &result.tuples[x * w]);
    result.algebra = FiniteAlgebra(sig, n, std::move(tables));
    return result;
}

}  // namespace qv
