#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "quasivar/algebra.hpp"

namespace testing {

// Relabels A by perm: element x of A becomes perm[x].
inline qv::FiniteAlgebra permuted(qv::FiniteAlgebra const& a, std::vector<qv::Elem> const& perm) {
    std::size_t n = a.size();
    std::vector<qv::Elem> inv(n);
    for (qv::Elem x = 0; x < n; ++x) inv[perm[x]] = x;
    std::vector<std::vector<qv::Elem>> tables;
    auto const& sig = a.signature();
    for (std::size_t op = 0; op < sig.size(); ++op) {
        unsigned k = sig[op].arity;
        std::vector<qv::Elem> t(qv::table_length(n, k));
        for (std::size_t i = 0; i < t.size(); ++i) {
            std::vector<qv::Elem> args(k);
            std::size_t rest = i;
            for (unsigned j = k; j-- > 0;) {
                args[j] = inv[rest % n];
                rest /= n;
            }
            t[i] = perm[a.apply(op, args)];
        }
        tables.push_back(std::move(t));
    }
    return qv::FiniteAlgebra(sig, n, std::move(tables));
}

inline std::vector<qv::Elem> random_permutation(std::size_t n, std::mt19937_64& rng) {
    std::vector<qv::Elem> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

// Every partition of {0..n-1}, as restricted-growth strings.
inline std::vector<std::vector<qv::Elem>> all_partitions(std::size_t n) {
    std::vector<std::vector<qv::Elem>> out;
    std::vector<qv::Elem> cur(n, 0);
    auto rec = [&](auto&& self, std::size_t i, qv::Elem max) -> void {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (qv::Elem b = 0; b <= max + 1; ++b) {
            cur[i] = b;
            self(self, i + 1, std::max(max, b));
        }
    };
    if (n == 0) return out;
    cur[0] = 0;
    rec(rec, 1, 0);
    return out;
}

// Whether the partition is compatible with every operation, by full table scan.
inline bool compatible(qv::FiniteAlgebra const& a, std::vector<qv::Elem> const& block) {
    std::size_t n = a.size();
    auto const& sig = a.signature();
    for (std::size_t op = 0; op < sig.size(); ++op) {
        unsigned k = sig[op].arity;
        if (k == 1) {
            for (qv::Elem x = 0; x < n; ++x)
                for (qv::Elem y = 0; y < n; ++y)
                    if (block[x] == block[y] && block[a.unary(op, x)] != block[a.unary(op, y)])
                        return false;
        } else if (k == 2) {
            for (qv::Elem x = 0; x < n; ++x)
                for (qv::Elem y = 0; y < n; ++y)
                    if (block[x] == block[y])
                        for (qv::Elem z = 0; z < n; ++z)
                            if (block[a.binary(op, x, z)] != block[a.binary(op, y, z)] ||
                                block[a.binary(op, z, x)] != block[a.binary(op, z, y)])
                                return false;
        }
    }
    return true;
}

}  // namespace testing
