#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "ralg/algebra.hpp"
#include "ralg/constructions.hpp"

namespace ralg::testing {

inline FiniteAlgebra random_algebra(std::mt19937& rng, int n, const Signature& sig) {
    std::uniform_int_distribution<Element> pick(0, n - 1);
    std::vector<std::vector<Element>> tables;
    for (std::size_t op = 0; op < sig.size(); ++op) {
        std::vector<Element> table(FiniteAlgebra::table_length(n, sig[op].arity));
        for (auto& v : table) v = pick(rng);
        tables.push_back(std::move(table));
    }
    return FiniteAlgebra(sig, n, std::move(tables));
}

/// Calls fn with every algebra of size n over the signature, by odometer over
/// the concatenated tables.
template <typename F>
void for_each_algebra(int n, const Signature& sig, F&& fn) {
    std::vector<std::size_t> lengths;
    std::size_t total = 0;
    for (std::size_t op = 0; op < sig.size(); ++op) {
        lengths.push_back(FiniteAlgebra::table_length(n, sig[op].arity));
        total += lengths.back();
    }
    std::vector<Element> flat(total, 0);
    while (true) {
        std::vector<std::vector<Element>> tables;
        std::size_t at = 0;
        for (std::size_t len : lengths) {
            tables.emplace_back(flat.begin() + static_cast<long>(at),
                                flat.begin() + static_cast<long>(at + len));
            at += len;
        }
        fn(FiniteAlgebra(sig, n, std::move(tables)));
        std::size_t i = flat.size();
        for (; i-- > 0;) {
            if (++flat[i] < n) break;
            flat[i] = 0;
        }
        if (i == SIZE_MAX) break;
    }
}

/// All partitions of {0..n-1} by recursive block assignment (restricted
/// growth strings).
inline std::vector<CongruencePartition> all_partitions(int n) {
    std::vector<CongruencePartition> out;
    std::vector<int> block_of(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int e, int used) -> void {
        if (e == n) {
            out.push_back(CongruencePartition::from_block_of(block_of));
            return;
        }
        for (int b = 0; b <= used; ++b) {
            block_of[static_cast<std::size_t>(e)] = b;
            self(self, e + 1, std::max(used, b + 1));
        }
    };
    rec(rec, 0, 0);
    return out;
}

inline std::vector<std::vector<Element>> all_permutations(int n) {
    std::vector<Element> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::vector<std::vector<Element>> out;
    do {
        out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace ralg::testing
