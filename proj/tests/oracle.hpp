#pragma once

// Test-only oracles, kept independent of the engines they check.

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "permorder/ints.hpp"

namespace permorder::oracle {

inline u64 lcm_u64(u64 a, u64 b) {
    return a / std::gcd(a, b) * b;
}

/// Order of one permutation given as an image table.
inline u64 permutation_order(const std::vector<unsigned>& perm) {
    std::vector<bool> seen(perm.size(), false);
    u64 ord = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        u64 len = 0;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = perm[j];
            ++len;
        }
        ord = lcm_u64(ord, len);
    }
    return ord;
}

inline unsigned permutation_cycles(const std::vector<unsigned>& perm) {
    std::vector<bool> seen(perm.size(), false);
    unsigned cycles = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = perm[j];
        }
    }
    return cycles;
}

/// Full enumeration of S_n: order -> number of permutations. Practical to n = 8.
inline std::map<u64, u64> brute_order_counts(unsigned n) {
    std::vector<unsigned> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::map<u64, u64> counts;
    do {
        counts[permutation_order(perm)] += 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return counts;
}

/// Full enumeration of S_n: (cycle count, order) -> count.
inline std::map<std::pair<unsigned, u64>, u64> brute_joint_counts(unsigned n) {
    std::vector<unsigned> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::map<std::pair<unsigned, u64>, u64> counts;
    do {
        counts[{permutation_cycles(perm), permutation_order(perm)}] += 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return counts;
}

/// Unsigned Stirling numbers of the first kind, c(n, l).
inline std::vector<std::vector<Int>> stirling_cycle_table(unsigned n) {
    std::vector<std::vector<Int>> c(n + 1, std::vector<Int>(n + 1, Int(0)));
    c[0][0] = 1;
    for (unsigned i = 1; i <= n; ++i) {
        for (unsigned l = 1; l <= i; ++l) {
            c[i][l] = c[i - 1][l - 1] + Int(i - 1) * c[i - 1][l];
        }
    }
    return c;
}

}  // namespace permorder::oracle
