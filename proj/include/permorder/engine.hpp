#pragma once

#include <map>
#include <vector>

#include "permorder/dist.hpp"
#include "permorder/ints.hpp"

namespace permorder {

struct EngineCaps {
    unsigned tier_a_max = 60;
    unsigned tier_b_max = 150;
    unsigned tier_c_max = 5000;
    unsigned long lattice_cap = 4096;
};

/// Exact joint law of (cycle count, order) by enumerating all integer
/// partitions of n: a cycle type with m_j parts of size d_j carries weight
/// prod 1/(m_j! d_j^{m_j}).
JointDistribution joint_exact(unsigned n, const EngineCaps& caps = {});

/// Number of permutations of [x] whose order divides d, for 0 <= x <= n.
/// Equivalently x! [z^x] exp(sum_{j | d, j <= x} z^j / j).
std::vector<Int> count_order_divides_upto(unsigned n, const Int& d);
Int count_order_divides(unsigned n, const Int& d);

/// P(ord divides d) for a uniform permutation of [n].
Rat order_divides_prob(unsigned n, const Int& d);

/// P(ord = m) via Moebius inversion over the divisor lattice of m.
Rat point_prob_moebius(unsigned n, const Int& m, const EngineCaps& caps = {});

/// Exact support of the order distribution: m with minimal degree <= n,
/// generated by descent over prime powers with remaining-budget pruning.
std::vector<u64> support_u64(unsigned n, const EngineCaps& caps = {});
std::vector<Int> support(unsigned n, const EngineCaps& caps = {});

/// Complete exact law. Tier A enumerates partitions (n <= tier_a_max);
/// tier B runs Moebius inversion over every support element (n <= tier_b_max).
OrderDistribution full_distribution(unsigned n, Tier tier, const EngineCaps& caps = {},
                                    unsigned threads = 0);

/// Tier A when within its cap, tier B otherwise.
OrderDistribution full_distribution_auto(unsigned n, const EngineCaps& caps = {},
                                         unsigned threads = 0);

/// full_distribution with a binary file cache under cache_dir (created if
/// missing; empty string disables caching). Unreadable cache entries are
/// bypassed with a warning on stderr and recomputed, never trusted.
OrderDistribution full_distribution_cached(unsigned n, Tier tier, const std::string& cache_dir,
                                           const EngineCaps& caps = {}, unsigned threads = 0);

/// P(exactly ell cycles, every cycle length in I).
Rat restricted_cycle_prob(unsigned n, const std::vector<u64>& I, unsigned ell);

/// Law of lcm(ord(pi_x), v); x = 0 contributes a point mass at v.
std::map<Int, Rat> lifted_lcm_distribution(unsigned x, const Int& v,
                                           const EngineCaps& caps = {});

/// Law of ord(pi_x) / gcd(ord(pi_x), |x - D|); gcd(m, 0) = m, so x = D
/// collapses to a point mass at 1.
std::map<Int, Rat> quotient_distribution(unsigned x, long long D,
                                         const EngineCaps& caps = {});

}  // namespace permorder
