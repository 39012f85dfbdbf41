#include "permorder/engine.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <stdexcept>

#include "permorder/divisors.hpp"
#include "permorder/errors.hpp"
#include "permorder/factor.hpp"
#include "permorder/primes.hpp"
#include "permorder/threads.hpp"

namespace permorder {
namespace {

u64 lcm_u64(u64 a, u64 b) {
    return a / std::gcd(a, b) * b;
}

// Enumerates partitions of n by distinct part values in decreasing order,
// tracking cycle count, lcm of parts, and the Cauchy weight denominator
// prod m_j! d_j^{m_j}.
template <typename Leaf>
void walk_partitions(unsigned remaining, unsigned max_part, unsigned cycles, u64 lcm_acc,
                     Int& weight, Leaf&& leaf) {
    if (remaining == 0) {
        leaf(cycles, lcm_acc, weight);
        return;
    }
    for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
        Int part_pow = 1;
        Int count_fact = 1;
        u64 lcm_next = lcm_u64(lcm_acc, part);
        for (unsigned count = 1; count * part <= remaining; ++count) {
            part_pow *= part;
            count_fact *= count;
            Int w = weight * part_pow * count_fact;
            walk_partitions(remaining - count * part, part - 1, cycles + count, lcm_next, w,
                            leaf);
        }
    }
}

std::vector<unsigned> step_lengths(unsigned n, const Int& d) {
    std::vector<unsigned> steps;
    for (unsigned j = 1; j <= n; ++j) {
        if (divides_u64(j, d)) steps.push_back(j);
    }
    return steps;
}

}  // namespace

JointDistribution joint_exact(unsigned n, const EngineCaps& caps) {
    if (n < 1) throw std::invalid_argument("joint_exact: n must be positive");
    if (n > caps.tier_a_max) throw ResourceError("n", n, caps.tier_a_max);
    JointDistribution out;
    out.n = n;
    Int fact_n = factorial(n);
    std::map<std::pair<unsigned, u64>, Int> counts;
    Int weight = 1;
    walk_partitions(n, n, 0, 1, weight, [&](unsigned cycles, u64 order, const Int& w) {
        Int c;
        mpz_divexact(c.get_mpz_t(), fact_n.get_mpz_t(), w.get_mpz_t());
        counts[{cycles, order}] += c;
    });
    for (const auto& [key, c] : counts) {
        out.probs.emplace(std::make_pair(key.first, Int(static_cast<unsigned long>(key.second))),
                          make_rat(c, fact_n));
    }
    return out;
}

std::vector<Int> count_order_divides_upto(unsigned n, const Int& d) {
    if (d < 1) throw std::invalid_argument("count_order_divides: d must be positive");
    std::vector<unsigned> steps = step_lengths(n, d);
    std::vector<Int> dp(n + 1);
    dp[0] = 1;
    for (unsigned x = 1; x <= n; ++x) {
        Int acc = 0;
        Int ff = 1;  // (x-1)!/(x-j)!, extended incrementally over ascending j
        unsigned covered = 1;
        for (unsigned j : steps) {
            if (j > x) break;
            while (covered < j) {
                ff *= x - covered;
                ++covered;
            }
            acc += ff * dp[x - j];
        }
        dp[x] = std::move(acc);
    }
    return dp;
}

Int count_order_divides(unsigned n, const Int& d) {
    return count_order_divides_upto(n, d).back();
}

Rat order_divides_prob(unsigned n, const Int& d) {
    if (n == 0) return Rat(1);
    return make_rat(count_order_divides(n, d), factorial(n));
}

Rat point_prob_moebius(unsigned n, const Int& m, const EngineCaps& caps) {
    if (m < 1) throw std::invalid_argument("point_prob_moebius: m must be positive");
    Factorization f = factorize(m);
    if (minimal_degree(f) > static_cast<long>(n)) return Rat(0);
    DivisorLattice lat = build_divisor_lattice(m, caps.lattice_cap);
    Int acc = 0;
    for (std::size_t i = 0; i < lat.divisors.size(); ++i) {
        int mu = lat.moebius_cofactor[i];
        if (mu == 0) continue;
        Int c = count_order_divides(n, lat.divisors[i]);
        if (mu > 0)
            acc += c;
        else
            acc -= c;
    }
    return make_rat(acc, factorial(n));
}

std::vector<u64> support_u64(unsigned n, const EngineCaps& caps) {
    if (n < 1) throw std::invalid_argument("support: n must be positive");
    if (n > caps.tier_b_max) throw ResourceError("n", n, caps.tier_b_max);
    std::vector<u32> primes = primes_upto(n);
    std::vector<u64> out;
    // Descend over prime indices; each branch either skips a prime or commits
    // one power of it, spending p^a of the remaining degree budget.
    auto rec = [&](auto&& self, std::size_t idx, unsigned budget, u64 prod) -> void {
        out.push_back(prod);
        for (std::size_t i = idx; i < primes.size(); ++i) {
            u64 p = primes[i];
            if (p > budget) break;
            for (u64 pk = p; pk <= budget; pk *= p) {
                self(self, i + 1, budget - static_cast<unsigned>(pk), prod * pk);
                if (pk > budget / p) break;
            }
        }
    };
    rec(rec, 0, n, 1);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Int> support(unsigned n, const EngineCaps& caps) {
    std::vector<u64> s = support_u64(n, caps);
    std::vector<Int> out;
    out.reserve(s.size());
    for (u64 v : s) out.emplace_back(static_cast<unsigned long>(v));
    return out;
}

namespace {

OrderDistribution full_distribution_a(unsigned n, const EngineCaps& caps) {
    JointDistribution joint = joint_exact(n, caps);
    OrderDistribution out;
    out.n = n;
    out.tier = Tier::A;
    for (const auto& [key, p] : joint.probs) {
        auto it = out.probs.find(key.second);
        if (it == out.probs.end())
            out.probs.emplace(key.second, p);
        else
            it->second += p;
    }
    return out;
}

OrderDistribution full_distribution_b(unsigned n, const EngineCaps& caps, unsigned threads) {
    std::vector<u64> supp = support_u64(n, caps);
    std::map<u64, std::size_t> index;
    for (std::size_t i = 0; i < supp.size(); ++i) index.emplace(supp[i], i);

    // One divisibility-count per support element; every divisor of a support
    // element is itself a support element, so this table is closed under the
    // Moebius sums below.
    std::vector<Int> counts(supp.size());
    parallel_for(
        supp.size(),
        [&](std::size_t i) { counts[i] = count_order_divides(n, Int(static_cast<unsigned long>(supp[i]))); },
        threads);

    Int fact_n = factorial(n);
    std::vector<Rat> probs(supp.size());
    parallel_for(
        supp.size(),
        [&](std::size_t i) {
            u64 m = supp[i];
            Factorization f = factorize_u64(m);
            unsigned w = f.omega();
            Int acc = 0;
            for (u64 mask = 0; mask < (1ull << w); ++mask) {
                u64 s = 1;
                for (unsigned b = 0; b < w; ++b) {
                    if (mask & (1ull << b)) s *= to_u64(f.factors[b].first);
                }
                const Int& c = counts[index.at(m / s)];
                if (__builtin_popcountll(mask) % 2 == 0)
                    acc += c;
                else
                    acc -= c;
            }
            probs[i] = make_rat(acc, fact_n);
        },
        threads);

    OrderDistribution out;
    out.n = n;
    out.tier = Tier::B;
    for (std::size_t i = 0; i < supp.size(); ++i) {
        if (probs[i] > 0) out.probs.emplace(Int(static_cast<unsigned long>(supp[i])), probs[i]);
    }
    return out;
}

}  // namespace

OrderDistribution full_distribution(unsigned n, Tier tier, const EngineCaps& caps,
                                    unsigned threads) {
    if (n < 1) throw std::invalid_argument("full_distribution: n must be positive");
    switch (tier) {
        case Tier::A:
            return full_distribution_a(n, caps);
        case Tier::B:
            if (n > caps.tier_b_max) throw ResourceError("n", n, caps.tier_b_max);
            return full_distribution_b(n, caps, threads);
        case Tier::C:
            throw std::invalid_argument("full_distribution: tier C answers point queries only");
    }
    throw std::invalid_argument("full_distribution: bad tier");
}

OrderDistribution full_distribution_auto(unsigned n, const EngineCaps& caps, unsigned threads) {
    return full_distribution(n, n <= caps.tier_a_max ? Tier::A : Tier::B, caps, threads);
}

OrderDistribution full_distribution_cached(unsigned n, Tier tier, const std::string& cache_dir,
                                           const EngineCaps& caps, unsigned threads) {
    std::string path;
    if (!cache_dir.empty()) {
        std::filesystem::create_directories(cache_dir);
        path = cache_dir + "/" + dist_cache_filename(n, tier);
        if (std::filesystem::exists(path)) {
            if (auto d = dist_cache_read(path, n, tier)) return *d;
            std::cerr << "warning: ignoring unreadable cache file " << path << "\n";
        }
    }
    OrderDistribution d = full_distribution(n, tier, caps, threads);
    if (!path.empty() && !dist_cache_write(path, d)) {
        std::cerr << "warning: could not write cache file " << path << "\n";
    }
    return d;
}

Rat restricted_cycle_prob(unsigned n, const std::vector<u64>& I, unsigned ell) {
    if (n < 1) throw std::invalid_argument("restricted_cycle_prob: n must be positive");
    if (ell < 1) throw std::invalid_argument("restricted_cycle_prob: ell must be positive");
    std::vector<unsigned> steps;
    for (u64 i : I) {
        if (i >= 1 && i <= n) steps.push_back(static_cast<unsigned>(i));
    }
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());

    // counts[x][c] = permutations of [x] with exactly c cycles, lengths in I.
    std::vector<std::vector<Int>> counts(n + 1, std::vector<Int>(ell + 1));
    counts[0][0] = 1;
    for (unsigned x = 1; x <= n; ++x) {
        Int ff = 1;
        unsigned covered = 1;
        for (unsigned j : steps) {
            if (j > x) break;
            while (covered < j) {
                ff *= x - covered;
                ++covered;
            }
            for (unsigned c = 1; c <= ell; ++c) {
                if (counts[x - j][c - 1] != 0) counts[x][c] += ff * counts[x - j][c - 1];
            }
        }
    }
    return make_rat(counts[n][ell], factorial(n));
}

std::map<Int, Rat> lifted_lcm_distribution(unsigned x, const Int& v, const EngineCaps& caps) {
    if (v < 1) throw std::invalid_argument("lifted_lcm_distribution: v must be positive");
    std::map<Int, Rat> out;
    if (x == 0) {
        out.emplace(v, Rat(1));
        return out;
    }
    OrderDistribution dist = full_distribution_auto(x, caps);
    for (const auto& [m, p] : dist.probs) {
        out[int_lcm(m, v)] += p;
    }
    return out;
}

std::map<Int, Rat> quotient_distribution(unsigned x, long long D, const EngineCaps& caps) {
    std::map<Int, Rat> out;
    if (x == 0) {
        out.emplace(Int(1), Rat(1));
        return out;
    }
    long long diff = static_cast<long long>(x) - D;
    Int g_arg(static_cast<long>(diff < 0 ? -diff : diff));
    OrderDistribution dist = full_distribution_auto(x, caps);
    for (const auto& [m, p] : dist.probs) {
        Int g = int_gcd(m, g_arg);  // gcd(m, 0) = m
        out[m / g] += p;
    }
    return out;
}

}  // namespace permorder
