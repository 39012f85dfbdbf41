#pragma once

#include <map>
#include <vector>

#include "permorder/dist.hpp"
#include "permorder/engine.hpp"
#include "permorder/entropy.hpp"
#include "permorder/ints.hpp"
#include "permorder/recursion.hpp"

#include <json.hpp>

namespace permorder {

/// K_n = {k in [0, n) : lcm(1..k) | n - k}; scan stops once lcm(1..k) > n.
std::vector<u64> kn_set(u64 n);

/// The same membership test by direct modular arithmetic on the prime powers
/// up to k (independent of gcd_with_lcm_upto); used for re-verification.
bool kn_member_modular(u64 n, u64 k);

struct EnSet {
    u64 n = 0;
    double c = 0.5;
    u64 x_min = 16;
    std::vector<u64> members;        // x in [x_min, n) passing the threshold
    std::vector<u64> below_cutoff;   // x in [3, x_min) passing it; reported, never counted
};

/// Exceptional x: h(gcd(lcm(1..x), n-x)) >= c log x / log log x. The exact
/// rational h is compared against a refined enclosure of the threshold, so a
/// borderline value can never be misclassified by double rounding.
EnSet en_set(u64 n, double c = 0.5, u64 x_min = 16);

/// Membership test for a single x (3 <= x < n).
bool en_member(u64 n, u64 x, double c);

/// Second-order correction to P(ord = n-k): zero when k <= 1 or
/// 2^(floor(log2 k)+1) divides n-k, else 2^(1-floor(log2 k)) / (n-k)^2.
Rat eta(u64 n, u64 k);

struct ResidualRow {
    u64 n = 0;
    u64 k = 0;
    Rat point_prob;  // P(ord = n-k), exact via the recursion engine
    Rat eta_value;
    Rat residual;    // point_prob - 1/(n-k) - eta
};

ResidualRow exact_order_residual(const RecursionEngine& engine, u64 k, unsigned threads = 1);

struct ModeCheck {
    unsigned n = 0;
    Int mode;
    bool tie = false;
    u64 max_k = 0;
    Int predicted;  // n - max K_n
    bool agrees = false;
};

ModeCheck mode_check(const OrderDistribution& dist);

struct BetaPartial {
    double q = 2;
    long long D = 0;
    unsigned X = 0;
    std::vector<CollisionValue> slices;  // one per x in [0, X)
    CollisionValue value;                // running total
};

/// Truncation of the double sum over x of the q-th power mass of
/// ord(pi_x)/gcd(ord(pi_x), x - D); nondecreasing in X.
BetaPartial beta_partial(double q, long long D, unsigned X, const EngineCaps& caps = {},
                         mpfr_prec_t prec = 192);

struct CollisionRow {
    unsigned n = 0;
    double q = 2;
    CollisionValue scaled;  // n^q P_q(n)
    u64 e_size = 0;
    unsigned log_star_n = 0;
};

CollisionRow collision_vs_exceptional(unsigned n, double q, const OrderDistribution& dist,
                                      double c = 0.5, u64 x_min = 16, mpfr_prec_t prec = 192);

struct WitnessResult {
    unsigned k = 0;
    unsigned ell = 0;
    Int m;       // product of the first k primes
    Int n_star;  // most frequent partition sum (smallest on ties)
    u64 count = 0;
    Rat lower_bound;         // count / m <= p_{n*}(m)
    std::map<Int, u64> sums; // partition sum -> multiplicity
};

/// Enumerates all partitions of the top t = k - ell prime indices; each
/// partition contributes a cycle type of order exactly m and degree equal to
/// its block-product sum.
WitnessResult witness_search(unsigned k, unsigned ell, unsigned t_cap = 10);

struct StructureReport {
    u64 n = 0;
    std::vector<u64> k_set;
    EnSet e_set;
    long long max_k = -1;
    std::map<u64, Rat> eta_values;  // per k in K_n
    unsigned log_star_n = 0;
};

StructureReport structure_report(u64 n, double c = 0.5, u64 x_min = 16);
nlohmann::ordered_json structure_report_to_json(const StructureReport& r);

}  // namespace permorder
