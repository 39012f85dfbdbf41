#pragma once

#include <vector>

#include "permorder/ints.hpp"

namespace permorder {

/// lcm(1, ..., k); the empty and singleton ranges (k <= 1) give 1.
Int lcm_upto(u64 k);

/// gcd(lcm(1..x), v) computed from the factorisation of v alone:
/// prod over p <= x of p^min(nu_p(v), floor(log_p x)). x <= 1 gives 1.
Int gcd_with_lcm_upto(u64 x, const Int& v);

struct ChebyshevSums {
    u64 pi = 0;
    double theta = 0.0;  // sum of log p over p <= x
    double psi = 0.0;    // sum of floor(log_p x) log p over p <= x
};

ChebyshevSums chebyshev(double x);

/// Sum of 1/p over primes p <= x, exact.
Rat prime_reciprocal_sum(double x);

/// Least k with the k-fold iterated natural log of x at most 1. Rejects x <= 0.
unsigned log_star(double x);

/// Q(lambda) = lambda log lambda - lambda + 1; nonnegative, zero only at 1.
double tail_rate(double lambda);

}  // namespace permorder
