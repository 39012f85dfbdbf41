#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "permorder/factor.hpp"
#include "permorder/ints.hpp"

namespace permorder {

struct DivisorStats {
    u64 tau = 0;
    Int sigma;
    Rat h;  // sigma / m, exact
    unsigned omega = 0;
    std::vector<Int> divisors;  // sorted ascending
};

DivisorStats divisor_stats(const Int& m);

/// All divisors of m, sorted ascending.
std::vector<Int> divisors_of(const Int& m);
std::vector<Int> divisors_of(const Factorization& f);

/// |{d : d | m, a < d <= a + t}|.
u64 tau_in_interval(const Int& m, const Int& a, const Int& t);

struct IntervalBoundSimple {
    bool premise;     // m * t^(r^2) <= a^r
    bool conclusion;  // tau(m; a, a+t] < r
};

IntervalBoundSimple check_interval_bound_simple(const Int& a, const Int& m, const Int& t,
                                                unsigned r);

struct IntervalBoundHard {
    unsigned ell = 0;
    double bound = 1.0;
    u64 actual = 0;
};

/// ell = min(ceil(A log t / log log t), omega(m)); bound = (A log m / ell)^ell,
/// taken as 1 when ell = 0. Requires t >= 3. A is a caller-supplied parameter.
IntervalBoundHard interval_bound_hard(const Int& a, const Int& m, const Int& t, double A);

/// Divisor set of a modulus with the Moebius value of each cofactor.
struct DivisorLattice {
    Int modulus;
    std::vector<Int> divisors;          // sorted ascending; [0] = 1, back() = modulus
    std::vector<int> moebius_cofactor;  // mu(modulus / divisors[i]) in {-1, 0, 1}
    std::map<Int, std::size_t> index;

    int mu_cofactor(const Int& d) const { return moebius_cofactor[index.at(d)]; }
};

/// Throws ResourceError naming tau(m) when the divisor count exceeds the cap.
DivisorLattice build_divisor_lattice(const Int& m, unsigned long cap = 4096);

}  // namespace permorder
