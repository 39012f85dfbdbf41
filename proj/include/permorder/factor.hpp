#pragma once

#include <utility>
#include <vector>

#include "permorder/ints.hpp"

#include <json.hpp>

namespace permorder {

/// Canonical prime factorisation: primes strictly increasing, exponents >= 1,
/// product of p^e equal to value. value == 1 has an empty factor list.
struct Factorization {
    Int value;
    std::vector<std::pair<Int, unsigned>> factors;

    unsigned omega() const { return static_cast<unsigned>(factors.size()); }
    Int recompose() const;
};

/// Deterministic: sieve-assisted trial division, then Brent-cycle rho for
/// any cofactor that survives. Rejects n < 1.
Factorization factorize(const Int& n);
Factorization factorize_u64(u64 n);

/// Sum over maximal prime-power divisors p^a of m (0 for m = 1): the least
/// n for which some permutation of [n] has order m.
Int minimal_degree(const Factorization& f);

/// {"value": "...", "factors": [["p", "e"], ...]} with decimal strings.
nlohmann::ordered_json factorization_to_json(const Factorization& f);

}  // namespace permorder
