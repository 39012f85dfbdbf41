#pragma once

#include <cstdint>
#include <vector>

#include "permorder/ints.hpp"

namespace permorder {

/// Primes <= limit in increasing order (sieve of Eratosthenes).
std::vector<u32> primes_upto(u32 limit);

/// Smallest-prime-factor table for [0, limit]; spf[0] = spf[1] = 0.
std::vector<u32> spf_table(u32 limit);

/// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime_u64(u64 n);

/// First `count` primes below 2^62 in decreasing order. The list is global,
/// lazily extended, and identical across runs; these serve as residue moduli
/// for exact integer reconstruction.
std::vector<u64> crt_primes(std::size_t count);

u64 mulmod_u64(u64 a, u64 b, u64 m);
u64 powmod_u64(u64 a, u64 e, u64 m);

}  // namespace permorder
