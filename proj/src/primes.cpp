#include "permorder/primes.hpp"

#include <mutex>

namespace permorder {

std::vector<u32> primes_upto(u32 limit) {
    std::vector<u32> out;
    if (limit < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<u32>(i));
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

std::vector<u32> spf_table(u32 limit) {
    std::vector<u32> spf(static_cast<std::size_t>(limit) + 1, 0);
    for (u64 i = 2; i <= limit; ++i) {
        if (spf[i] != 0) continue;
        for (u64 j = i; j <= limit; j += i) {
            if (spf[j] == 0) spf[j] = static_cast<u32>(i);
        }
    }
    return spf;
}

u64 mulmod_u64(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 powmod_u64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is a proven deterministic witness set for all n < 3.3e24.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<u64> crt_primes(std::size_t count) {
    static std::mutex mu;
    static std::vector<u64> cache;
    static u64 cursor = (1ull << 62) - 1;

    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() < count) {
        while (!is_prime_u64(cursor)) cursor -= 2;
        cache.push_back(cursor);
        cursor -= 2;
    }
    return std::vector<u64>(cache.begin(), cache.begin() + count);
}

}  // namespace permorder
