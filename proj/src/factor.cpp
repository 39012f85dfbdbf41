#include "permorder/factor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "permorder/primes.hpp"

namespace permorder {
namespace {

const std::vector<u32>& trial_primes() {
    static const std::vector<u32> primes = primes_upto(100000);
    return primes;
}

u64 rho_step(u64 x, u64 c, u64 n) {
    return (mulmod_u64(x, x, n) + c) % n;
}

u64 pollard_rho_u64(u64 n) {
    // Brent variant with deterministic parameter sequence.
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        u64 power = 1, lam = 1;
        while (d == 1) {
            if (power == lam) {
                x = y;
                power *= 2;
                lam = 0;
            }
            y = rho_step(y, c, n);
            ++lam;
            u64 diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            d = std::gcd(diff, n);
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_u64_into(u64 n, std::map<u64, unsigned>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out[n] += 1;
        return;
    }
    u64 d = pollard_rho_u64(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

}  // namespace

Int Factorization::recompose() const {
    Int r = 1;
    for (const auto& [p, e] : factors) r *= int_pow(p, e);
    return r;
}

Factorization factorize_u64(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: argument must be positive");
    Factorization f;
    f.value = Int(static_cast<unsigned long>(n));
    std::map<u64, unsigned> acc;
    for (u32 p : trial_primes()) {
        if (static_cast<u64>(p) * p > n) break;
        while (n % p == 0) {
            acc[p] += 1;
            n /= p;
        }
    }
    if (n > 1) {
        // Cofactor below 10^10 is prime after trial division to 10^5.
        if (n < 10000000000ull || is_prime_u64(n)) {
            acc[n] += 1;
        } else {
            factor_u64_into(n, acc);
        }
    }
    for (const auto& [p, e] : acc) f.factors.emplace_back(Int(static_cast<unsigned long>(p)), e);
    return f;
}

Factorization factorize(const Int& n) {
    if (n < 1) throw std::invalid_argument("factorize: argument must be positive");
    if (fits_u64(n)) return factorize_u64(to_u64(n));

    Factorization f;
    f.value = n;
    Int rest = n;
    std::map<u64, unsigned> small;
    for (u32 p : trial_primes()) {
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            small[p] += 1;
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        }
        if (fits_u64(rest)) break;
    }
    for (const auto& [p, e] : small) f.factors.emplace_back(Int(static_cast<unsigned long>(p)), e);
    if (rest == 1) return f;
    if (fits_u64(rest)) {
        Factorization tail = factorize_u64(to_u64(rest));
        for (auto& [p, e] : tail.factors) f.factors.emplace_back(p, e);
    } else {
        // Engines only factor numbers far below this size; mpz rho kept for
        // completeness on oversized inputs.
        std::vector<Int> stack{rest};
        std::map<Int, unsigned> acc;
        while (!stack.empty()) {
            Int v = stack.back();
            stack.pop_back();
            if (v == 1) continue;
            if (mpz_probab_prime_p(v.get_mpz_t(), 40) > 0) {
                acc[v] += 1;
                continue;
            }
            Int d = 1;
            for (unsigned long c = 1; d == 1 || d == v; ++c) {
                Int x = 2, y = 2;
                d = 1;
                do {
                    x = (x * x + c) % v;
                    y = (y * y + c) % v;
                    y = (y * y + c) % v;
                    d = int_gcd(x > y ? x - y : y - x, v);
                } while (d == 1);
            }
            stack.push_back(d);
            stack.push_back(v / d);
        }
        for (const auto& [p, e] : acc) f.factors.emplace_back(p, e);
    }
    std::sort(f.factors.begin(), f.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return f;
}

Int minimal_degree(const Factorization& f) {
    Int s = 0;
    for (const auto& [p, e] : f.factors) s += int_pow(p, e);
    return s;
}

nlohmann::ordered_json factorization_to_json(const Factorization& f) {
    nlohmann::ordered_json j;
    j["value"] = int_str(f.value);
    nlohmann::ordered_json factors = nlohmann::ordered_json::array();
    for (const auto& [p, e] : f.factors) factors.push_back({int_str(p), std::to_string(e)});
    j["factors"] = std::move(factors);
    return j;
}

}  // namespace permorder
