#include "permorder/arith.hpp"

#include <cmath>
#include <stdexcept>

#include "permorder/factor.hpp"
#include "permorder/primes.hpp"

namespace permorder {

Int lcm_upto(u64 k) {
    Int r = 1;
    for (u64 i = 2; i <= k; ++i) {
        mpz_lcm_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(i));
    }
    return r;
}

Int gcd_with_lcm_upto(u64 x, const Int& v) {
    if (v < 1) throw std::invalid_argument("gcd_with_lcm_upto: v must be positive");
    if (x <= 1) return 1;
    Factorization f = factorize(v);
    Int g = 1;
    for (const auto& [p, e] : f.factors) {
        if (mpz_cmp_ui(p.get_mpz_t(), static_cast<unsigned long>(x)) > 0) break;
        // floor(log_p x): largest a with p^a <= x.
        u64 pv = to_u64(p);
        u64 pk = pv;
        unsigned a = 1;
        while (pk <= x / pv) {
            pk *= pv;
            ++a;
        }
        g *= int_pow(p, std::min<unsigned>(a, e));
    }
    return g;
}

ChebyshevSums chebyshev(double x) {
    if (x < 0) throw std::invalid_argument("chebyshev: x must be nonnegative");
    ChebyshevSums s;
    if (x < 2) return s;
    u64 xi = static_cast<u64>(x);
    for (u32 p : primes_upto(static_cast<u32>(xi))) {
        double lp = std::log(static_cast<double>(p));
        s.pi += 1;
        s.theta += lp;
        u64 pk = p;
        unsigned k = 1;
        while (pk <= xi / p) {
            pk *= p;
            ++k;
        }
        s.psi += k * lp;
    }
    return s;
}

Rat prime_reciprocal_sum(double x) {
    if (x < 0) throw std::invalid_argument("prime_reciprocal_sum: x must be nonnegative");
    Rat s = 0;
    if (x < 2) return s;
    for (u32 p : primes_upto(static_cast<u32>(x))) {
        s += make_rat(1, Int(static_cast<unsigned long>(p)));
    }
    return s;
}

unsigned log_star(double x) {
    if (!(x > 0) || !std::isfinite(x))
        throw std::invalid_argument("log_star: x must be positive and finite");
    unsigned k = 0;
    while (x > 1.0) {
        x = std::log(x);
        ++k;
    }
    return k;
}

double tail_rate(double lambda) {
    if (!(lambda > 0)) throw std::invalid_argument("tail_rate: lambda must be positive");
    return lambda * std::log(lambda) - lambda + 1.0;
}

}  // namespace permorder
