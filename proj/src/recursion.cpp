#include "permorder/recursion.hpp"

#include <cassert>
#include <stdexcept>

#include "permorder/divisors.hpp"
#include "permorder/errors.hpp"
#include "permorder/factor.hpp"
#include "permorder/primes.hpp"
#include "permorder/threads.hpp"

namespace permorder {
namespace {

// Montgomery arithmetic modulo an odd prime p < 2^62.
struct Mont {
    u64 p = 0;
    u64 ninv = 0;  // -p^{-1} mod 2^64
    u64 r1 = 0;    // 2^64 mod p (Montgomery image of 1)
    u64 r2 = 0;    // 2^128 mod p

    explicit Mont(u64 prime) : p(prime) {
        u64 inv = prime;  // Newton iteration doubles correct bits each round
        for (int i = 0; i < 5; ++i) inv *= 2 - prime * inv;
        ninv = ~inv + 1;
        r1 = static_cast<u64>((static_cast<u128>(1) << 64) % prime);
        r2 = mulmod_u64(r1, r1, prime);
    }

    u64 redc(u128 t) const {
        u64 m = static_cast<u64>(t) * ninv;
        u64 r = static_cast<u64>((t + static_cast<u128>(m) * p) >> 64);
        return r >= p ? r - p : r;
    }

    u64 mul(u64 a, u64 b) const { return redc(static_cast<u128>(a) * b); }
    u64 to(u64 a) const { return mul(a % p, r2); }
    u64 from(u64 a) const { return redc(a); }
    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p ? s - p : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }

    u64 pow(u64 base_mont, u64 e) const {
        u64 acc = r1;
        while (e) {
            if (e & 1) acc = mul(acc, base_mont);
            base_mont = mul(base_mont, base_mont);
            e >>= 1;
        }
        return acc;
    }
};

}  // namespace

struct RecursionEngine::ModCtx {
    Mont mont;
    std::vector<u64> inv_mont;  // inv_mont[x] = Montgomery image of x^{-1}, x in [1, n]
    u64 fact_n_mont = 0;

    ModCtx(u64 prime, unsigned n) : mont(prime) {
        std::vector<u64> pref(n + 1);
        pref[0] = mont.r1;
        for (unsigned i = 1; i <= n; ++i) pref[i] = mont.mul(pref[i - 1], mont.to(i));
        fact_n_mont = pref[n];

        inv_mont.assign(n + 1, 0);
        u64 ip = mont.pow(pref[n], prime - 2);  // (n!)^{-1}
        for (unsigned i = n; i >= 1; --i) {
            inv_mont[i] = mont.mul(ip, pref[i - 1]);
            ip = mont.mul(ip, mont.to(i));
        }
    }
};

RecursionEngine::RecursionEngine(RecursionEngine&&) noexcept = default;
RecursionEngine& RecursionEngine::operator=(RecursionEngine&&) noexcept = default;
RecursionEngine::~RecursionEngine() = default;

RecursionEngine::RecursionEngine(unsigned n, const EngineCaps& caps) : n_(n), caps_(caps) {
    if (n < 1) throw std::invalid_argument("RecursionEngine: n must be positive");
    if (n > caps.tier_c_max) throw ResourceError("n", n, caps.tier_c_max);
    fact_n_ = factorial(n);
    std::size_t bits = mpz_sizeinbase(fact_n_.get_mpz_t(), 2);
    std::size_t count = bits / 61 + 2;
    std::vector<u64> primes = crt_primes(count);
    ctxs_.reserve(count);
    for (u64 p : primes) ctxs_.emplace_back(p, n);
}

Int RecursionEngine::point_count(const Int& m, unsigned threads) const {
    if (m < 1) throw std::invalid_argument("recursion_point_prob: m must be positive");
    Factorization f = factorize(m);
    unsigned long tau = 1;
    for (const auto& [p, e] : f.factors) {
        tau *= e + 1;
        if (tau > caps_.lattice_cap) throw ResourceError("tau(m)", tau, caps_.lattice_cap);
    }
    if (minimal_degree(f) > static_cast<long>(n_)) return Int(0);

    // Moebius-relevant divisors d = m / s over squarefree s | rad(m).
    unsigned w = f.omega();
    std::vector<Int> rel;
    std::vector<int> sign;
    rel.reserve(1u << w);
    for (u64 mask = 0; mask < (1ull << w); ++mask) {
        Int s = 1;
        for (unsigned b = 0; b < w; ++b) {
            if (mask & (1ull << b)) s *= f.factors[b].first;
        }
        rel.push_back(m / s);
        sign.push_back(__builtin_popcountll(mask) % 2 == 0 ? 1 : -1);
    }

    // Step lengths: divisors of m up to n, then restricted per relevant d.
    std::vector<unsigned> small_divs;
    for (unsigned j = 1; j <= n_; ++j) {
        if (divides_u64(j, m)) small_divs.push_back(j);
    }
    std::vector<std::vector<unsigned>> steps(rel.size());
    for (std::size_t t = 0; t < rel.size(); ++t) {
        for (unsigned j : small_divs) {
            if (divides_u64(j, rel[t])) steps[t].push_back(j);
        }
    }

    std::vector<u64> residues(ctxs_.size());
    parallel_for(
        ctxs_.size(),
        [&](std::size_t ci) {
            const ModCtx& ctx = ctxs_[ci];
            const Mont& mm = ctx.mont;
            std::vector<u64> dp(n_ + 1);
            u64 acc = 0;
            for (std::size_t t = 0; t < rel.size(); ++t) {
                dp.assign(n_ + 1, 0);
                dp[0] = mm.r1;
                const std::vector<unsigned>& J = steps[t];
                for (unsigned x = 1; x <= n_; ++x) {
                    u64 s = 0;
                    for (unsigned j : J) {
                        if (j > x) break;
                        s += dp[x - j];
                        if (s >= mm.p) s -= mm.p;
                    }
                    dp[x] = mm.mul(ctx.inv_mont[x], s);
                }
                u64 cnt = mm.mul(dp[n_], ctx.fact_n_mont);
                acc = sign[t] > 0 ? mm.add(acc, cnt) : mm.sub(acc, cnt);
            }
            residues[ci] = mm.from(acc);
        },
        threads);

    // Garner reconstruction of the unique value in [0, prod p_i).
    Int result = 0;
    Int prefix = 1;
    for (std::size_t i = 0; i < ctxs_.size(); ++i) {
        u64 p = ctxs_[i].mont.p;
        u64 cur = mpz_fdiv_ui(result.get_mpz_t(), p);
        u64 pref_mod = mpz_fdiv_ui(prefix.get_mpz_t(), p);
        u64 delta = residues[i] >= cur ? residues[i] - cur : residues[i] + p - cur;
        u64 t = mulmod_u64(delta, powmod_u64(pref_mod, p - 2, p), p);
        result += prefix * Int(static_cast<unsigned long>(t));
        prefix *= Int(static_cast<unsigned long>(p));
    }
    assert(prefix > fact_n_);
    assert(result <= fact_n_);
    return result;
}

Rat RecursionEngine::point_prob(const Int& m, unsigned threads) const {
    return make_rat(point_count(m, threads), fact_n_);
}

Rat recursion_point_prob(unsigned n, const Int& m, const EngineCaps& caps, unsigned threads) {
    RecursionEngine engine(n, caps);
    return engine.point_prob(m, threads);
}

}  // namespace permorder
