#include "permorder/divisors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "permorder/errors.hpp"

namespace permorder {

std::vector<Int> divisors_of(const Factorization& f) {
    std::vector<Int> divs{Int(1)};
    for (const auto& [p, e] : f.factors) {
        std::size_t base = divs.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::vector<Int> divisors_of(const Int& m) {
    return divisors_of(factorize(m));
}

DivisorStats divisor_stats(const Int& m) {
    Factorization f = factorize(m);
    DivisorStats s;
    s.divisors = divisors_of(f);
    s.tau = s.divisors.size();
    s.omega = f.omega();
    s.sigma = 0;
    for (const auto& d : s.divisors) s.sigma += d;
    s.h = make_rat(s.sigma, m);
    return s;
}

u64 tau_in_interval(const Int& m, const Int& a, const Int& t) {
    std::vector<Int> divs = divisors_of(m);
    Int hi = a + t;
    u64 count = 0;
    for (const auto& d : divs) {
        if (d > a && d <= hi) ++count;
    }
    return count;
}

IntervalBoundSimple check_interval_bound_simple(const Int& a, const Int& m, const Int& t,
                                                unsigned r) {
    if (a < 1 || m < 1 || t < 1 || r < 1)
        throw std::invalid_argument("check_interval_bound_simple: arguments must be positive");
    IntervalBoundSimple out;
    out.premise = m * int_pow(t, static_cast<unsigned long>(r) * r) <= int_pow(a, r);
    out.conclusion = tau_in_interval(m, a, t) < r;
    return out;
}

IntervalBoundHard interval_bound_hard(const Int& a, const Int& m, const Int& t, double A) {
    if (t < 3) throw std::invalid_argument("interval_bound_hard: t must be >= 3");
    if (m < 1 || a < 0) throw std::invalid_argument("interval_bound_hard: bad arguments");
    Factorization f = factorize(m);
    double log_t = std::log(mpz_get_d(t.get_mpz_t()));
    double log_m = std::log(mpz_get_d(m.get_mpz_t()));
    unsigned from_t = static_cast<unsigned>(std::ceil(A * log_t / std::log(log_t)));
    IntervalBoundHard out;
    out.ell = std::min<unsigned>(from_t, f.omega());
    out.bound = out.ell == 0 ? 1.0 : std::pow(A * log_m / out.ell, out.ell);
    out.actual = tau_in_interval(m, a, t);
    return out;
}

DivisorLattice build_divisor_lattice(const Int& m, unsigned long cap) {
    if (m < 1) throw std::invalid_argument("build_divisor_lattice: modulus must be positive");
    Factorization f = factorize(m);
    unsigned long tau = 1;
    for (const auto& [p, e] : f.factors) {
        tau *= e + 1;
        if (tau > cap) throw ResourceError("tau(m)", tau, cap);
    }

    DivisorLattice lat;
    lat.modulus = m;
    lat.divisors = divisors_of(f);
    lat.moebius_cofactor.resize(lat.divisors.size());
    for (std::size_t i = 0; i < lat.divisors.size(); ++i) {
        Int cof = m / lat.divisors[i];
        int mu = 1;
        for (const auto& [p, e] : f.factors) {
            unsigned k = 0;
            Int c = cof;
            while (mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t())) {
                c /= p;
                ++k;
                if (k > 1) break;
            }
            if (k > 1) {
                mu = 0;
                break;
            }
            if (k == 1) mu = -mu;
        }
        lat.moebius_cofactor[i] = mu;
        lat.index.emplace(lat.divisors[i], i);
    }
    return lat;
}

}  // namespace permorder
