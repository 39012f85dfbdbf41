#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "permorder/arith.hpp"
#include "permorder/divisors.hpp"
#include "permorder/errors.hpp"
#include "permorder/factor.hpp"
#include "permorder/primes.hpp"

using namespace permorder;

namespace {

// Trial-division primality, independent of the library's Miller-Rabin.
bool slow_is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("factorize small cases") {
    Factorization f = factorize(Int(12));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == 2);
    CHECK(f.factors[0].second == 2);
    CHECK(f.factors[1].first == 3);
    CHECK(f.factors[1].second == 1);

    CHECK(factorize(Int(1)).factors.empty());

    CHECK(slow_is_prime(9973));
    Factorization p = factorize(Int(9973));
    REQUIRE(p.factors.size() == 1);
    CHECK(p.factors[0].first == 9973);
    CHECK(p.factors[0].second == 1);

    CHECK_THROWS_AS(factorize(Int(0)), std::invalid_argument);
}

TEST_CASE("factorize round-trips on a sample up to 1e7") {
    for (u64 n : {2ull, 97ull, 1024ull, 123456ull, 999983ull, 9999991ull, 9699690ull,
                  10000000ull, 4294967291ull}) {
        Factorization f = factorize_u64(n);
        CHECK(f.recompose() == Int(static_cast<unsigned long>(n)));
        for (std::size_t i = 1; i < f.factors.size(); ++i) {
            CHECK(f.factors[i - 1].first < f.factors[i].first);
        }
    }
    // deterministic pseudo-random sample
    u64 x = 88172645463325252ull;
    for (int i = 0; i < 200; ++i) {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        u64 n = x % 10000000 + 1;
        CHECK(factorize_u64(n).recompose() == Int(static_cast<unsigned long>(n)));
    }
}

TEST_CASE("miller-rabin agrees with trial division") {
    for (u64 n = 1; n <= 2000; ++n) {
        CHECK(is_prime_u64(n) == slow_is_prime(n));
    }
}

TEST_CASE("divisor_stats") {
    DivisorStats s = divisor_stats(Int(12));
    CHECK(s.tau == 6);
    CHECK(s.sigma == 28);
    CHECK(s.h == make_rat(Int(7), Int(3)));
    CHECK(s.omega == 2);

    DivisorStats one = divisor_stats(Int(1));
    CHECK(one.tau == 1);
    CHECK(one.sigma == 1);
    CHECK(one.h == Rat(1));
    CHECK(one.omega == 0);

    DivisorStats six = divisor_stats(Int(6));
    CHECK(six.sigma == 12);
    CHECK(six.h == Rat(2));
}

TEST_CASE("h equals sigma over m and is submultiplicative") {
    for (u64 m = 1; m <= 300; ++m) {
        DivisorStats s = divisor_stats(Int(static_cast<unsigned long>(m)));
        CHECK(s.h == make_rat(s.sigma, Int(static_cast<unsigned long>(m))));
    }
    for (u64 a : {2ull, 6ull, 12ull, 35ull, 64ull, 97ull}) {
        for (u64 b : {3ull, 10ull, 25ull, 49ull, 81ull}) {
            Rat lhs = divisor_stats(Int(static_cast<unsigned long>(a * b))).h;
            Rat rhs = divisor_stats(Int(static_cast<unsigned long>(a))).h *
                      divisor_stats(Int(static_cast<unsigned long>(b))).h;
            CHECK(lhs <= rhs);
        }
    }
}

TEST_CASE("tau_in_interval") {
    CHECK(tau_in_interval(Int(12), Int(3), Int(3)) == 2);
    CHECK(tau_in_interval(Int(30), Int(30), Int(100)) == 0);
    CHECK(tau_in_interval(Int(30), Int(0), Int(30)) == 8);
    for (u64 m : {1ull, 2ull, 12ull, 30ull, 720ull, 5040ull}) {
        Int mm(static_cast<unsigned long>(m));
        CHECK(tau_in_interval(mm, Int(0), mm) == divisor_stats(mm).tau);
    }
}

TEST_CASE("interval bound, fixed cases") {
    // m*t <= a with r = 1 makes the premise true and forces an empty interval
    auto r1 = check_interval_bound_simple(Int(100), Int(50), Int(2), 1);
    CHECK(r1.premise);
    CHECK(r1.conclusion);

    auto r2 = check_interval_bound_simple(Int(1000), Int(10000), Int(2), 2);
    CHECK(r2.premise);  // 10^4 * 16 <= 10^6
    CHECK(r2.conclusion);
}

TEST_CASE("interval bound hard") {
    CHECK_THROWS_AS(interval_bound_hard(Int(10), Int(12), Int(2), 2.0), std::invalid_argument);
    auto one = interval_bound_hard(Int(5), Int(1), Int(10), 2.0);
    CHECK(one.ell == 0);
    CHECK(one.bound == 1.0);
    CHECK(one.actual <= 1);

    auto r = interval_bound_hard(Int(1000), Int(720720), Int(10), 2.0);
    CHECK(r.actual == tau_in_interval(Int(720720), Int(1000), Int(10)));
    CHECK(r.ell >= 1);
}

TEST_CASE("divisor lattice") {
    DivisorLattice lat = build_divisor_lattice(Int(12));
    REQUIRE(lat.divisors.size() == 6);
    std::vector<int> expect_mu = {0, 1, 0, -1, -1, 1};  // mu(12/d) for d = 1,2,3,4,6,12
    for (std::size_t i = 0; i < lat.divisors.size(); ++i) {
        CHECK(lat.moebius_cofactor[i] == expect_mu[i]);
    }

    DivisorLattice one = build_divisor_lattice(Int(1));
    CHECK(one.divisors.size() == 1);
    CHECK(one.moebius_cofactor[0] == 1);

    // Moebius sums vanish for every modulus > 1; closure under gcd/lcm.
    for (u64 m : {2ull, 12ull, 30ull, 360ull, 1024ull}) {
        DivisorLattice l = build_divisor_lattice(Int(static_cast<unsigned long>(m)));
        int sum = 0;
        for (int v : l.moebius_cofactor) sum += v;
        CHECK(sum == 0);
        for (const Int& a : l.divisors) {
            for (const Int& b : l.divisors) {
                CHECK(l.index.count(int_gcd(a, b)) == 1);
                CHECK(l.index.count(int_lcm(a, b)) == 1);
            }
        }
    }

    // 2*3*5*7*11*13*17*19*23*29*31*37 has 4096 divisors: exactly at the cap
    Int primorial12("7420738134810");
    CHECK(build_divisor_lattice(primorial12).divisors.size() == 4096);
    CHECK_THROWS_AS(build_divisor_lattice(primorial12 * 41), ResourceError);
}

TEST_CASE("lcm_upto") {
    CHECK(lcm_upto(0) == 1);
    CHECK(lcm_upto(1) == 1);
    CHECK(lcm_upto(6) == 60);
    CHECK(lcm_upto(10) == 2520);
    CHECK(lcm_upto(8) == 840);
}

TEST_CASE("gcd_with_lcm_upto") {
    CHECK(gcd_with_lcm_upto(4, Int(24)) == 12);
    CHECK(gcd_with_lcm_upto(0, Int(7)) == 1);
    CHECK(gcd_with_lcm_upto(5, Int(7)) == 1);
    // agrees with the materialized lcm on the whole small range
    for (u64 x = 0; x <= 40; ++x) {
        Int L = lcm_upto(x);
        u64 v = 88172645463325252ull;
        for (int i = 0; i < 25; ++i) {
            v ^= v << 13;
            v ^= v >> 7;
            v ^= v << 17;
            Int vv(static_cast<unsigned long>(v % 1000000 + 1));
            CHECK(gcd_with_lcm_upto(x, vv) == int_gcd(L, vv));
        }
    }
}

TEST_CASE("chebyshev sums") {
    auto z = chebyshev(1.0);
    CHECK(z.pi == 0);
    CHECK(z.theta == 0.0);
    CHECK(z.psi == 0.0);

    auto ten = chebyshev(10.0);
    CHECK(ten.pi == 4);
    CHECK(ten.theta == doctest::Approx(std::log(210.0)).epsilon(1e-12));
    // psi(10) = log lcm(1..10) = log 2520
    CHECK(ten.psi == doctest::Approx(std::log(2520.0)).epsilon(1e-12));

    CHECK(chebyshev(100.0).pi == 25);
}

TEST_CASE("prime reciprocal sum") {
    CHECK(prime_reciprocal_sum(1.0) == Rat(0));
    CHECK(prime_reciprocal_sum(2.0) == make_rat(Int(1), Int(2)));
    CHECK(prime_reciprocal_sum(10.0) == make_rat(Int(247), Int(210)));

    // sum over prime divisors of m is at most the sum up to its largest prime
    for (u64 m : {12ull, 30ull, 97ull, 1001ull, 720720ull}) {
        Factorization f = factorize_u64(m);
        Rat lhs = 0;
        for (const auto& [p, e] : f.factors) lhs += make_rat(Int(1), p);
        double largest = mpz_get_d(f.factors.back().first.get_mpz_t());
        CHECK(lhs <= prime_reciprocal_sum(largest));
    }
}

TEST_CASE("log_star") {
    CHECK(log_star(1.0) == 0);
    CHECK(log_star(std::exp(1.0)) == 1);
    CHECK(log_star(1e6) == 3);
    CHECK_THROWS_AS(log_star(0.0), std::invalid_argument);
    // nondecreasing on a grid; composing with exp adds one level
    unsigned prev = 0;
    for (double x = 1.0; x < 600.0; x *= 1.9) {
        unsigned v = log_star(x);
        CHECK(v >= prev);
        prev = v;
        if (x > 1.0) CHECK(log_star(std::exp(x)) == v + 1);
    }
}

TEST_CASE("tail_rate") {
    CHECK(tail_rate(1.0) == 0.0);
    CHECK(tail_rate(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tail_rate(2.0) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-12));
    for (double l = 0.05; l < 8.0; l += 0.05) {
        double v = tail_rate(l);
        if (std::fabs(l - 1.0) > 1e-9) {
            CHECK(v > 0.0);
        } else {
            CHECK(v == doctest::Approx(0.0));
        }
    }
}

TEST_CASE("minimal degree") {
    CHECK(minimal_degree(factorize(Int(1))) == 0);
    CHECK(minimal_degree(factorize(Int(6))) == 5);
    CHECK(minimal_degree(factorize(Int(12))) == 7);
    CHECK(minimal_degree(factorize(Int(30030))) == 41);
}
