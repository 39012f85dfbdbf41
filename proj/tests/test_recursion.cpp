#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "permorder/engine.hpp"
#include "permorder/errors.hpp"
#include "permorder/recursion.hpp"

#include "oracle.hpp"

using namespace permorder;

TEST_CASE("recursion engine matches the partition engine at every support point") {
    for (unsigned n : {1u, 2u, 3u, 5u, 8u, 12u, 20u}) {
        OrderDistribution a = full_distribution(n, Tier::A);
        RecursionEngine eng(n);
        for (u64 m : support_u64(n)) {
            Int mm(static_cast<unsigned long>(m));
            Rat expect;
            if (const Rat* p = a.find(mm)) expect = *p;
            CHECK(eng.point_prob(mm) == expect);
        }
    }
}

TEST_CASE("recursion engine matches Moebius point queries off-support") {
    RecursionEngine eng(9);
    for (u64 m : {11ull, 14ull, 30ull, 64ull}) {
        Int mm(static_cast<unsigned long>(m));
        CHECK(eng.point_prob(mm) == point_prob_moebius(9, mm));
    }
}

TEST_CASE("identity order") {
    for (unsigned n : {1u, 2u, 7u, 50u, 200u}) {
        RecursionEngine eng(n);
        CHECK(eng.point_prob(Int(1)) == make_rat(Int(1), factorial(n)));
    }
}

TEST_CASE("n-cycle lower bound at moderate scale") {
    // single long cycle: P(ord = n) >= 1/n when K_n forces order exactly n
    RecursionEngine eng(61);
    Rat p = eng.point_prob(Int(30030));
    CHECK(p >= make_rat(Int(1), Int(30030)));
}

TEST_CASE("thread count does not change results") {
    RecursionEngine eng(150);
    Int m(148);
    CHECK(eng.point_prob(m, 1) == eng.point_prob(m, 4));
}

TEST_CASE("input validation") {
    RecursionEngine eng(10);
    CHECK_THROWS_AS(eng.point_prob(Int(0)), std::invalid_argument);
    EngineCaps caps;
    caps.tier_c_max = 100;
    CHECK_THROWS_AS(RecursionEngine(101, caps), ResourceError);
    caps = EngineCaps{};
    caps.lattice_cap = 4;
    RecursionEngine small(10, caps);
    CHECK_THROWS_AS(small.point_count(Int(12)), ResourceError);  // tau(12) = 6 > 4
}

TEST_CASE("brute-force agreement on every order value to n = 7") {
    for (unsigned n = 1; n <= 7; ++n) {
        auto brute = oracle::brute_order_counts(n);
        RecursionEngine eng(n);
        for (const auto& [m, c] : brute) {
            CHECK(eng.point_count(Int(static_cast<unsigned long>(m))) ==
                  Int(static_cast<unsigned long>(c)));
        }
    }
}
