#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "permorder/arith.hpp"
#include "permorder/errors.hpp"
#include "permorder/structure.hpp"

using namespace permorder;

TEST_CASE("kn_set basics") {
    CHECK(kn_set(10) == std::vector<u64>({0, 1, 2}));
    CHECK(kn_set(4) == std::vector<u64>({0, 1, 2}));
    for (u64 n = 2; n <= 200; ++n) {
        std::vector<u64> ks = kn_set(n);
        CHECK(ks[0] == 0);
        CHECK(ks[1] == 1);
        for (u64 k : ks) CHECK(k < n);
    }
}

TEST_CASE("kn_set re-verified by independent modular arithmetic") {
    for (u64 n = 1; n <= 400; ++n) {
        std::vector<u64> ks = kn_set(n);
        std::size_t idx = 0;
        for (u64 k = 0; k < n && k <= 12; ++k) {
            bool member = idx < ks.size() && ks[idx] == k;
            if (member) ++idx;
            CHECK(member == kn_member_modular(n, k));
        }
        // definitional recheck: lcm(1..k) divides n-k
        for (u64 k : ks) {
            Int L = lcm_upto(k);
            CHECK(mpz_divisible_p(Int(static_cast<unsigned long>(n - k)).get_mpz_t(),
                                  L.get_mpz_t()));
        }
    }
}

TEST_CASE("kn spacing: consecutive members differ by a multiple of lcm(1..k)") {
    for (u64 n : {10ull, 50ull, 848ull, 2000ull, 30030ull}) {
        std::vector<u64> ks = kn_set(n);
        for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
            Int L = lcm_upto(ks[i]);
            Int diff(static_cast<unsigned long>(ks[i + 1] - ks[i]));
            CHECK(mpz_divisible_p(diff.get_mpz_t(), L.get_mpz_t()));
        }
    }
}

TEST_CASE("en_set basics and the below-cutoff report") {
    // n = lcm(1..8) + 8: x = 8 is maximally rich but sits below the cutoff
    EnSet e = en_set(848, 0.5, 16);
    CHECK(std::find(e.below_cutoff.begin(), e.below_cutoff.end(), 8) != e.below_cutoff.end());
    CHECK_THROWS_AS(en_set(100, 0.5, 8), std::invalid_argument);
    CHECK_THROWS_AS(en_set(100, -1.0, 16), std::invalid_argument);
    for (u64 x : e.members) {
        CHECK(x >= 16);
        CHECK(x < 848);
    }
}

TEST_CASE("K_n members inside the window are exceptional for c <= 1") {
    // 16 is in K_n exactly when lcm(1..16) | n-16
    u64 n = 720720 + 16;
    std::vector<u64> ks = kn_set(n);
    CHECK(std::find(ks.begin(), ks.end(), 16ull) != ks.end());
    CHECK(en_member(n, 16, 1.0));
    CHECK(en_member(n, 16, 0.5));

    // small n: the K-window intersection is empty, trivially contained
    for (u64 nn : {30ull, 100ull, 300ull}) {
        EnSet e = en_set(nn, 0.5, 16);
        for (u64 k : kn_set(nn)) {
            if (k >= 16) {
                CHECK(std::find(e.members.begin(), e.members.end(), k) != e.members.end());
            }
        }
    }
}

TEST_CASE("eta values") {
    CHECK(eta(100, 0) == Rat(0));
    CHECK(eta(100, 1) == Rat(0));
    CHECK(eta(100, 2) == make_rat(Int(1), Int(9604)));
    CHECK(eta(102, 2) == Rat(0));  // 4 | 100
    CHECK_THROWS_AS(eta(5, 5), std::invalid_argument);

    // bounded by 1/(n-k)^2 for k >= 2
    for (u64 n : {20ull, 100ull, 1001ull}) {
        for (u64 k = 2; k < 12; ++k) {
            Rat bound = make_rat(Int(1), int_pow(Int(static_cast<unsigned long>(n - k)), 2));
            CHECK(eta(n, k) <= bound);
        }
    }
}

TEST_CASE("exact order residual, small case") {
    RecursionEngine eng(4);
    ResidualRow row = exact_order_residual(eng, 2);
    CHECK(row.point_prob == make_rat(Int(9), Int(24)));
    CHECK(row.eta_value == make_rat(Int(1), Int(4)));
    CHECK(row.residual == make_rat(Int(-3), Int(8)));

    // k in {0, 1}: eta vanishes by definition
    ResidualRow r0 = exact_order_residual(eng, 0);
    CHECK(r0.eta_value == Rat(0));
    CHECK(r0.residual == r0.point_prob - make_rat(Int(1), Int(4)));
}

TEST_CASE("mode check agrees on the classical small cases") {
    ModeCheck m3 = mode_check(full_distribution(3, Tier::A));
    CHECK(m3.max_k == 1);
    CHECK(m3.predicted == 2);
    CHECK(m3.agrees);

    ModeCheck m4 = mode_check(full_distribution(4, Tier::A));
    CHECK(m4.max_k == 2);
    CHECK(m4.predicted == 2);
    CHECK(m4.agrees);

    // n = 6 is a known small-n disagreement: the mode is 6, not n - max K_n = 4
    ModeCheck m6 = mode_check(full_distribution(6, Tier::A));
    CHECK(m6.predicted == 4);
    CHECK(m6.mode == 6);
    CHECK_FALSE(m6.agrees);
}

TEST_CASE("beta partial sums") {
    BetaPartial b1 = beta_partial(2.0, 0, 1);
    REQUIRE(b1.value.exact);
    CHECK(b1.value.rational == Rat(1));

    for (long long D : {-3ll, 0ll, 1ll, 7ll}) {
        BetaPartial b2 = beta_partial(2.0, D, 2);
        REQUIRE(b2.value.exact);
        CHECK(b2.value.rational == Rat(2));
    }

    BetaPartial b5 = beta_partial(2.0, 0, 5);
    REQUIRE(b5.value.exact);
    CHECK(b5.value.rational == make_rat(Int(73), Int(18)));

    // nondecreasing in X; every slice lies in (0, 1]
    Rat prev = 0;
    for (unsigned X = 1; X <= 8; ++X) {
        BetaPartial b = beta_partial(2.0, 1, X);
        REQUIRE(b.value.exact);
        CHECK(b.value.rational >= prev);
        prev = b.value.rational;
        for (const auto& s : b.slices) {
            CHECK(s.rational > 0);
            CHECK(s.rational <= 1);
        }
    }

    CHECK_THROWS_AS(beta_partial(1.0, 0, 3), std::invalid_argument);
}

TEST_CASE("witness search") {
    WitnessResult w = witness_search(6, 3);
    CHECK(w.m == 30030);
    CHECK(w.n_star == 61);
    CHECK(w.count == 1);
    CHECK(w.lower_bound == make_rat(Int(1), Int(30030)));
    REQUIRE(w.sums.size() == 5);
    std::vector<unsigned long> expect{61, 120, 132, 180, 1031};
    std::size_t i = 0;
    for (const auto& [sum, cnt] : w.sums) {
        CHECK(sum == Int(expect[i++]));
        CHECK(cnt == 1);
    }

    // k = ell + 1: a single partition of a one-element set
    WitnessResult w1 = witness_search(4, 3);
    CHECK(w1.sums.size() == 1);
    CHECK(w1.n_star == 2 * 3 * 5 + 7);
    CHECK(w1.count == 1);

    CHECK_THROWS_AS(witness_search(20, 3), ResourceError);
    CHECK_THROWS_AS(witness_search(3, 3), std::invalid_argument);
}

TEST_CASE("witness lower bound holds exactly under the recursion engine") {
    WitnessResult w = witness_search(6, 3);
    RecursionEngine eng(61);
    CHECK(eng.point_prob(w.m) >= w.lower_bound);
}

TEST_CASE("collision row and structure report") {
    OrderDistribution d = full_distribution(24, Tier::A);
    CollisionRow row = collision_vs_exceptional(24, 2.0, d);
    CHECK(row.scaled.exact);
    CHECK(row.e_size == en_set(24, 0.5, 16).members.size());
    CHECK(row.log_star_n == 3);  // 24 -> 3.18 -> 1.16 -> 0.145

    StructureReport rep = structure_report(848, 0.5, 16);
    CHECK(rep.n == 848);
    CHECK(rep.max_k >= 1);
    CHECK(rep.eta_values.size() == rep.k_set.size());
    nlohmann::ordered_json j = structure_report_to_json(rep);
    CHECK(j.at("n") == 848);
    CHECK(j.at("e_set").at("below_cutoff").size() >= 1);
}
