#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "permorder/engine.hpp"
#include "permorder/sampler.hpp"

#include "oracle.hpp"

using namespace permorder;

TEST_CASE("single-state chain") {
    for (u64 i = 0; i < 50; ++i) {
        CycleTypeSample s = sample_cycle_type(1, 7, i);
        REQUIRE(s.parts.size() == 1);
        CHECK(s.parts[0] == 1);
        CHECK(s.order() == 1);
        CHECK(s.cycle_count == 1);
    }
}

TEST_CASE("parts sum to n; order is the lcm of the parts") {
    SamplerContext ctx(37);
    for (u64 i = 0; i < 3000; ++i) {
        CycleTypeSample s = ctx.sample(42, i);
        u64 total = std::accumulate(s.parts.begin(), s.parts.end(), u64{0});
        CHECK(total == 37);
        CHECK(s.cycle_count == s.parts.size());
        if (i % 100 == 0) {  // audit subsample
            u64 lcm = 1;
            for (u64 p : s.parts) lcm = oracle::lcm_u64(lcm, p);
            CHECK(s.order() == Int(static_cast<unsigned long>(lcm)));
        }
    }
}

TEST_CASE("determinism: identical keys give identical samples") {
    CycleTypeSample a = sample_cycle_type(25, 123, 77);
    CycleTypeSample b = sample_cycle_type(25, 123, 77);
    CHECK(a.parts == b.parts);
    CycleTypeSample c = sample_cycle_type(25, 124, 77);
    // different seed almost surely gives a different draw somewhere
    bool same = a.parts == c.parts;
    CycleTypeSample d = sample_cycle_type(25, 124, 78);
    same = same && (c.parts == d.parts);
    CHECK_FALSE(same);
}

TEST_CASE("summaries are identical across thread counts") {
    EmpiricalSummary s1 = empirical_distribution(20, 20000, 3, 1);
    EmpiricalSummary s4 = empirical_distribution(20, 20000, 3, 4);
    EmpiricalSummary s16 = empirical_distribution(20, 20000, 3, 16);
    CHECK(s1.freq == s4.freq);
    CHECK(s1.freq == s16.freq);
    CHECK(s1.sum_cycles == s4.sum_cycles);
    CHECK((s1.sum_log_fp == s4.sum_log_fp));
    CHECK((s1.sum_log_sq_fp == s16.sum_log_sq_fp));
    CHECK(summary_to_json(s1).dump() == summary_to_json(s4).dump());
    CHECK(summary_to_json(s1).dump() == summary_to_json(s16).dump());
}

TEST_CASE("empirical law approaches the exact one") {
    const u64 N = 200000;
    EmpiricalSummary s = empirical_distribution(3, N, 1);
    // 4 binomial standard errors around each exact mass
    OrderDistribution d3 = full_distribution(3, Tier::A);
    for (const auto& [m, p] : d3.probs) {
        double expect = rat_to_double(p);
        double se = std::sqrt(expect * (1 - expect) / static_cast<double>(N));
        auto it = s.freq.find(m);
        REQUIRE(it != s.freq.end());
        double got = static_cast<double>(it->second) / static_cast<double>(N);
        CHECK(std::fabs(got - expect) <= 4 * se);
    }
}

TEST_CASE("mean cycle count tracks the harmonic number") {
    const unsigned n = 30;
    const u64 N = 200000;
    EmpiricalSummary s = empirical_distribution(n, N, 2);
    double hn = 0, var = 0;
    for (unsigned j = 1; j <= n; ++j) {
        hn += 1.0 / j;
        var += 1.0 / j - 1.0 / (static_cast<double>(j) * j);
    }
    double se = std::sqrt(var / static_cast<double>(N));
    CHECK(std::fabs(s.mean_cycles() - hn) <= 5 * se);
}

TEST_CASE("chi-squared goodness of fit at n = 10") {
    const unsigned n = 10;
    const u64 N = 100000;
    OrderDistribution d = full_distribution(n, Tier::A);
    bool any_pass = false;
    for (u64 seed : {1ull, 2ull, 3ull}) {
        EmpiricalSummary s = empirical_distribution(n, N, seed, 2);
        double stat = 0;
        unsigned bins = 0;
        double pooled_expect = 0, pooled_got = 0;
        for (const auto& [m, p] : d.probs) {
            double expect = rat_to_double(p) * static_cast<double>(N);
            auto it = s.freq.find(m);
            double got = it == s.freq.end() ? 0.0 : static_cast<double>(it->second);
            if (expect < 5.0) {
                pooled_expect += expect;
                pooled_got += got;
                continue;
            }
            stat += (got - expect) * (got - expect) / expect;
            ++bins;
        }
        if (pooled_expect > 0) {
            stat += (pooled_got - pooled_expect) * (pooled_got - pooled_expect) / pooled_expect;
            ++bins;
        }
        REQUIRE(bins >= 2);
        if (chi_square_upper_p(stat, bins - 1) >= 1e-6) any_pass = true;
    }
    CHECK(any_pass);
}

TEST_CASE("diagnostics") {
    EmpiricalSummary s = empirical_distribution(1000, 20000, 5, 2);
    EtDiagnostics d = erdos_turan_diagnostics(s);
    REQUIRE(d.defined);
    CHECK(std::isfinite(d.z_mean));
    CHECK(std::isfinite(d.omega_ratio));
    CHECK(d.omega_ratio > 0);

    EmpiricalSummary tiny = empirical_distribution(1, 10, 5);
    CHECK_FALSE(erdos_turan_diagnostics(tiny).defined);
}

TEST_CASE("lower tail of the cycle count thins as n grows") {
    // empirical P(c <= 0.5 log n), averaged over three seeds, decreasing
    // across n in {100, 1000, 10000}
    const u64 N = 30000;
    double prev = 1.0;
    for (unsigned n : {100u, 1000u, 10000u}) {
        double threshold = 0.5 * std::log(static_cast<double>(n));
        double mean = 0;
        for (u64 seed : {1ull, 2ull, 3ull}) {
            SamplerContext ctx(n);
            u64 hits = 0;
            for (u64 i = 0; i < N; ++i) {
                if (static_cast<double>(ctx.sample(seed, i).cycle_count) <= threshold) ++hits;
            }
            mean += static_cast<double>(hits) / static_cast<double>(N);
        }
        mean /= 3.0;
        CHECK(mean < prev);
        prev = mean;
    }
}

TEST_CASE("chi-square tail function sanity") {
    CHECK(chi_square_upper_p(0.0, 5) == 1.0);
    CHECK(chi_square_upper_p(3.841, 1) == doctest::Approx(0.05).epsilon(0.01));
    CHECK(chi_square_upper_p(23.685, 14) == doctest::Approx(0.05).epsilon(0.01));
    CHECK(chi_square_upper_p(200.0, 5) < 1e-30);
}

TEST_CASE("histogram truncation pools sparse orders") {
    EmpiricalSummary s = empirical_distribution(20, 5000, 9, 2);
    nlohmann::ordered_json full = summary_to_json(s, 0);
    nlohmann::ordered_json pooled = summary_to_json(s, 10);
    CHECK(full.at("freq").size() == s.freq.size());
    CHECK(pooled.at("freq").size() <= full.at("freq").size());
    u64 kept = 0;
    for (const auto& e : pooled.at("freq")) kept += e.at(1).get<u64>();
    CHECK(kept + pooled.at("other_count").get<u64>() == 5000);
}
