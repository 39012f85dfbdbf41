#pragma once

#include <map>
#include <vector>

#include "permorder/ints.hpp"

#include <json.hpp>

namespace permorder {

inline u64 mix64(u64 z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

/// Counter-based generator keyed by (seed, sample index, draw counter):
/// stateless, so parallel sampling is reproducible by construction.
inline u64 sample_draw(u64 seed, u64 index, u64 counter) {
    u64 key = mix64(seed + 0x9e3779b97f4a7c15ull * (index + 1));
    return mix64(key ^ (0xd1b54a32d192ed03ull * (counter + 1)));
}

struct CycleTypeSample {
    unsigned n = 0;
    std::vector<u64> parts;                  // successive decrements of the chain
    std::map<u64, unsigned> order_factors;   // prime -> max exponent over parts
    u64 cycle_count = 0;

    Int order() const;         // materialized on demand
    double log_order() const;  // sum of e * log p
    unsigned omega() const { return static_cast<unsigned>(order_factors.size()); }
};

/// Holds the per-n factor table so repeated sampling stays cheap.
class SamplerContext {
public:
    explicit SamplerContext(unsigned n);
    CycleTypeSample sample(u64 seed, u64 index) const;
    unsigned n() const { return n_; }

private:
    unsigned n_;
    std::vector<u32> spf_;
};

CycleTypeSample sample_cycle_type(unsigned n, u64 seed, u64 index);

struct EmpiricalSummary {
    unsigned n = 0;
    u64 samples = 0;
    u64 seed = 0;
    std::map<Int, u64> freq;

    // Exact integer accumulators; log(order) enters in 2^-32 fixed point so
    // totals are independent of summation order and thread count.
    u64 sum_cycles = 0;
    u64 sum_omega = 0;
    __int128 sum_log_fp = 0;
    __int128 sum_log_sq_fp = 0;

    double mean_cycles() const;
    double mean_log_order() const;
    double var_log_order() const;
    double mean_omega_order() const;

    void add(const CycleTypeSample& s);
    void merge(const EmpiricalSummary& o);
};

EmpiricalSummary empirical_distribution(unsigned n, u64 samples, u64 seed,
                                        unsigned threads = 1);

struct EtDiagnostics {
    bool defined = false;
    double z_mean = 0.0;       // (mean log ord - log^2(n)/2) / sqrt(log^3(n)/3)
    double omega_ratio = 0.0;  // mean omega / (log n * log log n)
};

EtDiagnostics erdos_turan_diagnostics(const EmpiricalSummary& s);

/// Orders with count below hist_min_count are pooled into an "other" bucket.
nlohmann::ordered_json summary_to_json(const EmpiricalSummary& s, u64 hist_min_count = 0);

/// Upper tail P(chi^2_df >= stat), via the regularized incomplete gamma.
double chi_square_upper_p(double stat, unsigned df);

}  // namespace permorder
