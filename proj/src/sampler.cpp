#include "permorder/sampler.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "permorder/primes.hpp"
#include "permorder/threads.hpp"

namespace permorder {
namespace {

u64 uniform_below(u64 v, u64 seed, u64 index, u64& counter) {
    u64 lim = (0 - v) % v;  // 2^64 mod v; rejecting below it removes the bias
    for (;;) {
        u64 r = sample_draw(seed, index, counter++);
        if (r >= lim) return r % v;
    }
}

}  // namespace

Int CycleTypeSample::order() const {
    Int r = 1;
    for (const auto& [p, e] : order_factors) r *= int_pow(Int(static_cast<unsigned long>(p)), e);
    return r;
}

double CycleTypeSample::log_order() const {
    double s = 0.0;
    for (const auto& [p, e] : order_factors) s += e * std::log(static_cast<double>(p));
    return s;
}

SamplerContext::SamplerContext(unsigned n) : n_(n), spf_(spf_table(n)) {
    if (n < 1) throw std::invalid_argument("SamplerContext: n must be positive");
}

CycleTypeSample SamplerContext::sample(u64 seed, u64 index) const {
    CycleTypeSample s;
    s.n = n_;
    u64 counter = 0;
    u64 z = n_;
    while (z > 0) {
        u64 next = uniform_below(z, seed, index, counter);
        u64 part = z - next;
        s.parts.push_back(part);
        // fold the part's factorisation into the running max-exponent map
        u64 v = part;
        while (v > 1) {
            u32 p = spf_[v];
            unsigned e = 0;
            while (v % p == 0) {
                v /= p;
                ++e;
            }
            auto it = s.order_factors.find(p);
            if (it == s.order_factors.end())
                s.order_factors.emplace(p, e);
            else if (it->second < e)
                it->second = e;
        }
        z = next;
    }
    s.cycle_count = s.parts.size();
    return s;
}

CycleTypeSample sample_cycle_type(unsigned n, u64 seed, u64 index) {
    return SamplerContext(n).sample(seed, index);
}

double EmpiricalSummary::mean_cycles() const {
    return samples == 0 ? 0.0 : static_cast<double>(sum_cycles) / static_cast<double>(samples);
}

double EmpiricalSummary::mean_log_order() const {
    if (samples == 0) return 0.0;
    return static_cast<double>(static_cast<long double>(sum_log_fp) /
                               (static_cast<long double>(samples) * 4294967296.0L));
}

double EmpiricalSummary::var_log_order() const {
    if (samples == 0) return 0.0;
    long double scale = 4294967296.0L;
    long double ex2 = static_cast<long double>(sum_log_sq_fp) /
                      (static_cast<long double>(samples) * scale * scale);
    long double ex = static_cast<long double>(sum_log_fp) /
                     (static_cast<long double>(samples) * scale);
    return static_cast<double>(ex2 - ex * ex);
}

double EmpiricalSummary::mean_omega_order() const {
    return samples == 0 ? 0.0 : static_cast<double>(sum_omega) / static_cast<double>(samples);
}

void EmpiricalSummary::add(const CycleTypeSample& s) {
    samples += 1;
    freq[s.order()] += 1;
    sum_cycles += s.cycle_count;
    sum_omega += s.omega();
    long long fp = std::llround(s.log_order() * 4294967296.0);
    sum_log_fp += fp;
    sum_log_sq_fp += static_cast<__int128>(fp) * fp;
}

void EmpiricalSummary::merge(const EmpiricalSummary& o) {
    samples += o.samples;
    sum_cycles += o.sum_cycles;
    sum_omega += o.sum_omega;
    sum_log_fp += o.sum_log_fp;
    sum_log_sq_fp += o.sum_log_sq_fp;
    for (const auto& [m, c] : o.freq) freq[m] += c;
}

EmpiricalSummary empirical_distribution(unsigned n, u64 samples, u64 seed, unsigned threads) {
    if (samples < 1) throw std::invalid_argument("empirical_distribution: samples must be >= 1");
    SamplerContext ctx(n);
    if (threads == 0) threads = default_thread_count();
    u64 chunks = std::min<u64>(threads, samples);
    std::vector<EmpiricalSummary> partial(chunks);
    parallel_for(
        chunks,
        [&](std::size_t c) {
            u64 lo = samples * c / chunks;
            u64 hi = samples * (c + 1) / chunks;
            EmpiricalSummary& acc = partial[c];
            acc.n = n;
            for (u64 i = lo; i < hi; ++i) acc.add(ctx.sample(seed, i));
        },
        static_cast<unsigned>(chunks));

    EmpiricalSummary out;
    out.n = n;
    out.seed = seed;
    for (const auto& p : partial) out.merge(p);
    return out;
}

EtDiagnostics erdos_turan_diagnostics(const EmpiricalSummary& s) {
    EtDiagnostics d;
    if (s.n < 3 || s.samples == 0) return d;  // log log n <= 0: flagged undefined
    double ln = std::log(static_cast<double>(s.n));
    d.defined = true;
    d.z_mean = (s.mean_log_order() - 0.5 * ln * ln) / std::sqrt(ln * ln * ln / 3.0);
    d.omega_ratio = s.mean_omega_order() / (ln * std::log(ln));
    return d;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

nlohmann::ordered_json summary_to_json(const EmpiricalSummary& s, u64 hist_min_count) {
    nlohmann::ordered_json j;
    j["n"] = s.n;
    j["samples"] = s.samples;
    j["seed"] = s.seed;
    j["mean_cycles"] = fmt_double(s.mean_cycles());
    j["mean_log_order"] = fmt_double(s.mean_log_order());
    j["var_log_order"] = fmt_double(s.var_log_order());
    j["mean_omega_order"] = fmt_double(s.mean_omega_order());
    nlohmann::ordered_json freq = nlohmann::ordered_json::array();
    u64 pooled_count = 0;
    u64 pooled_orders = 0;
    for (const auto& [m, c] : s.freq) {
        if (c < hist_min_count) {
            pooled_count += c;
            pooled_orders += 1;
        } else {
            freq.push_back({int_str(m), c});
        }
    }
    j["freq"] = std::move(freq);
    j["other_count"] = pooled_count;
    j["other_orders"] = pooled_orders;
    return j;
}

double chi_square_upper_p(double stat, unsigned df) {
    if (stat <= 0) return 1.0;
    double a = df / 2.0;
    double x = stat / 2.0;
    double gln = std::lgamma(a);
    if (x < a + 1.0) {
        // lower series; Q = 1 - P
        double ap = a;
        double sum = 1.0 / a;
        double del = sum;
        for (int i = 0; i < 1000; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
        }
        double p = sum * std::exp(-x + a * std::log(x) - gln);
        return 1.0 - p;
    }
    // continued fraction for Q (modified Lentz)
    double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

}  // namespace permorder
