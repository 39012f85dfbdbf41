// Command-line surface over the exact engines: distributions, entropies,
// arithmetic structure, sampling, sweeps, and calibration scans.
//
// Exit codes: 0 success, 1 invalid input, 2 resource-cap exceeded.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permorder/arith.hpp"
#include "permorder/divisors.hpp"
#include "permorder/engine.hpp"
#include "permorder/entropy.hpp"
#include "permorder/errors.hpp"
#include "permorder/factor.hpp"
#include "permorder/recursion.hpp"
#include "permorder/sampler.hpp"
#include "permorder/structure.hpp"
#include "permorder/threads.hpp"

using namespace permorder;
using nlohmann::ordered_json;

namespace {

struct GlobalOpts {
    std::string format = "json";
    std::string cache_dir;
    unsigned threads = 0;
    unsigned precision_bits = 192;

    mpfr_prec_t prec() const { return static_cast<mpfr_prec_t>(precision_bits); }
    bool csv() const { return format == "csv"; }
};

std::string effective_cache_dir(const GlobalOpts& g) {
    if (!g.cache_dir.empty()) return g.cache_dir;
    const char* env = std::getenv("PERMORDER_CACHE");
    return env ? std::string(env) : std::string();
}

OrderDistribution dist_cached(unsigned n, Tier tier, const EngineCaps& caps,
                              const GlobalOpts& g) {
    return full_distribution_cached(n, tier, effective_cache_dir(g), caps, g.threads);
}

Tier pick_tier(unsigned n, const std::string& tier_flag, const EngineCaps& caps) {
    if (tier_flag == "A") return Tier::A;
    if (tier_flag == "B") return Tier::B;
    return n <= caps.tier_a_max ? Tier::A : Tier::B;
}

std::vector<double> parse_q_list(const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (item == "inf" || item == "infinity") {
            out.push_back(kQInfinity);
        } else {
            std::size_t used = 0;
            double v = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument("bad q value: " + item);
            if (!(v > 0)) throw std::invalid_argument("q must be positive: " + item);
            out.push_back(v);
        }
    }
    if (out.empty()) throw std::invalid_argument("empty q list");
    return out;
}

std::pair<unsigned, unsigned> parse_range(const std::string& spec) {
    auto pos = spec.find("..");
    if (pos == std::string::npos) {
        unsigned v = static_cast<unsigned>(std::stoul(spec));
        return {v, v};
    }
    unsigned lo = static_cast<unsigned>(std::stoul(spec.substr(0, pos)));
    unsigned hi = static_cast<unsigned>(std::stoul(spec.substr(pos + 2)));
    if (hi < lo) throw std::invalid_argument("empty range: " + spec);
    return {lo, hi};
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string collision_str(const CollisionValue& v) {
    if (v.exact) return rat_str(v.rational);
    if (mpfr_zero_p(v.encl.lo.get())) return "0";
    char buf[80];
    mpfr_snprintf(buf, sizeof buf, "%.24Rg", v.encl.lo.get());
    return buf;
}

void emit_json(const ordered_json& j) {
    std::cout << j.dump() << "\n";
}

int run_dist(unsigned n, const std::string& tier_flag, const GlobalOpts& g) {
    EngineCaps caps;
    OrderDistribution d = dist_cached(n, pick_tier(n, tier_flag, caps), caps, g);
    if (g.csv()) {
        std::cout << dist_to_csv(d);
    } else {
        emit_json(dist_to_json(d));
    }
    return 0;
}

int run_joint(unsigned n, const GlobalOpts& g) {
    JointDistribution j = joint_exact(n);
    if (g.csv()) {
        std::cout << "ell,m,prob_num,prob_den\n";
        for (const auto& [key, p] : j.probs) {
            std::cout << key.first << ',' << int_str(key.second) << ',' << int_str(p.get_num())
                      << ',' << int_str(p.get_den()) << '\n';
        }
    } else {
        emit_json(joint_to_json(j));
    }
    return 0;
}

int run_entropy(unsigned n, const std::string& q_spec, const GlobalOpts& g) {
    EngineCaps caps;
    OrderDistribution d = dist_cached(n, pick_tier(n, "", caps), caps, g);
    EntropyReport rep = entropy_report(d, parse_q_list(q_spec), g.prec());
    if (g.csv()) {
        std::cout << entropy_report_to_csv(rep);
    } else {
        emit_json(entropy_report_to_json(rep));
    }
    return 0;
}

int run_mode(unsigned n, const GlobalOpts& g) {
    EngineCaps caps;
    ModeCheck mc = mode_check(dist_cached(n, pick_tier(n, "", caps), caps, g));
    ordered_json j;
    j["n"] = mc.n;
    j["mode"] = int_str(mc.mode);
    j["tie"] = mc.tie;
    j["max_k"] = mc.max_k;
    j["predicted"] = int_str(mc.predicted);
    j["agrees"] = mc.agrees;
    emit_json(j);
    return 0;
}

int run_kn(u64 n, const GlobalOpts&) {
    ordered_json j;
    j["n"] = n;
    j["k_set"] = kn_set(n);
    emit_json(j);
    return 0;
}

int run_en(u64 n, double c, u64 x_min, const GlobalOpts&) {
    emit_json(structure_report_to_json(structure_report(n, c, x_min)));
    return 0;
}

int run_ordercheck(unsigned n, long long k_flag, const GlobalOpts& g) {
    RecursionEngine eng(n);
    std::vector<u64> ks;
    if (k_flag >= 0) {
        ks.push_back(static_cast<u64>(k_flag));
    } else {
        ks = kn_set(n);
    }
    unsigned threads = g.threads == 0 ? default_thread_count() : g.threads;
    if (g.csv()) std::cout << "n,k,p,eta,residual\n";
    ordered_json rows = ordered_json::array();
    for (u64 k : ks) {
        ResidualRow row = exact_order_residual(eng, k, threads);
        if (g.csv()) {
            std::cout << row.n << ',' << row.k << ',' << rat_str(row.point_prob) << ','
                      << rat_str(row.eta_value) << ',' << rat_str(row.residual) << '\n';
        } else {
            ordered_json o;
            o["n"] = row.n;
            o["k"] = row.k;
            o["p"] = rat_str(row.point_prob);
            o["eta"] = rat_str(row.eta_value);
            o["residual"] = rat_str(row.residual);
            rows.push_back(std::move(o));
        }
    }
    if (!g.csv()) emit_json(rows);
    return 0;
}

int run_beta(double q, long long D, unsigned X, const GlobalOpts& g) {
    BetaPartial b = beta_partial(q, D, X, {}, g.prec());
    ordered_json j;
    j["q"] = b.q;
    j["D"] = b.D;
    j["X"] = b.X;
    j["value"] = collision_str(b.value);
    ordered_json slices = ordered_json::array();
    for (const auto& s : b.slices) slices.push_back(collision_str(s));
    j["slices"] = std::move(slices);
    emit_json(j);
    return 0;
}

int run_witness(unsigned k, unsigned ell, const GlobalOpts&) {
    WitnessResult w = witness_search(k, ell);
    ordered_json j;
    j["k"] = w.k;
    j["ell"] = w.ell;
    j["m"] = int_str(w.m);
    j["n_star"] = int_str(w.n_star);
    j["count"] = w.count;
    j["lower_bound"] = rat_str(w.lower_bound);
    ordered_json sums = ordered_json::array();
    for (const auto& [sum, cnt] : w.sums) sums.push_back({int_str(sum), cnt});
    j["sums"] = std::move(sums);
    emit_json(j);
    return 0;
}

ordered_json collision_row_json(const CollisionRow& row) {
    ordered_json o;
    o["n"] = row.n;
    o["q"] = row.q;
    o["scaled"] = collision_str(row.scaled);
    o["e_size"] = row.e_size;
    o["log_star"] = row.log_star_n;
    return o;
}

int run_collision(unsigned n, double q, double c, u64 x_min, const GlobalOpts& g) {
    EngineCaps caps;
    OrderDistribution d = dist_cached(n, pick_tier(n, "", caps), caps, g);
    CollisionRow row = collision_vs_exceptional(n, q, d, c, x_min, g.prec());
    if (g.csv()) {
        std::cout << "n,q,scaled,e_size,log_star\n"
                  << row.n << ',' << row.q << ',' << collision_str(row.scaled) << ','
                  << row.e_size << ',' << row.log_star_n << '\n';
    } else {
        emit_json(collision_row_json(row));
    }
    return 0;
}

int run_sample(unsigned n, u64 samples, u64 seed, u64 hist_min, const GlobalOpts& g) {
    EmpiricalSummary s = empirical_distribution(n, samples, seed, g.threads);
    emit_json(summary_to_json(s, hist_min));
    return 0;
}

int run_factor(const std::string& value, const GlobalOpts&) {
    Int v(value);
    emit_json(factorization_to_json(factorize(v)));
    return 0;
}

// Sweeps compute rows in parallel but buffer and emit strictly in order of n;
// per-n failures become error records and the sweep keeps going.
int run_sweep(const std::string& command, const std::string& range, const std::string& q_spec,
              double c, u64 x_min, const GlobalOpts& g) {
    auto [lo, hi] = parse_range(range);
    if (lo < 1) lo = 1;
    std::vector<double> qs = q_spec.empty() ? std::vector<double>{2.0} : parse_q_list(q_spec);
    EngineCaps caps;
    unsigned count = hi - lo + 1;
    std::vector<std::string> outputs(count);
    std::vector<std::string> errors(count);
    std::vector<Rat> scaled_exact(count);

    auto per_n = [&](std::size_t idx) {
        unsigned n = lo + static_cast<unsigned>(idx);
        std::ostringstream out;
        try {
            if (command == "kn") {
                ordered_json j;
                j["n"] = n;
                j["k_set"] = kn_set(n);
                out << j.dump() << "\n";
            } else if (command == "mode") {
                ModeCheck mc = mode_check(dist_cached(n, pick_tier(n, "", caps), caps, g));
                if (g.csv()) {
                    out << n << ',' << int_str(mc.mode) << ',' << int_str(mc.predicted) << ','
                        << (mc.agrees ? 1 : 0) << '\n';
                } else {
                    ordered_json j;
                    j["n"] = n;
                    j["mode"] = int_str(mc.mode);
                    j["predicted"] = int_str(mc.predicted);
                    j["agrees"] = mc.agrees;
                    out << j.dump() << "\n";
                }
            } else if (command == "collision") {
                OrderDistribution d = dist_cached(n, pick_tier(n, "", caps), caps, g);
                for (double q : qs) {
                    CollisionRow row = collision_vs_exceptional(n, q, d, c, x_min, g.prec());
                    if (row.scaled.exact) scaled_exact[idx] = row.scaled.rational;
                    if (g.csv()) {
                        out << row.n << ',' << row.q << ',' << collision_str(row.scaled) << ','
                            << row.e_size << ',' << row.log_star_n << '\n';
                    } else {
                        out << collision_row_json(row).dump() << "\n";
                    }
                }
            } else if (command == "entropy") {
                OrderDistribution d = dist_cached(n, pick_tier(n, "", caps), caps, g);
                EntropyReport rep = entropy_report(d, qs, g.prec());
                if (g.csv()) {
                    out << entropy_report_to_csv(rep);
                } else {
                    out << entropy_report_to_json(rep).dump() << "\n";
                }
            }
        } catch (const ResourceError& e) {
            errors[idx] = e.what();
        }
        outputs[idx] = out.str();
    };
    parallel_for(count, per_n, g.threads);

    if (g.csv() && command == "collision") std::cout << "n,q,scaled,e_size,log_star\n";
    if (g.csv() && command == "mode") std::cout << "n,mode,predicted,agrees\n";
    Rat running_sum = 0;
    unsigned running_count = 0;
    for (unsigned idx = 0; idx < count; ++idx) {
        if (!errors[idx].empty()) {
            ordered_json j;
            j["n"] = lo + idx;
            j["error"] = errors[idx];
            std::cout << j.dump() << "\n";
            continue;
        }
        std::cout << outputs[idx];
        if (command == "collision" && qs.size() == 1 && scaled_exact[idx] != 0) {
            running_sum += scaled_exact[idx];
            running_count += 1;
            if (!g.csv()) {
                ordered_json j;
                j["running_avg_upto"] = lo + idx;
                j["value"] = fmt_double(rat_to_double(running_sum) / running_count);
                std::cout << j.dump() << "\n";
            }
        }
    }
    return 0;
}

int run_calibrate_interval(u64 m_max, const GlobalOpts&) {
    // minimal grid A with (A log m / ell)^ell >= tau(m; a, a+t] on every cell
    std::vector<u64> a_grid{10, 100, 1000, 10000};
    std::vector<u64> t_grid{3, 10, 100, 1000};
    double minimal = -1;
    u64 worst_m = 0, worst_a = 0, worst_t = 0;
    for (double A = 0.25; A <= 6.0 + 1e-9; A += 0.25) {
        bool ok = true;
        for (u64 m = 2; m <= m_max && ok; ++m) {
            Int mm(static_cast<unsigned long>(m));
            for (u64 a : a_grid) {
                for (u64 t : t_grid) {
                    auto r = interval_bound_hard(Int(static_cast<unsigned long>(a)), mm,
                                                 Int(static_cast<unsigned long>(t)), A);
                    if (r.bound < static_cast<double>(r.actual)) {
                        ok = false;
                        worst_m = m;
                        worst_a = a;
                        worst_t = t;
                        break;
                    }
                }
                if (!ok) break;
            }
        }
        if (ok) {
            minimal = A;
            break;
        }
    }
    ordered_json j;
    j["m_max"] = m_max;
    j["a_grid"] = a_grid;
    j["t_grid"] = t_grid;
    if (minimal > 0) {
        j["minimal_A"] = minimal;
    } else {
        j["minimal_A"] = nullptr;
        j["last_failure"] = {worst_m, worst_a, worst_t};
    }
    emit_json(j);
    return 0;
}

int run_calibrate_en(u64 n_lo, u64 n_hi, unsigned samples, double c, const GlobalOpts&) {
    if (n_hi < n_lo || n_lo < 32) throw std::invalid_argument("calibrate en-size: bad range");
    ordered_json rows = ordered_json::array();
    u64 state = 0x243F6A8885A308D3ull;
    long long worst = -1000;
    for (unsigned i = 0; i < samples; ++i) {
        state = mix64(state + i);
        u64 n = n_lo + state % (n_hi - n_lo + 1);
        EnSet e = en_set(n, c, 16);
        unsigned ls = log_star(static_cast<double>(n));
        long long gap = static_cast<long long>(e.members.size()) - static_cast<long long>(ls);
        worst = std::max(worst, gap);
        rows.push_back({n, e.members.size(), ls, gap});
    }
    ordered_json j;
    j["c"] = c;
    j["rows"] = std::move(rows);
    j["max_gap"] = worst;
    emit_json(j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact order-distribution engines for uniform random permutations"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--cache-dir", g.cache_dir, "cache directory (overrides PERMORDER_CACHE)");
    app.add_option("--threads", g.threads, "worker threads (0 = hardware)");
    app.add_option("--precision-bits", g.precision_bits, "float working precision")
        ->check(CLI::Range(64u, 65536u));

    unsigned n = 4;
    u64 n64 = 10;
    std::string tier_flag;
    std::string q_spec = "0.5,1,1.5,2,3,inf";
    std::string sweep_q;
    double q_single = 2.0;
    double c = 0.5;
    u64 x_min = 16;
    long long D = 0;
    unsigned X = 5;
    unsigned wk = 6, well = 3;
    long long k_flag = -1;
    u64 samples = 100000, seed = 1, hist_min = 0;
    std::string sweep_cmd = "collision", range = "2..40";
    std::string calibrate_what = "interval-bound";
    u64 m_max = 100000;
    u64 en_lo = 10000, en_hi = 100000;
    unsigned en_samples = 10;
    std::string factor_value = "1";

    auto* dist_cmd = app.add_subcommand("dist", "exact law of the order");
    dist_cmd->add_option("--n", n, "degree")->required();
    dist_cmd->add_option("--tier", tier_flag, "engine tier")->check(CLI::IsMember({"A", "B"}));

    auto* joint_cmd = app.add_subcommand("joint", "exact joint law of (cycles, order)");
    joint_cmd->add_option("--n", n, "degree")->required();

    auto* entropy_cmd = app.add_subcommand("entropy", "Renyi entropies and collision powers");
    entropy_cmd->add_option("--n", n, "degree")->required();
    entropy_cmd->add_option("--q", q_spec, "comma list of q (inf allowed)");

    auto* mode_cmd = app.add_subcommand("mode", "mode versus n - max K_n");
    mode_cmd->add_option("--n", n, "degree")->required();

    auto* kn_cmd = app.add_subcommand("kn", "the set K_n");
    kn_cmd->add_option("--n", n64, "degree")->required();

    auto* en_cmd = app.add_subcommand("en", "exceptional-set structure report");
    en_cmd->add_option("--n", n64, "degree")->required();
    en_cmd->add_option("--c", c, "threshold constant");
    en_cmd->add_option("--x-min", x_min, "cutoff (>= 16)");

    auto* order_cmd = app.add_subcommand("ordercheck", "point probabilities near n with residuals");
    order_cmd->add_option("--n", n, "degree")->required();
    order_cmd->add_option("--k", k_flag, "single k (default: all of K_n)");

    auto* beta_cmd = app.add_subcommand("beta", "truncated shifted-factorial constant");
    beta_cmd->add_option("--q", q_single, "exponent > 1");
    beta_cmd->add_option("--D", D, "shift");
    beta_cmd->add_option("--X", X, "truncation")->required();

    auto* witness_cmd = app.add_subcommand("witness", "popular-order witness search");
    witness_cmd->add_option("--k", wk, "number of primes")->required();
    witness_cmd->add_option("--ell", well, "merged block size")->required();

    auto* coll_cmd = app.add_subcommand("collision", "scaled collision power vs exceptional count");
    coll_cmd->add_option("--n", n, "degree")->required();
    coll_cmd->add_option("--q", q_single, "exponent > 1");
    coll_cmd->add_option("--c", c, "threshold constant");
    coll_cmd->add_option("--x-min", x_min, "cutoff (>= 16)");

    auto* sample_cmd = app.add_subcommand("sample", "seeded Monte-Carlo cycle types");
    sample_cmd->add_option("--n", n, "degree")->required();
    sample_cmd->add_option("--samples", samples, "number of samples");
    sample_cmd->add_option("--seed", seed, "seed");
    sample_cmd->add_option("--hist-min-count", hist_min, "pool sparser orders");

    auto* sweep_cmd_p = app.add_subcommand("sweep", "one record per n over a range");
    sweep_cmd_p->add_option("--command", sweep_cmd, "kn|mode|collision|entropy")
        ->check(CLI::IsMember({"kn", "mode", "collision", "entropy"}));
    sweep_cmd_p->add_option("--n", range, "range lo..hi")->required();
    sweep_cmd_p->add_option("--q", sweep_q, "comma list of q");
    sweep_cmd_p->add_option("--c", c, "threshold constant");
    sweep_cmd_p->add_option("--x-min", x_min, "cutoff (>= 16)");

    auto* cal_cmd = app.add_subcommand("calibrate", "empirical constant scans");
    cal_cmd->add_option("--what", calibrate_what, "interval-bound|en-size")
        ->check(CLI::IsMember({"interval-bound", "en-size"}));
    cal_cmd->add_option("--m-max", m_max, "largest modulus scanned");
    cal_cmd->add_option("--n-lo", en_lo, "range start");
    cal_cmd->add_option("--n-hi", en_hi, "range end");
    cal_cmd->add_option("--samples", en_samples, "sampled n count");
    cal_cmd->add_option("--c", c, "threshold constant");

    auto* factor_cmd = app.add_subcommand("factor", "prime factorisation");
    factor_cmd->add_option("--value", factor_value, "positive integer")->required();

    // global flags may follow the subcommand name
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 1;
    }

    try {
        if (*dist_cmd) return run_dist(n, tier_flag, g);
        if (*joint_cmd) return run_joint(n, g);
        if (*entropy_cmd) return run_entropy(n, q_spec, g);
        if (*mode_cmd) return run_mode(n, g);
        if (*kn_cmd) return run_kn(n64, g);
        if (*en_cmd) return run_en(n64, c, x_min, g);
        if (*order_cmd) return run_ordercheck(n, k_flag, g);
        if (*beta_cmd) return run_beta(q_single, D, X, g);
        if (*witness_cmd) return run_witness(wk, well, g);
        if (*coll_cmd) return run_collision(n, q_single, c, x_min, g);
        if (*sample_cmd) return run_sample(n, samples, seed, hist_min, g);
        if (*sweep_cmd_p) return run_sweep(sweep_cmd, range, sweep_q, c, x_min, g);
        if (*cal_cmd) {
            if (calibrate_what == "interval-bound") return run_calibrate_interval(m_max, g);
            return run_calibrate_en(en_lo, en_hi, en_samples, c, g);
        }
        if (*factor_cmd) return run_factor(factor_value, g);
    } catch (const ResourceError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
