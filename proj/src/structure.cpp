#include "permorder/structure.hpp"

#include <cmath>
#include <stdexcept>

#include "permorder/arith.hpp"
#include "permorder/divisors.hpp"
#include "permorder/errors.hpp"
#include "permorder/primes.hpp"

namespace permorder {

std::vector<u64> kn_set(u64 n) {
    std::vector<u64> out;
    if (n == 0) return out;
    Int L = 1;  // lcm(1..k), grown incrementally
    for (u64 k = 0; k < n; ++k) {
        if (k >= 2) mpz_lcm_ui(L.get_mpz_t(), L.get_mpz_t(), static_cast<unsigned long>(k));
        if (mpz_cmp_ui(L.get_mpz_t(), static_cast<unsigned long>(n)) > 0) break;
        Int rem(static_cast<unsigned long>(n - k));
        if (gcd_with_lcm_upto(k, rem) == L) out.push_back(k);
    }
    return out;
}

bool kn_member_modular(u64 n, u64 k) {
    if (k >= n) return false;
    if (k <= 1) return true;
    for (u32 p : primes_upto(static_cast<u32>(k))) {
        u64 q = p;
        while (q <= k / p) q *= p;
        if ((n - k) % q != 0) return false;
    }
    return true;
}

namespace {

// Decides h >= c log x / log log x with a refined threshold enclosure;
// the exact rational side makes the comparison immune to rounding.
bool exceeds_threshold(const Rat& h, double c, u64 x) {
    for (mpfr_prec_t prec = 128; prec <= 2048; prec *= 2) {
        MpReal lo(prec), hi(prec), t(prec);
        mpfr_set_ui(t.get(), x, MPFR_RNDN);
        mpfr_log(lo.get(), t.get(), MPFR_RNDD);
        mpfr_log(hi.get(), t.get(), MPFR_RNDU);
        MpReal ll_lo(prec), ll_hi(prec);
        mpfr_log(ll_lo.get(), lo.get(), MPFR_RNDD);
        mpfr_log(ll_hi.get(), hi.get(), MPFR_RNDU);
        // thr = c * log x / log log x, c >= 0, log log x > 0 on the domain
        MpReal thr_lo(prec), thr_hi(prec);
        mpfr_mul_d(thr_lo.get(), lo.get(), c, MPFR_RNDD);
        mpfr_div(thr_lo.get(), thr_lo.get(), ll_hi.get(), MPFR_RNDD);
        mpfr_mul_d(thr_hi.get(), hi.get(), c, MPFR_RNDU);
        mpfr_div(thr_hi.get(), thr_hi.get(), ll_lo.get(), MPFR_RNDU);
        if (mpfr_cmp_q(thr_hi.get(), h.get_mpq_t()) <= 0) return true;
        if (mpfr_cmp_q(thr_lo.get(), h.get_mpq_t()) > 0) return false;
    }
    // Threshold is irrational for the parameters in use; equality never
    // survives refinement. Treat an exact hit as a member.
    return true;
}

}  // namespace

bool en_member(u64 n, u64 x, double c) {
    if (x < 3 || x >= n) throw std::invalid_argument("en_member: requires 3 <= x < n");
    Int g = gcd_with_lcm_upto(x, Int(static_cast<unsigned long>(n - x)));
    Rat h = divisor_stats(g).h;
    return exceeds_threshold(h, c, x);
}

EnSet en_set(u64 n, double c, u64 x_min) {
    if (!(c > 0)) throw std::invalid_argument("en_set: c must be positive");
    if (x_min < 16) throw std::invalid_argument("en_set: x_min must be >= 16");
    EnSet out;
    out.n = n;
    out.c = c;
    out.x_min = x_min;
    for (u64 x = 3; x < std::min(x_min, n); ++x) {
        if (en_member(n, x, c)) out.below_cutoff.push_back(x);
    }
    for (u64 x = x_min; x < n; ++x) {
        if (en_member(n, x, c)) out.members.push_back(x);
    }
    return out;
}

Rat eta(u64 n, u64 k) {
    if (k >= n) throw std::invalid_argument("eta: requires k < n");
    if (k <= 1) return Rat(0);
    unsigned e = 63u - static_cast<unsigned>(__builtin_clzll(k));  // floor(log2 k)
    u64 q2 = 1ull << (e + 1);
    if ((n - k) % q2 == 0) return Rat(0);
    return make_rat(Int(2), int_pow(Int(2), e) * int_pow(Int(static_cast<unsigned long>(n - k)), 2));
}

ResidualRow exact_order_residual(const RecursionEngine& engine, u64 k, unsigned threads) {
    u64 n = engine.n();
    if (k >= n) throw std::invalid_argument("exact_order_residual: requires k < n");
    ResidualRow row;
    row.n = n;
    row.k = k;
    Int m(static_cast<unsigned long>(n - k));
    row.point_prob = engine.point_prob(m, threads);
    row.eta_value = eta(n, k);
    row.residual = row.point_prob - make_rat(Int(1), m) - row.eta_value;
    return row;
}

ModeCheck mode_check(const OrderDistribution& dist) {
    ModeCheck out;
    out.n = dist.n;
    ModeInfo info = min_prob_and_mode(dist);
    out.mode = info.mode;
    out.tie = info.tie;
    std::vector<u64> ks = kn_set(dist.n);
    out.max_k = ks.back();  // 0 is always a member for n >= 1
    out.predicted = Int(static_cast<unsigned long>(dist.n - out.max_k));
    out.agrees = !out.tie && out.mode == out.predicted;
    return out;
}

BetaPartial beta_partial(double q, long long D, unsigned X, const EngineCaps& caps,
                         mpfr_prec_t prec) {
    if (!(q > 1.0)) throw std::invalid_argument("beta_partial: requires q > 1");
    BetaPartial out;
    out.q = q;
    out.D = D;
    out.X = X;
    bool exact = true;
    Rat total = 0;
    Enclosure acc(prec);
    for (unsigned x = 0; x < X; ++x) {
        std::map<Int, Rat> qd = quotient_distribution(x, D, caps);
        CollisionValue slice = power_sum(qd, q, prec);
        if (slice.exact && exact) {
            total += slice.rational;
        } else {
            exact = false;
        }
        mpfr_add(acc.lo.get(), acc.lo.get(), slice.encl.lo.get(), MPFR_RNDD);
        mpfr_add(acc.hi.get(), acc.hi.get(), slice.encl.hi.get(), MPFR_RNDU);
        out.slices.push_back(std::move(slice));
    }
    out.value.exact = exact;
    if (exact) {
        out.value.rational = total;
        out.value.encl = Enclosure::from_rat(total, prec);
    } else {
        out.value.encl = std::move(acc);
    }
    return out;
}

CollisionRow collision_vs_exceptional(unsigned n, double q, const OrderDistribution& dist,
                                      double c, u64 x_min, mpfr_prec_t prec) {
    CollisionRow row;
    row.n = n;
    row.q = q;
    row.scaled = scaled_collision(n, q, dist, prec);
    row.e_size = en_set(n, c, x_min).members.size();
    row.log_star_n = log_star(static_cast<double>(n));
    return row;
}

WitnessResult witness_search(unsigned k, unsigned ell, unsigned t_cap) {
    if (ell < 1 || k <= ell) throw std::invalid_argument("witness_search: requires k > ell >= 1");
    unsigned t = k - ell;
    if (t > t_cap) throw ResourceError("k-ell", t, t_cap);

    std::vector<u64> q;  // first k primes
    for (u64 cand = 2; q.size() < k; ++cand) {
        if (is_prime_u64(cand)) q.push_back(cand);
    }
    WitnessResult out;
    out.k = k;
    out.ell = ell;
    out.m = 1;
    for (u64 p : q) out.m *= Int(static_cast<unsigned long>(p));
    Int base = 1;
    for (unsigned j = 0; j < ell; ++j) base *= Int(static_cast<unsigned long>(q[j]));

    // Partitions of the index set {ell, ..., k-1} by restricted growth:
    // element i joins one of the blocks seen so far or opens a new one.
    std::vector<Int> blocks;
    auto rec = [&](auto&& self, unsigned i) -> void {
        if (i == t) {
            Int sum = base;
            for (const Int& b : blocks) sum += b;
            out.sums[sum] += 1;
            return;
        }
        u64 prime = q[ell + i];
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            Int saved = blocks[b];
            blocks[b] *= Int(static_cast<unsigned long>(prime));
            self(self, i + 1);
            blocks[b] = saved;
        }
        blocks.emplace_back(static_cast<unsigned long>(prime));
        self(self, i + 1);
        blocks.pop_back();
    };
    rec(rec, 0);

    out.count = 0;
    for (const auto& [sum, cnt] : out.sums) {
        if (cnt > out.count) {  // map order makes ties resolve to the smallest sum
            out.count = cnt;
            out.n_star = sum;
        }
    }
    out.lower_bound = make_rat(Int(static_cast<unsigned long>(out.count)), out.m);
    return out;
}

StructureReport structure_report(u64 n, double c, u64 x_min) {
    StructureReport r;
    r.n = n;
    r.k_set = kn_set(n);
    r.e_set = en_set(n, c, x_min);
    r.max_k = r.k_set.empty() ? -1 : static_cast<long long>(r.k_set.back());
    for (u64 k : r.k_set) r.eta_values.emplace(k, eta(n, k));
    r.log_star_n = log_star(static_cast<double>(n));
    return r;
}

nlohmann::ordered_json structure_report_to_json(const StructureReport& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["k_set"] = r.k_set;
    j["max_k"] = r.max_k;
    nlohmann::ordered_json eta_json = nlohmann::ordered_json::array();
    for (const auto& [k, v] : r.eta_values) eta_json.push_back({k, rat_str(v)});
    j["eta"] = std::move(eta_json);
    nlohmann::ordered_json en;
    en["c"] = r.e_set.c;
    en["x_min"] = r.e_set.x_min;
    en["members"] = r.e_set.members;
    en["below_cutoff"] = r.e_set.below_cutoff;
    j["e_set"] = std::move(en);
    j["log_star_n"] = r.log_star_n;
    return j;
}

}  // namespace permorder
