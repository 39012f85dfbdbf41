#pragma once

#include <limits>
#include <vector>

#include "permorder/dist.hpp"
#include "permorder/enclosure.hpp"
#include "permorder/ints.hpp"

#include <json.hpp>

namespace permorder {

/// A power sum over a distribution: exact rational when the exponent is a
/// small integer, always carrying a two-sided floating enclosure.
struct CollisionValue {
    bool exact = false;
    Rat rational;
    Enclosure encl;

    double mid() const { return encl.mid_d(); }
};

/// sum over values of prob^q for q > 0; exact when q is a small integer.
CollisionValue power_sum(const std::map<Int, Rat>& probs, double q, mpfr_prec_t prec = 192);

/// sum_m p(m)^q. Requires q > 1 (integer q: probability that q independent
/// permutations share an order).
CollisionValue collision_power(const OrderDistribution& dist, double q,
                               mpfr_prec_t prec = 192);

struct ModeInfo {
    Rat p_infinity;
    Int mode;  // smallest order attaining the maximum
    bool tie = false;
    std::vector<Int> tied;  // all attaining orders when tie
};

ModeInfo min_prob_and_mode(const OrderDistribution& dist);

constexpr double kQInfinity = std::numeric_limits<double>::infinity();

/// Renyi entropy, natural log. q = 1 gives Shannon entropy, q = kQInfinity
/// min-entropy. Rejects q <= 0.
Enclosure renyi_entropy(const OrderDistribution& dist, double q, mpfr_prec_t prec = 192);

/// n^q * sum p^q.
CollisionValue scaled_collision(unsigned n, double q, const OrderDistribution& dist,
                                mpfr_prec_t prec = 192);

struct EntropyRow {
    double q = 0;  // kQInfinity allowed
    CollisionValue p_q;
    CollisionValue scaled;
    Enclosure h_q;
};

struct EntropyReport {
    unsigned n = 0;
    ModeInfo mode;
    std::vector<EntropyRow> rows;
};

EntropyReport entropy_report(const OrderDistribution& dist, const std::vector<double>& qs,
                             mpfr_prec_t prec = 192);

nlohmann::ordered_json entropy_report_to_json(const EntropyReport& r);
std::string entropy_report_to_csv(const EntropyReport& r);

}  // namespace permorder
