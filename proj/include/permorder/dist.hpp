#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "permorder/ints.hpp"

#include <json.hpp>

namespace permorder {

enum class Tier { A, B, C };

std::string tier_name(Tier t);
std::optional<Tier> tier_from_name(const std::string& s);

/// Exact law of the order of a uniform random permutation of [n].
/// Entries are strictly positive and sum to 1 for complete laws.
struct OrderDistribution {
    unsigned n = 0;
    Tier tier = Tier::A;
    std::map<Int, Rat> probs;

    Rat total() const;
    const Rat* find(const Int& m) const;
};

/// Exact joint law of (cycle count, order).
struct JointDistribution {
    unsigned n = 0;
    std::map<std::pair<unsigned, Int>, Rat> probs;

    Rat total() const;
};

nlohmann::ordered_json dist_to_json(const OrderDistribution& d);
OrderDistribution dist_from_json(const nlohmann::ordered_json& j);
std::string dist_to_csv(const OrderDistribution& d);

nlohmann::ordered_json joint_to_json(const JointDistribution& d);

/// Binary on-disk cache for computed laws, keyed by (n, tier, engine version).
/// Readers reject anything malformed; a bad file is treated as a miss.
inline constexpr unsigned kEngineVersion = 1;

std::string dist_cache_filename(unsigned n, Tier tier);
bool dist_cache_write(const std::string& path, const OrderDistribution& d);
std::optional<OrderDistribution> dist_cache_read(const std::string& path, unsigned expect_n,
                                                 Tier expect_tier);

}  // namespace permorder
