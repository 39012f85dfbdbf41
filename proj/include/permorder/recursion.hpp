#pragma once

#include <vector>

#include "permorder/engine.hpp"
#include "permorder/ints.hpp"

namespace permorder {

/// Point-probability engine built on the first-jump recursion
///   A_x(d) = (1/x) * sum over 0 <= y < x with x - y | d of A_y(d),
/// where A_x(d) = P(ord(pi_x) divides d). The recursion is evaluated exactly
/// in a fixed system of prime residue fields whose product exceeds n!, and
/// the integer count n! * p_n(m) is reconstructed; no rounding anywhere.
///
/// Instances are immutable after construction and safe to share across
/// threads for concurrent point queries.
class RecursionEngine {
public:
    explicit RecursionEngine(unsigned n, const EngineCaps& caps = {});
    RecursionEngine(RecursionEngine&&) noexcept;
    RecursionEngine& operator=(RecursionEngine&&) noexcept;
    ~RecursionEngine();

    /// n! * P(ord(pi_n) = m), an exact nonnegative integer.
    Int point_count(const Int& m, unsigned threads = 1) const;

    /// P(ord(pi_n) = m) as an exact rational.
    Rat point_prob(const Int& m, unsigned threads = 1) const;

    unsigned n() const { return n_; }
    const Int& factorial_n() const { return fact_n_; }

private:
    struct ModCtx;

    unsigned n_;
    EngineCaps caps_;
    Int fact_n_;
    std::vector<ModCtx> ctxs_;
};

/// One-shot convenience wrapper around RecursionEngine.
Rat recursion_point_prob(unsigned n, const Int& m, const EngineCaps& caps = {},
                         unsigned threads = 1);

}  // namespace permorder
