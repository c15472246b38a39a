#pragma once

#include <optional>

#include "linrank/constraint.hpp"
#include "linrank/projection.hpp"
#include "linrank/ranking.hpp"

namespace linrank {

/// Positive-scaling closure {k·p : p in s, k > 0}. Requires an ms-full space.
RankingSpace cone_extend(const RankingSpace& s);

/// {<mu0 + t, mu> : <mu0, mu> in s, t >= 0}.
RankingSpace mu0_upward_closure(const RankingSpace& s);

/// Is some positive multiple of f in s? With `any_mu0` the mu0 coordinate is
/// left free instead of being scaled along with mu.
bool contains_up_to_scaling(const RankingSpace& s, const RankingFunction& f, bool any_mu0);

struct CrossCheckReport {
    Verdict ms;
    Verdict pr;
    bool agree = false;
    /// Only set when both verdicts are Terminating.
    std::optional<bool> ms_witness_in_pr;     // some multiple of the MS mu, any mu0, in pr_space
    std::optional<bool> pr_witness_in_ms;     // in the denormalized MS space
    std::optional<bool> ms_witness_exact_in_pr;  // <mu0, mu> itself, up to scaling
    /// Space comparisons; only set when the loop is satisfiable.
    std::optional<SpaceComparison> cone_ms_vs_pr;
    std::optional<SpaceComparison> cone_ms_vs_pr_mu0_closed;
    std::optional<bool> pr_within_cone_ms;

    /// Verdicts agree, every computed membership holds, PR lies inside the
    /// MS cone, and the two spaces coincide once mu0 is closed upward.
    bool consistent() const;
};

/// With `spaces` false only verdicts and witness memberships are computed.
CrossCheckReport cross_check(const LoopModel& l, bool spaces = true);

} // namespace linrank
