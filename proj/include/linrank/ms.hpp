#pragma once

#include <vector>

#include "linrank/constraint.hpp"
#include "linrank/ranking.hpp"

namespace linrank {

/// Positive linear ranking functions over nonnegative variables.
/// Columns y1..ym, mu1..muN; rows A_c^T y <= <mu, -mu>, b_c^T y >= 1, y >= 0, mu >= 0.
ConstraintSystem build_svg_system(const ConstraintSystem& c);
Verdict svg_analyze(const ConstraintSystem& c);
/// Throws std::invalid_argument when c has no nonnegative solution.
RankingSpace svg_space(const ConstraintSystem& c);
/// Global ranking functions for several clauses over the same variables.
RankingSpace svg_space(const std::vector<ConstraintSystem>& clauses);

struct MsSystems {
    ConstraintSystem decrease;  // y1..ym, mu1..muN
    ConstraintSystem bounded;   // z1..z(m+2), mu0, mu1..muN
};

/// Callers are expected to check satisfiability of c first.
MsSystems build_ms_systems(const ConstraintSystem& c);
/// Both systems conjoined over the shared mu0, mu columns (kept last).
ConstraintSystem conjoin(const MsSystems& s);

Verdict ms_analyze(const LoopModel& l);
/// The following throw std::invalid_argument on unsatisfiable loops.
RankingSpace ms_space(const LoopModel& l);
RankingSpace ms_decreasing_space(const LoopModel& l);
RankingSpace ms_bounded_space(const LoopModel& l);

/// Is some positive multiple of f.mu, with any mu0, in the space?
/// Requires an ms-full space.
bool in_denormalized_space(const RankingSpace& s, const RankingFunction& f);
/// Same question against ms_space(l), decided by one LP without projecting.
bool in_denormalized_space(const LoopModel& l, const RankingFunction& f);

} // namespace linrank
