#pragma once

#include <optional>

#include "linrank/constraint.hpp"
#include "linrank/ranking.hpp"

namespace linrank {

struct PrWitness {
    QVector lambda1;
    QVector lambda2;
};

struct PrAltWitness {
    QVector v1;
    QVector v2;
    QVector v3;
};

/// Columns lambda1_1..lambda1_k, lambda2_1..lambda2_k. With `normalized`
/// the strict row lambda2^T b < 0 is replaced by lambda2^T b <= -1.
ConstraintSystem build_pr_system(const LeqMatrixForm& m, bool normalized = false);
bool satisfies_pr(const PrWitness& w, const LeqMatrixForm& m);
/// mu = lambda2^T A', mu0 = lambda1^T b, delta = -lambda2^T b.
/// Throws std::invalid_argument if w is not a solution.
RankingFunction extract_rf(const PrWitness& w, const LeqMatrixForm& m);

Verdict pr_analyze(const LoopModel& l);
/// Throws std::invalid_argument on unsatisfiable loops.
RankingSpace pr_space(const LoopModel& l);
RankingSpace pr_space(const LeqMatrixForm& m);

/// Guard in A_B x <= b_B form, update in A_C x + A'_C x' <= b_C form.
/// Columns v1_1..v1_r, v2_1..v2_r, v3_1..v3_s.
ConstraintSystem build_pr_alt_system(const LoopModel& l, bool normalized = false);
bool satisfies_pr_alt(const PrAltWitness& w, const LoopModel& l);
/// lambda1 = <v1, 0>, lambda2 = <v2, v3> over the merged matrices.
PrWitness reconstruct(const PrAltWitness& w, std::size_t update_rows);

/// Adds to the guard every nonnegative combination of update rows free of
/// primed variables (one per extreme ray), ground rows included. The merged
/// system keeps its solutions and its PR space.
LoopModel complete_guard(const LoopModel& l);

/// Is some positive multiple of f in pr_space(l)? With `any_mu0` the mu0
/// coordinate is left free. Decided by one LP over the lambda system.
bool in_pr_space(const LoopModel& l, const RankingFunction& f, bool any_mu0);

/// These work on the completed guard; throw on non-guarded input.
Verdict pr_alt_analyze(const LoopModel& l);
RankingSpace pr_alt_space(const LoopModel& l);

} // namespace linrank
