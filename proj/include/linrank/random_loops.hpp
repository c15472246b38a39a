#pragma once

#include <random>

#include "linrank/constraint.hpp"
#include "linrank/simplex.hpp"

namespace linrank {

struct RandomLoopOptions {
    std::size_t max_n = 4;
    std::size_t max_rows = 8;  // total constraints, guard included
    int max_coeff = 5;
    bool guarded = false;
    /// Probability of adding a row x1' <= x1 - d, which makes termination likely.
    double decrease_bias = 0.5;
};

/// A satisfiable loop: it always contains x1 >= 0 and every right-hand side is
/// chosen so that a sampled integer point satisfies the row.
LoopModel random_loop(std::mt19937_64& rng, const RandomLoopOptions& opt = {});

/// Same loop with the merged constraints in a shuffled order, as a single loop.
LoopModel permuted_single(const LoopModel& l, std::mt19937_64& rng);

/// A satisfiable system over `dim` free columns named c1..c<dim>.
ConstraintSystem random_system(std::mt19937_64& rng, std::size_t dim, std::size_t rows, int max_coeff,
                               bool allow_strict = false);

/// min c^T x s.t. A x >= b, x >= 0 with a feasible point and c >= 0, so the
/// optimum exists.
LpProblem random_bounded_lp(std::mt19937_64& rng, std::size_t vars, std::size_t rows, int max_coeff);

} // namespace linrank
