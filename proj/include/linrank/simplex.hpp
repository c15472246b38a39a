#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "linrank/constraint.hpp"
#include "linrank/rational.hpp"

namespace linrank {

enum class Direction { Minimize, Maximize };
enum class VarSign { Nonnegative, Free };

struct LpRow {
    QVector coeffs;
    Rel rel = Rel::Le;  // Le, Eq or Ge
    Rational rhs;
};

/// An exact linear program. An absent objective asks for any feasible point.
struct LpProblem {
    std::size_t num_vars = 0;
    std::optional<QVector> objective;
    Direction direction = Direction::Minimize;
    std::vector<LpRow> rows;
    std::vector<VarSign> signs;  // one per variable

    explicit LpProblem(std::size_t n = 0, VarSign sign = VarSign::Free) : num_vars(n), signs(n, sign) {}

    void add_row(QVector coeffs, Rel rel, Rational rhs);
    void minimize(QVector c) { objective = std::move(c); direction = Direction::Minimize; }
    void maximize(QVector c) { objective = std::move(c); direction = Direction::Maximize; }

    /// Exact check of every row and sign restriction.
    bool is_feasible_point(const QVector& x) const;
    Rational objective_value(const QVector& x) const;
};

namespace lp {

struct Infeasible {};
struct Unbounded {
    QVector point;  // feasible
    QVector ray;    // point + t·ray stays feasible for t >= 0 and strictly improves the objective
};
struct Optimal {
    QVector point;
    Rational value;
};
struct FeasiblePoint {
    QVector point;
};

} // namespace lp

using LpOutcome = std::variant<lp::Infeasible, lp::Unbounded, lp::Optimal, lp::FeasiblePoint>;

/// Every row is an equality and every variable is nonnegative. Each original
/// variable maps to a positive column and, when free, a negative column.
struct StandardForm {
    LpProblem problem;
    std::vector<std::size_t> pos_column;
    std::vector<std::optional<std::size_t>> neg_column;
    std::size_t num_slacks = 0;

    /// Original-variable values of a standard-form point.
    QVector recover(const QVector& standard_point) const;
};

StandardForm to_standard_form(const LpProblem& p);

/// Two-phase dense-tableau simplex with Bland's rule.
LpOutcome solve(const LpProblem& p);

/// LP dual. Minimization primals with >=/= rows pair with maximization duals
/// with <=/= rows (and symmetrically); nonnegative primal variables yield
/// inequality dual rows, free ones equality rows. Throws std::invalid_argument
/// on problems without an objective.
LpProblem dual(const LpProblem& p);

/// A point of `c` (all columns free) that satisfies every strict row strictly,
/// or nullopt if none exists.
std::optional<QVector> strict_feasible_point(const ConstraintSystem& c);

/// Any point of `c`, honouring strict rows.
std::optional<QVector> find_point(const ConstraintSystem& c);

/// Translates a system without strict rows into an LP over free variables.
/// Single-variable rows of the form x >= 0 become sign restrictions.
LpProblem to_lp(const ConstraintSystem& c);

} // namespace linrank
