#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "linrank/rational.hpp"

namespace linrank {

enum class Rel { Le, Lt, Eq, Ge, Gt };

std::string_view to_string(Rel r);
bool is_strict(Rel r);
/// The relation obtained by multiplying both sides by -1.
Rel flip(Rel r);

/// coeffs · vars REL rhs
struct LinConstraint {
    QVector coeffs;
    Rel rel = Rel::Le;
    Rational rhs;

    bool holds_at(const QVector& point) const;
    /// True when every coefficient is zero.
    bool is_ground() const { return coeffs.is_zero(); }
    /// For ground constraints: does `0 REL rhs` hold?
    bool ground_truth() const;

    LinConstraint negated() const { return {-coeffs, flip(rel), -rhs}; }

    friend bool operator==(const LinConstraint&, const LinConstraint&) = default;
};

/// A conjunction of linear constraints over a named, ordered set of columns.
class ConstraintSystem {
public:
    ConstraintSystem() = default;
    explicit ConstraintSystem(std::vector<std::string> vars) : vars_(std::move(vars)) {}
    ConstraintSystem(std::vector<std::string> vars, std::vector<LinConstraint> rows);

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t dim() const { return vars_.size(); }
    std::optional<std::size_t> index_of(std::string_view name) const;

    const std::vector<LinConstraint>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

    void add(LinConstraint row);
    void add(QVector coeffs, Rel rel, Rational rhs) { add(LinConstraint{std::move(coeffs), rel, std::move(rhs)}); }
    void append(const ConstraintSystem& other);

    bool has_strict() const;
    bool holds_at(const QVector& point) const;
    /// Strict rows relaxed to their non-strict counterparts.
    ConstraintSystem closure() const;

    friend bool operator==(const ConstraintSystem&, const ConstraintSystem&) = default;

private:
    std::vector<std::string> vars_;
    std::vector<LinConstraint> rows_;
};

/// Program variables x1..xn; column i + n holds the primed twin of column i.
class VarSpace {
public:
    VarSpace() = default;
    explicit VarSpace(std::vector<std::string> names);

    std::size_t n() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    /// x1 .. xn, x1' .. xn'
    std::vector<std::string> columns() const;
    std::optional<std::size_t> index_of(std::string_view name) const;

    friend bool operator==(const VarSpace&, const VarSpace&) = default;

private:
    std::vector<std::string> names_;
};

struct SingleLoop {
    ConstraintSystem c;
    friend bool operator==(const SingleLoop&, const SingleLoop&) = default;
};

struct GuardedLoop {
    ConstraintSystem guard;  // primed columns all zero
    ConstraintSystem update;
    friend bool operator==(const GuardedLoop&, const GuardedLoop&) = default;
};

struct LoopModel {
    VarSpace space;
    std::variant<SingleLoop, GuardedLoop> body;

    bool is_guarded() const { return std::holds_alternative<GuardedLoop>(body); }
    const GuardedLoop& guarded() const { return std::get<GuardedLoop>(body); }

    static LoopModel single(VarSpace space, ConstraintSystem c);
    static LoopModel guarded(VarSpace space, ConstraintSystem guard, ConstraintSystem update);

    friend bool operator==(const LoopModel&, const LoopModel&) = default;
};

/// (A A') <x, x'> <= b
struct LeqMatrixForm {
    QMatrix a;
    QMatrix a_primed;
    QVector b;

    std::size_t rows() const { return b.size(); }
};

/// A_c <x, x'> >= b_c
struct GeqMatrixForm {
    QMatrix a;
    QVector b;

    std::size_t rows() const { return b.size(); }
};

/// Equalities become a (<=, >=) pair, >= rows are negated; rejects strict rows.
/// The system must have 2n columns laid out as <x, x'>.
LeqMatrixForm to_leq_matrix(const ConstraintSystem& c);
GeqMatrixForm to_geq_matrix(const ConstraintSystem& c);

/// Guard rows (lifted, zero on primed columns) followed by update rows.
/// Single loops are returned unchanged.
ConstraintSystem merge_guarded(const LoopModel& l);

bool is_satisfiable(const ConstraintSystem& c);

/// Loop files.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

LoopModel parse_loop(std::string_view text);
std::string serialize_loop(const LoopModel& l);
/// Renders one row with named columns, e.g. "x1 - 2*x1' >= 0".
std::string format_constraint(const LinConstraint& row, const std::vector<std::string>& names);

} // namespace linrank
