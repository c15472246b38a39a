#include "linrank/constraint.hpp"

#include <algorithm>
#include <stdexcept>

#include "linrank/simplex.hpp"

namespace linrank {

std::string_view to_string(Rel r) {
    switch (r) {
    case Rel::Le: return "<=";
    case Rel::Lt: return "<";
    case Rel::Eq: return "=";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
    }
    return "?";
}

bool is_strict(Rel r) { return r == Rel::Lt || r == Rel::Gt; }

Rel flip(Rel r) {
    switch (r) {
    case Rel::Le: return Rel::Ge;
    case Rel::Lt: return Rel::Gt;
    case Rel::Eq: return Rel::Eq;
    case Rel::Ge: return Rel::Le;
    case Rel::Gt: return Rel::Lt;
    }
    return r;
}

namespace {

bool compare(const Rational& lhs, Rel rel, const Rational& rhs) {
    switch (rel) {
    case Rel::Le: return lhs <= rhs;
    case Rel::Lt: return lhs < rhs;
    case Rel::Eq: return lhs == rhs;
    case Rel::Ge: return lhs >= rhs;
    case Rel::Gt: return lhs > rhs;
    }
    return false;
}

} // namespace

bool LinConstraint::holds_at(const QVector& point) const { return compare(dot(coeffs, point), rel, rhs); }

bool LinConstraint::ground_truth() const { return compare(Rational(0), rel, rhs); }

ConstraintSystem::ConstraintSystem(std::vector<std::string> vars, std::vector<LinConstraint> rows)
    : vars_(std::move(vars)) {
    for (auto& r : rows)
        add(std::move(r));
}

std::optional<std::size_t> ConstraintSystem::index_of(std::string_view name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - vars_.begin());
}

void ConstraintSystem::add(LinConstraint row) {
    if (row.coeffs.size() != vars_.size())
        throw DimensionError("constraint has " + std::to_string(row.coeffs.size()) + " coefficients, system has " +
                             std::to_string(vars_.size()) + " columns");
    rows_.push_back(std::move(row));
}

void ConstraintSystem::append(const ConstraintSystem& other) {
    if (other.vars_ != vars_)
        throw DimensionError("appending a system over different columns");
    rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

bool ConstraintSystem::has_strict() const {
    return std::any_of(rows_.begin(), rows_.end(), [](const auto& r) { return is_strict(r.rel); });
}

bool ConstraintSystem::holds_at(const QVector& point) const {
    if (point.size() != vars_.size())
        throw DimensionError("point dimension differs from system");
    return std::all_of(rows_.begin(), rows_.end(), [&](const auto& r) { return r.holds_at(point); });
}

ConstraintSystem ConstraintSystem::closure() const {
    ConstraintSystem out(vars_);
    for (const auto& r : rows_) {
        Rel rel = r.rel == Rel::Lt ? Rel::Le : (r.rel == Rel::Gt ? Rel::Ge : r.rel);
        out.add(r.coeffs, rel, r.rhs);
    }
    return out;
}

VarSpace::VarSpace(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty())
        throw std::invalid_argument("a loop needs at least one variable");
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw std::invalid_argument("duplicate variable '" + names_[i] + "'");
}

std::vector<std::string> VarSpace::columns() const {
    std::vector<std::string> cols(names_);
    for (const auto& n : names_)
        cols.push_back(n + "'");
    return cols;
}

std::optional<std::size_t> VarSpace::index_of(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

LoopModel LoopModel::single(VarSpace space, ConstraintSystem c) {
    if (c.vars() != space.columns())
        throw DimensionError("loop constraint columns do not match the variable space");
    return LoopModel{std::move(space), SingleLoop{std::move(c)}};
}

LoopModel LoopModel::guarded(VarSpace space, ConstraintSystem guard, ConstraintSystem update) {
    auto cols = space.columns();
    if (guard.vars() != cols || update.vars() != cols)
        throw DimensionError("loop constraint columns do not match the variable space");
    const std::size_t n = space.n();
    for (const auto& row : guard.rows())
        for (std::size_t i = n; i < 2 * n; ++i)
            if (!row.coeffs[i].is_zero())
                throw std::invalid_argument("guard constraint mentions primed variable " + cols[i]);
    return LoopModel{std::move(space), GuardedLoop{std::move(guard), std::move(update)}};
}

namespace {

void require_pre_post_layout(const ConstraintSystem& c) {
    if (c.dim() % 2 != 0)
        throw DimensionError("matrix form needs an even number of columns <x, x'>");
    if (c.has_strict())
        throw std::invalid_argument("matrix form of a system with strict constraints");
}

} // namespace

LeqMatrixForm to_leq_matrix(const ConstraintSystem& c) {
    require_pre_post_layout(c);
    const std::size_t n = c.dim() / 2;
    std::vector<QVector> rows;
    std::vector<Rational> rhs;
    for (const auto& r : c.rows()) {
        switch (r.rel) {
        case Rel::Le:
            rows.push_back(r.coeffs);
            rhs.push_back(r.rhs);
            break;
        case Rel::Ge:
            rows.push_back(-r.coeffs);
            rhs.push_back(-r.rhs);
            break;
        case Rel::Eq:
            rows.push_back(r.coeffs);
            rhs.push_back(r.rhs);
            rows.push_back(-r.coeffs);
            rhs.push_back(-r.rhs);
            break;
        default:
            break;
        }
    }
    LeqMatrixForm m{QMatrix(rows.size(), n), QMatrix(rows.size(), n), QVector(std::move(rhs))};
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            m.a(i, j) = rows[i][j];
            m.a_primed(i, j) = rows[i][n + j];
        }
    return m;
}

GeqMatrixForm to_geq_matrix(const ConstraintSystem& c) {
    require_pre_post_layout(c);
    std::vector<QVector> rows;
    std::vector<Rational> rhs;
    for (const auto& r : c.rows()) {
        switch (r.rel) {
        case Rel::Ge:
            rows.push_back(r.coeffs);
            rhs.push_back(r.rhs);
            break;
        case Rel::Le:
            rows.push_back(-r.coeffs);
            rhs.push_back(-r.rhs);
            break;
        case Rel::Eq:
            rows.push_back(r.coeffs);
            rhs.push_back(r.rhs);
            rows.push_back(-r.coeffs);
            rhs.push_back(-r.rhs);
            break;
        default:
            break;
        }
    }
    return GeqMatrixForm{QMatrix::from_rows(rows, c.dim()), QVector(std::move(rhs))};
}

ConstraintSystem merge_guarded(const LoopModel& l) {
    if (const auto* s = std::get_if<SingleLoop>(&l.body))
        return s->c;
    const auto& g = l.guarded();
    ConstraintSystem out = g.guard;
    out.append(g.update);
    return out;
}

bool is_satisfiable(const ConstraintSystem& c) { return find_point(c).has_value(); }

} // namespace linrank
