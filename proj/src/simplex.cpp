#include "linrank/simplex.hpp"

#include <stdexcept>

namespace linrank {

void LpProblem::add_row(QVector coeffs, Rel rel, Rational rhs) {
    if (coeffs.size() != num_vars)
        throw DimensionError("LP row has wrong dimension");
    if (is_strict(rel))
        throw std::invalid_argument("LP rows cannot be strict");
    rows.push_back(LpRow{std::move(coeffs), rel, std::move(rhs)});
}

bool LpProblem::is_feasible_point(const QVector& x) const {
    if (x.size() != num_vars)
        return false;
    for (std::size_t j = 0; j < num_vars; ++j)
        if (signs[j] == VarSign::Nonnegative && x[j].sign() < 0)
            return false;
    for (const auto& r : rows)
        if (!LinConstraint{r.coeffs, r.rel, r.rhs}.holds_at(x))
            return false;
    return true;
}

Rational LpProblem::objective_value(const QVector& x) const {
    return objective ? dot(*objective, x) : Rational(0);
}

QVector StandardForm::recover(const QVector& standard_point) const {
    QVector x(pos_column.size());
    for (std::size_t j = 0; j < pos_column.size(); ++j) {
        x[j] = standard_point[pos_column[j]];
        if (neg_column[j])
            x[j] -= standard_point[*neg_column[j]];
    }
    return x;
}

StandardForm to_standard_form(const LpProblem& p) {
    StandardForm sf;
    std::size_t cols = 0;
    sf.pos_column.resize(p.num_vars);
    sf.neg_column.resize(p.num_vars);
    for (std::size_t j = 0; j < p.num_vars; ++j) {
        sf.pos_column[j] = cols++;
        if (p.signs[j] == VarSign::Free)
            sf.neg_column[j] = cols++;
    }
    const std::size_t structural = cols;
    for (const auto& r : p.rows)
        if (r.rel != Rel::Eq)
            ++sf.num_slacks;
    const std::size_t total = structural + sf.num_slacks;

    auto expand = [&](const QVector& v) {
        QVector out(total);
        for (std::size_t j = 0; j < p.num_vars; ++j) {
            out[sf.pos_column[j]] = v[j];
            if (sf.neg_column[j])
                out[*sf.neg_column[j]] = -v[j];
        }
        return out;
    };

    LpProblem sp(total, VarSign::Nonnegative);
    std::size_t slack = structural;
    for (const auto& r : p.rows) {
        QVector row = expand(r.coeffs);
        if (r.rel == Rel::Le)
            row[slack++] = 1;
        else if (r.rel == Rel::Ge)
            row[slack++] = -1;
        sp.add_row(std::move(row), Rel::Eq, r.rhs);
    }
    if (p.objective) {
        sp.objective = expand(*p.objective);
        sp.direction = p.direction;
    }
    sf.problem = std::move(sp);
    return sf;
}

namespace {

/// Dense simplex tableau for  min c·x  s.t.  A x = b, x >= 0.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_(rows * (cols + 1)), basis_(rows), cost_(cols + 1) {}

    Rational& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
    Rational& rhs(std::size_t i) { return t_[i * (n_ + 1) + n_]; }
    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    std::vector<std::size_t>& basis() { return basis_; }

    /// Loads a cost vector and prices out the current basis.
    void set_cost(const std::vector<Rational>& c) {
        for (std::size_t j = 0; j < n_; ++j)
            cost_[j] = c[j];
        cost_[n_] = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            const Rational f = c[basis_[i]];
            if (f.is_zero())
                continue;
            for (std::size_t j = 0; j <= n_; ++j) {
                const Rational& a = t_[i * (n_ + 1) + j];
                if (!a.is_zero())
                    cost_[j] -= f * a;
            }
        }
    }

    Rational objective_value() const { return -cost_[n_]; }

    void pivot(std::size_t r, std::size_t c) {
        const Rational p = at(r, c);
        Rational* row = &t_[r * (n_ + 1)];
        for (std::size_t j = 0; j <= n_; ++j)
            if (!row[j].is_zero())
                row[j] /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r)
                continue;
            Rational* other = &t_[i * (n_ + 1)];
            if (other[c].is_zero())
                continue;
            const Rational f = other[c];
            for (std::size_t j = 0; j <= n_; ++j)
                if (!row[j].is_zero())
                    other[j] -= f * row[j];
        }
        if (!cost_[c].is_zero()) {
            const Rational f = cost_[c];
            for (std::size_t j = 0; j <= n_; ++j)
                if (!row[j].is_zero())
                    cost_[j] -= f * row[j];
        }
        basis_[r] = c;
    }

    /// Runs Bland's rule over columns [0, limit). Returns the entering column
    /// of an unbounded direction, or nullopt at optimality.
    std::optional<std::size_t> optimize(std::size_t limit) {
        while (true) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < limit; ++j)
                if (cost_[j].sign() < 0) {
                    entering = j;
                    break;
                }
            if (!entering)
                return std::nullopt;
            const std::size_t c = *entering;
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                const Rational& a = at(i, c);
                if (a.sign() <= 0)
                    continue;
                Rational ratio = rhs(i) / a;
                if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            if (!leave)
                return c;
            pivot(*leave, c);
        }
    }

    void drop_row(std::size_t r) {
        t_.erase(t_.begin() + r * (n_ + 1), t_.begin() + (r + 1) * (n_ + 1));
        basis_.erase(basis_.begin() + r);
        --m_;
    }

    QVector solution(std::size_t num) {
        QVector x(num);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < num)
                x[basis_[i]] = rhs(i);
        return x;
    }

private:
    std::size_t m_, n_;
    std::vector<Rational> t_;
    std::vector<std::size_t> basis_;
    std::vector<Rational> cost_;
};

struct StandardResult {
    enum Kind { Infeasible, Unbounded, Optimal } kind = Infeasible;
    QVector point;
    QVector ray;
};

/// min c·x  s.t.  A x = b, x >= 0  (rows of `sp` are all equalities).
StandardResult solve_standard(const LpProblem& sp, const std::vector<Rational>& cost) {
    const std::size_t m = sp.rows.size();
    const std::size_t n = sp.num_vars;

    // Normalize rhs >= 0 and look for ready-made unit columns (slacks).
    std::vector<QVector> rows;
    std::vector<Rational> b;
    rows.reserve(m);
    for (const auto& r : sp.rows) {
        if (r.rhs.sign() < 0) {
            rows.push_back(-r.coeffs);
            b.push_back(-r.rhs);
        } else {
            rows.push_back(r.coeffs);
            b.push_back(r.rhs);
        }
    }
    std::vector<std::optional<std::size_t>> unit(m);
    std::vector<bool> used(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        std::optional<std::size_t> where;
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
            const Rational& a = rows[i][j];
            if (a.is_zero())
                continue;
            if (where || a != Rational(1))
                ok = false;
            else
                where = i;
        }
        if (ok && where && !unit[*where]) {
            unit[*where] = j;
            used[j] = true;
        }
    }
    std::size_t artificials = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (!unit[i])
            ++artificials;

    Tableau tab(m, n + artificials);
    std::size_t next_art = n;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            tab.at(i, j) = rows[i][j];
        tab.rhs(i) = b[i];
        if (unit[i]) {
            tab.basis()[i] = *unit[i];
        } else {
            tab.at(i, next_art) = 1;
            tab.basis()[i] = next_art++;
        }
    }

    if (artificials > 0) {
        std::vector<Rational> phase1(n + artificials);
        for (std::size_t j = n; j < n + artificials; ++j)
            phase1[j] = 1;
        tab.set_cost(phase1);
        tab.optimize(n + artificials);
        if (tab.objective_value().sign() > 0)
            return {StandardResult::Infeasible, {}, {}};
        // Drive remaining artificials (at level zero) out of the basis.
        for (std::size_t i = 0; i < tab.rows();) {
            if (tab.basis()[i] < n) {
                ++i;
                continue;
            }
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < n; ++j)
                if (!tab.at(i, j).is_zero()) {
                    col = j;
                    break;
                }
            if (col) {
                tab.pivot(i, *col);
                ++i;
            } else {
                tab.drop_row(i);  // linearly dependent row
            }
        }
    }

    std::vector<Rational> phase2(n + artificials);
    for (std::size_t j = 0; j < n; ++j)
        phase2[j] = cost[j];
    tab.set_cost(phase2);
    auto unbounded = tab.optimize(n);
    StandardResult res;
    res.point = tab.solution(n);
    if (unbounded) {
        res.kind = StandardResult::Unbounded;
        res.ray = QVector(n);
        res.ray[*unbounded] = 1;
        for (std::size_t i = 0; i < tab.rows(); ++i)
            if (tab.basis()[i] < n)
                res.ray[tab.basis()[i]] = -tab.at(i, *unbounded);
        return res;
    }
    res.kind = StandardResult::Optimal;
    return res;
}

} // namespace

LpOutcome solve(const LpProblem& p) {
    for (const auto& r : p.rows)
        if (r.coeffs.size() != p.num_vars || is_strict(r.rel))
            throw std::invalid_argument("malformed LP row");
    if (p.signs.size() != p.num_vars)
        throw DimensionError("LP sign vector has wrong dimension");

    StandardForm sf = to_standard_form(p);
    const std::size_t n = sf.problem.num_vars;
    std::vector<Rational> cost(n);
    if (sf.problem.objective) {
        const bool negate = p.direction == Direction::Maximize;
        for (std::size_t j = 0; j < n; ++j)
            cost[j] = negate ? -(*sf.problem.objective)[j] : (*sf.problem.objective)[j];
    }
    StandardResult r = solve_standard(sf.problem, cost);
    switch (r.kind) {
    case StandardResult::Infeasible:
        return lp::Infeasible{};
    case StandardResult::Unbounded:
        return lp::Unbounded{sf.recover(r.point), sf.recover(r.ray)};
    case StandardResult::Optimal:
        break;
    }
    QVector x = sf.recover(r.point);
    if (!p.objective)
        return lp::FeasiblePoint{std::move(x)};
    Rational value = p.objective_value(x);
    return lp::Optimal{std::move(x), std::move(value)};
}

LpProblem dual(const LpProblem& p) {
    if (!p.objective)
        throw std::invalid_argument("dual of a problem without objective");
    const bool primal_min = p.direction == Direction::Minimize;
    // Orientation of primal rows that pairs with nonnegative dual variables.
    const Rel natural = primal_min ? Rel::Ge : Rel::Le;
    const std::size_t m = p.rows.size();

    LpProblem d(m, VarSign::Nonnegative);
    QVector dual_obj(m);
    std::vector<QVector> rows;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& r = p.rows[i];
        if (r.rel == Rel::Eq) {
            d.signs[i] = VarSign::Free;
            rows.push_back(r.coeffs);
            dual_obj[i] = r.rhs;
        } else if (r.rel == natural) {
            rows.push_back(r.coeffs);
            dual_obj[i] = r.rhs;
        } else {
            rows.push_back(-r.coeffs);
            dual_obj[i] = -r.rhs;
        }
    }
    for (std::size_t j = 0; j < p.num_vars; ++j) {
        QVector col(m);
        for (std::size_t i = 0; i < m; ++i)
            col[i] = rows[i][j];
        Rel rel = p.signs[j] == VarSign::Free ? Rel::Eq : (primal_min ? Rel::Le : Rel::Ge);
        d.add_row(std::move(col), rel, (*p.objective)[j]);
    }
    if (primal_min)
        d.maximize(std::move(dual_obj));
    else
        d.minimize(std::move(dual_obj));
    return d;
}

namespace {

/// Rows with a single positive (resp. negative) coefficient and zero rhs,
/// oriented as >= (resp. <=), are sign restrictions rather than LP rows.
std::optional<std::size_t> sign_row_variable(const LinConstraint& r) {
    if (!r.rhs.is_zero())
        return std::nullopt;
    std::optional<std::size_t> var;
    for (std::size_t j = 0; j < r.coeffs.size(); ++j) {
        if (r.coeffs[j].is_zero())
            continue;
        if (var)
            return std::nullopt;
        var = j;
    }
    if (!var)
        return std::nullopt;
    int s = r.coeffs[*var].sign();
    if ((r.rel == Rel::Ge && s > 0) || (r.rel == Rel::Le && s < 0))
        return var;
    return std::nullopt;
}

LpProblem build_lp(const ConstraintSystem& c, bool with_shared_slack) {
    const std::size_t n = c.dim();
    const std::size_t total = n + (with_shared_slack ? 1 : 0);
    LpProblem p(total, VarSign::Free);
    if (with_shared_slack)
        p.signs[n] = VarSign::Nonnegative;
    auto widen = [&](const QVector& v) {
        if (!with_shared_slack)
            return v;
        QVector out(total);
        for (std::size_t j = 0; j < n; ++j)
            out[j] = v[j];
        return out;
    };
    for (const auto& r : c.rows()) {
        if (r.is_ground()) {
            if (!r.ground_truth())
                p.add_row(QVector(total), Rel::Eq, Rational(1));  // 0 = 1
            continue;
        }
        if (!is_strict(r.rel)) {
            if (auto v = sign_row_variable(r)) {
                p.signs[*v] = VarSign::Nonnegative;
                continue;
            }
            p.add_row(widen(r.coeffs), r.rel, r.rhs);
            continue;
        }
        if (!with_shared_slack)
            throw std::invalid_argument("strict row in an LP translation");
        QVector row = widen(r.coeffs);
        if (r.rel == Rel::Lt) {
            row[n] = 1;
            p.add_row(std::move(row), Rel::Le, r.rhs);
        } else {
            row[n] = -1;
            p.add_row(std::move(row), Rel::Ge, r.rhs);
        }
    }
    return p;
}

} // namespace

LpProblem to_lp(const ConstraintSystem& c) { return build_lp(c, false); }

std::optional<QVector> strict_feasible_point(const ConstraintSystem& c) {
    if (!c.has_strict()) {
        LpOutcome out = solve(to_lp(c));
        if (auto* f = std::get_if<lp::FeasiblePoint>(&out))
            return f->point;
        return std::nullopt;
    }
    LpProblem p = build_lp(c, true);
    const std::size_t n = c.dim();
    QVector obj(n + 1);
    obj[n] = 1;
    p.maximize(obj);
    LpOutcome out = solve(p);
    QVector z;
    if (auto* o = std::get_if<lp::Optimal>(&out)) {
        if (o->value.sign() <= 0)
            return std::nullopt;
        z = o->point;
    } else if (auto* u = std::get_if<lp::Unbounded>(&out)) {
        z = u->point + u->ray;
    } else {
        return std::nullopt;
    }
    QVector x(n);
    for (std::size_t j = 0; j < n; ++j)
        x[j] = z[j];
    return x;
}

std::optional<QVector> find_point(const ConstraintSystem& c) { return strict_feasible_point(c); }

} // namespace linrank
