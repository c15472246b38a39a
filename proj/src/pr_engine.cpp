#include "linrank/pr.hpp"

#include <algorithm>
#include <stdexcept>

#include "linrank/projection.hpp"
#include "linrank/simplex.hpp"
#include "names.hpp"

namespace linrank {

using detail::joined;
using detail::numbered;

namespace {

bool nonnegative(const QVector& v) {
    for (const auto& x : v)
        if (x.sign() < 0)
            return false;
    return true;
}

void add_sign_rows(ConstraintSystem& s, std::size_t first, std::size_t count) {
    for (std::size_t i = first; i < first + count; ++i) {
        QVector e(s.dim());
        e[i] = 1;
        s.add(std::move(e), Rel::Ge, Rational(0));
    }
}

void add_objective_row(ConstraintSystem& s, QVector row, bool normalized) {
    if (normalized)
        s.add(std::move(row), Rel::Le, Rational(-1));
    else
        s.add(std::move(row), Rel::Lt, Rational(0));
}

/// Appends the parameter columns and the rows mu = w^T M', mu0 = u^T b
/// where `mu_of` / `mu0_of` give those coefficients per original column.
ConstraintSystem with_parameters(const ConstraintSystem& s, std::size_t n, const QMatrix& mu_of,
                                 const QVector& mu0_of) {
    const auto params = param_names(n);
    ConstraintSystem out = reorder_columns(s, joined(s.vars(), params));
    const std::size_t k = s.dim();
    {
        QVector row(k + n + 1);
        for (std::size_t i = 0; i < k; ++i)
            row[i] = -mu0_of[i];
        row[k] = 1;
        out.add(std::move(row), Rel::Eq, Rational(0));
    }
    for (std::size_t j = 0; j < n; ++j) {
        QVector row(k + n + 1);
        for (std::size_t i = 0; i < k; ++i)
            row[i] = -mu_of(i, j);
        row[k + 1 + j] = 1;
        out.add(std::move(row), Rel::Eq, Rational(0));
    }
    return out;
}

struct GuardedForms {
    QMatrix a_b;
    QVector b_b;
    LeqMatrixForm c;
};

GuardedForms guarded_forms(const LoopModel& l) {
    if (!l.is_guarded())
        throw std::invalid_argument("the alternative formulation needs a guarded loop");
    LeqMatrixForm g = to_leq_matrix(l.guarded().guard);
    return {std::move(g.a), std::move(g.b), to_leq_matrix(l.guarded().update)};
}

} // namespace

ConstraintSystem build_pr_system(const LeqMatrixForm& m, bool normalized) {
    const std::size_t k = m.rows();
    const std::size_t n = m.a.cols();
    ConstraintSystem s(joined(numbered("lambda1_", k), numbered("lambda2_", k)));
    for (std::size_t j = 0; j < n; ++j) {
        QVector a(2 * k), b(2 * k), c(2 * k);
        for (std::size_t i = 0; i < k; ++i) {
            a[i] = m.a_primed(i, j);
            b[i] = m.a(i, j);
            b[k + i] = -m.a(i, j);
            c[k + i] = m.a(i, j) + m.a_primed(i, j);
        }
        s.add(std::move(a), Rel::Eq, Rational(0));
        s.add(std::move(b), Rel::Eq, Rational(0));
        s.add(std::move(c), Rel::Eq, Rational(0));
    }
    QVector d(2 * k);
    for (std::size_t i = 0; i < k; ++i)
        d[k + i] = m.b[i];
    add_objective_row(s, std::move(d), normalized);
    add_sign_rows(s, 0, 2 * k);
    return s;
}

bool satisfies_pr(const PrWitness& w, const LeqMatrixForm& m) {
    const std::size_t k = m.rows();
    if (w.lambda1.size() != k || w.lambda2.size() != k)
        return false;
    if (!nonnegative(w.lambda1) || !nonnegative(w.lambda2))
        return false;
    return vec_mat(w.lambda1, m.a_primed).is_zero() && vec_mat(w.lambda1 - w.lambda2, m.a).is_zero() &&
           vec_mat(w.lambda2, m.a + m.a_primed).is_zero() && dot(w.lambda2, m.b).sign() < 0;
}

RankingFunction extract_rf(const PrWitness& w, const LeqMatrixForm& m) {
    if (!satisfies_pr(w, m))
        throw std::invalid_argument("extract_rf: the vectors do not solve the PR system");
    return RankingFunction{dot(w.lambda1, m.b), vec_mat(w.lambda2, m.a_primed), -dot(w.lambda2, m.b), Rational(0)};
}

Verdict pr_analyze(const LoopModel& l) {
    ConstraintSystem c = merge_guarded(l);
    if (!is_satisfiable(c))
        return verdict::TriviallyTerminating{};
    LeqMatrixForm m = to_leq_matrix(c);
    auto p = find_point(build_pr_system(m, true));
    if (!p)
        return verdict::Unknown{};
    const std::size_t k = m.rows();
    PrWitness w{slice(*p, 0, k), slice(*p, k, k)};
    if (!satisfies_pr(w, m))
        throw std::logic_error("pr_analyze: solver point violates the PR system");
    return verdict::Terminating{extract_rf(w, m)};
}

RankingSpace pr_space(const LeqMatrixForm& m) {
    const std::size_t k = m.rows();
    const std::size_t n = m.a.cols();
    ConstraintSystem s = build_pr_system(m, false);
    QMatrix mu_of(2 * k, n);
    QVector mu0_of(2 * k);
    for (std::size_t i = 0; i < k; ++i) {
        mu0_of[i] = m.b[i];
        for (std::size_t j = 0; j < n; ++j)
            mu_of(k + i, j) = m.a_primed(i, j);
    }
    return RankingSpace{SpaceKind::Pr, project(with_parameters(s, n, mu_of, mu0_of), param_names(n))};
}

RankingSpace pr_space(const LoopModel& l) {
    ConstraintSystem c = merge_guarded(l);
    if (!is_satisfiable(c))
        throw std::invalid_argument("pr_space: the loop constraint is unsatisfiable");
    return pr_space(to_leq_matrix(c));
}

ConstraintSystem build_pr_alt_system(const LoopModel& l, bool normalized) {
    const GuardedForms f = guarded_forms(l);
    const std::size_t r = f.b_b.size();
    const std::size_t s = f.c.rows();
    const std::size_t n = l.space.n();
    const std::size_t k = 2 * r + s;
    ConstraintSystem sys(joined(joined(numbered("v1_", r), numbered("v2_", r)), numbered("v3_", s)));
    for (std::size_t j = 0; j < n; ++j) {
        QVector a(k), b(k);
        for (std::size_t i = 0; i < r; ++i) {
            a[i] = f.a_b(i, j);
            a[r + i] = -f.a_b(i, j);
            b[r + i] = f.a_b(i, j);
        }
        for (std::size_t i = 0; i < s; ++i) {
            a[2 * r + i] = -f.c.a(i, j);
            b[2 * r + i] = f.c.a(i, j) + f.c.a_primed(i, j);
        }
        sys.add(std::move(a), Rel::Eq, Rational(0));
        sys.add(std::move(b), Rel::Eq, Rational(0));
    }
    QVector d(k);
    for (std::size_t i = 0; i < r; ++i)
        d[r + i] = f.b_b[i];
    for (std::size_t i = 0; i < s; ++i)
        d[2 * r + i] = f.c.b[i];
    add_objective_row(sys, std::move(d), normalized);
    add_sign_rows(sys, 0, k);
    return sys;
}

bool satisfies_pr_alt(const PrAltWitness& w, const LoopModel& l) {
    const GuardedForms f = guarded_forms(l);
    const std::size_t r = f.b_b.size();
    if (w.v1.size() != r || w.v2.size() != r || w.v3.size() != f.c.rows())
        return false;
    if (!nonnegative(w.v1) || !nonnegative(w.v2) || !nonnegative(w.v3))
        return false;
    return (vec_mat(w.v1 - w.v2, f.a_b) - vec_mat(w.v3, f.c.a)).is_zero() &&
           (vec_mat(w.v2, f.a_b) + vec_mat(w.v3, f.c.a + f.c.a_primed)).is_zero() &&
           (dot(w.v2, f.b_b) + dot(w.v3, f.c.b)).sign() < 0;
}

PrWitness reconstruct(const PrAltWitness& w, std::size_t update_rows) {
    if (w.v3.size() != update_rows)
        throw DimensionError("reconstruct: v3 does not match the update rows");
    return PrWitness{concat(w.v1, QVector(update_rows)), concat(w.v2, w.v3)};
}

namespace {

/// Generators of the cone {w >= 0 : w^T A' = 0}, one per minimal support.
std::vector<QVector> primed_free_combinations(const LeqMatrixForm& m) {
    const std::size_t s = m.rows();
    std::vector<QVector> gens;
    for (std::size_t i = 0; i < s; ++i) {
        QVector e(s);
        e[i] = 1;
        gens.push_back(std::move(e));
    }
    auto support = [](const QVector& w) {
        std::vector<bool> out(w.size());
        for (std::size_t i = 0; i < w.size(); ++i)
            out[i] = !w[i].is_zero();
        return out;
    };
    auto subset = [](const std::vector<bool>& a, const std::vector<bool>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] && !b[i])
                return false;
        return true;
    };
    for (std::size_t j = 0; j < m.a_primed.cols(); ++j) {
        std::vector<QVector> zero, pos, neg, next;
        for (auto& w : gens) {
            Rational v;
            for (std::size_t i = 0; i < s; ++i)
                v += w[i] * m.a_primed(i, j);
            (v.is_zero() ? zero : v.sign() > 0 ? pos : neg).push_back(std::move(w));
        }
        next = std::move(zero);
        auto value = [&](const QVector& w) {
            Rational v;
            for (std::size_t i = 0; i < s; ++i)
                v += w[i] * m.a_primed(i, j);
            return v;
        };
        for (const auto& p : pos)
            for (const auto& q : neg)
                next.push_back(p * (-value(q)) + q * value(p));
        std::vector<std::vector<bool>> sup;
        for (const auto& w : next)
            sup.push_back(support(w));
        gens.clear();
        for (std::size_t a = 0; a < next.size(); ++a) {
            bool minimal = true;
            for (std::size_t b = 0; b < next.size() && minimal; ++b) {
                if (a == b || !subset(sup[b], sup[a]))
                    continue;
                // Equal supports are proportional; keep the first.
                if (sup[a] != sup[b] || b < a)
                    minimal = false;
            }
            if (minimal)
                gens.push_back(next[a]);
        }
    }
    return gens;
}

} // namespace

LoopModel complete_guard(const LoopModel& l) {
    if (!l.is_guarded())
        throw std::invalid_argument("complete_guard: the loop is not guarded");
    const auto& g = l.guarded();
    const std::size_t n = l.space.n();
    const LeqMatrixForm um = to_leq_matrix(g.update);
    ConstraintSystem guard = g.guard;
    for (const auto& w : primed_free_combinations(um)) {
        QVector coeffs = concat(vec_mat(w, um.a), QVector(n));
        LinConstraint row{std::move(coeffs), Rel::Le, dot(w, um.b)};
        if (std::find(guard.rows().begin(), guard.rows().end(), row) == guard.rows().end())
            guard.add(std::move(row));
    }
    return LoopModel::guarded(l.space, std::move(guard), g.update);
}

bool in_pr_space(const LoopModel& l, const RankingFunction& f, bool any_mu0) {
    const LeqMatrixForm m = to_leq_matrix(merge_guarded(l));
    const std::size_t k = m.rows();
    const std::size_t n = l.space.n();
    if (f.mu.size() != n)
        throw DimensionError("in_pr_space: ranking function does not match the loop");
    // Columns lambda1, lambda2, t with lambda2^T A' = t mu, lambda1^T b = t mu0.
    ConstraintSystem s = reorder_columns(build_pr_system(m, false),
                                         joined(joined(numbered("lambda1_", k), numbered("lambda2_", k)), {"t"}));
    const std::size_t t = 2 * k;
    for (std::size_t j = 0; j < n; ++j) {
        QVector row(2 * k + 1);
        for (std::size_t i = 0; i < k; ++i)
            row[k + i] = m.a_primed(i, j);
        row[t] = -f.mu[j];
        s.add(std::move(row), Rel::Eq, Rational(0));
    }
    if (!any_mu0) {
        QVector row(2 * k + 1);
        for (std::size_t i = 0; i < k; ++i)
            row[i] = m.b[i];
        row[t] = -f.mu0;
        s.add(std::move(row), Rel::Eq, Rational(0));
    }
    QVector pos(2 * k + 1);
    pos[t] = 1;
    s.add(std::move(pos), Rel::Gt, Rational(0));
    return find_point(s).has_value();
}

Verdict pr_alt_analyze(const LoopModel& in) {
    LoopModel l = complete_guard(in);
    ConstraintSystem c = merge_guarded(l);
    if (!is_satisfiable(c))
        return verdict::TriviallyTerminating{};
    ConstraintSystem sys = build_pr_alt_system(l, true);
    auto p = find_point(sys);
    if (!p)
        return verdict::Unknown{};
    const GuardedForms f = guarded_forms(l);
    const std::size_t r = f.b_b.size();
    const std::size_t s = f.c.rows();
    PrAltWitness w{slice(*p, 0, r), slice(*p, r, r), slice(*p, 2 * r, s)};
    if (!satisfies_pr_alt(w, l))
        throw std::logic_error("pr_alt_analyze: solver point violates the alternative system");
    PrWitness lambda = reconstruct(w, s);
    return verdict::Terminating{extract_rf(lambda, to_leq_matrix(c))};
}

RankingSpace pr_alt_space(const LoopModel& in) {
    LoopModel l = complete_guard(in);
    if (!is_satisfiable(merge_guarded(l)))
        throw std::invalid_argument("pr_alt_space: the loop constraint is unsatisfiable");
    const GuardedForms f = guarded_forms(l);
    const std::size_t r = f.b_b.size();
    const std::size_t s = f.c.rows();
    const std::size_t n = l.space.n();
    ConstraintSystem sys = build_pr_alt_system(l, false);
    QMatrix mu_of(2 * r + s, n);
    QVector mu0_of(2 * r + s);
    for (std::size_t i = 0; i < r; ++i)
        mu0_of[i] = f.b_b[i];
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < n; ++j)
            mu_of(2 * r + i, j) = f.c.a_primed(i, j);
    return RankingSpace{SpaceKind::Pr, project(with_parameters(sys, n, mu_of, mu0_of), param_names(n))};
}

} // namespace linrank
