#include "linrank/random_loops.hpp"

#include <algorithm>

#include "names.hpp"

namespace linrank {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

QVector random_coeffs(std::mt19937_64& rng, std::size_t dim, std::size_t active, int max_coeff) {
    QVector v(dim);
    do {
        for (std::size_t j = 0; j < active; ++j)
            v[j] = uniform(rng, 0, 2) == 0 ? 0 : uniform(rng, -max_coeff, max_coeff);
    } while (v.is_zero());
    return v;
}

/// A row through `p` with slack in {0, 1, 2}, oriented at random.
LinConstraint row_through(std::mt19937_64& rng, QVector coeffs, const QVector& p, bool allow_eq) {
    Rational at = dot(coeffs, p);
    int kind = uniform(rng, 0, allow_eq ? 5 : 4);
    Rational slack(uniform(rng, 0, 2));
    if (kind == 5)
        return {std::move(coeffs), Rel::Eq, at};
    if (kind % 2 == 0)
        return {std::move(coeffs), Rel::Le, at + slack};
    return {std::move(coeffs), Rel::Ge, at - slack};
}

} // namespace

LoopModel random_loop(std::mt19937_64& rng, const RandomLoopOptions& opt) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(opt.max_n)));
    VarSpace space(detail::numbered("x", n));
    const auto cols = space.columns();

    QVector p(2 * n);
    for (std::size_t j = 0; j < 2 * n; ++j)
        p[j] = uniform(rng, -3, 3);
    p[0] = uniform(rng, 0, 4);
    const bool decrease = std::bernoulli_distribution(opt.decrease_bias)(rng);
    if (decrease)
        p[n] = p[0] - uniform(rng, 1, 2);

    const std::size_t rows = static_cast<std::size_t>(uniform(rng, 2, static_cast<int>(opt.max_rows)));
    std::vector<LinConstraint> guard, update;
    QVector x1(2 * n);
    x1[0] = 1;
    guard.push_back({x1, Rel::Ge, Rational(0)});
    if (decrease) {
        QVector d(2 * n);
        d[n] = 1;
        d[0] = -1;
        update.push_back({d, Rel::Le, dot(d, p) + Rational(uniform(rng, 0, 1))});
    }
    while (guard.size() + update.size() < rows) {
        bool to_guard = opt.guarded && uniform(rng, 0, 2) == 0;
        if (to_guard)
            guard.push_back(row_through(rng, random_coeffs(rng, 2 * n, n, opt.max_coeff), p, false));
        else
            update.push_back(row_through(rng, random_coeffs(rng, 2 * n, 2 * n, opt.max_coeff), p, true));
    }
    std::shuffle(update.begin(), update.end(), rng);
    if (opt.guarded)
        return LoopModel::guarded(space, ConstraintSystem(cols, std::move(guard)), ConstraintSystem(cols, std::move(update)));
    std::vector<LinConstraint> all = std::move(guard);
    all.insert(all.end(), update.begin(), update.end());
    std::shuffle(all.begin(), all.end(), rng);
    return LoopModel::single(space, ConstraintSystem(cols, std::move(all)));
}

LoopModel permuted_single(const LoopModel& l, std::mt19937_64& rng) {
    ConstraintSystem c = merge_guarded(l);
    std::vector<LinConstraint> rows = c.rows();
    std::shuffle(rows.begin(), rows.end(), rng);
    return LoopModel::single(l.space, ConstraintSystem(c.vars(), std::move(rows)));
}

ConstraintSystem random_system(std::mt19937_64& rng, std::size_t dim, std::size_t rows, int max_coeff,
                               bool allow_strict) {
    QVector p(dim);
    for (std::size_t j = 0; j < dim; ++j)
        p[j] = uniform(rng, -3, 3);
    ConstraintSystem c(detail::numbered("c", dim));
    for (std::size_t i = 0; i < rows; ++i) {
        LinConstraint r = row_through(rng, random_coeffs(rng, dim, dim, max_coeff), p, true);
        if (allow_strict && r.rel != Rel::Eq && uniform(rng, 0, 3) == 0) {
            // Strict rows get positive slack so p stays a solution.
            if (r.rel == Rel::Le)
                r = {r.coeffs, Rel::Lt, dot(r.coeffs, p) + Rational(1)};
            else
                r = {r.coeffs, Rel::Gt, dot(r.coeffs, p) - Rational(1)};
        }
        c.add(std::move(r));
    }
    return c;
}

LpProblem random_bounded_lp(std::mt19937_64& rng, std::size_t vars, std::size_t rows, int max_coeff) {
    LpProblem lp(vars, VarSign::Nonnegative);
    QVector p(vars);
    for (std::size_t j = 0; j < vars; ++j)
        p[j] = uniform(rng, 0, 3);
    for (std::size_t i = 0; i < rows; ++i) {
        QVector a = random_coeffs(rng, vars, vars, max_coeff);
        Rational rhs = dot(a, p) - Rational(uniform(rng, 0, 2));
        lp.add_row(std::move(a), Rel::Ge, rhs);
    }
    QVector c(vars);
    for (std::size_t j = 0; j < vars; ++j)
        c[j] = uniform(rng, 0, max_coeff);
    lp.minimize(std::move(c));
    return lp;
}

} // namespace linrank
