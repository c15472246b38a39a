#include "linrank/ms.hpp"

#include <stdexcept>

#include "linrank/projection.hpp"
#include "linrank/simplex.hpp"
#include "names.hpp"

namespace linrank {

using detail::joined;
using detail::numbered;

std::string_view to_string(SpaceKind k) {
    switch (k) {
    case SpaceKind::Svg: return "svg";
    case SpaceKind::MsFull: return "ms-full";
    case SpaceKind::MsDecreasing: return "ms-decreasing";
    case SpaceKind::MsBounded: return "ms-bounded";
    case SpaceKind::Pr: return "pr";
    }
    return "?";
}

std::vector<std::string> param_names(std::size_t n, bool with_mu0) {
    std::vector<std::string> out;
    if (with_mu0)
        out.push_back("mu0");
    auto mus = numbered("mu", n);
    out.insert(out.end(), mus.begin(), mus.end());
    return out;
}

bool RankingSpace::has_mu0() const { return !params().empty() && params().front() == "mu0"; }

bool RankingSpace::is_empty() const { return is_empty_set(constraints); }

bool RankingSpace::contains(const RankingFunction& f) const {
    QVector point = has_mu0() ? concat(QVector{f.mu0}, f.mu) : f.mu;
    if (point.size() != constraints.dim())
        throw DimensionError("ranking function does not match the space dimension");
    return constraints.holds_at(point);
}

std::string_view verdict_name(const Verdict& v) {
    if (std::holds_alternative<verdict::Terminating>(v))
        return "terminating";
    if (std::holds_alternative<verdict::TriviallyTerminating>(v))
        return "trivially-terminating";
    return "unknown";
}

bool is_terminating(const Verdict& v) { return !std::holds_alternative<verdict::Unknown>(v); }

bool certifies(const ConstraintSystem& c, const RankingFunction& f) {
    const std::size_t n = f.mu.size();
    if (c.dim() != 2 * n)
        throw DimensionError("certifies: system and ranking function disagree on n");
    QVector decrease = concat(f.mu, -f.mu);
    QVector bound = concat(f.mu, QVector(n));
    return entails(c, LinConstraint{decrease, Rel::Ge, f.delta}) &&
           entails(c, LinConstraint{bound, Rel::Ge, f.lower_bound - f.mu0});
}

namespace {

ConstraintSystem nonnegative(const ConstraintSystem& c) {
    ConstraintSystem out = c;
    for (std::size_t j = 0; j < c.dim(); ++j) {
        QVector e(c.dim());
        e[j] = 1;
        out.add(std::move(e), Rel::Ge, Rational(0));
    }
    return out;
}

void add_sign_rows(ConstraintSystem& s, std::size_t first, std::size_t count) {
    for (std::size_t i = first; i < first + count; ++i) {
        QVector e(s.dim());
        e[i] = 1;
        s.add(std::move(e), Rel::Ge, Rational(0));
    }
}

} // namespace

ConstraintSystem build_svg_system(const ConstraintSystem& c) {
    const GeqMatrixForm g = to_geq_matrix(c);
    const std::size_t m = g.rows();
    const std::size_t n = c.dim() / 2;
    ConstraintSystem s(joined(numbered("y", m), numbered("mu", n)));
    for (std::size_t j = 0; j < 2 * n; ++j) {
        QVector row(m + n);
        for (std::size_t i = 0; i < m; ++i)
            row[i] = g.a(i, j);
        if (j < n)
            row[m + j] = -1;
        else
            row[m + j - n] = 1;
        s.add(std::move(row), Rel::Le, Rational(0));
    }
    QVector obj(m + n);
    for (std::size_t i = 0; i < m; ++i)
        obj[i] = -g.b[i];
    s.add(std::move(obj), Rel::Le, Rational(-1));
    add_sign_rows(s, 0, m + n);
    return s;
}

Verdict svg_analyze(const ConstraintSystem& c) {
    const std::size_t n = c.dim() / 2;
    if (!is_satisfiable(nonnegative(c)))
        return verdict::TriviallyTerminating{};
    ConstraintSystem s = build_svg_system(c);
    if (auto p = find_point(s)) {
        RankingFunction f{Rational(0), slice(*p, s.dim() - n, n)};
        return verdict::Terminating{std::move(f)};
    }
    return verdict::Unknown{};
}

RankingSpace svg_space(const ConstraintSystem& c) {
    if (!is_satisfiable(nonnegative(c)))
        throw std::invalid_argument("svg_space: the clause has no nonnegative solution");
    const std::size_t n = c.dim() / 2;
    return RankingSpace{SpaceKind::Svg, project(build_svg_system(c), param_names(n, false))};
}

RankingSpace svg_space(const std::vector<ConstraintSystem>& clauses) {
    if (clauses.empty())
        throw std::invalid_argument("svg_space: no clauses");
    ConstraintSystem all = svg_space(clauses.front()).constraints;
    for (std::size_t i = 1; i < clauses.size(); ++i)
        all.append(svg_space(clauses[i]).constraints);
    return RankingSpace{SpaceKind::Svg, remove_redundant(all)};
}

MsSystems build_ms_systems(const ConstraintSystem& c) {
    const GeqMatrixForm g = to_geq_matrix(c);
    const std::size_t m = g.rows();
    const std::size_t n = c.dim() / 2;

    ConstraintSystem dec(joined(numbered("y", m), numbered("mu", n)));
    QVector by(m + n);
    for (std::size_t i = 0; i < m; ++i)
        by[i] = g.b[i];
    dec.add(std::move(by), Rel::Ge, Rational(1));
    for (std::size_t j = 0; j < 2 * n; ++j) {
        QVector row(m + n);
        for (std::size_t i = 0; i < m; ++i)
            row[i] = g.a(i, j);
        if (j < n)
            row[m + j] = -1;
        else
            row[m + j - n] = 1;
        dec.add(std::move(row), Rel::Eq, Rational(0));
    }
    add_sign_rows(dec, 0, m);

    // Extra column x0 pinned to 1 by the rows x0 >= 1 and -x0 >= -1.
    const std::size_t mz = m + 2;
    ConstraintSystem bnd(joined(numbered("z", mz), param_names(n)));
    const std::size_t mu0 = mz;
    QVector bz(mz + 1 + n);
    bz[0] = 1;
    bz[1] = -1;
    for (std::size_t i = 0; i < m; ++i)
        bz[i + 2] = g.b[i];
    bnd.add(std::move(bz), Rel::Ge, Rational(0));
    {
        QVector row(mz + 1 + n);
        row[0] = 1;
        row[1] = -1;
        row[mu0] = -1;
        bnd.add(std::move(row), Rel::Eq, Rational(0));
    }
    for (std::size_t j = 0; j < 2 * n; ++j) {
        QVector row(mz + 1 + n);
        for (std::size_t i = 0; i < m; ++i)
            row[i + 2] = g.a(i, j);
        if (j < n)
            row[mu0 + 1 + j] = -1;
        bnd.add(std::move(row), Rel::Eq, Rational(0));
    }
    add_sign_rows(bnd, 0, mz);
    return {std::move(dec), std::move(bnd)};
}

ConstraintSystem conjoin(const MsSystems& s) {
    std::vector<std::string> ys, zs, params;
    for (const auto& v : s.decrease.vars())
        if (v[0] == 'y')
            ys.push_back(v);
    for (const auto& v : s.bounded.vars())
        (v[0] == 'z' ? zs : params).push_back(v);
    auto order = joined(joined(ys, zs), params);
    ConstraintSystem out = reorder_columns(s.decrease, order);
    out.append(reorder_columns(s.bounded, order));
    return out;
}

namespace {

ConstraintSystem satisfiable_body(const LoopModel& l, const char* what) {
    ConstraintSystem c = merge_guarded(l);
    if (!is_satisfiable(c))
        throw std::invalid_argument(std::string(what) + ": the loop constraint is unsatisfiable");
    return c;
}

} // namespace

Verdict ms_analyze(const LoopModel& l) {
    ConstraintSystem c = merge_guarded(l);
    if (!is_satisfiable(c))
        return verdict::TriviallyTerminating{};
    ConstraintSystem s = conjoin(build_ms_systems(c));
    auto p = find_point(s);
    if (!p)
        return verdict::Unknown{};
    const std::size_t n = l.space.n();
    const std::size_t base = s.dim() - n - 1;
    RankingFunction f{(*p)[base], slice(*p, base + 1, n)};
    if (!certifies(c, f))
        throw std::logic_error("ms_analyze: extracted witness failed certification");
    return verdict::Terminating{std::move(f)};
}

RankingSpace ms_decreasing_space(const LoopModel& l) {
    ConstraintSystem c = satisfiable_body(l, "ms_decreasing_space");
    const auto params = param_names(l.space.n());
    ConstraintSystem dec = build_ms_systems(c).decrease;
    auto ys = std::vector<std::string>(dec.vars().begin(), dec.vars().end() - static_cast<long>(l.space.n()));
    ConstraintSystem widened = reorder_columns(dec, joined(ys, params));
    return RankingSpace{SpaceKind::MsDecreasing, project(widened, params)};
}

RankingSpace ms_bounded_space(const LoopModel& l) {
    ConstraintSystem c = satisfiable_body(l, "ms_bounded_space");
    return RankingSpace{SpaceKind::MsBounded, project(build_ms_systems(c).bounded, param_names(l.space.n()))};
}

RankingSpace ms_space(const LoopModel& l) {
    // The y and z blocks share only the parameters, so projecting them
    // separately and conjoining gives the projection of the conjunction.
    ConstraintSystem all = ms_decreasing_space(l).constraints;
    all.append(ms_bounded_space(l).constraints);
    return RankingSpace{SpaceKind::MsFull, remove_redundant(all)};
}

bool in_denormalized_space(const RankingSpace& s, const RankingFunction& f) {
    if (s.kind != SpaceKind::MsFull)
        throw std::invalid_argument("in_denormalized_space: requires an ms-full space");
    const std::size_t n = f.mu.size();
    if (s.constraints.dim() != n + 1)
        throw DimensionError("in_denormalized_space: dimension mismatch");
    // Columns mu0, t with mu = t * f.mu and t > 0.
    ConstraintSystem sys({"mu0", "t"});
    for (const auto& r : s.constraints.rows()) {
        Rational along;
        for (std::size_t j = 0; j < n; ++j)
            along += r.coeffs[j + 1] * f.mu[j];
        sys.add(QVector{r.coeffs[0], along}, r.rel, r.rhs);
    }
    sys.add(QVector{Rational(0), Rational(1)}, Rel::Gt, Rational(0));
    return find_point(sys).has_value();
}

bool in_denormalized_space(const LoopModel& l, const RankingFunction& f) {
    ConstraintSystem c = satisfiable_body(l, "in_denormalized_space");
    const std::size_t n = l.space.n();
    if (f.mu.size() != n)
        throw DimensionError("in_denormalized_space: ranking function does not match the loop");
    ConstraintSystem base = conjoin(build_ms_systems(c));
    const std::size_t t = base.dim();
    ConstraintSystem s = reorder_columns(base, joined(base.vars(), {"t"}));
    for (std::size_t j = 0; j < n; ++j) {
        QVector row(t + 1);
        row[t - n + j] = 1;
        row[t] = -f.mu[j];
        s.add(std::move(row), Rel::Eq, Rational(0));
    }
    QVector pos(t + 1);
    pos[t] = 1;
    s.add(std::move(pos), Rel::Gt, Rational(0));
    return find_point(s).has_value();
}

} // namespace linrank
