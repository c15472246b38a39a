#include "linrank/equivalence.hpp"

#include <stdexcept>

#include "linrank/ms.hpp"
#include "linrank/pr.hpp"
#include "linrank/simplex.hpp"
#include "names.hpp"

namespace linrank {

RankingSpace cone_extend(const RankingSpace& s) {
    if (s.kind != SpaceKind::MsFull)
        throw std::invalid_argument("cone_extend: requires an ms-full space");
    const std::size_t d = s.constraints.dim();
    ConstraintSystem h(detail::joined(s.params(), {"k"}));
    for (const auto& r : s.constraints.rows()) {
        QVector row = concat(r.coeffs, QVector{-r.rhs});
        h.add(std::move(row), r.rel, Rational(0));
    }
    QVector k(d + 1);
    k[d] = 1;
    h.add(std::move(k), Rel::Gt, Rational(0));
    return RankingSpace{SpaceKind::MsFull, remove_redundant(eliminate(h, d))};
}

RankingSpace mu0_upward_closure(const RankingSpace& s) {
    if (!s.has_mu0())
        throw std::invalid_argument("mu0_upward_closure: the space has no mu0 parameter");
    const std::size_t d = s.constraints.dim();
    ConstraintSystem h(detail::joined(s.params(), {"t"}));
    for (const auto& r : s.constraints.rows())
        h.add(concat(r.coeffs, QVector{-r.coeffs[0]}), r.rel, r.rhs);
    QVector t(d + 1);
    t[d] = 1;
    h.add(std::move(t), Rel::Ge, Rational(0));
    return RankingSpace{s.kind, remove_redundant(eliminate(h, d))};
}

bool contains_up_to_scaling(const RankingSpace& s, const RankingFunction& f, bool any_mu0) {
    const std::size_t n = f.mu.size();
    const bool mu0 = s.has_mu0();
    if (s.constraints.dim() != n + (mu0 ? 1 : 0))
        throw DimensionError("contains_up_to_scaling: dimension mismatch");
    const std::size_t off = mu0 ? 1 : 0;
    // Columns mu0, t: the candidate point is <mu0 or t·f.mu0, t·f.mu>, t > 0.
    ConstraintSystem sys({"mu0", "t"});
    for (const auto& r : s.constraints.rows()) {
        Rational along;
        for (std::size_t j = 0; j < n; ++j)
            along += r.coeffs[j + off] * f.mu[j];
        Rational free_part;
        if (mu0) {
            if (any_mu0)
                free_part = r.coeffs[0];
            else
                along += r.coeffs[0] * f.mu0;
        }
        sys.add(QVector{free_part, along}, r.rel, r.rhs);
    }
    sys.add(QVector{Rational(0), Rational(1)}, Rel::Gt, Rational(0));
    return find_point(sys).has_value();
}

bool CrossCheckReport::consistent() const {
    if (!agree)
        return false;
    for (const auto* flag : {&ms_witness_in_pr, &pr_witness_in_ms, &pr_within_cone_ms})
        if (flag->has_value() && !**flag)
            return false;
    if (cone_ms_vs_pr_mu0_closed && !cone_ms_vs_pr_mu0_closed->equal)
        return false;
    return true;
}

CrossCheckReport cross_check(const LoopModel& l, bool spaces) {
    CrossCheckReport rep;
    rep.ms = ms_analyze(l);
    rep.pr = pr_analyze(l);
    rep.agree = verdict_name(rep.ms) == verdict_name(rep.pr);
    const auto* ms_t = std::get_if<verdict::Terminating>(&rep.ms);
    const auto* pr_t = std::get_if<verdict::Terminating>(&rep.pr);
    if (ms_t && pr_t) {
        rep.ms_witness_in_pr = in_pr_space(l, ms_t->witness, true);
        rep.ms_witness_exact_in_pr = in_pr_space(l, ms_t->witness, false);
        rep.pr_witness_in_ms = in_denormalized_space(l, pr_t->witness);
    }
    if (!spaces || !is_satisfiable(merge_guarded(l)))
        return rep;

    RankingSpace ms = ms_space(l);
    RankingSpace pr = pr_space(l);
    RankingSpace cone = cone_extend(ms);
    rep.cone_ms_vs_pr = compare_spaces(cone.constraints, pr.constraints);
    rep.cone_ms_vs_pr_mu0_closed =
        compare_spaces(mu0_upward_closure(cone).constraints, mu0_upward_closure(pr).constraints);
    rep.pr_within_cone_ms = is_subset(pr.constraints, cone.constraints);

    return rep;
}

} // namespace linrank
