#include "linrank/projection.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "linrank/simplex.hpp"

namespace linrank {

namespace {

std::vector<std::string> without(const std::vector<std::string>& vars, std::size_t column) {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < vars.size(); ++j)
        if (j != column)
            out.push_back(vars[j]);
    return out;
}

QVector drop_entry(const QVector& v, std::size_t column) {
    std::vector<Rational> out;
    out.reserve(v.size() - 1);
    for (std::size_t j = 0; j < v.size(); ++j)
        if (j != column)
            out.push_back(v[j]);
    return QVector(std::move(out));
}

/// Orients >= and > rows as <= and <.
LinConstraint as_upper(const LinConstraint& r) {
    if (r.rel == Rel::Ge || r.rel == Rel::Gt)
        return r.negated();
    return r;
}

/// Scales a row to coprime integers. Equalities get a positive leading entry.
LinConstraint primitive(const LinConstraint& in) {
    LinConstraint r = as_upper(in);
    mpz_class lcm_den = 1;
    for (const auto& k : r.coeffs)
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), k.raw().get_den_mpz_t());
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), r.rhs.raw().get_den_mpz_t());
    mpz_class g = 0;
    for (const auto& k : r.coeffs)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), mpz_class(k.raw().get_num() * (lcm_den / k.raw().get_den())).get_mpz_t());
    if (g == 0)
        return r;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(),
            mpz_class(r.rhs.raw().get_num() * (lcm_den / r.rhs.raw().get_den())).get_mpz_t());
    Rational scale(lcm_den, g);
    if (r.rel == Rel::Eq) {
        for (const auto& k : r.coeffs)
            if (!k.is_zero()) {
                if (k.sign() < 0)
                    scale = -scale;
                break;
            }
    }
    r.coeffs *= scale;
    r.rhs *= scale;
    return r;
}

/// Exact NNC entailment; `c` must be nonempty.
bool entails_nonempty(const ConstraintSystem& c, const LinConstraint& k_in) {
    if (k_in.rel == Rel::Eq) {
        return entails_nonempty(c, LinConstraint{k_in.coeffs, Rel::Le, k_in.rhs}) &&
               entails_nonempty(c, LinConstraint{k_in.coeffs, Rel::Ge, k_in.rhs});
    }
    LinConstraint k = as_upper(k_in);
    if (k.is_ground())
        return k.ground_truth();
    LpProblem p = to_lp(c.closure());
    p.maximize(k.coeffs);
    LpOutcome out = solve(p);
    if (std::holds_alternative<lp::Unbounded>(out))
        return false;
    if (std::holds_alternative<lp::Infeasible>(out))
        return true;  // closure empty implies c empty
    const Rational& best = std::get<lp::Optimal>(out).value;
    if (best < k.rhs)
        return true;
    if (best > k.rhs)
        return false;
    if (k.rel == Rel::Le)
        return true;
    // Strict row whose bound is attained on the closure: implied iff the
    // boundary hyperplane misses c itself.
    ConstraintSystem boundary = c;
    boundary.add(k.coeffs, Rel::Eq, k.rhs);
    return !find_point(boundary).has_value();
}

} // namespace

ConstraintSystem empty_system(std::vector<std::string> vars) {
    ConstraintSystem out(std::move(vars));
    out.add(QVector(out.dim()), Rel::Le, Rational(-1));
    return out;
}

bool is_empty_set(const ConstraintSystem& c) { return !find_point(c).has_value(); }

ConstraintSystem eliminate(const ConstraintSystem& c, std::size_t column) {
    if (column >= c.dim())
        throw DimensionError("eliminate: column out of range");
    const auto& rows = c.rows();
    ConstraintSystem out(without(c.vars(), column));

    // Substitution through an equality, when one mentions the column.
    for (std::size_t e = 0; e < rows.size(); ++e) {
        const auto& eq = rows[e];
        if (eq.rel != Rel::Eq || eq.coeffs[column].is_zero())
            continue;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == e)
                continue;
            LinConstraint r = rows[i];
            if (!r.coeffs[column].is_zero()) {
                Rational f = r.coeffs[column] / eq.coeffs[column];
                r.coeffs -= eq.coeffs * f;
                r.rhs -= eq.rhs * f;
            }
            out.add(drop_entry(r.coeffs, column), r.rel, r.rhs);
        }
        return out;
    }

    std::vector<LinConstraint> upper, lower;  // coefficient > 0 / < 0 after orienting as <=
    for (const auto& raw : rows) {
        if (raw.coeffs[column].is_zero()) {
            out.add(drop_entry(raw.coeffs, column), raw.rel, raw.rhs);
            continue;
        }
        LinConstraint r = as_upper(raw);
        (r.coeffs[column].sign() > 0 ? upper : lower).push_back(std::move(r));
    }
    for (const auto& p : upper) {
        for (const auto& q : lower) {
            const Rational wp = -q.coeffs[column];
            const Rational wq = p.coeffs[column];
            QVector coeffs = p.coeffs * wp + q.coeffs * wq;
            Rational rhs = p.rhs * wp + q.rhs * wq;
            Rel rel = (is_strict(p.rel) || is_strict(q.rel)) ? Rel::Lt : Rel::Le;
            out.add(drop_entry(coeffs, column), rel, rhs);
        }
    }
    return out;
}

ConstraintSystem eliminate(const ConstraintSystem& c, std::string_view column) {
    auto idx = c.index_of(column);
    if (!idx)
        throw std::invalid_argument("eliminate: unknown column '" + std::string(column) + "'");
    return eliminate(c, *idx);
}

ConstraintSystem normalize(const ConstraintSystem& c) {
    struct Entry {
        Rel rel;
        Rational rhs;
    };
    // Keyed by the primitive coefficient vector (as strings for ordering).
    std::map<std::vector<std::string>, std::size_t> index;
    std::vector<std::pair<QVector, Entry>> kept;
    std::vector<LinConstraint> equalities;

    auto key_of = [](const QVector& v) {
        std::vector<std::string> k;
        k.reserve(v.size());
        for (const auto& x : v)
            k.push_back(x.str());
        return k;
    };

    for (const auto& raw : c.rows()) {
        if (raw.is_ground()) {
            if (!raw.ground_truth())
                return empty_system(c.vars());
            continue;
        }
        LinConstraint r = primitive(raw);
        if (r.rel == Rel::Eq) {
            if (std::find(equalities.begin(), equalities.end(), r) == equalities.end())
                equalities.push_back(std::move(r));
            continue;
        }
        auto key = key_of(r.coeffs);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(std::move(key), kept.size());
            kept.push_back({r.coeffs, Entry{r.rel, r.rhs}});
            continue;
        }
        Entry& e = kept[it->second].second;
        if (r.rhs < e.rhs || (r.rhs == e.rhs && is_strict(r.rel)))
            e = Entry{r.rel, r.rhs};
    }

    ConstraintSystem out(c.vars());
    for (const auto& eq : equalities)
        out.add(eq);
    std::vector<bool> merged(kept.size(), false);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (merged[i])
            continue;
        const auto& [coeffs, e] = kept[i];
        auto opposite = index.find(key_of(-coeffs));
        if (opposite != index.end() && !merged[opposite->second]) {
            const Entry& o = kept[opposite->second].second;
            // a·x <= b and -a·x <= -b pin a·x = b.
            if (e.rel == Rel::Le && o.rel == Rel::Le && o.rhs == -e.rhs) {
                merged[i] = merged[opposite->second] = true;
                out.add(primitive(LinConstraint{coeffs, Rel::Eq, e.rhs}));
                continue;
            }
            if (-o.rhs > e.rhs || (-o.rhs == e.rhs && (is_strict(e.rel) || is_strict(o.rel))))
                return empty_system(c.vars());
        }
        out.add(coeffs, e.rel, e.rhs);
    }
    return out;
}

ConstraintSystem remove_redundant(const ConstraintSystem& c) {
    ConstraintSystem cur = normalize(c);
    if (is_empty_set(cur))
        return empty_system(c.vars());
    std::vector<LinConstraint> rows = cur.rows();
    for (std::size_t i = 0; i < rows.size();) {
        ConstraintSystem rest(c.vars());
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (j != i)
                rest.add(rows[j]);
        if (entails_nonempty(rest, rows[i]))
            rows.erase(rows.begin() + i);
        else
            ++i;
    }
    return ConstraintSystem(c.vars(), std::move(rows));
}

bool entails(const ConstraintSystem& c, const LinConstraint& k) {
    if (is_empty_set(c))
        throw std::invalid_argument("entails: the premise system is unsatisfiable");
    return entails_nonempty(c, k);
}

ConstraintSystem reorder_columns(const ConstraintSystem& c, const std::vector<std::string>& order) {
    std::vector<std::optional<std::size_t>> source(order.size());
    std::vector<bool> used(c.dim(), false);
    for (std::size_t i = 0; i < order.size(); ++i) {
        source[i] = c.index_of(order[i]);
        if (source[i])
            used[*source[i]] = true;
    }
    ConstraintSystem out(order);
    for (const auto& r : c.rows()) {
        for (std::size_t j = 0; j < c.dim(); ++j)
            if (!used[j] && !r.coeffs[j].is_zero())
                throw std::invalid_argument("reorder_columns: column '" + c.vars()[j] + "' is still in use");
        QVector coeffs(order.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            if (source[i])
                coeffs[i] = r.coeffs[*source[i]];
        out.add(std::move(coeffs), r.rel, r.rhs);
    }
    return out;
}

ConstraintSystem project(const ConstraintSystem& c, const std::vector<std::string>& keep) {
    for (const auto& k : keep)
        if (!c.index_of(k))
            throw std::invalid_argument("project: unknown column '" + k + "'");
    ConstraintSystem cur = remove_redundant(c);
    if (is_empty_set(cur))
        return empty_system(keep);

    auto kept = [&](const std::string& name) { return std::find(keep.begin(), keep.end(), name) != keep.end(); };
    while (true) {
        // Cheapest column to eliminate: substitution first, then the
        // smallest product of positive and negative occurrences.
        std::optional<std::size_t> best;
        std::size_t best_cost = 0;
        for (std::size_t j = 0; j < cur.dim(); ++j) {
            if (kept(cur.vars()[j]))
                continue;
            std::size_t pos = 0, neg = 0;
            bool in_equality = false;
            for (const auto& r : cur.rows()) {
                int s = r.coeffs[j].sign();
                if (s == 0)
                    continue;
                if (r.rel == Rel::Eq)
                    in_equality = true;
                else if ((s > 0) == (r.rel == Rel::Le || r.rel == Rel::Lt))
                    ++pos;
                else
                    ++neg;
            }
            std::size_t cost = in_equality ? 0 : pos * neg + 1;
            if (!best || cost < best_cost) {
                best = j;
                best_cost = cost;
            }
        }
        if (!best)
            break;
        cur = remove_redundant(eliminate(cur, *best));
        if (is_empty_set(cur))
            return empty_system(keep);
    }
    return reorder_columns(cur, keep);
}

SpaceComparison compare_spaces(const ConstraintSystem& a, const ConstraintSystem& b) {
    if (a.vars() != b.vars())
        throw std::invalid_argument("compare_spaces: systems over different columns");
    const bool a_empty = is_empty_set(a);
    const bool b_empty = is_empty_set(b);
    if (a_empty || b_empty) {
        bool same = a_empty == b_empty;
        // An empty NNC set can have a nonempty closure; compare those separately.
        ConstraintSystem ca = a.closure(), cb = b.closure();
        bool ca_empty = is_empty_set(ca), cb_empty = is_empty_set(cb);
        bool closures = ca_empty == cb_empty;
        if (closures && !ca_empty) {
            closures = std::all_of(cb.rows().begin(), cb.rows().end(), [&](const auto& r) { return entails_nonempty(ca, r); }) &&
                       std::all_of(ca.rows().begin(), ca.rows().end(), [&](const auto& r) { return entails_nonempty(cb, r); });
        }
        return {closures, same};
    }
    auto includes = [](const ConstraintSystem& inner, const ConstraintSystem& outer) {
        return std::all_of(outer.rows().begin(), outer.rows().end(),
                           [&](const auto& r) { return entails_nonempty(inner, r); });
    };
    SpaceComparison res;
    ConstraintSystem ca = a.closure(), cb = b.closure();
    res.closures_equal = includes(ca, cb) && includes(cb, ca);
    res.equal = res.closures_equal && includes(a, b) && includes(b, a);
    return res;
}

bool equivalent(const ConstraintSystem& a, const ConstraintSystem& b) { return compare_spaces(a, b).equal; }

bool is_subset(const ConstraintSystem& a, const ConstraintSystem& b) {
    if (a.vars() != b.vars())
        throw std::invalid_argument("is_subset: systems over different columns");
    if (is_empty_set(a))
        return true;
    return std::all_of(b.rows().begin(), b.rows().end(), [&](const auto& r) { return entails_nonempty(a, r); });
}

} // namespace linrank
