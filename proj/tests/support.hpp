#pragma once

#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "linrank/constraint.hpp"
#include "linrank/ranking.hpp"
#include "linrank/simplex.hpp"

namespace test {

using linrank::ConstraintSystem;
using linrank::QVector;
using linrank::Rational;
using BQ = boost::multiprecision::cpp_rational;

inline Rational R(long p, long q = 1) { return Rational(p, q); }

inline BQ to_bq(const Rational& r) { return BQ(r.str()); }
inline Rational from_bq(const BQ& q) { return Rational::parse(q.str()); }

inline std::string data(const std::string& rel) { return std::string(LINRANK_DATA_DIR) + "/" + rel; }

inline linrank::LoopModel log2_loop() {
    return linrank::parse_loop("vars: x1 x2\n"
                               "guard: x1 >= 2\n"
                               "update: 2*x1' <= x1, 2*x1' + 1 >= x1, x2' = x2 + 1, x2' >= 1\n");
}

/// Points of a closed satisfiable system: LP optima for random objectives,
/// points pushed along unbounded rays, and convex combinations of those.
inline std::vector<QVector> sample_points(const ConstraintSystem& c, std::mt19937_64& rng, std::size_t k) {
    std::uniform_int_distribution<int> coef(-3, 3), stretch(0, 6);
    std::vector<QVector> out;
    for (std::size_t tries = 0; out.size() < k && tries < 4 * k; ++tries) {
        linrank::LpProblem p = linrank::to_lp(c);
        QVector obj(c.dim());
        for (auto& x : obj)
            x = coef(rng);
        p.maximize(obj);
        auto res = linrank::solve(p);
        if (auto* o = std::get_if<linrank::lp::Optimal>(&res))
            out.push_back(o->point);
        else if (auto* u = std::get_if<linrank::lp::Unbounded>(&res))
            out.push_back(u->point + u->ray * Rational(stretch(rng)));
        if (out.size() >= 2 && stretch(rng) % 2 == 0) {
            std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
            Rational w(stretch(rng), 6);
            out.push_back(out[pick(rng)] * w + out[pick(rng)] * (Rational(1) - w));
        }
    }
    out.resize(std::min(out.size(), k));
    return out;
}

/// Direct primal check of a ranking function: minimizes the decrease and the
/// value of f over the loop and compares with delta and the lower bound.
inline bool valid_by_primal_lp(const ConstraintSystem& c, const linrank::RankingFunction& f) {
    const std::size_t n = f.mu.size();
    auto minimum = [&](const QVector& obj) -> std::optional<Rational> {
        linrank::LpProblem p = linrank::to_lp(c);
        p.minimize(obj);
        auto res = linrank::solve(p);
        if (auto* o = std::get_if<linrank::lp::Optimal>(&res))
            return o->value;
        return std::nullopt;
    };
    auto dec = minimum(linrank::concat(f.mu, -f.mu));
    auto val = minimum(linrank::concat(f.mu, QVector(n)));
    return dec && val && *dec >= f.delta && f.mu0 + *val >= f.lower_bound;
}

} // namespace test
