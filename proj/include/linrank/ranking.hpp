#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "linrank/constraint.hpp"
#include "linrank/rational.hpp"

namespace linrank {

/// f(x) = mu0 + mu·x, decreasing by at least `delta` per iteration and
/// bounded below by `lower_bound` on every state of the loop.
struct RankingFunction {
    Rational mu0;
    QVector mu;
    Rational delta{1};
    Rational lower_bound{0};

    Rational eval(const QVector& x) const { return mu0 + dot(mu, x); }
    friend bool operator==(const RankingFunction&, const RankingFunction&) = default;
};

enum class SpaceKind { Svg, MsFull, MsDecreasing, MsBounded, Pr };

std::string_view to_string(SpaceKind k);

/// Constraints over mu0, mu1..muN (mu1..muN only for SVG spaces).
struct RankingSpace {
    SpaceKind kind = SpaceKind::MsFull;
    ConstraintSystem constraints;

    const std::vector<std::string>& params() const { return constraints.vars(); }
    bool has_mu0() const;
    bool is_empty() const;
    /// Is the point <mu0, mu> (or <mu> without mu0) a member?
    bool contains(const RankingFunction& f) const;
};

/// "mu0", "mu1", ..., "muN"
std::vector<std::string> param_names(std::size_t n, bool with_mu0 = true);

namespace verdict {

struct Terminating {
    RankingFunction witness;
};
struct TriviallyTerminating {};
struct Unknown {};

} // namespace verdict

using Verdict = std::variant<verdict::Terminating, verdict::TriviallyTerminating, verdict::Unknown>;

/// "terminating", "trivially-terminating" or "unknown".
std::string_view verdict_name(const Verdict& v);
bool is_terminating(const Verdict& v);

/// Does `f` decrease by at least f.delta and stay >= f.lower_bound on every
/// point of `c` (a nonempty system over <x, x'>)? Decided by entailment.
bool certifies(const ConstraintSystem& c, const RankingFunction& f);

} // namespace linrank
