#include "cli/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "linrank/projection.hpp"

namespace linrank::cli {

json to_json(const Rational& r) { return r.str(); }

json to_json(const QVector& v) {
    json out = json::array();
    for (const auto& x : v)
        out.push_back(to_json(x));
    return out;
}

json to_json(const RankingFunction& f) {
    return {{"mu0", to_json(f.mu0)}, {"mu", to_json(f.mu)}, {"delta", to_json(f.delta)}};
}

json to_json(const RankingSpace& s) {
    json rows = json::array();
    for (const auto& r : s.constraints.rows())
        rows.push_back({{"coeffs", to_json(r.coeffs)}, {"rel", std::string(to_string(r.rel))}, {"const", to_json(r.rhs)}});
    return {{"kind", std::string(to_string(s.kind))}, {"params", s.params()}, {"constraints", rows}, {"empty", s.is_empty()}};
}

namespace {

json verdict_json(const Verdict& v) {
    json out = {{"status", std::string(verdict_name(v))}};
    if (const auto* t = std::get_if<verdict::Terminating>(&v))
        out["ranking_function"] = to_json(t->witness);
    return out;
}

json comparison_json(const std::optional<SpaceComparison>& c) {
    if (!c)
        return nullptr;
    std::string status = c->equal ? "equal" : c->closures_equal ? "closure-equal, strict faces differ" : "different";
    return {{"closures_equal", c->closures_equal}, {"equal", c->equal}, {"status", status}};
}

json optional_json(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

Rel rel_from_string(const std::string& s) {
    for (Rel r : {Rel::Le, Rel::Lt, Rel::Eq, Rel::Ge, Rel::Gt})
        if (to_string(r) == s)
            return r;
    throw std::invalid_argument("unknown relation '" + s + "'");
}

} // namespace

json to_json(const CrossCheckReport& r) {
    return {{"status", r.consistent() ? "consistent" : "inconsistent"},
            {"method", "both"},
            {"ms", verdict_json(r.ms)},
            {"pr", verdict_json(r.pr)},
            {"agree", r.agree},
            {"ms_witness_in_pr", optional_json(r.ms_witness_in_pr)},
            {"ms_witness_exact_in_pr", optional_json(r.ms_witness_exact_in_pr)},
            {"pr_witness_in_ms", optional_json(r.pr_witness_in_ms)},
            {"pr_within_cone_ms", optional_json(r.pr_within_cone_ms)},
            {"cone_ms_vs_pr", comparison_json(r.cone_ms_vs_pr)},
            {"cone_ms_vs_pr_mu0_closed", comparison_json(r.cone_ms_vs_pr_mu0_closed)}};
}

Rational rational_from_json(const json& j) { return Rational::parse(j.get<std::string>()); }

RankingSpace space_from_json(const json& j, SpaceKind kind) {
    ConstraintSystem c(j.at("params").get<std::vector<std::string>>());
    for (const auto& row : j.at("constraints")) {
        std::vector<Rational> coeffs;
        for (const auto& x : row.at("coeffs"))
            coeffs.push_back(rational_from_json(x));
        c.add(QVector(std::move(coeffs)), rel_from_string(row.at("rel").get<std::string>()),
              rational_from_json(row.at("const")));
    }
    return RankingSpace{kind, std::move(c)};
}

std::string render(const RankingFunction& f, const std::vector<std::string>& vars) {
    std::ostringstream os;
    os << "f(";
    for (std::size_t i = 0; i < vars.size(); ++i)
        os << (i ? ", " : "") << vars[i];
    os << ") = ";
    LinConstraint as_row{f.mu, Rel::Eq, Rational(0)};
    std::string body = format_constraint(as_row, vars);
    body = body.substr(0, body.rfind(" = "));
    if (f.mu0.is_zero())
        os << body;
    else if (f.mu.is_zero())
        os << f.mu0;
    else
        os << f.mu0 << (body[0] == '-' ? " - " + body.substr(1) : " + " + body);
    os << "\nmu0 = " << f.mu0 << '\n';
    for (std::size_t i = 0; i < f.mu.size(); ++i)
        os << "mu" << i + 1 << " = " << f.mu[i] << '\n';
    os << "delta = " << f.delta << '\n';
    return os.str();
}

std::string render(const RankingSpace& s) {
    std::ostringstream os;
    if (s.is_empty()) {
        os << "empty space\n";
        return os.str();
    }
    if (s.constraints.empty())
        os << "  (all parameter values)\n";
    for (const auto& r : s.constraints.rows()) {
        // Rows whose leading coefficient is negative read better negated.
        auto lead = std::find_if(r.coeffs.begin(), r.coeffs.end(), [](const Rational& x) { return !x.is_zero(); });
        bool flip = lead != r.coeffs.end() && lead->sign() < 0;
        os << "  " << format_constraint(flip ? r.negated() : r, s.params()) << '\n';
    }
    return os.str();
}

std::string render(const CrossCheckReport& r) {
    std::ostringstream os;
    auto flag = [](const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "n/a"; };
    auto cmp = [](const std::optional<SpaceComparison>& c) -> std::string {
        if (!c)
            return "n/a";
        return c->equal ? "equal" : c->closures_equal ? "closure-equal, strict faces differ" : "different";
    };
    os << "ms: " << verdict_name(r.ms) << '\n';
    os << "pr: " << verdict_name(r.pr) << '\n';
    os << "agree: " << (r.agree ? "yes" : "no") << '\n';
    os << "ms witness in pr space: " << flag(r.ms_witness_in_pr) << '\n';
    os << "ms witness in pr space with its own mu0: " << flag(r.ms_witness_exact_in_pr) << '\n';
    os << "pr witness in denormalized ms space: " << flag(r.pr_witness_in_ms) << '\n';
    os << "pr space within cone(ms space): " << flag(r.pr_within_cone_ms) << '\n';
    os << "cone(ms space) vs pr space: " << cmp(r.cone_ms_vs_pr) << '\n';
    os << "same, mu0 closed upward: " << cmp(r.cone_ms_vs_pr_mu0_closed) << '\n';
    return os.str();
}

} // namespace linrank::cli
