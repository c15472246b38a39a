#include <doctest.h>

#include <random>

#include "linrank/ms.hpp"
#include "linrank/projection.hpp"
#include "linrank/random_loops.hpp"
#include "support.hpp"

using namespace linrank;
using test::R;

namespace {

ConstraintSystem body(const char* text) { return merge_guarded(parse_loop(text)); }

const char* const kLog2Clause = "vars: x1 x2\nsingle: x1 >= 2, 2*x1' + 1 >= x1, 2*x1' <= x1, x2 = x2' + 1";
const char* const kCountdown = "vars: x\nsingle: x >= 0, x' = x - 1";
const char* const kDiverge = "vars: x\nsingle: x >= 0, x' = x + 1";

ConstraintSystem reference_ms_space() {
    return ConstraintSystem({"mu0", "mu1", "mu2"}, {{{R(0), R(1), R(-1)}, Rel::Ge, R(1)},
                                                    {{R(0), R(0), R(1)}, Rel::Ge, R(0)},
                                                    {{R(1), R(2), R(0)}, Rel::Ge, R(0)}});
}

ConstraintSystem nonneg(const ConstraintSystem& c) {
    ConstraintSystem out = c;
    for (std::size_t j = 0; j < c.dim(); ++j) {
        QVector e(c.dim());
        e[j] = 1;
        out.add(e, Rel::Ge, R(0));
    }
    return out;
}

/// Minimum decrease of mu.x over the nonnegative solutions of c.
std::optional<Rational> min_decrease(const ConstraintSystem& c, const QVector& mu) {
    LpProblem p = to_lp(nonneg(c));
    p.minimize(concat(mu, -mu));
    auto res = solve(p);
    if (auto* o = std::get_if<lp::Optimal>(&res))
        return o->value;
    return std::nullopt;
}

std::vector<QVector> grid(std::size_t dim, int lo, int hi) {
    std::vector<QVector> out{QVector(dim)};
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<QVector> next;
        for (const auto& p : out)
            for (int v = lo; v <= hi; ++v) {
                QVector q = p;
                q[j] = v;
                next.push_back(q);
            }
        out = std::move(next);
    }
    return out;
}

RankingFunction rf_at(const QVector& p) { return {p[0], slice(p, 1, p.size() - 1)}; }

} // namespace

TEST_CASE("build_svg_system on the log2 clause") {
    ConstraintSystem s = build_svg_system(body(kLog2Clause));
    CHECK(s.vars() == std::vector<std::string>{"y1", "y2", "y3", "y4", "y5", "mu1", "mu2"});
    const QMatrix printed{{1, -1, 1, 0, 0, -1, 0},
                          {0, 0, 0, 1, -1, 0, -1},
                          {0, 2, -2, 0, 0, 1, 0},
                          {0, 0, 0, -1, 1, 0, 1},
                          {-2, 1, 0, -1, 1, 0, 0}};
    const QVector rhs{R(0), R(0), R(0), R(0), R(-1)};
    REQUIRE(s.size() == 5 + 7);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(s.rows()[i].coeffs == printed.row(i));
        CHECK(s.rows()[i].rel == Rel::Le);
        CHECK(s.rows()[i].rhs == rhs[i]);
    }
    for (std::size_t j = 0; j < 7; ++j) {
        QVector e(7);
        e[j] = 1;
        CHECK(entails(s, {e, Rel::Ge, R(0)}));
    }
    CHECK(find_point(s).has_value());
}

TEST_CASE("build_svg_system small cases") {
    ConstraintSystem one = body("vars: x\nsingle: x >= 1, x' <= x - 1");
    ConstraintSystem s = build_svg_system(one);
    // y = <0, 1> on (x >= 1, x - x' >= 1) with mu1 = 1.
    CHECK(s.holds_at(QVector{R(0), R(1), R(1)}));

    ConstraintSystem none({"x", "x'"});
    CHECK(!find_point(build_svg_system(none)).has_value());
}

TEST_CASE("svg_analyze") {
    Verdict v = svg_analyze(body(kLog2Clause));
    REQUIRE(is_terminating(v));
    const QVector& mu = std::get<verdict::Terminating>(v).witness.mu;
    CHECK(mu[0] >= 0);
    CHECK(mu[1] >= 0);
    CHECK(mu[0] + mu[1] >= 1);
    auto d = min_decrease(body(kLog2Clause), mu);
    REQUIRE(d.has_value());
    CHECK(*d >= 1);

    ConstraintSystem up = body("vars: x\nsingle: x >= 0, x' >= x + 1");
    CHECK(std::holds_alternative<verdict::Unknown>(svg_analyze(up)));
    for (int m = 0; m <= 4; ++m) {
        auto dm = min_decrease(up, QVector{R(m, 2)});
        CHECK((!dm.has_value() || *dm < 1));
    }

    CHECK(std::holds_alternative<verdict::TriviallyTerminating>(svg_analyze(body("vars: x\nsingle: x >= 1, x <= 0"))));
}

TEST_CASE("svg_space") {
    RankingSpace s = svg_space(body(kLog2Clause));
    CHECK(s.kind == SpaceKind::Svg);
    CHECK(!s.has_mu0());
    ConstraintSystem expected({"mu1", "mu2"}, {{{R(1), R(1)}, Rel::Ge, R(1)},
                                               {{R(1), R(0)}, Rel::Ge, R(0)},
                                               {{R(0), R(1)}, Rel::Ge, R(0)}});
    CHECK(equivalent(s.constraints, expected));

    ConstraintSystem one = body("vars: x\nsingle: x >= 1, x' <= x - 1");
    RankingSpace s1 = svg_space(one);
    CHECK(equivalent(s1.constraints, ConstraintSystem({"mu1"}, {{{R(1)}, Rel::Ge, R(1)}})));
    for (auto [p, q] : {std::pair{0, 1}, {1, 2}, {1, 1}, {2, 1}}) {
        auto d = min_decrease(one, QVector{R(p, q)});
        REQUIRE(d.has_value());
        CHECK((*d >= 1) == s1.contains(RankingFunction{R(0), QVector{R(p, q)}}));
    }

    ConstraintSystem other = body("vars: x1 x2\nsingle: x2 >= 1, x2' <= x2 - 1, x1' = x1");
    RankingSpace both = svg_space(std::vector<ConstraintSystem>{body(kLog2Clause), other});
    ConstraintSystem conj = s.constraints;
    conj.append(svg_space(other).constraints);
    CHECK(equivalent(both.constraints, conj));
    CHECK_THROWS_AS(svg_space(body("vars: x\nsingle: x <= -1")), std::invalid_argument);
}

TEST_CASE("build_ms_systems for the countdown loop") {
    MsSystems s = build_ms_systems(body(kCountdown));
    CHECK(s.decrease.vars() == std::vector<std::string>{"y1", "y2", "y3", "mu1"});
    // Weight 1 on the row x - x' >= 1.
    CHECK(s.decrease.holds_at(QVector{R(0), R(0), R(1), R(1)}));
    CHECK(s.bounded.vars() == std::vector<std::string>{"z1", "z2", "z3", "z4", "z5", "mu0", "mu1"});
    // Weight 1 on x >= 0 gives mu0 + mu1 x >= 0 with mu0 = 0, mu1 = 1.
    CHECK(s.bounded.holds_at(QVector{R(0), R(0), R(1), R(0), R(0), R(0), R(1)}));
    ConstraintSystem both = conjoin(s);
    CHECK(both.vars() == std::vector<std::string>{"y1", "y2", "y3", "z1", "z2", "z3", "z4", "z5", "mu0", "mu1"});
    CHECK(both.holds_at(QVector{R(0), R(0), R(1), R(0), R(0), R(1), R(0), R(0), R(0), R(1)}));
}

TEST_CASE("ms_analyze") {
    LoopModel log2 = test::log2_loop();
    Verdict v = ms_analyze(log2);
    REQUIRE(is_terminating(v));
    const RankingFunction& f = std::get<verdict::Terminating>(v).witness;
    CHECK(f.delta == 1);
    CHECK(f.lower_bound == 0);
    CHECK(reference_ms_space().holds_at(concat(QVector{f.mu0}, f.mu)));

    LoopModel up = parse_loop(kDiverge);
    CHECK(std::holds_alternative<verdict::Unknown>(ms_analyze(up)));
    for (const auto& p : grid(2, -3, 3))
        CHECK(!test::valid_by_primal_lp(merge_guarded(up), rf_at(p)));

    LoopModel bad = parse_loop("vars: x\nguard: x >= 1, x <= 0\nupdate: x' = x + 5");
    CHECK(std::holds_alternative<verdict::TriviallyTerminating>(ms_analyze(bad)));
    CHECK(std::holds_alternative<verdict::TriviallyTerminating>(ms_analyze(parse_loop("vars: x\nsingle: x >= 1, x <= 0"))));
}

TEST_CASE("ms_space goldens") {
    RankingSpace s = ms_space(test::log2_loop());
    CHECK(s.kind == SpaceKind::MsFull);
    CHECK(s.params() == std::vector<std::string>{"mu0", "mu1", "mu2"});
    CHECK(equivalent(s.constraints, reference_ms_space()));

    RankingSpace c = ms_space(parse_loop(kCountdown));
    CHECK(equivalent(c.constraints, ConstraintSystem({"mu0", "mu1"}, {{{R(0), R(1)}, Rel::Ge, R(1)},
                                                                       {{R(1), R(0)}, Rel::Ge, R(0)}})));
    for (const auto& p : grid(2, -3, 3))
        CHECK(c.contains(rf_at(p)) == test::valid_by_primal_lp(merge_guarded(parse_loop(kCountdown)), rf_at(p)));

    RankingSpace d = ms_space(parse_loop(kDiverge));
    CHECK(d.is_empty());
    CHECK_THROWS_AS(ms_space(parse_loop("vars: x\nsingle: x >= 1, x <= 0")), std::invalid_argument);
}

TEST_CASE("conditional spaces") {
    LoopModel up = parse_loop(kDiverge);
    RankingSpace dec = ms_decreasing_space(up);
    RankingSpace bnd = ms_bounded_space(up);
    CHECK(dec.kind == SpaceKind::MsDecreasing);
    CHECK(bnd.kind == SpaceKind::MsBounded);
    CHECK(equivalent(dec.constraints, ConstraintSystem({"mu0", "mu1"}, {{{R(0), R(1)}, Rel::Le, R(-1)}})));
    // x = 0 is reachable, so mu0 >= 0 is needed besides mu1 >= 0.
    CHECK(equivalent(bnd.constraints, ConstraintSystem({"mu0", "mu1"}, {{{R(0), R(1)}, Rel::Ge, R(0)},
                                                                         {{R(1), R(0)}, Rel::Ge, R(0)}})));
    for (const auto& p : grid(2, -3, 3)) {
        LpProblem lp = to_lp(merge_guarded(up));
        lp.minimize(QVector{p[1], R(0)});
        auto res = solve(lp);
        const bool bounded = std::holds_alternative<lp::Optimal>(res) &&
                             p[0] + std::get<lp::Optimal>(res).value >= 0;
        CHECK(bnd.contains(rf_at(p)) == bounded);
    }
    ConstraintSystem conj = dec.constraints;
    conj.append(bnd.constraints);
    CHECK(is_empty_set(conj));

    LoopModel log2 = test::log2_loop();
    ConstraintSystem lc = ms_decreasing_space(log2).constraints;
    lc.append(ms_bounded_space(log2).constraints);
    CHECK(equivalent(lc, reference_ms_space()));

    CHECK(ms_decreasing_space(parse_loop("vars: x\nsingle: x' = x")).is_empty());
}

TEST_CASE("in_denormalized_space") {
    RankingSpace s = ms_space(test::log2_loop());
    CHECK(in_denormalized_space(s, {R(-4), QVector{R(2), R(0)}}));
    CHECK(in_denormalized_space(s, {R(0), QVector{R(1, 2), R(0)}}));
    CHECK(!in_denormalized_space(s, {R(0), QVector{R(0), R(1)}}));
    CHECK(!in_denormalized_space(s, {R(0), QVector{R(0), R(0)}}));
    CHECK(in_denormalized_space(test::log2_loop(), RankingFunction{R(-4), QVector{R(2), R(0)}}));
    CHECK(!in_denormalized_space(test::log2_loop(), RankingFunction{R(0), QVector{R(0), R(1)}}));

    RankingSpace wrong{SpaceKind::Pr, s.constraints};
    CHECK_THROWS_AS(in_denormalized_space(wrong, {R(0), QVector{R(1), R(0)}}), std::invalid_argument);
}

TEST_CASE("property: witnesses are valid ranking functions") {
    std::mt19937_64 rng(61);
    int terminating = 0;
    for (int i = 0; i < 40; ++i) {
        RandomLoopOptions opt;
        opt.guarded = i % 2 == 0;
        LoopModel l = random_loop(rng, opt);
        Verdict v = ms_analyze(l);
        auto* t = std::get_if<verdict::Terminating>(&v);
        if (!t)
            continue;
        ++terminating;
        const RankingFunction& f = t->witness;
        ConstraintSystem c = merge_guarded(l);
        const std::size_t n = l.space.n();
        for (const auto& p : test::sample_points(c, rng, 200)) {
            QVector x = slice(p, 0, n), xp = slice(p, n, n);
            CHECK(f.eval(x) - f.eval(xp) >= 1);
            CHECK(f.eval(x) >= 0);
        }
        CHECK(certifies(c, f));
        CHECK(test::valid_by_primal_lp(c, f));
    }
    CHECK(terminating >= 10);
}

TEST_CASE("property: ms_space soundness and conjunction") {
    std::mt19937_64 rng(67);
    int checked = 0;
    for (int i = 0; i < 30; ++i) {
        RandomLoopOptions opt;
        opt.guarded = i % 2 == 1;
        opt.max_n = 3;
        opt.max_rows = 6;
        LoopModel l = random_loop(rng, opt);
        RankingSpace s = ms_space(l);
        ConstraintSystem conj = ms_decreasing_space(l).constraints;
        conj.append(ms_bounded_space(l).constraints);
        CHECK(equivalent(s.constraints, conj));
        if (s.is_empty())
            continue;
        ++checked;
        ConstraintSystem c = merge_guarded(l);
        for (const auto& p : test::sample_points(s.constraints, rng, 50)) {
            CHECK(s.contains(rf_at(p)));
            CHECK(certifies(c, rf_at(p)));
        }
    }
    CHECK(checked >= 5);
}

TEST_CASE("property: ms_space completeness on a grid") {
    std::mt19937_64 rng(71);
    RandomLoopOptions opt;
    opt.max_n = 2;
    opt.max_coeff = 2;
    opt.max_rows = 5;
    int nonempty = 0;
    for (int i = 0; i < 8; ++i) {
        LoopModel l = random_loop(rng, opt);
        RankingSpace s = ms_space(l);
        nonempty += !s.is_empty();
        ConstraintSystem c = merge_guarded(l);
        for (const auto& p : grid(l.space.n() + 1, -3, 3))
            CHECK(s.contains(rf_at(p)) == test::valid_by_primal_lp(c, rf_at(p)));
    }
    CHECK(nonempty > 0);
}

TEST_CASE("property: svg space points decrease on nonnegative pairs") {
    std::mt19937_64 rng(73);
    int checked = 0;
    for (int i = 0; i < 30; ++i) {
        RandomLoopOptions opt;
        opt.max_n = 3;
        ConstraintSystem c = merge_guarded(random_loop(rng, opt));
        if (!is_satisfiable(nonneg(c)))
            continue;
        RankingSpace s = svg_space(c);
        if (s.is_empty())
            continue;
        ++checked;
        const std::size_t n = c.dim() / 2;
        auto pairs = test::sample_points(nonneg(c), rng, 20);
        for (const auto& m : test::sample_points(s.constraints, rng, 10)) {
            for (const auto& p : pairs)
                CHECK(dot(m, slice(p, 0, n)) - dot(m, slice(p, n, n)) >= 1);
            auto d = min_decrease(c, m);
            REQUIRE(d.has_value());
            CHECK(*d >= 1);
        }
    }
    CHECK(checked >= 5);
}
