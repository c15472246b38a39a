#include <doctest.h>

#include <random>

#include "linrank/equivalence.hpp"
#include "linrank/ms.hpp"
#include "linrank/pr.hpp"
#include "linrank/random_loops.hpp"
#include "support.hpp"

using namespace linrank;
using test::R;

namespace {

RankingSpace ms_full(ConstraintSystem c) { return RankingSpace{SpaceKind::MsFull, std::move(c)}; }

/// Drops mu0 from a space by projection.
ConstraintSystem mu_part(const RankingSpace& s) {
    std::vector<std::string> keep(s.params().begin() + 1, s.params().end());
    return project(s.constraints, keep);
}

} // namespace

TEST_CASE("cone_extend examples") {
    RankingSpace one = ms_full(ConstraintSystem({"mu0", "mu1"}, {{{R(0), R(1)}, Rel::Ge, R(1)}}));
    RankingSpace cone = cone_extend(one);
    CHECK(equivalent(cone.constraints, ConstraintSystem({"mu0", "mu1"}, {{{R(0), R(1)}, Rel::Gt, R(0)}})));
    // Membership by the scaling LP and by the projected system agree.
    for (const Rational& m : {R(1, 2), R(0), R(-1), R(3)}) {
        RankingFunction f{R(0), QVector{m}};
        CHECK(cone.contains(f) == (m > 0));
        CHECK(contains_up_to_scaling(one, f, false) == (m > 0));
    }

    RankingSpace half = ms_full(ConstraintSystem({"mu0", "mu1"}, {{{R(0), R(1)}, Rel::Ge, R(0)}}));
    CHECK(equivalent(cone_extend(half).constraints, half.constraints));

    LoopModel log2 = test::log2_loop();
    CHECK(equivalent(cone_extend(ms_space(log2)).constraints, pr_space(log2).constraints));

    CHECK_THROWS_AS(cone_extend(RankingSpace{SpaceKind::Pr, one.constraints}), std::invalid_argument);
}

TEST_CASE("mu0 upward closure") {
    RankingSpace pinned{SpaceKind::Pr, ConstraintSystem({"mu0", "mu1"}, {{{R(1), R(0)}, Rel::Eq, R(0)},
                                                                         {{R(0), R(1)}, Rel::Gt, R(0)}})};
    RankingSpace up = mu0_upward_closure(pinned);
    CHECK(equivalent(up.constraints, ConstraintSystem({"mu0", "mu1"}, {{{R(1), R(0)}, Rel::Ge, R(0)},
                                                                       {{R(0), R(1)}, Rel::Gt, R(0)}})));
    CHECK(equivalent(mu0_upward_closure(up).constraints, up.constraints));
    CHECK_THROWS_AS(mu0_upward_closure(RankingSpace{SpaceKind::Svg, ConstraintSystem({"mu1"})}),
                    std::invalid_argument);
}

TEST_CASE("contains_up_to_scaling") {
    RankingSpace s = ms_space(test::log2_loop());
    CHECK(contains_up_to_scaling(s, {R(-4), QVector{R(2), R(0)}}, false));
    CHECK(!contains_up_to_scaling(s, {R(-5), QVector{R(2), R(0)}}, false));
    CHECK(contains_up_to_scaling(s, {R(-5), QVector{R(2), R(0)}}, true));
    CHECK(!contains_up_to_scaling(s, {R(0), QVector{R(0), R(1)}}, true));
    CHECK_THROWS_AS(contains_up_to_scaling(s, {R(0), QVector{R(1)}}, true), DimensionError);
}

TEST_CASE("cross_check on the log2 loop") {
    CrossCheckReport r = cross_check(test::log2_loop());
    CHECK(r.agree);
    CHECK(is_terminating(r.ms));
    CHECK(is_terminating(r.pr));
    REQUIRE(r.ms_witness_in_pr.has_value());
    CHECK(*r.ms_witness_in_pr);
    CHECK(*r.pr_witness_in_ms);
    REQUIRE(r.cone_ms_vs_pr.has_value());
    CHECK(r.cone_ms_vs_pr->equal);
    CHECK(r.cone_ms_vs_pr_mu0_closed->equal);
    CHECK(*r.pr_within_cone_ms);
    CHECK(r.consistent());
}

TEST_CASE("cross_check on non-terminating and unsatisfiable loops") {
    CrossCheckReport d = cross_check(parse_loop("vars: x\nsingle: x >= 0, x' = x + 1"));
    CHECK(d.agree);
    CHECK(std::holds_alternative<verdict::Unknown>(d.ms));
    CHECK(std::holds_alternative<verdict::Unknown>(d.pr));
    CHECK(!d.ms_witness_in_pr.has_value());
    CHECK(!d.pr_witness_in_ms.has_value());
    REQUIRE(d.cone_ms_vs_pr.has_value());
    CHECK(d.cone_ms_vs_pr->equal);
    CHECK(d.consistent());

    CrossCheckReport u = cross_check(parse_loop("vars: x\nsingle: x >= 1, x <= 0, x' = x"));
    CHECK(u.agree);
    CHECK(std::holds_alternative<verdict::TriviallyTerminating>(u.ms));
    CHECK(std::holds_alternative<verdict::TriviallyTerminating>(u.pr));
    CHECK(!u.cone_ms_vs_pr.has_value());
    CHECK(u.consistent());
}

TEST_CASE("countdown: PR pins mu0 while the MS cone does not") {
    LoopModel cd = parse_loop("vars: x\nsingle: x >= 0, x' = x - 1");
    RankingSpace cone = cone_extend(ms_space(cd));
    RankingSpace pr = pr_space(cd);
    // cone(ms) = {mu0 >= 0, mu1 > 0}; pr = {mu0 = 0, mu1 > 0}.
    CHECK(equivalent(cone.constraints, ConstraintSystem({"mu0", "mu1"}, {{{R(1), R(0)}, Rel::Ge, R(0)},
                                                                         {{R(0), R(1)}, Rel::Gt, R(0)}})));
    CHECK(cone.contains({R(1), QVector{R(1)}}));
    CHECK(!pr.contains({R(1), QVector{R(1)}}));
    // f(x) = 1 + x is a valid ranking function that the PR set omits.
    CHECK(test::valid_by_primal_lp(merge_guarded(cd), {R(1), QVector{R(1)}}));

    CrossCheckReport r = cross_check(cd);
    CHECK(r.agree);
    CHECK(!r.cone_ms_vs_pr->closures_equal);
    CHECK(r.cone_ms_vs_pr_mu0_closed->equal);
    CHECK(*r.pr_within_cone_ms);
    CHECK(*r.ms_witness_in_pr);
    CHECK(*r.pr_witness_in_ms);
    CHECK(r.consistent());
    CHECK(equivalent(mu_part(cone), mu_part(pr)));
}

TEST_CASE("property: cone_extend is idempotent") {
    std::mt19937_64 rng(97);
    for (int i = 0; i < 20; ++i) {
        RandomLoopOptions opt;
        opt.max_n = 3;
        opt.max_rows = 6;
        RankingSpace s = ms_space(random_loop(rng, opt));
        RankingSpace once = cone_extend(s);
        CHECK(equivalent(cone_extend(once).constraints, once.constraints));
        CHECK(is_subset(s.constraints, once.constraints));
    }
}

TEST_CASE("property: engines agree on random loops") {
    std::mt19937_64 rng(101);
    int terminating = 0, literal = 0;
    for (int i = 0; i < 30; ++i) {
        RandomLoopOptions opt;
        opt.guarded = i % 2 == 0;
        opt.max_n = 3;
        opt.max_rows = 6;
        LoopModel l = random_loop(rng, opt);
        CrossCheckReport r = cross_check(l);
        CHECK(r.agree);
        CHECK(r.consistent());
        REQUIRE(r.cone_ms_vs_pr_mu0_closed.has_value());
        CHECK(r.cone_ms_vs_pr_mu0_closed->equal);
        CHECK(*r.pr_within_cone_ms);
        literal += r.cone_ms_vs_pr->closures_equal;
        if (r.ms_witness_in_pr) {
            ++terminating;
            CHECK(*r.ms_witness_in_pr);
            CHECK(*r.pr_witness_in_ms);
            RankingSpace ms = ms_space(l);
            RankingSpace pr = pr_space(l);
            CHECK(equivalent(mu_part(cone_extend(ms)), mu_part(pr)));
        }
    }
    CHECK(terminating >= 8);
    MESSAGE("literal closure equality held on " << literal << " of 30 loops");
}
