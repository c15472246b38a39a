#include <doctest.h>

#include <random>

#include "linrank/constraint.hpp"
#include "linrank/random_loops.hpp"
#include "support.hpp"

using namespace linrank;
using test::R;

namespace {

bool leq_holds(const LeqMatrixForm& m, const QVector& p) {
    const std::size_t n = m.a.cols();
    QVector x(n), xp(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = p[i];
        xp[i] = p[n + i];
    }
    QVector lhs = mat_vec(m.a, x) + mat_vec(m.a_primed, xp);
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (lhs[i] > m.b[i])
            return false;
    return true;
}

bool geq_holds(const GeqMatrixForm& m, const QVector& p) {
    QVector lhs = mat_vec(m.a, p);
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (lhs[i] < m.b[i])
            return false;
    return true;
}

QVector random_point(std::mt19937_64& rng, std::size_t dim) {
    std::uniform_int_distribution<int> d(-4, 4), q(1, 3);
    QVector p(dim);
    for (auto& x : p)
        x = R(d(rng), q(rng));
    return p;
}

} // namespace

TEST_CASE("parse a single loop") {
    LoopModel l = parse_loop("vars: x\nsingle: x >= 0, x' = x - 1");
    REQUIRE(!l.is_guarded());
    const auto& c = std::get<SingleLoop>(l.body).c;
    REQUIRE(c.size() == 2);
    CHECK(c.rows()[0] == LinConstraint{QVector{R(1), R(0)}, Rel::Ge, R(0)});
    CHECK(c.rows()[1] == LinConstraint{QVector{R(-1), R(1)}, Rel::Eq, R(-1)});
}

TEST_CASE("parse the log2 loop") {
    LoopModel l = test::log2_loop();
    REQUIRE(l.is_guarded());
    CHECK(l.guarded().guard.size() == 1);
    CHECK(l.guarded().update.size() == 4);
    CHECK(l.space.names() == std::vector<std::string>{"x1", "x2"});
}

TEST_CASE("parser accepts rationals, comments, newlines and ==") {
    LoopModel l = parse_loop("# comment\nvars: a b\nsingle:\n  1/2*a + 3 b' <= -2/3  # tail\n  a == b\n");
    const auto& c = std::get<SingleLoop>(l.body).c;
    REQUIRE(c.size() == 2);
    CHECK(c.rows()[0] == LinConstraint{QVector{R(1, 2), R(0), R(0), R(3)}, Rel::Le, R(-2, 3)});
    CHECK(c.rows()[1].rel == Rel::Eq);
}

TEST_CASE("parser errors") {
    auto fails_at = [](const char* text, std::size_t line) {
        try {
            parse_loop(text);
        } catch (const ParseError& e) {
            CHECK(e.line() == line);
            return true;
        }
        return false;
    };
    CHECK(fails_at("vars: x\nsingle: x < 1", 2));
    CHECK(fails_at("vars: x\nsingle: x > 1", 2));
    CHECK(fails_at("vars: x\nsingle: y >= 1", 2));
    CHECK(fails_at("vars: x\nguard: x' >= 1\nupdate: x' = x", 2));
    CHECK(fails_at("vars: x\nsingle: 1.5*x >= 1", 2));
    CHECK(fails_at("", 1));
    CHECK(fails_at("single: x >= 0", 1));
    CHECK(fails_at("vars: x\nguard: x >= 0", 2));
    CHECK(fails_at("vars: x x\nsingle: x >= 0", 1));
    CHECK(fails_at("vars: x\nsingle: x >= 0 1", 2));
    try {
        parse_loop("vars: x\nsingle: x >= 0, x < 1");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.column() == 19);
        CHECK(std::string(e.what()).find("strict") != std::string::npos);
    }
}

TEST_CASE("leq matrix of the countdown loop") {
    LoopModel l = parse_loop("vars: x\nsingle: x >= 0, x' = x - 1");
    ConstraintSystem c = merge_guarded(l);
    LeqMatrixForm m = to_leq_matrix(c);
    CHECK(m.a == QMatrix{{-1}, {-1}, {1}});
    CHECK(m.a_primed == QMatrix{{0}, {1}, {-1}});
    CHECK(m.b == QVector{R(0), R(-1), R(1)});
    std::mt19937_64 rng(5);
    for (int i = 0; i < 3; ++i) {
        QVector p = random_point(rng, 2);
        CHECK(c.holds_at(p) == leq_holds(m, p));
    }
    CHECK(c.holds_at(QVector{R(3), R(2)}));
    CHECK(leq_holds(m, QVector{R(3), R(2)}));
}

TEST_CASE("leq matrix of the PR example") {
    LoopModel l = parse_loop("vars: x1 x2\nsingle: x1 >= 2, 2*x1' <= x1, 2*x1' + 1 >= x1, x2 + 1 = x2', x2' >= 1");
    LeqMatrixForm m = to_leq_matrix(merge_guarded(l));
    CHECK(m.a == QMatrix{{-1, 0}, {-1, 0}, {1, 0}, {0, 1}, {0, -1}, {0, 0}});
    CHECK(m.a_primed == QMatrix{{0, 0}, {2, 0}, {-2, 0}, {0, -1}, {0, 1}, {0, -1}});
    CHECK(m.b == QVector{R(-2), R(0), R(1), R(-1), R(1), R(-1)});
}

TEST_CASE("leq and geq forms of degenerate systems") {
    ConstraintSystem empty({"x", "x'"});
    CHECK(to_leq_matrix(empty).rows() == 0);
    CHECK(to_geq_matrix(empty).rows() == 0);
    ConstraintSystem strict({"x", "x'"});
    strict.add(QVector{R(1), R(0)}, Rel::Lt, R(1));
    CHECK_THROWS(to_leq_matrix(strict));
    CHECK_THROWS(to_geq_matrix(strict));
}

TEST_CASE("geq matrix examples") {
    ConstraintSystem c({"x", "x'"});
    c.add(QVector{R(1), R(0)}, Rel::Ge, R(0));
    GeqMatrixForm g = to_geq_matrix(c);
    CHECK(g.a == QMatrix{{1, 0}});
    CHECK(g.b == QVector{R(0)});

    ConstraintSystem e({"x", "x'"});
    e.add(QVector{R(1), R(0)}, Rel::Eq, R(2));
    GeqMatrixForm ge = to_geq_matrix(e);
    CHECK(ge.a == QMatrix{{1, 0}, {-1, 0}});
    CHECK(ge.b == QVector{R(2), R(-2)});

    LoopModel clause = parse_loop("vars: x1 x2\nsingle: x1 >= 2, 2*x1' + 1 >= x1, 2*x1' <= x1, x2 = x2' + 1");
    GeqMatrixForm gl = to_geq_matrix(merge_guarded(clause));
    CHECK(gl.a == QMatrix{{1, 0, 0, 0}, {-1, 0, 2, 0}, {1, 0, -2, 0}, {0, 1, 0, -1}, {0, -1, 0, 1}});
    CHECK(gl.b == QVector{R(2), R(-1), R(0), R(1), R(-1)});
}

TEST_CASE("merge_guarded") {
    LoopModel g = parse_loop("vars: x\nguard: x >= 2\nupdate: x' <= x - 1");
    ConstraintSystem m = merge_guarded(g);
    REQUIRE(m.size() == 2);
    CHECK(m.rows()[0] == LinConstraint{QVector{R(1), R(0)}, Rel::Ge, R(2)});
    CHECK(m.rows()[1] == LinConstraint{QVector{R(-1), R(1)}, Rel::Le, R(-1)});

    ConstraintSystem merged = merge_guarded(test::log2_loop());
    LoopModel single = parse_loop(
        "vars: x1 x2\nsingle: x1 >= 2, 2*x1' <= x1, 2*x1' + 1 >= x1, x2' = x2 + 1, x2' >= 1");
    CHECK(merged == std::get<SingleLoop>(single.body).c);

    LoopModel no_update = parse_loop("vars: x\nguard: x >= 2\nupdate:");
    CHECK(merge_guarded(no_update) == no_update.guarded().guard);
}

TEST_CASE("is_satisfiable") {
    LoopModel bad = parse_loop("vars: x\nsingle: x >= 1, x <= 0");
    CHECK(!is_satisfiable(merge_guarded(bad)));
    ConstraintSystem c = merge_guarded(test::log2_loop());
    CHECK(is_satisfiable(c));
    CHECK(c.holds_at(QVector{R(2), R(0), R(1), R(1)}));
    CHECK(is_satisfiable(ConstraintSystem({"x", "x'"})));
}

TEST_CASE("property: serialize then parse is the identity") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        RandomLoopOptions opt;
        opt.guarded = i % 2 == 0;
        LoopModel l = random_loop(rng, opt);
        CHECK(parse_loop(serialize_loop(l)) == l);
    }
    LoopModel frac = parse_loop("vars: x\nsingle: -1/3*x + x' >= -7/2");
    CHECK(parse_loop(serialize_loop(frac)) == frac);
}

TEST_CASE("property: the three forms have the same solutions") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 30; ++i) {
        LoopModel l = random_loop(rng);
        ConstraintSystem c = merge_guarded(l);
        LeqMatrixForm le = to_leq_matrix(c);
        GeqMatrixForm ge = to_geq_matrix(c);
        std::vector<QVector> pts = test::sample_points(c, rng, 30);
        while (pts.size() < 100)
            pts.push_back(random_point(rng, c.dim()));
        for (const auto& p : pts) {
            bool h = c.holds_at(p);
            CHECK(h == leq_holds(le, p));
            CHECK(h == geq_holds(ge, p));
        }
    }
}

TEST_CASE("property: merging keeps the solution set") {
    std::mt19937_64 rng(23);
    RandomLoopOptions opt;
    opt.guarded = true;
    for (int i = 0; i < 30; ++i) {
        LoopModel l = random_loop(rng, opt);
        ConstraintSystem c = merge_guarded(l);
        std::vector<QVector> pts = test::sample_points(c, rng, 20);
        while (pts.size() < 60)
            pts.push_back(random_point(rng, c.dim()));
        for (const auto& p : pts)
            CHECK(c.holds_at(p) == (l.guarded().guard.holds_at(p) && l.guarded().update.holds_at(p)));
    }
}
