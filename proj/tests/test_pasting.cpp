#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tcrisk/errors.hpp>
#include <tcrisk/linear_feasibility.hpp>
#include <tcrisk/pasting.hpp>

#include "test_support.hpp"

#include <vector>

using namespace tcrisk;

namespace {

const SpacePtr sp3 = make_uniform_space(3);

Measure m3(const Rational& a, const Rational& b, const Rational& c) {
    return Measure(sp3, {a, b, c});
}

Position x3(const Rational& a, const Rational& b, const Rational& c) {
    return Position(sp3, {a, b, c});
}

RiskMeasure worked() {
    return RiskMeasure(sp3, {m3(Rational(3, 5), Rational(1, 5), Rational(1, 5)),
                             m3(Rational(1, 5), Rational(3, 5), Rational(1, 5))});
}

const Partition sigma_a({{0}, {1, 2}}, 3);

Filtration fa() { return simple_filtration({0}, 3); }

}  // namespace

TEST_CASE("paste takes marginals from one source, conditionals from the other") {
    const Measure g1 = m3(Rational(3, 5), Rational(1, 5), Rational(1, 5));
    const Measure g2 = m3(Rational(1, 5), Rational(3, 5), Rational(1, 5));
    CHECK(paste(g1, g2, sigma_a) == m3(Rational(1, 5), Rational(2, 5), Rational(2, 5)));
    CHECK(paste(g2, g1, sigma_a) == m3(Rational(3, 5), Rational(3, 10), Rational(1, 10)));
}

TEST_CASE("paste at the edge partitions") {
    const Measure g1 = m3(Rational(3, 5), Rational(1, 5), Rational(1, 5));
    const Measure g2 = m3(Rational(1, 5), Rational(3, 5), Rational(1, 5));
    CHECK(paste(g1, g2, Partition::trivial(3)) == g1);    // conditionals win
    CHECK(paste(g1, g2, Partition::discrete(3)) == g2);   // marginals win
}

TEST_CASE("paste is the identity on a single measure") {
    test::Rng rng = test::make_rng();
    for (int k = 0; k < 100; ++k) {
        const SpacePtr sp = test::random_space(rng, 2, 6);
        const Measure p = test::random_measure(rng, sp);
        const Partition pi = test::random_partition(rng, sp);
        CHECK(paste(p, p, pi) == p);
    }
}

TEST_CASE("paste refuses a 0/0 conditional") {
    const Measure cond = m3(Rational(1), Rational(0), Rational(0));
    const Measure marg = m3(Rational(1, 2), Rational(1, 4), Rational(1, 4));
    try {
        paste(cond, marg, sigma_a);
        FAIL("expected IllDefinedPasteError");
    } catch (const IllDefinedPasteError& e) {
        CHECK(e.block_index == 1);
    }
    // zero marginal mass on the starved block is fine: nothing to condition
    CHECK(paste(cond, cond, sigma_a) == cond);
}

TEST_CASE("conditional_polytope on the worked fixture") {
    const auto verts = conditional_polytope(worked(), {1, 2});
    REQUIRE(verts.size() == 2);
    CHECK(verts[0] == m3(Rational(0), Rational(1, 2), Rational(1, 2)));
    CHECK(verts[1] == m3(Rational(0), Rational(3, 4), Rational(1, 4)));
}

TEST_CASE("conditional_polytope on a singleton block is a point mass") {
    const auto verts = conditional_polytope(worked(), {0});
    REQUIRE(verts.size() == 1);
    CHECK(verts[0] == m3(Rational(1), Rational(0), Rational(0)));
}

TEST_CASE("conditional_polytope drops non-charging generators and rejects polar blocks") {
    const RiskMeasure rm(sp3, {m3(Rational(1, 2), Rational(1, 2), Rational(0)),
                               m3(Rational(1), Rational(0), Rational(0))});
    const auto verts = conditional_polytope(rm, {1, 2});
    REQUIRE(verts.size() == 1);  // only the first generator charges {w2,w3}
    CHECK(verts[0] == m3(Rational(0), Rational(1), Rational(0)));
    CHECK_THROWS_AS(conditional_polytope(rm, {2}), PolarBlockError);
}

TEST_CASE("marginal_polytope on the worked fixture") {
    CHECK(marginal_polytope(worked(), sigma_a) ==
          std::vector<std::vector<Rational>>{{Rational(3, 5), Rational(2, 5)},
                                             {Rational(1, 5), Rational(4, 5)}});
    CHECK(marginal_polytope(worked(), Partition::trivial(3)) ==
          std::vector<std::vector<Rational>>{{Rational(1)}});
}

TEST_CASE("rectangle_vertices enumerates marginal times conditional choices") {
    const auto verts = rectangle_vertices(worked(), sigma_a);
    REQUIRE(verts.size() == 4);
    CHECK(verts[0] == m3(Rational(3, 5), Rational(1, 5), Rational(1, 5)));
    CHECK(verts[1] == m3(Rational(3, 5), Rational(3, 10), Rational(1, 10)));
    CHECK(verts[2] == m3(Rational(1, 5), Rational(2, 5), Rational(2, 5)));
    CHECK(verts[3] == m3(Rational(1, 5), Rational(3, 5), Rational(1, 5)));
    CHECK(rectangle_cost_estimate(worked(), sigma_a) == 4);
}

TEST_CASE("rectangle_vertices at the edge partitions reproduce the generators") {
    const RiskMeasure rm = worked();
    for (const auto& pi : {Partition::trivial(3), Partition::discrete(3)}) {
        const auto verts = rectangle_vertices(rm, pi);
        REQUIRE(verts.size() == 2);
        CHECK(verts[0] == rm.generators()[0]);
        CHECK(verts[1] == rm.generators()[1]);
    }
}

TEST_CASE("the test set always sits inside the rectangle") {
    test::Rng rng = test::make_rng();
    for (int k = 0; k < 40; ++k) {
        const SpacePtr sp = test::random_space(rng);
        const RiskMeasure rm = test::random_risk(rng, sp, 4);
        const Partition pi = test::random_partition(rng, sp);
        const auto verts = rectangle_vertices(rm, pi);
        std::vector<std::vector<Rational>> pts;
        for (const auto& v : verts) pts.push_back(v.values());
        for (const auto& g : rm.generators()) {
            CHECK(hull_membership(pts, g.values()).inside);
        }
    }
}

TEST_CASE("step consistency fails on the worked fixture at sigma(A)") {
    const auto report = is_step_consistent(worked(), sigma_a);
    CHECK_FALSE(report.consistent());
    REQUIRE(report.failures.size() == 2);
    CHECK(report.failures[0].first == m3(Rational(3, 5), Rational(3, 10), Rational(1, 10)));
    CHECK(report.failures[1].first == m3(Rational(1, 5), Rational(2, 5), Rational(2, 5)));
    for (const auto& [vertex, cert] : report.failures) {
        CHECK_FALSE(cert.inside);
        CHECK(verify_membership(worked(), vertex, cert));
    }
    CHECK(report.marginal_vertices.size() == 2);
    REQUIRE(report.conditional_vertices.size() == 2);
    CHECK(report.conditional_vertices[0].size() == 1);
    CHECK(report.conditional_vertices[1].size() == 2);
}

TEST_CASE("step consistency holds at the edge partitions") {
    CHECK(is_step_consistent(worked(), Partition::trivial(3)).consistent());
    CHECK(is_step_consistent(worked(), Partition::discrete(3)).consistent());
}

TEST_CASE("singleton and full-simplex test sets are consistent for every partition") {
    test::Rng rng = test::make_rng();
    for (int k = 0; k < 25; ++k) {
        const SpacePtr sp = test::random_space(rng, 2, 5);
        const Partition pi = test::random_partition(rng, sp);

        const RiskMeasure single(sp, {test::random_measure(rng, sp)});
        CHECK(is_step_consistent(single, pi).consistent());

        std::vector<Measure> delta;
        for (std::size_t i = 0; i < sp->size(); ++i) {
            std::vector<Rational> v(sp->size(), Rational(0));
            v[i] = 1;
            delta.emplace_back(sp, v);
        }
        CHECK(is_step_consistent(RiskMeasure(sp, delta), pi).consistent());
    }
}

TEST_CASE("filtration report pinpoints the failing level") {
    const auto reports = is_filtration_consistent(worked(), fa());
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].consistent());
    CHECK_FALSE(reports[1].consistent());
    CHECK(reports[2].consistent());
    CHECK_FALSE(all_consistent(reports));
}

TEST_CASE("recursion residual on the worked fixture") {
    const RiskMeasure rm = worked();
    CHECK(recursion_residual(rm, x3(1, 1, 0), fa()) == Rational(1, 5));
    CHECK(recursion_residual(rm, x3(0, 1, 0), fa()) == 0);
    CHECK(recursion_residual(rm, constant_position(sp3, Rational(7)), fa()) == 0);
}

TEST_CASE("recursion residual vanishes for consistent families") {
    test::Rng rng = test::make_rng();
    for (int k = 0; k < 30; ++k) {
        const SpacePtr sp = test::random_space(rng, 2, 5);
        const Filtration f = test::random_filtration(rng, sp);
        const Position x = test::random_position(rng, sp);

        const RiskMeasure single(sp, {test::random_measure(rng, sp)});
        CHECK(recursion_residual(single, x, f) == 0);

        std::vector<Measure> delta;
        for (std::size_t i = 0; i < sp->size(); ++i) {
            std::vector<Rational> v(sp->size(), Rational(0));
            v[i] = 1;
            delta.emplace_back(sp, v);
        }
        CHECK(recursion_residual(RiskMeasure(sp, delta), x, f) == 0);
    }
}

TEST_CASE("consistency verdicts survive relabelling and reference changes") {
    // swap w1 and w3 in the worked fixture
    const RiskMeasure swapped(sp3, {m3(Rational(1, 5), Rational(1, 5), Rational(3, 5)),
                                    m3(Rational(1, 5), Rational(3, 5), Rational(1, 5))});
    const auto report = is_step_consistent(swapped, Partition::two_block({2}, 3));
    CHECK_FALSE(report.consistent());
    CHECK(report.failures.size() == 2);

    // same generators under a non-uniform reference: the verdict is about the
    // test set, not the reference weights
    const SpacePtr skew = make_space({"w1", "w2", "w3"},
                                     {Rational(1, 2), Rational(1, 4), Rational(1, 4)});
    const RiskMeasure onskew(
        skew, {Measure(skew, {Rational(3, 5), Rational(1, 5), Rational(1, 5)}),
               Measure(skew, {Rational(1, 5), Rational(3, 5), Rational(1, 5)})});
    const auto report2 = is_step_consistent(onskew, Partition({{0}, {1, 2}}, 3));
    CHECK_FALSE(report2.consistent());
    REQUIRE(report2.failures.size() == 2);
    CHECK(report2.failures[0].first.values() ==
          std::vector<Rational>{Rational(3, 5), Rational(3, 10), Rational(1, 10)});
}
