#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tcrisk/errors.hpp>
#include <tcrisk/measure.hpp>

#include "test_support.hpp"

#include <stdexcept>

using namespace tcrisk;

namespace {

const SpacePtr sp3 = make_uniform_space(3);

Measure m3(const Rational& a, const Rational& b, const Rational& c) {
    return Measure(sp3, {a, b, c});
}

Position x3(const Rational& a, const Rational& b, const Rational& c) {
    return Position(sp3, {a, b, c});
}

}  // namespace

TEST_CASE("Measure validation") {
    CHECK_NOTHROW(m3(Rational(3, 5), Rational(1, 5), Rational(1, 5)));
    CHECK_THROWS_AS(m3(Rational(1, 2), Rational(1, 2), Rational(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(m3(Rational(3, 2), Rational(-1, 2), Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(Measure(sp3, {Rational(1)}), std::invalid_argument);

    // absolute continuity with respect to the reference
    const SpacePtr null3 = make_space({"w1", "w2", "w3"},
                                      {Rational(1, 2), Rational(1, 2), Rational(0)});
    CHECK_THROWS_WITH_AS(
        Measure(null3, {Rational(1, 3), Rational(1, 3), Rational(1, 3)}),
        "measure charges the reference-null outcome 'w3'", std::invalid_argument);
    CHECK_NOTHROW(Measure(null3, {Rational(1), Rational(0), Rational(0)}));
}

TEST_CASE("mass and reference_measure") {
    const Measure g = m3(Rational(3, 5), Rational(1, 5), Rational(1, 5));
    CHECK(g.mass({0}) == Rational(3, 5));
    CHECK(g.mass({1, 2}) == Rational(2, 5));
    CHECK(g.mass({0, 1, 2}) == 1);
    CHECK(g.mass({}) == 0);
    CHECK(reference_measure(sp3).values() ==
          std::vector<Rational>{Rational(1, 3), Rational(1, 3), Rational(1, 3)});
}

TEST_CASE("Position basics") {
    const Position x = x3(1, 4, 2);
    CHECK((-x).values() == std::vector<Rational>{-1, -4, -2});
    CHECK(constant_position(sp3, Rational(2))[1] == 2);
    CHECK_THROWS_AS(Position(sp3, {Rational(1)}), std::invalid_argument);
}

TEST_CASE("expectation") {
    CHECK(expectation(x3(1, 4, 2), reference_measure(sp3)) == Rational(7, 3));
    CHECK(expectation(x3(1, 0, 0), m3(Rational(3, 5), Rational(1, 5), Rational(1, 5))) ==
          Rational(3, 5));
    CHECK(expectation(constant_position(sp3, Rational(9, 7)), reference_measure(sp3)) ==
          Rational(9, 7));

    const SpacePtr sp2 = make_uniform_space(2);
    CHECK_THROWS_AS(expectation(Position(sp2, {Rational(1), Rational(0)}),
                                reference_measure(sp3)),
                    SpaceMismatchError);
}

TEST_CASE("conditional_expectation worked values") {
    const Partition pi({{0, 1}, {2}}, 3);
    const Position x = x3(1, 4, 2);
    CHECK(conditional_expectation(x, reference_measure(sp3), pi).values() ==
          std::vector<Rational>{Rational(5, 2), Rational(5, 2), Rational(2)});
    CHECK(conditional_expectation(x, reference_measure(sp3), Partition::discrete(3)) == x);
    CHECK(conditional_expectation(x, reference_measure(sp3), Partition::trivial(3)) ==
          constant_position(sp3, Rational(7, 3)));
    // null blocks take the convention value 0
    const Measure p = m3(Rational(1, 2), Rational(1, 2), Rational(0));
    CHECK(conditional_expectation(x, p, pi).values() ==
          std::vector<Rational>{Rational(5, 2), Rational(5, 2), Rational(0)});
}

TEST_CASE("conditional_expectation tower and idempotence properties") {
    test::Rng rng = test::make_rng();
    for (int k = 0; k < 60; ++k) {
        const SpacePtr sp = test::random_space(rng, 2, 6);
        const Measure p = test::random_measure(rng, sp);
        const Position x = test::random_position(rng, sp);
        const Filtration f = test::random_filtration(rng, sp);
        const Partition& coarse = f.level(f.level_count() > 2 ? 1 : 0);
        const Partition& fine = f.level(f.level_count() - 1);

        // tower: conditioning on the fine level, then the coarse one, equals
        // conditioning on the coarse level directly (p-charged blocks agree;
        // the 0 convention makes them agree everywhere here since a p-null
        // coarse block has only p-null fine sub-blocks)
        const Position inner = conditional_expectation(x, p, fine);
        CHECK(conditional_expectation(inner, p, coarse) ==
              conditional_expectation(x, p, coarse));

        // idempotence
        const Position once = conditional_expectation(x, p, coarse);
        CHECK(conditional_expectation(once, p, coarse) == once);

        // expectation of the conditional equals the expectation
        CHECK(expectation(conditional_expectation(x, p, coarse), p) == expectation(x, p));
    }
}

TEST_CASE("is_polar and support_union") {
    const std::vector<Measure> gens = {m3(Rational(1, 2), Rational(1, 2), Rational(0)),
                                       m3(Rational(1), Rational(0), Rational(0))};
    CHECK(is_polar({2}, gens));
    CHECK_FALSE(is_polar({1}, gens));
    CHECK_FALSE(is_polar({1, 2}, gens));
    CHECK(is_polar({}, gens));
    CHECK(support_union(gens) == OutcomeSet{0, 1});
    CHECK(support_union({}) == OutcomeSet{});
}

TEST_CASE("p_esssup ignores polar outcomes") {
    const std::vector<Measure> gens = {m3(Rational(1, 2), Rational(1, 2), Rational(0)),
                                       m3(Rational(1), Rational(0), Rational(0))};
    CHECK(p_esssup(x3(5, 2, 7), gens) == 5);
    CHECK(p_esssup(constant_position(sp3, Rational(-3)), gens) == -3);
    // x varying only on the polar part does not move the value
    CHECK(p_esssup(x3(1, 1, 9), gens) == 1);
    CHECK_THROWS_AS(p_esssup(x3(1, 2, 3), {}), std::logic_error);
}

TEST_CASE("conditional_esssup blockwise maxima") {
    const Partition pi({{0, 1}, {2}}, 3);
    CHECK(conditional_esssup(x3(1, 4, 2), pi, reference_measure(sp3)).values() ==
          std::vector<Rational>{4, 4, 2});
    // support misses w2 inside the first block, and misses the second block
    const Measure partial = m3(Rational(1), Rational(0), Rational(0));
    CHECK(conditional_esssup(x3(1, 4, 7), pi, partial).values() ==
          std::vector<Rational>{1, 1, 7});
}

TEST_CASE("conditional_esssup dominates the conditional expectation") {
    test::Rng rng = test::make_rng();
    for (int k = 0; k < 60; ++k) {
        const SpacePtr sp = test::random_space(rng, 2, 6);
        const Measure p = test::random_measure(rng, sp, /*allow_zeros=*/false);
        const Position x = test::random_position(rng, sp);
        const Partition pi = test::random_partition(rng, sp);
        const Position ce = conditional_expectation(x, p, pi);
        const Position es = conditional_esssup(x, pi, p);
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(ce[i] <= es[i]);
    }
}
