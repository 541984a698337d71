#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stabreduce/error.hpp>
#include <stabreduce/polyhedra.hpp>

using namespace stabreduce;

static IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

static RatVec rv(std::initializer_list<long> xs) {
    RatVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

TEST_CASE("feasibility basics") {
    // 0 < x < 1 feasible, canonical witness is the midpoint 1/2
    std::vector<LinConstraint> cs;
    cs.push_back(make_gt(rv({1}), 0));
    cs.push_back(make_gt(rv({-1}), -1));
    auto w = solve_constraints(1, cs);
    REQUIRE(w.has_value());
    CHECK((*w)[0] == Rat(1, 2));

    // x >= 1 and x <= 0 infeasible
    std::vector<LinConstraint> bad;
    bad.push_back(make_ge(rv({1}), 1));
    bad.push_back(make_ge(rv({-1}), 0));
    CHECK_FALSE(solve_constraints(1, bad).has_value());
    CHECK_FALSE(feasible(1, bad));
}

TEST_CASE("canonical witnesses prefer small integers") {
    std::vector<LinConstraint> lo;
    lo.push_back(make_ge(rv({1}), 3));
    auto w1 = solve_constraints(1, lo);
    REQUIRE(w1.has_value());
    CHECK((*w1)[0] == 3);

    std::vector<LinConstraint> up;
    up.push_back(make_gt(rv({-1}), 2));  // x < -2
    auto w2 = solve_constraints(1, up);
    REQUIRE(w2.has_value());
    CHECK((*w2)[0] == -3);

    // unconstrained coordinate pins to zero
    std::vector<LinConstraint> one;
    one.push_back(make_ge(rv({1, 0}), 0));
    auto w3 = solve_constraints(2, one);
    REQUIRE(w3.has_value());
    CHECK((*w3)[0] == 0);
    CHECK((*w3)[1] == 0);
}

TEST_CASE("equalities") {
    std::vector<LinConstraint> cs;
    cs.push_back(make_eq(rv({1, 1}), 2));
    cs.push_back(make_eq(rv({1, -1}), 0));
    auto w = solve_constraints(2, cs);
    REQUIRE(w.has_value());
    CHECK((*w)[0] == 1);
    CHECK((*w)[1] == 1);

    cs.push_back(make_eq(rv({1, 0}), 5));
    CHECK_FALSE(solve_constraints(2, cs).has_value());
}

TEST_CASE("implicit equalities") {
    // x >= 0, y >= 0, x + y <= 0 forces x = y = 0: all three are tight
    std::vector<LinConstraint> cs;
    cs.push_back(make_ge(rv({1, 0}), 0));
    cs.push_back(make_ge(rv({0, 1}), 0));
    cs.push_back(make_ge(rv({-1, -1}), 0));
    auto tight = implicit_equalities(2, cs);
    REQUIRE(tight.size() == 3);

    // x >= 0, x + y >= 1: nothing is forced tight
    std::vector<LinConstraint> open;
    open.push_back(make_ge(rv({1, 0}), 0));
    open.push_back(make_ge(rv({1, 1}), 1));
    CHECK(implicit_equalities(2, open).empty());
}

TEST_CASE("extreme rays") {
    // {x >= 0, y >= 0}: rays e1, e2
    IntMatrix orthant = IntMatrix::from_rows({iv({1, 0}), iv({0, 1})}, 2);
    auto rays = extreme_rays(orthant);
    REQUIRE(rays.size() == 2);
    CHECK(rays[0] == iv({0, 1}));
    CHECK(rays[1] == iv({1, 0}));

    // {x >= 0, x + y >= 0}: rays (0,1) and (1,-1)
    IntMatrix wedge = IntMatrix::from_rows({iv({1, 0}), iv({1, 1})}, 2);
    auto wrays = extreme_rays(wedge);
    REQUIRE(wrays.size() == 2);
    CHECK(wrays[0] == iv({0, 1}));
    CHECK(wrays[1] == iv({1, -1}));

    // a single halfplane has lineality, which is rejected
    IntMatrix half = IntMatrix::from_rows({iv({1, 0})}, 2);
    CHECK_THROWS_AS(extreme_rays(half), DomainError);
}
