#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <stabreduce/error.hpp>
#include <stabreduce/stability.hpp>
#include <stabreduce/transform.hpp>

using namespace stabreduce;

static IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

static Cone mk(int rank, std::initializer_list<std::initializer_list<long>> gens) {
    std::vector<IntVec> gs;
    for (auto g : gens) gs.push_back(IntVec(g.begin(), g.end()));
    return Cone(rank, std::move(gs));
}

static IntMatrix rows(std::initializer_list<std::initializer_list<long>> rs, int cols) {
    std::vector<IntVec> rr;
    for (auto r : rs) rr.push_back(IntVec(r.begin(), r.end()));
    return IntMatrix::from_rows(rr, cols);
}

static ToricStack torus_orthant(std::initializer_list<std::initializer_list<long>> wrows, int n) {
    return make_toric_stack(orthant_fan(n), DiagonalizableGroup::torus(rows(wrows, n)));
}

// the subdivided-but-not-yet-deleted fan covers the saturation stars exactly
// by the stars of the retained barycenter rays
static void check_exceptional_star_identity(const TransformStep& st) {
    for (const auto& sig : st.output.fan.cones()) {
        // smallest input cone containing sig (by generator membership)
        Cone smallest;
        bool found = false;
        for (const auto& tau : st.input.fan.cones()) {
            bool contains = true;
            for (const auto& g : sig.gens())
                if (!cone_contains(tau, g)) contains = false;
            if (contains && (!found || smallest.contains_cone_gens(tau))) {
                smallest = tau;
                found = true;
            }
        }
        REQUIRE(found);
        bool over_sat = st.sat.contains(smallest);
        bool meets_exceptional = false;
        for (const auto& u : st.barycenters)
            if (st.output.fan.contains(sig) && sig.has_gen(u)) meets_exceptional = true;
        // cones over the saturation either carry an exceptional ray or were
        // scheduled for deletion; cones off the saturation never do
        if (!over_sat) CHECK_FALSE(meets_exceptional);
        if (over_sat && !meets_exceptional) {
            // must be the center itself resubdivided away, i.e. sig contains
            // a center cone fully
            bool over_center = false;
            for (const auto& c : st.center)
                if (sig.contains_cone_gens(c)) over_center = true;
            CHECK_FALSE(over_center);
        }
    }
}

TEST_CASE("line with weight one contracts to a point") {
    auto x = torus_orthant({{1}}, 1);
    auto st = reichstein_fan(x, {mk(1, {{1}})});
    CHECK(st.output.fan.empty());
    CHECK(st.exceptional_rays.empty());
    REQUIRE(st.barycenters.size() == 1);
    CHECK(st.barycenters[0] == iv({1}));
    // everything was deleted: the whole subdivided fan (= input fan here)
    CHECK(st.deleted_cones.size() == 2);
    CHECK(st.sat.all_cones == x.fan.cones());
}

TEST_CASE("plane with weights (1,-1): blowup minus both strict transforms") {
    auto x = torus_orthant({{1, -1}}, 2);
    Cone orthant = mk(2, {{1, 0}, {0, 1}});
    auto st = reichstein_fan(x, {orthant});

    // output: the barycenter ray and the origin cone only
    REQUIRE(st.output.fan.cones().size() == 2);
    CHECK(st.output.fan.contains(Cone::zero(2)));
    CHECK(st.output.fan.contains(mk(2, {{1, 1}})));

    REQUIRE(st.exceptional_rays.size() == 1);
    CHECK(st.exceptional_rays[0] == iv({1, 1}));

    // deleted: both axis rays and their joins with the barycenter
    REQUIRE(st.deleted_cones.size() == 4);
    std::vector<Cone> expect = {mk(2, {{0, 1}}), mk(2, {{1, 0}}), mk(2, {{0, 1}, {1, 1}}),
                                mk(2, {{1, 0}, {1, 1}})};
    std::sort(expect.begin(), expect.end());
    CHECK(st.deleted_cones == expect);

    // the result is everywhere stable with trivial stabilizers
    auto rep = stable_locus(st.output);
    CHECK(rep.kind == Stability::properly_stable);
    CHECK(rep.stable_cones.size() == st.output.fan.cones().size());

    check_exceptional_star_identity(st);
}

TEST_CASE("A^3 with weights (1,1,-1)") {
    auto x = torus_orthant({{1, 1, -1}}, 3);
    Cone orthant = mk(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    auto st = reichstein_fan(x, {orthant});

    IntVec u = iv({1, 1, 1});
    auto maxc = st.output.fan.maximal_cones();
    REQUIRE(maxc.size() == 2);
    CHECK(maxc[0] == mk(3, {{0, 1, 0}, {1, 1, 1}}));
    CHECK(maxc[1] == mk(3, {{1, 0, 0}, {1, 1, 1}}));

    REQUIRE(st.exceptional_rays.size() == 1);
    CHECK(st.exceptional_rays[0] == u);

    // saturation components: V(z) ray and the cone over V(x,y)
    REQUIRE(st.sat.minimal_cones.size() == 2);
    CHECK(st.sat.minimal_cones[0] == mk(3, {{0, 0, 1}}));
    CHECK(st.sat.minimal_cones[1] == mk(3, {{1, 0, 0}, {0, 1, 0}}));

    // e3 and cone(e1,e2) both left the fan
    CHECK_FALSE(st.output.fan.contains(mk(3, {{0, 0, 1}})));
    CHECK_FALSE(st.output.fan.contains(mk(3, {{1, 0, 0}, {0, 1, 0}})));
    // the axis rays of x and y survive
    CHECK(st.output.fan.contains(mk(3, {{1, 0, 0}})));
    CHECK(st.output.fan.contains(mk(3, {{0, 1, 0}})));

    // one transform step removes the jump: now everywhere properly stable
    CHECK(max_stabilizer_dim(st.output) == 0);
    CHECK(stable_locus(st.output).kind == Stability::properly_stable);

    check_exceptional_star_identity(st);
}

TEST_CASE("ray center is a Cartier divisor: nothing changes") {
    auto x = torus_orthant({{0}}, 1);
    auto st = reichstein_fan(x, {mk(1, {{1}})});
    CHECK(st.output.fan == x.fan);
    CHECK(st.deleted_cones.empty());
    REQUIRE(st.exceptional_rays.size() == 1);
    CHECK(st.exceptional_rays[0] == iv({1}));
}

TEST_CASE("center must be in the fan, nonzero, with disjoint stars") {
    auto x = torus_orthant({{1, -1}}, 2);
    CHECK_THROWS_AS(reichstein_fan(x, {mk(2, {{1, 1}})}), DomainError);
    CHECK_THROWS_AS(reichstein_fan(x, {Cone::zero(2)}), DomainError);
    // two centers whose stars share the orthant
    CHECK_THROWS_AS(reichstein_fan(x, {mk(2, {{1, 0}}), mk(2, {{0, 1}})}), DomainError);
}

TEST_CASE("prior exceptional rays survive when their cones do") {
    auto x = torus_orthant({{1, 1, -1}}, 3);
    Cone orthant = mk(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    auto st = reichstein_fan(x, {orthant}, {iv({0, 1, 0})});
    // e2 survives as a ray of the output, so it stays exceptional
    REQUIRE(st.exceptional_rays.size() == 2);
    CHECK(st.exceptional_rays[0] == iv({0, 1, 0}));
    CHECK(st.exceptional_rays[1] == iv({1, 1, 1}));

    // a prior ray that is deleted drops out
    auto st2 = reichstein_fan(x, {orthant}, {iv({0, 0, 1})});
    REQUIRE(st2.exceptional_rays.size() == 1);
    CHECK(st2.exceptional_rays[0] == iv({1, 1, 1}));
}

TEST_CASE("two-step reduction of weights (1,0,-1),(0,1,-1)") {
    // rank-2 torus: generic stabilizer 0, origin stabilizer 2, axes jump to 1
    auto x = torus_orthant({{1, 0, -1}, {0, 1, -1}}, 3);
    CHECK(max_stabilizer_dim(x) == 2);

    auto m1 = max_locus(x);
    CHECK(m1.dim == 2);
    REQUIRE(m1.cones.size() == 1);
    auto st1 = reichstein_fan(x, m1.cones);
    int after1 = max_stabilizer_dim(st1.output);
    CHECK(after1 < 2);

    if (after1 > stable_locus(st1.output).min_dim) {
        auto m2 = max_locus(st1.output);
        auto st2 = reichstein_fan(st1.output, m2.cones, st1.exceptional_rays);
        CHECK(max_stabilizer_dim(st2.output) < after1);
        check_exceptional_star_identity(st2);
    }
    check_exceptional_star_identity(st1);
}

TEST_CASE("monomial blowup of the worked example") {
    auto g = DiagonalizableGroup::torus(rows({{1, -1, 0}}, 3));
    auto x = make_monomial_stack(3, {0b011u, 0b100u}, g);
    auto t = monomial_saturated_blowup(x, 0b111u);

    CHECK(t.center == 0b111u);
    REQUIRE(t.pieces.size() == 2);

    // component V(x,y): local model = trivial action on the z-line, center
    // V(z) locally = the origin of that line = a Cartier divisor
    const auto& p0 = t.pieces[0];
    CHECK_FALSE(p0.died);
    REQUIRE(p0.step.has_value());
    CHECK(p0.coords == std::vector<int>{2});
    CHECK(p0.step->output.fan == orthant_fan(1));
    REQUIRE(p0.step->exceptional_rays.size() == 1);
    CHECK(p0.step->exceptional_rays[0] == iv({1}));

    // component V(z): local model = plane with weights (1,-1), center the
    // origin: blowup minus the two strict transforms
    const auto& p1 = t.pieces[1];
    CHECK_FALSE(p1.died);
    REQUIRE(p1.step.has_value());
    CHECK(p1.coords == std::vector<int>{0, 1});
    CHECK(p1.step->output.fan.cones().size() == 2);
    CHECK(p1.step->output.fan.contains(mk(2, {{1, 1}})));

    // after the transform the strict transforms are disjoint
    CHECK(t.overlaps.empty());
}

TEST_CASE("monomial blowup along one component") {
    // X = V(x) u V(y), weights (1,-1), center V(x) (= the first component).
    // The first component dies by definition. On V(y), the x-axis with the
    // scaling action, every orbit closure meets the center, so the whole
    // strict transform is deleted as well.
    auto g = DiagonalizableGroup::torus(rows({{1, -1}}, 2));
    auto x = make_monomial_stack(2, {0b01u, 0b10u}, g);
    auto t = monomial_saturated_blowup(x, 0b01u);

    REQUIRE(t.pieces.size() == 2);
    CHECK(t.pieces[0].died);
    CHECK_FALSE(t.pieces[0].step.has_value());

    const auto& p1 = t.pieces[1];
    CHECK_FALSE(p1.died);
    REQUIRE(p1.step.has_value());
    CHECK(p1.step->output.fan.empty());
    CHECK(t.overlaps.empty());
}

TEST_CASE("monomial blowup center must lie in the union") {
    auto g = DiagonalizableGroup::torus(rows({{1, -1}}, 2));
    auto x = make_monomial_stack(2, {0b01u}, g);
    // V(y) is not inside V(x)
    CHECK_THROWS_AS(monomial_saturated_blowup(x, 0b10u), DomainError);
}

TEST_CASE("monomial blowup separates crossing axes") {
    // X = V(x) u V(y) in the plane with trivial action, center the origin:
    // the blowup pulls the two axes apart, they meet the exceptional line
    // in different points
    auto g = DiagonalizableGroup::torus(rows({{0, 0}}, 2));
    auto x = make_monomial_stack(2, {0b01u, 0b10u}, g);
    auto t = monomial_saturated_blowup(x, 0b11u);
    REQUIRE(t.pieces.size() == 2);
    CHECK_FALSE(t.pieces[0].died);
    CHECK_FALSE(t.pieces[1].died);
    // trivial action: locally a ray center on each line, fans unchanged
    CHECK(t.pieces[0].step->output.fan == orthant_fan(1));
    CHECK(t.pieces[1].step->output.fan == orthant_fan(1));
    CHECK(t.overlaps.empty());
}

TEST_CASE("monomial blowup reports surviving intersections") {
    // X = V(x) u V(y) in A^3, center the origin: the two planes meet in the
    // z-axis, which is not contained in the center, so the strict transforms
    // still intersect after the blowup
    auto g = DiagonalizableGroup::torus(rows({{0, 0, 0}}, 3));
    auto x = make_monomial_stack(3, {0b001u, 0b010u}, g);
    auto t = monomial_saturated_blowup(x, 0b111u);
    REQUIRE(t.pieces.size() == 2);
    CHECK_FALSE(t.pieces[0].died);
    CHECK_FALSE(t.pieces[1].died);
    REQUIRE(t.overlaps.size() == 1);
    CHECK(t.overlaps[0] == std::pair<int, int>(0, 1));

    // blowing up instead along the common line separates them
    auto t2 = monomial_saturated_blowup(x, 0b011u);
    CHECK(t2.overlaps.empty());
}
