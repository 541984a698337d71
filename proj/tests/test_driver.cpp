#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "stabreduce/driver.hpp"
#include "stabreduce/error.hpp"

using namespace stabreduce;

namespace {

IntVec iv(std::initializer_list<long> xs) { return IntVec(xs.begin(), xs.end()); }

IntMatrix rows(std::vector<IntVec> rs, int cols) {
    return IntMatrix::from_rows(std::move(rs), cols);
}

ToricStack torus_stack(int n, std::vector<IntVec> w) {
    return make_toric_stack(orthant_fan(n), DiagonalizableGroup::torus(rows(std::move(w), n)));
}

Cone embed(const Cone& c) {
    std::vector<IntVec> gens;
    for (const IntVec& g : c.gens()) {
        IntVec e = g;
        e.push_back(Int(0));
        gens.push_back(std::move(e));
    }
    return Cone(c.rank() + 1, gens);
}

// X x A^1 with the group acting trivially on the new coordinate
ToricStack product_with_line(const ToricStack& x) {
    int n = x.fan.rank();
    IntVec axis(size_t(n) + 1, Int(0));
    axis[size_t(n)] = 1;
    std::vector<Cone> cs;
    for (const Cone& c : x.fan.cones()) {
        std::vector<IntVec> gens;
        for (const IntVec& g : c.gens()) {
            IntVec e = g;
            e.push_back(Int(0));
            gens.push_back(std::move(e));
        }
        cs.push_back(Cone(n + 1, gens));
        gens.push_back(axis);
        cs.push_back(Cone(n + 1, gens));
    }
    return make_toric_stack(Fan(n + 1, cs), x.group.with_zero_weight_coordinate());
}

}  // namespace

TEST_CASE("reduction refuses inputs without stable points") {
    CHECK_THROWS_AS(reduce(torus_stack(1, {iv({1})})), DomainError);
    CHECK_THROWS_AS(reduce(torus_stack(2, {iv({1, 1})})), DomainError);
    // no nonconstant invariants, so the saturation of any fixed point is everything
    CHECK_THROWS_AS(reduce(torus_stack(2, {iv({1, 0})})), DomainError);
    CHECK_THROWS_AS(reduce(torus_stack(2, {iv({1, 0}), iv({0, 1})})), DomainError);

    // monomial models are refused when any component fails on its own
    DiagonalizableGroup g2 = DiagonalizableGroup::torus(rows({iv({1, 1})}, 2));
    CHECK_THROWS_AS(reduce_monomial(make_monomial_stack(2, {0b01u, 0b10u}, g2)), DomainError);
    DiagonalizableGroup g4 = DiagonalizableGroup::torus(rows({iv({1, 0, 1, 0})}, 4));
    CHECK_THROWS_AS(reduce_monomial(make_monomial_stack(4, {0b0011u, 0b1100u}, g4)),
                    DomainError);
}

TEST_CASE("one step on the plane with opposite weights") {
    ToricStack x = torus_stack(2, {iv({1, -1})});
    ToricTrace t = reduce(x);

    CHECK(t.initial == x);
    CHECK(t.initial_divisor.empty());
    REQUIRE(t.steps.size() == 1);

    const ToricStage& st = t.steps[0];
    CHECK(st.before.min_dim == 0);
    CHECK(st.before.max_dim == 1);
    CHECK(st.before.kind == Stability::properly_stable);

    Cone orthant(2, {iv({1, 0}), iv({0, 1})});
    CHECK(st.step.center == std::vector<Cone>{orthant});
    CHECK(st.step.barycenters == std::vector<IntVec>{iv({1, 1})});
    CHECK(st.step.sat.minimal_cones ==
          std::vector<Cone>{Cone(2, {iv({0, 1})}), Cone(2, {iv({1, 0})})});
    CHECK(st.step.output.fan == Fan(2, {Cone(2, {iv({1, 1})})}));
    CHECK(st.step.exceptional_rays == std::vector<IntVec>{iv({1, 1})});

    CHECK(t.final_stack == st.step.output);
    CHECK(t.exceptional == std::vector<IntVec>{iv({1, 1})});
    CHECK(t.final_report.min_dim == 0);
    CHECK(t.final_report.max_dim == 0);
    CHECK(t.final_class == GerbeClass::tame);

    TraceCheck v = verify_trace(t);
    CHECK(v.ok);
    CHECK(v.failures.empty());
}

TEST_CASE("a second reduction has nothing left to do") {
    ToricTrace t = reduce(torus_stack(2, {iv({1, -1})}));
    ToricTrace again = reduce(t.final_stack);
    CHECK(again.steps.empty());
    CHECK(again.final_stack == t.final_stack);
    CHECK(again.exceptional.empty());
    CHECK(again.final_class == GerbeClass::tame);
    CHECK(verify_trace(again).ok);
}

TEST_CASE("blowup of the threefold with mixed weights") {
    ToricStack x = torus_stack(3, {iv({1, 1, -1})});
    ToricTrace t = reduce(x);
    REQUIRE(t.steps.size() == 1);

    const TransformStep& s = t.steps[0].step;
    Cone orthant(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})});
    CHECK(s.center == std::vector<Cone>{orthant});
    CHECK(s.barycenters == std::vector<IntVec>{iv({1, 1, 1})});
    // the saturation of the fixed point: the hyperplane x3 = 0 and the plane x1 = x2 = 0
    CHECK(s.sat.minimal_cones ==
          std::vector<Cone>{Cone(3, {iv({0, 0, 1})}),
                            Cone(3, {iv({0, 1, 0}), iv({1, 0, 0})})});

    IntVec u = iv({1, 1, 1});
    Fan expected(3, {Cone(3, {iv({0, 1, 0}), u}), Cone(3, {iv({1, 0, 0}), u})});
    CHECK(t.final_stack.fan == expected);
    CHECK(t.exceptional == std::vector<IntVec>{u});
    CHECK(t.final_class == GerbeClass::tame);
    CHECK(verify_trace(t).ok);
}

TEST_CASE("finite stabilizers need no steps") {
    DiagonalizableGroup mu2(rows({iv({2})}, 1), rows({iv({1, 1})}, 2));
    REQUIRE(mu2.free_rank() == 0);
    ToricStack x = make_toric_stack(orthant_fan(2), mu2);
    ToricTrace t = reduce(x);
    CHECK(t.steps.empty());
    CHECK(t.final_stack == x);
    CHECK(t.final_class == GerbeClass::tame);
    CHECK(verify_trace(t).ok);
}

TEST_CASE("rank two torus resolved in a single step") {
    ToricTrace t = reduce(torus_stack(3, {iv({1, -1, 0}), iv({0, 1, -1})}));
    REQUIRE(t.steps.size() == 1);
    CHECK(t.steps[0].before.max_dim == 2);
    CHECK(t.steps[0].step.sat.minimal_cones ==
          std::vector<Cone>{Cone(3, {iv({0, 0, 1})}), Cone(3, {iv({0, 1, 0})}),
                            Cone(3, {iv({1, 0, 0})})});
    CHECK(t.final_stack.fan == Fan(3, {Cone(3, {iv({1, 1, 1})})}));
    CHECK(t.final_class == GerbeClass::tame);
    CHECK(verify_trace(t).ok);
}

TEST_CASE("rank two torus resolved in two steps") {
    ToricStack x = torus_stack(4, {iv({1, -1, 0, 0}), iv({0, 0, 1, -1})});
    REQUIRE(x.group.free_rank() == 2);
    ToricTrace t = reduce(x);
    REQUIRE(t.steps.size() == 2);

    CHECK(t.steps[0].before.max_dim == 2);
    CHECK(t.steps[0].step.barycenters == std::vector<IntVec>{iv({1, 1, 1, 1})});

    // the second center has two disjoint components
    CHECK(t.steps[1].before.max_dim == 1);
    CHECK(t.steps[1].step.center ==
          std::vector<Cone>{Cone(4, {iv({0, 0, 0, 1}), iv({0, 0, 1, 0})}),
                            Cone(4, {iv({0, 1, 0, 0}), iv({1, 0, 0, 0})})});
    CHECK(t.steps[1].step.barycenters ==
          std::vector<IntVec>{iv({0, 0, 1, 1}), iv({1, 1, 0, 0})});

    IntVec u = iv({1, 1, 1, 1});
    Fan expected(4, {Cone(4, {iv({0, 0, 1, 1}), u}), Cone(4, {iv({1, 1, 0, 0}), u})});
    CHECK(t.final_stack.fan == expected);
    CHECK(t.exceptional == std::vector<IntVec>{iv({0, 0, 1, 1}), iv({1, 1, 0, 0}), u});
    CHECK(t.final_report.max_dim == 0);
    CHECK(t.final_class == GerbeClass::tame);
    CHECK(verify_trace(t).ok);
}

TEST_CASE("a prior exceptional divisor rides along unchanged") {
    ToricStack x = torus_stack(3, {iv({1, 1, -1})});
    ToricTrace plain = reduce(x);
    ToricTrace seeded = reduce(x, {iv({1, 0, 0})});

    REQUIRE(seeded.steps.size() == plain.steps.size());
    for (size_t l = 0; l < plain.steps.size(); ++l) {
        CHECK(seeded.steps[l].step.center == plain.steps[l].step.center);
        CHECK(seeded.steps[l].step.output == plain.steps[l].step.output);
        CHECK(seeded.steps[l].before == plain.steps[l].before);
    }
    CHECK(seeded.final_stack == plain.final_stack);
    CHECK(seeded.final_class == plain.final_class);
    // the seed ray survives the deletions here, so it stays exceptional
    CHECK(seeded.exceptional == std::vector<IntVec>{iv({1, 0, 0}), iv({1, 1, 1})});
    CHECK(verify_trace(seeded).ok);

    // divisor rays must belong to the fan
    CHECK_THROWS_AS(reduce(x, {iv({1, 2, 3})}), DomainError);
}

TEST_CASE("trace verification catches tampering") {
    ToricStack x = torus_stack(3, {iv({1, 1, -1})});
    ToricTrace good = reduce(x);
    REQUIRE(verify_trace(good).ok);

    SUBCASE("forged exceptional rays") {
        ToricTrace t = good;
        t.steps[0].step.exceptional_rays.push_back(iv({5, 5, 5}));
        TraceCheck v = verify_trace(t);
        CHECK_FALSE(v.ok);
        CHECK_FALSE(v.failures.empty());
    }
    SUBCASE("wrong center") {
        ToricTrace t = good;
        t.steps[0].step.center = {Cone(3, {iv({1, 0, 0})})};
        CHECK_FALSE(verify_trace(t).ok);
    }
    SUBCASE("wrong stability report") {
        ToricTrace t = good;
        t.steps[0].before.max_dim = 2;
        CHECK_FALSE(verify_trace(t).ok);
    }
    SUBCASE("wrong final classification") {
        ToricTrace t = good;
        t.final_class = GerbeClass::gerbe_over_tame;
        CHECK_FALSE(verify_trace(t).ok);
    }
    SUBCASE("swapped final stack") {
        ToricTrace t = good;
        t.final_stack = x;
        CHECK_FALSE(verify_trace(t).ok);
    }
    SUBCASE("dropped step") {
        ToricTrace t = good;
        t.steps.clear();
        CHECK_FALSE(verify_trace(t).ok);
    }
}

TEST_CASE("union of a plane and a line across the origin") {
    // V(x1,x2) u V(x3) in A^3 with weights (1,-1,0): the only point with a
    // positive dimensional stabilizer is the origin, which lies in both parts
    DiagonalizableGroup g = DiagonalizableGroup::torus(rows({iv({1, -1, 0})}, 3));
    MonomialStack x = make_monomial_stack(3, {0b011u, 0b100u}, g);
    MonomialTrace t = reduce_monomial(x);

    CHECK(t.initial == x);
    CHECK_FALSE(t.partition.all_stable);
    CHECK(t.partition.center_supports == std::vector<Pattern>{0b111u});
    REQUIRE(t.blowup.has_value());
    REQUIRE(t.components.size() == 2);

    // the line keeps only x3; blowing up its origin is an isomorphism
    const MonomialComponentOutcome& line = t.components[0];
    CHECK(line.component == 0);
    CHECK(line.coords == std::vector<int>{2});
    CHECK_FALSE(line.died);
    REQUIRE(line.rest.has_value());
    CHECK(line.rest->steps.empty());
    CHECK(line.rest->final_stack.fan == orthant_fan(1));
    CHECK(line.rest->exceptional == std::vector<IntVec>{iv({1})});
    CHECK(line.rest->final_class == GerbeClass::gerbe_over_tame);

    // the plane carries the honest weight pair and loses its axes
    const MonomialComponentOutcome& plane = t.components[1];
    CHECK(plane.component == 1);
    CHECK(plane.coords == std::vector<int>{0, 1});
    CHECK_FALSE(plane.died);
    REQUIRE(plane.rest.has_value());
    CHECK(plane.rest->steps.empty());
    CHECK(plane.rest->final_stack.fan == Fan(2, {Cone(2, {iv({1, 1})})}));
    CHECK(plane.rest->exceptional == std::vector<IntVec>{iv({1, 1})});
    CHECK(plane.rest->final_class == GerbeClass::tame);

    TraceCheck v = verify_trace(t);
    CHECK(v.ok);
    CHECK(v.failures.empty());
}

TEST_CASE("a stable union needs no blowup at all") {
    // V(x1) u V(x2) in A^2 under a trivial action: one dimensional stabilizers
    // everywhere, so every point is stable and nothing gets blown up
    DiagonalizableGroup g = DiagonalizableGroup::torus(rows({iv({0, 0})}, 2));
    MonomialStack x = make_monomial_stack(2, {0b01u, 0b10u}, g);
    MonomialTrace t = reduce_monomial(x);
    CHECK(t.partition.all_stable);
    CHECK_FALSE(t.blowup.has_value());
    REQUIRE(t.components.size() == 2);
    for (const MonomialComponentOutcome& o : t.components) {
        CHECK_FALSE(o.died);
        REQUIRE(o.rest.has_value());
        CHECK(o.rest->steps.empty());
        CHECK(o.rest->final_class == GerbeClass::gerbe_over_tame);
    }
    CHECK(verify_trace(t).ok);
}

TEST_CASE("a center with several components is refused") {
    // V(x1) u V(x3) in A^4 with weights (0,1,0,-1): both components are stable,
    // but the maximal stabilizer locus splits into V(x1,x2,x4) and V(x2,x3,x4)
    DiagonalizableGroup g = DiagonalizableGroup::torus(rows({iv({0, 1, 0, -1})}, 4));
    MonomialStack x = make_monomial_stack(4, {0b0001u, 0b0100u}, g);
    MonomialPartition p = monomial_partition(x);
    CHECK_FALSE(p.all_stable);
    CHECK(p.center_supports == std::vector<Pattern>{0b1011u, 0b1110u});
    CHECK_THROWS_AS(reduce_monomial(x), UnsupportedError);
}

TEST_CASE("monomial trace verification catches tampering") {
    DiagonalizableGroup g = DiagonalizableGroup::torus(rows({iv({1, -1, 0})}, 3));
    MonomialStack x = make_monomial_stack(3, {0b011u, 0b100u}, g);
    MonomialTrace good = reduce_monomial(x);
    REQUIRE(verify_trace(good).ok);

    SUBCASE("forged center") {
        MonomialTrace t = good;
        t.partition.center_supports = {0b011u};
        CHECK_FALSE(verify_trace(t).ok);
    }
    SUBCASE("component marked dead") {
        MonomialTrace t = good;
        t.components[0].died = true;
        t.components[0].rest.reset();
        CHECK_FALSE(verify_trace(t).ok);
    }
    SUBCASE("forged continuation class") {
        MonomialTrace t = good;
        t.components[1].rest->final_class = GerbeClass::gerbe_over_tame;
        CHECK_FALSE(verify_trace(t).ok);
    }
    SUBCASE("dropped blowup") {
        MonomialTrace t = good;
        t.blowup.reset();
        CHECK_FALSE(verify_trace(t).ok);
    }
}

TEST_CASE("random reductions terminate, decrease, and verify") {
    std::mt19937 rng(722);
    std::uniform_int_distribution<int> dn(2, 4), dr(1, 2), dw(-2, 2);
    int ran = 0;
    for (int trial = 0; trial < 80; ++trial) {
        int n = dn(rng), r = dr(rng);
        std::vector<IntVec> w;
        for (int i = 0; i < r; ++i) {
            IntVec row(size_t(n), Int(0));
            for (auto& e : row) e = dw(rng);
            w.push_back(std::move(row));
        }
        ToricStack x = torus_stack(n, w);
        if (stable_locus(x).kind == Stability::not_stable) {
            CHECK_THROWS_AS(reduce(x), DomainError);
            continue;
        }
        ++ran;
        ToricTrace t = reduce(x);
        CHECK(int(t.steps.size()) <= x.group.free_rank());

        // stabilizer maxima drop strictly along the way
        int prev = x.fan.rank() + x.group.free_rank() + 1;
        for (const ToricStage& st : t.steps) {
            CHECK(st.before.max_dim < prev);
            prev = st.before.max_dim;
        }
        if (!t.steps.empty()) CHECK(t.final_report.max_dim < prev);
        CHECK(t.final_report.max_dim == t.final_report.min_dim);

        // the final exceptional rays are distinct rays of the final fan
        std::vector<IntVec> fr = t.final_stack.fan.rays();
        for (size_t i = 0; i < t.exceptional.size(); ++i) {
            CHECK(std::find(fr.begin(), fr.end(), t.exceptional[i]) != fr.end());
            for (size_t j = i + 1; j < t.exceptional.size(); ++j)
                CHECK(t.exceptional[i] != t.exceptional[j]);
        }

        TraceCheck v = verify_trace(t);
        CHECK(v.ok);
        if (!v.ok)
            for (const std::string& f : v.failures) MESSAGE(f);

        // seeding with an existing divisor never changes the spaces visited
        std::vector<IntVec> rays = x.fan.rays();
        if (!rays.empty()) {
            ToricTrace seeded = reduce(x, {rays[0]});
            REQUIRE(seeded.steps.size() == t.steps.size());
            for (size_t l = 0; l < t.steps.size(); ++l) {
                CHECK(seeded.steps[l].step.center == t.steps[l].step.center);
                CHECK(seeded.steps[l].step.output == t.steps[l].step.output);
            }
            CHECK(seeded.final_class == t.final_class);
            CHECK(verify_trace(seeded).ok);
        }
    }
    CHECK(ran >= 15);
}

TEST_CASE("a trivial torus factor changes nothing") {
    std::vector<ToricStack> cases;
    cases.push_back(torus_stack(2, {iv({1, -1})}));
    cases.push_back(torus_stack(3, {iv({1, 1, -1})}));
    cases.push_back(torus_stack(4, {iv({1, -1, 0, 0}), iv({0, 0, 1, -1})}));

    for (const ToricStack& x : cases) {
        ToricTrace tx = reduce(x);
        ToricTrace tp = reduce(product_with_line(x));
        REQUIRE(tp.steps.size() == tx.steps.size());
        for (size_t l = 0; l < tx.steps.size(); ++l) {
            std::vector<Cone> ec;
            for (const Cone& c : tx.steps[l].step.center) ec.push_back(embed(c));
            CHECK(tp.steps[l].step.center == ec);
            CHECK(tp.steps[l].step.output == product_with_line(tx.steps[l].step.output));
        }
        CHECK(tp.final_stack == product_with_line(tx.final_stack));
        CHECK(tp.final_class == tx.final_class);
        CHECK(verify_trace(tp).ok);
    }
}
