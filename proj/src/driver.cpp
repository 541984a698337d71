#include "stabreduce/driver.hpp"

#include <algorithm>
#include <set>

#include "stabreduce/error.hpp"

namespace stabreduce {

namespace {

bool all_stable_report(const StabilityReport& rep) { return rep.max_dim == rep.min_dim; }

}  // namespace

ToricTrace reduce(const ToricStack& x, const std::vector<IntVec>& initial_divisor) {
    for (const IntVec& r : initial_divisor) {
        Cone ray(x.fan.rank(), {r});
        SR_REQUIRE(x.fan.contains(ray), "reduce: the initial divisor is not a ray of the fan");
    }
    StabilityReport rep = stable_locus(x);
    if (rep.kind == Stability::not_stable)
        throw DomainError("reduce: the stack has no stable points");
    std::vector<ToricStage> steps;
    ToricStack cur = x;
    std::vector<IntVec> e = initial_divisor;
    int prev_max = rep.max_dim + 1;
    while (!all_stable_report(rep)) {
        SR_CHECK(rep.kind != Stability::not_stable, "reduce: stability lost along the way");
        SR_CHECK(rep.max_dim < prev_max, "reduce: stabilizer maximum failed to decrease");
        SR_CHECK(int(steps.size()) < x.group.free_rank(),
                 "reduce: more steps than the group dimension");
        prev_max = rep.max_dim;
        MaxLocus ml = max_locus(cur);
        SR_CHECK(ml.dim == rep.max_dim, "reduce: maximal locus dimension mismatch");
        TransformStep step = reichstein_fan(cur, ml.cones, e);
        cur = step.output;
        e = step.exceptional_rays;
        steps.push_back(ToricStage{rep, std::move(step)});
        rep = stable_locus(cur);
    }
    GerbeClass cls = classify_gerbe(cur);
    SR_CHECK(cls != GerbeClass::none, "reduce: final stabilizer dimension is not constant");
    return ToricTrace{x, initial_divisor, std::move(steps), std::move(cur),
                      std::move(e), std::move(rep), cls};
}

MonomialTrace reduce_monomial(const MonomialStack& x) {
    for (size_t i = 0; i < x.supports.size(); ++i) {
        ComponentModel cm = component_model(x, int(i));
        if (stable_locus(cm.stack).kind == Stability::not_stable)
            throw DomainError("reduce: component " + std::to_string(i) +
                              " has no stable points");
    }
    MonomialPartition part = monomial_partition(x);
    std::vector<MonomialComponentOutcome> outcomes;
    if (part.all_stable) {
        for (size_t i = 0; i < x.supports.size(); ++i) {
            ComponentModel cm = component_model(x, int(i));
            ToricTrace rest = reduce(cm.stack);
            SR_CHECK(rest.steps.empty(), "reduce: a stable union asked for further blowups");
            outcomes.push_back(
                MonomialComponentOutcome{int(i), cm.coords, false, std::move(rest)});
        }
        return MonomialTrace{x, std::move(part), std::nullopt, std::move(outcomes)};
    }
    if (part.center_supports.size() != 1)
        throw UnsupportedError(
            "reduce: the blowup center has several components; only a single "
            "coordinate subspace is supported");
    MonomialTransform mt = monomial_saturated_blowup(x, part.center_supports[0]);
    if (!mt.overlaps.empty())
        throw UnsupportedError(
            "reduce: component strict transforms still meet after the blowup; "
            "the model does not stay a union of coordinate subspaces");
    for (const MonomialComponentStep& piece : mt.pieces) {
        MonomialComponentOutcome o;
        o.component = piece.component;
        o.coords = piece.coords;
        o.died = piece.died;
        if (!piece.died)
            o.rest = reduce(piece.step->output, piece.step->exceptional_rays);
        outcomes.push_back(std::move(o));
    }
    return MonomialTrace{x, std::move(part), std::move(mt), std::move(outcomes)};
}

TraceCheck verify_trace(const ToricTrace& t) {
    TraceCheck out;
    auto fail = [&](int step, const std::string& what) {
        out.ok = false;
        out.failures.push_back(
            (step >= 0 ? "step " + std::to_string(step) + ": " : "final: ") + what);
    };
    ToricStack cur = t.initial;
    std::vector<IntVec> e = t.initial_divisor;
    int prev_max = -1;
    for (size_t l = 0; l < t.steps.size(); ++l) {
        const ToricStage& stage = t.steps[l];
        const TransformStep& s = stage.step;
        if (!(s.input == cur)) {
            fail(int(l), "input stack does not chain from the previous output");
            return out;
        }
        StabilityReport rep = stable_locus(cur);
        if (!(rep == stage.before))
            fail(int(l), "recorded stability report disagrees with recomputation");
        if (all_stable_report(rep))
            fail(int(l), "step taken on an already reduced stack");
        if (l > 0 && rep.max_dim >= prev_max)
            fail(int(l), "maximal stabilizer dimension did not decrease");
        prev_max = rep.max_dim;
        MaxLocus ml = max_locus(cur);
        if (!(ml.cones == s.center))
            fail(int(l), "center is not the maximal-stabilizer locus");
        TransformStep redo = reichstein_fan(cur, s.center, e);
        if (!(redo == s))
            fail(int(l),
                 "transform disagrees with recomputation (divisor bookkeeping included)");
        // orbits off the saturation pass through untouched: the original
        // cones outside the saturation reappear verbatim, and no cone
        // without a new ray lands outside it
        std::vector<Cone> before_iso, after_iso;
        for (const Cone& c : cur.fan.cones())
            if (!s.sat.contains(c)) before_iso.push_back(c);
        std::set<IntVec> new_rays(s.barycenters.begin(), s.barycenters.end());
        for (const Cone& c : s.output.fan.cones()) {
            bool has_new = false;
            for (const IntVec& g : c.gens())
                if (new_rays.count(g)) has_new = true;
            if (!has_new && !s.sat.contains(c)) after_iso.push_back(c);
        }
        if (!(before_iso == after_iso))
            fail(int(l), "the transform moved orbits away from the saturation");
        if (max_stabilizer_dim(s.output) >= rep.max_dim)
            fail(int(l), "output stabilizer maximum did not drop");
        cur = s.output;
        e = s.exceptional_rays;
    }
    if (!(cur == t.final_stack)) fail(-1, "final stack does not match the last output");
    if (!(e == t.exceptional)) fail(-1, "final divisor does not match the bookkeeping");
    StabilityReport rep = stable_locus(cur);
    if (!(rep == t.final_report))
        fail(-1, "recorded final stability report disagrees with recomputation");
    if (!all_stable_report(rep)) fail(-1, "stabilizer dimension is not locally constant");
    for (const Cone& c : cur.fan.cones())
        if (!rep.is_stable_cone(c)) fail(-1, "a final cone is not stable");
    GerbeClass g = classify_gerbe(cur);
    if (g != t.final_class) fail(-1, "recorded classification disagrees");
    if (g == GerbeClass::none) fail(-1, "final stack is neither tame nor a gerbe");
    if (int(t.steps.size()) > t.initial.group.free_rank())
        fail(-1, "more steps than the group dimension");
    return out;
}

TraceCheck verify_trace(const MonomialTrace& t) {
    TraceCheck out;
    auto fail = [&](const std::string& what) {
        out.ok = false;
        out.failures.push_back(what);
    };
    MonomialPartition part = monomial_partition(t.initial);
    if (!(part == t.partition)) fail("recorded partition disagrees with recomputation");
    if (part.all_stable) {
        if (t.blowup) fail("blowup recorded although every point is stable");
        if (t.components.size() != t.initial.supports.size())
            fail("component outcomes do not cover the components");
        for (const MonomialComponentOutcome& o : t.components) {
            std::string name = "component " + std::to_string(o.component) + ": ";
            if (o.died || !o.rest) {
                fail(name + "missing continuation on a stable union");
                continue;
            }
            if (!o.rest->steps.empty()) fail(name + "blowups recorded on a stable union");
            ComponentModel cm = component_model(t.initial, o.component);
            if (!(o.rest->initial == cm.stack) || o.coords != cm.coords)
                fail(name + "continuation does not start at the component model");
            TraceCheck sub = verify_trace(*o.rest);
            for (const std::string& f : sub.failures) fail(name + f);
        }
        return out;
    }
    if (!t.blowup) {
        fail("missing blowup on a union with non-stable points");
        return out;
    }
    if (part.center_supports.size() != 1 ||
        t.blowup->center != part.center_supports.front())
        fail("blowup center is not the partition center");
    MonomialTransform redo = monomial_saturated_blowup(t.initial, t.blowup->center);
    if (!(redo == *t.blowup)) fail("blowup disagrees with recomputation");
    if (!t.blowup->overlaps.empty()) fail("component strict transforms still meet");
    if (t.components.size() != t.blowup->pieces.size()) {
        fail("component outcomes do not cover the pieces");
        return out;
    }
    for (size_t i = 0; i < t.components.size(); ++i) {
        const MonomialComponentOutcome& o = t.components[i];
        const MonomialComponentStep& piece = t.blowup->pieces[i];
        std::string name = "component " + std::to_string(o.component) + ": ";
        if (o.component != piece.component || o.coords != piece.coords ||
            o.died != piece.died)
            fail(name + "outcome does not match the blowup piece");
        if (o.died) {
            if (o.rest) fail(name + "continuation recorded on a dead component");
            continue;
        }
        if (!o.rest || !piece.step) {
            fail(name + "missing continuation on a surviving component");
            continue;
        }
        if (!(o.rest->initial == piece.step->output) ||
            o.rest->initial_divisor != piece.step->exceptional_rays)
            fail(name + "continuation does not start at the blowup output");
        TraceCheck sub = verify_trace(*o.rest);
        for (const std::string& f : sub.failures) fail(name + f);
    }
    return out;
}

}  // namespace stabreduce
