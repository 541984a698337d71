#include "stabreduce/transform.hpp"

#include <algorithm>

#include "stabreduce/error.hpp"

namespace stabreduce {

TransformStep reichstein_fan(const ToricStack& x, const std::vector<Cone>& center,
                             const std::vector<IntVec>& prior_exceptional) {
    SR_REQUIRE(!center.empty(), "transform needs at least one center cone");
    std::vector<Cone> cs = center;
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    for (const auto& c : cs) {
        SR_REQUIRE(x.fan.contains(c), "center cone is not a member of the fan");
        SR_REQUIRE(!c.is_zero_cone(), "center must be a proper orbit closure");
        SR_REQUIRE(is_smooth_cone(c), "center cone must be smooth");
    }
    for (const auto& sigma : x.fan.cones()) {
        int hits = 0;
        for (const auto& c : cs)
            if (sigma.contains_cone_gens(c)) ++hits;
        SR_REQUIRE(hits <= 1, "center components have overlapping stars");
    }

    TransformStep step{x, cs, {}, saturation(x, cs), {}, x, {}};

    Fan subdivided = x.fan;
    for (const auto& c : cs) {
        SR_CHECK(subdivided.contains(c), "center destroyed by an earlier subdivision");
        step.barycenters.push_back(primitive(barycenter(c)));
        subdivided = star_subdivision(subdivided, c);
    }

    auto in_center_star = [&cs](const Cone& c) {
        for (const auto& s : cs)
            if (c.contains_cone_gens(s)) return true;
        return false;
    };

    // strict transform of each saturation component V(tau): tau survives the
    // subdivision whenever it contains no center; its star in the subdivision
    // is deleted. Components inside the center transform to nothing.
    std::vector<Cone> deleted;
    for (const auto& tau : step.sat.minimal_cones) {
        if (in_center_star(tau)) continue;
        SR_CHECK(subdivided.contains(tau), "saturation component lost by subdivision");
        for (const auto& c : subdivided.star(tau)) deleted.push_back(c);
    }
    std::sort(deleted.begin(), deleted.end());
    deleted.erase(std::unique(deleted.begin(), deleted.end()), deleted.end());
    step.deleted_cones = deleted;

    std::vector<Cone> kept;
    for (const auto& c : subdivided.cones())
        if (!std::binary_search(deleted.begin(), deleted.end(), c)) kept.push_back(c);
    Fan out(x.fan.rank(), kept);
    SR_CHECK(int(out.cones().size()) == int(kept.size()),
             "deleting stars must leave a face-closed fan");
    SR_CHECK(out.is_smooth(), "transform of a smooth fan must be smooth");
    step.output = ToricStack{std::move(out), x.group};

    std::vector<IntVec> e;
    for (const auto& u : step.barycenters)
        if (step.output.fan.contains(Cone(x.fan.rank(), {u}))) e.push_back(u);
    for (const auto& v : prior_exceptional) {
        IntVec p = primitive(v);
        if (step.output.fan.contains(Cone(x.fan.rank(), {p}))) e.push_back(p);
    }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    step.exceptional_rays = std::move(e);
    return step;
}

namespace {

// local cone of a component: unit vectors for the mask bits, plus the local
// barycenter of the center when the ambient cone used it
Cone local_cone(int local_n, Pattern mask, bool with_u, Pattern center_local) {
    std::vector<IntVec> gens;
    for (int j = 0; j < local_n; ++j)
        if (mask & (1u << j)) {
            IntVec e(local_n, Int(0));
            e[j] = 1;
            gens.push_back(e);
        }
    if (with_u) {
        IntVec u(local_n, Int(0));
        for (int j = 0; j < local_n; ++j)
            if (center_local & (1u << j)) u[j] = 1;
        gens.push_back(u);
    }
    return Cone(local_n, std::move(gens));
}

Pattern to_local(Pattern global, const std::vector<int>& coords) {
    Pattern z = 0;
    for (size_t j = 0; j < coords.size(); ++j)
        if (global & (1u << coords[j])) z |= (1u << j);
    return z;
}

}  // namespace

MonomialTransform monomial_saturated_blowup(const MonomialStack& x, Pattern center) {
    bool inside = false;
    for (const auto& s : x.supports)
        if ((center & s) == s) inside = true;
    SR_REQUIRE(inside, "center subspace must lie inside the union");

    MonomialTransform out;
    out.center = center;
    for (size_t i = 0; i < x.supports.size(); ++i) {
        MonomialComponentStep piece;
        piece.component = int(i);
        auto model = component_model(x, int(i));
        piece.coords = model.coords;
        // center contains the component whenever its constraints are a subset
        piece.died = (center & x.supports[i]) == center;
        if (!piece.died) {
            Pattern local = to_local(center, model.coords);
            piece.step = reichstein_fan(
                model.stack, {local_cone(int(model.coords.size()), local, false, 0)});
        }
        out.pieces.push_back(std::move(piece));
    }

    // Two strict transforms intersect iff some cone of the subdivided ambient
    // orthant fan lies over both components and survives both componentwise
    // deletions. Ambient cones are (coordinate subset G, optional barycenter
    // of the center) with G not containing the center; such a cone projects
    // into component i's chart as (G minus S_i, same barycenter flag).
    const Pattern full = (Pattern(1) << x.nvars) - 1;
    auto survives_both = [&out, center](Pattern g, bool with_u, size_t i, size_t j) {
        for (size_t t : {i, j}) {
            const auto& piece = out.pieces[t];
            Pattern lg = to_local(g, piece.coords);
            Pattern lc = to_local(center, piece.coords);
            Cone lcone = local_cone(int(piece.coords.size()), lg, with_u, lc);
            if (!piece.step->output.fan.contains(lcone)) return false;
        }
        return true;
    };
    for (size_t i = 0; i < x.supports.size(); ++i) {
        if (out.pieces[i].died) continue;
        for (size_t j = i + 1; j < x.supports.size(); ++j) {
            if (out.pieces[j].died) continue;
            const Pattern base = x.supports[i] | x.supports[j];
            const Pattern free_bits = full & ~base;
            bool meet = false;
            Pattern rest = 0;
            while (!meet) {
                Pattern g = base | rest;
                // cones over V(g) survive the ambient subdivision iff g does
                // not contain the whole center
                if ((center & g) != center)
                    meet = survives_both(g, false, i, j) || survives_both(g, true, i, j);
                if (rest == free_bits) break;
                rest = (rest - free_bits) & free_bits;
            }
            if (meet) out.overlaps.emplace_back(int(i), int(j));
        }
    }
    return out;
}

}  // namespace stabreduce
