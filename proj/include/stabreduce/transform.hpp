#pragma once

// Saturated blowups on the fan model: star-subdivide at the centers, then
// delete the strict transforms of the saturation. On smooth input this is
// the Reichstein transform. The monomial variant works componentwise on a
// union of coordinate subspaces and reports which strict transforms still
// meet.

#include <optional>
#include <vector>

#include "stabreduce/saturation.hpp"
#include "stabreduce/stack.hpp"

namespace stabreduce {

struct TransformStep {
    ToricStack input;
    std::vector<Cone> center;         // canonical order
    std::vector<IntVec> barycenters;  // parallel to center
    SaturationResult sat;             // saturation of the center in the input
    std::vector<Cone> deleted_cones;  // removed from the subdivided fan
    ToricStack output;
    std::vector<IntVec> exceptional_rays;  // E after this step

    bool operator==(const TransformStep&) const = default;
};

// Subdivide at every center cone (stars must be pairwise disjoint), then
// delete the stars of the surviving saturation components. A saturation
// component inside the center itself has empty strict transform and deletes
// nothing (a ray center is a Cartier divisor: the fan returns unchanged).
// E = barycenter rays retained in the output plus prior exceptional rays
// that survive.
TransformStep reichstein_fan(const ToricStack& x, const std::vector<Cone>& center,
                             const std::vector<IntVec>& prior_exceptional = {});

struct MonomialComponentStep {
    int component;            // index into supports
    std::vector<int> coords;  // local coordinate -> global coordinate
    bool died;                // center contained the component
    std::optional<TransformStep> step;  // absent when died

    bool operator==(const MonomialComponentStep&) const = default;
};

struct MonomialTransform {
    Pattern center;
    std::vector<MonomialComponentStep> pieces;
    // pairs of live components whose strict transforms still intersect,
    // decided inside the subdivided ambient orthant fan
    std::vector<std::pair<int, int>> overlaps;

    bool operator==(const MonomialTransform&) const = default;
};

// Componentwise saturated blowup of a union of coordinate subspaces along
// the coordinate subspace V(center). Requires V(center) inside the union.
MonomialTransform monomial_saturated_blowup(const MonomialStack& x, Pattern center);

}  // namespace stabreduce
