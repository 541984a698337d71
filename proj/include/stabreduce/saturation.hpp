#pragma once

// Saturation of orbit closures under the good moduli space map: the set of
// points whose orbit closure meets the center. In the fan model an orbit
// O_tau lies in the saturation of C iff tau contains a center cone or a
// one-parameter subgroup of G drives the generic point of O_tau into a
// bigger orbit closure over C.

#include <optional>
#include <vector>

#include "stabreduce/stack.hpp"

namespace stabreduce {

// Witness lambda in Z^free_rank whose image under the cocharacter map lands
// in relint(image of tau') + span(tau): the limit of the generic point of
// O_tau under lambda(t), t -> 0, lies in O_{tau'}. Returns the primitive
// witness, or nullopt when no cocharacter works. tau == tau' is treated as
// "no motion": witness 0 for the zero cone, nullopt otherwise.
std::optional<IntVec> destabilizes(const ToricStack& x, const Cone& tau, const Cone& tau_prime);

struct SaturationResult {
    // inclusion-minimal cones whose orbit closures cover the saturation
    std::vector<Cone> minimal_cones;
    // parallel to minimal_cones; empty for cones already containing a center
    std::vector<std::optional<IntVec>> witnesses;
    // every fan cone whose orbit lies in the saturation, canonical order
    std::vector<Cone> all_cones;

    bool contains(const Cone& c) const;

    bool operator==(const SaturationResult&) const = default;
};

// Single-step scan: tau is saturated iff tau lies in the star of C or some
// fan cone tau' containing both tau and a center cone destabilizes it.
SaturationResult saturation(const ToricStack& x, const std::vector<Cone>& center);

}  // namespace stabreduce
