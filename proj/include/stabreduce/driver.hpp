#pragma once

// The reduction loop: repeatedly blow up the maximal-stabilizer locus off
// the stable part and delete the saturation strict transforms, until the
// stabilizer dimension is locally constant. Each stage is recorded, the
// exceptional divisor is carried along, and a finished trace can be
// re-verified from scratch, independently of the code that produced it.

#include <optional>
#include <string>
#include <vector>

#include "stabreduce/stability.hpp"
#include "stabreduce/transform.hpp"

namespace stabreduce {

struct ToricStage {
    StabilityReport before;  // stability stratification of the stage input
    TransformStep step;

    bool operator==(const ToricStage&) const = default;
};

struct ToricTrace {
    ToricStack initial;
    std::vector<IntVec> initial_divisor;  // rays of the initial fan
    std::vector<ToricStage> steps;
    ToricStack final_stack;
    std::vector<IntVec> exceptional;  // divisor after the last step
    StabilityReport final_report;
    GerbeClass final_class;
};

// Requires a nonempty stable locus. Runs at most free_rank(A) steps, each
// strictly dropping the maximal stabilizer dimension; the final stack has
// locally constant stabilizer dimension (tame when it is zero, a gerbe
// over a tame stack otherwise). The stack sequence does not depend on the
// initial divisor; only the divisor bookkeeping does.
ToricTrace reduce(const ToricStack& x, const std::vector<IntVec>& initial_divisor = {});

struct MonomialComponentOutcome {
    int component;
    std::vector<int> coords;         // local coordinate -> global coordinate
    bool died;                       // strict transform empty
    std::optional<ToricTrace> rest;  // continuation on the local model
};

struct MonomialTrace {
    MonomialStack initial;
    MonomialPartition partition;
    std::optional<MonomialTransform> blowup;  // absent when all points stable
    std::vector<MonomialComponentOutcome> components;
};

// Requires every component stable. The center must be a single coordinate
// subspace and the component strict transforms must separate after the
// blowup; otherwise the run is refused, since the reduced model would not
// stay a union of coordinate subspaces.
MonomialTrace reduce_monomial(const MonomialStack& x);

struct TraceCheck {
    bool ok = true;
    std::vector<std::string> failures;
};

TraceCheck verify_trace(const ToricTrace& t);
TraceCheck verify_trace(const MonomialTrace& t);

}  // namespace stabreduce
