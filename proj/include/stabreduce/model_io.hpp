#pragma once

// JSON model documents, trace serialization, DOT fan export, and the
// deterministic worked-example checks behind the verify command.
//
// Integers are emitted as JSON numbers while they fit 53 bits and as decimal
// strings beyond that; both forms are accepted on input. Groups serialize in
// the canonical presentation (free rows first, then one row per invariant
// factor), which is also the only accepted input presentation.

#include <optional>
#include <string>
#include <vector>

#include "stabreduce/driver.hpp"
#include "stabreduce/graded.hpp"
#include "stabreduce/invariants.hpp"

namespace stabreduce {

// the linearization-variation family: A^2 x P(1, a), O(i) twisted by j
struct VargitModel {
    Int a;
    Int i;
    Int j;

    bool operator==(const VargitModel&) const = default;
};

// one parsed input document; exactly one payload is set, per kind
struct ModelDocument {
    enum class Kind { fan, monomial, gm_poly, vargit };

    Kind kind;
    std::optional<ToricStack> fan_model;
    std::optional<MonomialStack> monomial_model;
    std::optional<GradedAction> poly_model;
    std::optional<VargitModel> vargit_model;
    int degree_bound = 0;  // 0: unspecified, resolver picks env/default
    std::vector<IntVec> initial_divisor;

    bool operator==(const ModelDocument&) const = default;
};

// strict schema validation; diagnostics name the offending field.
// Rejects unknown fields, non-smooth cones, out-of-range ray indices,
// non-canonical torsion lists, and inhomogeneous polynomial generators.
ModelDocument parse_model(const std::string& text);

// canonical serialization: parse(show(parse(t))) == parse(t)
std::string show_model(const ModelDocument& m);

// rays as integer tuples, cones as sorted ray-index lists (maximal only)
std::string fan_to_json(const Fan& f);
// the face lattice as a digraph, edges = facet relations
std::string fan_to_dot(const Fan& f);

// stability / stratification / fixed-point report, by model kind
std::string analysis_report(const ModelDocument& m, int degree_bound);

// full step-by-step trace with stability profiles, moduli charts per
// output cone, and the verification outcome
std::string trace_report(const ToricTrace& t, const TraceCheck& check);
std::string trace_report(const MonomialTrace& t, const TraceCheck& check);

struct BuiltinCheck {
    std::string name;
    bool pass;
    std::string detail;  // empty when passing
};

// the built-in worked examples; all deterministic, each well under a second
std::vector<BuiltinCheck> builtin_checks();

}  // namespace stabreduce
