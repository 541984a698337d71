#pragma once

// Equivariant polynomial computations for one-parameter torus actions on
// singular affine cones: fixed loci, tangent cones via initial forms, the
// two limit components of the origin saturation, fixed points of the
// transform, and the exceptional locus of the saturated blowup.
//
// Tangent cones are accepted only when the initial forms are transparent:
// homogeneous input, a single generator, or an all-monomial initial
// system. Anything else would need a standard-basis engine and is refused.
// Invariant computations enumerate weight-zero monomials, which generate
// the invariants whenever every coordinate weight is nonzero.

#include <map>
#include <string>
#include <vector>

#include "stabreduce/linalg.hpp"

namespace stabreduce {

// exponent vector -> coefficient; the zero polynomial is the empty map
using Poly = std::map<IntVec, Rat>;

// grammar: integer coefficients, variables x1..xn, +, -, *, ^
Poly parse_poly(const std::string& text, int nvars);
std::string show_poly(const Poly& f);
Poly poly_mul(const Poly& a, const Poly& b);
bool is_monomial(const Poly& f);

struct GradedAction {
    int nvars;
    IntVec weights;           // one weight per coordinate
    std::vector<Poly> ideal;  // weight-homogeneous generators, all nonzero

    bool operator==(const GradedAction&) const = default;
};

// validates sizes, nonzero generators, weight homogeneity
GradedAction make_graded_action(int nvars, IntVec weights, std::vector<Poly> ideal);

// the common weight of all monomials of f; f must be nonzero
Int weight_of(const Poly& f, const IntVec& w);

// generators of the fixed locus: the ideal plus every coordinate of
// nonzero weight
std::vector<Poly> fixed_ideal(const GradedAction& x);

// initial forms (lowest total-degree parts) of the generators; refused
// unless the input is homogeneous, a hypersurface, or the initial system
// is all monomial
std::vector<Poly> tangent_cone(const GradedAction& x);

// A union of coordinate subspaces minus a union of coordinate subspaces.
// Components are strictly increasing lists of vanishing coordinates
// (0-based), irredundant and sorted; an empty list is the whole space,
// an empty plus list is the empty locus.
struct CoordinateLocus {
    std::vector<std::vector<int>> plus;
    std::vector<std::vector<int>> minus;
    bool operator==(const CoordinateLocus&) const = default;
    std::string show() const;
};

// irredundant components of the zero set of squarefree coordinate
// supports: the minimal hitting sets
std::vector<std::vector<int>> coordinate_components(const std::vector<std::vector<int>>& supports,
                                                    int nvars);

// fixed components of P(V) that meet the zero locus of the system cs,
// one component per weight value occurring on the coordinates
std::vector<CoordinateLocus> projectivized_fixed_points(const std::vector<Poly>& cs,
                                                        const IntVec& w);

// the two limit components of the saturation of the origin: coordinates of
// nonpositive (plus) resp. nonnegative (minus) weight set to zero, with the
// ideal generators substituted accordingly
struct OriginSaturation {
    std::vector<Poly> plus;
    std::vector<Poly> minus;
};
OriginSaturation saturation_origin(const GradedAction& x);

// reduced intersection of the strict transform of V(gens) with the
// exceptional P(V): the radical components of the initial-form system;
// every generator must vanish at the origin
CoordinateLocus strict_transform_exceptional(const std::vector<Poly>& gens, int nvars);

struct TransformFixedPoints {
    // fixed components of the projectivized tangent cone that survive
    // removing the strict transforms of the two saturation components
    std::vector<CoordinateLocus> fixed;
    // spans of surviving fixed points with same-sign distinct weights that
    // lie in the tangent cone: the closure of the open orbit of such a span
    // contains two fixed points, so no good quotient exists there
    std::vector<CoordinateLocus> no_quotient_witnesses;
};
// requires an isolated fixed locus (every weight nonzero)
TransformFixedPoints reichstein_fixed_points(const GradedAction& x);

// exceptional locus of the saturated blowup at the origin: the
// projectivized tangent cone minus the common zero locus of the invariant
// monomials, collected degree by degree; the deleted locus must agree over
// the last two degrees under the bound or the run is refused as
// inconclusive
CoordinateLocus saturated_blowup_exceptional(const GradedAction& x, int degree_bound = 16);

struct WeightCertificate {
    IntVec chi;                  // a nonzero character of the representation
    IntVec lambda;               // cocharacter with <lambda, chi> > 0
    std::vector<int> attracted;  // coordinates flowing to 0 under lambda
    std::vector<int> repelled;   // coordinates flowing to 0 under -lambda
};
// one certificate per distinct nonzero weight column: witnesses that every
// fixed point of the projectivization of the moving part lies on a limit
// locus of the saturation of the origin
std::vector<WeightCertificate> repfixed_certificate(const IntMatrix& w);

}  // namespace stabreduce
