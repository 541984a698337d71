#pragma once

// Good-moduli-space charts. The chart of a cone sigma is the monoid of
// invariant characters regular on it, sigma^dual n K_A. Hilbert bases are
// computed by exact bounded enumeration: every irreducible element lies in
// the zonotope spanned by the extreme rays.
//
// On top of the charts: the Rees degree test (least d such that the
// invariant Rees algebra of I^d is generated in degree one) together with a
// chart-by-chart comparison of the transformed space's moduli with the
// blowup of the moduli space, and the linearization-variation scan for the
// weighted projective family.

#include <optional>
#include <string>
#include <vector>

#include "stabreduce/stack.hpp"
#include "stabreduce/transform.hpp"

namespace stabreduce {

// Hilbert basis of { y in Z^k : a y >= 0 }; requires ker a = 0 (pointed).
std::vector<IntVec> hilbert_basis_pointed(const IntMatrix& a);

// Generators of { y : a y >= 0 } with the unit sublattice split off:
// monoid = Z-span(units) + N-span(basis).
struct MonoidBasis {
    std::vector<IntVec> units;
    std::vector<IntVec> basis;
};
MonoidBasis cone_monoid_basis(const IntMatrix& a);

// Membership of v in the monoid generated by gens. Invertible generators
// (those appearing in a nonnegative circuit) are split into a lattice; the
// rest is graded search under a functional positive on the non-units.
// Gens meant to be invertible must be listed with both signs.
bool monoid_member(const std::vector<IntVec>& gens, const IntVec& v);

// units: invertible invariant characters on the chart (a lattice basis).
// basis: Hilbert basis of the pointed remainder.
// relations: basis of the lattice of binomial relations among [units|basis].
struct InvariantChart {
    Cone sigma;
    std::vector<IntVec> units;
    std::vector<IntVec> basis;
    std::vector<IntVec> relations;
};

// sigma must be a cone of x.fan; charts in rank > 6 are refused
InvariantChart invariant_chart(const ToricStack& x, const Cone& sigma);

// every monoid generator of the chart, units listed with both signs
std::vector<IntVec> chart_generators(const InvariantChart& c);

struct ReesCheck {
    // least d <= bound with degree-one generation, if any
    std::optional<int> degree;
    // invariant monomial generators of the pushforward of I^degree
    std::vector<IntVec> ideal_generators;
    // moduli of the output = blowup of the input moduli in the ideal
    bool charts_match = false;
    std::string detail;
};

// Rees test for one saturated-blowup step on an affine chart. The input fan
// must be the full orthant fan and the center a single cone (refused
// otherwise). Scans d = 1..degree_bound for the least d such that the
// extended monoid { (m, t) : m invariant, ord_C(m) >= d t, t >= 0 } is
// generated in t-degrees 0 and 1, where ord_C is the pairing with the
// center barycenter. Then matches every output chart against the blowup
// charts of the ideal spanned by the t = 1 part of the Hilbert basis.
ReesCheck gms_blowup_check(const TransformStep& step, int degree_bound = 12);

// Linearization variation for the standard torus action on A^2 x P(1, a)
// (second factor coordinates of weights 0 and a), with the O(i)-sections
// twisted by character j: which locus has semistable points. Decided by
// scanning the invariant sections u^p v^q, p + q = i k, of the k-th power.
enum class VargitCase { minus_P2, minus_P1, minus_both, empty_locus };

VargitCase vargit_locus(const Int& a, const Int& i, const Int& j);
const char* vargit_name(VargitCase c);

}  // namespace stabreduce
