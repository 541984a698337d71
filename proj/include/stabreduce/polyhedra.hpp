#pragma once

// Small exact polyhedral computations over Q: feasibility of mixed systems
// of equalities and (strict) inequalities by Gaussian elimination plus
// Fourier-Motzkin, canonical witness extraction, implicit equality
// detection, and extreme ray enumeration for pointed cones.
//
// Everything is sized for desk-scale inputs (at most a handful of variables
// and a dozen or two constraints); hard caps raise UnsupportedError.

#include <optional>
#include <vector>

#include "stabreduce/linalg.hpp"

namespace stabreduce {

enum class Rel { EQ, GE, GT };

// coeffs . x  REL  rhs
struct LinConstraint {
    RatVec coeffs;
    Rat rhs;
    Rel rel;
};

LinConstraint make_ge(const RatVec& coeffs, const Rat& rhs);
LinConstraint make_gt(const RatVec& coeffs, const Rat& rhs);
LinConstraint make_eq(const RatVec& coeffs, const Rat& rhs);

// Feasibility of the system; when feasible, returns a canonical witness:
// equalities are eliminated first, Fourier-Motzkin eliminates the remaining
// variables from the highest index down, and back-substitution picks for
// each variable the smallest admissible integer when its interval allows
// one (0 when unconstrained), otherwise the interval midpoint.
std::optional<RatVec> solve_constraints(int nvars, const std::vector<LinConstraint>& cs);

bool feasible(int nvars, const std::vector<LinConstraint>& cs);

// Indices of GE rows that every feasible point satisfies with equality.
// Precondition: the system itself is feasible.
std::vector<int> implicit_equalities(int nvars, const std::vector<LinConstraint>& cs);

// Extreme rays of the pointed cone { x in Q^d : a x >= 0 }, as primitive
// integer vectors in canonical order. Requires ker a = 0 (pointedness).
// The cone need not be full dimensional.
std::vector<IntVec> extreme_rays(const IntMatrix& a);

}  // namespace stabreduce
