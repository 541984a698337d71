#pragma once

// Quotient-stack models: a diagonalizable group G acting on a smooth toric
// variety through its big torus (stacky fan), and on a union of coordinate
// subspaces of A^n (monomial model).
//
// The character group A is presented as Z^s modulo the column span of a
// relation matrix. Stabilizer dimensions depend only on the free part of A;
// torsion enters invariant-monoid computations and gerbe classification.

#include <vector>

#include "stabreduce/cones.hpp"
#include "stabreduce/linalg.hpp"

namespace stabreduce {

class DiagonalizableGroup {
  public:
    // relations: s x t (t may be 0), weights: s x n, column j = character
    // of the j-th coordinate
    DiagonalizableGroup(IntMatrix relations, IntMatrix weights);
    // shorthand for a free character group A = Z^r
    static DiagonalizableGroup torus(const IntMatrix& weights);

    int nvars() const { return weights_.cols(); }
    int free_rank() const { return free_rank_; }
    const IntMatrix& relations() const { return relations_; }
    const IntMatrix& weights() const { return weights_; }
    // invariant factors > 1 of the torsion part of A
    const std::vector<Int>& torsion() const { return torsion_; }
    // free_rank x n: weights composed with A -> A/torsion
    const IntMatrix& free_weights() const { return free_weights_; }
    // K_A = { m in Z^n : the character m.w is trivial in A }, canonical basis.
    // Not saturated in general: torsion quotients admit non-invariant m with
    // an invariant multiple.
    const std::vector<IntVec>& invariant_lattice() const { return invariant_lattice_; }
    // K = kernel of the free part of the weight map (saturated)
    const std::vector<IntVec>& free_kernel() const { return free_kernel_; }
    // N_{G,Q}: image of the cocharacter space in Q^n = row space of
    // free_weights = orthogonal complement of K
    const RationalSubspace& cocharacter_image() const { return cochar_image_; }
    // dim ker(G -> T): stabilizer dimension at a generic point of A^n
    int generic_stabilizer_dim() const { return free_rank_ - weight_rank_; }

    bool operator==(const DiagonalizableGroup& other) const {
        return relations_ == other.relations_ && weights_ == other.weights_;
    }

    // the same group acting on the coordinate subset `coords` only
    DiagonalizableGroup restricted(const std::vector<int>& coords) const;
    // appends one coordinate with the trivial character (X x A^1)
    DiagonalizableGroup with_zero_weight_coordinate() const;

  private:
    IntMatrix relations_;
    IntMatrix weights_;
    int free_rank_;
    int weight_rank_;
    IntMatrix free_weights_;
    std::vector<Int> torsion_;
    std::vector<IntVec> invariant_lattice_;
    std::vector<IntVec> free_kernel_;
    RationalSubspace cochar_image_;
};

struct ToricStack {
    Fan fan;
    DiagonalizableGroup group;

    bool operator==(const ToricStack& other) const = default;
};

// validates: ranks agree, all cones smooth
ToricStack make_toric_stack(Fan fan, DiagonalizableGroup group);

// the full orthant fan of A^n (all faces of the positive orthant)
Fan orthant_fan(int n);

// stabilizer dimension of a generic point of the orbit of sigma:
// dim(span_Q(sigma) n N_{G,Q}) plus the generic kernel dimension
int stabilizer_dim(const ToricStack& x, const Cone& sigma);

int max_stabilizer_dim(const ToricStack& x);

// --- monomial model -------------------------------------------------------

// bit j set: coordinate j vanishes
using Pattern = unsigned;

int pattern_popcount(Pattern z);
std::vector<int> pattern_coords(Pattern z, int n);

struct MonomialStack {
    int nvars;
    // vanishing supports of the irreducible components V(x_j : j in S),
    // pairwise incomparable, canonical order
    std::vector<Pattern> supports;
    DiagonalizableGroup group;

    bool operator==(const MonomialStack&) const = default;
};

// validates: supports incomparable and in range, weights length = nvars
MonomialStack make_monomial_stack(int nvars, std::vector<Pattern> supports,
                                  DiagonalizableGroup group);

// valid vanishing patterns: supersets of at least one component support
std::vector<Pattern> strata_patterns(const MonomialStack& x);

// stabilizer dimension on the stratum where exactly the coordinates of z
// vanish: free_rank - rank of the free weight columns outside z
int stabilizer_dim_pattern(const MonomialStack& x, Pattern z);

// component i as a stack on its own coordinates (the complement of S_i),
// with the induced group action; coords maps local index -> global index
struct ComponentModel {
    ToricStack stack;
    std::vector<int> coords;
};
ComponentModel component_model(const MonomialStack& x, int i);

}  // namespace stabreduce
