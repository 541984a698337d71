#pragma once

// Simplicial rational cones and fans with canonical ordering. Generators
// are primitive, pairwise distinct and lexicographically sorted, so cones
// and fans compare by value and serialize stably.
//
// Within a fan every cone is simplicial, so the face relation is generator
// containment and faces are generator subsets.

#include <optional>
#include <string>
#include <vector>

#include "stabreduce/linalg.hpp"

namespace stabreduce {

class Cone {
  public:
    Cone() : rank_(0) {}
    // canonicalizes: primitivizes, dedupes, sorts; rejects zero generators
    Cone(int rank, std::vector<IntVec> gens);
    static Cone zero(int rank) { return Cone(rank, {}); }

    int rank() const { return rank_; }
    int ngens() const { return int(gens_.size()); }
    const std::vector<IntVec>& gens() const { return gens_; }
    bool is_zero_cone() const { return gens_.empty(); }

    // dimension of the linear span of the generators
    int dim() const;
    bool is_simplicial() const { return dim() == ngens(); }

    bool has_gen(const IntVec& g) const;
    // face relation for cones of one simplicial fan: generator containment
    bool contains_cone_gens(const Cone& other) const;
    bool operator==(const Cone& other) const = default;
    bool operator<(const Cone& other) const;
    std::string show() const;

  private:
    int rank_;
    std::vector<IntVec> gens_;
};

// exact membership: is v a nonnegative rational combination of generators
bool cone_contains(const Cone& c, const IntVec& v);
// relative interior: strictly positive combination of all generators
bool cone_contains_relint(const Cone& c, const IntVec& v);

// all 2^k generator subsets; the cone must be smooth
std::vector<Cone> faces(const Cone& c);

// unimodular test: generators extend to a lattice basis
// (Smith elementary divisors of the generator matrix all equal to 1)
bool is_smooth_cone(const Cone& c);

// unweighted sum of the primitive generators
IntVec barycenter(const Cone& c);

class Fan {
  public:
    Fan() : rank_(0) {}
    explicit Fan(int rank) : rank_(rank) {}
    // face-closes, dedupes, sorts; every input cone must be simplicial
    Fan(int rank, const std::vector<Cone>& cones);

    int rank() const { return rank_; }
    const std::vector<Cone>& cones() const { return cones_; }
    bool empty() const { return cones_.empty(); }
    bool contains(const Cone& c) const;
    std::vector<Cone> maximal_cones() const;
    std::vector<IntVec> rays() const;
    // star of tau: cones whose generator set contains tau's
    std::vector<Cone> star(const Cone& tau) const;
    bool is_smooth() const;
    bool operator==(const Fan& other) const = default;

    // pairwise-intersection check (cones meet along common faces);
    // quadratic with one exact feasibility solve per pair
    void validate_fan_property() const;

  private:
    int rank_;
    std::vector<Cone> cones_;  // canonical order: by dim, then lex
};

// star of tau = orbit closure support: all cones of f containing tau
std::vector<Cone> orbit_closure_cones(const Fan& f, const Cone& tau);

// stellar subdivision at the barycenter u of sigma0: cones not containing
// sigma0 survive; each sigma containing sigma0 is replaced by the cones
// spanned by u and the faces of sigma that do not contain sigma0.
Fan star_subdivision(const Fan& f, const Cone& sigma0);

// quotient projection: integer matrix whose rows induce
// Z^n / saturation(span(basis)) -> Z^(n-k); the basis must be linearly
// independent but need not be saturated
IntMatrix lattice_quotient_map(int n, const std::vector<IntVec>& basis);

// image of a cone under an integer linear map (rows act on vectors)
Cone map_cone(const IntMatrix& p, const Cone& c);

// exponents of the character m in the chart of a smooth full-dimensional
// cone: coordinates of m in the basis dual to the generators, computed by
// pairing (entry i = <m, g_i>)
IntVec chart_exponents(const Cone& sigma, const IntVec& m);

}  // namespace stabreduce
