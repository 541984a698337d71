#pragma once

// Stabilizer-dimension stratification: maximal-stabilizer loci, stable loci
// (complement of the saturation of the locus of above-generic stabilizer
// dimension), gerbe/tame classification, and the stratification of a
// reducible monomial stack that locates the blowup center.

#include <map>
#include <vector>

#include "stabreduce/saturation.hpp"
#include "stabreduce/stack.hpp"

namespace stabreduce {

struct MaxLocus {
    int dim;                  // maximal stabilizer dimension on the stack
    std::vector<Cone> cones;  // inclusion-minimal cones achieving it

    bool operator==(const MaxLocus&) const = default;
};

// components of the maximal-stabilizer locus; their stars are certified
// pairwise disjoint (the locus is smooth)
MaxLocus max_locus(const ToricStack& x);

enum class Stability { properly_stable, stable_not_proper, not_stable };

const char* stability_name(Stability s);

struct StabilityReport {
    int min_dim;  // generic (= minimum) stabilizer dimension d
    int max_dim;
    std::vector<Cone> stable_cones;  // canonical order
    Stability kind;

    bool is_stable_cone(const Cone& c) const;

    bool operator==(const StabilityReport&) const = default;
};

// stable locus = complement of saturation({stabilizer dim > d});
// properly_stable iff d = 0 and the locus is nonempty
StabilityReport stable_locus(const ToricStack& x);

enum class GerbeClass { tame, gerbe_over_tame, none };

const char* gerbe_name(GerbeClass g);

// tame: all stabilizer dimensions zero; gerbe_over_tame: constant positive;
// none: mixed dimensions (the fan model is connected, so constancy on the
// component is constancy everywhere)
GerbeClass classify_gerbe(const ToricStack& x);

// --- reducible (monomial) stratification -----------------------------------

// Stratification of a monomial stack by stability and stabilizer dimension.
// N = max stabilizer dimension anywhere, n = max over the non-stable locus.
// The partition X = X_{<=n} u X^s_{n+1} u ... u X^s_N is into open and
// closed pieces; inside X_{<=n} sit the opens X^s_n and
// X^* = X_{<=n} - closure(X^s_n). The blowup center is the maximal-dimension
// locus of closure(X^*). Closures are recorded by the minimal vanishing
// patterns (each one a coordinate subspace).
struct MonomialPartition {
    int max_dim;                                    // N
    bool all_stable;                                // X = X^s (no center)
    int unstable_max;                               // n; -1 when all_stable
    std::vector<Pattern> stable_patterns;           // X^s strata
    std::vector<Pattern> x_le_n;                    // X_{<=n} strata
    std::map<int, std::vector<Pattern>> xs_by_dim;  // X^s_k strata, k > n
    std::vector<Pattern> xs_n;                      // X^s_n strata
    std::vector<Pattern> xstar;                     // X^* strata
    std::vector<Pattern> closure_xs_n_min;          // supports of closure(X^s_n)
    std::vector<Pattern> closure_xstar_min;         // supports of closure(X^*)
    int center_dim;                                 // -1 when all_stable
    std::vector<Pattern> center_supports;           // components of the center

    bool operator==(const MonomialPartition&) const = default;
};

MonomialPartition monomial_partition(const MonomialStack& x);

// a stratum pattern is stable iff it is stable in every component containing
// it (each component taken with its own good moduli space)
std::vector<Pattern> monomial_stable_patterns(const MonomialStack& x);

}  // namespace stabreduce
