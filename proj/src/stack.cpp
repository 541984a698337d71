#include "stabreduce/stack.hpp"

#include <algorithm>

#include "stabreduce/error.hpp"

namespace stabreduce {

namespace {

// canonical lattice basis: column HNF of the spanning set, zero columns dropped
std::vector<IntVec> canonical_basis(const std::vector<IntVec>& spanning, int n) {
    if (spanning.empty()) return {};
    auto hnf = hermite_normal_form(IntMatrix::from_cols(spanning, n));
    std::vector<IntVec> out;
    for (int j = 0; j < hnf.h.cols(); ++j) {
        IntVec c = hnf.h.col(j);
        if (!is_zero(c)) out.push_back(c);
    }
    return out;
}

}  // namespace

DiagonalizableGroup::DiagonalizableGroup(IntMatrix relations, IntMatrix weights)
    : relations_(std::move(relations)),
      weights_(std::move(weights)),
      cochar_image_(0, {}) {
    const int s = weights_.rows();
    const int n = weights_.cols();
    SR_REQUIRE(relations_.rows() == s || relations_.cols() == 0,
               "relation matrix rows must match the character presentation rank");
    if (relations_.cols() == 0) relations_ = IntMatrix(s, 0);

    // split A = Z^s / col(relations) into torsion and free parts
    auto snf = smith_normal_form(relations_);
    const int k = int(snf.divisors.size());
    free_rank_ = s - k;
    for (const auto& d : snf.divisors)
        if (d > 1) torsion_.push_back(d);

    // coordinates k.. of u * (presentation) carry the free summand
    IntMatrix uw = snf.u.mul(weights_);
    free_weights_ = IntMatrix(free_rank_, n);
    for (int i = k; i < s; ++i)
        for (int j = 0; j < n; ++j) free_weights_.at(i - k, j) = uw.at(i, j);

    weight_rank_ = rank(free_weights_);
    free_kernel_ = kernel_lattice(free_weights_);
    cochar_image_ = RationalSubspace::span_int(n, free_weights_.row_list());

    // K_A = projection to the first n coordinates of ker [W | -relations]
    IntMatrix stacked(s, n + relations_.cols());
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < n; ++j) stacked.at(i, j) = weights_.at(i, j);
        for (int j = 0; j < relations_.cols(); ++j)
            stacked.at(i, n + j) = -relations_.at(i, j);
    }
    std::vector<IntVec> projected;
    for (const auto& v : kernel_lattice(stacked))
        projected.push_back(IntVec(v.begin(), v.begin() + n));
    invariant_lattice_ = canonical_basis(projected, n);
}

DiagonalizableGroup DiagonalizableGroup::torus(const IntMatrix& weights) {
    return DiagonalizableGroup(IntMatrix(weights.rows(), 0), weights);
}

DiagonalizableGroup DiagonalizableGroup::restricted(const std::vector<int>& coords) const {
    IntMatrix w(weights_.rows(), int(coords.size()));
    for (int i = 0; i < weights_.rows(); ++i)
        for (size_t j = 0; j < coords.size(); ++j) {
            SR_REQUIRE(coords[j] >= 0 && coords[j] < nvars(), "coordinate index out of range");
            w.at(i, int(j)) = weights_.at(i, coords[j]);
        }
    return DiagonalizableGroup(relations_, w);
}

DiagonalizableGroup DiagonalizableGroup::with_zero_weight_coordinate() const {
    IntMatrix w(weights_.rows(), nvars() + 1);
    for (int i = 0; i < weights_.rows(); ++i)
        for (int j = 0; j < nvars(); ++j) w.at(i, j) = weights_.at(i, j);
    return DiagonalizableGroup(relations_, w);
}

ToricStack make_toric_stack(Fan fan, DiagonalizableGroup group) {
    SR_REQUIRE(fan.rank() == group.nvars(),
               "weight count must match the fan's ambient rank");
    SR_REQUIRE(fan.is_smooth(), "stacky fan model requires a smooth fan");
    return ToricStack{std::move(fan), std::move(group)};
}

Fan orthant_fan(int n) {
    SR_REQUIRE(n >= 0 && n < 24, "orthant rank out of supported range");
    std::vector<IntVec> gens;
    for (int i = 0; i < n; ++i) {
        IntVec e(n, Int(0));
        e[i] = 1;
        gens.push_back(e);
    }
    return Fan(n, {Cone(n, gens)});
}

int stabilizer_dim(const ToricStack& x, const Cone& sigma) {
    SR_REQUIRE(x.fan.contains(sigma), "cone is not a member of the fan");
    auto span = RationalSubspace::span_int(x.fan.rank(), sigma.gens());
    return intersection_dim(span, x.group.cocharacter_image()) +
           x.group.generic_stabilizer_dim();
}

int max_stabilizer_dim(const ToricStack& x) {
    SR_REQUIRE(!x.fan.empty(), "empty stack has no stabilizers");
    int best = 0;
    for (const auto& c : x.fan.cones()) best = std::max(best, stabilizer_dim(x, c));
    return best;
}

int pattern_popcount(Pattern z) {
    int c = 0;
    while (z) {
        c += int(z & 1u);
        z >>= 1;
    }
    return c;
}

std::vector<int> pattern_coords(Pattern z, int n) {
    std::vector<int> out;
    for (int j = 0; j < n; ++j)
        if (z & (1u << j)) out.push_back(j);
    return out;
}

MonomialStack make_monomial_stack(int nvars, std::vector<Pattern> supports,
                                  DiagonalizableGroup group) {
    SR_REQUIRE(nvars >= 0 && nvars < 24, "ambient dimension out of supported range");
    SR_REQUIRE(group.nvars() == nvars, "weight count must match the ambient dimension");
    SR_REQUIRE(!supports.empty(), "monomial stack needs at least one component");
    std::sort(supports.begin(), supports.end());
    supports.erase(std::unique(supports.begin(), supports.end()), supports.end());
    for (const auto& s : supports)
        SR_REQUIRE(s < (Pattern(1) << nvars), "component support out of range");
    for (const auto& a : supports)
        for (const auto& b : supports)
            SR_REQUIRE(a == b || (a & b) != a || (a | b) != b,
                       "component supports must be pairwise incomparable");
    return MonomialStack{nvars, std::move(supports), std::move(group)};
}

std::vector<Pattern> strata_patterns(const MonomialStack& x) {
    std::vector<Pattern> out;
    for (Pattern z = 0; z < (Pattern(1) << x.nvars); ++z) {
        for (const auto& s : x.supports)
            if ((z & s) == s) {
                out.push_back(z);
                break;
            }
    }
    return out;
}

int stabilizer_dim_pattern(const MonomialStack& x, Pattern z) {
    std::vector<int> alive;
    for (int j = 0; j < x.nvars; ++j)
        if (!(z & (1u << j))) alive.push_back(j);
    const auto& fw = x.group.free_weights();
    IntMatrix cols(fw.rows(), int(alive.size()));
    for (int i = 0; i < fw.rows(); ++i)
        for (size_t j = 0; j < alive.size(); ++j) cols.at(i, int(j)) = fw.at(i, alive[j]);
    return x.group.free_rank() - rank(cols);
}

ComponentModel component_model(const MonomialStack& x, int i) {
    SR_REQUIRE(i >= 0 && i < int(x.supports.size()), "component index out of range");
    std::vector<int> coords;
    for (int j = 0; j < x.nvars; ++j)
        if (!(x.supports[i] & (1u << j))) coords.push_back(j);
    auto group = x.group.restricted(coords);
    auto stack = make_toric_stack(orthant_fan(int(coords.size())), std::move(group));
    return ComponentModel{std::move(stack), std::move(coords)};
}

}  // namespace stabreduce
