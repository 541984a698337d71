#include "stabreduce/stability.hpp"

#include <algorithm>

#include "stabreduce/error.hpp"

namespace stabreduce {

MaxLocus max_locus(const ToricStack& x) {
    SR_REQUIRE(!x.fan.empty(), "maximal-stabilizer locus of the empty stack");
    const int top = max_stabilizer_dim(x);
    std::vector<Cone> achieving;
    for (const auto& c : x.fan.cones())
        if (stabilizer_dim(x, c) == top) achieving.push_back(c);
    std::vector<Cone> minimal;
    for (const auto& c : achieving) {
        bool min = true;
        for (const auto& d : achieving)
            if (!(d == c) && c.contains_cone_gens(d)) {
                min = false;
                break;
            }
        if (min) minimal.push_back(c);
    }
    // the locus is smooth, so its components cannot share a cone of the fan
    for (const auto& c : x.fan.cones()) {
        int hits = 0;
        for (const auto& m : minimal)
            if (c.contains_cone_gens(m)) ++hits;
        SR_CHECK(hits <= 1, "maximal-stabilizer components share the star of " + c.show());
    }
    return MaxLocus{top, std::move(minimal)};
}

const char* stability_name(Stability s) {
    switch (s) {
        case Stability::properly_stable: return "properly_stable";
        case Stability::stable_not_proper: return "stable_not_proper";
        default: return "not_stable";
    }
}

bool StabilityReport::is_stable_cone(const Cone& c) const {
    return std::binary_search(stable_cones.begin(), stable_cones.end(), c);
}

StabilityReport stable_locus(const ToricStack& x) {
    SR_REQUIRE(!x.fan.empty(), "stable locus of the empty stack");
    const int d = stabilizer_dim(x, Cone::zero(x.fan.rank()));
    const int top = max_stabilizer_dim(x);

    StabilityReport out;
    out.min_dim = d;
    out.max_dim = top;
    if (top == d) {
        out.stable_cones = x.fan.cones();
        out.kind = d == 0 ? Stability::properly_stable : Stability::stable_not_proper;
        return out;
    }

    std::vector<Cone> over;
    for (const auto& c : x.fan.cones())
        if (stabilizer_dim(x, c) > d) over.push_back(c);
    std::vector<Cone> minimal;
    for (const auto& c : over) {
        bool min = true;
        for (const auto& f : over)
            if (!(f == c) && c.contains_cone_gens(f)) {
                min = false;
                break;
            }
        if (min) minimal.push_back(c);
    }
    auto sat = saturation(x, minimal);
    for (const auto& c : x.fan.cones())
        if (!sat.contains(c)) out.stable_cones.push_back(c);
    if (out.stable_cones.empty())
        out.kind = Stability::not_stable;
    else
        out.kind = d == 0 ? Stability::properly_stable : Stability::stable_not_proper;
    return out;
}

const char* gerbe_name(GerbeClass g) {
    switch (g) {
        case GerbeClass::tame: return "tame";
        case GerbeClass::gerbe_over_tame: return "gerbe_over_tame";
        default: return "none";
    }
}

GerbeClass classify_gerbe(const ToricStack& x) {
    SR_REQUIRE(!x.fan.empty(), "gerbe classification of the empty stack");
    int lo = -1, hi = -1;
    for (const auto& c : x.fan.cones()) {
        int d = stabilizer_dim(x, c);
        lo = lo < 0 ? d : std::min(lo, d);
        hi = std::max(hi, d);
    }
    if (hi == 0) return GerbeClass::tame;
    if (lo == hi) return GerbeClass::gerbe_over_tame;
    return GerbeClass::none;
}

namespace {

Pattern cone_to_pattern(const Cone& c) {
    Pattern z = 0;
    for (const auto& g : c.gens()) {
        int idx = -1;
        for (size_t i = 0; i < g.size(); ++i) {
            if (g[i] == 0) continue;
            SR_CHECK(idx < 0 && g[i] == 1, "orthant fan cone has a non-unit generator");
            idx = int(i);
        }
        z |= (1u << idx);
    }
    return z;
}

}  // namespace

std::vector<Pattern> monomial_stable_patterns(const MonomialStack& x) {
    // per component: local stable cones as global vanishing patterns
    std::vector<std::vector<Pattern>> component_stable(x.supports.size());
    for (size_t i = 0; i < x.supports.size(); ++i) {
        auto model = component_model(x, int(i));
        auto rep = stable_locus(model.stack);
        for (const auto& c : rep.stable_cones) {
            Pattern local = cone_to_pattern(c);
            Pattern global = x.supports[i];
            for (int j = 0; j < int(model.coords.size()); ++j)
                if (local & (1u << j)) global |= (1u << model.coords[j]);
            component_stable[i].push_back(global);
        }
        std::sort(component_stable[i].begin(), component_stable[i].end());
    }

    std::vector<Pattern> out;
    for (Pattern z : strata_patterns(x)) {
        bool stable = true;
        for (size_t i = 0; i < x.supports.size() && stable; ++i) {
            if ((z & x.supports[i]) != x.supports[i]) continue;  // z not on component i
            stable = std::binary_search(component_stable[i].begin(),
                                        component_stable[i].end(), z);
        }
        if (stable) out.push_back(z);
    }
    return out;
}

MonomialPartition monomial_partition(const MonomialStack& x) {
    const auto strata = strata_patterns(x);
    const auto stable = monomial_stable_patterns(x);
    auto is_stable = [&stable](Pattern z) {
        return std::binary_search(stable.begin(), stable.end(), z);
    };

    MonomialPartition out;
    out.stable_patterns = stable;
    out.max_dim = 0;
    int n = -1;
    for (Pattern z : strata) {
        int d = stabilizer_dim_pattern(x, z);
        out.max_dim = std::max(out.max_dim, d);
        if (!is_stable(z)) n = std::max(n, d);
    }
    out.all_stable = n < 0;
    out.unstable_max = n;
    out.center_dim = -1;
    if (out.all_stable) return out;

    for (Pattern z : strata) {
        int d = stabilizer_dim_pattern(x, z);
        if (d <= n) {
            out.x_le_n.push_back(z);
            if (d == n && is_stable(z)) out.xs_n.push_back(z);
        } else {
            SR_CHECK(is_stable(z), "stratum above the unstable maximum must be stable");
            out.xs_by_dim[d].push_back(z);
        }
    }

    auto up_closed_contains = [](const std::vector<Pattern>& set, Pattern z) {
        for (Pattern s : set)
            if ((z & s) == s) return true;
        return false;
    };
    auto minimal_patterns = [](std::vector<Pattern> set) {
        std::vector<Pattern> min;
        for (Pattern a : set) {
            bool is_min = true;
            for (Pattern b : set)
                if (b != a && (a & b) == b) {
                    is_min = false;
                    break;
                }
            if (is_min) min.push_back(a);
        }
        std::sort(min.begin(), min.end());
        return min;
    };

    for (Pattern z : out.x_le_n)
        if (!up_closed_contains(out.xs_n, z)) out.xstar.push_back(z);
    out.closure_xs_n_min = minimal_patterns(out.xs_n);
    out.closure_xstar_min = minimal_patterns(out.xstar);

    // closure(X^*) as strata, then its maximal-stabilizer components
    std::vector<Pattern> closure;
    for (Pattern z : strata)
        if (up_closed_contains(out.closure_xstar_min, z)) closure.push_back(z);
    for (Pattern z : closure)
        out.center_dim = std::max(out.center_dim, stabilizer_dim_pattern(x, z));
    std::vector<Pattern> top;
    for (Pattern z : closure)
        if (stabilizer_dim_pattern(x, z) == out.center_dim) top.push_back(z);
    out.center_supports = minimal_patterns(top);
    return out;
}

}  // namespace stabreduce
