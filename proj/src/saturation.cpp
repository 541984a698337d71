#include "stabreduce/saturation.hpp"

#include <algorithm>

#include "stabreduce/error.hpp"
#include "stabreduce/polyhedra.hpp"

namespace stabreduce {

std::optional<IntVec> destabilizes(const ToricStack& x, const Cone& tau, const Cone& tau_prime) {
    SR_REQUIRE(x.fan.contains(tau) && x.fan.contains(tau_prime),
               "destabilization cones must belong to the fan");
    SR_REQUIRE(tau_prime.contains_cone_gens(tau), "tau must be a face of tau'");
    const int r = x.group.free_rank();
    if (tau == tau_prime) {
        if (tau.is_zero_cone()) return IntVec(r, Int(0));
        return std::nullopt;
    }

    // variables: mu in Q^r, one coefficient c_i >= 1 per generator of tau'
    // outside tau, one free coefficient a_j per generator of tau.
    // Equations: free_weights^T mu = sum c_i g_i + sum a_j h_j, so the image
    // of mu lands in relint(image of tau') + span(tau). Coefficients >= 1
    // rather than > 0 is harmless: the system is homogeneous, any solution
    // scales.
    std::vector<IntVec> extra, along;
    for (const auto& g : tau_prime.gens())
        (tau.has_gen(g) ? along : extra).push_back(g);
    const int k = int(extra.size());
    const int m = int(along.size());
    const int n = x.fan.rank();
    const auto& fw = x.group.free_weights();

    std::vector<LinConstraint> cs;
    for (int i = 0; i < n; ++i) {
        RatVec row(r + k + m, Rat(0));
        for (int j = 0; j < r; ++j) row[j] = Rat(fw.at(j, i));
        for (int j = 0; j < k; ++j) row[r + j] = -Rat(extra[j][i]);
        for (int j = 0; j < m; ++j) row[r + k + j] = -Rat(along[j][i]);
        cs.push_back(make_eq(row, Rat(0)));
    }
    for (int j = 0; j < k; ++j) {
        RatVec row(r + k + m, Rat(0));
        row[r + j] = 1;
        cs.push_back(make_ge(row, Rat(1)));
    }
    auto sol = solve_constraints(r + k + m, cs);
    if (!sol) return std::nullopt;
    RatVec mu(sol->begin(), sol->begin() + r);
    SR_CHECK(!is_zero(mu), "destabilizing cocharacter cannot be zero for a proper face");
    return to_int_primitive(mu);
}

bool SaturationResult::contains(const Cone& c) const {
    return std::binary_search(all_cones.begin(), all_cones.end(), c);
}

SaturationResult saturation(const ToricStack& x, const std::vector<Cone>& center) {
    for (const auto& c : center)
        SR_REQUIRE(x.fan.contains(c), "center cone is not a member of the fan");

    auto in_star = [&center](const Cone& c) {
        for (const auto& s : center)
            if (c.contains_cone_gens(s)) return true;
        return false;
    };

    std::vector<Cone> star_cones;
    for (const auto& c : x.fan.cones())
        if (in_star(c)) star_cones.push_back(c);

    struct Entry {
        Cone cone;
        std::optional<IntVec> witness;
    };
    std::vector<Entry> sat;
    for (const auto& c : star_cones) sat.push_back({c, std::nullopt});
    for (const auto& tau : x.fan.cones()) {
        if (in_star(tau)) continue;
        for (const auto& tp : star_cones) {
            if (!tp.contains_cone_gens(tau)) continue;
            if (auto w = destabilizes(x, tau, tp)) {
                sat.push_back({tau, std::move(w)});
                break;
            }
        }
    }

    SaturationResult out;
    for (const auto& e : sat) out.all_cones.push_back(e.cone);
    std::sort(out.all_cones.begin(), out.all_cones.end());

    for (const auto& e : sat) {
        bool minimal = true;
        for (const auto& f : sat)
            if (!(f.cone == e.cone) && e.cone.contains_cone_gens(f.cone)) {
                minimal = false;
                break;
            }
        if (minimal) {
            out.minimal_cones.push_back(e.cone);
            out.witnesses.push_back(e.witness);
        }
    }
    // canonical order, witnesses kept parallel
    std::vector<int> idx(out.minimal_cones.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
    std::sort(idx.begin(), idx.end(),
              [&out](int a, int b) { return out.minimal_cones[a] < out.minimal_cones[b]; });
    std::vector<Cone> mc;
    std::vector<std::optional<IntVec>> wit;
    for (int i : idx) {
        mc.push_back(out.minimal_cones[i]);
        wit.push_back(out.witnesses[i]);
    }
    out.minimal_cones = std::move(mc);
    out.witnesses = std::move(wit);
    return out;
}

}  // namespace stabreduce
