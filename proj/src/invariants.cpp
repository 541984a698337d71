#include "stabreduce/invariants.hpp"

#include <algorithm>
#include <map>

#include "stabreduce/polyhedra.hpp"

namespace stabreduce {

namespace {

// hard cap on exact enumeration; beyond this the instance is refused
const long kEnumerationCap = 4'000'000;

IntVec combine(const std::vector<IntVec>& basis, const IntVec& coeffs, int n) {
    IntVec m(size_t(n), Int(0));
    for (size_t i = 0; i < basis.size(); ++i)
        for (int j = 0; j < n; ++j) m[size_t(j)] += coeffs[i] * basis[i][size_t(j)];
    return m;
}

bool in_zonotope(const std::vector<IntVec>& rays, const IntVec& y) {
    // some lambda in [0,1]^t with sum lambda_i r_i = y
    int t = int(rays.size());
    int k = int(y.size());
    std::vector<LinConstraint> cs;
    for (int j = 0; j < k; ++j) {
        RatVec row(static_cast<size_t>(t));
        for (int i = 0; i < t; ++i) row[size_t(i)] = Rat(rays[size_t(i)][size_t(j)]);
        cs.push_back(make_eq(row, Rat(y[size_t(j)])));
    }
    for (int i = 0; i < t; ++i) {
        RatVec lo(static_cast<size_t>(t)), hi(static_cast<size_t>(t));
        lo[size_t(i)] = 1;
        hi[size_t(i)] = -1;
        cs.push_back(make_ge(lo, Rat(0)));
        cs.push_back(make_ge(hi, Rat(-1)));
    }
    return feasible(t, cs);
}

bool all_nonneg(const IntMatrix& a, const IntVec& y) {
    for (int r = 0; r < a.rows(); ++r) {
        Int s(0);
        for (int j = 0; j < a.cols(); ++j) s += a.at(r, j) * y[size_t(j)];
        if (s < 0) return false;
    }
    return true;
}

}  // namespace

std::vector<IntVec> hilbert_basis_pointed(const IntMatrix& a) {
    int k = a.cols();
    if (k == 0) return {};
    std::vector<IntVec> rays = extreme_rays(a);  // enforces pointedness
    if (rays.empty()) return {};

    // every irreducible element lies in the zonotope sum [0,1] r_i
    IntVec lb(size_t(k), Int(0)), ub(size_t(k), Int(0));
    for (const auto& r : rays)
        for (int j = 0; j < k; ++j) {
            if (r[size_t(j)] < 0) lb[size_t(j)] += r[size_t(j)];
            if (r[size_t(j)] > 0) ub[size_t(j)] += r[size_t(j)];
        }
    Int volume(1);
    for (int j = 0; j < k; ++j) volume *= ub[size_t(j)] - lb[size_t(j)] + 1;
    if (volume > kEnumerationCap)
        throw UnsupportedError("hilbert_basis_pointed: enumeration region too large (" +
                               volume.get_str() + " points)");

    std::vector<IntVec> cands;
    IntVec cur = lb;
    while (true) {
        if (!is_zero(cur) && all_nonneg(a, cur) && in_zonotope(rays, cur)) cands.push_back(cur);
        int j = 0;
        while (j < k && cur[size_t(j)] == ub[size_t(j)]) {
            cur[size_t(j)] = lb[size_t(j)];
            ++j;
        }
        if (j == k) break;
        cur[size_t(j)] += 1;
    }

    // irreducible = not a sum of two nonzero monoid elements; both parts of
    // any splitting can be taken irreducible, hence inside the candidate set
    std::vector<IntVec> basis;
    for (const auto& y : cands) {
        bool reducible = false;
        for (const auto& g : cands) {
            if (g == y) continue;
            if (all_nonneg(a, sub(y, g))) {
                reducible = true;
                break;
            }
        }
        if (!reducible) basis.push_back(y);
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

MonoidBasis cone_monoid_basis(const IntMatrix& a) {
    int k = a.cols();
    MonoidBasis out;
    if (k == 0) return out;
    if (a.rows() == 0) {
        for (int i = 0; i < k; ++i) {
            IntVec e(size_t(k), Int(0));
            e[size_t(i)] = 1;
            out.units.push_back(e);
        }
        return out;
    }
    std::vector<IntVec> units = kernel_lattice(a);
    if (units.empty()) {
        out.basis = hilbert_basis_pointed(a);
        return out;
    }
    out.units = units;
    int q = k - int(units.size());
    if (q == 0) return out;

    // quotient by the unit lattice and compute the pointed part there
    IntMatrix proj = lattice_quotient_map(k, units);
    std::vector<IntVec> section;
    for (int i = 0; i < q; ++i) {
        IntVec e(size_t(q), Int(0));
        e[size_t(i)] = 1;
        auto s = solve_integer(proj, e);
        SR_CHECK(s.has_value(), "cone_monoid_basis: quotient section failed");
        section.push_back(*s);
    }
    IntMatrix ared(a.rows(), q);
    for (int r = 0; r < a.rows(); ++r)
        for (int i = 0; i < q; ++i) ared.at(r, i) = dot(a.row(r), section[size_t(i)]);
    for (const auto& z : hilbert_basis_pointed(ared))
        out.basis.push_back(combine(section, z, k));
    std::sort(out.basis.begin(), out.basis.end());
    return out;
}

bool monoid_member(const std::vector<IntVec>& gens, const IntVec& v) {
    int n = int(v.size());
    std::vector<IntVec> g;
    for (const auto& x : gens)
        if (!is_zero(x)) g.push_back(x);
    int t = int(g.size());

    // a generator is invertible iff it appears in a nonnegative circuit
    std::vector<IntVec> units, rest;
    for (int i = 0; i < t; ++i) {
        std::vector<LinConstraint> cs;
        for (int j = 0; j < n; ++j) {
            RatVec row(static_cast<size_t>(t));
            for (int l = 0; l < t; ++l) row[size_t(l)] = Rat(g[size_t(l)][size_t(j)]);
            cs.push_back(make_eq(row, Rat(0)));
        }
        for (int l = 0; l < t; ++l) {
            RatVec row(static_cast<size_t>(t));
            row[size_t(l)] = 1;
            cs.push_back(make_ge(row, Rat(l == i ? 1 : 0)));
        }
        if (feasible(t, cs))
            units.push_back(g[size_t(i)]);
        else
            rest.push_back(g[size_t(i)]);
    }

    IntMatrix ucols = IntMatrix::from_cols(units, n);
    auto in_unit_lattice = [&](const IntVec& r) {
        return units.empty() ? is_zero(r) : in_column_lattice(ucols, r);
    };
    if (in_unit_lattice(v)) return true;
    if (rest.empty()) return false;

    // grading positive on the non-units and zero on the units
    std::vector<LinConstraint> pcs;
    for (const auto& x : rest) pcs.push_back(make_ge(to_rat(x), Rat(1)));
    for (const auto& u : units) pcs.push_back(make_eq(to_rat(u), Rat(0)));
    auto phi = solve_constraints(n, pcs);
    SR_CHECK(phi.has_value(), "monoid_member: no positive grading on the non-units");

    auto grade = [&](const IntVec& r) { return dot(*phi, to_rat(r)); };
    std::map<IntVec, bool> memo;
    auto search = [&](auto&& self, const IntVec& r) -> bool {
        if (grade(r) < 0) return false;
        if (in_unit_lattice(r)) return true;
        auto it = memo.find(r);
        if (it != memo.end()) return it->second;
        memo[r] = false;  // cycles impossible: the grade strictly drops
        bool ok = false;
        for (const auto& x : rest)
            if (self(self, sub(r, x))) {
                ok = true;
                break;
            }
        return memo[r] = ok;
    };
    return search(search, v);
}

InvariantChart invariant_chart(const ToricStack& x, const Cone& sigma) {
    SR_REQUIRE(x.fan.contains(sigma), "invariant_chart: cone is not in the fan");
    int n = x.group.nvars();
    if (n > 6)
        throw UnsupportedError("invariant_chart: rank " + std::to_string(n) +
                               " exceeds the exact-enumeration limit of 6");
    InvariantChart chart{sigma, {}, {}, {}};
    const std::vector<IntVec>& lat = x.group.invariant_lattice();
    int kappa = int(lat.size());
    if (kappa == 0) return chart;

    IntMatrix a(sigma.ngens(), kappa);
    for (int r = 0; r < sigma.ngens(); ++r)
        for (int i = 0; i < kappa; ++i) a.at(r, i) = dot(lat[size_t(i)], sigma.gens()[size_t(r)]);
    MonoidBasis mb = cone_monoid_basis(a);
    for (const auto& y : mb.units) chart.units.push_back(combine(lat, y, n));
    for (const auto& y : mb.basis) chart.basis.push_back(combine(lat, y, n));
    std::sort(chart.units.begin(), chart.units.end());
    std::sort(chart.basis.begin(), chart.basis.end());

    std::vector<IntVec> all = chart.units;
    all.insert(all.end(), chart.basis.begin(), chart.basis.end());
    if (!all.empty()) chart.relations = kernel_lattice(IntMatrix::from_cols(all, n));
    return chart;
}

std::vector<IntVec> chart_generators(const InvariantChart& c) {
    std::vector<IntVec> g = c.basis;
    for (const auto& u : c.units) {
        g.push_back(u);
        g.push_back(scale(Int(-1), u));
    }
    return g;
}

ReesCheck gms_blowup_check(const TransformStep& step, int degree_bound) {
    SR_REQUIRE(degree_bound >= 1, "gms_blowup_check: degree bound must be positive");
    const ToricStack& x = step.input;
    int n = x.group.nvars();
    if (x.fan != orthant_fan(n))
        throw UnsupportedError("gms_blowup_check: input must be a full orthant chart");
    if (step.center.size() != 1)
        throw UnsupportedError("gms_blowup_check: a single center component is required");
    const std::vector<IntVec>& lat = x.group.invariant_lattice();
    int kappa = int(lat.size());
    IntVec bc = barycenter(step.center[0]);

    ReesCheck out;
    for (int d = 1; d <= degree_bound && !out.degree; ++d) {
        // (y, t): chart rows, the order row <m, bc> - d t >= 0, and t >= 0
        IntMatrix a(n + 2, kappa + 1);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < kappa; ++i) a.at(j, i) = lat[size_t(i)][size_t(j)];
        for (int i = 0; i < kappa; ++i) a.at(n, i) = dot(lat[size_t(i)], bc);
        a.at(n, kappa) = -d;
        a.at(n + 1, kappa) = 1;

        MonoidBasis mb = cone_monoid_basis(a);
        bool degree_one = true;
        std::vector<IntVec> ideal;
        for (const auto& b : mb.basis) {
            if (b[size_t(kappa)] > 1) {
                degree_one = false;
                break;
            }
            if (b[size_t(kappa)] == 1) {
                IntVec y(b.begin(), b.end() - 1);
                ideal.push_back(combine(lat, y, n));
            }
        }
        if (!degree_one) continue;
        out.degree = d;
        std::sort(ideal.begin(), ideal.end());
        out.ideal_generators = ideal;
    }
    if (!out.degree) {
        out.detail = "no degree within the bound is generated in degree one";
        return out;
    }

    // blowup chart at generator j*: chart monoid of the input plus the
    // differences w - w_j*; matches the output chart on which w_j*
    // principalizes the ideal
    const std::vector<IntVec>& w = out.ideal_generators;
    InvariantChart base = invariant_chart(x, x.fan.maximal_cones().front());
    std::vector<IntVec> base_gens = chart_generators(base);
    auto blowup_gens = [&](size_t jstar) {
        std::vector<IntVec> g = base_gens;
        for (size_t l = 0; l < w.size(); ++l) {
            if (l == jstar) continue;
            IntVec dvec = sub(w[l], w[jstar]);
            if (!is_zero(dvec)) g.push_back(dvec);
        }
        return g;
    };

    std::vector<bool> selected(w.size(), false);
    bool match = true;
    std::string why;
    for (const Cone& sp : step.output.fan.maximal_cones()) {
        std::vector<IntVec> ogens = chart_generators(invariant_chart(step.output, sp));
        bool found = false;
        for (size_t j = 0; j < w.size() && !found; ++j) {
            bool principal = true;
            for (size_t l = 0; l < w.size() && principal; ++l)
                if (l != j && !monoid_member(ogens, sub(w[l], w[j]))) principal = false;
            if (!principal) continue;
            // the blowup chart sits inside the output chart by construction;
            // equality is the reverse inclusion
            std::vector<IntVec> bg = blowup_gens(j);
            bool equal = true;
            for (const auto& gvec : ogens)
                if (!monoid_member(bg, gvec)) {
                    equal = false;
                    break;
                }
            if (equal) {
                found = true;
                selected[j] = true;
            }
        }
        if (!found) {
            match = false;
            why = "output chart " + sp.show() + " does not match any blowup chart";
            break;
        }
    }
    if (match) {
        // charts of unmatched generators must be covered by matched ones
        for (size_t j = 0; j < w.size() && match; ++j) {
            if (selected[j]) continue;
            std::vector<IntVec> bj = blowup_gens(j);
            bool covered = false;
            for (size_t l = 0; l < w.size() && !covered; ++l) {
                if (!selected[l]) continue;
                bool inc = true;
                for (const auto& gvec : blowup_gens(l))
                    if (!monoid_member(bj, gvec)) {
                        inc = false;
                        break;
                    }
                covered = inc;
            }
            if (!covered) {
                match = false;
                why = "blowup chart " + std::to_string(j) + " is not covered by the matched charts";
            }
        }
    }
    out.charts_match = match;
    out.detail = why;
    return out;
}

VargitCase vargit_locus(const Int& a, const Int& i, const Int& j) {
    SR_REQUIRE(a >= 1, "vargit_locus: a must be >= 1");
    SR_REQUIRE(i >= 1, "vargit_locus: i must be >= 1");
    bool u_pure = false, v_pure = false, mixed = false;
    Int bound = 4 * a * i + 4;
    for (Int k = 1; k <= bound; ++k) {
        // invariant sections u^p v^q: p + q = i k and a q + j k = 0
        Int num = -j * k;
        if (num % a != 0) continue;
        Int q = num / a;
        if (q < 0 || q > i * k) continue;
        if (q == 0)
            u_pure = true;
        else if (q == i * k)
            v_pure = true;
        else
            mixed = true;
    }
    if (u_pure) return VargitCase::minus_P2;
    if (v_pure) return VargitCase::minus_P1;
    if (mixed) return VargitCase::minus_both;
    return VargitCase::empty_locus;
}

const char* vargit_name(VargitCase c) {
    switch (c) {
        case VargitCase::minus_P2: return "minus_P2";
        case VargitCase::minus_P1: return "minus_P1";
        case VargitCase::minus_both: return "minus_both";
        case VargitCase::empty_locus: return "empty";
    }
    return "?";
}

}  // namespace stabreduce
