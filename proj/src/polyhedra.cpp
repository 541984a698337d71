#include "stabreduce/polyhedra.hpp"

#include <algorithm>
#include <set>

namespace stabreduce {

LinConstraint make_ge(const RatVec& coeffs, const Rat& rhs) { return {coeffs, rhs, Rel::GE}; }
LinConstraint make_gt(const RatVec& coeffs, const Rat& rhs) { return {coeffs, rhs, Rel::GT}; }
LinConstraint make_eq(const RatVec& coeffs, const Rat& rhs) { return {coeffs, rhs, Rel::EQ}; }

namespace {

constexpr int kMaxFmVars = 24;
constexpr int kMaxFmRows = 4096;

struct Elim {
    int var;        // eliminated variable
    RatVec coeffs;  // x_var = rhs - sum coeffs[j] x_j (over remaining vars)
    Rat rhs;
};

bool constant_row_ok(const LinConstraint& c) {
    switch (c.rel) {
        case Rel::EQ: return c.rhs == 0;
        case Rel::GE: return c.rhs <= 0;
        case Rel::GT: return c.rhs < 0;
    }
    return false;
}

bool is_constant(const LinConstraint& c) { return is_zero(c.coeffs); }

Rat floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return Rat(q);
}

Rat ceil_rat(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return Rat(q);
}

bool is_integer(const Rat& x) { return x.get_den() == 1; }

}  // namespace

std::optional<RatVec> solve_constraints(int nvars, const std::vector<LinConstraint>& cs_in) {
    SR_REQUIRE(nvars <= kMaxFmVars, "solve_constraints: too many variables");
    std::vector<LinConstraint> cs;
    for (const LinConstraint& c : cs_in) {
        SR_REQUIRE(int(c.coeffs.size()) == nvars, "solve_constraints: coeff size mismatch");
        cs.push_back(c);
    }

    // phase 1: eliminate equalities by substitution
    std::vector<Elim> elims;
    std::vector<bool> eliminated(nvars, false);
    for (;;) {
        int pick = -1;
        for (size_t i = 0; i < cs.size(); ++i)
            if (cs[i].rel == Rel::EQ && !is_constant(cs[i])) {
                pick = int(i);
                break;
            }
        if (pick < 0) break;
        LinConstraint eq = cs[pick];
        cs.erase(cs.begin() + pick);
        int pv = -1;
        for (int j = 0; j < nvars; ++j)
            if (eq.coeffs[j] != 0) {
                pv = j;
                break;
            }
        Rat piv = eq.coeffs[pv];
        Elim e;
        e.var = pv;
        e.rhs = eq.rhs / piv;
        e.coeffs.assign(nvars, Rat(0));
        for (int j = 0; j < nvars; ++j)
            if (j != pv) e.coeffs[j] = eq.coeffs[j] / piv;
        eliminated[pv] = true;
        elims.push_back(e);
        for (LinConstraint& c : cs) {
            Rat f = c.coeffs[pv];
            if (f == 0) continue;
            c.coeffs[pv] = 0;
            for (int j = 0; j < nvars; ++j)
                if (j != pv) c.coeffs[j] -= f * e.coeffs[j];
            c.rhs -= f * e.rhs;
        }
    }
    // drop or reject constant rows
    {
        std::vector<LinConstraint> kept;
        for (const LinConstraint& c : cs) {
            if (is_constant(c)) {
                if (!constant_row_ok(c)) return std::nullopt;
            } else {
                kept.push_back(c);
            }
        }
        cs = std::move(kept);
    }

    // phase 2: Fourier-Motzkin from the highest remaining variable down,
    // keeping a snapshot of the active system before each elimination
    std::vector<int> order;
    for (int j = nvars - 1; j >= 0; --j)
        if (!eliminated[j]) order.push_back(j);
    std::vector<std::pair<int, std::vector<LinConstraint>>> snapshots;
    for (int v : order) {
        snapshots.push_back({v, cs});
        std::vector<LinConstraint> zero, lower, upper;
        for (const LinConstraint& c : cs) {
            if (c.coeffs[v] == 0)
                zero.push_back(c);
            else if (c.coeffs[v] > 0)
                lower.push_back(c);
            else
                upper.push_back(c);
        }
        std::vector<LinConstraint> next = zero;
        for (const LinConstraint& lo : lower)
            for (const LinConstraint& up : upper) {
                // lo: a x >= b with a_v > 0, up: a' x >= b' with a'_v < 0
                Rat ca = lo.coeffs[v], cb = -up.coeffs[v];
                LinConstraint out;
                out.coeffs.assign(nvars, Rat(0));
                for (int j = 0; j < nvars; ++j)
                    out.coeffs[j] = cb * lo.coeffs[j] + ca * up.coeffs[j];
                out.rhs = cb * lo.rhs + ca * up.rhs;
                out.rel = (lo.rel == Rel::GT || up.rel == Rel::GT) ? Rel::GT : Rel::GE;
                if (is_constant(out)) {
                    if (!constant_row_ok(out)) return std::nullopt;
                } else {
                    next.push_back(out);
                }
            }
        SR_REQUIRE(int(next.size()) <= kMaxFmRows, "solve_constraints: row blowup");
        cs = std::move(next);
    }
    for (const LinConstraint& c : cs)
        if (is_constant(c) && !constant_row_ok(c)) return std::nullopt;

    // phase 3: back-substitute in reverse elimination order
    RatVec x(nvars, Rat(0));
    for (auto it = snapshots.rbegin(); it != snapshots.rend(); ++it) {
        int v = it->first;
        bool has_lo = false, has_up = false, lo_strict = false, up_strict = false;
        Rat lo, up;
        for (const LinConstraint& c : it->second) {
            if (c.coeffs[v] == 0) continue;
            Rat bound = c.rhs;
            for (int j = 0; j < nvars; ++j)
                if (j != v) bound -= c.coeffs[j] * x[j];
            bound /= c.coeffs[v];
            bool strict = c.rel == Rel::GT;
            if (c.coeffs[v] > 0) {
                if (!has_lo) {
                    lo = bound, lo_strict = strict, has_lo = true;
                } else if (bound > lo) {
                    lo = bound, lo_strict = strict;
                } else if (bound == lo) {
                    lo_strict = lo_strict || strict;
                }
            } else {
                if (!has_up) {
                    up = bound, up_strict = strict, has_up = true;
                } else if (bound < up) {
                    up = bound, up_strict = strict;
                } else if (bound == up) {
                    up_strict = up_strict || strict;
                }
            }
        }
        Rat val;
        if (!has_lo && !has_up) {
            val = 0;
        } else if (has_lo && !has_up) {
            val = lo_strict ? floor_rat(lo) + 1 : ceil_rat(lo);
        } else if (!has_lo && has_up) {
            val = up_strict ? (is_integer(up) ? up - 1 : floor_rat(up)) : floor_rat(up);
        } else {
            if (lo > up) return std::nullopt;
            if (lo == up) {
                if (lo_strict || up_strict) return std::nullopt;
                val = lo;
            } else {
                Rat lo_int = lo_strict ? floor_rat(lo) + 1 : ceil_rat(lo);
                bool int_ok = up_strict ? lo_int < up : lo_int <= up;
                val = int_ok ? lo_int : (lo + up) / 2;
            }
        }
        x[v] = val;
    }
    for (auto it = elims.rbegin(); it != elims.rend(); ++it) {
        Rat val = it->rhs;
        for (int j = 0; j < nvars; ++j) val -= it->coeffs[j] * x[j];
        x[it->var] = val;
    }
    return x;
}

bool feasible(int nvars, const std::vector<LinConstraint>& cs) {
    return solve_constraints(nvars, cs).has_value();
}

std::vector<int> implicit_equalities(int nvars, const std::vector<LinConstraint>& cs) {
    std::vector<int> out;
    for (size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].rel != Rel::GE) continue;
        std::vector<LinConstraint> probe = cs;
        probe[i].rel = Rel::GT;
        if (!feasible(nvars, probe)) out.push_back(int(i));
    }
    return out;
}

std::vector<IntVec> extreme_rays(const IntMatrix& a) {
    int d = a.cols();
    int m = a.rows();
    SR_REQUIRE(m <= 16, "extreme_rays: too many inequality rows");
    SR_REQUIRE(kernel_lattice(a).empty() || d == 0, "extreme_rays: cone is not pointed");
    if (d == 0) return {};

    // span of the cone: rows forced tight on every cone point
    std::vector<LinConstraint> sys;
    for (int i = 0; i < m; ++i) sys.push_back(make_ge(to_rat(a.row(i)), Rat(0)));
    std::vector<int> tight = implicit_equalities(d, sys);
    std::vector<IntVec> span_rows;
    for (int i : tight) span_rows.push_back(a.row(i));
    int span_dim = d - int(RationalSubspace::span_int(d, span_rows).dim());
    // span_rows cut out the span; its dimension is d - rank(span_rows)

    if (span_dim <= 0) return {};
    std::set<IntVec> found;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<IntVec> rows = span_rows;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) rows.push_back(a.row(i));
        IntMatrix sub = IntMatrix::from_rows(rows, d);
        std::vector<IntVec> ker = kernel_lattice(sub);
        if (int(ker.size()) != 1) continue;
        IntVec r = primitive(ker[0]);
        // orient into the cone; reject if neither sign fits
        bool plus_ok = true, minus_ok = true;
        for (int i = 0; i < m; ++i) {
            Int p = dot(a.row(i), r);
            if (p < 0) plus_ok = false;
            if (p > 0) minus_ok = false;
        }
        if (plus_ok && !is_zero(r))
            found.insert(r);
        else if (minus_ok && !is_zero(r)) {
            for (Int& x : r) x = -x;
            found.insert(r);
        }
    }
    // filter non-extreme members: r extreme iff tight rows of r have
    // corank exactly 1 within the span
    std::vector<IntVec> out;
    for (const IntVec& r : found) {
        std::vector<IntVec> rows = span_rows;
        for (int i = 0; i < m; ++i)
            if (dot(a.row(i), r) == 0) rows.push_back(a.row(i));
        IntMatrix sub = IntMatrix::from_rows(rows, d);
        if (int(kernel_lattice(sub).size()) == 1) out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace stabreduce
