#include "stabreduce/cones.hpp"

#include <algorithm>
#include <sstream>

#include "stabreduce/error.hpp"
#include "stabreduce/polyhedra.hpp"

namespace stabreduce {

Cone::Cone(int rank, std::vector<IntVec> gens) : rank_(rank) {
    SR_REQUIRE(rank >= 0, "cone rank must be nonnegative");
    for (auto& g : gens) {
        SR_REQUIRE(int(g.size()) == rank, "cone generator has wrong dimension");
        SR_REQUIRE(!is_zero(g), "zero vector is not a cone generator");
        g = primitive(g);
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    gens_ = std::move(gens);
}

int Cone::dim() const {
    if (gens_.empty()) return 0;
    return stabreduce::rank(IntMatrix::from_cols(gens_, rank_));
}

bool Cone::has_gen(const IntVec& g) const {
    return std::binary_search(gens_.begin(), gens_.end(), g);
}

bool Cone::contains_cone_gens(const Cone& other) const {
    for (const auto& g : other.gens_)
        if (!has_gen(g)) return false;
    return true;
}

bool Cone::operator<(const Cone& other) const {
    if (gens_.size() != other.gens_.size()) return gens_.size() < other.gens_.size();
    return gens_ < other.gens_;
}

std::string Cone::show() const {
    std::ostringstream os;
    os << "cone{";
    for (size_t i = 0; i < gens_.size(); ++i) os << (i ? ", " : "") << stabreduce::show(gens_[i]);
    os << "}";
    return os.str();
}

namespace {

// v = sum lambda_i g_i with lambda_i >= 0 (or > 0 for relint)
bool membership(const Cone& c, const IntVec& v, bool strict) {
    SR_REQUIRE(int(v.size()) == c.rank(), "vector dimension mismatch");
    const int k = c.ngens();
    if (k == 0) return is_zero(v);
    std::vector<LinConstraint> cs;
    for (int i = 0; i < c.rank(); ++i) {
        RatVec row(k);
        for (int j = 0; j < k; ++j) row[j] = Rat(c.gens()[j][i]);
        cs.push_back(make_eq(row, Rat(v[i])));
    }
    for (int j = 0; j < k; ++j) {
        RatVec row(k, Rat(0));
        row[j] = 1;
        cs.push_back(strict ? make_gt(row, Rat(0)) : make_ge(row, Rat(0)));
    }
    return feasible(k, cs);
}

}  // namespace

bool cone_contains(const Cone& c, const IntVec& v) { return membership(c, v, false); }

bool cone_contains_relint(const Cone& c, const IntVec& v) { return membership(c, v, true); }

// all generator subsets of a simplicial cone, sorted
static std::vector<Cone> generator_subsets(const Cone& c) {
    const int k = c.ngens();
    SR_REQUIRE(k < 24, "too many generators for face enumeration");
    std::vector<Cone> out;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        std::vector<IntVec> sub;
        for (int j = 0; j < k; ++j)
            if (mask & (1u << j)) sub.push_back(c.gens()[j]);
        out.emplace_back(c.rank(), std::move(sub));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Cone> faces(const Cone& c) {
    SR_REQUIRE(is_smooth_cone(c), "face enumeration requires a smooth cone");
    return generator_subsets(c);
}

bool is_smooth_cone(const Cone& c) {
    if (c.is_zero_cone()) return true;
    auto snf = smith_normal_form(IntMatrix::from_cols(c.gens(), c.rank()));
    int nonzero = 0;
    for (const auto& d : snf.divisors) {
        if (d == 0) continue;
        ++nonzero;
        if (d != 1) return false;
    }
    return nonzero == c.ngens();
}

IntVec barycenter(const Cone& c) {
    SR_REQUIRE(!c.is_zero_cone(), "barycenter of the zero cone is undefined");
    IntVec u(c.rank(), Int(0));
    for (const auto& g : c.gens()) u = add(u, g);
    return u;
}

Fan::Fan(int rank, const std::vector<Cone>& cones) : rank_(rank) {
    for (const auto& c : cones) {
        SR_REQUIRE(c.rank() == rank, "cone rank does not match fan rank");
        SR_REQUIRE(c.is_simplicial(), "fan cones must be simplicial: " + c.show());
        for (const auto& f : generator_subsets(c)) cones_.push_back(f);
    }
    std::sort(cones_.begin(), cones_.end());
    cones_.erase(std::unique(cones_.begin(), cones_.end()), cones_.end());
}

bool Fan::contains(const Cone& c) const {
    return std::binary_search(cones_.begin(), cones_.end(), c);
}

std::vector<Cone> Fan::maximal_cones() const {
    std::vector<Cone> out;
    for (const auto& c : cones_) {
        bool maximal = true;
        for (const auto& d : cones_)
            if (&c != &d && d.contains_cone_gens(c) && !(d == c)) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(c);
    }
    return out;
}

std::vector<IntVec> Fan::rays() const {
    std::vector<IntVec> out;
    for (const auto& c : cones_)
        if (c.ngens() == 1) out.push_back(c.gens()[0]);
    return out;
}

std::vector<Cone> Fan::star(const Cone& tau) const {
    SR_REQUIRE(contains(tau), "star of a cone outside the fan");
    std::vector<Cone> out;
    for (const auto& c : cones_)
        if (c.contains_cone_gens(tau)) out.push_back(c);
    return out;
}

bool Fan::is_smooth() const {
    for (const auto& c : cones_)
        if (!is_smooth_cone(c)) return false;
    return true;
}

void Fan::validate_fan_property() const {
    // sigma and tau must meet exactly in the cone spanned by their common
    // generators.  A point of the overlap outside that face would have, in
    // its (unique, simplicial) coordinates on sigma, positive weight on a
    // non-common generator.
    for (size_t a = 0; a < cones_.size(); ++a) {
        for (size_t b = a + 1; b < cones_.size(); ++b) {
            const Cone& s = cones_[a];
            const Cone& t = cones_[b];
            if (s.ngens() == 0 || t.ngens() == 0) continue;
            const int ks = s.ngens(), kt = t.ngens();
            std::vector<LinConstraint> cs;
            // sum lambda_i s_i - sum mu_j t_j = 0
            for (int i = 0; i < rank_; ++i) {
                RatVec row(ks + kt, Rat(0));
                for (int j = 0; j < ks; ++j) row[j] = Rat(s.gens()[j][i]);
                for (int j = 0; j < kt; ++j) row[ks + j] = -Rat(t.gens()[j][i]);
                cs.push_back(make_eq(row, Rat(0)));
            }
            RatVec noncommon(ks + kt, Rat(0));
            for (int j = 0; j < ks; ++j) {
                RatVec row(ks + kt, Rat(0));
                row[j] = 1;
                cs.push_back(make_ge(row, Rat(0)));
                if (!t.has_gen(s.gens()[j])) noncommon[j] = 1;
            }
            for (int j = 0; j < kt; ++j) {
                RatVec row(ks + kt, Rat(0));
                row[ks + j] = 1;
                cs.push_back(make_ge(row, Rat(0)));
            }
            if (is_zero(noncommon)) continue;  // s is a face of t
            cs.push_back(make_ge(noncommon, Rat(1)));
            SR_REQUIRE(!feasible(ks + kt, cs),
                       "cones overlap beyond a common face: " + s.show() + " vs " + t.show());
        }
    }
}

std::vector<Cone> orbit_closure_cones(const Fan& f, const Cone& tau) { return f.star(tau); }

Fan star_subdivision(const Fan& f, const Cone& sigma0) {
    SR_REQUIRE(f.contains(sigma0), "subdivision center is not a cone of the fan");
    SR_REQUIRE(!sigma0.is_zero_cone(), "cannot subdivide at the zero cone");
    const IntVec u = primitive(barycenter(sigma0));
    std::vector<Cone> out;
    for (const auto& sigma : f.cones()) {
        if (!sigma.contains_cone_gens(sigma0)) {
            out.push_back(sigma);
            continue;
        }
        for (const auto& tau : generator_subsets(sigma)) {
            if (tau.contains_cone_gens(sigma0)) continue;
            auto gens = tau.gens();
            gens.push_back(u);
            out.emplace_back(f.rank(), std::move(gens));
        }
    }
    return Fan(f.rank(), out);
}

IntMatrix lattice_quotient_map(int n, const std::vector<IntVec>& basis) {
    const int k = int(basis.size());
    SR_REQUIRE(k <= n, "quotient basis larger than ambient rank");
    if (k == 0) return IntMatrix::identity(n);
    auto snf = smith_normal_form(IntMatrix::from_cols(basis, n));
    int nonzero = 0;
    for (const auto& d : snf.divisors)
        if (d != 0) ++nonzero;
    SR_REQUIRE(nonzero == k, "quotient basis is linearly dependent");
    // rows k.. of u kill the saturation of the column span and map Z^n
    // onto Z^(n-k) since u is unimodular
    IntMatrix p(n - k, n);
    for (int i = k; i < n; ++i)
        for (int j = 0; j < n; ++j) p.at(i - k, j) = snf.u.at(i, j);
    return p;
}

IntVec chart_exponents(const Cone& sigma, const IntVec& m) {
    SR_REQUIRE(sigma.ngens() == sigma.rank() && is_smooth_cone(sigma),
               "chart exponents need a smooth full-dimensional cone");
    IntVec out;
    for (const auto& g : sigma.gens()) out.push_back(dot(m, g));
    return out;
}

Cone map_cone(const IntMatrix& p, const Cone& c) {
    SR_REQUIRE(p.cols() == c.rank(), "projection dimension mismatch");
    std::vector<IntVec> gens;
    for (const auto& g : c.gens()) {
        IntVec img = p.mul_vec(g);
        if (!is_zero(img)) gens.push_back(img);
    }
    return Cone(p.rows(), std::move(gens));
}

}  // namespace stabreduce
