#include "stabreduce/graded.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "stabreduce/error.hpp"

namespace stabreduce {

namespace {

Int degree_of(const IntVec& expo) {
    Int d = 0;
    for (const Int& e : expo) d += e;
    return d;
}

void drop_zero_terms(Poly& f) {
    for (auto it = f.begin(); it != f.end();) {
        if (it->second == 0) it = f.erase(it);
        else ++it;
    }
}

// sum of the lowest total-degree monomials
Poly initial_form(const Poly& f) {
    SR_REQUIRE(!f.empty(), "initial form of the zero polynomial");
    Int dmin = degree_of(f.begin()->first);
    for (const auto& [e, c] : f) dmin = std::min(dmin, degree_of(e));
    Poly out;
    for (const auto& [e, c] : f)
        if (degree_of(e) == dmin) out[e] = c;
    return out;
}

bool is_degree_homogeneous(const Poly& f) {
    if (f.empty()) return true;
    Int d = degree_of(f.begin()->first);
    for (const auto& [e, c] : f)
        if (degree_of(e) != d) return false;
    return true;
}

std::vector<int> support_of(const IntVec& expo) {
    std::vector<int> s;
    for (size_t j = 0; j < expo.size(); ++j)
        if (expo[j] != 0) s.push_back(int(j));
    return s;
}

bool vanishes_at_origin(const Poly& f) {
    for (const auto& [e, c] : f)
        if (is_zero(e)) return false;
    return true;
}

// initial forms of a generator list; transparent cases only
std::vector<Poly> initial_system(const std::vector<Poly>& gens) {
    for (const Poly& g : gens) SR_REQUIRE(!g.empty(), "zero generator");
    bool homogeneous = true;
    for (const Poly& g : gens)
        if (!is_degree_homogeneous(g)) { homogeneous = false; break; }
    if (homogeneous) return gens;
    if (gens.size() == 1) return {initial_form(gens[0])};
    std::vector<Poly> out;
    for (const Poly& g : gens) out.push_back(initial_form(g));
    for (const Poly& g : out)
        if (!is_monomial(g))
            throw DomainError(
                "tangent cone: the initial forms are not transparent; a "
                "standard-basis computation would be required");
    return out;
}

// set the coordinates in zeros to 0; may return the zero polynomial
Poly substitute_zero(const Poly& f, const std::vector<bool>& zeros) {
    Poly out;
    for (const auto& [e, c] : f) {
        bool killed = false;
        for (size_t j = 0; j < e.size(); ++j)
            if (e[j] != 0 && zeros[j]) { killed = true; break; }
        if (!killed) out[e] = c;
    }
    return out;
}

// true when f restricts to 0 on the span of the coordinates in keep
bool vanishes_on_span(const Poly& f, const std::set<int>& keep) {
    for (const auto& [e, c] : f) {
        bool inside = true;
        for (int j : support_of(e))
            if (!keep.count(j)) { inside = false; break; }
        if (inside) return false;
    }
    return true;
}

void sort_components(std::vector<std::vector<int>>& comps) {
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
}

std::string show_component(const std::vector<int>& zeros) {
    if (zeros.empty()) return "P(V)";
    std::string s = "V(";
    for (size_t i = 0; i < zeros.size(); ++i) {
        if (i) s += ",";
        s += "x" + std::to_string(zeros[i] + 1);
    }
    return s + ")";
}

}  // namespace

Poly parse_poly(const std::string& text, int nvars) {
    SR_REQUIRE(nvars >= 0, "parse_poly: negative variable count");
    size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
    auto parse_number = [&]() -> Int {
        size_t start = i;
        while (i < text.size() && std::isdigit((unsigned char)text[i])) ++i;
        SR_REQUIRE(i > start, "parse_poly: expected a number at position " + std::to_string(start));
        return Int(text.substr(start, i - start));
    };
    Poly out;
    skip();
    SR_REQUIRE(i < text.size(), "parse_poly: empty input");
    int sign = 1;
    if (text[i] == '-') { sign = -1; ++i; }
    else if (text[i] == '+') ++i;
    while (true) {
        Rat coeff(sign);
        IntVec expo(size_t(nvars), Int(0));
        while (true) {
            skip();
            SR_REQUIRE(i < text.size(), "parse_poly: unexpected end of input");
            if (std::isdigit((unsigned char)text[i])) {
                coeff *= Rat(parse_number());
            } else if (text[i] == 'x') {
                ++i;
                Int idx = parse_number();
                SR_REQUIRE(idx >= 1 && idx <= nvars,
                           "parse_poly: variable index out of range");
                Int e(1);
                skip();
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    skip();
                    e = parse_number();
                }
                expo[size_t(idx.get_si() - 1)] += e;
            } else {
                throw DomainError("parse_poly: expected a factor at position " +
                                  std::to_string(i));
            }
            skip();
            if (i < text.size() && text[i] == '*') { ++i; continue; }
            break;
        }
        out[expo] += coeff;
        skip();
        if (i >= text.size()) break;
        if (text[i] == '+') sign = 1;
        else if (text[i] == '-') sign = -1;
        else throw DomainError("parse_poly: unexpected character at position " +
                               std::to_string(i));
        ++i;
        skip();
    }
    drop_zero_terms(out);
    return out;
}

std::string show_poly(const Poly& f) {
    if (f.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : f) {
        Rat a = c;
        bool neg = a < 0;
        if (neg) a = -a;
        std::string term;
        std::vector<int> supp = support_of(e);
        if (a != 1 || supp.empty()) term = a.get_str();
        for (int j : supp) {
            if (!term.empty()) term += "*";
            term += "x" + std::to_string(j + 1);
            if (e[size_t(j)] != 1) term += "^" + e[size_t(j)].get_str();
        }
        if (s.empty()) s = (neg ? "-" : "") + term;
        else s += (neg ? " - " : " + ") + term;
    }
    return s;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) out[add(ea, eb)] += ca * cb;
    drop_zero_terms(out);
    return out;
}

bool is_monomial(const Poly& f) { return f.size() == 1; }

GradedAction make_graded_action(int nvars, IntVec weights, std::vector<Poly> ideal) {
    SR_REQUIRE(nvars >= 1, "graded action needs at least one coordinate");
    SR_REQUIRE(int(weights.size()) == nvars, "weight count does not match");
    for (const Poly& g : ideal) {
        SR_REQUIRE(!g.empty(), "zero ideal generator");
        for (const auto& [e, c] : g)
            SR_REQUIRE(int(e.size()) == nvars, "exponent length does not match");
        weight_of(g, weights);  // throws when inhomogeneous
    }
    return GradedAction{nvars, std::move(weights), std::move(ideal)};
}

Int weight_of(const Poly& f, const IntVec& w) {
    SR_REQUIRE(!f.empty(), "weight of the zero polynomial");
    Int value = dot(f.begin()->first, w);
    for (const auto& [e, c] : f)
        SR_REQUIRE(dot(e, w) == value, "polynomial is not weight-homogeneous");
    return value;
}

std::vector<Poly> fixed_ideal(const GradedAction& x) {
    std::vector<Poly> out = x.ideal;
    for (int j = 0; j < x.nvars; ++j) {
        if (x.weights[size_t(j)] == 0) continue;
        IntVec e(size_t(x.nvars), Int(0));
        e[size_t(j)] = 1;
        out.push_back(Poly{{e, Rat(1)}});
    }
    return out;
}

std::vector<Poly> tangent_cone(const GradedAction& x) { return initial_system(x.ideal); }

std::string CoordinateLocus::show() const {
    if (plus.empty()) return "(empty)";
    std::string s;
    for (size_t i = 0; i < plus.size(); ++i) {
        if (i) s += " u ";
        s += show_component(plus[i]);
    }
    if (!minus.empty()) {
        s += " \\ (";
        for (size_t i = 0; i < minus.size(); ++i) {
            if (i) s += " u ";
            s += show_component(minus[i]);
        }
        s += ")";
    }
    return s;
}

std::vector<std::vector<int>> coordinate_components(
    const std::vector<std::vector<int>>& supports, int nvars) {
    SR_REQUIRE(nvars >= 0 && nvars <= 20, "coordinate_components: too many coordinates");
    std::vector<unsigned> masks;
    for (const auto& s : supports) {
        unsigned m = 0;
        for (int j : s) {
            SR_REQUIRE(j >= 0 && j < nvars, "coordinate_components: index out of range");
            m |= 1u << j;
        }
        if (m == 0) return {};  // a nonzero constant: the zero set is empty
        masks.push_back(m);
    }
    std::vector<unsigned> candidates;
    for (unsigned z = 0; z < (1u << nvars); ++z) candidates.push_back(z);
    std::sort(candidates.begin(), candidates.end(), [](unsigned a, unsigned b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        if (pa != pb) return pa < pb;
        return a < b;
    });
    std::vector<unsigned> kept;
    for (unsigned z : candidates) {
        bool hits = true;
        for (unsigned m : masks)
            if ((m & z) == 0) { hits = false; break; }
        if (!hits) continue;
        bool dominated = false;
        for (unsigned k : kept)
            if ((k & ~z) == 0) { dominated = true; break; }
        if (!dominated) kept.push_back(z);
    }
    std::vector<std::vector<int>> out;
    for (unsigned z : kept) {
        std::vector<int> comp;
        for (int j = 0; j < nvars; ++j)
            if (z & (1u << j)) comp.push_back(j);
        out.push_back(comp);
    }
    sort_components(out);
    return out;
}

std::vector<CoordinateLocus> projectivized_fixed_points(const std::vector<Poly>& cs,
                                                        const IntVec& w) {
    int n = int(w.size());
    SR_REQUIRE(n >= 1, "projectivized_fixed_points: empty weight vector");
    std::vector<Int> values;
    for (const Int& wj : w)
        if (std::find(values.begin(), values.end(), wj) == values.end())
            values.push_back(wj);
    std::vector<CoordinateLocus> out;
    for (const Int& value : values) {
        std::vector<int> piece;
        std::vector<bool> zeros(size_t(n), true);
        for (int j = 0; j < n; ++j)
            if (w[size_t(j)] == value) { piece.push_back(j); zeros[size_t(j)] = false; }
        std::vector<Poly> restricted;
        for (const Poly& c : cs) {
            Poly r = substitute_zero(c, zeros);
            if (!r.empty()) restricted.push_back(r);
        }
        bool meets = false;
        if (restricted.empty()) {
            meets = true;
        } else {
            // a monomial system vanishes somewhere on P(piece) exactly when
            // it vanishes at a coordinate point; for general systems the
            // coordinate test and the dimension bound cover what we need
            for (int j : piece) {
                bool zero_here = true;
                for (const Poly& r : restricted) {
                    Rat at_point(0);
                    for (const auto& [e, c] : r) {
                        std::vector<int> supp = support_of(e);
                        if (supp == std::vector<int>{j}) at_point += c;
                    }
                    if (at_point != 0) { zero_here = false; break; }
                }
                if (zero_here) { meets = true; break; }
            }
            if (!meets) {
                bool all_monomial = true;
                for (const Poly& r : restricted)
                    if (!is_monomial(r)) { all_monomial = false; break; }
                if (!all_monomial) {
                    if (int(restricted.size()) <= int(piece.size()) - 1) meets = true;
                    else
                        throw UnsupportedError(
                            "projectivized_fixed_points: cannot decide whether a "
                            "fixed component meets the locus");
                }
            }
        }
        if (!meets) continue;
        std::vector<int> complement;
        for (int j = 0; j < n; ++j)
            if (w[size_t(j)] != value) complement.push_back(j);
        out.push_back(CoordinateLocus{{complement}, {}});
    }
    std::sort(out.begin(), out.end(), [](const CoordinateLocus& a, const CoordinateLocus& b) {
        return a.plus < b.plus;
    });
    return out;
}

OriginSaturation saturation_origin(const GradedAction& x) {
    for (const Poly& g : x.ideal)
        SR_REQUIRE(vanishes_at_origin(g), "the origin does not lie on the cone");
    auto part = [&](bool nonpositive) {
        std::vector<bool> zeros(size_t(x.nvars), false);
        std::vector<Poly> gens;
        for (int j = 0; j < x.nvars; ++j) {
            const Int& wj = x.weights[size_t(j)];
            if ((nonpositive && wj <= 0) || (!nonpositive && wj >= 0)) {
                zeros[size_t(j)] = true;
                IntVec e(size_t(x.nvars), Int(0));
                e[size_t(j)] = 1;
                gens.push_back(Poly{{e, Rat(1)}});
            }
        }
        for (const Poly& g : x.ideal) {
            Poly r = substitute_zero(g, zeros);
            if (!r.empty()) gens.push_back(r);
        }
        return gens;
    };
    return OriginSaturation{part(true), part(false)};
}

CoordinateLocus strict_transform_exceptional(const std::vector<Poly>& gens, int nvars) {
    SR_REQUIRE(!gens.empty(), "strict_transform_exceptional: empty generator list");
    for (const Poly& g : gens)
        SR_REQUIRE(vanishes_at_origin(g), "the origin does not lie on the subvariety");
    std::vector<Poly> forms = initial_system(gens);
    std::vector<std::vector<int>> supports;
    for (const Poly& f : forms) {
        if (!is_monomial(f))
            throw UnsupportedError(
                "strict_transform_exceptional: the locus is not a union of "
                "coordinate subspaces");
        supports.push_back(support_of(f.begin()->first));
    }
    return CoordinateLocus{coordinate_components(supports, nvars), {}};
}

TransformFixedPoints reichstein_fixed_points(const GradedAction& x) {
    for (const Int& wj : x.weights)
        if (wj == 0)
            throw UnsupportedError(
                "reichstein_fixed_points: the fixed locus is not isolated");
    for (const Poly& g : x.ideal)
        SR_REQUIRE(vanishes_at_origin(g), "the origin does not lie on the cone");
    std::vector<Poly> tc = tangent_cone(x);
    std::vector<CoordinateLocus> fixed = projectivized_fixed_points(tc, x.weights);
    OriginSaturation sat = saturation_origin(x);
    std::vector<std::vector<int>> covered;
    for (const std::vector<Poly>* part : {&sat.plus, &sat.minus}) {
        if (part->empty()) {
            // the limit locus is all of X, so its transform covers everything
            covered.push_back({});
            continue;
        }
        CoordinateLocus st = strict_transform_exceptional(*part, x.nvars);
        covered.insert(covered.end(), st.plus.begin(), st.plus.end());
    }
    TransformFixedPoints out;
    for (const CoordinateLocus& f : fixed) {
        const std::vector<int>& sf = f.plus.front();
        bool removed = false;
        for (const auto& sd : covered)
            if (std::includes(sf.begin(), sf.end(), sd.begin(), sd.end())) {
                removed = true;
                break;
            }
        if (!removed) out.fixed.push_back(f);
    }
    // surviving isolated fixed points, grouped by the sign of their weight
    std::vector<int> pos_coords, neg_coords;
    for (const CoordinateLocus& f : out.fixed) {
        if (int(f.plus.front().size()) != x.nvars - 1) continue;
        int j = 0;
        for (int k = 0; k < x.nvars; ++k)
            if (!std::binary_search(f.plus.front().begin(), f.plus.front().end(), k)) j = k;
        (x.weights[size_t(j)] > 0 ? pos_coords : neg_coords).push_back(j);
    }
    for (const std::vector<int>& group : {pos_coords, neg_coords}) {
        std::set<Int> distinct;
        for (int j : group) distinct.insert(x.weights[size_t(j)]);
        if (distinct.size() < 2) continue;
        std::set<int> keep(group.begin(), group.end());
        bool inside = true;
        for (const Poly& f : tc)
            if (!vanishes_on_span(f, keep)) { inside = false; break; }
        if (!inside) continue;
        std::vector<int> complement;
        for (int j = 0; j < x.nvars; ++j)
            if (!keep.count(j)) complement.push_back(j);
        out.no_quotient_witnesses.push_back(CoordinateLocus{{complement}, {}});
    }
    return out;
}

CoordinateLocus saturated_blowup_exceptional(const GradedAction& x, int degree_bound) {
    SR_REQUIRE(degree_bound >= 2, "saturated_blowup_exceptional: bound must be at least 2");
    SR_REQUIRE(x.nvars <= 8, "saturated_blowup_exceptional: too many coordinates");
    for (const Int& wj : x.weights)
        if (wj == 0)
            throw UnsupportedError(
                "saturated_blowup_exceptional: zero-weight coordinates are not "
                "supported; invariant monomials would not generate the invariants");
    std::vector<std::vector<int>> positive;
    if (x.ideal.empty()) {
        positive = {{}};
    } else {
        std::vector<Poly> tc = tangent_cone(x);
        std::vector<std::vector<int>> supports;
        for (const Poly& f : tc) {
            if (!is_monomial(f))
                throw UnsupportedError(
                    "saturated_blowup_exceptional: the tangent cone is not a "
                    "union of coordinate subspaces");
            supports.push_back(support_of(f.begin()->first));
        }
        positive = coordinate_components(supports, x.nvars);
    }
    // weight-zero monomial supports, accumulated degree by degree
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> deleted_prev, deleted_curr;
    for (int d = 1; d <= degree_bound; ++d) {
        // odometer over exponent vectors of total degree d
        std::vector<int> e(size_t(x.nvars), 0);
        e[0] = d;
        while (true) {
            Int wsum = 0;
            for (int j = 0; j < x.nvars; ++j) wsum += Int(e[size_t(j)]) * x.weights[size_t(j)];
            if (wsum == 0) {
                std::vector<int> supp;
                for (int j = 0; j < x.nvars; ++j)
                    if (e[size_t(j)] != 0) supp.push_back(j);
                seen.insert(supp);
            }
            // next composition of d into nvars parts
            int k = x.nvars - 2;
            while (k >= 0 && e[size_t(k)] == 0) --k;
            if (k < 0) break;
            int tail = e[size_t(x.nvars) - 1];
            e[size_t(x.nvars) - 1] = 0;
            e[size_t(k)] -= 1;
            e[size_t(k) + 1] = tail + 1;
        }
        if (d >= degree_bound - 1) {
            std::vector<std::vector<int>> supps(seen.begin(), seen.end());
            deleted_prev = deleted_curr;
            deleted_curr = coordinate_components(supps, x.nvars);
        }
    }
    bool has_pos = false, has_neg = false;
    for (const Int& wj : x.weights) (wj > 0 ? has_pos : has_neg) = true;
    if (seen.empty() && has_pos && has_neg)
        throw UnsupportedError(
            "saturated_blowup_exceptional: mixed weights guarantee invariant "
            "monomials, but none appeared within the degree bound; inconclusive");
    if (deleted_prev != deleted_curr)
        throw UnsupportedError(
            "saturated_blowup_exceptional: the deleted locus did not stabilize "
            "within the degree bound; inconclusive");
    const std::vector<std::vector<int>>& deleted = deleted_curr;
    std::vector<std::vector<int>> kept;
    for (const auto& sp : positive) {
        bool inside = false;
        for (const auto& sd : deleted)
            if (std::includes(sp.begin(), sp.end(), sd.begin(), sd.end())) {
                inside = true;
                break;
            }
        if (!inside) kept.push_back(sp);
    }
    if (kept.empty()) return CoordinateLocus{{}, {}};
    std::vector<int> common = kept.front();
    for (const auto& sp : kept) {
        std::vector<int> next;
        std::set_intersection(common.begin(), common.end(), sp.begin(), sp.end(),
                              std::back_inserter(next));
        common = next;
    }
    std::vector<std::vector<int>> minus;
    for (const auto& sd : deleted) {
        bool meets_some = false;
        for (const auto& sp : kept) {
            std::set<int> uni(sd.begin(), sd.end());
            uni.insert(sp.begin(), sp.end());
            if (int(uni.size()) < x.nvars) { meets_some = true; break; }
        }
        if (!meets_some) continue;
        std::vector<int> rel;
        std::set_difference(sd.begin(), sd.end(), common.begin(), common.end(),
                            std::back_inserter(rel));
        SR_CHECK(!rel.empty(), "deleted component swallowed the kept locus");
        if (std::find(minus.begin(), minus.end(), rel) == minus.end()) minus.push_back(rel);
    }
    // drop relativized components dominated by smaller ones
    std::vector<std::vector<int>> reduced;
    for (const auto& a : minus) {
        bool dominated = false;
        for (const auto& b : minus)
            if (a != b && std::includes(a.begin(), a.end(), b.begin(), b.end())) {
                dominated = true;
                break;
            }
        if (!dominated) reduced.push_back(a);
    }
    sort_components(reduced);
    return CoordinateLocus{kept, reduced};
}

std::vector<WeightCertificate> repfixed_certificate(const IntMatrix& w) {
    std::vector<WeightCertificate> out;
    std::set<IntVec> seen;
    for (int j = 0; j < w.cols(); ++j) {
        IntVec chi = w.col(j);
        if (is_zero(chi) || seen.count(chi)) continue;
        seen.insert(chi);
        WeightCertificate cert;
        cert.chi = chi;
        cert.lambda = chi;
        SR_CHECK(dot(cert.lambda, cert.chi) > 0, "certificate pairing is not positive");
        for (int k = 0; k < w.cols(); ++k) {
            Int pairing = dot(cert.lambda, w.col(k));
            if (pairing > 0) cert.attracted.push_back(k);
            else if (pairing < 0) cert.repelled.push_back(k);
        }
        out.push_back(cert);
    }
    std::sort(out.begin(), out.end(),
              [](const WeightCertificate& a, const WeightCertificate& b) { return a.chi < b.chi; });
    return out;
}

}  // namespace stabreduce
