#include "stabreduce/model_io.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <sstream>

#include "json.hpp"

#include "stabreduce/error.hpp"
#include "stabreduce/saturation.hpp"
#include "stabreduce/transform.hpp"

namespace stabreduce {

namespace {

using njson = nlohmann::json;
using ojson = nlohmann::ordered_json;

// largest integer every JSON reader preserves exactly
const long kSafeBound = (1L << 53) - 1;

ojson int_json(const Int& v) {
    if (v.fits_slong_p()) {
        long s = v.get_si();
        if (s <= kSafeBound && s >= -kSafeBound) return ojson(s);
    }
    return ojson(v.get_str());
}

Int parse_int(const njson& j, const std::string& where) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_number_unsigned()) {
        unsigned long u = j.get<unsigned long>();
        SR_REQUIRE(u <= (unsigned long)kSafeBound,
                   where + ": integer too large for a JSON number, use a string");
        return Int((long)u);
    }
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        size_t k = (!s.empty() && s[0] == '-') ? 1 : 0;
        bool digits = s.size() > k;
        for (size_t p = k; p < s.size(); ++p)
            if (s[p] < '0' || s[p] > '9') digits = false;
        SR_REQUIRE(digits, where + ": not a decimal integer string");
        return Int(s);
    }
    throw DomainError(where + ": expected an integer");
}

int parse_small(const njson& j, const std::string& where, long lo, long hi) {
    Int v = parse_int(j, where);
    SR_REQUIRE(v >= lo && v <= hi, where + ": out of range");
    return int(v.get_si());
}

const njson& field(const njson& j, const std::string& name, const std::string& where) {
    auto it = j.find(name);
    SR_REQUIRE(it != j.end(), where + ": missing field '" + name + "'");
    return *it;
}

void reject_unknown(const njson& j, const std::string& where,
                    std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        SR_REQUIRE(ok, where + ": unknown field '" + it.key() + "'");
    }
}

IntVec parse_ivec(const njson& j, int len, const std::string& where) {
    SR_REQUIRE(j.is_array(), where + ": expected an array");
    SR_REQUIRE(len < 0 || int(j.size()) == len,
               where + ": expected " + std::to_string(len) + " entries");
    IntVec v;
    for (size_t k = 0; k < j.size(); ++k)
        v.push_back(parse_int(j[k], where + "[" + std::to_string(k) + "]"));
    return v;
}

ojson ivec_json(const IntVec& v) {
    ojson a = ojson::array();
    for (const Int& x : v) a.push_back(int_json(x));
    return a;
}

ojson ivecs_json(const std::vector<IntVec>& vs) {
    ojson a = ojson::array();
    for (const IntVec& v : vs) a.push_back(ivec_json(v));
    return a;
}

ojson cone_json(const Cone& c) { return ivecs_json(c.gens()); }

ojson cones_json(const std::vector<Cone>& cs) {
    ojson a = ojson::array();
    for (const Cone& c : cs) a.push_back(cone_json(c));
    return a;
}

ojson coords_json(const std::vector<int>& coords) {
    ojson a = ojson::array();
    for (int c : coords) a.push_back(c);
    return a;
}

ojson patterns_json(const std::vector<Pattern>& ps, int nvars) {
    ojson a = ojson::array();
    for (Pattern p : ps) a.push_back(coords_json(pattern_coords(p, nvars)));
    return a;
}

ojson locus_json(const CoordinateLocus& l) {
    ojson out;
    ojson plus = ojson::array(), minus = ojson::array();
    for (const auto& c : l.plus) plus.push_back(coords_json(c));
    for (const auto& c : l.minus) minus.push_back(coords_json(c));
    out["plus"] = plus;
    out["minus"] = minus;
    out["display"] = l.show();
    return out;
}

// --- group ------------------------------------------------------------------

IntMatrix canonical_relations(int free_rank, const std::vector<Int>& torsion) {
    int k = int(torsion.size());
    IntMatrix r(free_rank + k, k);
    for (int i = 0; i < k; ++i) r.at(free_rank + i, i) = torsion[i];
    return r;
}

ojson group_json(const DiagonalizableGroup& g) {
    if (!(g.relations() == canonical_relations(g.free_rank(), g.torsion())))
        throw UnsupportedError(
            "group serialization requires the canonical presentation "
            "(free rows first, then one row per invariant factor)");
    ojson out;
    out["free_rank"] = g.free_rank();
    ojson tors = ojson::array();
    for (const Int& d : g.torsion()) tors.push_back(int_json(d));
    out["torsion"] = tors;
    ojson w = ojson::array();
    for (const IntVec& row : g.weights().row_list()) w.push_back(ivec_json(row));
    out["weights"] = w;
    return out;
}

DiagonalizableGroup parse_group(const njson& j, int nvars) {
    SR_REQUIRE(j.is_object(), "group: expected an object");
    reject_unknown(j, "group", {"free_rank", "torsion", "weights"});
    int f = parse_small(field(j, "free_rank", "group"), "group.free_rank", 0, 16);

    const njson& jt = field(j, "torsion", "group");
    SR_REQUIRE(jt.is_array(), "group.torsion: expected an array");
    std::vector<Int> tors;
    for (size_t k = 0; k < jt.size(); ++k) {
        Int d = parse_int(jt[k], "group.torsion[" + std::to_string(k) + "]");
        SR_REQUIRE(d >= 2, "group.torsion: moduli must be at least 2");
        SR_REQUIRE(tors.empty() || d % tors.back() == 0,
                   "group.torsion: moduli must form a divisibility chain");
        tors.push_back(d);
    }

    const njson& jw = field(j, "weights", "group");
    SR_REQUIRE(jw.is_array(), "group.weights: expected an array of rows");
    SR_REQUIRE(int(jw.size()) == f + int(tors.size()),
               "group.weights: expected free_rank + torsion rows");
    std::vector<IntVec> rows;
    for (size_t k = 0; k < jw.size(); ++k)
        rows.push_back(parse_ivec(jw[k], nvars, "group.weights[" + std::to_string(k) + "]"));
    return DiagonalizableGroup(canonical_relations(f, tors),
                               IntMatrix::from_rows(rows, nvars));
}

// --- fans -------------------------------------------------------------------

ojson fan_json(const Fan& f) {
    ojson out;
    out["rank"] = f.rank();
    std::vector<IntVec> rays = f.rays();
    out["rays"] = ivecs_json(rays);
    ojson cones = ojson::array();
    for (const Cone& c : f.maximal_cones()) {
        ojson idx = ojson::array();
        for (const IntVec& g : c.gens()) {
            auto it = std::find(rays.begin(), rays.end(), g);
            idx.push_back(int(it - rays.begin()));
        }
        cones.push_back(idx);
    }
    out["cones"] = cones;
    return out;
}

Fan parse_fan(const njson& j) {
    SR_REQUIRE(j.is_object(), "fan: expected an object");
    reject_unknown(j, "fan", {"rank", "rays", "cones"});
    int rank = parse_small(field(j, "rank", "fan"), "fan.rank", 0, 16);

    const njson& jr = field(j, "rays", "fan");
    SR_REQUIRE(jr.is_array(), "fan.rays: expected an array");
    std::vector<IntVec> rays;
    for (size_t k = 0; k < jr.size(); ++k)
        rays.push_back(parse_ivec(jr[k], rank, "fan.rays[" + std::to_string(k) + "]"));

    const njson& jc = field(j, "cones", "fan");
    SR_REQUIRE(jc.is_array(), "fan.cones: expected an array");
    std::vector<Cone> cones;
    for (size_t k = 0; k < jc.size(); ++k) {
        const std::string where = "fan.cones[" + std::to_string(k) + "]";
        SR_REQUIRE(jc[k].is_array(), where + ": expected an array of ray indices");
        std::vector<IntVec> gens;
        for (const njson& je : jc[k]) {
            Int idx = parse_int(je, where);
            SR_REQUIRE(idx >= 0 && idx < long(rays.size()),
                       where + ": ray index " + idx.get_str() + " out of range");
            gens.push_back(rays[size_t(idx.get_si())]);
        }
        cones.push_back(Cone(rank, gens));
    }
    return Fan(rank, cones);
}

// --- stability pieces -------------------------------------------------------

ojson profile_json(const StabilityReport& rep) {
    ojson out;
    out["min_dim"] = rep.min_dim;
    out["max_dim"] = rep.max_dim;
    out["kind"] = stability_name(rep.kind);
    return out;
}

ojson charts_json(const ToricStack& x) {
    ojson out = ojson::array();
    for (const Cone& sigma : x.fan.maximal_cones()) {
        ojson chart;
        chart["cone"] = cone_json(sigma);
        try {
            InvariantChart c = invariant_chart(x, sigma);
            chart["generators"] = ivecs_json(chart_generators(c));
        } catch (const UnsupportedError& e) {
            chart["error"] = e.what();
        }
        out.push_back(chart);
    }
    return out;
}

ojson toric_step_json(const ToricTrace& t, size_t l) {
    const ToricStage& stage = t.steps[l];
    ojson out;
    out["center"] = cones_json(stage.step.center);
    out["center_structure"] = "reduced";
    out["barycenters"] = ivecs_json(stage.step.barycenters);
    out["deleted_cones"] = cones_json(stage.step.deleted_cones);
    out["exceptional_rays"] = ivecs_json(stage.step.exceptional_rays);
    out["stab_profile_before"] = profile_json(stage.before);
    out["stab_profile_after"] = profile_json(
        l + 1 < t.steps.size() ? t.steps[l + 1].before : t.final_report);
    out["gms_charts"] = charts_json(stage.step.output);
    return out;
}

ojson toric_trace_body(const ToricTrace& t) {
    ojson out;
    out["kind"] = "toric";
    out["group"] = group_json(t.initial.group);
    out["initial_fan"] = fan_json(t.initial.fan);
    out["initial_divisor"] = ivecs_json(t.initial_divisor);
    ojson steps = ojson::array();
    for (size_t l = 0; l < t.steps.size(); ++l) steps.push_back(toric_step_json(t, l));
    out["steps"] = steps;
    ojson fin;
    fin["fan"] = fan_json(t.final_stack.fan);
    fin["exceptional_rays"] = ivecs_json(t.exceptional);
    fin["stab_profile"] = profile_json(t.final_report);
    fin["classification"] = gerbe_name(t.final_class);
    fin["gms_charts"] = charts_json(t.final_stack);
    out["final"] = fin;
    return out;
}

ojson verification_json(const TraceCheck& check) {
    ojson out;
    out["ok"] = check.ok;
    ojson fails = ojson::array();
    for (const std::string& f : check.failures) fails.push_back(f);
    out["failures"] = fails;
    return out;
}

// --- model kinds ------------------------------------------------------------

const char* kind_name(ModelDocument::Kind k) {
    switch (k) {
        case ModelDocument::Kind::fan: return "fan";
        case ModelDocument::Kind::monomial: return "monomial";
        case ModelDocument::Kind::gm_poly: return "gm_poly";
        case ModelDocument::Kind::vargit: return "vargit";
    }
    return "?";
}

void parse_options(const njson& j, ModelDocument& m) {
    auto it = j.find("options");
    if (it == j.end()) return;
    SR_REQUIRE(it->is_object(), "options: expected an object");
    reject_unknown(*it, "options", {"degree_bound", "initial_divisor"});
    if (it->contains("degree_bound")) {
        SR_REQUIRE(m.kind == ModelDocument::Kind::gm_poly,
                   "options.degree_bound: only gm_poly models take one");
        m.degree_bound = parse_small((*it)["degree_bound"], "options.degree_bound", 2, 64);
    }
    if (it->contains("initial_divisor")) {
        SR_REQUIRE(m.kind == ModelDocument::Kind::fan,
                   "options.initial_divisor: only fan models carry one");
        const njson& jd = (*it)["initial_divisor"];
        SR_REQUIRE(jd.is_array(), "options.initial_divisor: expected an array");
        int rank = m.fan_model->fan.rank();
        for (size_t k = 0; k < jd.size(); ++k) {
            const std::string where = "options.initial_divisor[" + std::to_string(k) + "]";
            IntVec r = parse_ivec(jd[k], rank, where);
            Cone ray(rank, {r});
            SR_REQUIRE(m.fan_model->fan.contains(ray), where + ": not a ray of the fan");
            m.initial_divisor.push_back(ray.gens()[0]);
        }
    }
}

}  // namespace

ModelDocument parse_model(const std::string& text) {
    njson j;
    try {
        j = njson::parse(text);
    } catch (const njson::parse_error& e) {
        throw DomainError(std::string("parse: ") + e.what());
    }
    SR_REQUIRE(j.is_object(), "parse: expected a JSON object");
    const njson& jm = field(j, "model", "document");
    SR_REQUIRE(jm.is_string(), "model: expected a string");
    const std::string kind = jm.get<std::string>();

    ModelDocument m;
    if (kind == "fan") {
        m.kind = ModelDocument::Kind::fan;
        reject_unknown(j, "document", {"model", "group", "fan", "options"});
        Fan fan = parse_fan(field(j, "fan", "document"));
        DiagonalizableGroup g = parse_group(field(j, "group", "document"), fan.rank());
        m.fan_model = make_toric_stack(std::move(fan), std::move(g));
    } else if (kind == "monomial") {
        m.kind = ModelDocument::Kind::monomial;
        reject_unknown(j, "document", {"model", "group", "monomial", "options"});
        const njson& jmono = field(j, "monomial", "document");
        SR_REQUIRE(jmono.is_object(), "monomial: expected an object");
        reject_unknown(jmono, "monomial", {"nvars", "components"});
        int nvars = parse_small(field(jmono, "nvars", "monomial"), "monomial.nvars", 1, 31);
        const njson& jcomp = field(jmono, "components", "monomial");
        SR_REQUIRE(jcomp.is_array() && !jcomp.empty(),
                   "monomial.components: expected a nonempty array");
        std::vector<Pattern> supports;
        for (size_t k = 0; k < jcomp.size(); ++k) {
            const std::string where = "monomial.components[" + std::to_string(k) + "]";
            SR_REQUIRE(jcomp[k].is_array(), where + ": expected an array of coordinates");
            Pattern p = 0;
            for (const njson& je : jcomp[k]) {
                int c = parse_small(je, where, 0, nvars - 1);
                SR_REQUIRE(!(p & (Pattern(1) << c)), where + ": repeated coordinate");
                p |= Pattern(1) << c;
            }
            supports.push_back(p);
        }
        DiagonalizableGroup g = parse_group(field(j, "group", "document"), nvars);
        m.monomial_model = make_monomial_stack(nvars, std::move(supports), std::move(g));
    } else if (kind == "gm_poly") {
        m.kind = ModelDocument::Kind::gm_poly;
        reject_unknown(j, "document", {"model", "weights", "generators", "options"});
        IntVec w = parse_ivec(field(j, "weights", "document"), -1, "weights");
        SR_REQUIRE(!w.empty(), "weights: expected at least one coordinate");
        int nvars = int(w.size());
        const njson& jg = field(j, "generators", "document");
        SR_REQUIRE(jg.is_array(), "generators: expected an array of strings");
        std::vector<Poly> gens;
        for (size_t k = 0; k < jg.size(); ++k) {
            const std::string where = "generators[" + std::to_string(k) + "]";
            SR_REQUIRE(jg[k].is_string(), where + ": expected a string");
            try {
                gens.push_back(parse_poly(jg[k].get<std::string>(), nvars));
                weight_of(gens.back(), w);
            } catch (const DomainError& e) {
                throw DomainError(where + ": " + e.what());
            }
        }
        m.poly_model = make_graded_action(nvars, std::move(w), std::move(gens));
    } else if (kind == "vargit") {
        m.kind = ModelDocument::Kind::vargit;
        reject_unknown(j, "document", {"model", "a", "i", "j", "options"});
        VargitModel v{parse_int(field(j, "a", "document"), "a"),
                      parse_int(field(j, "i", "document"), "i"),
                      parse_int(field(j, "j", "document"), "j")};
        SR_REQUIRE(v.a >= 1, "a: must be positive");
        SR_REQUIRE(v.i >= 1, "i: must be positive");
        m.vargit_model = v;
    } else {
        throw DomainError("model: expected fan, monomial, gm_poly, or vargit");
    }
    parse_options(j, m);
    return m;
}

std::string show_model(const ModelDocument& m) {
    ojson out;
    out["model"] = kind_name(m.kind);
    switch (m.kind) {
        case ModelDocument::Kind::fan:
            out["group"] = group_json(m.fan_model->group);
            out["fan"] = fan_json(m.fan_model->fan);
            break;
        case ModelDocument::Kind::monomial: {
            const MonomialStack& x = *m.monomial_model;
            out["group"] = group_json(x.group);
            ojson mono;
            mono["nvars"] = x.nvars;
            mono["components"] = patterns_json(x.supports, x.nvars);
            out["monomial"] = mono;
            break;
        }
        case ModelDocument::Kind::gm_poly: {
            const GradedAction& x = *m.poly_model;
            out["weights"] = ivec_json(x.weights);
            ojson gens = ojson::array();
            for (const Poly& f : x.ideal) gens.push_back(show_poly(f));
            out["generators"] = gens;
            break;
        }
        case ModelDocument::Kind::vargit:
            out["a"] = int_json(m.vargit_model->a);
            out["i"] = int_json(m.vargit_model->i);
            out["j"] = int_json(m.vargit_model->j);
            break;
    }
    if (m.degree_bound > 0 || !m.initial_divisor.empty()) {
        ojson opts;
        if (m.degree_bound > 0) opts["degree_bound"] = m.degree_bound;
        if (!m.initial_divisor.empty()) opts["initial_divisor"] = ivecs_json(m.initial_divisor);
        out["options"] = opts;
    }
    return out.dump(2);
}

std::string fan_to_json(const Fan& f) { return fan_json(f).dump(2); }

std::string fan_to_dot(const Fan& f) {
    const std::vector<Cone>& cs = f.cones();
    std::ostringstream out;
    out << "digraph fan {\n  rankdir=BT;\n  node [shape=box];\n";
    for (size_t i = 0; i < cs.size(); ++i) {
        std::string label;
        if (cs[i].is_zero_cone()) {
            label = "0";
        } else {
            for (const IntVec& g : cs[i].gens()) {
                if (!label.empty()) label += " ";
                label += show(g);
            }
        }
        out << "  c" << i << " [label=\"" << label << "\"];\n";
    }
    // facet relations; faces of a smooth cone are generated by generator subsets
    for (size_t i = 0; i < cs.size(); ++i)
        for (size_t j = 0; j < cs.size(); ++j) {
            if (cs[j].ngens() != cs[i].ngens() + 1) continue;
            const auto& a = cs[i].gens();
            const auto& b = cs[j].gens();
            if (std::includes(b.begin(), b.end(), a.begin(), a.end()))
                out << "  c" << i << " -> c" << j << ";\n";
        }
    out << "}\n";
    return out.str();
}

std::string analysis_report(const ModelDocument& m, int degree_bound) {
    ojson out;
    out["model"] = kind_name(m.kind);
    switch (m.kind) {
        case ModelDocument::Kind::fan: {
            const ToricStack& x = *m.fan_model;
            out["group"] = group_json(x.group);
            out["free_rank"] = x.group.free_rank();
            out["generic_stabilizer_dim"] = x.group.generic_stabilizer_dim();
            if (x.fan.cones().empty()) {
                out["empty"] = true;
                break;
            }
            out["max_stabilizer_dim"] = max_stabilizer_dim(x);
            StabilityReport rep = stable_locus(x);
            ojson stab = profile_json(rep);
            stab["stable_cones"] = cones_json(rep.stable_cones);
            out["stability"] = stab;
            MaxLocus ml = max_locus(x);
            ojson loc;
            loc["dim"] = ml.dim;
            loc["cones"] = cones_json(ml.cones);
            out["max_locus"] = loc;
            out["classification"] = stability_name(rep.kind);
            out["gerbe"] = gerbe_name(classify_gerbe(x));
            break;
        }
        case ModelDocument::Kind::monomial: {
            const MonomialStack& x = *m.monomial_model;
            out["group"] = group_json(x.group);
            out["nvars"] = x.nvars;
            out["components"] = patterns_json(x.supports, x.nvars);
            ojson comps = ojson::array();
            for (size_t i = 0; i < x.supports.size(); ++i) {
                ComponentModel cm = component_model(x, int(i));
                ojson c;
                c["component"] = int(i);
                c["coords"] = coords_json(cm.coords);
                c["stability"] = profile_json(stable_locus(cm.stack));
                comps.push_back(c);
            }
            out["component_stability"] = comps;
            MonomialPartition p = monomial_partition(x);
            ojson part;
            part["all_stable"] = p.all_stable;
            part["max_dim"] = p.max_dim;
            part["unstable_max"] = p.unstable_max;
            part["center_dim"] = p.center_dim;
            part["center_supports"] = patterns_json(p.center_supports, x.nvars);
            part["stable_patterns"] = patterns_json(p.stable_patterns, x.nvars);
            out["partition"] = part;
            break;
        }
        case ModelDocument::Kind::gm_poly: {
            const GradedAction& x = *m.poly_model;
            out["weights"] = ivec_json(x.weights);
            ojson gens = ojson::array(), gw = ojson::array();
            for (const Poly& f : x.ideal) {
                gens.push_back(show_poly(f));
                gw.push_back(int_json(weight_of(f, x.weights)));
            }
            out["generators"] = gens;
            out["generator_weights"] = gw;
            ojson fixed = ojson::array();
            for (const Poly& f : fixed_ideal(x)) fixed.push_back(show_poly(f));
            out["fixed_ideal"] = fixed;
            try {
                ojson tc = ojson::array();
                for (const Poly& f : tangent_cone(x)) tc.push_back(show_poly(f));
                out["tangent_cone"] = tc;
            } catch (const DomainError& e) {
                out["tangent_cone"] = ojson{{"error", e.what()}};
            }
            {
                OriginSaturation sat = saturation_origin(x);
                ojson plus = ojson::array(), minus = ojson::array();
                for (const Poly& f : sat.plus) plus.push_back(show_poly(f));
                for (const Poly& f : sat.minus) minus.push_back(show_poly(f));
                out["saturation_origin"] = ojson{{"plus", plus}, {"minus", minus}};
            }
            try {
                ojson fps = ojson::array();
                for (const CoordinateLocus& l :
                     projectivized_fixed_points(tangent_cone(x), x.weights))
                    fps.push_back(locus_json(l));
                out["projectivized_fixed_points"] = fps;
            } catch (const DomainError& e) {
                out["projectivized_fixed_points"] = ojson{{"error", e.what()}};
            }
            try {
                TransformFixedPoints tf = reichstein_fixed_points(x);
                ojson fixed_pts = ojson::array(), wits = ojson::array();
                for (const CoordinateLocus& l : tf.fixed) fixed_pts.push_back(locus_json(l));
                for (const CoordinateLocus& l : tf.no_quotient_witnesses)
                    wits.push_back(locus_json(l));
                out["reichstein_fixed_points"] =
                    ojson{{"fixed", fixed_pts}, {"no_quotient_witnesses", wits}};
            } catch (const DomainError& e) {
                out["reichstein_fixed_points"] = ojson{{"error", e.what()}};
            }
            try {
                out["saturated_blowup_exceptional"] =
                    locus_json(saturated_blowup_exceptional(x, degree_bound));
            } catch (const UnsupportedError& e) {
                out["saturated_blowup_exceptional"] =
                    ojson{{"error", e.what()}, {"inconclusive", true}};
            } catch (const DomainError& e) {
                out["saturated_blowup_exceptional"] = ojson{{"error", e.what()}};
            }
            out["degree_bound"] = degree_bound;
            break;
        }
        case ModelDocument::Kind::vargit: {
            const VargitModel& v = *m.vargit_model;
            out["a"] = int_json(v.a);
            out["i"] = int_json(v.i);
            out["j"] = int_json(v.j);
            out["case"] = vargit_name(vargit_locus(v.a, v.i, v.j));
            break;
        }
    }
    return out.dump(2);
}

std::string trace_report(const ToricTrace& t, const TraceCheck& check) {
    ojson out = toric_trace_body(t);
    out["verification"] = verification_json(check);
    return out.dump(2);
}

std::string trace_report(const MonomialTrace& t, const TraceCheck& check) {
    const MonomialStack& x = t.initial;
    ojson out;
    out["kind"] = "monomial";
    out["group"] = group_json(x.group);
    out["nvars"] = x.nvars;
    out["components"] = patterns_json(x.supports, x.nvars);
    ojson part;
    part["all_stable"] = t.partition.all_stable;
    part["max_dim"] = t.partition.max_dim;
    part["unstable_max"] = t.partition.unstable_max;
    part["center_dim"] = t.partition.center_dim;
    part["center_supports"] = patterns_json(t.partition.center_supports, x.nvars);
    out["partition"] = part;
    if (t.blowup) {
        ojson bl;
        bl["center"] = coords_json(pattern_coords(t.blowup->center, x.nvars));
        bl["center_structure"] = "reduced";
        ojson pieces = ojson::array();
        for (const MonomialComponentStep& piece : t.blowup->pieces) {
            ojson p;
            p["component"] = piece.component;
            p["coords"] = coords_json(piece.coords);
            p["died"] = piece.died;
            if (piece.step) {
                ojson s;
                s["center"] = cones_json(piece.step->center);
                s["barycenters"] = ivecs_json(piece.step->barycenters);
                s["deleted_cones"] = cones_json(piece.step->deleted_cones);
                s["exceptional_rays"] = ivecs_json(piece.step->exceptional_rays);
                p["step"] = s;
            } else {
                p["step"] = nullptr;
            }
            pieces.push_back(p);
        }
        bl["pieces"] = pieces;
        ojson overlaps = ojson::array();
        for (const auto& [a, b] : t.blowup->overlaps)
            overlaps.push_back(ojson::array({a, b}));
        bl["overlaps"] = overlaps;
        out["blowup"] = bl;
    } else {
        out["blowup"] = nullptr;
    }
    ojson outcomes = ojson::array();
    for (const MonomialComponentOutcome& o : t.components) {
        ojson jo;
        jo["component"] = o.component;
        jo["coords"] = coords_json(o.coords);
        jo["died"] = o.died;
        jo["trace"] = o.rest ? toric_trace_body(*o.rest) : ojson(nullptr);
        outcomes.push_back(jo);
    }
    out["outcomes"] = outcomes;
    out["verification"] = verification_json(check);
    return out.dump(2);
}

// --- built-in worked examples -------------------------------------------------

namespace {

IntVec iv(std::initializer_list<long> xs) { return IntVec(xs.begin(), xs.end()); }

ToricStack orthant_stack(int n, std::vector<IntVec> w) {
    return make_toric_stack(orthant_fan(n),
                            DiagonalizableGroup::torus(IntMatrix::from_rows(w, n)));
}

GradedAction graded(int n, std::initializer_list<long> w,
                    std::initializer_list<const char*> gens) {
    std::vector<Poly> ps;
    for (const char* g : gens) ps.push_back(parse_poly(g, n));
    return make_graded_action(n, IntVec(w.begin(), w.end()), std::move(ps));
}

CoordinateLocus subspace(std::initializer_list<int> coords) {
    return CoordinateLocus{{std::vector<int>(coords.begin(), coords.end())}, {}};
}

// does the coordinate point with the given vanishing set lie in the locus
bool point_in_locus(const std::vector<int>& zeros, const CoordinateLocus& l) {
    auto inside = [&](const std::vector<int>& comp) {
        return std::includes(zeros.begin(), zeros.end(), comp.begin(), comp.end());
    };
    bool in_plus = false;
    for (const auto& c : l.plus)
        if (inside(c)) in_plus = true;
    if (!in_plus) return false;
    for (const auto& c : l.minus)
        if (inside(c)) return false;
    return true;
}

void add(std::vector<BuiltinCheck>& out, const std::string& name, bool pass,
         const std::string& detail) {
    out.push_back(BuiltinCheck{name, pass, pass ? std::string() : detail});
}

}  // namespace

std::vector<BuiltinCheck> builtin_checks() {
    std::vector<BuiltinCheck> out;

    {  // the line with weight one: everything destabilizes to the origin
        ToricStack x = orthant_stack(1, {iv({1})});
        Cone ray(1, {iv({1})});
        SaturationResult sat = saturation(x, {ray});
        bool whole = sat.minimal_cones == std::vector<Cone>{Cone::zero(1)};
        TransformStep step = reichstein_fan(x, {ray});
        bool empty = step.output.fan.cones().empty();
        bool refused = stable_locus(x).kind == Stability::not_stable;
        add(out, "line-weight-one", whole && empty && refused,
            "expected saturation = everything, empty transform, not_stable");
    }

    {  // the plane with weights (1,-1): one step to the quotient line
        ToricStack x = orthant_stack(2, {iv({1, -1})});
        ToricTrace t = reduce(x);
        bool shape = t.steps.size() == 1 &&
                     t.final_stack.fan == Fan(2, {Cone(2, {iv({1, 1})})}) &&
                     t.final_class == GerbeClass::tame && verify_trace(t).ok;
        add(out, "plane-opposite-weights", shape,
            "expected one step ending in the fan {0, (1,1)}, tame");

        InvariantChart chart = invariant_chart(x, Cone(2, {iv({1, 0}), iv({0, 1})}));
        bool inv = chart.basis == std::vector<IntVec>{iv({1, 1})} && chart.units.empty();
        add(out, "plane-invariant-chart", inv, "expected the single invariant (1,1)");

        CoordinateLocus exc = saturated_blowup_exceptional(graded(2, {1, -1}, {}));
        bool deleted = exc == CoordinateLocus{{{}}, {{0}, {1}}};
        add(out, "plane-deleted-points", deleted,
            "expected the exceptional line minus its two coordinate points, got " +
                exc.show());
    }

    {  // the threefold with weights (1,1,-1)
        ToricStack x = orthant_stack(3, {iv({1, 1, -1})});
        ToricTrace t = reduce(x);
        IntVec u = iv({1, 1, 1});
        bool shape =
            t.steps.size() == 1 &&
            t.steps[0].step.sat.minimal_cones ==
                std::vector<Cone>{Cone(3, {iv({0, 0, 1})}),
                                  Cone(3, {iv({0, 1, 0}), iv({1, 0, 0})})} &&
            t.final_stack.fan ==
                Fan(3, {Cone(3, {iv({0, 1, 0}), u}), Cone(3, {iv({1, 0, 0}), u})}) &&
            t.final_class == GerbeClass::tame && verify_trace(t).ok;
        add(out, "threefold-mixed-weights", shape,
            "expected saturation {V(x3), V(x1,x2)} and two surviving charts");

        // in the chart of the subdivided orthant: the pullback of the plane
        // x1 = 0 meets the exceptional coordinate once, the pullback of the
        // invariant x1*x3 twice; dividing once leaves the strict transform
        Cone chart(3, {iv({1, 0, 0}), iv({0, 1, 0}), u});
        bool ideals = chart_exponents(chart, iv({1, 0, 0})) == iv({0, 1, 1}) &&
                      chart_exponents(chart, iv({1, 0, 1})) == iv({0, 1, 2});
        add(out, "threefold-chart-ideals", ideals,
            "expected pullback orders 1, 2 along the exceptional coordinate");
    }

    {  // the double cover quotient: finite stabilizers, quadratic chart
        DiagonalizableGroup mu2(IntMatrix::from_rows({iv({2})}, 1),
                                IntMatrix::from_rows({iv({1, 1})}, 2));
        ToricStack x = make_toric_stack(orthant_fan(2), mu2);
        Cone orthant(2, {iv({1, 0}), iv({0, 1})});
        InvariantChart chart = invariant_chart(x, orthant);
        std::vector<IntVec> basis = chart.basis;
        std::sort(basis.begin(), basis.end());
        bool inv = basis == std::vector<IntVec>{iv({0, 2}), iv({1, 1}), iv({2, 0})};
        add(out, "double-cover-chart", inv, "expected the quadric chart basis");

        TransformStep step = reichstein_fan(x, {orthant});
        ReesCheck rc = gms_blowup_check(step);
        std::vector<IntVec> gens = rc.ideal_generators;
        std::sort(gens.begin(), gens.end());
        bool rees = rc.degree == 2 && rc.charts_match &&
                    gens == std::vector<IntVec>{iv({0, 2}), iv({1, 1}), iv({2, 0})};
        add(out, "double-cover-moduli-blowup", rees,
            "expected degree 2 with the quadric ideal, charts matching: " + rc.detail);
    }

    {  // the weight (-1,1,3) hypersurface: a fixed point survives
        GradedAction x = graded(3, {-1, 1, 3}, {"x1*x3^2 + x2^5"});
        std::vector<CoordinateLocus> fps =
            projectivized_fixed_points(tangent_cone(x), x.weights);
        bool three = fps.size() == 3;
        TransformFixedPoints tf = reichstein_fixed_points(x);
        bool survivor = tf.fixed == std::vector<CoordinateLocus>{subspace({0, 2})};
        add(out, "hypersurface-fixed-point", three && survivor,
            "expected three ambient fixed points and the survivor V(x1,x3)");

        CoordinateLocus exc = saturated_blowup_exceptional(x);
        bool shape = exc == CoordinateLocus{{{2}}, {{0}, {1}}};
        bool clean = true;
        for (const std::vector<int>& zeros :
             {std::vector<int>{0, 1}, std::vector<int>{0, 2}, std::vector<int>{1, 2}})
            if (point_in_locus(zeros, exc)) clean = false;
        add(out, "hypersurface-exceptional", shape && clean,
            "expected V(x3) minus the two points, fixed-point free, got " + exc.show());
    }

    {  // the five-variable pair: the witness plane with weights (1,2)
        GradedAction x = graded(5, {-1, 1, 3, 2, 7}, {"x1*x3^2 + x2^5", "x1*x5 + x4^3"});
        std::vector<CoordinateLocus> fps =
            projectivized_fixed_points(tangent_cone(x), x.weights);
        bool five = fps.size() == 5;

        CoordinateLocus exc = saturated_blowup_exceptional(x);
        bool shape = exc == CoordinateLocus{{{2, 4}}, {{0}, {1, 3}}};
        bool clean = true;
        for (int k = 0; k < 5; ++k) {
            std::vector<int> zeros;
            for (int c = 0; c < 5; ++c)
                if (c != k) zeros.push_back(c);
            if (point_in_locus(zeros, exc)) clean = false;
        }
        add(out, "five-variable-exceptional", five && shape && clean,
            "expected V(x3,x5) minus V(x1) u V(x2,x4), fixed-point free, got " +
                exc.show());

        TransformFixedPoints tf = reichstein_fixed_points(x);
        bool witness =
            tf.no_quotient_witnesses == std::vector<CoordinateLocus>{subspace({0, 2, 4})};
        add(out, "five-variable-witness", witness,
            "expected the plane spanned by the weight (1,2) coordinates");
    }

    {  // linearization variation: the four-case table over a small grid
        bool all = true;
        std::string bad;
        for (long a = 1; a <= 3 && all; ++a)
            for (long i = 1; i <= 3 && all; ++i)
                for (long j = -6; j <= 6 && all; ++j) {
                    VargitCase expect;
                    if (j > 0 || j < -a * i) expect = VargitCase::empty_locus;
                    else if (j == 0) expect = VargitCase::minus_P2;
                    else if (j == -a * i) expect = VargitCase::minus_P1;
                    else expect = VargitCase::minus_both;
                    VargitCase got = vargit_locus(Int(a), Int(i), Int(j));
                    if (got != expect) {
                        all = false;
                        bad = "(" + std::to_string(a) + "," + std::to_string(i) + "," +
                              std::to_string(j) + ") -> " + vargit_name(got);
                    }
                }
        add(out, "linearization-grid", all, "first mismatch at " + bad);
    }

    {  // the plane-and-line union: blow up the origin once
        MonomialStack x = make_monomial_stack(
            3, {0b011u, 0b100u},
            DiagonalizableGroup::torus(IntMatrix::from_rows({iv({1, -1, 0})}, 3)));
        MonomialTrace t = reduce_monomial(x);
        bool shape = t.partition.center_supports == std::vector<Pattern>{0b111u} &&
                     t.blowup.has_value() && t.components.size() == 2 &&
                     t.components[0].rest &&
                     t.components[0].rest->final_class == GerbeClass::gerbe_over_tame &&
                     t.components[1].rest &&
                     t.components[1].rest->final_class == GerbeClass::tame &&
                     verify_trace(t).ok;
        add(out, "plane-line-union", shape,
            "expected center V(x1,x2,x3) and a gerbe plus tame outcome");
    }

    return out;
}

}  // namespace stabreduce
