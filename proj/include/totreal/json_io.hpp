#pragma once

#include <json.hpp>

#include "totreal/battery.hpp"
#include "totreal/constructions.hpp"
#include "totreal/cyclo.hpp"
#include "totreal/numberfield.hpp"
#include "totreal/padics.hpp"
#include "totreal/qlattice.hpp"
#include "totreal/units.hpp"

namespace totreal {

using json = nlohmann::json;

/// Integer coefficients as decimal strings, ascending degree.
inline json to_json(const ZPoly& f) {
    json arr = json::array();
    for (const auto& c : f.coeffs()) arr.push_back(to_string(c));
    return arr;
}

/// { "minpoly": [...], "coords": ["p/q", ...] }
inline json to_json(const FieldElement& x) {
    json j;
    j["minpoly"] = to_json(x.field()->minpoly());
    json coords = json::array();
    for (const auto& c : x.coords()) coords.push_back(to_string(c));
    j["coords"] = coords;
    return j;
}

inline json to_json(const RatInterval& iv) {
    return json{{"lo", to_string(iv.lo)}, {"hi", to_string(iv.hi)}};
}

/// { "s": ..., "n": ..., "minpoly": [...] }
inline json to_json(const GExpr& g, bool with_minpoly = true) {
    json j;
    j["s"] = g.s();
    j["n"] = g.n();
    j["repr"] = g.str();
    if (with_minpoly) j["minpoly"] = to_json(g.minpoly());
    return j;
}

inline json to_json(const UnitClassReport& r) {
    json j;
    j["D"] = r.field_desc.D;
    j["ring"] = r.field_desc.ring_kind == RingKind::Z_half ? "Z[(1+sqrtD)/2]" : "Z[sqrtD]";
    j["fundamental_unit"] = to_json(r.fundamental_unit);
    j["norm"] = r.norm;
    j["class_count"] = r.class_count;
    json reps = json::array();
    for (const auto& e : r.representatives) reps.push_back(to_json(e));
    j["representatives"] = reps;
    return j;
}

inline json to_json(const RepresentResult& r) {
    json j;
    switch (r.status) {
    case RepresentResult::Status::Found: j["status"] = "found"; break;
    case RepresentResult::Status::Exhausted: j["status"] = "exhausted"; break;
    case RepresentResult::Status::BudgetExceeded: j["status"] = "budget_exceeded"; break;
    }
    j["nodes"] = r.nodes;
    if (r.status == RepresentResult::Status::Found) {
        json w = json::array();
        for (const auto& c : r.witness) w.push_back(to_string(c));
        j["witness"] = w;
        json fw = json::array();
        for (const auto& e : r.field_witness) fw.push_back(to_json(e));
        j["field_witness"] = fw;
    }
    return j;
}

inline json to_json(const SquareClassCoverage& cov) {
    json j;
    if (cov.lattice) {
        json gram = json::array();
        for (const auto& row : cov.lattice->gram()) {
            json r = json::array();
            for (const auto& e : row) {
                json coords = json::array();
                for (const auto& c : e.coords()) coords.push_back(to_string(c));
                r.push_back(coords);
            }
            gram.push_back(r);
        }
        j["gram"] = gram;
    }
    json tested = json::array();
    for (const auto& e : cov.tested_representatives) tested.push_back(to_json(e));
    j["tested_representatives"] = tested;
    json rep = json::array();
    for (auto i : cov.represented) rep.push_back(i);
    j["represented"] = rep;
    j["bound_2n_minus_2"] = cov.bound_2n_minus_2;
    j["bound_n_applicable"] = cov.bound_n_applicable;
    json outcomes = json::array();
    for (const auto& o : cov.outcomes) outcomes.push_back(to_json(o));
    j["outcomes"] = outcomes;
    return j;
}

inline json to_json(const GammaResult& g) {
    json j;
    if (g.kind == GammaResult::Kind::Element) {
        j["kind"] = "element";
        j["m"] = g.m;
        j["gamma"] = to_json(g.value);
    } else {
        j["kind"] = "not_applicable";
    }
    return j;
}

inline json to_json(const LocalWitness& w) {
    json j;
    j["p"] = to_string(w.p);
    j["precision"] = w.precision;
    j["w"] = to_string(w.w.residue());
    j["x"] = to_string(w.x.residue());
    j["y"] = to_string(w.y.residue());
    j["z"] = to_string(w.z.residue());
    return j;
}

inline json to_json(const TowerStage& s) {
    json j;
    j["index"] = s.index;
    json gens = json::array();
    for (const auto& g : s.generators) gens.push_back(to_json(g));
    j["generators"] = gens;
    json degs = json::array();
    for (const auto& d : s.generator_degrees) degs.push_back(to_string(d));
    j["generator_degrees"] = degs;
    j["relative_degree"] = to_string(s.relative_degree);
    j["base_approximation"] = s.base_approximation;
    return j;
}

inline json to_json(const BatteryResult& r) {
    json j;
    j["D"] = r.D;
    j["rank"] = r.rank;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["house_bound"] = r.house_bound;
    j["violations"] = r.violations;
    j["bound_n_applicable"] = r.bound_n_applicable;
    j["max_represented"] = r.max_represented;
    j["histogram"] = r.histogram;
    return j;
}

/// Parse "p/q" or integer strings (also plain JSON numbers) to a rational.
inline Rat rat_from_json(const json& v) {
    if (v.is_number_integer()) return Rat(static_cast<long>(v.get<long long>()));
    if (v.is_string()) return rat_from_string(v.get<std::string>());
    throw out_of_range_error("expected rational as string or integer");
}

inline FieldElement element_from_json(const FieldPtr& K, const json& coords) {
    if (!coords.is_array()) throw out_of_range_error("coords must be an array");
    std::vector<Rat> c;
    for (const auto& v : coords) c.push_back(rat_from_json(v));
    if (static_cast<long>(c.size()) > K->degree())
        throw out_of_range_error("too many coordinates for the field degree");
    return FieldElement(K, std::move(c));
}

} // namespace totreal
