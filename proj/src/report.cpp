// Problem-document parsing and report assembly. Everything that reaches the
// JSON layer goes through str()/describe(), so two runs on the same document
// serialize identically.

#include "ozc/report.hpp"

#include "ozc/amalgam.hpp"
#include "ozc/errors.hpp"

namespace ozc {

namespace {

Json pair_json(const PlaneAutomorphism& phi) {
    return Json::array({phi.fx().str(), phi.fy().str()});
}

Json point_json(const PlanePoint& p) {
    return Json::array({p.x.str(), p.y.str()});
}

Json config_json(const ClosureConfig& cfg) {
    Json j;
    j["orbit_cap"] = cfg.orbit_cap;
    j["word_cap"] = cfg.word_cap;
    j["multdep_bound"] = cfg.multdep_bound;
    return j;
}

FieldPtr field_from_json(const Json& j) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "Q" || s == "rationals") return NumberField::rationals();
        throw ParseError("unknown field name \"" + s + "\", expected \"Q\"");
    }
    if (j.is_object() && j.contains("cyclotomic"))
        return NumberField::cyclotomic(j.at("cyclotomic").get<unsigned long>());
    if (j.is_object() && j.contains("modulus")) {
        std::vector<Rational> mod;
        for (const Json& c : j.at("modulus")) mod.push_back(parse_rational(c.get<std::string>()));
        return NumberField::custom(mod, false);
    }
    throw ParseError("field must be \"Q\", {\"cyclotomic\": n} or {\"modulus\": [...]}");
}

unsigned long ul_at(const Json& j, const char* key, unsigned long fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<unsigned long>();
}

// "(fx, fy)" -> the two component strings, comma found at parenthesis depth 0
PlaneAutomorphism map_from_string(const FieldPtr& field, const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos || s[a] != '(' || s[b] != ')')
        throw ParseError("automorphism string must look like \"(fx, fy)\": " + s);
    int depth = 0;
    for (size_t i = a + 1; i < b; i++) {
        if (s[i] == '(') depth++;
        else if (s[i] == ')') depth--;
        else if (s[i] == ',' && depth == 0)
            return parse_automorphism(field, s.substr(a + 1, i - a - 1),
                                      s.substr(i + 1, b - i - 1));
    }
    throw ParseError("automorphism string needs two components: " + s);
}

} // namespace

ProblemDocument parse_document(const Json& doc, const ClosureConfig& base) {
    if (!doc.is_object()) throw ParseError("problem document must be a JSON object");
    ProblemDocument out;
    out.config = base;
    out.field = field_from_json(doc.contains("field") ? doc.at("field") : Json("Q"));

    if (!doc.contains("generators") || !doc.at("generators").is_array() ||
        doc.at("generators").empty())
        throw ParseError("document needs a nonempty \"generators\" array");
    for (const Json& g : doc.at("generators")) {
        if (g.is_string()) {
            out.generators.push_back(map_from_string(out.field, g.get<std::string>()));
        } else if (g.is_array() && g.size() == 2) {
            out.generators.push_back(PlaneAutomorphism(
                parse_bipoly(out.field, g.at(0).get<std::string>()),
                parse_bipoly(out.field, g.at(1).get<std::string>())));
        } else {
            throw ParseError("each generator is \"(fx, fy)\" or a pair [\"fx\", \"fy\"]");
        }
    }

    if (doc.contains("point")) {
        const Json& p = doc.at("point");
        if (!p.is_array() || p.size() != 2)
            throw ParseError("\"point\" must be a pair of coordinate strings");
        out.point = PlanePoint{parse_field_element(out.field, p.at(0).get<std::string>()),
                               parse_field_element(out.field, p.at(1).get<std::string>())};
    }

    if (doc.contains("config")) {
        const Json& c = doc.at("config");
        out.config.orbit_cap = ul_at(c, "orbit_cap", out.config.orbit_cap);
        out.config.word_cap = ul_at(c, "word_cap", out.config.word_cap);
        out.config.multdep_bound = ul_at(c, "multdep_bound", out.config.multdep_bound);
    }
    return out;
}

Json field_json(const FieldPtr& field) {
    Json j;
    j["name"] = field->describe();
    j["degree"] = field->degree();
    if (field->degree() > 1) {
        Json mod = Json::array();
        for (const Rational& c : field->modulus()) mod.push_back(rational_to_string(c));
        j["modulus"] = mod;
    }
    return j;
}

Json subvariety_json(const Subvariety& v) {
    Json j;
    switch (v.kind) {
    case Subvariety::Kind::Points: {
        j["dimension"] = 0;
        Json pts = Json::array();
        for (const PlanePoint& p : v.points) pts.push_back(point_json(p));
        j["points"] = pts;
        break;
    }
    case Subvariety::Kind::Curves: {
        j["dimension"] = 1;
        Json cs = Json::array();
        for (const BiPoly& f : v.curves) cs.push_back(f.str());
        j["curves"] = cs;
        break;
    }
    case Subvariety::Kind::Plane:
        j["dimension"] = 2;
        break;
    }
    return j;
}

Json descriptor_json(const LatticeDescriptor& d) {
    Json j;
    switch (d.kind) {
    case LatticeKind::FiniteOrder:
        j["kind"] = "FiniteOrder";
        j["order"] = d.order;
        break;
    case LatticeKind::OrbitFibration: {
        j["kind"] = "OrbitFibration";
        j["pi"] = d.pi->str();
        j["grouping"] = d.grouping;
        j["scaling"] = d.scaling->str();
        if (d.transversal) j["transversal"] = d.transversal->str();
        Json tl = Json::array();
        for (const BiPoly& f : d.torsion_locus) tl.push_back(f.str());
        j["torsion_locus"] = tl;
        j["torsion_order"] = d.torsion_order;
        break;
    }
    case LatticeKind::ProjectiveQuotient: {
        j["kind"] = "ProjectiveQuotient";
        j["num"] = d.pq_num->str();
        j["den"] = d.pq_den->str();
        j["grouping"] = d.grouping;
        j["scaling"] = d.scaling->str();
        j["exponents"] = Json::array({d.pq_s1, d.pq_s2});
        j["mixed"] = d.pq_mixed;
        Json sp = Json::array();
        for (const BiPoly& f : d.pq_special) sp.push_back(f.str());
        j["special_fibers"] = sp;
        j["base_point"] = point_json(*d.special_point);
        break;
    }
    case LatticeKind::NonFibration: {
        j["kind"] = "NonFibration";
        Json cs = Json::array();
        for (const BiPoly& f : d.curves) cs.push_back(f.str());
        j["curves"] = cs;
        if (d.special_point) j["fixed_point"] = point_json(*d.special_point);
        break;
    }
    }
    if (!d.multdep_exhaustive) j["multdep_exhaustive"] = false;
    return j;
}

Json word_json(const AmalgamWord& w) {
    Json j;
    j["head"] = pair_json(w.head());
    Json ls = Json::array();
    for (const Letter& l : w.letters()) {
        Json e;
        switch (l.kind) {
        case Letter::Kind::Shear:
            e["type"] = "shear";
            e["a"] = l.a.str();
            break;
        case Letter::Kind::Swap:
            e["type"] = "swap";
            break;
        case Letter::Kind::Jonq:
            e["type"] = "triangular";
            Json cs = Json::array();
            for (const FieldElement& c : l.p) cs.push_back(c.str());
            e["p"] = cs;
            break;
        }
        ls.push_back(e);
    }
    j["letters"] = ls;
    j["length"] = w.length();
    auto bd = w.expected_bidegree();
    j["bidegree"] = Json::array({bd.first, bd.second});
    return j;
}

Json closure_json(const ClosureResult& r, bool with_trace) {
    Json j;
    j["result"] = subvariety_json(r.closure);
    j["deciding_step"] = r.deciding_step;
    j["caveats"] = r.caveats;
    if (with_trace) j["certificate"] = r.trace;
    return j;
}

Json run(const std::string& subcommand, const ProblemDocument& doc, bool with_trace) {
    Json out;
    out["subcommand"] = subcommand;
    out["field"] = field_json(doc.field);
    out["config"] = config_json(doc.config);

    if (subcommand == "factorize") {
        Json rs = Json::array();
        for (const PlaneAutomorphism& g : doc.generators) {
            Json e;
            e["input"] = pair_json(g);
            e["normal_form"] = word_json(factorize(g));
            rs.push_back(e);
        }
        out["results"] = rs;
    } else if (subcommand == "conjugate") {
        ConjugacyIntoFactor c = conjugate_into_factor(doc.generators);
        switch (c.placement) {
        case FactorPlacement::IntoAffine: out["placement"] = "affine"; break;
        case FactorPlacement::IntoJonquieres: out["placement"] = "triangular"; break;
        case FactorPlacement::NotConjugate: out["placement"] = "none"; break;
        }
        if (c.conjugator) {
            out["conjugator"] = pair_json(*c.conjugator);
            Json cg = Json::array();
            for (const PlaneAutomorphism& g : c.conjugated_generators) cg.push_back(pair_json(g));
            out["conjugated_generators"] = cg;
        }
    } else if (subcommand == "classify") {
        Json rs = Json::array();
        for (const PlaneAutomorphism& g : doc.generators) {
            Json e;
            e["input"] = pair_json(g);
            e["lattice"] = descriptor_json(classify(g, doc.config.multdep_bound));
            rs.push_back(e);
        }
        out["results"] = rs;
    } else if (subcommand == "closure") {
        if (!doc.point) throw ParseError("the closure subcommand needs a \"point\"");
        out["point"] = point_json(*doc.point);
        ClosureResult r = orbit_closure(doc.generators, *doc.point, doc.config);
        out.update(closure_json(r, with_trace));
    } else {
        throw ParseError("unknown subcommand \"" + subcommand +
                         "\"; use factorize, conjugate, classify or closure");
    }
    return out;
}

} // namespace ozc
