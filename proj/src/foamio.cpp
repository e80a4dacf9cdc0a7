#include "foam/foamio.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace foam {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(where + "." + key + ": missing");
    return j.at(key);
}

int as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where + ": expected integer");
    return j.get<int>();
}

Int as_bigint(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) {
        Int v;
        if (v.set_str(j.get<std::string>(), 10) != 0) throw ParseError(where + ": bad integer string");
        return v;
    }
    throw ParseError(where + ": expected integer");
}

const json& as_array(const json& j, const std::string& where, std::size_t size = 0) {
    if (!j.is_array()) throw ParseError(where + ": expected array");
    if (size && j.size() != size) throw ParseError(where + ": expected " + std::to_string(size) + " entries");
    return j;
}

void check_id(const json& item, std::size_t k, const std::string& where) {
    if (item.contains("id") && as_int(item.at("id"), where + ".id") != static_cast<int>(k))
        throw ParseError(where + ".id: ids must be 0,1,2,... in order");
}

}  // namespace

Foam parse_foam(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("json: ") + e.what());
    }
    Foam F;
    F.N = as_int(field(doc, "n", "foam"), "n");
    if (F.N < 1 || F.N > kMaxPigments) throw ParseError("n: out of range");
    bool need_trace = false;
    const json& facets = as_array(field(doc, "facets", "foam"), "facets");
    for (std::size_t k = 0; k < facets.size(); ++k) {
        const std::string w = "facets[" + std::to_string(k) + "]";
        const json& jf = facets[k];
        check_id(jf, k, w);
        Facet f;
        f.label = as_int(field(jf, "label", w), w + ".label");
        if (f.label < 0 || f.label > F.N) throw ParseError(w + ".label: out of range");
        f.genus = jf.contains("genus") ? as_int(jf.at("genus"), w + ".genus") : 0;
        if (jf.contains("boundary")) {
            const json& jb = as_array(jf.at("boundary"), w + ".boundary");
            for (std::size_t c = 0; c < jb.size(); ++c) {
                const std::string wc = w + ".boundary[" + std::to_string(c) + "]";
                std::vector<SideRef> circ;
                for (std::size_t e = 0; e < as_array(jb[c], wc).size(); ++e) {
                    const std::string we = wc + "[" + std::to_string(e) + "]";
                    const json& js = as_array(jb[c][e], we, 2);
                    circ.push_back({as_int(js[0], we), as_int(js[1], we)});
                }
                f.boundary.push_back(circ);
            }
        } else {
            need_trace = true;
        }
        if (jf.contains("decoration")) {
            f.decoration = SchurCombo(f.label);
            const json& jd = as_array(jf.at("decoration"), w + ".decoration");
            for (std::size_t t = 0; t < jd.size(); ++t) {
                const std::string wt = w + ".decoration[" + std::to_string(t) + "]";
                const json& term = as_array(jd[t], wt, 2);
                if (!term[0].is_string()) throw ParseError(wt + ": expected diagram string");
                YoungDiagram d;
                try {
                    d = YoungDiagram::parse(term[0].get<std::string>());
                } catch (const ParseError& e) {
                    throw ParseError(wt + ": " + e.what());
                }
                if (!admissible(d, f.label, Convention::Facet))
                    throw ParseError(wt + ": diagram " + d.to_string() + " has more columns than the label");
                f.decoration.add(d, as_bigint(term[1], wt));
            }
        } else {
            f.decoration = SchurCombo::one(f.label);
        }
        F.facets.push_back(std::move(f));
    }
    const json& arcs = as_array(field(doc, "arcs", "foam"), "arcs");
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        const std::string w = "arcs[" + std::to_string(k) + "]";
        const json& ja = arcs[k];
        check_id(ja, k, w);
        BindingArc a;
        const json& kind = field(ja, "kind", w);
        if (kind == "circle")
            a.kind = ArcKind::Circle;
        else if (kind == "interval")
            a.kind = ArcKind::Interval;
        else
            throw ParseError(w + ".kind: expected \"circle\" or \"interval\"");
        const json& js = as_array(field(ja, "sides", w), w + ".sides", 3);
        for (int s = 0; s < 3; ++s) a.sides[s] = as_int(js[s], w + ".sides");
        if (a.kind == ArcKind::Interval) {
            const json& je = as_array(field(ja, "endpoints", w), w + ".endpoints", 2);
            for (int e = 0; e < 2; ++e) a.ends[e] = as_int(je[e], w + ".endpoints");
        } else if (ja.contains("endpoints") && !ja.at("endpoints").empty()) {
            throw ParseError(w + ".endpoints: circle bindings have none");
        }
        F.arcs.push_back(a);
    }
    if (doc.contains("points")) {
        const json& pts = as_array(doc.at("points"), "points");
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const std::string w = "points[" + std::to_string(k) + "]";
            check_id(pts[k], k, w);
            const json& ji = as_array(field(pts[k], "incident", w), w + ".incident", 4);
            SingularPoint p;
            for (int e = 0; e < 4; ++e) {
                const json& ae = as_array(ji[e], w + ".incident", 2);
                p.incident[e] = {as_int(ae[0], w + ".incident"), as_int(ae[1], w + ".incident")};
            }
            F.points.push_back(p);
        }
    }
    if (need_trace) {
        auto rep = validate_structure(F);
        if (!rep.ok()) throw ParseError(rep.to_string());
        auto traced = trace_boundaries(F);
        for (std::size_t f = 0; f < F.facets.size(); ++f)
            if (F.facets[f].boundary.empty()) F.facets[f].boundary = traced[f];
    }
    return F;
}

std::string foam_to_json(const Foam& F, int indent) {
    json doc;
    doc["n"] = F.N;
    doc["facets"] = json::array();
    for (std::size_t k = 0; k < F.facets.size(); ++k) {
        const Facet& f = F.facets[k];
        json jf;
        jf["id"] = k;
        jf["label"] = f.label;
        jf["genus"] = f.genus;
        jf["boundary"] = json::array();
        for (const auto& circ : f.boundary) {
            json jc = json::array();
            for (const SideRef& s : circ) jc.push_back({s.arc, s.slot});
            jf["boundary"].push_back(jc);
        }
        if (!f.decoration.is_one()) {
            jf["decoration"] = json::array();
            for (const auto& [d, c] : f.decoration.terms()) {
                if (c.fits_slong_p())
                    jf["decoration"].push_back({d.to_string(), c.get_si()});
                else
                    jf["decoration"].push_back({d.to_string(), c.get_str()});
            }
        }
        doc["facets"].push_back(jf);
    }
    doc["arcs"] = json::array();
    for (std::size_t k = 0; k < F.arcs.size(); ++k) {
        const BindingArc& a = F.arcs[k];
        json ja;
        ja["id"] = k;
        ja["kind"] = a.kind == ArcKind::Circle ? "circle" : "interval";
        ja["sides"] = {a.sides[0], a.sides[1], a.sides[2]};
        ja["endpoints"] = a.kind == ArcKind::Circle ? json::array() : json{a.ends[0], a.ends[1]};
        doc["arcs"].push_back(ja);
    }
    doc["points"] = json::array();
    for (std::size_t k = 0; k < F.points.size(); ++k) {
        json jp;
        jp["id"] = k;
        jp["incident"] = json::array();
        for (const ArcEnd& e : F.points[k].incident) jp["incident"].push_back({e.arc, e.end});
        doc["points"].push_back(jp);
    }
    return doc.dump(indent) + "\n";
}

Foam read_foam_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_foam(buf.str());
    } catch (const ParseError& e) {
        std::string what = e.what();
        const std::string tag = "ParseError: ";
        if (what.rfind(tag, 0) == 0) what = what.substr(tag.size());
        throw ParseError(path + ": " + what);
    }
}

void write_foam_file(const std::string& path, const Foam& F) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot write");
    out << foam_to_json(F);
}

}  // namespace foam
