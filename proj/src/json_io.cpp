#include "injekt/json_io.hpp"

namespace injekt {

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw Error("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

Json space_to_json(const SpaceDescriptor& s) {
    Json j;
    if (s.kind == SpaceDescriptor::Kind::Product) {
        j["kind"] = "product";
        j["dims"] = s.data;
    } else {
        j["kind"] = "weighted";
        j["weights"] = s.data;
    }
    return j;
}

SpaceDescriptor space_from_json(const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "product") return SpaceDescriptor::product(j.at("dims").get<std::vector<long>>());
    if (kind == "weighted") return SpaceDescriptor::weighted(j.at("weights").get<std::vector<long>>());
    throw Error("unknown space kind: " + kind);
}

Json poly_to_json(const PolyQ& p) {
    Json j;
    j["blocks"] = p.block_sizes;
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms) {
        Json t;
        t["c"] = rat_to_string(c);
        t["e"] = e.blocks;
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

PolyQ poly_from_json(const Json& j) {
    const RatField Q;
    PolyQ p(j.at("blocks").get<std::vector<int>>());
    for (const Json& t : j.at("terms")) {
        ExpVec e;
        e.blocks = t.at("e").get<std::vector<std::vector<int32_t>>>();
        p.add_term(Q, e, rat_from_string(t.at("c").get<std::string>()));
    }
    return p;
}

Json morphism_to_json(const Morphism& m) {
    Json j;
    j["source"] = space_to_json(m.source);
    if (m.mdeg.weighted)
        j["multidegree"] = m.mdeg.d[0];
    else
        j["multidegree"] = m.mdeg.d;
    Json secs = Json::array();
    for (const PolyQ& s : m.sections) secs.push_back(poly_to_json(s));
    j["sections"] = std::move(secs);
    j["label"] = m.label;
    if (m.decoder.empty())
        j["decoder"] = nullptr;
    else
        j["decoder"] = "builtin:" + m.decoder;
    return j;
}

Morphism morphism_from_json(const Json& j) {
    Morphism m;
    m.source = space_from_json(j.at("source"));
    const Json& md = j.at("multidegree");
    if (md.is_array()) {
        m.mdeg.weighted = false;
        m.mdeg.d = md.get<std::vector<long>>();
    } else {
        m.mdeg.weighted = true;
        m.mdeg.d = {md.get<long>()};
    }
    for (const Json& s : j.at("sections")) m.sections.push_back(poly_from_json(s));
    m.label = j.value("label", std::string{});
    if (j.contains("decoder") && !j.at("decoder").is_null()) {
        std::string d = j.at("decoder").get<std::string>();
        const std::string prefix = "builtin:";
        if (d.rfind(prefix, 0) != 0) throw Error("decoder must be builtin:<name> or null");
        m.decoder = d.substr(prefix.size());
        static const char* known[] = {"identity",        "segre",      "chow_veronese_m1",
                                      "tangential_p1p1", "p1p1_deg_d", "wps_phi1",
                                      "wps_phik",        "p1pn",       "pn_duf"};
        bool ok = false;
        for (const char* k : known) ok = ok || m.decoder == k;
        if (!ok) throw Error("unknown decoder: " + m.decoder);
    }
    validate_morphism(m);
    return m;
}

Json tensor_to_json(const Tensor222n& t) {
    Json j;
    j["m"] = t.m;
    Json slices = Json::array();
    for (const auto& sl : t.slices) {
        Json rows = Json::array();
        for (int a = 0; a < 2; ++a) {
            Json row = Json::array();
            for (int b = 0; b < 2; ++b) row.push_back(rat_to_string(sl[a][b]));
            rows.push_back(std::move(row));
        }
        slices.push_back(std::move(rows));
    }
    j["slices"] = std::move(slices);
    return j;
}

Tensor222n tensor_from_json(const Json& j) {
    int m = j.at("m").get<int>();
    Tensor222n t = Tensor222n::zero(m);
    const Json& slices = j.at("slices");
    if (static_cast<int>(slices.size()) != m + 1) throw ShapeMismatch("tensor slice count mismatch");
    for (int c = 0; c <= m; ++c)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const Json& cell = slices.at(c).at(a).at(b);
                t.slices[c][a][b] = cell.is_string() ? rat_from_string(cell.get<std::string>())
                                                     : Rat(cell.get<long>());
            }
    return t;
}

Json curve_to_json(const RationalCurveP3& c) {
    Json j;
    Json coords = Json::array();
    for (const auto& f : c.coords) {
        Json v = Json::array();
        for (const Rat& x : f) v.push_back(rat_to_string(x));
        coords.push_back(std::move(v));
    }
    j["coords"] = std::move(coords);
    return j;
}

RationalCurveP3 curve_from_json(const Json& j) {
    RationalCurveP3 c;
    const Json& coords = j.at("coords");
    if (coords.size() != 4) throw ShapeMismatch("curve needs four coordinate forms");
    for (int i = 0; i < 4; ++i) {
        c.coords[i].clear();
        for (const Json& cell : coords.at(i))
            c.coords[i].push_back(cell.is_string() ? rat_from_string(cell.get<std::string>())
                                                   : Rat(cell.get<long>()));
    }
    validate_curve(c);
    return c;
}

Json point_to_json(const PPoint& p) {
    Json blocks = Json::array();
    for (const auto& blk : p) {
        Json b = Json::array();
        for (const Rat& c : blk) b.push_back(rat_to_string(c));
        blocks.push_back(std::move(b));
    }
    return blocks;
}

Json report_to_json(const VerificationReport& r) {
    Json j;
    j["label"] = r.label;
    j["check"] = r.check;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["height"] = r.height;
    j["evidence"] = r.evidence;
    j["strata_covered"] = r.strata_covered;
    Json cols = Json::array();
    for (const auto& c : r.collisions) {
        Json w;
        w["x"] = point_to_json(c.x);
        w["y"] = point_to_json(c.y);
        Json ix = Json::array(), iy = Json::array();
        for (const Rat& v : c.image_x) ix.push_back(rat_to_string(v));
        for (const Rat& v : c.image_y) iy.push_back(rat_to_string(v));
        w["image_x"] = std::move(ix);
        w["image_y"] = std::move(iy);
        cols.push_back(std::move(w));
    }
    j["collisions"] = std::move(cols);
    Json hits = Json::array();
    for (const auto& h : r.base_locus_hits) hits.push_back(point_to_json(h));
    j["base_locus_hits"] = std::move(hits);
    Json rts = Json::array();
    for (const auto& f : r.roundtrip_failures) {
        Json w;
        w["x"] = point_to_json(f.x);
        w["reason"] = f.reason;
        rts.push_back(std::move(w));
    }
    j["roundtrip_failures"] = std::move(rts);
    j["clean"] = r.clean();
    j["elapsed_seconds"] = r.elapsed_seconds;
    return j;
}

Json gadget_report_to_json(const GadgetReport& r) {
    Json j;
    j["m"] = r.m;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["checks"] = {{"a", r.checks_a}, {"b", r.checks_b}, {"c", r.checks_c}, {"d", r.checks_d}};
    j["violations"] = r.violations;
    j["clean"] = r.clean();
    return j;
}

Json sep_report_to_json(const SepReport& r) {
    Json j;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["prime"] = r.prime;
    Json v = Json::array();
    for (const auto& viol : r.violations) {
        Json w;
        w["kind"] = viol.kind;
        w["v"] = viol.v;
        w["w"] = viol.w;
        v.push_back(std::move(w));
    }
    j["violations"] = std::move(v);
    j["clean"] = r.clean();
    return j;
}

Json cone_report_to_json(const ConeProjReport& r) {
    Json j;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["prime"] = r.prime;
    j["affine_violations"] = r.affine_violations;
    j["projective_collisions"] = r.projective_collisions;
    j["discrepancies"] = r.discrepancies;
    j["consistent"] = r.consistent();
    return j;
}

Json secant_result_to_json(const SecantResult& r) {
    Json j;
    j["verdict"] = secant_verdict_name(r.verdict);
    if (r.witness) {
        j["witness_s"] = {rat_to_string(r.witness->first[0]), rat_to_string(r.witness->first[1])};
        j["witness_t"] = {rat_to_string(r.witness->second[0]), rat_to_string(r.witness->second[1])};
    }
    if (!r.primes.empty()) {
        j["primes"] = r.primes;
        j["prime_has_solution"] = r.prime_has_solution;
    }
    j["note"] = r.note;
    return j;
}

} // namespace injekt
