#pragma once

#include <json.hpp>

#include <string>

#include "document.hpp"

// Stable structured rendering of documents and reports. Field names are
// frozen in docs/machine-format.md; expressions appear as canonical surface
// strings, so a machine consumer can round-trip them through the parser.
namespace filtra::dsl {

using json = nlohmann::json;

inline constexpr const char* machine_schema = "filtra-machine/1";

inline json weight_json(const Weight& w) {
    json a = json::array();
    for (std::size_t i = 0; i < w.axes(); ++i)
        a.push_back(w[i]);
    return a;
}

inline json rules_json(const ChartMap& m) {
    json a = json::array();
    const auto base_names = m.source->base_names();
    for (std::size_t i = 0; i < m.target->n_base(); ++i)
        a.push_back({{"coord", m.target->base()[i].name},
                     {"expr", m.base_rules[i].to_string(base_names)}});
    for (std::size_t j = 0; j < m.target->n_fibers(); ++j)
        a.push_back({{"coord", m.target->fibers()[j].name},
                     {"expr", m.fiber_rules[j].to_string()}});
    return a;
}

inline json atlas_json(const Atlas& atlas) {
    json j;
    j["charts"] = atlas.charts;
    json ov = json::array();
    for (const auto& [a, b] : atlas.overlaps)
        ov.push_back({a, b});
    j["overlaps"] = ov;
    json tr = json::array();
    for (const auto& t : atlas.triples)
        tr.push_back({t[0], t[1], t[2]});
    j["triples"] = tr;
    json ts = json::array();
    for (const auto& t : atlas.transitions)
        ts.push_back({{"source", t.source_chart},
                      {"target", t.target_chart},
                      {"rules", rules_json(t.map)}});
    j["transitions"] = ts;
    return j;
}

inline json frame_json(const CoordinateFrame& f) {
    json j;
    j["axes"] = f.axes();
    j["degree"] = weight_json(f.degree());
    json base = json::array();
    for (const auto& b : f.base())
        base.push_back({{"name", b.name}, {"vertical", b.vertical}});
    j["base"] = base;
    json fibers = json::array();
    for (const auto& fc : f.fibers())
        fibers.push_back({{"name", fc.name}, {"weight", weight_json(fc.weight)}});
    j["fibers"] = fibers;
    return j;
}

inline json bundle_json(const FilteredBundleSpec& b) {
    json j = frame_json(*b.frame);
    j.update(atlas_json(b.atlas));
    j["kind"] = "bundle";
    j["name"] = b.name;
    return j;
}

inline json tower_json(const AffineTowerSpec& t) {
    json j = frame_json(*t.frame);
    j.update(atlas_json(t.atlas));
    j.erase("axes");
    j.erase("degree");
    j["kind"] = "tower";
    j["name"] = t.name;
    return j;
}

inline json morphism_json(const FilteredMorphism& m) {
    json j;
    j["kind"] = "morphism";
    j["name"] = m.name;
    j["source"] = m.source_bundle.name;
    j["target"] = m.target_bundle.name;
    j["source_chart"] = m.source_chart;
    j["target_chart"] = m.target_chart;
    j["rules"] = rules_json(m.map);
    if (m.base_inverse) {
        json inv = json::array();
        const auto target_names = m.map.target->base_names();
        for (std::size_t a = 0; a < m.map.source->n_base(); ++a)
            inv.push_back({{"coord", m.map.source->base()[a].name},
                           {"expr", (*m.base_inverse)[a].to_string(target_names)}});
        j["inverse"] = inv;
    } else {
        j["inverse"] = nullptr;
    }
    return j;
}

inline json filtration_json(const FiltrationDecl& f) {
    json j;
    j["kind"] = "filtration";
    j["name"] = f.name;
    j["ambient"] = f.vars;
    j["bound"] = f.presentation.bound;
    json levels = json::array();
    for (const auto& level : f.presentation.levels) {
        json l = json::array();
        for (const auto& g : level)
            l.push_back(g.to_string(f.vars));
        levels.push_back(l);
    }
    j["levels"] = levels;
    return j;
}

inline json document_json(const Document& doc) {
    json objects = json::array();
    for (const auto& [kind, i] : doc.order) {
        switch (kind) {
        case BlockKind::Bundle: objects.push_back(bundle_json(doc.bundles[i])); break;
        case BlockKind::Morphism: objects.push_back(morphism_json(doc.morphisms[i])); break;
        case BlockKind::Tower: objects.push_back(tower_json(doc.towers[i])); break;
        case BlockKind::Filtration:
            objects.push_back(filtration_json(doc.filtrations[i]));
            break;
        }
    }
    return json{{"schema", machine_schema}, {"kind", "document"}, {"objects", objects}};
}

inline json findings_json(const ValidationReport& rep) {
    json a = json::array();
    for (const auto& f : rep.findings)
        a.push_back({{"check", f.check},
                     {"subject", f.subject},
                     {"pass", f.pass},
                     {"detail", f.detail}});
    return a;
}

inline json report_json(const std::string& object, const ValidationReport& rep) {
    return json{{"schema", machine_schema},
                {"kind", "report"},
                {"object", object},
                {"pass", rep.pass()},
                {"findings", findings_json(rep)}};
}

inline json rank_json(const std::string& object, const std::vector<int>& ranks) {
    return json{{"schema", machine_schema},
                {"kind", "rank"},
                {"object", object},
                {"ranks", ranks}};
}

inline json generators_json(const std::string& object,
                            const std::vector<GradedGenerator>& gens,
                            const std::vector<std::string>& vars) {
    json a = json::array();
    for (const auto& g : gens)
        a.push_back({{"expr", g.poly.to_string(vars)}, {"weight", g.weight}});
    return json{{"schema", machine_schema},
                {"kind", "generators"},
                {"object", object},
                {"generators", a}};
}

inline std::string machine_dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace filtra::dsl
