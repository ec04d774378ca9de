#pragma once

#include <string>

#include "document.hpp"

namespace filtra::dsl {

namespace detail {

// Consecutive runs of horizontal/vertical base coordinates become alternating
// "base"/"vertical" statements, which reproduces any declaration order.
inline void print_base(std::string& out, const CoordinateFrame& f) {
    std::size_t i = 0;
    while (i < f.n_base()) {
        bool vertical = f.base()[i].vertical;
        out += vertical ? "  vertical" : "  base";
        while (i < f.n_base() && f.base()[i].vertical == vertical) {
            out += " " + f.base()[i].name;
            ++i;
        }
        out += ";\n";
    }
}

inline void print_atlas_shape(std::string& out, const Atlas& atlas) {
    if (!atlas.charts.empty()) {
        out += "  charts";
        for (const auto& c : atlas.charts)
            out += " " + c;
        out += ";\n";
    }
    for (const auto& [a, b] : atlas.overlaps)
        out += "  overlap " + a + " " + b + ";\n";
    for (const auto& t : atlas.triples)
        out += "  triple " + t[0] + " " + t[1] + " " + t[2] + ";\n";
}

inline void print_rules(std::string& out, const ChartMap& m, const std::string& indent) {
    const auto base_names = m.source->base_names();
    for (std::size_t a = 0; a < m.target->n_base(); ++a)
        out += indent + m.target->base()[a].name + "' = " +
               m.base_rules[a].to_string(base_names) + ";\n";
    for (std::size_t j = 0; j < m.target->n_fibers(); ++j)
        out += indent + m.target->fibers()[j].name + "' = " + m.fiber_rules[j].to_string() +
               ";\n";
}

inline void print_transitions(std::string& out, const Atlas& atlas) {
    for (const auto& t : atlas.transitions) {
        out += "  transition " + t.source_chart + " -> " + t.target_chart + " {\n";
        print_rules(out, t.map, "    ");
        out += "  }\n";
    }
}

} // namespace detail

inline std::string print_bundle(const FilteredBundleSpec& b) {
    std::string out = "bundle " + b.name + " {\n";
    out += "  axes " + std::to_string(b.frame->axes()) + ";\n";
    out += "  degree " + b.frame->degree().to_string() + ";\n";
    detail::print_base(out, *b.frame);
    for (const auto& fc : b.frame->fibers())
        out += "  coord " + fc.name + " weight " + fc.weight.to_string() + ";\n";
    detail::print_atlas_shape(out, b.atlas);
    detail::print_transitions(out, b.atlas);
    out += "}\n";
    return out;
}

inline std::string print_tower(const AffineTowerSpec& t) {
    std::string out = "tower " + t.name + " {\n";
    detail::print_base(out, *t.frame);
    for (const auto& fc : t.frame->fibers())
        out += "  coord " + fc.name + " weight " + fc.weight.to_string() + ";\n";
    detail::print_atlas_shape(out, t.atlas);
    detail::print_transitions(out, t.atlas);
    out += "}\n";
    return out;
}

inline std::string print_morphism(const FilteredMorphism& m) {
    std::string out = "morphism " + m.name + " : " + m.source_bundle.name + " -> " +
                      m.target_bundle.name + " {\n";
    out += "  chart " + m.source_chart + " -> " + m.target_chart + ";\n";
    out += "  map {\n";
    detail::print_rules(out, m.map, "    ");
    out += "  }\n";
    if (m.base_inverse) {
        out += "  inverse {\n";
        const auto target_names = m.map.target->base_names();
        for (std::size_t a = 0; a < m.map.source->n_base(); ++a)
            out += "    " + m.map.source->base()[a].name + " = " +
                   (*m.base_inverse)[a].to_string(target_names) + ";\n";
        out += "  }\n";
    }
    out += "}\n";
    return out;
}

inline std::string print_filtration(const FiltrationDecl& f) {
    std::string out = "filtration " + f.name + " {\n";
    out += "  ambient";
    for (const auto& v : f.vars)
        out += " " + v;
    out += ";\n";
    out += "  bound " + std::to_string(f.presentation.bound) + ";\n";
    for (std::size_t i = 0; i < f.presentation.levels.size(); ++i) {
        out += "  level " + std::to_string(i) + ":";
        const auto& gens = f.presentation.levels[i];
        for (std::size_t g = 0; g < gens.size(); ++g)
            out += (g ? ", " : " ") + gens[g].to_string(f.vars);
        out += gens.empty() ? " ;\n" : ";\n";
    }
    out += "}\n";
    return out;
}

inline std::string print_document(const Document& doc) {
    std::string out;
    bool first = true;
    for (const auto& [kind, i] : doc.order) {
        if (!first)
            out += "\n";
        first = false;
        switch (kind) {
        case BlockKind::Bundle: out += print_bundle(doc.bundles[i]); break;
        case BlockKind::Morphism: out += print_morphism(doc.morphisms[i]); break;
        case BlockKind::Tower: out += print_tower(doc.towers[i]); break;
        case BlockKind::Filtration: out += print_filtration(doc.filtrations[i]); break;
        }
    }
    return out;
}

} // namespace filtra::dsl
