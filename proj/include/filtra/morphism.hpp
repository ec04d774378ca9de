#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bundle.hpp"

namespace filtra {

// Morphism between two bundles, written out on one chart of each. Rules give
// the target coordinates as functions of the source coordinates; a base
// inverse (source base in terms of target base) is optional and only needed
// where the construction at hand requires the base map to be invertible.
struct FilteredMorphism {
    std::string name;
    FilteredBundleSpec source_bundle;
    FilteredBundleSpec target_bundle;
    std::string source_chart;
    std::string target_chart;
    ChartMap map;
    std::optional<std::vector<BaseFunction>> base_inverse;

    bool operator==(const FilteredMorphism& o) const {
        return name == o.name && source_bundle == o.source_bundle &&
               target_bundle == o.target_bundle && source_chart == o.source_chart &&
               target_chart == o.target_chart && map == o.map && base_inverse == o.base_inverse;
    }
};

inline ValidationReport validate_morphism(const FilteredMorphism& mor) {
    ValidationReport rep;
    const CoordinateFrame& src = *mor.map.source;
    const CoordinateFrame& dst = *mor.map.target;
    const std::string where = mor.name;
    for (std::size_t i = 0; i < dst.n_fibers(); ++i) {
        const auto& coord = dst.fibers()[i];
        const auto& rule = mor.map.fiber_rules[i];
        bool ok = true;
        std::string detail;
        for (const auto& [mono, coeff] : rule.terms()) {
            Weight w = rule.monomial_weight(mono);
            if (!w.leq(coord.weight)) {
                ok = false;
                detail = "term of weight " + w.to_string() + " exceeds " +
                         coord.weight.to_string();
                break;
            }
        }
        rep.add("degree-respect", where + " " + coord.name, ok, detail);
    }
    if (mor.base_inverse) {
        const auto& inv = *mor.base_inverse;
        bool shape = inv.size() == src.n_base();
        rep.add("base-inverse", where, shape, shape ? "" : "wrong number of rules");
        if (shape) {
            bool ok = true;
            for (std::size_t a = 0; a < dst.n_base(); ++a) {
                BaseFunction back = mor.map.base_rules[a].substitute(inv);
                if (back != BaseFunction::variable(dst.n_base(), a)) {
                    ok = false;
                    break;
                }
            }
            for (std::size_t b = 0; ok && b < src.n_base(); ++b) {
                BaseFunction back = inv[b].substitute(mor.map.base_rules);
                if (back != BaseFunction::variable(src.n_base(), b))
                    ok = false;
            }
            rep.add("base-inverse", where + " roundtrip", ok,
                    ok ? "" : "declared inverse does not invert the base map");
        }
    }
    return rep;
}

inline FilteredMorphism identity_morphism(const FilteredBundleSpec& bundle,
                                          const std::string& chart) {
    FilteredMorphism mor;
    mor.name = "id_" + bundle.name;
    mor.source_bundle = bundle;
    mor.target_bundle = bundle;
    mor.source_chart = chart;
    mor.target_chart = chart;
    mor.map = identity_chart_map(bundle.frame);
    std::vector<BaseFunction> inv;
    for (std::size_t a = 0; a < bundle.frame->n_base(); ++a)
        inv.push_back(BaseFunction::variable(bundle.frame->n_base(), a));
    mor.base_inverse = std::move(inv);
    return mor;
}

inline FilteredMorphism compose_morphisms(const FilteredMorphism& first,
                                          const FilteredMorphism& then) {
    if (!same_frame(first.map.target, then.map.source))
        throw FrameMismatch("morphism composition " + first.name + " ; " + then.name);
    if (first.target_chart != then.source_chart)
        throw FrameMismatch("morphism composition crosses charts " + first.target_chart +
                            " vs " + then.source_chart);
    FilteredMorphism out;
    out.name = then.name + "." + first.name;
    out.source_bundle = first.source_bundle;
    out.target_bundle = then.target_bundle;
    out.source_chart = first.source_chart;
    out.target_chart = then.target_chart;
    out.map = compose(first.map, then.map);
    if (first.base_inverse && then.base_inverse) {
        std::vector<BaseFunction> inv;
        for (const auto& rule : *first.base_inverse)
            inv.push_back(rule.substitute(*then.base_inverse));
        out.base_inverse = std::move(inv);
    }
    return out;
}

} // namespace filtra
