#pragma once

#include <vector>

#include "transport.hpp"

namespace filtra {

// Collapse a multi-weight bundle to a single axis by summing the components
// of every weight. Rules are carried over verbatim; componentwise degree
// respect implies respect of the totals, and cross-weight linear entries
// between coordinates of equal total vanish for the same reason, so the
// collapsed blocks stay invertible.
inline FilteredBundleSpec total_weight(const FilteredBundleSpec& in) {
    const FramePtr& f = in.frame;
    std::vector<FiberCoord> fibers;
    for (const auto& fc : f->fibers())
        fibers.push_back({fc.name, fc.weight.collapsed()});
    FramePtr flat = make_frame(1, f->base(), fibers, f->degree().collapsed());
    return map_bundle(in, in.name + "_totw", flat, [&](const ChartMap& m) {
        std::vector<WeightedPolynomial> rules;
        for (const auto& rule : m.fiber_rules)
            rules.push_back(transport(rule, flat));
        return make_chart_map(flat, flat, m.base_rules, rules);
    });
}

} // namespace filtra
