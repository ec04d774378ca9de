#pragma once

#include <vector>

#include "lifts.hpp"

namespace filtra {

namespace detail {

// Frame of the linearisation: originals below the top weight keep their
// place, every original contributes a delta coordinate one weight lower.
inline FramePtr lin_frame(const FramePtr& f, int k) {
    std::vector<FiberCoord> fibers;
    for (const auto& fc : f->fibers())
        if (fc.weight[0] < k)
            fibers.push_back({fc.name, fc.weight.appended(0)});
    for (const auto& fc : f->fibers())
        fibers.push_back({"d" + fc.name, Weight({fc.weight[0] - 1}).appended(1)});
    return make_frame(2, f->base(), fibers, Weight({k - 1}).appended(1));
}

inline ChartMap lin_chart_map(const ChartMap& m, const FramePtr& src_lin,
                              const FramePtr& dst_lin) {
    std::vector<WeightedPolynomial> fibers;
    const CoordinateFrame& dst = *m.target;
    for (std::size_t i = 0; i < dst.n_fibers(); ++i)
        if (dst_lin->has_fiber(dst.fibers()[i].name))
            fibers.push_back(transport(m.fiber_rules[i], src_lin));
    for (const auto& rule : m.fiber_rules)
        fibers.push_back(total_differential(rule, src_lin, false));
    return make_chart_map(src_lin, dst_lin, m.base_rules, fibers);
}

} // namespace detail

// Linearisation: vertical lift, delta weights shifted down by one, original
// top-weight coordinates removed. A retained rule that still mentions a
// removed coordinate is impossible for a degree-respecting input, and the
// transport step enforces that rather than assuming it. Degree 1 leaves only
// the deltas: the model vector bundle.
inline FilteredBundleSpec linearise(const FilteredBundleSpec& in) {
    const FramePtr& f = in.frame;
    if (f->axes() != 1)
        throw UnsupportedInput("linearisation needs a single weight axis");
    const int k = f->degree()[0];
    if (k < 1)
        throw UnsupportedInput("linearisation needs degree at least 1");
    FramePtr lin = detail::lin_frame(f, k);
    return map_bundle(in, in.name + "_lin", lin, [&](const ChartMap& m) {
        return detail::lin_chart_map(m, lin, lin);
    });
}

inline FilteredMorphism linearise_morphism(const FilteredMorphism& in) {
    FilteredMorphism out;
    out.name = in.name + "_lin";
    out.source_bundle = linearise(in.source_bundle);
    out.target_bundle = linearise(in.target_bundle);
    out.source_chart = in.source_chart;
    out.target_chart = in.target_chart;
    out.map = detail::lin_chart_map(in.map, out.source_bundle.frame,
                                    out.target_bundle.frame);
    out.base_inverse = in.base_inverse;
    return out;
}

} // namespace filtra
