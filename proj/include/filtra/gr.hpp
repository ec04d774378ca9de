#pragma once

#include "transport.hpp"

namespace filtra {

// Associated graded bundle: each rule keeps only its weight-homogeneous part
// of exactly the target coordinate's weight. Degree respect makes this the
// top part, so inverses and cocycles survive; they are re-checked anyway.
inline FilteredBundleSpec gr_bundle(const FilteredBundleSpec& in) {
    const FramePtr& f = in.frame;
    auto lift = [&](const ChartMap& m) {
        std::vector<WeightedPolynomial> fibers;
        for (std::size_t i = 0; i < f->n_fibers(); ++i)
            fibers.push_back(m.fiber_rules[i].homogeneous_component(f->fibers()[i].weight));
        return make_chart_map(f, f, m.base_rules, fibers);
    };
    return map_bundle(in, in.name + "_gr", f, lift);
}

inline FilteredMorphism gr_morphism(const FilteredMorphism& in) {
    FilteredMorphism out;
    out.name = in.name + "_gr";
    out.source_bundle = gr_bundle(in.source_bundle);
    out.target_bundle = gr_bundle(in.target_bundle);
    out.source_chart = in.source_chart;
    out.target_chart = in.target_chart;
    const FramePtr& dst = in.map.target;
    std::vector<WeightedPolynomial> fibers;
    for (std::size_t i = 0; i < dst->n_fibers(); ++i)
        fibers.push_back(in.map.fiber_rules[i].homogeneous_component(dst->fibers()[i].weight));
    out.map = make_chart_map(in.map.source, dst, in.map.base_rules, fibers);
    out.base_inverse = in.base_inverse;
    return out;
}

} // namespace filtra
