#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bundle.hpp"
#include "morphism.hpp"

namespace filtra {

// Re-express a polynomial over another frame, matching coordinates by name.
// Fibres absent from the target are fine as long as the polynomial does not
// actually use them; a used one raises DanglingReference. This is the
// workhorse for every frame-extending or frame-shrinking construction.
inline WeightedPolynomial transport(const WeightedPolynomial& p, const FramePtr& to) {
    const CoordinateFrame& from = *p.frame();
    std::vector<BaseFunction> base_images;
    for (std::size_t a = 0; a < from.n_base(); ++a)
        base_images.push_back(BaseFunction::variable(to->n_base(), to->base_index(from.base()[a].name)));
    std::vector<WeightedPolynomial> fiber_images;
    for (std::size_t j = 0; j < from.n_fibers(); ++j) {
        const std::string& name = from.fibers()[j].name;
        if (to->has_fiber(name)) {
            fiber_images.push_back(WeightedPolynomial::fiber_variable(to, to->fiber_index(name)));
        } else {
            if (p.depends_on_fiber(j))
                throw DanglingReference(name);
            fiber_images.push_back(WeightedPolynomial::constant(to, 0));
        }
    }
    return p.substitute(base_images, fiber_images, to);
}

// Rebuild a bundle by transforming every transition with the same chart-map
// functor; the atlas shape (charts, overlaps, triples) is untouched. The
// result is re-validated: the constructions calling this are theorems, so a
// failure is a defect, not an input error.
inline FilteredBundleSpec
map_bundle(const FilteredBundleSpec& in, std::string name, FramePtr frame,
           const std::function<ChartMap(const ChartMap&)>& lift) {
    FilteredBundleSpec out;
    out.name = std::move(name);
    out.frame = std::move(frame);
    out.atlas.charts = in.atlas.charts;
    out.atlas.overlaps = in.atlas.overlaps;
    out.atlas.triples = in.atlas.triples;
    for (const auto& t : in.atlas.transitions)
        out.atlas.transitions.push_back({t.source_chart, t.target_chart, lift(t.map)});
    ValidationReport rep = validate_bundle(out);
    if (!rep.pass())
        throw InternalInvariantBroken("derived bundle " + out.name + " failed validation: " +
                                      rep.summary());
    return out;
}

} // namespace filtra
