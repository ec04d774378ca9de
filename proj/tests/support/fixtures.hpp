#pragma once

#include <filtra/bundle.hpp>
#include <filtra/morphism.hpp>

// Shared hand-checked fixtures. The two-chart bundle has fibre weights 1 and
// 2 over one base coordinate; every rule below was inverted and composed on
// paper, so the tests can treat the numbers as ground truth.
namespace fixtures {

using namespace filtra;

inline FramePtr two_filtered_frame() {
    return make_frame(1, {{"x", false}}, {{"Y", Weight({1})}, {"Z", Weight({2})}},
                      Weight({2}));
}

inline WeightedPolynomial wbase(const FramePtr& f, std::size_t a) {
    return WeightedPolynomial::base_variable(f, a);
}

inline WeightedPolynomial wfib(const FramePtr& f, std::size_t j) {
    return WeightedPolynomial::fiber_variable(f, j);
}

// U -> V: x' = x, Y' = 2Y + x, Z' = 3Z + Y^2 + xY.
inline ChartMap two_filtered_forward(const FramePtr& f) {
    std::vector<BaseFunction> base = {BaseFunction::variable(1, 0)};
    WeightedPolynomial y = wfib(f, 0) * Rational(2) + wbase(f, 0);
    WeightedPolynomial z = wfib(f, 1) * Rational(3) + wfib(f, 0) * wfib(f, 0) +
                           wbase(f, 0) * wfib(f, 0);
    return make_chart_map(f, f, base, {y, z});
}

// V -> U: x' = x, Y' = 1/2 Y - 1/2 x, Z' = 1/3 Z - 1/12 Y^2 + 1/12 x^2.
inline ChartMap two_filtered_backward(const FramePtr& f) {
    std::vector<BaseFunction> base = {BaseFunction::variable(1, 0)};
    WeightedPolynomial y = wfib(f, 0) * Rational(1, 2) - wbase(f, 0) * Rational(1, 2);
    WeightedPolynomial z = wfib(f, 1) * Rational(1, 3) -
                           wfib(f, 0) * wfib(f, 0) * Rational(1, 12) +
                           wbase(f, 0) * wbase(f, 0) * Rational(1, 12);
    return make_chart_map(f, f, base, {y, z});
}

inline FilteredBundleSpec two_filtered() {
    FramePtr f = two_filtered_frame();
    FilteredBundleSpec b;
    b.name = "two_filtered";
    b.frame = f;
    b.atlas.charts = {"U", "V"};
    b.atlas.transitions = {{"U", "V", two_filtered_forward(f)},
                           {"V", "U", two_filtered_backward(f)}};
    b.atlas.overlaps = {{"U", "V"}};
    return b;
}

// Extends the two-chart bundle by W with V -> W: Y' = Y + x^2, Z' = Z + xY,
// and U -> W equal to the composite, so the declared triple holds on the nose.
inline FilteredBundleSpec three_chart() {
    FilteredBundleSpec b = two_filtered();
    const FramePtr& f = b.frame;
    b.name = "three_chart";
    std::vector<BaseFunction> base = {BaseFunction::variable(1, 0)};
    WeightedPolynomial x2 = wbase(f, 0) * wbase(f, 0);
    ChartMap vw = make_chart_map(f, f, base,
                                 {wfib(f, 0) + x2, wfib(f, 1) + wbase(f, 0) * wfib(f, 0)});
    ChartMap uw = compose(b.atlas.require("U", "V").map, vw);
    b.atlas.charts.push_back("W");
    b.atlas.transitions.push_back({"V", "W", vw});
    b.atlas.transitions.push_back({"U", "W", uw});
    b.atlas.triples = {{"U", "V", "W"}};
    return b;
}

} // namespace fixtures
