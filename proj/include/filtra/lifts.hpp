#pragma once

#include <algorithm>
#include <vector>

#include "transport.hpp"

namespace filtra {

namespace detail {

// Fibres of a lifted frame: the originals on an appended zero axis, then the
// generated delta coordinates. with_base controls whether the base gets
// deltas too (tangent yes, vertical no).
inline FramePtr delta_frame(const FramePtr& f, bool with_base) {
    std::vector<FiberCoord> fibers;
    for (const auto& fc : f->fibers())
        fibers.push_back({fc.name, fc.weight.appended(0)});
    if (with_base)
        for (const auto& bc : f->base())
            fibers.push_back({"d" + bc.name, Weight::zero(f->axes()).appended(1)});
    for (const auto& fc : f->fibers())
        fibers.push_back({"d" + fc.name, fc.weight.appended(1)});
    return make_frame(f->axes() + 1, f->base(), fibers, f->degree().appended(1));
}

// Total differential of a rule, written over the lifted frame. The delta of
// source coordinate c is looked up by name, so the same code serves the
// tangent lift (all coordinates) and the vertical lift (fibres only).
inline WeightedPolynomial total_differential(const WeightedPolynomial& rule,
                                             const FramePtr& lifted, bool with_base) {
    const CoordinateFrame& f = *rule.frame();
    WeightedPolynomial acc = WeightedPolynomial::constant(lifted, 0);
    if (with_base)
        for (std::size_t a = 0; a < f.n_base(); ++a) {
            std::size_t d = lifted->fiber_index("d" + f.base()[a].name);
            acc = acc + transport(rule.base_partial(a), lifted) *
                            WeightedPolynomial::fiber_variable(lifted, d);
        }
    for (std::size_t j = 0; j < f.n_fibers(); ++j) {
        std::size_t d = lifted->fiber_index("d" + f.fibers()[j].name);
        acc = acc + transport(rule.fiber_partial(j), lifted) *
                        WeightedPolynomial::fiber_variable(lifted, d);
    }
    return acc;
}

inline ChartMap delta_chart_map(const ChartMap& m, const FramePtr& src_lifted,
                                const FramePtr& dst_lifted, bool with_base) {
    std::vector<WeightedPolynomial> fibers;
    for (const auto& rule : m.fiber_rules)
        fibers.push_back(transport(rule, src_lifted));
    if (with_base) {
        const CoordinateFrame& src = *m.source;
        for (std::size_t a = 0; a < m.base_rules.size(); ++a) {
            WeightedPolynomial acc = WeightedPolynomial::constant(src_lifted, 0);
            for (std::size_t b = 0; b < src.n_base(); ++b) {
                std::size_t d = src_lifted->fiber_index("d" + src.base()[b].name);
                acc = acc + WeightedPolynomial::from_base(src_lifted,
                                                          m.base_rules[a].derivative(b)) *
                                WeightedPolynomial::fiber_variable(src_lifted, d);
            }
            fibers.push_back(acc);
        }
    }
    for (const auto& rule : m.fiber_rules)
        fibers.push_back(total_differential(rule, src_lifted, with_base));
    return make_chart_map(src_lifted, dst_lifted, m.base_rules, fibers);
}

} // namespace detail

// Tangent lift: adjoin formal differentials of every coordinate; they
// transform by the total differential of the rules.
inline FilteredBundleSpec tangent_lift(const FilteredBundleSpec& in) {
    FramePtr lifted = detail::delta_frame(in.frame, true);
    return map_bundle(in, in.name + "_t", lifted, [&](const ChartMap& m) {
        return detail::delta_chart_map(m, lifted, lifted, true);
    });
}

// Vertical lift: the tangent lift with the base differentials set to zero,
// so only the fibres acquire deltas.
inline FilteredBundleSpec vertical_lift(const FilteredBundleSpec& in) {
    FramePtr lifted = detail::delta_frame(in.frame, false);
    return map_bundle(in, in.name + "_v", lifted, [&](const ChartMap& m) {
        return detail::delta_chart_map(m, lifted, lifted, false);
    });
}

inline FilteredMorphism vertical_lift_morphism(const FilteredMorphism& in) {
    FilteredMorphism out;
    out.name = in.name + "_v";
    out.source_bundle = vertical_lift(in.source_bundle);
    out.target_bundle = vertical_lift(in.target_bundle);
    out.source_chart = in.source_chart;
    out.target_chart = in.target_chart;
    out.map = detail::delta_chart_map(in.map, out.source_bundle.frame,
                                      out.target_bundle.frame, false);
    out.base_inverse = in.base_inverse;
    return out;
}

namespace detail {

inline FramePtr dual_frame(const FramePtr& f, int k) {
    std::vector<FiberCoord> fibers;
    for (const auto& fc : f->fibers())
        fibers.push_back({fc.name, fc.weight.appended(0)});
    for (const auto& fc : f->fibers())
        fibers.push_back({"p" + fc.name, Weight({k - fc.weight[0] + 1}).appended(1)});
    return make_frame(2, f->base(), fibers, Weight({k}).appended(1));
}

} // namespace detail

// Dual vertical lift: adjoin covariables, one per fibre, transforming so the
// sum of products delta-coordinate times covariable is invariant. Writing A
// for the fibre Jacobian of the rules, the covariables obey transpose(A)
// times the new covariables equals the old ones; A is block triangular over
// the weights, so back-substitution from the top weight down only ever
// inverts the diagonal blocks, whose entries live in the coefficient field.
inline FilteredBundleSpec dual_vertical_lift(const FilteredBundleSpec& in) {
    const FramePtr& f = in.frame;
    if (f->axes() != 1)
        throw UnsupportedInput("dual vertical lift needs a single weight axis");
    const int k = f->degree()[0];
    FramePtr lifted = detail::dual_frame(f, k);

    auto lift = [&](const ChartMap& m) {
        std::vector<WeightedPolynomial> fibers;
        for (const auto& rule : m.fiber_rules)
            fibers.push_back(transport(rule, lifted));

        const auto groups = fibers_by_weight(*f);
        std::vector<WeightedPolynomial> psi(f->n_fibers(),
                                            WeightedPolynomial::constant(lifted, 0));
        for (auto git = groups.rbegin(); git != groups.rend(); ++git) {
            const std::vector<std::size_t>& idx = git->second;
            const std::size_t n = idx.size();
            std::vector<WeightedPolynomial> rhs;
            for (std::size_t jj = 0; jj < n; ++jj) {
                std::size_t J = idx[jj];
                WeightedPolynomial r = WeightedPolynomial::fiber_variable(
                    lifted, lifted->fiber_index("p" + f->fibers()[J].name));
                for (std::size_t I = 0; I < f->n_fibers(); ++I) {
                    if (!(git->first < f->fibers()[I].weight))
                        continue;
                    WeightedPolynomial a = m.fiber_rules[I].fiber_partial(J);
                    if (a.terms().empty())
                        continue;
                    r = r - transport(a, lifted) * psi[I];
                }
                rhs.push_back(std::move(r));
            }
            Matrix<BaseFunction> block = linear_block(m, idx);
            Matrix<BaseFunction> binv = inverse(block);
            // transpose-inverse solve: psi'_{idx[i]} = sum_j binv[j][i] rhs_j
            for (std::size_t i = 0; i < n; ++i) {
                WeightedPolynomial acc = WeightedPolynomial::constant(lifted, 0);
                for (std::size_t j = 0; j < n; ++j)
                    acc = acc + rhs[j] * binv[j][i];
                psi[idx[i]] = std::move(acc);
            }
        }
        for (auto& p : psi)
            fibers.push_back(std::move(p));
        return make_chart_map(lifted, lifted, m.base_rules, fibers);
    };
    return map_bundle(in, in.name + "_dv", lifted, lift);
}

} // namespace filtra
