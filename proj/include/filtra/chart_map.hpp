#pragma once

#include <string>
#include <vector>

#include "weighted_poly.hpp"

namespace filtra {

// Rules expressing the target frame's coordinates in the source frame's:
// one rational function per target base coordinate (over the source base)
// and one fibre polynomial per target fibre.
struct ChartMap {
    FramePtr source;
    FramePtr target;
    std::vector<BaseFunction> base_rules;
    std::vector<WeightedPolynomial> fiber_rules;

    bool operator==(const ChartMap& o) const {
        return same_frame(source, o.source) && same_frame(target, o.target) &&
               base_rules == o.base_rules && fiber_rules == o.fiber_rules;
    }

    bool operator!=(const ChartMap& o) const { return !(*this == o); }
};

inline ChartMap make_chart_map(FramePtr source, FramePtr target,
                               std::vector<BaseFunction> base_rules,
                               std::vector<WeightedPolynomial> fiber_rules) {
    if (base_rules.size() != target->n_base())
        throw MissingRule("expected one rule per target base coordinate");
    if (fiber_rules.size() != target->n_fibers())
        throw MissingRule("expected one rule per target fiber coordinate");
    for (const auto& f : base_rules)
        if (f.nvars() != source->n_base())
            throw FrameMismatch("base rule over wrong frame");
    for (const auto& p : fiber_rules)
        require_same_frame(p.frame(), source, "fiber rule over wrong frame");
    return ChartMap{std::move(source), std::move(target), std::move(base_rules),
                    std::move(fiber_rules)};
}

inline ChartMap identity_chart_map(const FramePtr& frame) {
    std::vector<BaseFunction> base;
    for (std::size_t i = 0; i < frame->n_base(); ++i)
        base.push_back(BaseFunction::variable(frame->n_base(), i));
    std::vector<WeightedPolynomial> fib;
    for (std::size_t j = 0; j < frame->n_fibers(); ++j)
        fib.push_back(WeightedPolynomial::fiber_variable(frame, j));
    return ChartMap{frame, frame, std::move(base), std::move(fib)};
}

// Apply `first`, then `then`.
inline ChartMap compose(const ChartMap& first, const ChartMap& then) {
    require_same_frame(first.target, then.source, "chart maps do not chain");
    std::vector<BaseFunction> base;
    for (const auto& r : then.base_rules)
        base.push_back(r.substitute(first.base_rules));
    std::vector<WeightedPolynomial> fib;
    for (const auto& r : then.fiber_rules)
        fib.push_back(r.substitute(first.base_rules, first.fiber_rules, first.source));
    return ChartMap{first.source, then.target, std::move(base), std::move(fib)};
}

} // namespace filtra
