#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bundle.hpp"

namespace filtra {

// Inverse of an affine base map x'_a = sum_b c_ab x_b + d_a with constant
// coefficients. Returns nothing when a rule is not affine or the linear part
// is singular; generators and tower analysis use it opportunistically.
inline std::optional<std::vector<BaseFunction>>
try_invert_affine_base(std::size_t n, const std::vector<BaseFunction>& rules) {
    if (rules.size() != n)
        return std::nullopt;
    Matrix<BaseFunction> a(n, std::vector<BaseFunction>(n, BaseFunction::constant(n, 0)));
    std::vector<Rational> d(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (!rules[i].is_polynomial())
            return std::nullopt;
        const BasePolynomial& p = rules[i].num();
        if (p.total_degree() > 1)
            return std::nullopt;
        for (const auto& [mono, c] : p.terms()) {
            int deg = 0;
            for (int e : mono)
                deg += e;
            if (deg == 0) {
                d[i] = c;
                continue;
            }
            for (std::size_t b = 0; b < n; ++b)
                if (mono[b] == 1)
                    a[i][b] = BaseFunction::constant(n, c);
        }
    }
    Matrix<BaseFunction> ainv;
    try {
        ainv = inverse(a);
    } catch (const SingularLinearPart&) {
        return std::nullopt;
    }
    std::vector<BaseFunction> out;
    for (std::size_t b = 0; b < n; ++b) {
        BaseFunction acc = BaseFunction::constant(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            BaseFunction shifted =
                BaseFunction::variable(n, i) - BaseFunction::constant(n, d[i]);
            acc = acc + ainv[b][i] * shifted;
        }
        out.push_back(std::move(acc));
    }
    return out;
}

// Inverse of a degree-respecting transition, given an inverse of its base
// map. Weight groups are handled in ascending order: the rules for a group
// are linear in that group's fibres with a tail in strictly lower groups, so
// each block solve only needs results that are already available.
inline ChartMap invert_transition(const FramePtr& frame, const ChartMap& fwd,
                                  const std::vector<BaseFunction>& base_inverse) {
    const CoordinateFrame& fr = *frame;
    if (base_inverse.size() != fr.n_base())
        throw UnsupportedInput("base inverse has wrong arity");
    for (std::size_t a = 0; a < fr.n_base(); ++a) {
        BaseFunction back = fwd.base_rules[a].substitute(base_inverse);
        if (back != BaseFunction::variable(fr.n_base(), a))
            throw UnsupportedInput("base inverse does not invert the base map");
    }
    std::vector<WeightedPolynomial> inv_fiber(fr.n_fibers(), WeightedPolynomial::constant(frame, 0));
    for (const auto& [w, idx] : fibers_by_weight(fr)) {
        const std::size_t m = idx.size();
        Matrix<BaseFunction> block = linear_block(fwd, idx);
        Matrix<BaseFunction> binv = inverse(block);
        std::vector<WeightedPolynomial> tail_target;
        for (std::size_t i = 0; i < m; ++i) {
            WeightedPolynomial tail = fwd.fiber_rules[idx[i]];
            for (std::size_t j = 0; j < m; ++j)
                tail = tail - WeightedPolynomial::fiber_variable(frame, idx[j]) * block[i][j];
            tail_target.push_back(tail.substitute(base_inverse, inv_fiber, frame));
        }
        for (std::size_t j = 0; j < m; ++j) {
            WeightedPolynomial acc = WeightedPolynomial::constant(frame, 0);
            for (std::size_t i = 0; i < m; ++i) {
                WeightedPolynomial diff =
                    WeightedPolynomial::fiber_variable(frame, idx[i]) - tail_target[i];
                acc = acc + diff * binv[j][i].substitute(base_inverse);
            }
            inv_fiber[idx[j]] = std::move(acc);
        }
    }
    ChartMap inv = make_chart_map(frame, frame, base_inverse, inv_fiber);
    ChartMap id = identity_chart_map(frame);
    if (compose(fwd, inv) != id || compose(inv, fwd) != id)
        throw InternalInvariantBroken("transition inversion failed the roundtrip check");
    return inv;
}

} // namespace filtra
