#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "transport.hpp"

namespace filtra {

namespace detail {

// Multi-indices over the horizontal base coordinates, one slot per
// coordinate. Generated per order in lexicographically descending order; a
// one-digit-per-slot suffix keeps generated names readable, which caps the
// order at 9.
using Multi = std::vector<int>;

inline std::vector<Multi> multis_of(std::size_t slots, int order) {
    std::vector<Multi> out;
    if (slots == 0)
        return out;
    Multi cur(slots, 0);
    auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
        if (pos + 1 == slots) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int v = left; v >= 0; --v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, order);
    return out; // built high-first, already lex descending
}

inline std::string jet_suffix(const Multi& beta) {
    std::string s = "__";
    for (int v : beta)
        s += static_cast<char>('0' + v);
    return s;
}

// Prolonged frame plus the bookkeeping needed to differentiate over it:
// which base coordinates are horizontal, and for every fibre the source
// coordinate and multi-index it represents (originals carry the zero index).
struct JetInfo {
    FramePtr frame;
    std::vector<std::size_t> horiz;
    struct Tag {
        std::string src;
        Multi beta;
    };
    std::vector<Tag> tags;
};

inline JetInfo jet_frame(const FramePtr& f, int k) {
    JetInfo info;
    info.horiz = f->horizontal_indices();
    const std::size_t h = info.horiz.size();
    std::vector<FiberCoord> fibers;
    for (const auto& fc : f->fibers()) {
        fibers.push_back({fc.name, fc.weight.appended(0)});
        info.tags.push_back({fc.name, Multi(h, 0)});
    }
    struct Src {
        std::string name;
        Weight w;
    };
    std::vector<Src> sources;
    for (std::size_t v : f->vertical_indices())
        sources.push_back({f->base()[v].name, Weight::zero(f->axes())});
    for (const auto& fc : f->fibers())
        sources.push_back({fc.name, fc.weight});
    for (int m = 1; m <= k; ++m)
        for (const auto& s : sources)
            for (const auto& beta : multis_of(h, m)) {
                fibers.push_back({s.name + jet_suffix(beta), s.w.appended(m)});
                info.tags.push_back({s.name, beta});
            }
    info.frame = make_frame(f->axes() + 1, f->base(), fibers, f->degree().appended(k));
    return info;
}

// Total derivative in the b-th horizontal direction, acting on expressions
// over the prolonged frame: differentiate the visible base dependence, and
// bump every jet coordinate that actually occurs to its successor.
inline WeightedPolynomial total_derivative(const WeightedPolynomial& p, const JetInfo& info,
                                           std::size_t b) {
    const FramePtr& P = info.frame;
    WeightedPolynomial acc = p.base_partial(info.horiz[b]);
    for (std::size_t v : P->vertical_indices()) {
        WeightedPolynomial dv = p.base_partial(v);
        if (dv.terms().empty())
            continue;
        Multi e(info.horiz.size(), 0);
        e[b] = 1;
        std::size_t j = P->fiber_index(P->base()[v].name + jet_suffix(e));
        acc = acc + dv * WeightedPolynomial::fiber_variable(P, j);
    }
    for (std::size_t j = 0; j < P->n_fibers(); ++j) {
        if (!p.depends_on_fiber(j))
            continue;
        Multi succ = info.tags[j].beta;
        succ[b] += 1;
        std::string name = info.tags[j].src + jet_suffix(succ);
        if (!P->has_fiber(name))
            throw InternalInvariantBroken("jet successor missing for " + name);
        acc = acc + p.fiber_partial(j) *
                        WeightedPolynomial::fiber_variable(P, P->fiber_index(name));
    }
    return acc;
}

// Chart map of the prolongation. Rules are built order by order: the rule
// for a multi-index is the transformed total derivative of the rule for the
// index with its first nonzero slot decremented. The transformed derivatives
// commute, so this particular descent is as good as any other and keeps the
// computation memoized.
inline ChartMap jet_chart_map(const ChartMap& m, const JetInfo& src, const JetInfo& dst) {
    const FramePtr& P = src.frame;
    const CoordinateFrame& dfr = *m.target;
    const std::size_t h_src = src.horiz.size();
    const std::size_t h_dst = dst.horiz.size();
    if (h_src != h_dst)
        throw NotOverDiffeomorphism("horizontal dimensions differ");

    Matrix<BaseFunction> jac;
    for (std::size_t r : dst.horiz) {
        std::vector<BaseFunction> row;
        for (std::size_t c : src.horiz)
            row.push_back(m.base_rules[r].derivative(c));
        jac.push_back(std::move(row));
    }
    Matrix<BaseFunction> jinv;
    try {
        jinv = inverse(jac);
    } catch (const SingularLinearPart&) {
        throw SingularJacobian("base map of " + std::to_string(h_src) +
                               " horizontal coordinates");
    }

    auto dprime = [&](const WeightedPolynomial& p, std::size_t a) {
        WeightedPolynomial acc = WeightedPolynomial::constant(P, 0);
        for (std::size_t b = 0; b < h_src; ++b)
            acc = acc + total_derivative(p, src, b) * jinv[b][a];
        return acc;
    };

    std::map<std::pair<std::string, Multi>, WeightedPolynomial> rules;
    for (std::size_t v : dfr.vertical_indices())
        rules.insert({{dfr.base()[v].name, Multi(h_dst, 0)},
                      WeightedPolynomial::from_base(P, m.base_rules[v])});
    for (std::size_t i = 0; i < dfr.n_fibers(); ++i)
        rules.insert({{dfr.fibers()[i].name, Multi(h_dst, 0)},
                      transport(m.fiber_rules[i], P)});

    std::vector<WeightedPolynomial> fibers;
    for (const auto& tag : dst.tags) {
        if (std::all_of(tag.beta.begin(), tag.beta.end(), [](int v) { return v == 0; })) {
            fibers.push_back(rules.at({tag.src, tag.beta}));
            continue;
        }
        std::size_t a = 0;
        while (tag.beta[a] == 0)
            ++a;
        Multi parent = tag.beta;
        parent[a] -= 1;
        WeightedPolynomial rule = dprime(rules.at({tag.src, parent}), a);
        rules.insert({{tag.src, tag.beta}, rule});
        fibers.push_back(std::move(rule));
    }
    return make_chart_map(P, dst.frame, m.base_rules, fibers);
}

} // namespace detail

// Jet prolongation: adjoin formal derivative coordinates up to order k for
// every non-horizontal coordinate, transforming by iterated transformed
// total derivatives. The result carries the original weights on one axis and
// the derivative order on a new one.
inline FilteredBundleSpec jet_prolong(const FilteredBundleSpec& in, int k) {
    if (k < 1 || k > 9)
        throw UnsupportedInput("jet order must be between 1 and 9");
    detail::JetInfo info = detail::jet_frame(in.frame, k);
    return map_bundle(in, in.name + "_j" + std::to_string(k), info.frame,
                      [&](const ChartMap& m) { return detail::jet_chart_map(m, info, info); });
}

inline FilteredMorphism jet_prolong_morphism(const FilteredMorphism& in, int k) {
    if (k < 1 || k > 9)
        throw UnsupportedInput("jet order must be between 1 and 9");
    if (!in.base_inverse)
        throw NotOverDiffeomorphism(in.name + " carries no base inverse");
    detail::JetInfo src = detail::jet_frame(in.map.source, k);
    detail::JetInfo dst = detail::jet_frame(in.map.target, k);
    FilteredMorphism out;
    out.name = in.name + "_j" + std::to_string(k);
    out.source_bundle = jet_prolong(in.source_bundle, k);
    out.target_bundle = jet_prolong(in.target_bundle, k);
    out.source_chart = in.source_chart;
    out.target_chart = in.target_chart;
    out.map = detail::jet_chart_map(in.map, src, dst);
    out.base_inverse = in.base_inverse;
    return out;
}

} // namespace filtra
