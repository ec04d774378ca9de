#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chart_map.hpp"
#include "linalg.hpp"
#include "report.hpp"

namespace filtra {

// Transition between two named charts of one bundle; both charts share the
// bundle frame, so the map's source and target frames coincide.
struct TransitionMap {
    std::string source_chart;
    std::string target_chart;
    ChartMap map;

    bool operator==(const TransitionMap& o) const {
        return source_chart == o.source_chart && target_chart == o.target_chart && map == o.map;
    }
};

// Charts with declared overlaps (pairs that must carry mutually inverse
// transitions) and declared cocycle triples. There is no point-set topology;
// the declarations are the model of the cover.
struct Atlas {
    std::vector<std::string> charts;
    std::vector<TransitionMap> transitions;
    std::vector<std::pair<std::string, std::string>> overlaps;
    std::vector<std::array<std::string, 3>> triples;

    bool has_chart(const std::string& c) const {
        for (const auto& name : charts)
            if (name == c)
                return true;
        return false;
    }

    const TransitionMap* find(const std::string& src, const std::string& dst) const {
        for (const auto& t : transitions)
            if (t.source_chart == src && t.target_chart == dst)
                return &t;
        return nullptr;
    }

    const TransitionMap& require(const std::string& src, const std::string& dst) const {
        const TransitionMap* t = find(src, dst);
        if (!t)
            throw MissingTransition(src + " -> " + dst);
        return *t;
    }

    bool operator==(const Atlas& o) const {
        return charts == o.charts && transitions == o.transitions && overlaps == o.overlaps &&
               triples == o.triples;
    }
};

struct FilteredBundleSpec {
    std::string name;
    FramePtr frame;
    Atlas atlas;

    bool operator==(const FilteredBundleSpec& o) const {
        return name == o.name && same_frame(frame, o.frame) && atlas == o.atlas;
    }
};

inline std::map<Weight, std::vector<std::size_t>> fibers_by_weight(const CoordinateFrame& fr) {
    std::map<Weight, std::vector<std::size_t>> groups;
    for (std::size_t j = 0; j < fr.n_fibers(); ++j)
        groups[fr.fibers()[j].weight].push_back(j);
    return groups;
}

// Matrix of coefficients of the bare degree-one fibre monomials: rows run
// over the target coordinates in `idx`, columns over the same source fibre
// indices. For a weight group this is the weight-block linear part.
inline Matrix<BaseFunction> linear_block(const ChartMap& map, const std::vector<std::size_t>& idx) {
    Matrix<BaseFunction> m;
    for (std::size_t i : idx) {
        std::vector<BaseFunction> row;
        for (std::size_t j : idx)
            row.push_back(map.fiber_rules[i].linear_coefficient(j));
        m.push_back(std::move(row));
    }
    return m;
}

// Degree respect and invertibility of the weight-block linear parts, with
// one finding per coordinate and per block.
inline ValidationReport validate_transition(const FilteredBundleSpec& bundle,
                                            const TransitionMap& tm) {
    ValidationReport rep;
    const CoordinateFrame& fr = *bundle.frame;
    const std::string where = bundle.name + " " + tm.source_chart + " -> " + tm.target_chart;
    for (std::size_t i = 0; i < fr.n_fibers(); ++i) {
        const auto& coord = fr.fibers()[i];
        const auto& rule = tm.map.fiber_rules[i];
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
    if (fr.has_vertical_base()) {
        for (std::size_t a : fr.horizontal_indices()) {
            const auto& rule = tm.map.base_rules[a];
            bool ok = true;
            for (std::size_t v : fr.vertical_indices()) {
                if (rule.num().depends_on(v) || rule.den().depends_on(v)) {
                    ok = false;
                    break;
                }
            }
            rep.add("base-rule", where + " " + fr.base()[a].name, ok,
                    ok ? "" : "horizontal rule depends on a vertical base coordinate");
        }
    }
    for (const auto& [w, idx] : fibers_by_weight(fr)) {
        Matrix<BaseFunction> block = linear_block(tm.map, idx);
        BaseFunction d = det(block);
        rep.add("linear-block", where + " weight " + w.to_string(), !d.is_zero(),
                "det = " + d.to_string(fr.base_names()));
    }
    return rep;
}

inline ValidationReport check_inverse_pairs(const FilteredBundleSpec& bundle) {
    ValidationReport rep;
    ChartMap id = identity_chart_map(bundle.frame);
    for (const auto& [u, v] : bundle.atlas.overlaps) {
        const TransitionMap& uv = bundle.atlas.require(u, v);
        const TransitionMap& vu = bundle.atlas.require(v, u);
        bool fwd = compose(uv.map, vu.map) == id;
        bool bwd = compose(vu.map, uv.map) == id;
        rep.add("inverse-pair", bundle.name + " " + u + " <-> " + v, fwd && bwd,
                fwd && bwd ? "" : "transitions are not mutually inverse");
    }
    return rep;
}

inline ValidationReport check_cocycle(const FilteredBundleSpec& bundle) {
    ValidationReport rep;
    for (const auto& [u, v, w] : bundle.atlas.triples) {
        const TransitionMap& uv = bundle.atlas.require(u, v);
        const TransitionMap& vw = bundle.atlas.require(v, w);
        const TransitionMap& uw = bundle.atlas.require(u, w);
        bool ok = compose(uv.map, vw.map) == uw.map;
        rep.add("cocycle", bundle.name + " " + u + " -> " + v + " -> " + w, ok,
                ok ? "" : "composite disagrees with the direct transition");
    }
    return rep;
}

// Aggregate validation: atlas shape, every transition, declared inverse
// pairs and cocycle triples. Structural gaps (undeclared charts, missing
// directions) become failing findings instead of exceptions so a document
// check can report everything at once.
inline ValidationReport validate_bundle(const FilteredBundleSpec& bundle) {
    ValidationReport rep;
    const Atlas& atlas = bundle.atlas;
    for (const auto& t : atlas.transitions) {
        bool ok = atlas.has_chart(t.source_chart) && atlas.has_chart(t.target_chart);
        if (!ok)
            rep.add("atlas-shape", bundle.name, false,
                    "transition references undeclared chart " + t.source_chart + " -> " +
                        t.target_chart);
        if (!same_frame(t.map.source, bundle.frame) || !same_frame(t.map.target, bundle.frame))
            rep.add("atlas-shape", bundle.name, false, "transition over a foreign frame");
    }
    for (const auto& [u, v] : atlas.overlaps) {
        for (const auto& c : {u, v})
            if (!atlas.has_chart(c))
                rep.add("atlas-shape", bundle.name, false, "overlap references undeclared chart " + c);
        if (!atlas.find(u, v) || !atlas.find(v, u))
            rep.add("atlas-shape", bundle.name, false,
                    "declared overlap " + u + " <-> " + v + " lacks a transition direction");
    }
    for (const auto& [u, v, w] : atlas.triples) {
        for (const auto& c : {u, v, w})
            if (!atlas.has_chart(c))
                rep.add("atlas-shape", bundle.name, false, "triple references undeclared chart " + c);
        if (!atlas.find(u, v) || !atlas.find(v, w) || !atlas.find(u, w))
            rep.add("atlas-shape", bundle.name, false,
                    "declared triple " + u + " " + v + " " + w + " lacks a transition");
    }
    if (!rep.pass())
        return rep;
    for (const auto& t : atlas.transitions)
        rep.merge(validate_transition(bundle, t));
    rep.merge(check_inverse_pairs(bundle));
    rep.merge(check_cocycle(bundle));
    return rep;
}

} // namespace filtra
