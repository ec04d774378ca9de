#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bundle.hpp"

namespace filtra {

// Affine tower: chart data shaped like a filtered bundle whose fibre weights
// are the level numbers, but with no degree discipline imposed. Each level's
// rules must merely be affine in that level's coordinates with coefficients
// from strictly below; whether the tower is filterable in these charts is a
// separate diagnostic.
struct AffineTowerSpec {
    std::string name;
    FramePtr frame; // fiber weight = level, single axis
    Atlas atlas;

    bool operator==(const AffineTowerSpec& o) const {
        return name == o.name && same_frame(frame, o.frame) && atlas == o.atlas;
    }
};

namespace detail {

// Split the rules of one level into X' = X L + c. The split fails exactly
// when a rule is non-affine in its own level or reaches a higher one; the
// coefficients land strictly below by construction.
struct LevelSplit {
    bool ok = true;
    std::string offender;  // coordinate whose rule breaks the shape
    std::string culprit;   // what it does wrong
    Matrix<WeightedPolynomial> L;
    std::vector<WeightedPolynomial> c;
};

inline LevelSplit split_level(const ChartMap& m, const std::vector<std::size_t>& idx) {
    const FramePtr& f = m.source;
    const int level = f->fibers()[idx[0]].weight[0];
    LevelSplit out;
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const WeightedPolynomial& rule = m.fiber_rules[idx[r]];
        std::vector<WeightedPolynomial> lrow(idx.size(), WeightedPolynomial::constant(f, 0));
        WeightedPolynomial cpart = WeightedPolynomial::constant(f, 0);
        for (const auto& [mono, coeff] : rule.terms()) {
            int own = 0;
            std::size_t own_at = 0;
            for (std::size_t j = 0; j < idx.size(); ++j)
                if (mono[idx[j]] > 0) {
                    own += mono[idx[j]];
                    own_at = j;
                }
            for (std::size_t j = 0; j < f->n_fibers(); ++j)
                if (mono[j] > 0 && f->fibers()[j].weight[0] > level) {
                    out.ok = false;
                    out.offender = f->fibers()[idx[r]].name;
                    out.culprit = "references level " +
                                  std::to_string(f->fibers()[j].weight[0]) + " coordinate " +
                                  f->fibers()[j].name;
                    return out;
                }
            if (own > 1) {
                out.ok = false;
                out.offender = f->fibers()[idx[r]].name;
                out.culprit = "not affine in its own level";
                return out;
            }
            if (own == 1) {
                WeightedPolynomial::Monomial reduced = mono;
                reduced[idx[own_at]] -= 1;
                lrow[own_at].add_term(reduced, coeff);
            } else {
                cpart.add_term(mono, coeff);
            }
        }
        out.L.push_back(std::move(lrow));
        out.c.push_back(std::move(cpart));
    }
    return out;
}

} // namespace detail

// Level-by-level affinity, invertibility of the level blocks over the ring
// extended by the lower coordinates, plus the usual inverse and cocycle
// checks on the declared atlas.
inline ValidationReport validate_tower(const AffineTowerSpec& t) {
    ValidationReport rep;
    FilteredBundleSpec shaped{t.name, t.frame, t.atlas};
    const Atlas& atlas = t.atlas;
    for (const auto& tr : atlas.transitions)
        if (!atlas.has_chart(tr.source_chart) || !atlas.has_chart(tr.target_chart) ||
            !same_frame(tr.map.source, t.frame) || !same_frame(tr.map.target, t.frame))
            rep.add("atlas-shape", t.name, false,
                    "transition " + tr.source_chart + " -> " + tr.target_chart +
                        " is malformed");
    if (!rep.pass())
        return rep;
    for (const auto& tr : atlas.transitions) {
        const std::string where = t.name + " " + tr.source_chart + " -> " + tr.target_chart;
        for (const auto& [w, idx] : fibers_by_weight(*t.frame)) {
            detail::LevelSplit split = detail::split_level(tr.map, idx);
            rep.add("level-affine", where + " level " + std::to_string(w[0]) +
                                        (split.ok ? "" : " " + split.offender),
                    split.ok, split.culprit);
            if (!split.ok)
                continue;
            WeightedPolynomial d = det_poly(split.L);
            rep.add("level-block", where + " level " + std::to_string(w[0]), !d.is_zero(),
                    d.is_zero() ? "level block determinant vanishes" : "");
        }
    }
    rep.merge(check_inverse_pairs(shaped));
    rep.merge(check_cocycle(shaped));
    return rep;
}

// Stratify a validated single-axis bundle into its tower: weights become
// levels and nothing else moves. Degree respect already forces each level's
// rules into the affine shape.
inline AffineTowerSpec tower_of(const FilteredBundleSpec& f) {
    if (f.frame->axes() != 1)
        throw UnsupportedInput("towers stratify single-axis bundles");
    AffineTowerSpec t;
    t.name = f.name + "_tower";
    t.frame = f.frame;
    t.atlas = f.atlas;
    return t;
}

struct FilterabilityReport {
    ValidationReport report;
    std::optional<FilteredBundleSpec> induced;
    bool pass() const { return report.pass(); }
};

/// The pull-back criterion on the presented charts: above level 1 the level
// blocks must be functions of the base alone, and the affine parts must obey
// the weighted degree of their level. A pass makes the tower data a filtered
// bundle verbatim; it is emitted and re-validated in full.
inline FilterabilityReport check_filterable_atlas(const AffineTowerSpec& t) {
    FilterabilityReport out;
    out.report = validate_tower(t);
    if (!out.report.pass())
        return out;
    const CoordinateFrame& fr = *t.frame;
    for (const auto& tr : t.atlas.transitions) {
        const std::string where = t.name + " " + tr.source_chart + " -> " + tr.target_chart;
        for (const auto& [w, idx] : fibers_by_weight(fr)) {
            const int level = w[0];
            detail::LevelSplit split = detail::split_level(tr.map, idx);
            if (level < 2)
                continue;
            for (std::size_t r = 0; r < idx.size(); ++r) {
                for (std::size_t c = 0; c < idx.size(); ++c) {
                    const WeightedPolynomial& entry = split.L[r][c];
                    std::string dep;
                    for (std::size_t j = 0; j < fr.n_fibers(); ++j)
                        if (entry.depends_on_fiber(j)) {
                            dep = fr.fibers()[j].name;
                            break;
                        }
                    out.report.add("pullback",
                                   where + " L_" + std::to_string(level) + "[" +
                                       fr.fibers()[idx[r]].name + "][" +
                                       fr.fibers()[idx[c]].name + "]",
                                   dep.empty(), dep.empty() ? "" : "depends on " + dep);
                }
                auto deg = split.c[r].degree();
                bool ok = !deg || (*deg)[0] <= level;
                out.report.add("degree",
                               where + " c_" + std::to_string(level) + "[" +
                                   fr.fibers()[idx[r]].name + "]",
                               ok,
                               ok ? ""
                                  : "weighted degree " + std::to_string((*deg)[0]) +
                                        " exceeds " + std::to_string(level));
            }
        }
    }
    if (!out.report.pass())
        return out;
    FilteredBundleSpec induced;
    induced.name = t.name + "_filtered";
    induced.frame = t.frame;
    induced.atlas = t.atlas;
    out.report.merge(validate_bundle(induced));
    if (out.report.pass())
        out.induced = std::move(induced);
    return out;
}

} // namespace filtra
