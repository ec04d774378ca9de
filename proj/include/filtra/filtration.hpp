#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "base_poly.hpp"
#include "errors.hpp"

namespace filtra {

// Row space in reduced echelon form over the rationals, the linear-algebra
// core of the rank computation. Columns are monomial slots; reduce() returns
// the canonical residue, so it doubles as the representative chooser.
class RowSpace {
  public:
    std::vector<Rational> reduce(std::vector<Rational> v) const {
        for (const auto& row : rows_) {
            std::size_t p = pivot_of(row);
            if (!(v[p] == 0)) {
                Rational c = v[p];
                for (std::size_t j = p; j < v.size(); ++j)
                    v[j] -= c * row[j];
            }
        }
        return v;
    }

    // returns the inserted normalized residue, empty when dependent
    std::vector<Rational> insert(std::vector<Rational> v) {
        v = reduce(std::move(v));
        std::size_t p = 0;
        while (p < v.size() && v[p] == 0)
            ++p;
        if (p == v.size())
            return {};
        Rational lead = v[p];
        for (std::size_t j = p; j < v.size(); ++j)
            v[j] /= lead;
        for (auto& row : rows_)
            if (!(row[p] == 0)) {
                Rational c = row[p];
                for (std::size_t j = p; j < v.size(); ++j)
                    row[j] -= c * v[j];
            }
        std::size_t at = 0;
        while (at < rows_.size() && pivot_of(rows_[at]) < p)
            ++at;
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), v);
        return v;
    }

    bool contains(const std::vector<Rational>& v) const {
        for (const Rational& c : reduce(v))
            if (!(c == 0))
                return false;
        return true;
    }

    std::size_t dim() const { return rows_.size(); }
    const std::vector<std::vector<Rational>>& rows() const { return rows_; }

  private:
    static std::size_t pivot_of(const std::vector<Rational>& row) {
        std::size_t p = 0;
        while (p < row.size() && row[p] == 0)
            ++p;
        return p;
    }
    std::vector<std::vector<Rational>> rows_;
};

// A filtration of a polynomial algebra, presented level by level: each level
// lists polynomials spanning it as a vector space, all of total degree at
// most `bound`. Level 0 must span exactly the constants.
struct FiltrationPresentation {
    std::size_t n_vars = 0;
    int bound = 0;
    std::vector<std::vector<BasePolynomial>> levels;
};

struct GradedGenerator {
    BasePolynomial poly;
    int weight;
};

namespace detail {

// Monomial coordinates: every monomial of degree <= bound, in the order the
// polynomial layer uses, so pivoting picks the same representative a reader
// would when scanning a printed polynomial left to right.
class MonomialIndex {
  public:
    MonomialIndex(std::size_t n_vars, int bound) {
        std::vector<int> mono(n_vars, 0);
        fill(mono, 0, bound);
        std::map<std::vector<int>, int, BasePolynomial::GrlexDesc> sorted;
        int at = 0;
        for (auto& m : all_)
            sorted.emplace(std::move(m), 0);
        for (auto& [m, slot] : sorted)
            slot = at++;
        all_.clear();
        for (const auto& [m, slot] : sorted) {
            index_.emplace(m, static_cast<std::size_t>(slot));
            all_.push_back(m);
        }
    }

    std::size_t size() const { return all_.size(); }
    const std::vector<int>& monomial(std::size_t i) const { return all_[i]; }

    std::vector<Rational> coordinates(const BasePolynomial& p) const {
        std::vector<Rational> v(size(), Rational(0));
        for (const auto& [mono, c] : p.terms()) {
            auto it = index_.find(mono);
            if (it == index_.end())
                throw DegreeBoundExceeded(p.to_string(names()) + " exceeds the declared bound");
            v[it->second] = c;
        }
        return v;
    }

    BasePolynomial polynomial(const std::vector<Rational>& v) const {
        BasePolynomial p = BasePolynomial::constant(n_vars(), 0);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!(v[i] == 0))
                p.add_term(all_[i], v[i]);
        return p;
    }

    std::size_t n_vars() const { return all_.empty() ? 0 : all_[0].size(); }

  private:
    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < n_vars(); ++i)
            out.push_back("z" + std::to_string(i + 1));
        return out;
    }
    void fill(std::vector<int>& mono, std::size_t pos, int left) {
        if (pos == mono.size()) {
            all_.push_back(mono);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            mono[pos] = v;
            fill(mono, pos + 1, left - v);
        }
        mono[pos] = 0;
    }
    std::vector<std::vector<int>> all_;
    std::map<std::vector<int>, std::size_t> index_;
};

// Span of all products of the chosen generators with total weight at most
// `budget` (the empty product included), pruned at the degree bound.
inline RowSpace product_span(const std::vector<GradedGenerator>& gens, int budget,
                             const MonomialIndex& ix, int bound) {
    RowSpace s;
    s.insert(ix.coordinates(BasePolynomial::constant(ix.n_vars(), 1)));
    // depth-first over multisets: extend by generators at index >= the last used
    auto rec = [&](auto&& self, const BasePolynomial& prod, int weight,
                   std::size_t from) -> void {
        for (std::size_t g = from; g < gens.size(); ++g) {
            if (weight + gens[g].weight > budget)
                continue;
            BasePolynomial next = prod * gens[g].poly;
            if (next.total_degree() > bound)
                throw DegreeBoundExceeded("product of weight " +
                                          std::to_string(weight + gens[g].weight) +
                                          " has degree " +
                                          std::to_string(next.total_degree()));
            s.insert(ix.coordinates(next));
            self(self, next, weight + gens[g].weight, g);
        }
    };
    rec(rec, BasePolynomial::constant(ix.n_vars(), 1), 0, 0);
    return s;
}

} // namespace detail

struct FiltrationAnalysis {
    std::vector<int> ranks;
    std::vector<GradedGenerator> generators;
};

// Walk the levels, at each one splitting off the part not reachable from
// below: d_i is the dimension of level i modulo the span of weight-bounded
// products of the generators already chosen, and the new generators are the
// canonical residues of the level's listed polynomials.
inline FiltrationAnalysis analyse_filtration(const FiltrationPresentation& p) {
    if (p.levels.empty())
        throw NotConnected("no levels declared");
    detail::MonomialIndex ix(p.n_vars, p.bound);
    for (const auto& level : p.levels)
        for (const auto& g : level)
            if (g.total_degree() > p.bound)
                throw DegreeBoundExceeded("declared generator exceeds the bound");

    RowSpace level0;
    for (const auto& g : p.levels[0]) {
        if (!g.is_constant())
            throw NotConnected("level 0 contains a nonconstant polynomial");
        level0.insert(ix.coordinates(g));
    }
    if (level0.dim() != 1)
        throw NotConnected("level 0 does not span the constants");

    std::vector<RowSpace> spans(p.levels.size());
    for (std::size_t i = 0; i < p.levels.size(); ++i)
        for (const auto& g : p.levels[i])
            spans[i].insert(ix.coordinates(g));
    for (std::size_t i = 0; i + 1 < p.levels.size(); ++i)
        for (const auto& g : p.levels[i])
            if (!spans[i + 1].contains(ix.coordinates(g)))
                throw NotNested("level " + std::to_string(i) + " is not inside level " +
                                std::to_string(i + 1));

    FiltrationAnalysis out;
    for (std::size_t i = 1; i < p.levels.size(); ++i) {
        const int w = static_cast<int>(i);
        RowSpace s = detail::product_span(out.generators, w, ix, p.bound);
        std::size_t s_dim = s.dim();
        RowSpace merged = s;
        int fresh = 0;
        for (const auto& g : p.levels[i]) {
            std::vector<Rational> residue = merged.insert(ix.coordinates(g));
            if (!residue.empty()) {
                out.generators.push_back({ix.polynomial(residue), w});
                ++fresh;
            }
        }
        // dim V - dim(V cap S) = dim(V + S) - dim S, and merged grew to V + S
        if (merged.dim() - s_dim != static_cast<std::size_t>(fresh))
            throw InternalInvariantBroken("rank bookkeeping drifted");
        out.ranks.push_back(fresh);
    }

    // reconstruction: the chosen generators must rebuild every level's span
    for (std::size_t i = 1; i < p.levels.size(); ++i) {
        RowSpace rebuilt =
            detail::product_span(out.generators, static_cast<int>(i), ix, p.bound);
        if (rebuilt.dim() != spans[i].dim())
            throw NotMultiplicative("level " + std::to_string(i) +
                                    " span differs from the algebra generated below it");
        for (const auto& row : spans[i].rows())
            if (!rebuilt.contains(row))
                throw NotMultiplicative("level " + std::to_string(i) +
                                        " span differs from the algebra generated below it");
    }
    return out;
}

inline std::vector<int> compute_rank(const FiltrationPresentation& p) {
    return analyse_filtration(p).ranks;
}

inline std::vector<GradedGenerator>
extract_homogeneous_generators(const FiltrationPresentation& p) {
    return analyse_filtration(p).generators;
}

} // namespace filtra
