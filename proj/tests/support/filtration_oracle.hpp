#pragma once

#include <filtra/filtration.hpp>

#include <map>
#include <vector>

// Brute-force rank oracle: same quotient-dimension formula, written against
// plain term maps with forward elimination only. No row space, no echelon
// normalization, no canonical residues: generators are kept as listed, which
// also exercises the representative-independence claim.
namespace filtoracle {

using filtra::BasePolynomial;
using filtra::Rational;

using Vec = std::map<std::vector<int>, Rational>;

inline Vec to_vec(const BasePolynomial& p) {
    Vec v;
    for (const auto& [m, c] : p.terms())
        v[m] = c;
    return v;
}

// dimension of the span by destructive forward elimination
inline std::size_t dim(std::vector<Vec> rows) {
    std::size_t rank = 0;
    while (true) {
        std::size_t at = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (!rows[i].empty()) {
                at = i;
                break;
            }
        if (at == rows.size())
            return rank;
        Vec lead = rows[at];
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(at));
        ++rank;
        const auto& [pm, pc] = *lead.begin();
        for (auto& r : rows) {
            auto it = r.find(pm);
            if (it == r.end())
                continue;
            Rational f = it->second / pc;
            for (const auto& [m, c] : lead) {
                Rational& slot = r[m];
                slot -= f * c;
                if (slot == 0)
                    r.erase(m);
            }
        }
    }
}

inline std::size_t dim_union(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    std::vector<Vec> all = a;
    all.insert(all.end(), b.begin(), b.end());
    return dim(all);
}

// all products of (poly, weight) pairs with total weight <= budget
inline void products_rec(const std::vector<std::pair<BasePolynomial, int>>& gens,
                         std::size_t from, const BasePolynomial& prod, int weight,
                         int budget, std::vector<Vec>& out) {
    for (std::size_t g = from; g < gens.size(); ++g) {
        if (weight + gens[g].second > budget)
            continue;
        BasePolynomial next = prod * gens[g].first;
        out.push_back(to_vec(next));
        products_rec(gens, g, next, weight + gens[g].second, budget, out);
    }
}

inline std::vector<Vec> product_vectors(const std::vector<std::pair<BasePolynomial, int>>& gens,
                                        std::size_t n_vars, int budget) {
    std::vector<Vec> out;
    out.push_back(to_vec(BasePolynomial::constant(n_vars, 1)));
    products_rec(gens, 0, BasePolynomial::constant(n_vars, 1), 0, budget, out);
    return out;
}

inline std::vector<int> ranks(const filtra::FiltrationPresentation& p) {
    std::vector<std::pair<BasePolynomial, int>> gens;
    std::vector<int> out;
    for (std::size_t i = 1; i < p.levels.size(); ++i) {
        const int w = static_cast<int>(i);
        std::vector<Vec> v;
        for (const auto& g : p.levels[i])
            v.push_back(to_vec(g));
        std::vector<Vec> s = product_vectors(gens, p.n_vars, w);
        // dim(V cap S) = dim V + dim S - dim(V + S)
        std::size_t dv = dim(v), ds = dim(s), du = dim_union(v, s);
        out.push_back(static_cast<int>(dv - (dv + ds - du)));
        // extend the generator list by listed polynomials that enlarge the span
        std::vector<Vec> grown = s;
        std::size_t have = ds;
        for (const auto& g : p.levels[i]) {
            grown.push_back(to_vec(g));
            std::size_t d2 = dim(grown);
            if (d2 > have) {
                have = d2;
                gens.push_back({g, w});
            } else {
                grown.pop_back();
            }
        }
    }
    return out;
}

} // namespace filtoracle
