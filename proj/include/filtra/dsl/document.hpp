#pragma once

#include <string>
#include <vector>

#include "../filtration.hpp"
#include "../morphism.hpp"
#include "../tower.hpp"

namespace filtra::dsl {

// A filtration presentation with the surface names it was written in.
struct FiltrationDecl {
    std::string name;
    std::vector<std::string> vars;
    FiltrationPresentation presentation;

    bool operator==(const FiltrationDecl& o) const {
        return name == o.name && vars == o.vars &&
               presentation.n_vars == o.presentation.n_vars &&
               presentation.bound == o.presentation.bound &&
               presentation.levels == o.presentation.levels;
    }
};

enum class BlockKind { Bundle, Morphism, Tower, Filtration };

// Parsed document. Blocks keep their declaration order so serialization is a
// faithful inverse of parsing.
struct Document {
    std::vector<FilteredBundleSpec> bundles;
    std::vector<FilteredMorphism> morphisms;
    std::vector<AffineTowerSpec> towers;
    std::vector<FiltrationDecl> filtrations;
    std::vector<std::pair<BlockKind, std::size_t>> order;

    bool operator==(const Document& o) const {
        return bundles == o.bundles && morphisms == o.morphisms && towers == o.towers &&
               filtrations == o.filtrations && order == o.order;
    }

    const FilteredBundleSpec* find_bundle(const std::string& n) const {
        for (const auto& b : bundles)
            if (b.name == n)
                return &b;
        return nullptr;
    }

    const FilteredMorphism* find_morphism(const std::string& n) const {
        for (const auto& m : morphisms)
            if (m.name == n)
                return &m;
        return nullptr;
    }

    const AffineTowerSpec* find_tower(const std::string& n) const {
        for (const auto& t : towers)
            if (t.name == n)
                return &t;
        return nullptr;
    }

    const FiltrationDecl* find_filtration(const std::string& n) const {
        for (const auto& f : filtrations)
            if (f.name == n)
                return &f;
        return nullptr;
    }
};

} // namespace filtra::dsl
