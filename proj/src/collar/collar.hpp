#ifndef APTK_COLLAR_COLLAR_HPP
#define APTK_COLLAR_COLLAR_HPP

#include "substitution/rule.hpp"

namespace aptk {

// A prototile together with the full patch of tiles meeting its closure
// (vertex neighbors included), anchored at the core.
struct CollaredTile {
    int core = -1;       // base prototile index
    Patch collar;        // contains the core at the origin; tiles sorted
    int left = -1, right = -1;  // 1D collars
    std::string key;
};

struct CollaredRule {
    SubstitutionRule base;
    int power = 1;  // substitution power used for a well-defined induced rule
    std::vector<CollaredTile> tiles;
    // induced children under base^power: (collared index, translation);
    // translations empty for 1D (order carries the word)
    std::vector<std::vector<std::pair<int, Vec2>>> children;
    std::vector<std::vector<int>> words;  // 1D

    int count() const { return int(tiles.size()); }
    // package as a substitution rule on the collared labels (core geometry)
    SubstitutionRule as_rule() const;
};

struct CollarOptions {
    int max_power = 4;
    int max_tiles = 200000;
    int max_seed_level = 8;
    bool allow_nonprimitive = false;
};

CollaredRule collar_rule(const SubstitutionRule& rule, const CollarOptions& opt = {});

// sigma-transpose on top cells: entry (i, j) = number of children of collared
// tile i with collared label j (row i enumerates the subdivision of i)
IntMatrix collared_matrix(const CollaredRule& cr);

} // namespace aptk

#endif
