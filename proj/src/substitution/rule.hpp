#ifndef APTK_SUBSTITUTION_RULE_HPP
#define APTK_SUBSTITUTION_RULE_HPP

#include "exactlin/intmatrix.hpp"
#include "substitution/geometry.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace aptk {

struct RuleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Prototile {
    std::string label;
    Polygon poly;  // CCW simple; empty for 1D rules
};

struct ChildPlacement {
    int proto = -1;
    Vec2 t;
};

struct PlacedTile {
    int proto = -1;
    Vec2 t;
};

struct Patch {
    std::vector<PlacedTile> tiles;
};

class SubstitutionRule {
public:
    int dimension = 2;
    FieldPtr field;
    std::vector<Prototile> tiles;
    Mat2 expansion;
    std::vector<std::vector<ChildPlacement>> children;  // 2D, per prototile
    std::vector<std::vector<int>> words;                // 1D, per letter
    std::string name;

    int prototile_count() const { return int(tiles.size()); }
    int label_index(const std::string& l) const;

    // abelianized substitution matrix: entry (i, j) = count of label j among
    // the children of prototile i
    IntMatrix abelianization() const;
    bool is_primitive() const;
    int component_count() const;  // strongly connected components of the abelianization

    // full geometric/combinatorial validation; throws RuleError
    void validate(bool allow_nonprimitive = false) const;

    SubstitutionRule power(int n) const;  // composed rule, expansion^n
    SubstitutionRule squared() const { return power(2); }

    // exact area of prototile i (twice the area)
    FieldElement area2(int i) const { return tiles[i].poly.area2(); }
};

// level-n subdivision of a patch, exact coordinates
Patch substitute(const SubstitutionRule& rule, const Patch& p, int n);

// translate so the lexicographically least vertex (real embedding) is at the
// origin
Patch canonicalize(const SubstitutionRule& rule, const Patch& p);
std::string patch_key(const Patch& p);  // tiles sorted by (proto, coeff key)

// tile-to-tile contact, canonical orientation (a <= b; for a == b the
// translation key is positive)
struct Contact {
    int a = -1, b = -1;
    Vec2 t;            // placement of b relative to a at the origin
    bool edge = false; // shares a 1-dimensional piece (else a point)

    bool same(const Contact& o) const { return a == o.a && b == o.b && t == o.t; }
};

struct AdjacencyOptions {
    int max_rounds = 64;
};

// closed set of legal contacts of a 2D rule (edge and vertex contacts)
std::vector<Contact> adjacency_closure(const SubstitutionRule& rule,
                                       const AdjacencyOptions& opt = {});

// 1D: closed set of legal k-letter windows
std::set<std::vector<int>> legal_windows(const SubstitutionRule& rule, int k);

// geometric helpers shared with collaring --------------------------------

// boundary pieces of the union of a patch that are covered on one side only
struct FreePiece {
    Vec2 a, b;  // may be degenerate (a == b) never; pieces are segments
};
std::vector<FreePiece> free_boundary(const SubstitutionRule& rule, const Patch& p);

// all shared segments / touch points between two placed tiles
struct SharedBoundary {
    std::vector<std::pair<Vec2, Vec2>> segments;
    std::vector<Vec2> points;  // touch points not on any shared segment
    bool any() const { return !segments.empty() || !points.empty(); }
};
SharedBoundary shared_boundary(const SubstitutionRule& rule, const PlacedTile& s,
                               const PlacedTile& t);

} // namespace aptk

#endif
