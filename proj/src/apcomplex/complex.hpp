#ifndef APTK_APCOMPLEX_COMPLEX_HPP
#define APTK_APCOMPLEX_COMPLEX_HPP

#include "collar/collar.hpp"

namespace aptk {

// Refined boundary arc of one prototile: a polyline from one 0-cell point to
// the next along the CCW boundary (may pass through polygon corners that are
// not 0-cells, so an arc need not be straight).
struct BoundaryArc {
    std::vector<Vec2> pts;  // local coordinates, CCW order, >= 2 points
    bool straight() const;
};

// One 1-cell of the complex: an identification class of boundary arcs.
struct OneCell {
    int rep_tile = -1;  // prototile owning the representative arc
    int rep_arc = -1;
    int orientation = 1;  // +1: class direction = rep arc CCW direction
    bool hyperplane = true;  // straight polyline
    int head = -1, tail = -1;  // 0-cell ids in class direction
    struct Member {
        int tile, arc;
        int sign;  // class direction vs member CCW direction
    };
    std::vector<Member> members;
};

struct ZeroCell {
    int rep_tile = -1;
    Vec2 rep_point;
    std::vector<std::pair<int, Vec2>> members;  // (tile, local point)
};

struct Diagnostics {
    int dimension = 2;
    long cp = 0, pi = 0, l_pi = 0, ft = 0, l_ft = 0;
};

// The collared Anderson-Putnam complex with its oriented incidence data.
struct ApComplex {
    CollaredRule cr;
    SubstitutionRule crule;  // cr.as_rule()
    std::vector<Contact> contacts;

    // 2D structures
    std::vector<std::vector<BoundaryArc>> arcs;  // per prototile, CCW order
    std::vector<OneCell> one_cells;
    std::vector<ZeroCell> zero_cells;
    std::vector<std::vector<int>> arc_class;  // (tile, arc) -> 1-cell id
    // boundary walk of each 2-cell: (1-cell id, sign) in CCW order
    std::vector<std::vector<std::pair<int, int>>> boundary_walk;

    // 1D structures: ends[i] = {tail 0-cell, head 0-cell} of collared tile i
    std::vector<std::pair<int, int>> ends_1d;

    int c0() const { return int(zero_cells.size()); }
    int c1() const;
    int c2() const { return crule.dimension == 2 ? cr.count() : 0; }

    Diagnostics diagnostics() const;
    long count_vertex_stars() const;
    bool hyperplane_ok() const;
};

struct BuildOptions {
    int max_refine_rounds = 64;
    unsigned orientation_seed = 0;  // 0: canonical orientations
    AdjacencyOptions adjacency;
};

ApComplex build_complex(const CollaredRule& cr, const BuildOptions& opt = {});

// re-orient free orientation choices from a seed (for invariance tests)
void reorient(ApComplex& cx, unsigned seed);

struct CochainSystem {
    int dimension = 2;
    int c0 = 0, c1 = 0, c2 = 0;
    IntMatrix delta0;  // c1 x c0
    IntMatrix delta1;  // c2 x c1 (2D)
    IntMatrix sigma0;  // c0 x c0
    IntMatrix sigma1;  // c1 x c1
    IntMatrix sigma2;  // c2 x c2 (2D)
    std::vector<bool> hyperplane_cell;  // per 1-cell (2D)
    bool hyperplane_ok = true;
};

CochainSystem cochain_system(const ApComplex& cx);

} // namespace aptk

#endif
