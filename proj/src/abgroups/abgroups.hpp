#ifndef APTK_ABGROUPS_ABGROUPS_HPP
#define APTK_ABGROUPS_ABGROUPS_HPP

#include "exactlin/intmatrix.hpp"
#include "exactlin/poly.hpp"

#include <string>
#include <vector>

namespace aptk {

// Finitely presented abelian group Z^generators / column lattice of relations.
struct PresentedGroup {
    int generators = 0;
    IntMatrix relations;  // generators x k, columns are relators; may have 0 cols

    static PresentedGroup free_group(int n) {
        return PresentedGroup{n, IntMatrix(n, 0)};
    }
};

// A f.g. abelian group with an endomorphism, standing for the stationary
// inductive limit lim (G --endo--> G --endo--> ...).
struct StationarySystem {
    PresentedGroup group;
    IntMatrix endo;  // n x n on generators; must map the relation lattice into itself

    StationarySystem() = default;
    StationarySystem(PresentedGroup g, IntMatrix e);  // validates

    static StationarySystem on_free(IntMatrix e) {
        return StationarySystem(PresentedGroup::free_group(e.rows()), std::move(e));
    }
};

// Intertwining map of stationary systems; construction verifies
// matrix * source.endo == target.endo * matrix and that relations map into
// relations, and throws std::invalid_argument otherwise.
struct SystemMap {
    StationarySystem source, target;
    IntMatrix matrix;  // target.generators x source.generators

    SystemMap(StationarySystem s, StationarySystem t, IntMatrix m);
};

// Classified value of a stationary limit:
//   Z^free_rank (+) sum Z[1/m]^mult (+) sum Z_d, with d1 | d2 | ...
struct LimitGroup {
    enum class Status { classified, rank_bounds_only, unresolved_presentation };
    Status status = Status::classified;
    long free_rank = 0;
    std::vector<std::pair<Int, int>> inverted;  // (m >= 2, multiplicity), m descending
    std::vector<Int> torsion;                   // invariant factors
    // rank_bounds_only payload, mirroring reports like Z^{>=2213} (+) Q^{<=18}
    long free_rank_lower = 0;
    long divisible_rank_upper = 0;
    bool splitting_verified = true;  // false when classification assumed splitting
    std::string note;

    static LimitGroup trivial() { return LimitGroup{}; }
    static LimitGroup free(long n) {
        LimitGroup g;
        g.free_rank = n;
        return g;
    }
    static LimitGroup invert(const Int& m, int mult = 1) {
        LimitGroup g;
        if (m > 1) g.inverted.push_back({m, mult});
        else g.free_rank = mult;
        return g;
    }

    bool is_trivial() const {
        return status == Status::classified && free_rank == 0 && inverted.empty() &&
               torsion.empty();
    }
    long rank() const;  // total torsion-free rank (classified only)
    std::string str() const;
    // isomorphism-invariant comparison: Z[1/4] == Z[1/2], torsion by invariant
    // factors, order-insensitive
    bool iso_equal(const LimitGroup& o) const;
    void normalize();
};

// Direct sum of classified groups; propagates non-classified status.
LimitGroup direct_sum(const LimitGroup& a, const LimitGroup& b);

// Restriction of endo to the saturated image lattice of endo^n
// (n = generator count); the limit is unchanged and the restricted map is
// injective over Q. Free systems only.
StationarySystem remove_eventual_kernel(const StationarySystem& s);

// Stationary system on {x in source : f(x) in target relation lattice},
// with restricted endomorphism; its limit is the kernel of the limit map.
StationarySystem limit_kernel(const SystemMap& f);

// Stationary system presenting target / image(f) with the induced
// endomorphism; its limit is the cokernel of the limit map.
StationarySystem limit_cokernel(const SystemMap& f);

// Classification ------------------------------------------------------------

enum class VerifyMode { on, off, automatic };

struct ClassifyOptions {
    int charpoly_cap = 150;   // skip exact spectral analysis above this rank
    long factor_effort = 200000;
    VerifyMode verify = VerifyMode::automatic;
    int verify_cap = 140;     // max rank for splitting verification in auto mode
    bool spectral_detail = false;  // spectral blocks even on the unimodular fast path
};

// One generalized-eigenvalue block of the kernel-removed free part.
struct FreeBlock {
    ZPoly poly;        // irreducible factor of the characteristic polynomial
    int mult = 1;      // multiplicity as a factor
    bool integral = false;  // poly = x - lambda
    Int lambda = 0;         // set when integral
    bool unimodular = false;  // |det| = 1 on the block lattice
    bool divisible = false;   // contributes Z[1/m] summands
    Int m = 0;                // inversion modulus for display (|lambda| or radical)
    int dim = 0;              // rank of the block lattice
    IntMatrix lattice;        // saturated block lattice (columns, in restricted coords)
};

struct ClassifyDetail {
    int removed_rank = 0;     // rank after eventual-kernel removal
    Int restricted_det = 0;
    std::vector<FreeBlock> blocks;
    bool spectra_known = false;  // false when rank above charpoly_cap
    std::vector<Int> torsion_limit;  // invariant factors of the eventual torsion image
    std::string note;
};

LimitGroup classify_limit(const StationarySystem& s,
                          const ClassifyOptions& opt = ClassifyOptions(),
                          ClassifyDetail* detail = nullptr);

} // namespace aptk

#endif
