#ifndef APTK_KTHEORY_KTHEORY_HPP
#define APTK_KTHEORY_KTHEORY_HPP

#include "abgroups/abgroups.hpp"
#include "apcomplex/complex.hpp"

#include <optional>

namespace aptk {

// One printable row of the evaluation map in spectral coordinates (d = 1).
struct EvRow {
    std::string root;           // display form of the eigenvalue
    std::vector<std::string> entries;
};

struct KTheoryReport {
    std::string rule_name;
    int dimension = 2;
    Diagnostics diag;
    int collar_power = 1;
    int components = 1;  // strongly connected components of the abelianization

    LimitGroup k0_af, k0_af_u, k0_u, k1_u, k1_af_u;
    LimitGroup h0, h1, h2;
    LimitGroup ev_image;

    bool hyperplane_ok = true;
    // how the 1-skeleton AF identification was justified (d = 2)
    enum class Af1Route { hyperplane, splits_completely, determinant_one, none };
    Af1Route af1_route = Af1Route::none;
    std::optional<LimitGroup> k0_af1;      // K0 of the 1-skeleton AF algebra
    std::optional<LimitGroup> th_image;    // image of the thickened 0-tower in it

    // sigma2 spectral data after removing the eventual kernel
    std::vector<std::pair<std::string, int>> sigma2_spectrum;  // (factor/eigenvalue, mult)

    std::vector<Int> torsion_witness;  // finite-level invariant factors seen in coker
    std::vector<EvRow> ev_rows;        // d=1 eigenbasis display of ev
    IntMatrix ev_matrix;               // delta^0 (d=1) or delta^1 (d=2)

    std::string note;
};

KTheoryReport compute_d1(const CochainSystem& cs, const ClassifyOptions& opt = {});
KTheoryReport compute_d2(const CochainSystem& cs, const ClassifyOptions& opt = {});

// convenience driver: rule -> collar -> complex -> report
struct PipelineResult {
    CollaredRule cr;
    ApComplex cx;
    CochainSystem cs;
    KTheoryReport report;
};
PipelineResult run_pipeline(const SubstitutionRule& rule, const ClassifyOptions& copt = {},
                            const CollarOptions& collar_opt = {},
                            const BuildOptions& build_opt = {});

} // namespace aptk

#endif
