// Stretch reproductions (reported, not asserted): these runs are long and
// are only exercised when APTK_STRETCH is set in the environment.
#include <doctest.h>

#include "builtins/builtins.hpp"
#include "ktheory/report.hpp"

#include <cstdio>
#include <cstdlib>

using namespace aptk;

namespace {

void stretch_row(const char* name, const char* expectation) {
    if (!is_builtin(name)) {
        std::printf("stretch %-24s SKIPPED (rule not in the corpus)\n", name);
        return;
    }
    try {
        PipelineResult p = run_pipeline(builtin_rule(name));
        std::printf("stretch %-24s CP=%ld PI=%ld FT=%ld L(FT)=%ld K0(u)=%s K1(u)=%s\n", name,
                    p.report.diag.cp, p.report.diag.pi, p.report.diag.ft, p.report.diag.l_ft,
                    p.report.k0_u.str().c_str(), p.report.k1_u.str().c_str());
        std::printf("        expected: %s\n", expectation);
    } catch (const std::exception& e) {
        std::printf("stretch %-24s ERROR: %s\n", name, e.what());
    }
}

} // namespace

TEST_CASE("stretch reproductions") {
    if (!std::getenv("APTK_STRETCH")) {
        MESSAGE("set APTK_STRETCH=1 to run the stretch reproductions");
        return;
    }
    stretch_row("ammann-a5-undecorated",
                "CP=220 PI=496 FT=272 L(FT)=65, K0(u)=Z^9+Z (as Z^20/Z^11 + Z), K1(u)=Z^8");
    stretch_row("robinson-triangle",
                "CP=300 PI=540 FT=360 L(FT)=64, six-term ranks Z^37 -> Z^40 -> Z^9, K1(u)=Z^5");
    stretch_row("tuebingen-triangle",
                "CP=860 PI=1710 FT=950 L(FT)=130, K0(u)=Z^25+Z_5^2 (torsion witness 5,5)");
}
