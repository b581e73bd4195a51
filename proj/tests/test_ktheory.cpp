#include <doctest.h>

#include "builtins/builtins.hpp"
#include "ktheory/report.hpp"

using namespace aptk;

TEST_CASE("fibonacci K-theory matches the worked computation") {
    PipelineResult p = run_pipeline(builtin_rule("fibonacci"));
    CHECK(p.report.k0_af.str() == "Z^3");
    CHECK(p.report.k0_af_u.str() == "Z^2");
    CHECK(p.report.k0_u.str() == "Z^2");
    CHECK(p.report.k1_u.str() == "Z");
    // evaluation in the spectral basis of the top tower
    REQUIRE(p.report.ev_rows.size() == 3);
    CHECK(p.report.ev_rows[0].entries == std::vector<std::string>{"0", "0"});
    CHECK(p.report.ev_rows[1].entries == std::vector<std::string>{"1", "-1"});
    CHECK(p.report.ev_rows[2].entries == std::vector<std::string>{"0", "0"});
    std::string text = render_report(p.report, ReportFormat::text);
    CHECK(text.find("ev (eigenbasis) = [[0,0],[1,-1],[0,0]]") != std::string::npos);
}

TEST_CASE("silver mean K-theory: ev vanishes on the limit") {
    PipelineResult p = run_pipeline(builtin_rule("silver-mean"));
    CHECK(p.report.k0_af.str() == "Z^2");
    CHECK(p.report.k0_af_u.str() == "Z");
    CHECK(p.report.k0_u.str() == "Z^2");
    CHECK(p.report.k1_u.str() == "Z");
    CHECK(p.report.ev_image.is_trivial());
}

TEST_CASE("single-letter doubling rule") {
    PipelineResult p = run_pipeline(builtin_rule("doubling"));
    CHECK(p.report.k0_af.str() == "Z[1/2]");
    CHECK(p.report.k0_u.str() == "Z[1/2]");
    CHECK(p.report.k1_u.str() == "Z");
}

TEST_CASE("d=1 primitive rules always have K1(u) = Z") {
    for (const auto& name : {"fibonacci", "silver-mean", "doubling"}) {
        PipelineResult p = run_pipeline(builtin_rule(name));
        CHECK(p.report.k1_u.iso_equal(LimitGroup::free(1)));
    }
}

TEST_CASE("solenoid six-term") {
    PipelineResult p = run_pipeline(builtin_rule("solenoid"));
    CHECK(p.report.k0_af.str() == "Z[1/4]");
    CHECK(p.report.k0_af_u.str() == "Z[1/2]^2");
    CHECK(p.report.k0_u.str() == "Z[1/4] + Z");
    CHECK(p.report.k1_u.str() == "Z[1/2]^2");
    CHECK(p.report.k1_af_u.str() == "Z");
    CHECK(p.report.ev_image.is_trivial());
    CHECK(p.report.hyperplane_ok);
}

TEST_CASE("structured report round-trips losslessly") {
    for (const auto& name : {"fibonacci", "solenoid"}) {
        PipelineResult p = run_pipeline(builtin_rule(name));
        std::string json1 = render_report(p.report, ReportFormat::structured);
        KTheoryReport back = report_from_json(json1);
        std::string json2 = render_report(back, ReportFormat::structured);
        CHECK(json1 == json2);
    }
}

TEST_CASE("exactness bookkeeping: K0(u) decomposes as coker(ev) + H^0") {
    for (const auto& name : {"solenoid", "half-hex"}) {
        PipelineResult p = run_pipeline(builtin_rule(name));
        LimitGroup expect = direct_sum(p.report.h2, p.report.h0);
        CHECK(p.report.k0_u.iso_equal(expect));
        CHECK(p.report.k1_af_u.iso_equal(p.report.h0));
        CHECK(p.report.k1_u.iso_equal(p.report.h1));
    }
}

TEST_CASE("h0 rank equals the component count for primitive rules") {
    for (const auto& name : {"solenoid", "half-hex"}) {
        PipelineResult p = run_pipeline(builtin_rule(name));
        CHECK(p.report.h0.iso_equal(LimitGroup::free(1)));
    }
}
