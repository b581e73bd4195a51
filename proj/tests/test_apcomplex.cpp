#include <doctest.h>

#include "apcomplex/complex.hpp"
#include "builtins/builtins.hpp"

using namespace aptk;

namespace {


struct Built {
    CollaredRule cr;
    ApComplex cx;
    CochainSystem cs;
};

Built make(const std::string& name, unsigned seed = 0) {
    Built b;
    b.cr = collar_rule(builtin_rule(name));
    BuildOptions opt;
    opt.orientation_seed = seed;
    b.cx = build_complex(b.cr, opt);
    b.cs = cochain_system(b.cx);
    return b;
}
} // namespace

TEST_CASE("solenoid complex is a torus") {
    Built b = make("solenoid");
    CHECK(b.cs.c2 == 1);
    CHECK(b.cs.c1 == 2);
    CHECK(b.cs.c0 == 1);
    CHECK(b.cs.delta0.is_zero());
    CHECK(b.cs.delta1.is_zero());
    CHECK(b.cs.sigma1 == IntMatrix::from_rows({{2, 0}, {0, 2}}));
    CHECK(b.cs.sigma2 == IntMatrix::from_rows({{4}}));
    CHECK(b.cs.hyperplane_ok);
    Diagnostics d = b.cx.diagnostics();
    CHECK(d.cp == 1);
    CHECK(d.pi == 2);
    CHECK(d.l_pi == 1);
    CHECK(d.ft == 2);
    CHECK(d.l_ft == 1);
}

TEST_CASE("silver mean complex: the (b)b(b) loop attaches at one vertex") {
    Built b = make("silver-mean");
    CHECK(b.cs.c1 == 4);
    CHECK(b.cs.c0 == 3);
    // collared order: (b)a(b), (a)b(b), (b)b(a), (b)b(b); the last is a loop
    CHECK(b.cx.ends_1d[3].first == b.cx.ends_1d[3].second);
    // per-end signing: the loop contributes a zero row to delta0
    for (int v = 0; v < b.cs.c0; ++v) CHECK(b.cs.delta0.at(3, v) == 0);
}

TEST_CASE("fibonacci complex has three vertices and the known relative tower") {
    Built b = make("fibonacci");
    CHECK(b.cs.c0 == 3);
    // the squared vertex map is conjugate to the known display
    IntMatrix s2 = b.cs.sigma0 * b.cs.sigma0;
    IntMatrix expect = IntMatrix::from_rows({{0, 0, 1}, {0, 1, 0}, {0, 0, 1}});
    bool match = false;
    std::vector<int> p = {0, 1, 2};
    do {
        if (s2.submatrix(p, p) == expect) match = true;
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(match);
}

TEST_CASE("cochain complex and naturality hold on every builtin") {
    for (const auto& name : builtin_names()) {
        Built b = make(name);
        if (b.cs.dimension == 2) {
            CHECK((b.cs.delta1 * b.cs.delta0).is_zero());
            CHECK(b.cs.sigma2 * b.cs.delta1 == b.cs.delta1 * b.cs.sigma1);
        }
        CHECK(b.cs.sigma1 * b.cs.delta0 == b.cs.delta0 * b.cs.sigma0);
    }
}

TEST_CASE("euler characteristic equals the alternating homology rank") {
    for (const auto& name : {"solenoid", "half-hex", "chair"}) {
        Built b = make(name);
        Diagnostics d = b.cx.diagnostics();
        long chi_cells = d.l_ft - d.ft + d.cp;
        long r0 = b.cs.c0 - rank(b.cs.delta0);
        long r1 = (b.cs.c1 - rank(b.cs.delta1)) - rank(b.cs.delta0);
        long r2 = b.cs.c2 - rank(b.cs.delta1);
        CHECK(chi_cells == r0 - r1 + r2);
    }
}

TEST_CASE("chair fails the hyperplane condition, the others satisfy it") {
    CHECK(make("solenoid").cs.hyperplane_ok);
    CHECK(make("half-hex").cs.hyperplane_ok);
    CHECK_FALSE(make("chair").cs.hyperplane_ok);
}

TEST_CASE("hyperplane rules have nonnegative sigma1") {
    for (const auto& name : {"solenoid", "half-hex"}) {
        Built b = make(name);
        CHECK(b.cs.sigma1.nonnegative());
    }
}

TEST_CASE("every 1-cell has occurrences on both sides") {
    for (const auto& name : {"solenoid", "half-hex", "chair"}) {
        Built b = make(name);
        for (const auto& e : b.cx.one_cells) {
            int r = 0, l = 0;
            for (const auto& m : e.members) (m.sign > 0 ? r : l)++;
            CHECK(r >= 1);
            CHECK(l >= 1);
        }
    }
}

TEST_CASE("reorientation flips signs consistently") {
    Built b = make("half-hex");
    CochainSystem base = b.cs;
    reorient(b.cx, 12345);
    CochainSystem cs2 = cochain_system(b.cx);
    CHECK((cs2.delta1 * cs2.delta0).is_zero());
    CHECK(cs2.sigma2 * cs2.delta1 == cs2.delta1 * cs2.sigma1);
    CHECK(cs2.sigma1 * cs2.delta0 == cs2.delta0 * cs2.sigma0);
    // ranks are orientation independent
    CHECK(rank(cs2.delta0) == rank(base.delta0));
    CHECK(rank(cs2.delta1) == rank(base.delta1));
}
