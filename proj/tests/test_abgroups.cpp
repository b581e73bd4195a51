#include <doctest.h>

#include "abgroups/abgroups.hpp"

#include <random>

using namespace aptk;

namespace {

const IntMatrix fib_sigma = IntMatrix::from_rows({{0, 0, 0, 1},
                                                  {1, 0, 1, 0},
                                                  {1, 1, 0, 0},
                                                  {1, 0, 1, 0}});

LimitGroup classify_free(const IntMatrix& m) {
    return classify_limit(StationarySystem::on_free(m));
}

LimitGroup lg_free(long n) { return LimitGroup::free(n); }

} // namespace

TEST_CASE("multiplication by 2 on Z gives Z[1/2]") {
    LimitGroup g = classify_free(IntMatrix::from_rows({{2}}));
    CHECK(g.str() == "Z[1/2]");
}

TEST_CASE("Fibonacci tower classifies to Z^3") {
    LimitGroup g = classify_free(fib_sigma);
    CHECK(g.iso_equal(lg_free(3)));
    CHECK(g.splitting_verified);
}

TEST_CASE("silver mean tower classifies to Z^2") {
    IntMatrix m = IntMatrix::from_rows(
        {{2, 2, 2, 1}, {1, 1, 1, 0}, {2, 2, 2, 1}, {2, 2, 2, 1}});
    CHECK(classify_free(m).iso_equal(lg_free(2)));
}

TEST_CASE("identity on Z^n classifies to Z^n") {
    for (int n = 1; n <= 4; ++n)
        CHECK(classify_free(IntMatrix::identity(n)).iso_equal(lg_free(n)));
}

TEST_CASE("classification is invariant under unimodular conjugation") {
    std::mt19937 rng(5);
    std::vector<IntMatrix> tests = {
        fib_sigma,
        IntMatrix::from_rows({{2, 0}, {0, 3}}),
        IntMatrix::from_rows({{4}}),
        IntMatrix::from_rows({{2, 1}, {0, 2}}),
        IntMatrix::from_rows({{0, 4}, {1, 0}}),
    };
    for (const auto& m : tests) {
        LimitGroup base = classify_free(m);
        for (int iter = 0; iter < 5; ++iter) {
            // random unimodular via elementary operations
            int n = m.rows();
            IntMatrix u = IntMatrix::identity(n);
            for (int s = 0; s < 6; ++s) {
                int i = int(rng() % n), j = int(rng() % n);
                if (i == j) continue;
                long c = long(rng() % 3) - 1;
                for (int k = 0; k < n; ++k) u.at(i, k) += c * u.at(j, k);
            }
            auto ui = solve_integer(u, IntMatrix::identity(n));
            REQUIRE(ui);
            LimitGroup g = classify_free(u * m * (*ui));
            CHECK(g.iso_equal(base));
        }
    }
}

TEST_CASE("remove_eventual_kernel drops nilpotent coordinates") {
    StationarySystem s = StationarySystem::on_free(IntMatrix::from_rows({{0, 0}, {0, 2}}));
    StationarySystem r = remove_eventual_kernel(s);
    CHECK(r.group.generators == 1);
    CHECK(r.endo.at(0, 0) == 2);
    CHECK(classify_limit(r).str() == "Z[1/2]");
}

TEST_CASE("remove_eventual_kernel on the Fibonacci tower has rank 3") {
    StationarySystem r = remove_eventual_kernel(StationarySystem::on_free(fib_sigma));
    CHECK(r.group.generators == 3);
    CHECK(abs(det(r.endo)) == 1);
}

TEST_CASE("remove_eventual_kernel fixes the identity and is idempotent") {
    StationarySystem s = StationarySystem::on_free(IntMatrix::identity(3));
    StationarySystem r = remove_eventual_kernel(s);
    CHECK(r.endo == s.endo);
    std::mt19937 rng(11);
    for (int iter = 0; iter < 20; ++iter) {
        int n = 2 + int(rng() % 3);
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = long(rng() % 5) - 2;
        StationarySystem a = remove_eventual_kernel(StationarySystem::on_free(m));
        StationarySystem b = remove_eventual_kernel(a);
        CHECK(a.group.generators == b.group.generators);
        CHECK(classify_limit(a).iso_equal(classify_limit(b)));
    }
}

TEST_CASE("non-intertwining maps are rejected") {
    StationarySystem a = StationarySystem::on_free(IntMatrix::from_rows({{2}}));
    StationarySystem b = StationarySystem::on_free(IntMatrix::from_rows({{3}}));
    CHECK_THROWS_AS(SystemMap(a, b, IntMatrix::identity(1)), std::invalid_argument);
}

TEST_CASE("kernel of the identity tower map is trivial") {
    StationarySystem a = StationarySystem::on_free(IntMatrix::from_rows({{2}}));
    SystemMap f(a, a, IntMatrix::identity(1));
    CHECK(classify_limit(limit_kernel(f)).is_trivial());
}

TEST_CASE("cokernel of the identity tower map is trivial") {
    StationarySystem a = StationarySystem::on_free(fib_sigma);
    SystemMap f(a, a, IntMatrix::identity(4));
    CHECK(classify_limit(limit_cokernel(f)).is_trivial());
}

TEST_CASE("cokernel of the zero map into a doubling tower") {
    StationarySystem z = StationarySystem::on_free(IntMatrix(0, 0));
    StationarySystem t = StationarySystem::on_free(IntMatrix::from_rows({{2}}));
    SystemMap f(z, t, IntMatrix(1, 0));
    CHECK(classify_limit(limit_cokernel(f)).str() == "Z[1/2]");
}

TEST_CASE("kernel example: Fibonacci evaluation tower") {
    // relative tower matrix and ev in the vertex coordinates of the
    // 1-dimensional complex; ev = delta0, kernel has rank 1, limit Z
    IntMatrix sigma0 = IntMatrix::from_rows({{0, 0, 1}, {1, 0, 0}, {1, 0, 0}});
    IntMatrix delta0 = IntMatrix::from_rows({{-1, 1, 0}, {1, -1, 0}, {0, -1, 1}, {1, 0, -1}});
    StationarySystem rel = StationarySystem::on_free(sigma0);
    StationarySystem top = StationarySystem::on_free(fib_sigma);
    SystemMap ev(rel, top, delta0);
    StationarySystem k = limit_kernel(ev);
    CHECK(k.group.generators == 1);
    CHECK(classify_limit(k).iso_equal(lg_free(1)));
}

TEST_CASE("direct sums concatenate and renormalize") {
    LimitGroup a = LimitGroup::invert(Int(4));
    LimitGroup b = lg_free(1);
    LimitGroup s = direct_sum(a, b);
    CHECK(s.str() == "Z[1/4] + Z");
    CHECK(direct_sum(LimitGroup::trivial(), lg_free(2)).str() == "Z^2");
    LimitGroup t1, t2;
    t1.torsion = {Int(2)};
    t2.torsion = {Int(2)};
    CHECK(direct_sum(t1, t2).str() == "Z_2^2");
}

TEST_CASE("torsion survives in cokernel limits when the endo is invertible on it") {
    // Z^2 --(x5 on one coordinate)--> quotient has Z_5 torsion with endo 4
    // target tower: Z^2 with endo diag(4,4); map = diag(5,1)
    StationarySystem t = StationarySystem::on_free(IntMatrix::from_rows({{4, 0}, {0, 4}}));
    StationarySystem s = StationarySystem::on_free(IntMatrix::from_rows({{4, 0}, {0, 4}}));
    SystemMap f(s, t, IntMatrix::from_rows({{5, 0}, {0, 1}}));
    LimitGroup g = classify_limit(limit_cokernel(f));
    CHECK(g.status == LimitGroup::Status::classified);
    REQUIRE(g.torsion.size() == 1);
    CHECK(g.torsion[0] == 5);
}

TEST_CASE("nilpotent torsion dies in the limit") {
    // endo kills the torsion generator eventually
    StationarySystem t = StationarySystem::on_free(IntMatrix::from_rows({{2, 0}, {0, 2}}));
    StationarySystem s = StationarySystem::on_free(IntMatrix::from_rows({{2, 0}, {0, 2}}));
    SystemMap f(s, t, IntMatrix::from_rows({{2, 0}, {0, 1}}));
    // coker = Z_2 + Z[1/2]-part, endo multiplies the torsion class by 2 = 0
    LimitGroup g = classify_limit(limit_cokernel(f));
    CHECK(g.torsion.empty());
}

TEST_CASE("coupled divisible blocks are detected as non-split") {
    // eigenvalues -2 and 3 agree mod 5 and the eigenlattice index is 5;
    // the limit is a genuinely twisted extension
    IntMatrix m = IntMatrix::from_rows({{-2, 0}, {1, 3}});
    LimitGroup g = classify_free(m);
    CHECK(g.status == LimitGroup::Status::unresolved_presentation);
}

TEST_CASE("uncoupled divisible blocks verify and split") {
    IntMatrix m = IntMatrix::from_rows({{2, 1}, {0, 3}});
    LimitGroup g = classify_free(m);
    CHECK(g.status == LimitGroup::Status::classified);
    CHECK(g.splitting_verified);
    CHECK(g.str() == "Z[1/3] + Z[1/2]");
}

TEST_CASE("uniform irrational block splits as Z[1/5]^2") {
    // A^2 = 5I
    IntMatrix m = IntMatrix::from_rows({{1, 2}, {2, -1}});
    LimitGroup g = classify_free(m);
    CHECK(g.status == LimitGroup::Status::classified);
    CHECK(g.iso_equal(LimitGroup::invert(Int(5), 2)));
}

TEST_CASE("non-uniform irrational block yields rank bounds") {
    // x^2 - x - 5: 5 splits unevenly between the places
    IntMatrix m = IntMatrix::from_rows({{2, 3}, {1, -1}});
    LimitGroup g = classify_free(m);
    CHECK(g.status == LimitGroup::Status::rank_bounds_only);
    CHECK(g.divisible_rank_upper == 2);
}
