#include <doctest.h>

#include "exactlin/intmatrix.hpp"
#include "exactlin/numberfield.hpp"
#include "exactlin/poly.hpp"

#include <random>

using namespace aptk;

namespace {

const IntMatrix fib_sigma = IntMatrix::from_rows({{0, 0, 0, 1},
                                                  {1, 0, 1, 0},
                                                  {1, 1, 0, 0},
                                                  {1, 0, 1, 0}});

bool is_unimodular(const IntMatrix& m) { return abs(det(m)) == 1; }

} // namespace

TEST_CASE("snf of the identity is the identity") {
    SnfResult s = snf(IntMatrix::identity(3));
    CHECK(s.d == IntMatrix::identity(3));
    CHECK(s.u * IntMatrix::identity(3) * s.v == s.d);
}

TEST_CASE("snf of [[2,4],[6,8]]") {
    IntMatrix m = IntMatrix::from_rows({{2, 4}, {6, 8}});
    SnfResult s = snf(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(is_unimodular(s.u));
    CHECK(is_unimodular(s.v));
    CHECK(s.d.at(0, 0) == 2);
    CHECK(s.d.at(1, 1) == 4);
    CHECK(s.d.at(0, 1) == 0);
    CHECK(s.d.at(1, 0) == 0);
    CHECK(abs(det(s.d)) == abs(det(m)));
}

TEST_CASE("snf of a zero matrix") {
    IntMatrix m(2, 3);
    SnfResult s = snf(m);
    CHECK(s.d.is_zero());
    CHECK(s.d.rows() == 2);
    CHECK(s.d.cols() == 3);
}

TEST_CASE("snf properties on random matrices") {
    std::mt19937 rng(42);
    for (int iter = 0; iter < 60; ++iter) {
        int r = 1 + int(rng() % 5), c = 1 + int(rng() % 5);
        IntMatrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = long(rng() % 21) - 10;
        SnfResult s = snf(m);
        CHECK(s.u * m * s.v == s.d);
        CHECK(is_unimodular(s.u));
        CHECK(is_unimodular(s.v));
        // divisibility chain
        int b = std::min(r, c);
        for (int i = 0; i + 1 < b; ++i) {
            if (s.d.at(i + 1, i + 1) == 0) continue;
            CHECK(s.d.at(i + 1, i + 1) % s.d.at(i, i) == 0);
        }
        // off-diagonal zero
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (i != j) CHECK(s.d.at(i, j) == 0);
    }
}

TEST_CASE("kernel of the identity is trivial") {
    CHECK(kernel_basis(IntMatrix::identity(2)).cols() == 0);
}

TEST_CASE("kernel of [[1,-1]]") {
    IntMatrix k = kernel_basis(IntMatrix::from_rows({{1, -1}}));
    REQUIRE(k.cols() == 1);
    CHECK(k.at(0, 0) == k.at(1, 0));
    CHECK(abs(k.at(0, 0)) == 1);
}

TEST_CASE("kernel of the Fibonacci substitution matrix") {
    IntMatrix k = kernel_basis(fib_sigma);
    REQUIRE(k.cols() == 1);
    // spanned by (-1, 1, 1, 0) up to sign
    Int s = k.at(0, 0);
    CHECK(abs(s) == 1);
    CHECK(k.at(1, 0) == -s);
    CHECK(k.at(2, 0) == -s);
    CHECK(k.at(3, 0) == 0);
    CHECK((fib_sigma * k).is_zero());
}

TEST_CASE("kernel lattice is saturated") {
    // [[2,0],[0,0]] has saturated kernel spanned by e2, not 2*e2
    IntMatrix k = kernel_basis(IntMatrix::from_rows({{2, 0}, {0, 0}}));
    REQUIRE(k.cols() == 1);
    CHECK(abs(k.at(1, 0)) == 1);
}

TEST_CASE("characteristic polynomial factors: Fibonacci") {
    ZPoly cp = char_poly(fib_sigma);
    // x (x + 1) (x^2 - x - 1)
    ZPoly expect = zp_mul(zp_mul(ZPoly{Int(0), Int(1)}, ZPoly{Int(1), Int(1)}),
                          ZPoly{Int(-1), Int(-1), Int(1)});
    CHECK(cp == expect);
    FactorResult fr = factor_poly(cp);
    REQUIRE(fr.complete);
    REQUIRE(fr.factors.size() == 3);
    ZPoly prod{Int(1)};
    for (auto& [q, m] : fr.factors)
        for (int i = 0; i < m; ++i) prod = zp_mul(prod, q);
    CHECK(prod == cp);
    bool has_golden = false;
    for (auto& [q, m] : fr.factors)
        if (q == ZPoly{Int(-1), Int(-1), Int(1)}) has_golden = true;
    CHECK(has_golden);
}

TEST_CASE("characteristic polynomial factors: silver mean") {
    IntMatrix m = IntMatrix::from_rows(
        {{2, 2, 2, 1}, {1, 1, 1, 0}, {2, 2, 2, 1}, {2, 2, 2, 1}});
    ZPoly cp = char_poly(m);
    FactorResult fr = factor_poly(cp);
    REQUIRE(fr.complete);
    // x^2 (x^2 - 6x + 1): eigenvalues delta^2, delta^-2, 0, 0
    bool has_x = false, has_quad = false;
    for (auto& [q, mult] : fr.factors) {
        if (q == ZPoly{Int(0), Int(1)}) {
            has_x = true;
            CHECK(mult == 2);
        }
        if (q == ZPoly{Int(1), Int(-6), Int(1)}) has_quad = true;
    }
    CHECK(has_x);
    CHECK(has_quad);
}

TEST_CASE("characteristic polynomial of the identity") {
    FactorResult fr = factor_poly(char_poly(IntMatrix::identity(2)));
    REQUIRE(fr.factors.size() == 1);
    CHECK(fr.factors[0].first == ZPoly{Int(-1), Int(1)});
    CHECK(fr.factors[0].second == 2);
}

TEST_CASE("factorization reassembles on random products") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 25; ++iter) {
        // product of random small factors
        ZPoly p{Int(1)};
        int nf = 1 + int(rng() % 3);
        for (int i = 0; i < nf; ++i) {
            int d = 1 + int(rng() % 3);
            ZPoly f(d + 1);
            f[d] = 1;
            for (int j = 0; j < d; ++j) f[j] = long(rng() % 9) - 4;
            p = zp_mul(p, f);
        }
        FactorResult fr = factor_poly(p);
        REQUIRE(fr.complete);
        ZPoly prod{p.back() < 0 ? Int(-1) : Int(1)};
        // p is monic by construction
        prod = ZPoly{Int(1)};
        for (auto& [q, m] : fr.factors)
            for (int i = 0; i < m; ++i) prod = zp_mul(prod, q);
        CHECK(prod == p);
    }
}

TEST_CASE("rational eigenspaces") {
    IntMatrix d23 = IntMatrix::from_rows({{2, 0}, {0, 3}});
    IntMatrix e2 = kernel_basis(d23 - IntMatrix::from_rows({{2, 0}, {0, 2}}));
    REQUIRE(e2.cols() == 1);
    CHECK(abs(e2.at(0, 0)) == 1);
    CHECK(e2.at(1, 0) == 0);

    IntMatrix swap2 = IntMatrix::from_rows({{0, 1}, {1, 0}});
    IntMatrix e1 = kernel_basis(swap2 - IntMatrix::identity(2));
    REQUIRE(e1.cols() == 1);
    CHECK(e1.at(0, 0) == e1.at(1, 0));

    // solenoid sigma on C^1 = diag(2,2): eigenvalue 2 has rank 2
    IntMatrix s = IntMatrix::from_rows({{2, 0}, {0, 2}});
    IntMatrix k = kernel_basis(s - IntMatrix::from_rows({{2, 0}, {0, 2}}));
    CHECK(k.cols() == 2);
}

TEST_CASE("exact rational arithmetic round-trips against a naive fraction type") {
    // naive fraction on long long with explicit gcd reduction
    struct Naive {
        long long n, d;
        static long long g(long long a, long long b) { return b ? g(b, a % b) : (a < 0 ? -a : a); }
        static Naive make(long long n, long long d) {
            long long c = g(n < 0 ? -n : n, d);
            if (c == 0) c = 1;
            return {n / c, d / c};
        }
        Naive add(Naive o) const { return make(n * o.d + o.n * d, d * o.d); }
        Naive mul(Naive o) const { return make(n * o.n, d * o.d); }
    };
    std::mt19937 rng(99);
    for (int iter = 0; iter < 500; ++iter) {
        long long a = long(rng() % 41) - 20, b = 1 + long(rng() % 9);
        long long c = long(rng() % 41) - 20, d = 1 + long(rng() % 9);
        Naive x = Naive::make(a, b), y = Naive::make(c, d);
        Rat rx{long(a), long(b)};
        Rat ry{long(c), long(d)};
        rx.canonicalize();
        ry.canonicalize();
        Naive s = x.add(y), p = x.mul(y);
        Rat rs = rx + ry;
        Rat rp = rx * ry;
        Rat es{long(s.n), long(s.d)};
        Rat ep{long(p.n), long(p.d)};
        es.canonicalize();
        ep.canonicalize();
        CHECK(rs == es);
        CHECK(rp == ep);
    }
}

TEST_CASE("number field sign determination") {
    // Q(sqrt 2): alpha in (1, 2)
    auto f = std::make_shared<FieldSpec>(ZPoly{Int(-2), Int(0), Int(1)}, Rat(1), Rat(2));
    FieldPtr fp = f;
    FieldElement a = FieldElement::generator(fp);  // sqrt 2
    FieldElement one = FieldElement::one(fp);
    CHECK((a - one).sign() > 0);                       // sqrt2 > 1
    CHECK((a * a - FieldElement::from_rat(fp, 2)).is_zero());
    FieldElement x = a - FieldElement::from_rat(fp, Rat(3, 2));  // sqrt2 - 1.5 < 0
    CHECK(x.sign() < 0);
    CHECK((a.inverse() * a - one).is_zero());
    // 1/(1+sqrt2) = sqrt2 - 1
    FieldElement y = (one + a).inverse();
    CHECK((y - (a - one)).is_zero());
}

TEST_CASE("sturm root counting") {
    ZPoly q{Int(-1), Int(-1), Int(1)};  // x^2 - x - 1, roots phi, -1/phi
    CHECK(sturm_count(q, Rat(-2), Rat(2)) == 2);
    CHECK(sturm_count(q, Rat(0), Rat(2)) == 1);
    CHECK(sturm_count(q, Rat(-2), Rat(0)) == 1);
    CHECK(sturm_count(q, Rat(2), Rat(3)) == 0);
}
