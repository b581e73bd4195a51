#include <doctest.h>

#include "builtins/builtins.hpp"
#include "collar/collar.hpp"

using namespace aptk;

TEST_CASE("fibonacci collars to the four classified windows with the known matrix") {
    CollaredRule cr = collar_rule(builtin_rule("fibonacci"));
    REQUIRE(cr.count() == 4);
    CHECK(cr.tiles[0].key == "b|a|b");
    CHECK(cr.tiles[1].key == "a|b|a");
    CHECK(cr.tiles[2].key == "a|b|b");
    CHECK(cr.tiles[3].key == "b|b|a");
    IntMatrix expect = IntMatrix::from_rows(
        {{0, 0, 0, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}, {1, 0, 1, 0}});
    CHECK(collared_matrix(cr) == expect);
}

TEST_CASE("silver mean collars to four windows; the squared matrix matches") {
    CollaredRule cr = collar_rule(builtin_rule("silver-mean"));
    REQUIRE(cr.count() == 4);
    IntMatrix m = collared_matrix(cr);
    IntMatrix m2 = m * m;
    // canonical order here: (b)a(b), (a)b(b), (b)b(a), (b)b(b); permuting to
    // the order (b)b(a), (b)a(b), (a)b(b), (b)b(b) reproduces the squared
    // display exactly
    std::vector<int> perm = {2, 0, 1, 3};
    IntMatrix p2 = m2.submatrix(perm, perm);
    IntMatrix expect = IntMatrix::from_rows(
        {{2, 2, 2, 1}, {1, 1, 1, 0}, {2, 2, 2, 1}, {2, 2, 2, 1}});
    CHECK(p2 == expect);
}

TEST_CASE("solenoid collars to one tile with matrix [4]") {
    CollaredRule cr = collar_rule(builtin_rule("solenoid"));
    REQUIRE(cr.count() == 1);
    CHECK(cr.power == 1);
    CHECK(collared_matrix(cr).at(0, 0) == 4);
    // its collar consists of the core plus the eight surrounding squares
    CHECK(cr.tiles[0].collar.tiles.size() == 9);
}

TEST_CASE("half-hex collars to 24 prototiles") {
    CollaredRule cr = collar_rule(builtin_rule("half-hex"));
    CHECK(cr.count() == 24);
}

TEST_CASE("chair collars to 56 prototiles") {
    CollaredRule cr = collar_rule(builtin_rule("chair"));
    CHECK(cr.count() == 56);
}

TEST_CASE("collared children retract onto the base children placement for placement") {
    for (const auto& name : {"solenoid", "half-hex"}) {
        SubstitutionRule base = builtin_rule(name);
        CollaredRule cr = collar_rule(base);
        SubstitutionRule powered = base.power(cr.power);
        for (int i = 0; i < cr.count(); ++i) {
            REQUIRE(cr.children[i].size() == powered.children[cr.tiles[i].core].size());
            // compare as multisets of (base label, translation)
            std::multiset<std::string> got, want;
            for (const auto& [c, t] : cr.children[i])
                got.insert(std::to_string(cr.tiles[c].core) + "@" + t.str());
            for (const auto& ch : powered.children[cr.tiles[i].core])
                want.insert(std::to_string(ch.proto) + "@" + ch.t.str());
            CHECK(got == want);
        }
    }
}

TEST_CASE("collared matrix respects exact area bookkeeping") {
    for (const auto& name : {"solenoid", "half-hex", "chair"}) {
        SubstitutionRule base = builtin_rule(name);
        CollaredRule cr = collar_rule(base);
        IntMatrix m = collared_matrix(cr);
        SubstitutionRule powered = base.power(cr.power);
        FieldElement detE = powered.expansion.det();
        for (int j = 0; j < cr.count(); ++j) {
            FieldElement total = FieldElement::zero(base.field);
            for (int i = 0; i < cr.count(); ++i) {
                if (m.at(j, i) == 0) continue;
                FieldElement mult = FieldElement::from_rat(base.field, Rat(m.at(j, i)));
                total = total + mult * base.area2(cr.tiles[i].core);
            }
            CHECK((total - detE * base.area2(cr.tiles[j].core)).is_zero());
        }
    }
}

TEST_CASE("collared matrix of a primitive rule is primitive") {
    for (const auto& name : {"fibonacci", "silver-mean", "solenoid", "half-hex"}) {
        CollaredRule cr = collar_rule(builtin_rule(name));
        CHECK(cr.as_rule().is_primitive());
    }
}

TEST_CASE("collar closure: every collared child label is in the set") {
    CollaredRule cr = collar_rule(builtin_rule("half-hex"));
    for (int i = 0; i < cr.count(); ++i)
        for (const auto& [c, t] : cr.children[i]) {
            CHECK(c >= 0);
            CHECK(c < cr.count());
        }
}
