#include "builtins/builtins.hpp"

#include "substitution/parse.hpp"

#include <algorithm>
#include <map>

namespace aptk {

namespace {

using VecQ = std::vector<Rat>;

FieldElement fe(const FieldPtr& f, const VecQ& coeffs) {
    std::vector<Rat> c(f->degree());
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i];
    return FieldElement(f, std::move(c));
}

Vec2 vq(const FieldPtr& f, const VecQ& x, const VecQ& y) { return Vec2(fe(f, x), fe(f, y)); }

SubstitutionRule word_rule(const std::string& name, const std::vector<std::string>& letters,
                           const std::map<std::string, std::vector<std::string>>& words) {
    SubstitutionRule r;
    r.name = name;
    r.dimension = 1;
    r.field = FieldSpec::rationals();
    for (const auto& l : letters) r.tiles.push_back({l, {}});
    for (const auto& l : letters) {
        std::vector<int> w;
        for (const auto& c : words.at(l)) w.push_back(r.label_index(c));
        r.words.push_back(w);
    }
    return r;
}

SubstitutionRule fibonacci() {
    return word_rule("fibonacci", {"a", "b"}, {{"a", {"b"}}, {"b", {"a", "b"}}});
}

SubstitutionRule silver_mean() {
    return word_rule("silver-mean", {"a", "b"}, {{"a", {"b"}}, {"b", {"b", "a", "b"}}});
}

SubstitutionRule single_doubling() {
    // one letter, a -> aa
    return word_rule("doubling", {"a"}, {{"a", {"a", "a"}}});
}

SubstitutionRule solenoid() {
    SubstitutionRule r;
    r.name = "solenoid";
    r.dimension = 2;
    r.field = FieldSpec::rationals();
    auto q = [&](long a, long b) { return vq(r.field, {Rat(a)}, {Rat(b)}); };
    Prototile s;
    s.label = "s";
    s.poly.v = {q(0, 0), q(1, 0), q(1, 1), q(0, 1)};
    r.tiles.push_back(s);
    r.expansion = Mat2::scalar(fe(r.field, {Rat(2)}));
    r.children = {{{0, q(0, 0)}, {0, q(1, 0)}, {0, q(0, 1)}, {0, q(1, 1)}}};
    return r;
}

SubstitutionRule chair() {
    SubstitutionRule r;
    r.name = "chair";
    r.dimension = 2;
    r.field = FieldSpec::rationals();
    auto q = [&](long a, long b) { return vq(r.field, {Rat(a)}, {Rat(b)}); };
    auto rot90 = [&](const Vec2& v) { return Vec2(-v.y, v.x); };
    // base L-tromino and its quarter-turns
    std::vector<Vec2> base = {q(0, 0), q(2, 0), q(2, 1), q(1, 1), q(1, 2), q(0, 2)};
    for (int k = 0; k < 4; ++k) {
        Prototile t;
        t.label = "L" + std::to_string(k);
        for (auto v : base) {
            for (int j = 0; j < k; ++j) v = rot90(v);
            t.poly.v.push_back(v);
        }
        r.tiles.push_back(t);
    }
    r.expansion = Mat2::scalar(fe(r.field, {Rat(2)}));
    // children of L0; rotate for the rest
    std::vector<std::pair<int, Vec2>> c0 = {
        {0, q(0, 0)}, {0, q(1, 1)}, {1, q(4, 0)}, {3, q(0, 4)}};
    r.children.resize(4);
    for (int k = 0; k < 4; ++k)
        for (auto [p, t] : c0) {
            for (int j = 0; j < k; ++j) t = rot90(t);
            r.children[k].push_back({(p + k) % 4, t});
        }
    return r;
}

SubstitutionRule half_hex() {
    SubstitutionRule r;
    r.name = "half-hex";
    r.dimension = 2;
    // Q(sqrt 3)
    r.field = std::make_shared<FieldSpec>(ZPoly{Int(-3), Int(0), Int(1)}, Rat(1), Rat(2));
    auto v2 = [&](const Rat& xa, const Rat& xb, const Rat& ya, const Rat& yb) {
        return vq(r.field, {xa, xb}, {ya, yb});
    };
    // rotation by 60 degrees: (x, y) -> (x/2 - s y/2, s x/2 + y/2), s = sqrt 3
    auto rot60 = [&](const Vec2& v) {
        FieldElement half = fe(r.field, {Rat(1, 2)});
        FieldElement shalf = fe(r.field, {Rat(0), Rat(1, 2)});
        return Vec2(half * v.x - shalf * v.y, shalf * v.x + half * v.y);
    };
    std::vector<Vec2> base = {v2(0, 0, 0, 0), v2(2, 0, 0, 0), v2(Rat(3, 2), 0, 0, Rat(1, 2)),
                              v2(Rat(1, 2), 0, 0, Rat(1, 2))};
    for (int k = 0; k < 6; ++k) {
        Prototile t;
        t.label = "H" + std::to_string(k);
        for (auto v : base) {
            for (int j = 0; j < k; ++j) v = rot60(v);
            t.poly.v.push_back(v);
        }
        r.tiles.push_back(t);
    }
    r.expansion = Mat2::scalar(fe(r.field, {Rat(2)}));
    std::vector<std::pair<int, Vec2>> c0 = {{0, v2(1, 0, 0, 0)},
                                            {4, v2(1, 0, 0, 1)},
                                            {2, v2(4, 0, 0, 0)},
                                            {3, v2(3, 0, 0, 1)}};
    r.children.resize(6);
    for (int k = 0; k < 6; ++k)
        for (auto [p, t] : c0) {
            for (int j = 0; j < k; ++j) t = rot60(t);
            r.children[k].push_back({(p + k) % 6, t});
        }
    return r;
}

using Maker = SubstitutionRule (*)();

const std::map<std::string, Maker>& registry() {
    static std::map<std::string, Maker> reg = {
        {"fibonacci", fibonacci},   {"silver-mean", silver_mean},
        {"doubling", single_doubling}, {"solenoid", solenoid},
        {"chair", chair},           {"half-hex", half_hex},
    };
    return reg;
}

} // namespace

std::vector<std::string> builtin_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
}

bool is_builtin(const std::string& name) { return registry().count(name) > 0; }

SubstitutionRule builtin_rule(const std::string& name) {
    auto it = registry().find(name);
    if (it == registry().end()) throw RuleError("unknown builtin rule '" + name + "'");
    return it->second();
}

std::string builtin_rule_text(const std::string& name) {
    return serialize_rule(builtin_rule(name));
}

} // namespace aptk
