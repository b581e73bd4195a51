#include "substitution/parse.hpp"

#include <json.hpp>

#include <sstream>

namespace aptk {

using nlohmann::json;

namespace {

void position_of(const std::string& text, size_t byte, int& line, int& col) {
    line = 1;
    col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') { ++line; col = 1; }
        else ++col;
    }
}

Rat parse_rat(const json& j) {
    if (j.is_number_integer()) return Rat(long(j.get<long long>()));
    if (!j.is_string()) throw RuleError("expected a rational as string or integer");
    Rat r;
    if (r.set_str(j.get<std::string>(), 10) != 0)
        throw RuleError("bad rational literal '" + j.get<std::string>() + "'");
    r.canonicalize();
    return r;
}

FieldElement parse_fe(const json& j, const FieldPtr& f) {
    std::vector<Rat> c(f->degree());
    if (!j.is_array()) {
        c[0] = parse_rat(j);
        return FieldElement(f, std::move(c));
    }
    if (int(j.size()) > f->degree()) throw RuleError("field element has too many coefficients");
    for (size_t i = 0; i < j.size(); ++i) c[i] = parse_rat(j[i]);
    return FieldElement(f, std::move(c));
}

Vec2 parse_vec(const json& j, const FieldPtr& f) {
    if (!j.is_array() || j.size() != 2) throw RuleError("expected a 2-vector");
    return Vec2(parse_fe(j[0], f), parse_fe(j[1], f));
}

json rat_json(const Rat& r) { return r.get_str(); }

json fe_json(const FieldElement& e) {
    json a = json::array();
    for (const auto& c : e.coeffs()) a.push_back(rat_json(c));
    return a;
}

json vec_json(const Vec2& v) { return json::array({fe_json(v.x), fe_json(v.y)}); }

} // namespace

SubstitutionRule parse_rule(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        int line, col;
        position_of(text, e.byte ? e.byte - 1 : 0, line, col);
        std::ostringstream os;
        os << "syntax error at line " << line << ", column " << col << ": " << e.what();
        throw ParseError(os.str(), line, col);
    }
    SubstitutionRule r;
    r.name = j.value("name", std::string());
    if (!j.contains("dimension")) throw RuleError("missing 'dimension'");
    r.dimension = j["dimension"].get<int>();
    if (r.dimension != 1 && r.dimension != 2) throw RuleError("dimension must be 1 or 2");
    if (r.dimension == 1) {
        r.field = FieldSpec::rationals();
        if (!j.contains("prototiles")) throw RuleError("missing 'prototiles'");
        for (const auto& p : j["prototiles"]) {
            Prototile t;
            t.label = p.at("label").get<std::string>();
            r.tiles.push_back(t);
        }
        if (!j.contains("children")) throw RuleError("missing 'children'");
        r.words.resize(r.tiles.size());
        for (size_t i = 0; i < r.tiles.size(); ++i) {
            const auto& lbl = r.tiles[i].label;
            if (!j["children"].contains(lbl))
                throw RuleError("no replacement word for '" + lbl + "'");
            for (const auto& c : j["children"][lbl]) {
                int k = r.label_index(c.get<std::string>());
                if (k < 0) throw RuleError("unknown label in word for '" + lbl + "'");
                r.words[i].push_back(k);
            }
        }
        return r;
    }
    if (!j.contains("field")) throw RuleError("missing 'field'");
    {
        const auto& fj = j["field"];
        ZPoly mp;
        for (const auto& c : fj.at("minimal_polynomial"))
            mp.push_back(Int(parse_rat(c).get_num()));
        Rat lo = parse_rat(fj.at("isolating_interval").at(0));
        Rat hi = parse_rat(fj.at("isolating_interval").at(1));
        r.field = std::make_shared<FieldSpec>(mp, lo, hi);
    }
    if (!j.contains("prototiles")) throw RuleError("missing 'prototiles'");
    for (const auto& p : j["prototiles"]) {
        Prototile t;
        t.label = p.at("label").get<std::string>();
        for (const auto& vj : p.at("vertices")) t.poly.v.push_back(parse_vec(vj, r.field));
        r.tiles.push_back(std::move(t));
    }
    if (!j.contains("expansion")) throw RuleError("missing 'expansion'");
    {
        const auto& ej = j["expansion"];
        bool is_matrix = ej.is_array() && ej.size() == 2 && ej[0].is_array() &&
                         ej[0].size() == 2 && ej[0][0].is_array();
        if (is_matrix) {
            r.expansion = Mat2{parse_fe(ej[0][0], r.field), parse_fe(ej[0][1], r.field),
                               parse_fe(ej[1][0], r.field), parse_fe(ej[1][1], r.field)};
        } else {
            r.expansion = Mat2::scalar(parse_fe(ej, r.field));
        }
    }
    if (!j.contains("children")) throw RuleError("missing 'children'");
    r.children.resize(r.tiles.size());
    for (size_t i = 0; i < r.tiles.size(); ++i) {
        const auto& lbl = r.tiles[i].label;
        if (!j["children"].contains(lbl)) throw RuleError("no children for '" + lbl + "'");
        for (const auto& c : j["children"][lbl]) {
            ChildPlacement ch;
            ch.proto = r.label_index(c.at("label").get<std::string>());
            if (ch.proto < 0) throw RuleError("unknown child label under '" + lbl + "'");
            ch.t = parse_vec(c.at("translation"), r.field);
            r.children[i].push_back(std::move(ch));
        }
    }
    return r;
}

std::string serialize_rule(const SubstitutionRule& r) {
    json j;
    if (!r.name.empty()) j["name"] = r.name;
    j["dimension"] = r.dimension;
    if (r.dimension == 1) {
        j["prototiles"] = json::array();
        for (const auto& t : r.tiles) j["prototiles"].push_back({{"label", t.label}});
        json ch = json::object();
        for (size_t i = 0; i < r.tiles.size(); ++i) {
            json w = json::array();
            for (int c : r.words[i]) w.push_back(r.tiles[c].label);
            ch[r.tiles[i].label] = w;
        }
        j["children"] = ch;
        return j.dump(2) + "\n";
    }
    {
        json fj;
        json mp = json::array();
        for (const auto& c : r.field->minpoly()) mp.push_back(c.get_str());
        fj["minimal_polynomial"] = mp;
        fj["isolating_interval"] = json::array({r.field->lo().get_str(), r.field->hi().get_str()});
        j["field"] = fj;
    }
    j["prototiles"] = json::array();
    for (const auto& t : r.tiles) {
        json vj = json::array();
        for (const auto& v : t.poly.v) vj.push_back(vec_json(v));
        j["prototiles"].push_back({{"label", t.label}, {"vertices", vj}});
    }
    // scalar expansions serialize as a bare coefficient vector
    if (r.expansion.b.is_zero() && r.expansion.c.is_zero() && r.expansion.a == r.expansion.d) {
        j["expansion"] = fe_json(r.expansion.a);
    } else {
        j["expansion"] = json::array(
            {json::array({fe_json(r.expansion.a), fe_json(r.expansion.b)}),
             json::array({fe_json(r.expansion.c), fe_json(r.expansion.d)})});
    }
    json ch = json::object();
    for (size_t i = 0; i < r.tiles.size(); ++i) {
        json cj = json::array();
        for (const auto& c : r.children[i])
            cj.push_back({{"label", r.tiles[c.proto].label}, {"translation", vec_json(c.t)}});
        ch[r.tiles[i].label] = cj;
    }
    j["children"] = ch;
    return j.dump(2) + "\n";
}

} // namespace aptk
