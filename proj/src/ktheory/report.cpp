#include "ktheory/report.hpp"

#include <json.hpp>

#include <sstream>

namespace aptk {

using nlohmann::json;

namespace {

json group_json(const LimitGroup& g) {
    json j;
    switch (g.status) {
        case LimitGroup::Status::classified: j["status"] = "classified"; break;
        case LimitGroup::Status::rank_bounds_only: j["status"] = "rank-bounds-only"; break;
        case LimitGroup::Status::unresolved_presentation:
            j["status"] = "unresolved-presentation";
            break;
    }
    j["free_rank"] = g.free_rank;
    json inv = json::array();
    for (const auto& [m, k] : g.inverted) inv.push_back({{"m", m.get_str()}, {"mult", k}});
    j["inverted"] = inv;
    json tor = json::array();
    for (const auto& d : g.torsion) tor.push_back(d.get_str());
    j["torsion"] = tor;
    j["free_rank_lower"] = g.free_rank_lower;
    j["divisible_rank_upper"] = g.divisible_rank_upper;
    j["splitting_verified"] = g.splitting_verified;
    if (!g.note.empty()) j["note"] = g.note;
    j["display"] = g.str();
    return j;
}

LimitGroup group_from_json(const json& j) {
    LimitGroup g;
    std::string st = j.at("status").get<std::string>();
    if (st == "classified") g.status = LimitGroup::Status::classified;
    else if (st == "rank-bounds-only") g.status = LimitGroup::Status::rank_bounds_only;
    else g.status = LimitGroup::Status::unresolved_presentation;
    g.free_rank = j.at("free_rank").get<long>();
    for (const auto& e : j.at("inverted"))
        g.inverted.push_back({Int(e.at("m").get<std::string>()), e.at("mult").get<int>()});
    for (const auto& e : j.at("torsion")) g.torsion.push_back(Int(e.get<std::string>()));
    g.free_rank_lower = j.at("free_rank_lower").get<long>();
    g.divisible_rank_upper = j.at("divisible_rank_upper").get<long>();
    g.splitting_verified = j.at("splitting_verified").get<bool>();
    if (j.contains("note")) g.note = j.at("note").get<std::string>();
    return g;
}

json matrix_json(const IntMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).get_str());
        rows.push_back(row);
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

IntMatrix matrix_from_json(const json& j) {
    int r = j.at("rows").get<int>(), c = j.at("cols").get<int>();
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < c; ++k) m.at(i, k) = Int(j.at("entries")[i][k].get<std::string>());
    return m;
}

std::string route_name(KTheoryReport::Af1Route r) {
    switch (r) {
        case KTheoryReport::Af1Route::hyperplane: return "hyperplane";
        case KTheoryReport::Af1Route::splits_completely: return "splits-completely";
        case KTheoryReport::Af1Route::determinant_one: return "determinant-one";
        default: return "none";
    }
}

KTheoryReport::Af1Route route_from_name(const std::string& s) {
    if (s == "hyperplane") return KTheoryReport::Af1Route::hyperplane;
    if (s == "splits-completely") return KTheoryReport::Af1Route::splits_completely;
    if (s == "determinant-one") return KTheoryReport::Af1Route::determinant_one;
    return KTheoryReport::Af1Route::none;
}

std::string quotient_display(const LimitGroup& num, const LimitGroup& den) {
    if (den.is_trivial()) return num.str();
    return "(" + num.str() + ") / (" + den.str() + ")";
}

} // namespace

std::string render_report(const KTheoryReport& r, ReportFormat format) {
    if (format == ReportFormat::structured) {
        json j;
        j["schema"] = "ap-ktheory-report/1";
        j["rule"] = r.rule_name;
        j["dimension"] = r.dimension;
        j["collar_power"] = r.collar_power;
        j["components"] = r.components;
        j["diagnostics"] = {{"cp", r.diag.cp},     {"pi", r.diag.pi}, {"l_pi", r.diag.l_pi},
                            {"ft", r.diag.ft},     {"l_ft", r.diag.l_ft}};
        j["groups"] = {{"k0_af", group_json(r.k0_af)},     {"k0_af_u", group_json(r.k0_af_u)},
                       {"k0_u", group_json(r.k0_u)},       {"k1_u", group_json(r.k1_u)},
                       {"k1_af_u", group_json(r.k1_af_u)}, {"h0", group_json(r.h0)},
                       {"h1", group_json(r.h1)},           {"h2", group_json(r.h2)},
                       {"ev_image", group_json(r.ev_image)}};
        j["hyperplane_ok"] = r.hyperplane_ok;
        j["af1_route"] = route_name(r.af1_route);
        if (r.k0_af1) j["k0_af1"] = group_json(*r.k0_af1);
        if (r.th_image) j["th_image"] = group_json(*r.th_image);
        json spec = json::array();
        for (const auto& [name, mult] : r.sigma2_spectrum)
            spec.push_back({{"factor", name}, {"mult", mult}});
        j["sigma_top_spectrum"] = spec;
        json tw = json::array();
        for (const auto& d : r.torsion_witness) tw.push_back(d.get_str());
        j["torsion_witness"] = tw;
        j["ev_matrix"] = matrix_json(r.ev_matrix);
        json evr = json::array();
        for (const auto& row : r.ev_rows) {
            json e = json::array();
            for (const auto& s : row.entries) e.push_back(s);
            evr.push_back({{"root", row.root}, {"entries", e}});
        }
        j["ev_rows"] = evr;
        if (!r.note.empty()) j["note"] = r.note;
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "rule: " << r.rule_name << "  (dimension " << r.dimension << ", collar power "
       << r.collar_power << ")\n";
    if (r.dimension == 2) {
        os << "diagnostics: CP=" << r.diag.cp << " PI=" << r.diag.pi << " L(PI)=" << r.diag.l_pi
           << " FT=" << r.diag.ft << " L(FT)=" << r.diag.l_ft << "\n";
        os << "hyperplane condition: " << (r.hyperplane_ok ? "holds" : "fails") << "\n";
    } else {
        os << "diagnostics: collared tiles=" << r.diag.ft << " vertices=" << r.diag.l_ft << "\n";
    }
    if (r.components != 1)
        os << "warning: substitution has " << r.components
           << " components (non-primitive override)\n";
    os << "\nsix-term exact sequence:\n";
    os << "  K0(AF;u) --ev--> K0(AF) --i*--> K0(u)\n";
    os << "     ^                              |\n";
    os << "     |                              v\n";
    os << "   K1(u) <-------- 0 <-------- K1(AF;u)\n\n";
    auto flag = [](const LimitGroup& g) {
        return g.splitting_verified ? "" : "   [splitting assumed]";
    };
    os << "  K0(AF;u) = " << r.k0_af_u.str() << flag(r.k0_af_u) << "\n";
    os << "  K0(AF)   = " << r.k0_af.str() << flag(r.k0_af) << "\n";
    os << "  K0(u)    = " << r.k0_u.str() << flag(r.k0_u) << "\n";
    os << "  K1(u)    = " << r.k1_u.str() << flag(r.k1_u) << "\n";
    os << "  K1(AF;u) = " << r.k1_af_u.str() << "\n";
    os << "\ncohomology:\n";
    os << "  H^0 = " << r.h0.str() << "\n";
    os << "  H^1 = " << r.h1.str() << "\n";
    if (r.dimension == 2) os << "  H^2 = " << r.h2.str() << "\n";
    os << "\nevaluation map:\n";
    os << "  image ev = " << r.ev_image.str() << "\n";
    os << "  K0(u) = K0(AF)/image ev";
    if (r.dimension == 2) os << " + Z^" << r.h0.rank() << "";
    os << "\n";
    if (!r.ev_rows.empty()) {
        os << "  ev (eigenbasis) = [";
        for (size_t i = 0; i < r.ev_rows.size(); ++i) {
            os << (i ? "," : "") << "[";
            for (size_t j = 0; j < r.ev_rows[i].entries.size(); ++j)
                os << (j ? "," : "") << r.ev_rows[i].entries[j];
            os << "]";
        }
        os << "]\n";
    }
    if (!r.torsion_witness.empty()) {
        os << "  torsion witness (finite-level invariant factors):";
        for (const auto& d : r.torsion_witness) os << " " << d.get_str();
        os << "\n";
    }
    if (r.dimension == 2) {
        os << "\n1-skeleton AF identification: " << route_name(r.af1_route) << "\n";
        if (r.k0_af1 && r.th_image)
            os << "  K0(AF;u) = K0(AF^(1))/th(K0(AF^(0))) = "
               << quotient_display(*r.k0_af1, *r.th_image) << "\n";
        os << "\nsigma^T spectrum on top cells (eventual kernel removed):";
        for (const auto& [name, mult] : r.sigma2_spectrum) {
            os << " (" << name << ")";
            if (mult > 1) os << "^" << mult;
        }
        os << "\n";
    }
    if (!r.note.empty()) os << "\nnote: " << r.note << "\n";
    return os.str();
}

KTheoryReport report_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.at("schema").get<std::string>() != "ap-ktheory-report/1")
        throw std::runtime_error("unknown report schema");
    KTheoryReport r;
    r.rule_name = j.at("rule").get<std::string>();
    r.dimension = j.at("dimension").get<int>();
    r.collar_power = j.at("collar_power").get<int>();
    r.components = j.at("components").get<int>();
    const auto& d = j.at("diagnostics");
    r.diag.dimension = r.dimension;
    r.diag.cp = d.at("cp").get<long>();
    r.diag.pi = d.at("pi").get<long>();
    r.diag.l_pi = d.at("l_pi").get<long>();
    r.diag.ft = d.at("ft").get<long>();
    r.diag.l_ft = d.at("l_ft").get<long>();
    const auto& g = j.at("groups");
    r.k0_af = group_from_json(g.at("k0_af"));
    r.k0_af_u = group_from_json(g.at("k0_af_u"));
    r.k0_u = group_from_json(g.at("k0_u"));
    r.k1_u = group_from_json(g.at("k1_u"));
    r.k1_af_u = group_from_json(g.at("k1_af_u"));
    r.h0 = group_from_json(g.at("h0"));
    r.h1 = group_from_json(g.at("h1"));
    r.h2 = group_from_json(g.at("h2"));
    r.ev_image = group_from_json(g.at("ev_image"));
    r.hyperplane_ok = j.at("hyperplane_ok").get<bool>();
    r.af1_route = route_from_name(j.at("af1_route").get<std::string>());
    if (j.contains("k0_af1")) r.k0_af1 = group_from_json(j.at("k0_af1"));
    if (j.contains("th_image")) r.th_image = group_from_json(j.at("th_image"));
    for (const auto& e : j.at("sigma_top_spectrum"))
        r.sigma2_spectrum.push_back({e.at("factor").get<std::string>(), e.at("mult").get<int>()});
    for (const auto& e : j.at("torsion_witness")) r.torsion_witness.push_back(Int(e.get<std::string>()));
    r.ev_matrix = matrix_from_json(j.at("ev_matrix"));
    for (const auto& e : j.at("ev_rows")) {
        EvRow row;
        row.root = e.at("root").get<std::string>();
        for (const auto& s : e.at("entries")) row.entries.push_back(s.get<std::string>());
        r.ev_rows.push_back(row);
    }
    if (j.contains("note")) r.note = j.at("note").get<std::string>();
    return r;
}

std::string table_header() {
    return "rule                 CP     PI     L(PI)  FT     L(FT)  K0(u)                          K1(u)";
}

std::string table_row(const KTheoryReport& r) {
    std::ostringstream os;
    auto pad = [&](const std::string& s, size_t w) {
        os << s;
        for (size_t i = s.size(); i < w; ++i) os << ' ';
    };
    pad(r.rule_name, 21);
    pad(std::to_string(r.diag.cp), 7);
    pad(std::to_string(r.diag.pi), 7);
    pad(std::to_string(r.diag.l_pi), 7);
    pad(std::to_string(r.diag.ft), 7);
    pad(std::to_string(r.diag.l_ft), 7);
    pad(r.k0_u.str(), 31);
    os << r.k1_u.str();
    return os.str();
}

std::string dump_complex(const ApComplex& cx, const CochainSystem& cs) {
    json j;
    j["schema"] = "ap-complex-dump/1";
    j["dimension"] = cs.dimension;
    j["collar_power"] = cx.cr.power;
    json tiles = json::array();
    for (int i = 0; i < cx.cr.count(); ++i) {
        json t;
        t["label"] = cx.crule.tiles[i].label;
        if (cs.dimension == 2) {
            json poly = json::array();
            for (const auto& v : cx.crule.tiles[i].poly.v)
                poly.push_back(json::array({v.x.str(), v.y.str()}));
            t["vertices"] = poly;
            json collar = json::array();
            for (const auto& pt : cx.cr.tiles[i].collar.tiles)
                collar.push_back({{"tile", cx.cr.base.tiles[pt.proto].label},
                                  {"translation", json::array({pt.t.x.str(), pt.t.y.str()})}});
            t["collar"] = collar;
        }
        tiles.push_back(t);
    }
    j["two_cells"] = tiles;
    if (cs.dimension == 2) {
        json ones = json::array();
        for (const auto& e : cx.one_cells) {
            json o;
            o["hyperplane"] = e.hyperplane;
            o["head"] = e.head;
            o["tail"] = e.tail;
            json pts = json::array();
            for (const auto& p : cx.arcs[e.rep_tile][e.rep_arc].pts)
                pts.push_back(json::array({p.x.str(), p.y.str()}));
            o["rep_tile"] = e.rep_tile;
            o["rep_points"] = pts;
            o["orientation"] = e.orientation;
            json mem = json::array();
            for (const auto& m : e.members)
                mem.push_back({{"tile", m.tile}, {"arc", m.arc}, {"sign", m.sign}});
            o["members"] = mem;
            ones.push_back(o);
        }
        j["one_cells"] = ones;
        j["zero_cells"] = cx.c0();
        j["delta1"] = matrix_json(cs.delta1);
        j["sigma2"] = matrix_json(cs.sigma2);
    }
    j["delta0"] = matrix_json(cs.delta0);
    j["sigma0"] = matrix_json(cs.sigma0);
    j["sigma1"] = matrix_json(cs.sigma1);
    return j.dump(2) + "\n";
}

} // namespace aptk
