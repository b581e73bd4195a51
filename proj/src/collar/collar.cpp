#include "collar/collar.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace aptk {

namespace {

std::string collar_key_2d(int core, const Patch& collar) {
    std::ostringstream os;
    os << core << "#" << patch_key(collar);
    return os.str();
}

// sort tiles of a collar patch deterministically (already anchored at core)
Patch sorted_patch(Patch p) {
    std::sort(p.tiles.begin(), p.tiles.end(), [](const PlacedTile& a, const PlacedTile& b) {
        if (a.proto != b.proto) return a.proto < b.proto;
        return a.t.key_compare(b.t) < 0;
    });
    return p;
}

bool touches_free(const SubstitutionRule& rule, const PlacedTile& t,
                  const std::vector<FreePiece>& free) {
    Polygon q = rule.tiles[t.proto].poly.translated(t.t);
    for (const auto& f : free)
        if (segment_meets_polygon(f.a, f.b, q)) return true;
    return false;
}

Patch star_of(const SubstitutionRule& rule, const Patch& p, size_t center) {
    Patch out;
    const PlacedTile& c = p.tiles[center];
    for (size_t i = 0; i < p.tiles.size(); ++i) {
        if (i == center) continue;
        if (shared_boundary(rule, c, p.tiles[i]).any())
            out.tiles.push_back({p.tiles[i].proto, p.tiles[i].t - c.t});
    }
    out.tiles.push_back({c.proto, Vec2::zero(rule.field)});
    return sorted_patch(std::move(out));
}

CollaredRule collar_1d(const SubstitutionRule& rule) {
    CollaredRule cr;
    cr.base = rule;
    cr.power = 1;
    auto windows = legal_windows(rule, 3);
    std::vector<std::array<int, 3>> tiles;
    for (const auto& w : windows) tiles.push_back({w[0], w[1], w[2]});
    // canonical order: (core label, left label, right label)
    std::sort(tiles.begin(), tiles.end(), [&](const auto& a, const auto& b) {
        const auto& la = rule.tiles[a[1]].label;
        const auto& lb = rule.tiles[b[1]].label;
        if (la != lb) return la < lb;
        const auto& lla = rule.tiles[a[0]].label;
        const auto& llb = rule.tiles[b[0]].label;
        if (lla != llb) return lla < llb;
        return rule.tiles[a[2]].label < rule.tiles[b[2]].label;
    });
    std::map<std::string, int> index;
    for (const auto& t : tiles) {
        CollaredTile ct;
        ct.core = t[1];
        ct.left = t[0];
        ct.right = t[2];
        ct.key = rule.tiles[t[0]].label + "|" + rule.tiles[t[1]].label + "|" +
                 rule.tiles[t[2]].label;
        index[ct.key] = int(cr.tiles.size());
        cr.tiles.push_back(ct);
    }
    cr.words.resize(cr.tiles.size());
    for (size_t i = 0; i < cr.tiles.size(); ++i) {
        const auto& ct = cr.tiles[i];
        std::vector<int> patch;
        for (int c : rule.words[ct.left]) patch.push_back(c);
        size_t core_begin = patch.size();
        for (int c : rule.words[ct.core]) patch.push_back(c);
        size_t core_end = patch.size();
        for (int c : rule.words[ct.right]) patch.push_back(c);
        for (size_t pos = core_begin; pos < core_end; ++pos) {
            std::string key = rule.tiles[patch[pos - 1]].label + "|" +
                              rule.tiles[patch[pos]].label + "|" +
                              rule.tiles[patch[pos + 1]].label;
            auto it = index.find(key);
            if (it == index.end())
                throw RuleError("collared child outside the legal window set: " + key);
            cr.words[i].push_back(it->second);
        }
    }
    cr.children.resize(cr.tiles.size());
    return cr;
}

struct CollarFail {};  // retry with a higher power

CollaredRule collar_2d_at_power(const SubstitutionRule& rule, int m,
                                const CollarOptions& opt) {
    CollaredRule cr;
    cr.base = rule;
    cr.power = m;
    std::map<std::string, int> index;
    std::deque<int> work;
    auto intern = [&](int core, Patch collar) {
        std::string key = collar_key_2d(core, collar);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        CollaredTile ct;
        ct.core = core;
        ct.collar = std::move(collar);
        ct.key = key;
        int id = int(cr.tiles.size());
        index[key] = id;
        cr.tiles.push_back(std::move(ct));
        cr.children.emplace_back();
        work.push_back(id);
        if (int(cr.tiles.size()) > opt.max_tiles)
            throw RuleError("collared prototile cap exceeded");
        return id;
    };
    // seeds: complete stars inside growing supertiles, from every prototile
    bool seeded = false;
    for (int k = 1; k <= opt.max_seed_level && !seeded; ++k) {
        for (int p0 = 0; p0 < rule.prototile_count(); ++p0) {
            Patch single;
            single.tiles.push_back({p0, Vec2::zero(rule.field)});
            Patch big = substitute(rule, single, k);
            auto free = free_boundary(rule, big);
            for (size_t i = 0; i < big.tiles.size(); ++i) {
                if (touches_free(rule, big.tiles[i], free)) continue;
                intern(big.tiles[i].proto, star_of(rule, big, i));
                seeded = true;
            }
        }
    }
    if (!seeded) throw RuleError("no complete collar found inside seed supertiles");
    // closure under the induced substitution
    while (!work.empty()) {
        int id = work.front();
        work.pop_front();
        Patch big = substitute(rule, cr.tiles[id].collar, m);
        auto free = free_boundary(rule, big);
        Patch core_single;
        core_single.tiles.push_back({cr.tiles[id].core, Vec2::zero(rule.field)});
        Patch core_children = substitute(rule, core_single, m);
        for (const auto& c : core_children.tiles) {
            // locate c inside big
            size_t ci = big.tiles.size();
            for (size_t i = 0; i < big.tiles.size(); ++i)
                if (big.tiles[i].proto == c.proto && big.tiles[i].t == c.t) { ci = i; break; }
            if (ci == big.tiles.size())
                throw std::runtime_error("core child missing from substituted collar");
            if (touches_free(rule, c, free)) throw CollarFail{};
            int child = intern(c.proto, star_of(rule, big, ci));
            cr.children[id].push_back({child, c.t});
        }
    }
    // canonical order: (core label, collar key); remap indices
    std::vector<int> order(cr.tiles.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& la = rule.tiles[cr.tiles[a].core].label;
        const auto& lb = rule.tiles[cr.tiles[b].core].label;
        if (la != lb) return la < lb;
        return cr.tiles[a].key < cr.tiles[b].key;
    });
    std::vector<int> rank(order.size());
    for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = int(i);
    CollaredRule out;
    out.base = cr.base;
    out.power = m;
    out.tiles.resize(cr.tiles.size());
    out.children.resize(cr.tiles.size());
    for (size_t i = 0; i < order.size(); ++i) {
        out.tiles[i] = cr.tiles[order[i]];
        for (auto [c, t] : cr.children[order[i]]) out.children[i].push_back({rank[c], t});
    }
    return out;
}

} // namespace

CollaredRule collar_rule(const SubstitutionRule& rule, const CollarOptions& opt) {
    if (rule.dimension == 1) return collar_1d(rule);
    for (int m = 1; m <= opt.max_power; ++m) {
        try {
            return collar_2d_at_power(rule, m, opt);
        } catch (const CollarFail&) {
            continue;
        }
    }
    throw RuleError("induced collared substitution not well-defined up to the power cap");
}

IntMatrix collared_matrix(const CollaredRule& cr) {
    int n = cr.count();
    IntMatrix m(n, n);
    if (cr.base.dimension == 1) {
        for (int i = 0; i < n; ++i)
            for (int c : cr.words[i]) m.at(i, c) += 1;
    } else {
        for (int i = 0; i < n; ++i)
            for (const auto& [c, t] : cr.children[i]) m.at(i, c) += 1;
    }
    return m;
}

SubstitutionRule CollaredRule::as_rule() const {
    SubstitutionRule r;
    r.dimension = base.dimension;
    r.field = base.field;
    r.name = base.name + ":collared";
    int n = count();
    for (int i = 0; i < n; ++i) {
        Prototile t;
        std::ostringstream os;
        if (base.dimension == 1)
            os << "(" << base.tiles[tiles[i].left].label << ")"
               << base.tiles[tiles[i].core].label << "("
               << base.tiles[tiles[i].right].label << ")";
        else
            os << base.tiles[tiles[i].core].label << "#" << i;
        t.label = os.str();
        if (base.dimension == 2) t.poly = base.tiles[tiles[i].core].poly;
        r.tiles.push_back(std::move(t));
    }
    if (base.dimension == 1) {
        r.words = words;
    } else {
        SubstitutionRule powered = base.power(power);
        r.expansion = powered.expansion;
        r.children.resize(n);
        for (int i = 0; i < n; ++i)
            for (const auto& [c, t] : children[i]) r.children[i].push_back({c, t});
    }
    return r;
}

} // namespace aptk
