#include "apcomplex/complex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace aptk {

namespace {

// weighted union-find with a {+-1} relative sign
struct SignedUF {
    std::vector<int> parent;
    std::vector<int> sign;  // sign relative to parent
    explicit SignedUF(int n) : parent(n), sign(n, 1) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    std::pair<int, int> find(int x) {
        if (parent[x] == x) return {x, 1};
        auto [r, s] = find(parent[x]);
        parent[x] = r;
        sign[x] *= s;
        return {r, sign[x]};
    }
    // declare: sign(a) = rel * sign(b)
    void unite(int a, int b, int rel) {
        auto [ra, sa] = find(a);
        auto [rb, sb] = find(b);
        if (ra == rb) {
            if (sa != rel * sb)
                throw std::runtime_error("inconsistent orientation identification");
            return;
        }
        parent[ra] = rb;
        sign[ra] = sa * rel * sb;  // so that find(a) yields rel*sb
    }
};

struct PlainUF {
    std::vector<int> parent;
    explicit PlainUF(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::string vec_key(const Vec2& v) { return v.str(); }

// maximal connected chains of a contact's shared segments; returns the set of
// chain endpoints plus isolated touch points (in plane coordinates)
std::vector<Vec2> contact_cut_points(const SharedBoundary& sb) {
    std::vector<Vec2> out;
    // endpoint degree count over the shared segments
    std::vector<Vec2> endpoints;
    std::vector<int> degree;
    auto note = [&](const Vec2& p) {
        for (size_t i = 0; i < endpoints.size(); ++i)
            if (endpoints[i] == p) { ++degree[i]; return; }
        endpoints.push_back(p);
        degree.push_back(1);
    };
    for (const auto& [a, b] : sb.segments) {
        note(a);
        note(b);
    }
    bool any_deg1 = false;
    for (size_t i = 0; i < endpoints.size(); ++i)
        if (degree[i] == 1) { out.push_back(endpoints[i]); any_deg1 = true; }
    if (!any_deg1 && !sb.segments.empty()) {
        // closed chain of shared segments; cut deterministically
        Vec2 best = sb.segments[0].first;
        for (const auto& [a, b] : sb.segments) {
            if (a.real_compare(best) < 0) best = a;
            if (b.real_compare(best) < 0) best = b;
        }
        out.push_back(best);
    }
    for (const auto& p : sb.points) out.push_back(p);
    return out;
}

bool point_in_shared(const Vec2& p, const SharedBoundary& sb) {
    for (const auto& [a, b] : sb.segments)
        if (on_segment(p, a, b)) return true;
    for (const auto& q : sb.points)
        if (q == p) return true;
    return false;
}

} // namespace

bool BoundaryArc::straight() const {
    for (size_t i = 2; i < pts.size(); ++i)
        if (orient_sign(pts[0], pts[1], pts[i]) != 0) return false;
    return true;
}

int ApComplex::c1() const {
    return crule.dimension == 2 ? int(one_cells.size()) : cr.count();
}

bool ApComplex::hyperplane_ok() const {
    for (const auto& e : one_cells)
        if (!e.hyperplane) return false;
    return true;
}

namespace {

struct Builder {
    const CollaredRule& cr;
    const BuildOptions& opt;
    SubstitutionRule R;  // collared rule
    ApComplex cx;

    Builder(const CollaredRule& cr_, const BuildOptions& opt_) : cr(cr_), opt(opt_) {
        cx.cr = cr;
        cx.crule = cr.as_rule();
        R = cx.crule;
    }

    // cut point sets per prototile, canonical keyed
    std::vector<std::map<std::string, Vec2>> cuts;
    std::vector<SharedBoundary> contact_sb;  // aligned with cx.contacts

    bool add_cut(int tile, const Vec2& p) {
        auto k = vec_key(p);
        auto [it, fresh] = cuts[tile].emplace(k, p);
        (void)it;
        return fresh;
    }

    void compute_cuts() {
        int n = R.prototile_count();
        cuts.assign(n, {});
        cx.contacts = adjacency_closure(R, opt.adjacency);
        contact_sb.clear();
        for (const auto& c : cx.contacts) {
            PlacedTile A{c.a, Vec2::zero(R.field)};
            PlacedTile B{c.b, c.t};
            contact_sb.push_back(shared_boundary(R, A, B));
        }
        // seed: chain endpoints and touch points of every contact
        for (size_t ci = 0; ci < cx.contacts.size(); ++ci) {
            for (const auto& p : contact_cut_points(contact_sb[ci])) {
                add_cut(cx.contacts[ci].a, p);
                add_cut(cx.contacts[ci].b, p - cx.contacts[ci].t);
            }
        }
        for (int i = 0; i < n; ++i)
            if (cuts[i].empty())
                throw RuleError("prototile with no boundary identification points");
        // closure: transfer across contacts and under substitution images
        for (int round = 0; round < opt.max_refine_rounds; ++round) {
            bool grew = false;
            for (size_t ci = 0; ci < cx.contacts.size(); ++ci) {
                const Contact& c = cx.contacts[ci];
                const SharedBoundary& sb = contact_sb[ci];
                for (const auto& [k, p] : std::map<std::string, Vec2>(cuts[c.a]))
                    if (point_in_shared(p, sb)) grew |= add_cut(c.b, p - c.t);
                for (const auto& [k, p] : std::map<std::string, Vec2>(cuts[c.b]))
                    if (point_in_shared(p + c.t, sb)) grew |= add_cut(c.a, p + c.t);
            }
            // substitution images of cut points land on child boundaries
            for (int i = 0; i < n; ++i) {
                for (const auto& [k, p] : std::map<std::string, Vec2>(cuts[i])) {
                    Vec2 ep = R.expansion.apply(p);
                    for (const auto& ch : R.children[i]) {
                        Vec2 local = ep - ch.t;
                        const Polygon& poly = R.tiles[ch.proto].poly;
                        if (poly.locate(local) == 0) grew |= add_cut(ch.proto, local);
                    }
                }
            }
            if (!grew) return;
        }
        throw RuleError("boundary refinement did not stabilize");
    }

    // order cut points along the CCW boundary and form arcs
    void build_arcs() {
        int n = R.prototile_count();
        cx.arcs.assign(n, {});
        for (int i = 0; i < n; ++i) {
            const Polygon& poly = R.tiles[i].poly;
            int m = poly.size();
            // nodes: polygon vertices plus cut points on each edge, in order
            struct Node {
                Vec2 p;
                bool cut;
            };
            std::vector<Node> cycle;
            for (int e = 0; e < m; ++e) {
                const Vec2& a = poly.v[e];
                const Vec2& b = poly.v[(e + 1) % m];
                Vec2 dir = b - a;
                std::vector<std::pair<FieldElement, Vec2>> interior;
                bool corner_cut = false;
                for (const auto& [k, p] : cuts[i]) {
                    if (p == a) { corner_cut = true; continue; }
                    if (p == b) continue;
                    if (on_segment(p, a, b)) interior.push_back({dot(p - a, dir), p});
                }
                std::sort(interior.begin(), interior.end(),
                          [](const auto& x, const auto& y) {
                              return (x.first - y.first).sign() < 0;
                          });
                cycle.push_back({a, corner_cut});
                for (auto& [t, p] : interior) cycle.push_back({p, true});
            }
            // rotate so the cycle starts at a cut
            int start = -1;
            for (size_t j = 0; j < cycle.size(); ++j)
                if (cycle[j].cut) { start = int(j); break; }
            if (start < 0) throw RuleError("prototile boundary carries no 0-cell");
            std::rotate(cycle.begin(), cycle.begin() + start, cycle.end());
            // arcs between consecutive cuts
            BoundaryArc cur;
            cur.pts.push_back(cycle[0].p);
            for (size_t j = 1; j <= cycle.size(); ++j) {
                const Node& nd = cycle[j % cycle.size()];
                cur.pts.push_back(nd.p);
                if (j == cycle.size() || nd.cut) {
                    cx.arcs[i].push_back(cur);
                    cur = BoundaryArc{};
                    cur.pts.push_back(nd.p);
                }
            }
        }
    }

    // does arc (all its segments) lie inside the shared set of this contact?
    static bool arc_in_shared(const BoundaryArc& arc, const Vec2& shift,
                              const SharedBoundary& sb) {
        for (size_t s = 0; s + 1 < arc.pts.size(); ++s) {
            Vec2 a = arc.pts[s] + shift, b = arc.pts[s + 1] + shift;
            bool covered = false;
            for (const auto& [u, v] : sb.segments)
                if (on_segment(a, u, v) && on_segment(b, u, v)) { covered = true; break; }
            if (!covered) return false;
        }
        return true;
    }

    void identify_cells() {
        int n = R.prototile_count();
        // flat arc indexing
        std::vector<int> arc_base(n + 1, 0);
        for (int i = 0; i < n; ++i) arc_base[i + 1] = arc_base[i] + int(cx.arcs[i].size());
        int total_arcs = arc_base[n];
        SignedUF uf1(total_arcs);
        // 0-cell points flat indexing
        std::vector<std::vector<Vec2>> pts(n);
        std::vector<std::map<std::string, int>> pt_idx(n);
        std::vector<int> pt_base(n + 1, 0);
        for (int i = 0; i < n; ++i) {
            for (const auto& [k, p] : cuts[i]) {
                pt_idx[i][k] = int(pts[i].size());
                pts[i].push_back(p);
            }
            pt_base[i + 1] = pt_base[i] + int(pts[i].size());
        }
        PlainUF uf0(pt_base[n]);

        auto match_arc = [&](int tile, const Vec2& first, const Vec2& second) -> int {
            // arc of `tile` whose first two CCW points are (first, second)
            for (size_t a = 0; a < cx.arcs[tile].size(); ++a) {
                const auto& pp = cx.arcs[tile][a].pts;
                if (pp.front() == first && pp[1] == second) return int(a);
            }
            return -1;
        };

        for (size_t ci = 0; ci < cx.contacts.size(); ++ci) {
            const Contact& c = cx.contacts[ci];
            const SharedBoundary& sb = contact_sb[ci];
            // glue arcs: an arc of a inside the shared set matches a reversed
            // arc of b at the same plane position
            for (size_t a = 0; a < cx.arcs[c.a].size(); ++a) {
                const BoundaryArc& arc = cx.arcs[c.a][a];
                if (!arc_in_shared(arc, Vec2::zero(R.field), sb)) continue;
                // candidate in b: starts at arc.back - t, second point arc[k-2] - t
                Vec2 f = arc.pts.back() - c.t;
                Vec2 s = arc.pts[arc.pts.size() - 2] - c.t;
                int bidx = match_arc(c.b, f, s);
                if (bidx < 0)
                    throw RuleError("inconsistent boundary identification (arc mismatch)");
                uf1.unite(arc_base[c.a] + int(a), arc_base[c.b] + bidx, -1);
            }
            // glue 0-cells
            for (const auto& [k, p] : cuts[c.a]) {
                if (!point_in_shared(p, sb)) continue;
                auto it = pt_idx[c.b].find(vec_key(p - c.t));
                if (it == pt_idx[c.b].end())
                    throw RuleError("inconsistent boundary identification (point mismatch)");
                uf0.unite(pt_base[c.a] + pt_idx[c.a][k], pt_base[c.b] + it->second);
            }
        }
        // assemble 0-cells
        std::map<int, int> zid;
        for (int i = 0; i < n; ++i)
            for (size_t j = 0; j < pts[i].size(); ++j) {
                int flat = pt_base[i] + int(j);
                int root = uf0.find(flat);
                if (!zid.count(root)) {
                    int id = int(cx.zero_cells.size());
                    zid[root] = id;
                    ZeroCell z;
                    z.rep_tile = i;
                    z.rep_point = pts[i][j];
                    cx.zero_cells.push_back(z);
                }
                cx.zero_cells[zid[root]].members.push_back({i, pts[i][j]});
            }
        auto zero_of = [&](int tile, const Vec2& p) {
            auto it = pt_idx[tile].find(vec_key(p));
            if (it == pt_idx[tile].end()) throw std::runtime_error("missing 0-cell point");
            return zid[uf0.find(pt_base[tile] + it->second)];
        };
        // assemble 1-cells
        std::map<int, int> eid;
        cx.arc_class.assign(n, {});
        for (int i = 0; i < n; ++i) cx.arc_class[i].assign(cx.arcs[i].size(), -1);
        for (int i = 0; i < n; ++i)
            for (size_t a = 0; a < cx.arcs[i].size(); ++a) {
                int flat = arc_base[i] + int(a);
                auto [root, sgn] = uf1.find(flat);
                if (!eid.count(root)) {
                    int id = int(cx.one_cells.size());
                    eid[root] = id;
                    OneCell e;
                    cx.one_cells.push_back(e);
                }
                OneCell& e = cx.one_cells[eid[root]];
                e.members.push_back({i, int(a), sgn});
                cx.arc_class[i][int(a)] = eid[root];
            }
        // representatives, orientation, heads/tails, hyperplane flags
        for (auto& e : cx.one_cells) {
            // deterministic representative: smallest (tile, arc)
            std::sort(e.members.begin(), e.members.end(),
                      [](const OneCell::Member& x, const OneCell::Member& y) {
                          if (x.tile != y.tile) return x.tile < y.tile;
                          return x.arc < y.arc;
                      });
            // normalize signs so the representative has sign +1
            int s0 = e.members.front().sign;
            for (auto& m : e.members) m.sign *= s0;
            e.rep_tile = e.members.front().tile;
            e.rep_arc = e.members.front().arc;
            const BoundaryArc& rep = cx.arcs[e.rep_tile][e.rep_arc];
            e.hyperplane = rep.straight();
            // canonical class orientation
            int orient = 1;
            if (e.hyperplane) {
                Vec2 d = rep.pts.back() - rep.pts.front();
                int sx = d.x.sign();
                bool lexpos = sx > 0 || (sx == 0 && d.y.sign() > 0);
                orient = lexpos ? 1 : -1;
            } else {
                int c = rep.pts.front().real_compare(rep.pts.back());
                orient = (c == 0) ? 1 : (c < 0 ? 1 : -1);
            }
            e.orientation = orient;
            for (auto& m : e.members) m.sign *= orient;
            // ends in class direction
            const Vec2& fwd_head = (orient == 1) ? rep.pts.back() : rep.pts.front();
            const Vec2& fwd_tail = (orient == 1) ? rep.pts.front() : rep.pts.back();
            e.head = zero_of(e.rep_tile, fwd_head);
            e.tail = zero_of(e.rep_tile, fwd_tail);
        }
        // boundary walks
        cx.boundary_walk.assign(n, {});
        for (int i = 0; i < n; ++i)
            for (size_t a = 0; a < cx.arcs[i].size(); ++a) {
                int id = cx.arc_class[i][int(a)];
                int msign = 0;
                for (const auto& m : cx.one_cells[id].members)
                    if (m.tile == i && m.arc == int(a)) { msign = m.sign; break; }
                cx.boundary_walk[i].push_back({id, msign});
            }
    }

    void build_1d() {
        int n = cr.count();
        // collared adjacency = legal pairs of the collared rule
        auto pairs = legal_windows(R, 2);
        PlainUF uf(2 * n);  // 2i = tail/left end, 2i+1 = head/right end
        for (const auto& w : pairs) uf.unite(2 * w[0] + 1, 2 * w[1]);
        std::map<int, int> zid;
        cx.ends_1d.resize(n);
        for (int i = 0; i < n; ++i) {
            for (int end = 0; end < 2; ++end) {
                int root = uf.find(2 * i + end);
                if (!zid.count(root)) {
                    int id = int(cx.zero_cells.size());
                    zid[root] = id;
                    ZeroCell z;
                    z.rep_tile = i;
                    cx.zero_cells.push_back(z);
                }
                cx.zero_cells[zid[root]].members.push_back({2 * i + end, Vec2{}});
            }
            cx.ends_1d[i] = {zid[uf.find(2 * i)], zid[uf.find(2 * i + 1)]};
        }
    }

    ApComplex run() {
        if (R.dimension == 1) {
            build_1d();
            return std::move(cx);
        }
        compute_cuts();
        build_arcs();
        identify_cells();
        if (opt.orientation_seed != 0) reorient(cx, opt.orientation_seed);
        return std::move(cx);
    }
};

} // namespace

ApComplex build_complex(const CollaredRule& cr, const BuildOptions& opt) {
    Builder b(cr, opt);
    return b.run();
}

void reorient(ApComplex& cx, unsigned seed) {
    // xorshift; flips are the free orientation choices
    unsigned long long s = seed ? seed : 0x9e3779b97f4a7c15ULL;
    auto rnd = [&]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    };
    for (size_t i = 0; i < cx.one_cells.size(); ++i) {
        if (rnd() & 1) {
            OneCell& e = cx.one_cells[i];
            e.orientation = -e.orientation;
            for (auto& m : e.members) m.sign = -m.sign;
            std::swap(e.head, e.tail);
        }
    }
    // rebuild boundary walks
    for (size_t t = 0; t < cx.boundary_walk.size(); ++t)
        for (size_t a = 0; a < cx.boundary_walk[t].size(); ++a) {
            int id = cx.boundary_walk[t][a].first;
            for (const auto& m : cx.one_cells[id].members)
                if (m.tile == int(t) && m.arc == int(a)) {
                    cx.boundary_walk[t][a].second = m.sign;
                    break;
                }
        }
}

namespace {

// canonical key for a vertex star: the patch of collared tiles around a point,
// anchored at the point
std::string star_key(Patch p) {
    std::sort(p.tiles.begin(), p.tiles.end(), [](const PlacedTile& a, const PlacedTile& b) {
        if (a.proto != b.proto) return a.proto < b.proto;
        return a.t.key_compare(b.t) < 0;
    });
    return patch_key(p);
}

// the tiles of a patch whose closure contains q, anchored at q
Patch star_at(const SubstitutionRule& R, const Patch& p, const Vec2& q) {
    Patch s;
    for (const auto& t : p.tiles) {
        const Polygon poly = R.tiles[t.proto].poly.translated(t.t);
        if (poly.locate(q) >= 0) s.tiles.push_back({t.proto, t.t - q});
    }
    return s;
}

bool on_free(const Vec2& q, const std::vector<FreePiece>& free) {
    for (const auto& f : free)
        if (on_segment(q, f.a, f.b)) return true;
    return false;
}

} // namespace

// Distinct vertex stars of the collared tiling (loops of partial isometries
// surround 0-cells one star apiece). Complete enumeration: a vertex either
// projects into a tile interior or an edge interior one level down (then its
// star is readable among the substitution children), or it is the image of a
// vertex (substitution closure).
long ApComplex::count_vertex_stars() const {
    const SubstitutionRule& R = crule;
    std::map<std::string, Patch> stars;
    auto consider = [&](const Patch& big, const std::vector<FreePiece>& free, const Vec2& q) {
        if (on_free(q, free)) return;
        Patch s = star_at(R, big, q);
        stars.emplace(star_key(s), s);
    };
    // all vertex points of a prototile (0-cell members)
    std::vector<std::vector<Vec2>> vpts(R.prototile_count());
    for (const auto& z : zero_cells)
        for (const auto& [tile, p] : z.members) vpts[tile].push_back(p);
    // (A) vertices interior to one substituted collared tile
    for (int i = 0; i < R.prototile_count(); ++i) {
        Patch single;
        single.tiles.push_back({i, Vec2::zero(R.field)});
        Patch big = substitute(R, single, 1);
        auto free = free_boundary(R, big);
        for (const auto& ch : big.tiles)
            for (const auto& p : vpts[ch.proto]) consider(big, free, p + ch.t);
    }
    // (B) vertices interior to a substituted edge contact
    for (const auto& c : contacts) {
        if (!c.edge) continue;
        Patch pair;
        pair.tiles.push_back({c.a, Vec2::zero(R.field)});
        pair.tiles.push_back({c.b, c.t});
        Patch big = substitute(R, pair, 1);
        auto free = free_boundary(R, big);
        for (const auto& ch : big.tiles)
            for (const auto& p : vpts[ch.proto]) consider(big, free, p + ch.t);
    }
    // (C) substitution closure of the star set
    std::deque<std::string> work;
    for (const auto& [k, s] : stars) work.push_back(k);
    size_t guard = 0;
    while (!work.empty()) {
        if (++guard > 100000) throw std::runtime_error("vertex star closure runaway");
        Patch s = stars.at(work.front());
        work.pop_front();
        Patch big = substitute(R, s, 1);
        auto free = free_boundary(R, big);
        Vec2 origin = Vec2::zero(R.field);
        if (on_free(origin, free))
            throw std::runtime_error("substituted star does not surround its vertex");
        Patch img = star_at(R, big, origin);
        auto key = star_key(img);
        if (!stars.count(key)) {
            stars.emplace(key, img);
            work.push_back(key);
        }
    }
    return long(stars.size());
}

Diagnostics ApComplex::diagnostics() const {
    Diagnostics d;
    d.dimension = crule.dimension;
    if (crule.dimension == 1) {
        d.ft = cr.count();
        d.l_ft = c0();
        return d;
    }
    d.cp = c2();
    d.ft = c1();
    d.l_ft = c0();
    // partial isometries: connected shared pieces over all edge contacts
    // (one doubly-pointed adjacency pattern per piece)
    for (const auto& c : contacts) {
        if (!c.edge) continue;
        PlacedTile A{c.a, Vec2::zero(crule.field)};
        PlacedTile B{c.b, c.t};
        SharedBoundary sb = shared_boundary(crule, A, B);
        // count maximal chains among the shared segments
        std::vector<Vec2> ep;
        std::vector<int> deg;
        auto note = [&](const Vec2& p) {
            for (size_t i = 0; i < ep.size(); ++i)
                if (ep[i] == p) { ++deg[i]; return; }
            ep.push_back(p);
            deg.push_back(1);
        };
        for (const auto& [a, b] : sb.segments) { note(a); note(b); }
        int d1 = 0;
        for (int x : deg)
            if (x == 1) ++d1;
        d.pi += d1 > 0 ? d1 / 2 : (sb.segments.empty() ? 0 : 1);
    }
    d.l_pi = count_vertex_stars();
    return d;
}

} // namespace aptk
