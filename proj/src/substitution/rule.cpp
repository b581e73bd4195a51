#include "substitution/rule.hpp"

#include <algorithm>
#include <sstream>

namespace aptk {

int SubstitutionRule::label_index(const std::string& l) const {
    for (size_t i = 0; i < tiles.size(); ++i)
        if (tiles[i].label == l) return int(i);
    return -1;
}

IntMatrix SubstitutionRule::abelianization() const {
    int n = prototile_count();
    IntMatrix m(n, n);
    if (dimension == 1) {
        for (int i = 0; i < n; ++i)
            for (int c : words[i]) m.at(i, c) += 1;
    } else {
        for (int i = 0; i < n; ++i)
            for (const auto& ch : children[i]) m.at(i, ch.proto) += 1;
    }
    return m;
}

static IntMatrix bool_mul(const IntMatrix& a, const IntMatrix& b) {
    int n = a.rows();
    IntMatrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (a.at(i, k) != 0)
                for (int j = 0; j < n; ++j)
                    if (b.at(k, j) != 0) r.at(i, j) = 1;
    return r;
}

bool SubstitutionRule::is_primitive() const {
    int n = prototile_count();
    IntMatrix m = abelianization();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m.at(i, j) != 0) m.at(i, j) = 1;
    IntMatrix p = m;
    long cap = long(n) * n + 1;
    for (long k = 1; k <= cap; ++k) {
        bool all = true;
        for (int i = 0; i < n && all; ++i)
            for (int j = 0; j < n; ++j)
                if (p.at(i, j) == 0) { all = false; break; }
        if (all) return true;
        p = bool_mul(p, m);
    }
    return false;
}

int SubstitutionRule::component_count() const {
    // strongly connected components of the abelianization digraph (Tarjan)
    int n = prototile_count();
    IntMatrix m = abelianization();
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m.at(i, j) != 0) adj[i].push_back(j);
    std::vector<int> idx(n, -1), low(n, 0), stk;
    std::vector<bool> on(n, false);
    int counter = 0, comps = 0;
    std::vector<std::tuple<int, size_t>> call;
    for (int s = 0; s < n; ++s) {
        if (idx[s] >= 0) continue;
        call.push_back({s, 0});
        while (!call.empty()) {
            auto& [u, ei] = call.back();
            if (ei == 0) {
                idx[u] = low[u] = counter++;
                stk.push_back(u);
                on[u] = true;
            }
            if (ei < adj[u].size()) {
                int w = adj[u][ei++];
                if (idx[w] < 0) call.push_back({w, 0});
                else if (on[w]) low[u] = std::min(low[u], idx[w]);
            } else {
                if (low[u] == idx[u]) {
                    ++comps;
                    while (true) {
                        int w = stk.back();
                        stk.pop_back();
                        on[w] = false;
                        if (w == u) break;
                    }
                }
                int fin = u;
                call.pop_back();
                if (!call.empty()) {
                    int parent = std::get<0>(call.back());
                    low[parent] = std::min(low[parent], low[fin]);
                }
            }
        }
    }
    return comps;
}

void SubstitutionRule::validate(bool allow_nonprimitive) const {
    int n = prototile_count();
    if (n == 0) throw RuleError("no prototiles");
    std::set<std::string> seen;
    for (const auto& t : tiles) {
        if (!seen.insert(t.label).second)
            throw RuleError("duplicate prototile label '" + t.label + "'");
    }
    if (dimension == 1) {
        if (int(words.size()) != n) throw RuleError("children missing for some prototile");
        for (int i = 0; i < n; ++i) {
            if (words[i].empty())
                throw RuleError("empty replacement word for '" + tiles[i].label + "'");
            for (int c : words[i])
                if (c < 0 || c >= n) throw RuleError("unknown child label");
        }
    } else {
        if (!field) throw RuleError("missing field");
        if (int(children.size()) != n) throw RuleError("children missing for some prototile");
        for (int i = 0; i < n; ++i) {
            const Polygon& p = tiles[i].poly;
            if (p.size() < 3) throw RuleError("prototile '" + tiles[i].label + "' is degenerate");
            if (!p.is_simple())
                throw RuleError("prototile '" + tiles[i].label + "' is not a simple polygon");
            if (!p.is_ccw())
                throw RuleError("prototile '" + tiles[i].label + "' is not counterclockwise");
        }
        // expansion strictly expanding: E^T E - I positive definite, det > 0
        FieldElement a = expansion.a, b = expansion.b, c = expansion.c, d = expansion.d;
        FieldElement g11 = a * a + c * c, g12 = a * b + c * d, g22 = b * b + d * d;
        FieldElement one = FieldElement::one(field);
        FieldElement tr = (g11 - one) + (g22 - one);
        FieldElement dt = (g11 - one) * (g22 - one) - g12 * g12;
        if (!(tr.sign() > 0 && dt.sign() > 0))
            throw RuleError("expansion is not strictly expanding");
        if (expansion.det().sign() <= 0)
            throw RuleError("expansion must be orientation preserving");
        // children tile the expanded prototile exactly
        for (int i = 0; i < n; ++i) {
            Polygon big = tiles[i].poly.mapped(expansion);
            FieldElement big2 = big.area2();
            FieldElement sum = FieldElement::zero(field);
            for (const auto& ch : children[i]) {
                if (ch.proto < 0 || ch.proto >= n) throw RuleError("unknown child label");
                sum = sum + tiles[ch.proto].poly.area2();
            }
            if (sum != big2 && !(sum - big2).is_zero())
                throw RuleError("children of '" + tiles[i].label +
                                "' do not match the expanded area");
            // containment + pairwise disjoint interiors via exact overlap areas
            auto bigtris = triangulate(big);
            for (size_t ci = 0; ci < children[i].size(); ++ci) {
                Polygon cp = tiles[children[i][ci].proto].poly.translated(children[i][ci].t);
                FieldElement inside = FieldElement::zero(field);
                auto ctris = triangulate(cp);
                for (const auto& t1 : ctris)
                    for (const auto& t2 : bigtris) inside = inside + tri_tri_overlap2(t1, t2);
                if (inside != cp.area2() && !(inside - cp.area2()).is_zero()) {
                    std::ostringstream os;
                    os << "child " << ci << " (" << tiles[children[i][ci].proto].label
                       << ") of '" << tiles[i].label << "' leaves the expanded support";
                    throw RuleError(os.str());
                }
                for (size_t cj = ci + 1; cj < children[i].size(); ++cj) {
                    Polygon cq =
                        tiles[children[i][cj].proto].poly.translated(children[i][cj].t);
                    FieldElement ov = polygon_overlap2(cp, cq);
                    if (!ov.is_zero()) {
                        std::ostringstream os;
                        os << "children " << ci << " and " << cj << " of '" << tiles[i].label
                           << "' overlap";
                        throw RuleError(os.str());
                    }
                }
            }
        }
    }
    if (!allow_nonprimitive && !is_primitive())
        throw RuleError("substitution is not primitive");
}

SubstitutionRule SubstitutionRule::power(int n) const {
    SubstitutionRule r = *this;
    if (n == 1) return r;
    if (dimension == 1) {
        for (int step = 1; step < n; ++step) {
            std::vector<std::vector<int>> nw(words.size());
            for (size_t i = 0; i < words.size(); ++i)
                for (int c : r.words[i])
                    for (int cc : words[c]) nw[i].push_back(cc);
            r.words = nw;
        }
        return r;
    }
    for (int step = 1; step < n; ++step) {
        std::vector<std::vector<ChildPlacement>> nc(tiles.size());
        for (size_t i = 0; i < tiles.size(); ++i)
            for (const auto& ch : r.children[i])
                for (const auto& gg : children[ch.proto])
                    nc[i].push_back({gg.proto, expansion.apply(ch.t) + gg.t});
        r.children = nc;
        r.expansion = expansion.times(r.expansion);
    }
    return r;
}

Patch substitute(const SubstitutionRule& rule, const Patch& p, int n) {
    Patch cur = p;
    for (int step = 0; step < n; ++step) {
        Patch nxt;
        for (const auto& pt : cur.tiles) {
            Vec2 base = rule.expansion.apply(pt.t);
            for (const auto& ch : rule.children[pt.proto])
                nxt.tiles.push_back({ch.proto, base + ch.t});
        }
        cur = std::move(nxt);
    }
    return cur;
}

Patch canonicalize(const SubstitutionRule& rule, const Patch& p) {
    if (p.tiles.empty()) return p;
    bool have = false;
    Vec2 best;
    for (const auto& pt : p.tiles)
        for (const auto& v : rule.tiles[pt.proto].poly.v) {
            Vec2 w = v + pt.t;
            if (!have || w.real_compare(best) < 0) { best = w; have = true; }
        }
    Patch out;
    for (const auto& pt : p.tiles) out.tiles.push_back({pt.proto, pt.t - best});
    std::sort(out.tiles.begin(), out.tiles.end(), [](const PlacedTile& a, const PlacedTile& b) {
        if (a.proto != b.proto) return a.proto < b.proto;
        return a.t.key_compare(b.t) < 0;
    });
    return out;
}

std::string patch_key(const Patch& p) {
    std::ostringstream os;
    for (const auto& t : p.tiles) os << t.proto << "@" << t.t.str() << ";";
    return os.str();
}

SharedBoundary shared_boundary(const SubstitutionRule& rule, const PlacedTile& s,
                               const PlacedTile& t) {
    SharedBoundary out;
    const Polygon& ps = rule.tiles[s.proto].poly;
    const Polygon& pt = rule.tiles[t.proto].poly;
    int ns = ps.size(), nt = pt.size();
    std::vector<Vec2> raw_points;
    for (int i = 0; i < ns; ++i) {
        Vec2 a = ps.v[i] + s.t, b = ps.v[(i + 1) % ns] + s.t;
        for (int j = 0; j < nt; ++j) {
            Vec2 c = pt.v[j] + t.t, d = pt.v[(j + 1) % nt] + t.t;
            SegMeet m = segment_meet(a, b, c, d);
            if (!m.any) continue;
            if (m.is_segment) out.segments.push_back({m.p0, m.p1});
            else raw_points.push_back(m.p0);
        }
    }
    // keep only touch points not covered by a shared segment
    for (const auto& p : raw_points) {
        bool covered = false;
        for (const auto& [a, b] : out.segments)
            if (on_segment(p, a, b)) { covered = true; break; }
        if (!covered) {
            bool dup = false;
            for (const auto& q : out.points)
                if (q == p) { dup = true; break; }
            if (!dup) out.points.push_back(p);
        }
    }
    return out;
}

// free (one-sided) boundary pieces of a patch
std::vector<FreePiece> free_boundary(const SubstitutionRule& rule, const Patch& p) {
    struct Edge {
        Vec2 a, b;     // endpoints in the plane
        Vec2 dir;      // b - a
        size_t tile;
    };
    std::vector<Edge> edges;
    for (size_t ti = 0; ti < p.tiles.size(); ++ti) {
        const Polygon& poly = rule.tiles[p.tiles[ti].proto].poly;
        int n = poly.size();
        for (int i = 0; i < n; ++i)
            edges.push_back({poly.v[i] + p.tiles[ti].t, poly.v[(i + 1) % n] + p.tiles[ti].t,
                             poly.v[(i + 1) % n] - poly.v[i], ti});
    }
    // bucket edges by supporting line so only collinear edges are compared
    auto line_key = [](const Edge& e) {
        // normal (dy, -dx) scaled so its first nonzero coefficient is one,
        // plus the offset of the line
        FieldElement nx = e.dir.y, ny = -e.dir.x;
        FieldElement scale = nx.is_zero() ? ny : nx;
        nx = nx / scale;
        ny = ny / scale;
        FieldElement c = nx * e.a.x + ny * e.a.y;
        return nx.str() + "|" + ny.str() + "|" + c.str();
    };
    std::vector<std::string> keys(edges.size());
    std::map<std::string, std::vector<size_t>> buckets;
    for (size_t i = 0; i < edges.size(); ++i) {
        keys[i] = line_key(edges[i]);
        buckets[keys[i]].push_back(i);
    }
    std::vector<FreePiece> out;
    for (size_t ei = 0; ei < edges.size(); ++ei) {
        const Edge& e = edges[ei];
        // collect covered parameter intervals [t0, t1] along e (dot with dir)
        std::vector<std::pair<FieldElement, FieldElement>> cover;
        for (size_t ej : buckets[keys[ei]]) {
            if (edges[ej].tile == e.tile) continue;
            const Edge& f = edges[ej];
            // opposite orientation along the same line covers e
            if (dot(e.dir, f.dir).sign() >= 0) continue;
            SegMeet m = segment_meet(e.a, e.b, f.a, f.b);
            if (!m.any || !m.is_segment) continue;
            FieldElement t0 = dot(m.p0 - e.a, e.dir);
            FieldElement t1 = dot(m.p1 - e.a, e.dir);
            if ((t1 - t0).sign() < 0) std::swap(t0, t1);
            cover.push_back({t0, t1});
        }
        FieldElement lo = dot(e.a - e.a, e.dir);
        FieldElement hi = dot(e.b - e.a, e.dir);
        // subtract covered intervals from [lo, hi]
        std::sort(cover.begin(), cover.end(),
                  [](const auto& x, const auto& y) { return (x.first - y.first).sign() < 0; });
        FieldElement cur = lo;
        auto emit = [&](const FieldElement& t0, const FieldElement& t1) {
            if ((t1 - t0).sign() <= 0) return;
            // convert parameters back to points
            FieldElement len2 = dot(e.dir, e.dir);
            Vec2 p0(e.a.x + e.dir.x * (t0 / len2), e.a.y + e.dir.y * (t0 / len2));
            Vec2 p1(e.a.x + e.dir.x * (t1 / len2), e.a.y + e.dir.y * (t1 / len2));
            out.push_back({p0, p1});
        };
        for (const auto& [t0, t1] : cover) {
            if ((t0 - cur).sign() > 0) emit(cur, t0);
            if ((t1 - cur).sign() > 0) cur = t1;
        }
        emit(cur, hi);
    }
    return out;
}

} // namespace aptk
