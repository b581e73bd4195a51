#include "substitution/geometry.hpp"

namespace aptk {

FieldElement cross(const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int orient_sign(const Vec2& o, const Vec2& a, const Vec2& b) { return cross(o, a, b).sign(); }

FieldElement dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

bool on_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
    if (orient_sign(a, b, p) != 0) return false;
    // p between a and b: (p-a).(p-b) <= 0
    return dot(p - a, p - b).sign() <= 0;
}

SegMeet segment_meet(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    SegMeet out;
    int o1 = orient_sign(a, b, c), o2 = orient_sign(a, b, d);
    if (o1 == 0 && o2 == 0) {
        // collinear; check the supporting lines coincide and overlap
        // parametrize by dot with the direction of ab
        Vec2 dir = b - a;
        if (dir.is_zero()) {
            if (on_segment(a, c, d)) { out.any = true; out.p0 = out.p1 = a; }
            return out;
        }
        // c,d must be on line ab (o1 == o2 == 0 already says so)
        FieldElement ta = dot(a - a, dir), tb = dot(b - a, dir);
        FieldElement tc = dot(c - a, dir), td = dot(d - a, dir);
        // order each pair
        Vec2 p_lo = a, p_hi = b;
        FieldElement lo = ta, hi = tb;
        if ((hi - lo).sign() < 0) { std::swap(lo, hi); std::swap(p_lo, p_hi); }
        Vec2 q_lo = c, q_hi = d;
        FieldElement qlo = tc, qhi = td;
        if ((qhi - qlo).sign() < 0) { std::swap(qlo, qhi); std::swap(q_lo, q_hi); }
        // overlap interval [max(lo,qlo), min(hi,qhi)]
        Vec2 s0 = p_lo;
        FieldElement t0 = lo;
        if ((qlo - lo).sign() > 0) { s0 = q_lo; t0 = qlo; }
        Vec2 s1 = p_hi;
        FieldElement t1 = hi;
        if ((qhi - hi).sign() < 0) { s1 = q_hi; t1 = qhi; }
        int cmp = (t1 - t0).sign();
        if (cmp < 0) return out;
        out.any = true;
        out.p0 = s0;
        out.p1 = s1;
        out.is_segment = cmp > 0;
        return out;
    }
    // tiles with disjoint interiors cannot cross properly; the only other
    // meets are single touch points (an endpoint on the other segment)
    for (const Vec2& p : {c, d})
        if (on_segment(p, a, b)) { out.any = true; out.p0 = out.p1 = p; return out; }
    for (const Vec2& p : {a, b})
        if (on_segment(p, c, d)) { out.any = true; out.p0 = out.p1 = p; return out; }
    return out;
}

FieldElement Polygon::area2() const {
    FieldPtr f = v.front().x.field();
    FieldElement s = FieldElement::zero(f);
    for (size_t i = 0; i < v.size(); ++i) {
        const Vec2& p = v[i];
        const Vec2& q = v[(i + 1) % v.size()];
        s = s + (p.x * q.y - q.x * p.y);
    }
    return s;
}

bool Polygon::is_ccw() const { return area2().sign() > 0; }

bool Polygon::is_simple() const {
    int n = size();
    if (n < 3) return false;
    for (int i = 0; i < n; ++i) {
        if (v[i] == v[(i + 1) % n]) return false;  // repeated vertex
        for (int j = i + 1; j < n; ++j) {
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            SegMeet m = segment_meet(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]);
            if (!m.any) continue;
            if (m.is_segment) return false;
            if (adjacent) {
                // shared vertex only
                Vec2 shared = (j == i + 1) ? v[j] : v[i];
                if (!(m.p0 == shared)) return false;
            } else {
                return false;
            }
        }
    }
    return true;
}

Polygon Polygon::translated(const Vec2& t) const {
    Polygon p;
    p.v.reserve(v.size());
    for (const auto& q : v) p.v.push_back(q + t);
    return p;
}

Polygon Polygon::mapped(const Mat2& m) const {
    Polygon p;
    p.v.reserve(v.size());
    for (const auto& q : v) p.v.push_back(m.apply(q));
    return p;
}

int Polygon::locate(const Vec2& p) const {
    int n = size();
    for (int i = 0; i < n; ++i)
        if (on_segment(p, v[i], v[(i + 1) % n])) return 0;
    // rightward ray crossing count, half-open edge rule, exact arithmetic
    int cross_count = 0;
    for (int i = 0; i < n; ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % n];
        bool a_above = (a.y - p.y).sign() > 0;
        bool b_above = (b.y - p.y).sign() > 0;
        if (a_above == b_above) continue;
        FieldElement dy = b.y - a.y;  // nonzero when the edge straddles
        FieldElement num = (a.x - p.x) * dy + (p.y - a.y) * (b.x - a.x);
        if (num.sign() * dy.sign() > 0) ++cross_count;
    }
    return (cross_count % 2) ? 1 : -1;
}

std::vector<std::array<Vec2, 3>> triangulate(const Polygon& poly) {
    std::vector<Vec2> w = poly.v;
    std::vector<std::array<Vec2, 3>> out;
    while (w.size() > 3) {
        int n = int(w.size());
        bool clipped = false;
        for (int i = 0; i < n; ++i) {
            const Vec2& a = w[(i + n - 1) % n];
            const Vec2& b = w[i];
            const Vec2& c = w[(i + 1) % n];
            if (orient_sign(a, b, c) <= 0) continue;  // reflex or flat
            bool ear = true;
            for (int j = 0; j < n && ear; ++j) {
                if (j == (i + n - 1) % n || j == i || j == (i + 1) % n) continue;
                // point strictly inside the candidate ear?
                int s1 = orient_sign(a, b, w[j]);
                int s2 = orient_sign(b, c, w[j]);
                int s3 = orient_sign(c, a, w[j]);
                if (s1 >= 0 && s2 >= 0 && s3 >= 0) ear = false;
            }
            if (!ear) continue;
            out.push_back({a, b, c});
            w.erase(w.begin() + i);
            clipped = true;
            break;
        }
        if (!clipped) throw std::runtime_error("triangulation failed (polygon not simple?)");
    }
    if (w.size() == 3) out.push_back({w[0], w[1], w[2]});
    return out;
}

// clip convex polygon (CCW) by half plane left of a->b
static std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const Vec2& a,
                                        const Vec2& b) {
    std::vector<Vec2> out;
    int n = int(poly.size());
    for (int i = 0; i < n; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % n];
        int sp = orient_sign(a, b, p);
        int sq = orient_sign(a, b, q);
        if (sp >= 0) out.push_back(p);
        if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
            // intersection of pq with line ab
            FieldElement cp = cross(a, b, p);
            FieldElement cq = cross(a, b, q);
            FieldElement t = cp / (cp - cq);
            Vec2 d = q - p;
            out.push_back(Vec2(p.x + t * d.x, p.y + t * d.y));
        }
    }
    return out;
}

FieldElement tri_tri_overlap2(const std::array<Vec2, 3>& t1, const std::array<Vec2, 3>& t2) {
    std::vector<Vec2> poly(t1.begin(), t1.end());
    for (int i = 0; i < 3 && !poly.empty(); ++i)
        poly = clip_halfplane(poly, t2[i], t2[(i + 1) % 3]);
    FieldPtr f = t1[0].x.field();
    FieldElement s = FieldElement::zero(f);
    if (poly.size() < 3) return s;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % poly.size()];
        s = s + (p.x * q.y - q.x * p.y);
    }
    return s;
}

FieldElement polygon_overlap2(const Polygon& a, const Polygon& b) {
    auto ta = triangulate(a);
    auto tb = triangulate(b);
    FieldPtr f = a.v.front().x.field();
    FieldElement s = FieldElement::zero(f);
    for (const auto& x : ta)
        for (const auto& y : tb) s = s + tri_tri_overlap2(x, y);
    return s;
}

bool segment_meets_polygon(const Vec2& a, const Vec2& b, const Polygon& q) {
    int n = q.size();
    for (int i = 0; i < n; ++i)
        if (segment_meet(a, b, q.v[i], q.v[(i + 1) % n]).any) return true;
    // fully inside?
    return q.locate(a) > 0;
}

} // namespace aptk
