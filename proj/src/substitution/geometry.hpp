#ifndef APTK_SUBSTITUTION_GEOMETRY_HPP
#define APTK_SUBSTITUTION_GEOMETRY_HPP

#include "exactlin/numberfield.hpp"

#include <array>
#include <optional>
#include <vector>

namespace aptk {

struct Vec2 {
    FieldElement x, y;

    Vec2() = default;
    Vec2(FieldElement x_, FieldElement y_) : x(std::move(x_)), y(std::move(y_)) {}
    static Vec2 zero(const FieldPtr& f) {
        return Vec2(FieldElement::zero(f), FieldElement::zero(f));
    }

    Vec2 operator+(const Vec2& o) const { return Vec2(x + o.x, y + o.y); }
    Vec2 operator-(const Vec2& o) const { return Vec2(x - o.x, y - o.y); }
    Vec2 operator-() const { return Vec2(-x, -y); }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Vec2& o) const { return !(*this == o); }
    bool is_zero() const { return x.is_zero() && y.is_zero(); }

    // coefficient order, total, cheap; canonical keys only
    int key_compare(const Vec2& o) const {
        int c = x.key_compare(o.x);
        return c ? c : y.key_compare(o.y);
    }
    // order under the real embedding: x first, then y
    int real_compare(const Vec2& o) const {
        int c = (x - o.x).sign();
        return c ? c : (y - o.y).sign();
    }
    std::string str() const { return x.str() + ":" + y.str(); }
};

struct Mat2 {
    FieldElement a, b, c, d;  // [[a, b], [c, d]], column action
    Vec2 apply(const Vec2& v) const { return Vec2(a * v.x + b * v.y, c * v.x + d * v.y); }
    Mat2 times(const Mat2& o) const {
        return Mat2{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    FieldElement det() const { return a * d - b * c; }
    static Mat2 scalar(const FieldElement& s) {
        auto z = FieldElement::zero(s.field());
        return Mat2{s, z, z, s};
    }
};

FieldElement cross(const Vec2& o, const Vec2& a, const Vec2& b);
int orient_sign(const Vec2& o, const Vec2& a, const Vec2& b);
FieldElement dot(const Vec2& a, const Vec2& b);

// is p on the closed segment [a, b]?
bool on_segment(const Vec2& p, const Vec2& a, const Vec2& b);

// intersection of closed segments restricted to the degenerate cases arising
// between tiles with disjoint interiors: a shared collinear subsegment or a
// single touch point.
struct SegMeet {
    bool any = false;
    bool is_segment = false;
    Vec2 p0, p1;  // subsegment endpoints (p0 == p1 when a point)
};
SegMeet segment_meet(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

struct Polygon {
    std::vector<Vec2> v;  // CCW, simple

    int size() const { return int(v.size()); }
    FieldElement area2() const;  // twice the signed area
    bool is_ccw() const;
    bool is_simple() const;
    Polygon translated(const Vec2& t) const;
    Polygon mapped(const Mat2& m) const;
    // exact point location: 1 inside, 0 on boundary, -1 outside
    int locate(const Vec2& p) const;
};

// triangulation by ear clipping (exact predicates); polygon must be simple CCW
std::vector<std::array<Vec2, 3>> triangulate(const Polygon& poly);

// twice the area of the intersection of two triangles (convex clipping)
FieldElement tri_tri_overlap2(const std::array<Vec2, 3>& t1, const std::array<Vec2, 3>& t2);

// twice the area of intersection of two simple polygons via triangulations
FieldElement polygon_overlap2(const Polygon& a, const Polygon& b);

// does the closed segment [a,b] meet the closed polygon q?
bool segment_meets_polygon(const Vec2& a, const Vec2& b, const Polygon& q);

} // namespace aptk

#endif
