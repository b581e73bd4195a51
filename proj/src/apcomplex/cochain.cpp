#include "apcomplex/complex.hpp"

#include <sstream>

namespace aptk {

namespace {

// decomposition of the expanded image of a representative arc into whole
// child arcs, each counted with its alignment to the child class orientation
void image_row(const ApComplex& cx, const OneCell& e, IntMatrix& sigma1, int row) {
    const SubstitutionRule& R = cx.crule;
    const BoundaryArc& rep = cx.arcs[e.rep_tile][e.rep_arc];
    std::vector<Vec2> q;
    for (const auto& p : rep.pts) q.push_back(R.expansion.apply(p));
    int nq = int(q.size()) - 1;
    // per q-segment coverage accounting (linear parameter along each segment)
    std::vector<FieldElement> covered;
    for (int s = 0; s < nq; ++s) covered.push_back(FieldElement::zero(R.field));
    for (const auto& ch : R.children[e.rep_tile]) {
        for (size_t b = 0; b < cx.arcs[ch.proto].size(); ++b) {
            const BoundaryArc& arc = cx.arcs[ch.proto][b];
            bool inside = true;
            std::vector<std::pair<int, FieldElement>> parts;  // (q segment, length param)
            for (size_t s = 0; s + 1 < arc.pts.size() && inside; ++s) {
                Vec2 u = arc.pts[s] + ch.t, v = arc.pts[s + 1] + ch.t;
                bool found = false;
                for (int t = 0; t < nq; ++t)
                    if (on_segment(u, q[t], q[t + 1]) && on_segment(v, q[t], q[t + 1])) {
                        parts.push_back({t, dot(v - u, q[t + 1] - q[t])});
                        found = true;
                        break;
                    }
                if (!found) inside = false;
            }
            if (!inside) continue;
            int cls = cx.arc_class[ch.proto][int(b)];
            int msign = 0;
            for (const auto& m : cx.one_cells[cls].members)
                if (m.tile == ch.proto && m.arc == int(b)) { msign = m.sign; break; }
            sigma1.at(row, cls) += e.orientation * msign;
            for (auto& [t, len] : parts) covered[t] = covered[t] + len;
        }
    }
    // tiles have disjoint interiors, so child arcs never overlap along the
    // image; equality of the linear coverage means the decomposition is exact
    for (int s = 0; s < nq; ++s) {
        Vec2 d = q[s + 1] - q[s];
        if (!(covered[s] == dot(d, d)))
            throw std::runtime_error("substitution image of a 1-cell is not covered by child cells");
    }
}

} // namespace

CochainSystem cochain_system(const ApComplex& cx) {
    CochainSystem cs;
    cs.dimension = cx.crule.dimension;
    const SubstitutionRule& R = cx.crule;
    int n = cx.cr.count();
    if (cs.dimension == 1) {
        cs.c1 = n;
        cs.c0 = cx.c0();
        cs.delta0 = IntMatrix(cs.c1, cs.c0);
        for (int i = 0; i < n; ++i) {
            cs.delta0.at(i, cx.ends_1d[i].second) += 1;  // head
            cs.delta0.at(i, cx.ends_1d[i].first) -= 1;   // tail
        }
        cs.sigma1 = collared_matrix(cx.cr);
        cs.sigma0 = IntMatrix(cs.c0, cs.c0);
        std::vector<int> image(cs.c0, -1);
        for (int i = 0; i < n; ++i) {
            const auto& w = cx.cr.words[i];
            int tail_img = cx.ends_1d[w.front()].first;
            int head_img = cx.ends_1d[w.back()].second;
            for (auto [v, img] : {std::pair<int, int>{cx.ends_1d[i].first, tail_img},
                                  std::pair<int, int>{cx.ends_1d[i].second, head_img}}) {
                if (image[v] >= 0 && image[v] != img)
                    throw std::runtime_error("0-cell substitution image is not well-defined");
                image[v] = img;
            }
        }
        for (int v = 0; v < cs.c0; ++v) {
            if (image[v] < 0) throw std::runtime_error("0-cell without image");
            cs.sigma0.at(v, image[v]) = 1;
        }
        return cs;
    }
    cs.c0 = cx.c0();
    cs.c1 = cx.c1();
    cs.c2 = cx.c2();
    cs.delta0 = IntMatrix(cs.c1, cs.c0);
    for (int e = 0; e < cs.c1; ++e) {
        cs.delta0.at(e, cx.one_cells[e].head) += 1;
        cs.delta0.at(e, cx.one_cells[e].tail) -= 1;
    }
    cs.delta1 = IntMatrix(cs.c2, cs.c1);
    for (int t = 0; t < cs.c2; ++t)
        for (const auto& [e, sign] : cx.boundary_walk[t]) cs.delta1.at(t, e) += sign;
    cs.sigma2 = collared_matrix(cx.cr);
    cs.sigma1 = IntMatrix(cs.c1, cs.c1);
    for (int e = 0; e < cs.c1; ++e) image_row(cx, cx.one_cells[e], cs.sigma1, e);
    cs.sigma0 = IntMatrix(cs.c0, cs.c0);
    for (int v = 0; v < cs.c0; ++v) {
        const ZeroCell& z = cx.zero_cells[v];
        Vec2 ep = R.expansion.apply(z.rep_point);
        int img = -1;
        for (const auto& ch : R.children[z.rep_tile]) {
            Vec2 local = ep - ch.t;
            // is local a 0-cell point of the child?
            for (int w = 0; w < cs.c0 && img < 0; ++w)
                for (const auto& [tile, p] : cx.zero_cells[w].members)
                    if (tile == ch.proto && p == local) { img = w; break; }
            if (img >= 0) break;
        }
        if (img < 0) throw std::runtime_error("0-cell image is not a 0-cell");
        cs.sigma0.at(v, img) = 1;
    }
    cs.hyperplane_cell.resize(cs.c1);
    for (int e = 0; e < cs.c1; ++e) cs.hyperplane_cell[e] = cx.one_cells[e].hyperplane;
    cs.hyperplane_ok = cx.hyperplane_ok();
    return cs;
}

} // namespace aptk
