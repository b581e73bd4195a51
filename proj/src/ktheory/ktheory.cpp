#include "ktheory/ktheory.hpp"

#include <algorithm>
#include <sstream>

namespace aptk {

namespace {

std::string spectrum_name(const FreeBlock& b) {
    if (b.integral) return b.lambda.get_str();
    return zp_str(b.poly);
}

void fill_spectrum(const ClassifyDetail& det, KTheoryReport& r) {
    r.sigma2_spectrum.clear();
    for (const auto& b : det.blocks) {
        if (b.poly.empty() && b.unimodular) {
            r.sigma2_spectrum.emplace_back("unimodular block", b.dim);
            continue;
        }
        r.sigma2_spectrum.emplace_back(spectrum_name(b), b.mult);
    }
}

// image of a matrix map as a stationary system inside the target tower
StationarySystem image_system(const IntMatrix& matrix, const IntMatrix& target_endo) {
    IntMatrix l = hnf_columns(matrix);
    if (l.cols() == 0) return StationarySystem(PresentedGroup::free_group(0), IntMatrix(0, 0));
    auto x = solve_integer(l, target_endo * l);
    if (!x) throw std::runtime_error("image lattice not invariant under the target endo");
    return StationarySystem::on_free(*x);
}

// isolating intervals for the real roots of an irreducible integer polynomial
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const ZPoly& q) {
    std::vector<std::pair<Rat, Rat>> out;
    Int bound = 1;
    for (const auto& c : q) { Int a = abs(c); if (a > bound) bound = a; }
    Rat b = Rat(bound + 1) * 2;
    std::vector<std::pair<Rat, Rat>> work{{-b, b}};
    while (!work.empty()) {
        auto [lo, hi] = work.back();
        work.pop_back();
        int n = sturm_count(q, lo, hi);
        if (n == 0) continue;
        if (n == 1) {
            out.push_back({lo, hi});
            continue;
        }
        Rat mid = (lo + hi) / 2;
        if (zp_eval_q(q, mid) == 0) {
            // rational root of an irreducible q means degree 1
            Rat eps = (hi - lo) / 1024;
            work.push_back({lo, mid - eps});
            work.push_back({mid + eps, hi});
            out.push_back({mid - eps, mid + eps});
            continue;
        }
        work.push_back({lo, mid});
        work.push_back({mid, hi});
    }
    std::sort(out.begin(), out.end());
    // refine until each interval is narrow and sign-definite
    for (auto& [lo, hi] : out) {
        for (int step = 0; step < 64 && (hi - lo) * 64 > 1; ++step) {
            Rat mid = (lo + hi) / 2;
            Rat v = zp_eval_q(q, mid);
            if (v == 0) {
                Rat w = (hi - lo) / 1024;
                lo = mid - w;
                hi = mid + w;
                break;
            }
            if (sgn(v) == sgn(zp_eval_q(q, lo))) lo = mid;
            else hi = mid;
        }
    }
    return out;
}

struct SpectralRow {
    Rat abs_lo, abs_hi;  // enclosure of |root|
    std::string root_name;
    std::vector<FieldElement> coords;  // entries over the root's field
};

std::string fe_display(const FieldElement& e) {
    if (e.is_rational()) {
        return e.rational().get_str();
    }
    return e.str();
}

// d = 1 evaluation map in spectral coordinates of the top tower, rows sorted
// by |eigenvalue| descending; displayable when the images happen to be
// integral in each eigenbasis (as in the worked small substitutions)
std::vector<EvRow> ev_eigen_rows(const IntMatrix& sigma1, const IntMatrix& delta0,
                                 const IntMatrix& sigma0, const ClassifyOptions& opt) {
    std::vector<EvRow> out;
    int n1 = sigma1.rows();
    // kernel-removed top lattice and blocks
    IntMatrix b1 = saturate_columns(sigma1.pow(unsigned(std::max(n1, 1))));
    if (b1.cols() == 0) return out;
    auto f1 = solve_integer(b1, sigma1 * b1);
    if (!f1) return out;
    ClassifyOptions dopt = opt;
    dopt.spectral_detail = true;
    ClassifyDetail top_detail;
    classify_limit(StationarySystem::on_free(*f1), dopt, &top_detail);
    if (!top_detail.spectra_known) return out;
    // relative side: kernel-removed basis of the sigma0 tower
    int n0 = sigma0.rows();
    IntMatrix b0 = saturate_columns(sigma0.pow(unsigned(std::max(n0, 1))));
    if (b0.cols() == 0) return out;
    IntMatrix images = delta0 * b0;  // columns: ev of the reduced relative basis
    // express the images over Q in [kernel | block lattices] coordinates
    IntMatrix kern = kernel_basis(sigma1.pow(unsigned(std::max(n1, 1))));
    std::vector<SpectralRow> rows;
    int col_base = kern.cols();
    std::vector<std::pair<const FreeBlock*, int>> block_of_col;
    IntMatrix full = kern;
    for (const auto& b : top_detail.blocks) {
        IntMatrix abs_lattice = b1 * b.lattice;  // back to ambient coordinates
        full = full.hstack(abs_lattice);
        for (int c = 0; c < abs_lattice.cols(); ++c) block_of_col.push_back({&b, c});
    }
    if (full.cols() != n1) return out;
    // rational solve: full * x = images  (full is square, invertible over Q)
    Int d = det(full);
    if (d == 0) return out;
    // Cramer-free: solve column by column over Q via integer solve on scaled system
    // x = full^{-1} * images; use adjugate: x = adj(full) * images / det
    // (sizes here are small: d=1 complexes)
    std::vector<std::vector<Rat>> x(n1, std::vector<Rat>(images.cols()));
    {
        // gaussian elimination over Q
        std::vector<std::vector<Rat>> m(n1, std::vector<Rat>(n1 + images.cols()));
        for (int i = 0; i < n1; ++i) {
            for (int j = 0; j < n1; ++j) m[i][j] = Rat(full.at(i, j));
            for (int j = 0; j < images.cols(); ++j) m[i][n1 + j] = Rat(images.at(i, j));
        }
        for (int c = 0; c < n1; ++c) {
            int p = -1;
            for (int i = c; i < n1; ++i)
                if (m[i][c] != 0) { p = i; break; }
            if (p < 0) return out;
            std::swap(m[c], m[p]);
            for (int i = 0; i < n1; ++i) {
                if (i == c || m[i][c] == 0) continue;
                Rat f = m[i][c] / m[c][c];
                for (int j = c; j < int(m[i].size()); ++j) m[i][j] -= f * m[c][j];
            }
        }
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < images.cols(); ++j) x[i][j] = m[i][n1 + j] / m[i][i];
    }
    // build display rows per block
    for (const auto& b : top_detail.blocks) {
        if (b.poly.empty()) continue;
        int deg_q = degree(b.poly);
        // locate this block's columns
        std::vector<int> cols;
        for (size_t c = 0; c < block_of_col.size(); ++c)
            if (block_of_col[c].first == &b) cols.push_back(int(c) + 0);
        if (deg_q == 1) {
            for (int rep = 0; rep < b.mult; ++rep) {
                SpectralRow row;
                Rat lam = Rat(b.lambda);
                Rat alam = lam >= 0 ? lam : Rat(-lam);
                row.abs_lo = alam;
                row.abs_hi = alam;
                row.root_name = b.lambda.get_str();
                int c = col_base + cols[rep];
                (void)c;
                FieldPtr f = FieldSpec::rationals();
                for (int j = 0; j < images.cols(); ++j)
                    row.coords.push_back(FieldElement::from_rat(f, x[size_t(col_base + cols[rep])][j]));
                rows.push_back(std::move(row));
            }
        } else if (deg_q == 2 && b.mult == 1) {
            auto ivs = isolate_real_roots(b.poly);
            if (int(ivs.size()) != 2) {
                // complex pair: display in lattice coordinates
                for (size_t k = 0; k < cols.size(); ++k) {
                    SpectralRow row;
                    row.abs_lo = row.abs_hi = 0;
                    row.root_name = zp_str(b.poly) + "[" + std::to_string(k) + "]";
                    FieldPtr f = FieldSpec::rationals();
                    for (int j = 0; j < images.cols(); ++j)
                        row.coords.push_back(
                            FieldElement::from_rat(f, x[size_t(col_base + cols[k])][j]));
                    rows.push_back(std::move(row));
                }
            } else {
                // two real embeddings: eigen coordinates over each root field
                for (const auto& iv : ivs) {
                    auto field = std::make_shared<FieldSpec>(b.poly, iv.first, iv.second);
                    FieldPtr fp = field;
                    FieldElement alpha = FieldElement::generator(fp);
                    // block action on the 2-dim lattice
                    IntMatrix lat = b.lattice;
                    auto act = solve_integer(lat, (*f1) * lat);
                    if (!act) return out;
                    // eigenvector of act for alpha: (m00 - a) v0 + m01 v1 = 0
                    FieldElement m00 = FieldElement::from_rat(fp, Rat(act->at(0, 0)));
                    FieldElement m01 = FieldElement::from_rat(fp, Rat(act->at(0, 1)));
                    FieldElement m10 = FieldElement::from_rat(fp, Rat(act->at(1, 0)));
                    FieldElement m11 = FieldElement::from_rat(fp, Rat(act->at(1, 1)));
                    FieldElement v0, v1;
                    if (!m01.is_zero()) {
                        v0 = m01;
                        v1 = alpha - m00;
                    } else if (!m10.is_zero()) {
                        v0 = alpha - m11;
                        v1 = m10;
                    } else {
                        return out;
                    }
                    // coordinates of the image in the eigen pair: solve
                    // [v, vbar] c = (x_block); here use: c_alpha =
                    // (w0*vbar1 - w1*vbar0)/(v0*vbar1 - v1*vbar0) with vbar
                    // the conjugate eigenvector; conjugate of alpha is
                    // (trace - alpha)
                    FieldElement tr = m00 + m11;
                    FieldElement beta = tr - alpha;
                    FieldElement u0, u1;
                    if (!m01.is_zero()) {
                        u0 = m01;
                        u1 = beta - m00;
                    } else {
                        u0 = beta - m11;
                        u1 = m10;
                    }
                    FieldElement den = v0 * u1 - v1 * u0;
                    if (den.is_zero()) return out;
                    SpectralRow row;
                    // |alpha| enclosure from the (refined) isolating interval
                    Rat lo = iv.first, hi = iv.second;
                    Rat alo, ahi;
                    if (hi <= 0) { alo = -hi; ahi = -lo; }
                    else if (lo >= 0) { alo = lo; ahi = hi; }
                    else { alo = 0; ahi = std::max(hi, Rat(-lo)); }
                    row.abs_lo = alo;
                    row.abs_hi = ahi;
                    std::ostringstream nm;
                    nm << "root of " << zp_str(b.poly) << " in (" << lo.get_str() << ","
                       << hi.get_str() << ")";
                    row.root_name = nm.str();
                    for (int j = 0; j < images.cols(); ++j) {
                        FieldElement w0 = FieldElement::from_rat(fp, x[size_t(col_base + cols[0])][j]);
                        FieldElement w1 = FieldElement::from_rat(fp, x[size_t(col_base + cols[1])][j]);
                        row.coords.push_back((w0 * u1 - w1 * u0) / den);
                    }
                    rows.push_back(std::move(row));
                }
            }
        } else {
            for (size_t k = 0; k < cols.size(); ++k) {
                SpectralRow row;
                row.abs_lo = row.abs_hi = 0;
                row.root_name = zp_str(b.poly) + "[" + std::to_string(k) + "]";
                FieldPtr f = FieldSpec::rationals();
                for (int j = 0; j < images.cols(); ++j)
                    row.coords.push_back(FieldElement::from_rat(f, x[size_t(col_base + cols[k])][j]));
                rows.push_back(std::move(row));
            }
        }
        col_base += 0;  // cols[] already absolute within block area
        // advance base for the next block
        // (cols were computed from block_of_col, which is absolute)
    }
    // sort by |root| descending with interval refinement already coarse:
    // compare by midpoint, ties by name
    std::sort(rows.begin(), rows.end(), [](const SpectralRow& a, const SpectralRow& b) {
        Rat ma = a.abs_lo + a.abs_hi, mb = b.abs_lo + b.abs_hi;
        if (ma != mb) return ma > mb;
        return a.root_name < b.root_name;
    });
    for (const auto& r : rows) {
        EvRow er;
        er.root = r.root_name;
        for (const auto& c : r.coords) er.entries.push_back(fe_display(c));
        out.push_back(std::move(er));
    }
    return out;
}

} // namespace

KTheoryReport compute_d1(const CochainSystem& cs, const ClassifyOptions& opt) {
    KTheoryReport r;
    r.dimension = 1;
    StationarySystem top = StationarySystem::on_free(cs.sigma1);
    StationarySystem rel = StationarySystem::on_free(cs.sigma0);
    ClassifyOptions topt = opt;
    topt.spectral_detail = true;
    ClassifyDetail dtop;
    r.k0_af = classify_limit(top, topt, &dtop);
    fill_spectrum(dtop, r);
    r.k0_af_u = classify_limit(rel, opt);
    SystemMap ev(rel, top, cs.delta0);
    ClassifyDetail dcok;
    r.k0_u = classify_limit(limit_cokernel(ev), opt, &dcok);
    r.torsion_witness = dcok.torsion_limit;
    r.k1_u = classify_limit(limit_kernel(ev), opt);
    r.h0 = r.k1_u;
    r.h1 = r.k0_u;
    r.h2 = LimitGroup::trivial();
    r.k1_af_u = LimitGroup::trivial();
    r.ev_image = classify_limit(image_system(cs.delta0, cs.sigma1), opt);
    r.ev_matrix = cs.delta0;
    r.ev_rows = ev_eigen_rows(cs.sigma1, cs.delta0, cs.sigma0, opt);
    r.hyperplane_ok = true;
    return r;
}

KTheoryReport compute_d2(const CochainSystem& cs, const ClassifyOptions& opt) {
    KTheoryReport r;
    r.dimension = 2;
    r.hyperplane_ok = cs.hyperplane_ok;
    StationarySystem top = StationarySystem::on_free(cs.sigma2);
    ClassifyOptions topt = opt;
    topt.spectral_detail = true;
    ClassifyDetail dtop;
    r.k0_af = classify_limit(top, topt, &dtop);
    fill_spectrum(dtop, r);
    // relative tower C^1 / im delta^0 with the induced sigma1
    StationarySystem rel(PresentedGroup{cs.c1, cs.delta0}, cs.sigma1);
    r.k0_af_u = classify_limit(rel, opt);
    SystemMap ev(rel, top, cs.delta1);
    ClassifyDetail dcok;
    r.h2 = classify_limit(limit_cokernel(ev), opt, &dcok);
    r.torsion_witness = dcok.torsion_limit;
    r.h1 = classify_limit(limit_kernel(ev), opt);
    StationarySystem c0sys = StationarySystem::on_free(cs.sigma0);
    StationarySystem c1sys = StationarySystem::on_free(cs.sigma1);
    SystemMap d0map(c0sys, c1sys, cs.delta0);
    r.h0 = classify_limit(limit_kernel(d0map), opt);
    r.k0_u = direct_sum(r.h2, r.h0);
    r.k1_u = r.h1;
    r.k1_af_u = r.h0;
    r.ev_image = classify_limit(image_system(cs.delta1, cs.sigma2), opt);
    r.ev_matrix = cs.delta1;
    // the 1-skeleton AF algebra identification
    if (cs.hyperplane_ok) {
        r.af1_route = KTheoryReport::Af1Route::hyperplane;
        r.k0_af1 = classify_limit(c1sys, opt);
        r.th_image = classify_limit(image_system(cs.delta0, cs.sigma1), opt);
    } else {
        // restriction to the hyperplane-satisfying cells
        std::vector<int> h;
        for (int e = 0; e < cs.c1; ++e)
            if (cs.hyperplane_cell[e]) h.push_back(e);
        bool route_found = false;
        if (!h.empty()) {
            IntMatrix block = cs.sigma1.submatrix(h, h);
            // straight cells only subdivide into straight cells; verify
            bool closed = true;
            for (int e : h)
                for (int f = 0; f < cs.c1; ++f)
                    if (!cs.hyperplane_cell[f] && cs.sigma1.at(e, f) != 0) closed = false;
            if (closed) {
                ClassifyDetail dh;
                LimitGroup hb = classify_limit(StationarySystem::on_free(block), opt, &dh);
                bool all_integral = dh.spectra_known;
                for (const auto& bb : dh.blocks)
                    if (!bb.integral && !bb.poly.empty()) all_integral = false;
                if (hb.status == LimitGroup::Status::classified && all_integral &&
                    hb.splitting_verified) {
                    r.af1_route = KTheoryReport::Af1Route::splits_completely;
                    route_found = true;
                } else {
                    StationarySystem hk = remove_eventual_kernel(
                        StationarySystem::on_free(block));
                    if (hk.group.generators == 0 || abs(det(hk.endo)) == 1) {
                        r.af1_route = KTheoryReport::Af1Route::determinant_one;
                        route_found = true;
                    }
                }
            }
        }
        if (route_found) {
            r.k0_af1 = classify_limit(c1sys, opt);
            r.th_image = classify_limit(image_system(cs.delta0, cs.sigma1), opt);
        } else {
            r.af1_route = KTheoryReport::Af1Route::none;
        }
    }
    return r;
}

PipelineResult run_pipeline(const SubstitutionRule& rule, const ClassifyOptions& copt,
                            const CollarOptions& collar_opt, const BuildOptions& build_opt) {
    PipelineResult pr;
    pr.cr = collar_rule(rule, collar_opt);
    pr.cx = build_complex(pr.cr, build_opt);
    pr.cs = cochain_system(pr.cx);
    pr.report = pr.cs.dimension == 1 ? compute_d1(pr.cs, copt) : compute_d2(pr.cs, copt);
    pr.report.rule_name = rule.name;
    pr.report.diag = pr.cx.diagnostics();
    pr.report.collar_power = pr.cr.power;
    pr.report.components = rule.component_count();
    return pr;
}

} // namespace aptk
