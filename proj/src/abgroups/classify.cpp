#include "abgroups/abgroups.hpp"

#include <algorithm>
#include <sstream>

namespace aptk {

namespace {

Int radical_of(Int m) {
    Int r = 1, n = abs(m);
    for (Int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            r *= p;
            while (n % p == 0) n /= p;
        }
    if (n > 1) r *= n;
    return r;
}

std::vector<Int> prime_factors(Int m) {
    std::vector<Int> ps;
    Int n = abs(m);
    for (Int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

// strip all prime factors of m from c
Int coprime_part(Int c, const Int& m) {
    for (const Int& p : prime_factors(m))
        while (c % p == 0) c /= p;
    return c;
}

// evaluate a poly at the matrix (Horner)
IntMatrix poly_at_matrix(const ZPoly& q, const IntMatrix& a) {
    int n = a.rows();
    IntMatrix r(n, n);
    for (int i = degree(q); i >= 0; --i) {
        r = r * a;
        for (int k = 0; k < n; ++k) r.at(k, k) += q[i];
    }
    return r;
}

// lattice intersection: columns spanning L1 cap L2 (both full of arbitrary rank)
IntMatrix lattice_intersect(const IntMatrix& l1, const IntMatrix& l2) {
    if (l1.cols() == 0 || l2.cols() == 0) return IntMatrix(l1.rows(), 0);
    IntMatrix block = l1.hstack(l2);
    for (int i = 0; i < block.rows(); ++i)
        for (int j = l1.cols(); j < block.cols(); ++j) block.at(i, j) = -block.at(i, j);
    IntMatrix kb = kernel_basis(block);
    IntMatrix a(l1.cols(), kb.cols());
    for (int i = 0; i < l1.cols(); ++i)
        for (int j = 0; j < kb.cols(); ++j) a.at(i, j) = kb.at(i, j);
    return hnf_columns(l1 * a);
}

// inverse of a mod m (m > 1), entries reduced into [0, m)
IntMatrix inverse_mod(const IntMatrix& a, const Int& m) {
    int n = a.rows();
    Int d = det(a) % m;
    if (d < 0) d += m;
    Int dinv;
    if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::invalid_argument("matrix not invertible mod m");
    // adjugate via cofactors (small n); fine for the ranks we verify
    IntMatrix adj(n, n);
    std::vector<int> all;
    for (int i = 0; i < n; ++i) all.push_back(i);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> rs, cs;
            for (int k = 0; k < n; ++k) {
                if (k != j) rs.push_back(k);
                if (k != i) cs.push_back(k);
            }
            Int c = n == 1 ? Int(1) : det(a.submatrix(rs, cs));
            if ((i + j) % 2) c = -c;
            c = c * dinv % m;
            if (c < 0) c += m;
            adj.at(i, j) = c;
        }
    return adj;
}

struct FreeOutcome {
    LimitGroup group;
    std::vector<FreeBlock> blocks;
    int removed_rank = 0;
    Int restricted_det = 0;
    bool spectra_known = false;
    std::string note;
};

// Subgroups of (Z/c1)^{d1} (+) ... represented as integer lattices in Z^D
// that contain the coordinate moduli lattice.
struct FiniteModel {
    std::vector<Int> moduli;  // per coordinate
    IntMatrix moduli_lattice() const {
        int D = int(moduli.size());
        IntMatrix m(D, D);
        for (int i = 0; i < D; ++i) m.at(i, i) = moduli[i];
        return m;
    }
    IntMatrix close(const IntMatrix& gens) const {
        return hnf_columns(gens.hstack(moduli_lattice()));
    }
};

// verified complete-splitting check across divisible blocks; returns true when
// the finite coupling group decomposes blockwise (see classify notes)
bool verify_block_splitting(const IntMatrix& f, const std::vector<FreeBlock>& blocks,
                            std::string* why) {
    int R = f.rows();
    // assemble full block basis
    IntMatrix basis(R, 0);
    for (const auto& b : blocks) basis = basis.hstack(b.lattice);
    if (basis.cols() != R) {
        if (why) *why = "block lattices do not span";
        return false;
    }
    Int c = abs(det(basis));
    if (c == 1) return true;
    // coordinates: per block, modulus c with the block's inverted primes removed
    std::vector<Int> moduli;
    std::vector<int> block_of;
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
        Int cb = blocks[bi].divisible ? coprime_part(c, blocks[bi].m) : c;
        for (int k = 0; k < blocks[bi].dim; ++k) {
            moduli.push_back(cb);
            block_of.push_back(int(bi));
        }
    }
    int D = R;
    FiniteModel A{moduli};
    // generators of the image of Z^R: columns of c * basis^{-1}
    IntMatrix cid(R, R);
    for (int i = 0; i < R; ++i) cid.at(i, i) = c;
    auto y = solve_integer(basis, cid);
    if (!y) throw std::runtime_error("splitting check: basis inversion failed");
    IntMatrix f0 = A.close(*y);
    // block action matrices and their inverses mod the block modulus
    std::vector<IntMatrix> minv(blocks.size());
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
        if (moduli.empty()) continue;
        Int cb = blocks[bi].divisible ? coprime_part(c, blocks[bi].m) : c;
        if (cb == 1) continue;
        auto mb = solve_integer(blocks[bi].lattice, f * blocks[bi].lattice);
        if (!mb) throw std::runtime_error("block lattice not invariant");
        minv[bi] = inverse_mod(*mb, cb);
    }
    auto apply_inv = [&](const IntMatrix& gens) {
        IntMatrix out(D, gens.cols());
        int row0 = 0;
        for (size_t bi = 0; bi < blocks.size(); ++bi) {
            int d = blocks[bi].dim;
            Int cb = blocks[bi].divisible ? coprime_part(c, blocks[bi].m) : c;
            for (int j = 0; j < gens.cols(); ++j) {
                if (cb == 1) {
                    for (int i = 0; i < d; ++i) out.at(row0 + i, j) = 0;
                    continue;
                }
                for (int i = 0; i < d; ++i) {
                    Int s = 0;
                    for (int k = 0; k < d; ++k)
                        s += minv[bi].at(i, k) * gens.at(row0 + k, j);
                    s %= cb;
                    if (s < 0) s += cb;
                    out.at(row0 + i, j) = s;
                }
            }
            row0 += d;
        }
        return out;
    };
    IntMatrix cur = f0;
    bool stable = false;
    for (int iter = 0; iter < 4096; ++iter) {
        IntMatrix nxt = A.close(cur.hstack(apply_inv(cur)));
        if (nxt == cur) { stable = true; break; }
        cur = nxt;
    }
    if (!stable) {
        if (why) *why = "coupling iteration did not stabilize";
        return false;
    }
    // only divisible-vs-divisible coupling can obstruct; project and compare
    std::vector<int> div_rows;
    int row0 = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.dim; ++i)
            if (b.divisible) div_rows.push_back(row0 + i);
        row0 += b.dim;
    }
    if (div_rows.empty()) return true;
    // projection to divisible coordinates: keep those rows
    auto project = [&](const IntMatrix& l) {
        IntMatrix p(int(div_rows.size()), l.cols());
        for (size_t i = 0; i < div_rows.size(); ++i)
            for (int j = 0; j < l.cols(); ++j) p.at(int(i), j) = l.at(div_rows[i], j);
        return p;
    };
    std::vector<Int> dmod;
    std::vector<int> dblk;
    for (size_t i = 0; i < div_rows.size(); ++i) {
        dmod.push_back(moduli[div_rows[i]]);
        dblk.push_back(block_of[div_rows[i]]);
    }
    FiniteModel Ad{dmod};
    IntMatrix pinf = Ad.close(project(cur));
    // per-block intersections
    IntMatrix summed(int(div_rows.size()), 0);
    std::vector<int> present;
    for (int b : dblk)
        if (present.empty() || present.back() != b) present.push_back(b);
    for (int b : present) {
        // lattice of vectors supported on block b (others full moduli)
        IntMatrix supp(int(div_rows.size()), int(div_rows.size()));
        for (size_t i = 0; i < div_rows.size(); ++i)
            supp.at(int(i), int(i)) = (dblk[i] == b) ? Int(1) : dmod[i];
        IntMatrix inter = lattice_intersect(pinf, supp);
        summed = summed.hstack(inter);
    }
    IntMatrix total = Ad.close(summed);
    if (total == pinf) return true;
    if (why) *why = "inter-block coupling in the limit lattice";
    return false;
}

FreeOutcome classify_free(const IntMatrix& endo, const ClassifyOptions& opt) {
    FreeOutcome out;
    int n = endo.rows();
    if (n == 0) {
        out.spectra_known = true;
        return out;
    }
    // eventual kernel removal
    IntMatrix basis = saturate_columns(endo.pow(unsigned(n)));
    int R = basis.cols();
    out.removed_rank = R;
    if (R == 0) {
        out.spectra_known = true;
        return out;
    }
    IntMatrix f;
    if (R == n && basis.is_identity()) {
        f = endo;
    } else {
        auto x = solve_integer(basis, endo * basis);
        if (!x) throw std::runtime_error("image lattice not endo-invariant");
        f = *x;
    }
    Int d = det(f);
    out.restricted_det = d;
    if (abs(d) == 1 && !(opt.spectral_detail && R <= opt.charpoly_cap)) {
        out.group = LimitGroup::free(R);
        out.spectra_known = true;
        FreeBlock b;
        b.mult = 1;
        b.dim = R;
        b.unimodular = true;
        b.lattice = IntMatrix::identity(R);
        out.blocks.push_back(b);
        return out;
    }
    if (R > opt.charpoly_cap) {
        out.group.status = LimitGroup::Status::rank_bounds_only;
        out.group.free_rank_lower = 0;
        out.group.divisible_rank_upper = R;
        out.group.note = "rank above exact-spectral-analysis cap";
        return out;
    }
    ZPoly chp = char_poly(f);
    FactorResult fr = factor_poly(chp, opt.factor_effort);
    out.spectra_known = fr.complete;
    bool bounds = !fr.complete;
    std::string bound_note = fr.complete ? "" : fr.diagnostic;
    for (auto& [q, mult] : fr.factors) {
        FreeBlock b;
        b.poly = q;
        b.mult = mult;
        int deg_q = degree(q);
        b.dim = deg_q * mult;
        if (deg_q == 1) {
            b.integral = true;
            b.lambda = -q[0];  // monic x + c
            if (b.lambda == 0) throw std::runtime_error("zero eigenvalue after kernel removal");
            if (abs(b.lambda) == 1) {
                b.unimodular = true;
            } else {
                b.divisible = true;
                b.m = abs(b.lambda);
            }
        } else {
            Int c0 = abs(q[0]);
            if (c0 == 1) {
                b.unimodular = true;
            } else {
                // uniform divisibility: q == x^deg mod every prime of c0
                bool uniform = true;
                for (const Int& p : prime_factors(c0)) {
                    for (int i = 0; i < deg_q && uniform; ++i)
                        if (q[i] % p != 0) uniform = false;
                    if (!uniform) break;
                }
                if (uniform) {
                    b.divisible = true;
                    b.m = radical_of(c0);
                } else {
                    bounds = true;
                    if (bound_note.empty())
                        bound_note = "non-uniform irrational block " + zp_str(q);
                }
            }
        }
        out.blocks.push_back(b);
    }
    if (bounds) {
        long sure_free = 0, uncertain = 0;
        for (const auto& b : out.blocks) {
            if (b.unimodular) sure_free += b.dim;
            else uncertain += b.dim;
        }
        // unfactored residue counts as uncertain
        long seen = 0;
        for (const auto& b : out.blocks) seen += b.dim;
        uncertain += R - seen;
        out.group.status = LimitGroup::Status::rank_bounds_only;
        out.group.free_rank_lower = sure_free;
        out.group.divisible_rank_upper = uncertain;
        out.group.note = bound_note;
        return out;
    }
    // block lattices
    for (auto& b : out.blocks) {
        IntMatrix qf = poly_at_matrix(b.poly, f);
        b.lattice = kernel_basis(qf.pow(unsigned(b.mult)));
        if (b.lattice.cols() != b.dim)
            throw std::runtime_error("block lattice dimension mismatch");
    }
    // splitting verification across divisible blocks
    int n_div = 0;
    for (const auto& b : out.blocks)
        if (b.divisible) ++n_div;
    bool verified = true;
    if (n_div >= 2 || opt.verify == VerifyMode::on) {
        bool do_verify = opt.verify != VerifyMode::off &&
                         (opt.verify == VerifyMode::on || R <= opt.verify_cap);
        if (do_verify && n_div >= 2) {
            std::string why;
            if (!verify_block_splitting(f, out.blocks, &why)) {
                out.group.status = LimitGroup::Status::unresolved_presentation;
                out.group.note = why;
                return out;
            }
        } else if (!do_verify) {
            verified = false;  // assumed
        }
    }
    LimitGroup g;
    for (const auto& b : out.blocks) {
        if (b.divisible) g.inverted.push_back({b.m, b.integral ? b.mult : b.dim});
        else g.free_rank += b.dim;
    }
    g.splitting_verified = verified;
    g.normalize();
    out.group = g;
    return out;
}

// eventual image of the torsion part: moduli plus endo action
std::vector<Int> torsion_limit(const std::vector<Int>& moduli, const IntMatrix& tau) {
    int k = int(moduli.size());
    if (k == 0) return {};
    IntMatrix dlat(k, k);
    for (int i = 0; i < k; ++i) dlat.at(i, i) = moduli[i];
    IntMatrix power = IntMatrix::identity(k);
    IntMatrix cur = hnf_columns(power.hstack(dlat));
    for (int iter = 0; iter < 512; ++iter) {
        power = tau * power;
        IntMatrix nxt = hnf_columns(power.hstack(dlat));
        if (nxt == cur) break;
        cur = nxt;
    }
    // invariant factors of cur / dlat
    auto x = solve_integer(cur, dlat);
    if (!x) throw std::runtime_error("torsion lattice inversion failed");
    SnfResult s = snf(*x);
    std::vector<Int> inv;
    for (int i = 0; i < std::min(s.d.rows(), s.d.cols()); ++i)
        if (abs(s.d.at(i, i)) > 1) inv.push_back(abs(s.d.at(i, i)));
    return inv;
}

} // namespace

LimitGroup classify_limit(const StationarySystem& s, const ClassifyOptions& opt,
                          ClassifyDetail* detail) {
    int n = s.group.generators;
    IntMatrix freepart;
    std::vector<Int> moduli;
    IntMatrix tau;
    if (s.group.relations.cols() == 0) {
        freepart = s.endo;
    } else {
        SnfResult sr = snf(s.group.relations);
        // coordinates y = u x; relation lattice becomes span{ d_i e_i }
        auto uinv = solve_integer(sr.u, IntMatrix::identity(n));
        if (!uinv) throw std::runtime_error("unimodular inverse failed");
        IntMatrix e2 = sr.u * s.endo * (*uinv);
        int r = 0;
        int bound = std::min(sr.d.rows(), sr.d.cols());
        while (r < bound && sr.d.at(r, r) != 0) ++r;
        std::vector<int> tor_idx, free_idx;
        for (int i = 0; i < r; ++i)
            if (sr.d.at(i, i) > 1) tor_idx.push_back(i);
        for (int i = r; i < n; ++i) free_idx.push_back(i);
        freepart = e2.submatrix(free_idx, free_idx);
        tau = e2.submatrix(tor_idx, tor_idx);
        for (int i : tor_idx) moduli.push_back(sr.d.at(i, i));
        // torsion cannot leak into free coordinates
        IntMatrix leak = e2.submatrix(free_idx, tor_idx);
        if (!leak.is_zero())
            throw std::runtime_error("endomorphism does not descend to the quotient");
    }
    FreeOutcome fo = classify_free(freepart, opt);
    std::vector<Int> tl = torsion_limit(moduli, tau);
    if (detail) {
        detail->removed_rank = fo.removed_rank;
        detail->restricted_det = fo.restricted_det;
        detail->blocks = fo.blocks;
        detail->spectra_known = fo.spectra_known;
        detail->torsion_limit = tl;
        detail->note = fo.note;
    }
    LimitGroup g = fo.group;
    if (g.status == LimitGroup::Status::classified) {
        // the eventual torsion always splits off a classified free part: the
        // needed section exists blockwise (invertible or nilpotent mod each
        // torsion prime), so attaching it is exact, not an assumption
        g.torsion = tl;
        g.normalize();
    } else if (!tl.empty()) {
        if (g.note.empty()) g.note = "torsion present: ";
        std::ostringstream os;
        os << g.note << " torsion witness:";
        for (const auto& d : tl) os << " " << d.get_str();
        g.note = os.str();
    }
    return g;
}

} // namespace aptk
