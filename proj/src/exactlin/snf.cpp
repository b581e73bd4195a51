#include "exactlin/intmatrix.hpp"

namespace aptk {

namespace {

struct Work {
    IntMatrix a, u, v;   // invariant: u * original * v == a
    void row_swap(int i, int j) {
        for (int k = 0; k < a.cols(); ++k) swap(a.at(i, k), a.at(j, k));
        for (int k = 0; k < u.cols(); ++k) swap(u.at(i, k), u.at(j, k));
    }
    void col_swap(int i, int j) {
        for (int k = 0; k < a.rows(); ++k) swap(a.at(k, i), a.at(k, j));
        for (int k = 0; k < v.rows(); ++k) swap(v.at(k, i), v.at(k, j));
    }
    void row_addmul(int dst, int src, const Int& q) {  // row dst += q * row src
        if (q == 0) return;
        for (int k = 0; k < a.cols(); ++k) a.at(dst, k) += q * a.at(src, k);
        for (int k = 0; k < u.cols(); ++k) u.at(dst, k) += q * u.at(src, k);
    }
    void col_addmul(int dst, int src, const Int& q) {
        if (q == 0) return;
        for (int k = 0; k < a.rows(); ++k) a.at(k, dst) += q * a.at(k, src);
        for (int k = 0; k < v.rows(); ++k) v.at(k, dst) += q * v.at(k, src);
    }
    void row_negate(int i) {
        for (int k = 0; k < a.cols(); ++k) a.at(i, k) = -a.at(i, k);
        for (int k = 0; k < u.cols(); ++k) u.at(i, k) = -u.at(i, k);
    }
};

} // namespace

SnfResult snf(const IntMatrix& m) {
    int n = m.rows(), c = m.cols();
    Work w{m, IntMatrix::identity(n), IntMatrix::identity(c)};
    int t = 0;
    int bound = std::min(n, c);
    while (t < bound) {
        // minimal absolute nonzero pivot in the trailing block
        int pi = -1, pj = -1;
        Int best;
        for (int i = t; i < n; ++i)
            for (int j = t; j < c; ++j) {
                const Int& x = w.a.at(i, j);
                if (x == 0) continue;
                Int ax = abs(x);
                if (pi < 0 || ax < best) { best = ax; pi = i; pj = j; }
            }
        if (pi < 0) break;
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        bool clean = true;
        for (int i = t + 1; i < n; ++i) {
            if (w.a.at(i, t) == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), w.a.at(i, t).get_mpz_t(), w.a.at(t, t).get_mpz_t());
            w.row_addmul(i, t, -q);
            if (w.a.at(i, t) != 0) clean = false;
        }
        for (int j = t + 1; j < c; ++j) {
            if (w.a.at(t, j) == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), w.a.at(t, j).get_mpz_t(), w.a.at(t, t).get_mpz_t());
            w.col_addmul(j, t, -q);
            if (w.a.at(t, j) != 0) clean = false;
        }
        if (!clean) continue;  // smaller remainders appeared; repick pivot
        // divisibility: pivot must divide the rest of the block
        bool divides = true;
        for (int i = t + 1; i < n && divides; ++i)
            for (int j = t + 1; j < c; ++j)
                if (w.a.at(i, j) % w.a.at(t, t) != 0) {
                    w.row_addmul(t, i, Int(1));  // pull the bad row up
                    divides = false;
                    break;
                }
        if (!divides) continue;
        if (w.a.at(t, t) < 0) w.row_negate(t);
        ++t;
    }
    return SnfResult{w.a, w.u, w.v};
}

IntMatrix kernel_basis(const IntMatrix& m) {
    SnfResult s = snf(m);
    int r = 0;
    int bound = std::min(m.rows(), m.cols());
    while (r < bound && s.d.at(r, r) != 0) ++r;
    // kernel = span of columns r..cols-1 of v
    IntMatrix k(m.cols(), m.cols() - r);
    for (int i = 0; i < m.cols(); ++i)
        for (int j = r; j < m.cols(); ++j) k.at(i, j - r) = s.v.at(i, j);
    return k;
}

IntMatrix hnf_columns(const IntMatrix& m) {
    // Column HNF (echelon by rows, pivots positive, entries right of pivot
    // reduced). Operates on columns only.
    IntMatrix a = m;
    int n = a.rows(), c = a.cols();
    int col = 0;
    for (int row = 0; row < n && col < c; ++row) {
        // gcd-eliminate within row across columns col..c-1
        while (true) {
            int p = -1;
            Int best;
            for (int j = col; j < c; ++j) {
                const Int& x = a.at(row, j);
                if (x == 0) continue;
                Int ax = abs(x);
                if (p < 0 || ax < best) { best = ax; p = j; }
            }
            if (p < 0) break;
            if (p != col)
                for (int i = 0; i < n; ++i) swap(a.at(i, p), a.at(i, col));
            bool done = true;
            for (int j = col + 1; j < c; ++j) {
                if (a.at(row, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a.at(row, j).get_mpz_t(), a.at(row, col).get_mpz_t());
                for (int i = 0; i < n; ++i) a.at(i, j) -= q * a.at(i, col);
                if (a.at(row, j) != 0) done = false;
            }
            if (done) break;
        }
        if (a.at(row, col) == 0) continue;  // no pivot in this row
        if (a.at(row, col) < 0)
            for (int i = 0; i < n; ++i) a.at(i, col) = -a.at(i, col);
        // reduce earlier columns against this pivot
        for (int j = 0; j < col; ++j) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a.at(row, j).get_mpz_t(), a.at(row, col).get_mpz_t());
            if (q != 0)
                for (int i = 0; i < n; ++i) a.at(i, j) -= q * a.at(i, col);
        }
        ++col;
    }
    // drop zero columns (those beyond col are zero by construction)
    IntMatrix h(n, col);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < col; ++j) h.at(i, j) = a.at(i, j);
    return h;
}

IntMatrix saturate_columns(const IntMatrix& m) {
    // span_Q(cols) cap Z^n: with u*m*v = d, the first r columns of u^{-1}
    // scaled to primitive generate the saturation; equivalently the
    // saturation is the kernel of the left-null projection. Use SNF of m:
    // columns of u^{-1} are recovered by solving, so instead compute via the
    // transpose kernel: sat = ker( ker(m^T)^T ).
    IntMatrix ln = kernel_basis(m.transpose());  // left null space basis (cols)
    if (ln.cols() == 0) return IntMatrix::identity(m.rows());
    return kernel_basis(ln.transpose());
}

std::optional<IntMatrix> solve_integer(const IntMatrix& a, const IntMatrix& b) {
    SnfResult s = snf(a);
    int r = 0;
    int bound = std::min(a.rows(), a.cols());
    while (r < bound && s.d.at(r, r) != 0) ++r;
    if (r < a.cols()) {
        // full column rank required for a unique solution
        // (callers only use this case)
        if (rank(a) < a.cols()) throw std::invalid_argument("solve_integer: rank deficient");
    }
    IntMatrix ub = s.u * b;
    IntMatrix y(a.cols(), b.cols());
    for (int j = 0; j < b.cols(); ++j) {
        for (int i = 0; i < a.rows(); ++i) {
            if (i < r) {
                if (ub.at(i, j) % s.d.at(i, i) != 0) return std::nullopt;
                y.at(i, j) = ub.at(i, j) / s.d.at(i, i);
            } else if (ub.at(i, j) != 0) {
                return std::nullopt;
            }
        }
    }
    return s.v * y;
}

bool lattice_contains(const IntMatrix& hnf_a, const IntMatrix& b) {
    // membership via back-substitution against the column HNF
    int n = hnf_a.rows();
    for (int j = 0; j < b.cols(); ++j) {
        std::vector<Int> v(n);
        for (int i = 0; i < n; ++i) v[i] = b.at(i, j);
        int col = 0;
        for (int row = 0; row < n; ++row) {
            if (col < hnf_a.cols() && hnf_a.at(row, col) != 0) {
                if (v[row] % hnf_a.at(row, col) != 0) return false;
                Int q = v[row] / hnf_a.at(row, col);
                for (int i = row; i < n; ++i) v[i] -= q * hnf_a.at(i, col);
                ++col;
            } else if (v[row] != 0) {
                return false;
            }
        }
        for (int i = 0; i < n; ++i)
            if (v[i] != 0) return false;
    }
    return true;
}

bool in_column_span_z(const IntMatrix& gens, const std::vector<Int>& v) {
    IntMatrix b(int(v.size()), 1);
    for (size_t i = 0; i < v.size(); ++i) b.at(int(i), 0) = v[i];
    return lattice_contains(hnf_columns(gens), b);
}

} // namespace aptk
