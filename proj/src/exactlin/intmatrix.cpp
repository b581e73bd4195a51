#include "exactlin/intmatrix.hpp"

#include <sstream>

namespace aptk {

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& r) {
    int n = int(r.size());
    int m = n ? int(r[0].size()) : 0;
    IntMatrix a(n, m);
    for (int i = 0; i < n; ++i) {
        if (int(r[i].size()) != m) throw std::invalid_argument("ragged rows");
        for (int j = 0; j < m; ++j) a.at(i, j) = r[i][j];
    }
    return a;
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix a(n, n);
    for (int i = 0; i < n; ++i) a.at(i, i) = 1;
    return a;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : e_) if (x != 0) return false;
    return true;
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool IntMatrix::nonnegative() const {
    for (const auto& x : e_) if (x < 0) return false;
    return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("dim mismatch in *");
    IntMatrix r(rows_, o.cols_);
    Int t;
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                t = a * o.at(k, j);
                r.at(i, j) += t;
            }
        }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dim mismatch in +");
    IntMatrix r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dim mismatch in -");
    IntMatrix r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

IntMatrix IntMatrix::pow(unsigned n) const {
    if (rows_ != cols_) throw std::invalid_argument("pow of non-square");
    IntMatrix r = identity(rows_), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& v) const {
    if (int(v.size()) != cols_) throw std::invalid_argument("apply dim");
    std::vector<Int> r(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
}

IntMatrix IntMatrix::column(int j) const {
    IntMatrix r(rows_, 1);
    for (int i = 0; i < rows_; ++i) r.at(i, 0) = at(i, j);
    return r;
}

IntMatrix IntMatrix::hstack(const IntMatrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("hstack dim");
    IntMatrix r(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

IntMatrix IntMatrix::submatrix(const std::vector<int>& rs, const std::vector<int>& cs) const {
    IntMatrix r(int(rs.size()), int(cs.size()));
    for (size_t i = 0; i < rs.size(); ++i)
        for (size_t j = 0; j < cs.size(); ++j) r.at(int(i), int(j)) = at(rs[i], cs[j]);
    return r;
}

Int IntMatrix::max_abs() const {
    Int m = 0;
    for (const auto& x : e_) if (abs(x) > m) m = abs(x);
    return m;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

// Bareiss fraction-free elimination; returns rank, optionally determinant.
static int bareiss(IntMatrix a, Int* det_out) {
    int n = a.rows(), m = a.cols();
    Int prev = 1;
    int r = 0;
    int sign = 1;
    for (int c = 0; c < m && r < n; ++c) {
        int piv = -1;
        for (int i = r; i < n; ++i)
            if (a.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) {
            for (int j = 0; j < m; ++j) swap(a.at(piv, j), a.at(r, j));
            sign = -sign;
        }
        for (int i = r + 1; i < n; ++i) {
            for (int j = c + 1; j < m; ++j) {
                Int t = a.at(i, j) * a.at(r, c) - a.at(i, c) * a.at(r, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a.at(i, c) = 0;
        }
        prev = a.at(r, c);
        ++r;
    }
    if (det_out) {
        if (r < n || n != m) *det_out = 0;
        else *det_out = sign > 0 ? prev : Int(-prev);
    }
    return r;
}

int rank(const IntMatrix& m) { return bareiss(m, nullptr); }

Int det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square");
    if (m.rows() == 0) return 1;
    Int d;
    bareiss(m, &d);
    return d;
}

// Berkowitz: characteristic polynomial without division.
std::vector<Int> char_poly(const IntMatrix& m) {
    int n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("char_poly of non-square");
    // p holds the coefficients of det(xI - M_r) for the leading r x r block,
    // descending degree; start with r = 0 (polynomial 1).
    std::vector<Int> p{Int(1)};
    for (int r = 1; r <= n; ++r) {
        // Toeplitz column from principal block: c0 = 1, c1 = -a_rr,
        // c_k = -(row * A^{k-2} * col) for k >= 2.
        std::vector<Int> c(r + 1);
        c[0] = 1;
        c[1] = -m.at(r - 1, r - 1);
        if (r >= 2) {
            std::vector<Int> v(r - 1);
            for (int i = 0; i < r - 1; ++i) v[i] = m.at(i, r - 1);
            for (int k = 2; k <= r; ++k) {
                Int s = 0;
                for (int i = 0; i < r - 1; ++i) s += m.at(r - 1, i) * v[i];
                c[k] = -s;
                if (k < r) {
                    std::vector<Int> w(r - 1);
                    for (int i = 0; i < r - 1; ++i) {
                        Int acc = 0;
                        for (int j = 0; j < r - 1; ++j) acc += m.at(i, j) * v[j];
                        w[i] = acc;
                    }
                    v.swap(w);
                }
            }
        }
        std::vector<Int> q(r + 1);
        for (int i = 0; i <= r; ++i) {
            Int s = 0;
            for (int j = 0; j <= i && j < int(c.size()); ++j) {
                int pi = i - j;
                if (pi >= 0 && pi < int(p.size())) s += c[j] * p[pi];
            }
            q[i] = s;
        }
        p.swap(q);
    }
    // p is descending (p[0] = 1 leading); convert to ascending.
    std::vector<Int> asc(p.rbegin(), p.rend());
    return asc;
}

} // namespace aptk
