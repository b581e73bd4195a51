#ifndef APTK_EXACTLIN_INTMATRIX_HPP
#define APTK_EXACTLIN_INTMATRIX_HPP

#include <gmpxx.h>
#include <vector>
#include <string>
#include <optional>
#include <stdexcept>
#include <cstdint>

namespace aptk {

using Int = mpz_class;
using Rat = mpq_class;

// Dense integer matrix, row-major, arbitrary precision entries.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {}
    IntMatrix(int rows, int cols, std::vector<Int> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (e_.size() != size_t(rows) * cols) throw std::invalid_argument("entry count");
    }
    // Convenience: build from row lists of machine ints.
    static IntMatrix from_rows(const std::vector<std::vector<long>>& r);
    static IntMatrix identity(int n);
    static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Int& at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }
    Int& at(int i, int j) { return e_[size_t(i) * cols_ + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool is_zero() const;
    bool is_identity() const;
    bool nonnegative() const;

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix transpose() const;
    IntMatrix pow(unsigned n) const;
    std::vector<Int> apply(const std::vector<Int>& v) const;   // column vector action
    IntMatrix column(int j) const;
    IntMatrix hstack(const IntMatrix& o) const;
    IntMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;

    Int max_abs() const;
    std::string str() const;   // [[a,b],[c,d]] display

private:
    int rows_, cols_;
    std::vector<Int> e_;
};

struct SnfResult {
    IntMatrix d;   // diagonal, d1 | d2 | ...
    IntMatrix u;   // unimodular, u*m*v = d
    IntMatrix v;   // unimodular
};

// Smith normal form with transformation matrices; pivot chosen by minimal
// absolute value to limit coefficient growth.
SnfResult snf(const IntMatrix& m);

// Basis of the saturated integer kernel lattice (columns); kernel over Q
// intersected with Z^n.  Empty matrix (n x 0) when the kernel is trivial.
IntMatrix kernel_basis(const IntMatrix& m);

// Rank over Q (fraction-free elimination).
int rank(const IntMatrix& m);

// Determinant (Bareiss). Requires square.
Int det(const IntMatrix& m);

// Column-style Hermite normal form of the lattice spanned by the columns.
// Result has full column rank (zero columns dropped).
IntMatrix hnf_columns(const IntMatrix& m);

// Saturation of the column lattice: basis of (span_Q(columns) cap Z^n).
IntMatrix saturate_columns(const IntMatrix& m);

// Solve a * x = b exactly over the integers for every column of b.
// Returns nullopt if some column has no integral solution.
// a must have full column rank.
std::optional<IntMatrix> solve_integer(const IntMatrix& a, const IntMatrix& b);

// Does the column lattice of a contain every column of b?
bool lattice_contains(const IntMatrix& hnf_a, const IntMatrix& b);

// Membership of v in the column lattice spanned by gens (not nec. independent).
bool in_column_span_z(const IntMatrix& gens, const std::vector<Int>& v);

// Characteristic polynomial det(xI - m), coefficients ascending (Berkowitz,
// division-free).
std::vector<Int> char_poly(const IntMatrix& m);

} // namespace aptk

#endif
