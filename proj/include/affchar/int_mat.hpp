#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace affchar {

using Int = mpz_class;
using Vec = std::vector<Int>;

/// Dense matrix over arbitrary-precision integers, row-major.
/// All arithmetic is exact; there is no overflow at any magnitude.
class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}

    static IntMat identity(int n);
    static IntMat zero(int rows, int cols) { return IntMat(rows, cols); }
    static IntMat diagonal(const Vec& d);
    static IntMat from_rows(std::initializer_list<std::initializer_list<long>> rows);
    static IntMat column(const Vec& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Int& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
    Int& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }

    IntMat transpose() const;
    IntMat operator*(const IntMat& rhs) const;
    IntMat operator+(const IntMat& rhs) const;
    IntMat operator-() const;
    bool operator==(const IntMat& rhs) const { return rows_ == rhs.rows_ && cols_ == rhs.cols_ && e_ == rhs.e_; }
    bool operator!=(const IntMat& rhs) const { return !(*this == rhs); }

    Vec apply(const Vec& v) const;  // this * v
    Vec row(int i) const;
    Vec col(int j) const;

    IntMat hstack(const IntMat& rhs) const;
    IntMat col_range(int begin, int end) const;  // columns [begin, end)
    IntMat block(int row0, int col0, int nrows, int ncols) const;

    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const;
    bool is_zero() const;

    /// Exact determinant (Bareiss fraction-free elimination). Square only;
    /// the empty 0x0 matrix has determinant 1.
    Int det() const;

    /// Row/column operations used by the normal-form algorithms.
    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    void add_row_multiple(int dst, int src, const Int& c);  // row dst += c * row src
    void add_col_multiple(int dst, int src, const Int& c);  // col dst += c * col src
    void negate_row(int i);
    void negate_col(int j);

    std::string to_string() const;

private:
    int rows_, cols_;
    std::vector<Int> e_;
};

// Small exact vector helpers shared across the library.
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
bool vec_is_zero(const Vec& v);
int vec_cmp(const Vec& a, const Vec& b);  // lexicographic; vectors of equal length
std::string vec_to_string(const Vec& v);

}  // namespace affchar
