#include "affchar/int_mat.hpp"

#include "affchar/errors.hpp"

#include <sstream>

namespace affchar {

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::diagonal(const Vec& d) {
    IntMat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

IntMat IntMat::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    IntMat m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        require(static_cast<int>(row.size()) == c, "ShapeMismatch", "ragged row list");
        int j = 0;
        for (long v : row) m.at(i, j++) = v;
        ++i;
    }
    return m;
}

IntMat IntMat::column(const Vec& v) {
    IntMat m(static_cast<int>(v.size()), 1);
    for (size_t i = 0; i < v.size(); ++i) m.at(static_cast<int>(i), 0) = v[i];
    return m;
}

IntMat IntMat::transpose() const {
    IntMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMat IntMat::operator*(const IntMat& rhs) const {
    require(cols_ == rhs.rows_, "ShapeMismatch", "matrix product shape mismatch");
    IntMat p(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j) p.at(i, j) += a * rhs.at(k, j);
        }
    return p;
}

IntMat IntMat::operator+(const IntMat& rhs) const {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "ShapeMismatch", "matrix sum shape mismatch");
    IntMat s = *this;
    for (size_t i = 0; i < e_.size(); ++i) s.e_[i] += rhs.e_[i];
    return s;
}

IntMat IntMat::operator-() const {
    IntMat n = *this;
    for (auto& v : n.e_) v = -v;
    return n;
}

Vec IntMat::apply(const Vec& v) const {
    require(static_cast<int>(v.size()) == cols_, "ShapeMismatch", "matrix-vector shape mismatch");
    Vec r(rows_, Int(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
}

Vec IntMat::row(int i) const {
    Vec r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

Vec IntMat::col(int j) const {
    Vec c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

IntMat IntMat::hstack(const IntMat& rhs) const {
    if (cols_ == 0 && rows_ == 0) return rhs;
    if (rhs.cols_ == 0 && rhs.rows_ == 0) return *this;
    require(rows_ == rhs.rows_, "ShapeMismatch", "hstack row mismatch");
    IntMat m(rows_, cols_ + rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
        for (int j = 0; j < rhs.cols_; ++j) m.at(i, cols_ + j) = rhs.at(i, j);
    }
    return m;
}

IntMat IntMat::col_range(int begin, int end) const {
    IntMat m(rows_, end - begin);
    for (int i = 0; i < rows_; ++i)
        for (int j = begin; j < end; ++j) m.at(i, j - begin) = at(i, j);
    return m;
}

IntMat IntMat::block(int row0, int col0, int nrows, int ncols) const {
    IntMat m(nrows, ncols);
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < ncols; ++j) m.at(i, j) = at(row0 + i, col0 + j);
    return m;
}

bool IntMat::is_symmetric() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool IntMat::is_zero() const {
    for (const auto& v : e_)
        if (v != 0) return false;
    return true;
}

Int IntMat::det() const {
    require(is_square(), "ShapeMismatch", "determinant of a non-square matrix");
    int n = rows_;
    if (n == 0) return 1;
    IntMat a = *this;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

void IntMat::swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMat::swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMat::add_row_multiple(int dst, int src, const Int& c) {
    if (c == 0) return;
    for (int j = 0; j < cols_; ++j) at(dst, j) += c * at(src, j);
}

void IntMat::add_col_multiple(int dst, int src, const Int& c) {
    if (c == 0) return;
    for (int i = 0; i < rows_; ++i) at(i, dst) += c * at(i, src);
}

void IntMat::negate_row(int i) {
    for (int j = 0; j < cols_; ++j) at(i, j) = -at(i, j);
}

void IntMat::negate_col(int j) {
    for (int i = 0; i < rows_; ++i) at(i, j) = -at(i, j);
}

std::string IntMat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        if (i) os << ",";
        os << "[";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << ",";
            os << at(i, j).get_str();
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

bool vec_is_zero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

int vec_cmp(const Vec& a, const Vec& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string vec_to_string(const Vec& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + "]";
}

}  // namespace affchar
