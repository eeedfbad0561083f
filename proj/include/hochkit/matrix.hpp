#ifndef HOCHKIT_MATRIX_HPP
#define HOCHKIT_MATRIX_HPP

#include <algorithm>
#include <cassert>
#include <optional>
#include <vector>

#include "hochkit/fp.hpp"

namespace hochkit {

using Vec = std::vector<u32>;

/// Dense row-major matrix over F_p with exact arithmetic.
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(PrimeField f, int rows, int cols)
        : field_(f), rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0) {
        assert(rows >= 0 && cols >= 0);
    }
    Matrix(PrimeField f, int rows, int cols, std::vector<u32> entries)
        : field_(f), rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != std::size_t(rows) * cols)
            throw std::invalid_argument("Matrix: entry count != rows*cols");
        for (auto& v : a_) v %= field_.p();
    }

    static Matrix identity(PrimeField f, int n) {
        Matrix m(f, n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Matrix zero(PrimeField f, int rows, int cols) { return Matrix(f, rows, cols); }
    static Matrix from_column(PrimeField f, const Vec& v) {
        Matrix m(f, int(v.size()), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m(int(i), 0) = v[i] % f.p();
        return m;
    }

    const PrimeField& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    u32& operator()(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
    u32 operator()(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](u32 v) { return v == 0; });
    }

    Vec row(int r) const {
        Vec v(cols_);
        for (int c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
        return v;
    }
    Vec col(int c) const {
        Vec v(rows_);
        for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }
    void set_col(int c, const Vec& v) {
        assert(int(v.size()) == rows_);
        for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[r] % field_.p();
    }

    Matrix operator+(const Matrix& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Matrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.add(a_[i], o.a_[i]);
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Matrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.sub(a_[i], o.a_[i]);
        return r;
    }
    Matrix operator*(const Matrix& o) const {
        assert(cols_ == o.rows_);
        Matrix r(field_, rows_, o.cols_);
        const u64 p = field_.p();
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                u64 aik = (*this)(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    u64 v = r(i, j) + aik * o(k, j) % p;
                    r(i, j) = u32(v >= p ? v - p : v);
                }
            }
        return r;
    }
    Matrix scaled(u32 s) const {
        Matrix r = *this;
        for (auto& v : r.a_) v = field_.mul(v, s);
        return r;
    }
    Matrix negated() const {
        Matrix r = *this;
        for (auto& v : r.a_) v = field_.neg(v);
        return r;
    }

    Vec apply(const Vec& x) const {
        assert(int(x.size()) == cols_);
        Vec y(rows_, 0);
        const u64 p = field_.p();
        for (int i = 0; i < rows_; ++i) {
            u64 acc = 0;
            for (int j = 0; j < cols_; ++j) acc = (acc + u64((*this)(i, j)) * x[j]) % p;
            y[i] = u32(acc);
        }
        return y;
    }

    Matrix transposed() const {
        Matrix r(field_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    /// Kronecker product, left factor major: index (i,k),(j,l) -> entry A(i,j)*B(k,l).
    Matrix kron(const Matrix& b) const {
        Matrix r(field_, rows_ * b.rows_, cols_ * b.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                u32 aij = (*this)(i, j);
                if (aij == 0) continue;
                for (int k = 0; k < b.rows_; ++k)
                    for (int l = 0; l < b.cols_; ++l)
                        r(i * b.rows_ + k, j * b.cols_ + l) = field_.mul(aij, b(k, l));
            }
        return r;
    }

    /// In-place reduced row echelon form; returns pivot column list.
    /// Deterministic: leftmost pivot, first nonzero row.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            int pr = -1;
            for (int i = r; i < rows_; ++i)
                if ((*this)(i, c) != 0) {
                    pr = i;
                    break;
                }
            if (pr < 0) continue;
            if (pr != r)
                for (int j = 0; j < cols_; ++j) std::swap((*this)(r, j), (*this)(pr, j));
            u32 inv = field_.inv((*this)(r, c));
            for (int j = c; j < cols_; ++j) (*this)(r, j) = field_.mul((*this)(r, j), inv);
            for (int i = 0; i < rows_; ++i) {
                if (i == r) continue;
                u32 f = (*this)(i, c);
                if (f == 0) continue;
                for (int j = c; j < cols_; ++j)
                    (*this)(i, j) = field_.sub((*this)(i, j), field_.mul(f, (*this)(r, j)));
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    int rank() const {
        Matrix m = *this;
        return int(m.rref().size());
    }

  private:
    PrimeField field_;
    int rows_, cols_;
    std::vector<u32> a_;
};

inline Matrix hstack(const Matrix& a, const Matrix& b) {
    assert(a.rows() == b.rows());
    Matrix r(a.field(), a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
    assert(a.cols() == b.cols());
    Matrix r(a.field(), a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(a.rows() + i, j) = b(i, j);
    return r;
}

/// Basis of the right null space { v : M v = 0 }.  One vector per free
/// column, listed in increasing free-column order; each vector has 1 at its
/// own free coordinate and 0 at every other free coordinate (reduced
/// echelon shape), so the output is deterministic.
inline std::vector<Vec> kernel_basis(const Matrix& m) {
    Matrix r = m;
    std::vector<int> pivots = r.rref();
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    const PrimeField& f = m.field();
    std::vector<Vec> basis;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        Vec v(m.cols(), 0);
        v[c] = 1;
        for (std::size_t t = 0; t < pivots.size(); ++t) v[pivots[t]] = f.neg(r(int(t), c));
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some x with M x = b, free variables set to 0 in echelon order, or
/// nullopt when b is not in the column space.
inline std::optional<Vec> solve_linear(const Matrix& m, const Vec& b) {
    if (int(b.size()) != m.rows())
        throw std::invalid_argument("solve_linear: dimension mismatch");
    Matrix aug = hstack(m, Matrix::from_column(m.field(), b));
    std::vector<int> pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    Vec x(m.cols(), 0);
    for (std::size_t t = 0; t < pivots.size(); ++t) x[pivots[t]] = aug(int(t), m.cols());
    return x;
}

/// Columns of `cols` restricted to a basis of their span, pivot-chosen via
/// row echelon of the transpose-free approach: returns indices of a
/// deterministic spanning subset in input order.
inline std::vector<int> independent_columns(const Matrix& m) {
    Matrix r = m;
    return r.rref();  // pivot columns of the rref are the chosen independent columns
}

/// Solve M X = B column by column; nullopt if any column fails.
inline std::optional<Matrix> solve_matrix(const Matrix& m, const Matrix& b) {
    assert(m.rows() == b.rows());
    Matrix x(m.field(), m.cols(), b.cols());
    Matrix aug = hstack(m, b);
    std::vector<int> pivots = aug.rref();
    for (int c : pivots)
        if (c >= m.cols()) return std::nullopt;
    for (int j = 0; j < b.cols(); ++j)
        for (std::size_t t = 0; t < pivots.size(); ++t) x(pivots[t], j) = aug(int(t), m.cols() + j);
    return x;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto x = solve_matrix(m, Matrix::identity(m.field(), m.rows()));
    if (!x) return std::nullopt;
    if (!((*x) * m == Matrix::identity(m.field(), m.rows()))) return std::nullopt;
    return x;
}

/// Row space basis in RREF order (nonzero rows).
inline Matrix row_space_basis(const Matrix& m) {
    Matrix r = m;
    std::vector<int> pivots = r.rref();
    Matrix out(m.field(), int(pivots.size()), m.cols());
    for (std::size_t t = 0; t < pivots.size(); ++t)
        for (int j = 0; j < m.cols(); ++j) out(int(t), j) = r(int(t), j);
    return out;
}

/// Matrix whose columns are the given vectors.
inline Matrix columns_matrix(PrimeField f, int dim, const std::vector<Vec>& vs) {
    Matrix m(f, dim, int(vs.size()));
    for (std::size_t j = 0; j < vs.size(); ++j) {
        assert(int(vs[j].size()) == dim);
        m.set_col(int(j), vs[j]);
    }
    return m;
}

}  // namespace hochkit

#endif
