#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sflow/field.hpp"

namespace sflow {

// Dense matrix over one of the exact fields. Immutable by convention:
// operations return fresh matrices.
class Matrix {
public:
    Matrix() : f_(Field::q()), rows_(0), cols_(0) {}
    Matrix(Field f, size_t rows, size_t cols)
        : f_(f), rows_(rows), cols_(cols), a_(rows * cols, FieldValue::zero(f)) {}

    static Matrix identity(const Field& f, size_t n) {
        Matrix m(f, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = FieldValue::one(f);
        return m;
    }
    static Matrix zero(const Field& f, size_t rows, size_t cols) { return Matrix(f, rows, cols); }
    static Matrix scalar_embed(const FieldValue& c) {
        Matrix m(c.field(), 1, 1);
        m.at(0, 0) = c;
        return m;
    }
    static Matrix from_ints(const Field& f, size_t rows, size_t cols,
                            std::initializer_list<long long> vals) {
        Matrix m(f, rows, cols);
        size_t i = 0;
        for (long long v : vals) m.a_[i++] = FieldValue::from_int(f, v);
        return m;
    }

    const Field& field() const { return f_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    FieldValue& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const FieldValue& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const {
        Matrix r(f_, cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    // Embed a Q matrix entrywise into Q(s); identity on Q(s) matrices.
    Matrix to_qs() const {
        Matrix r(Field::qs(), rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].to_qs();
        return r;
    }

    std::string str() const {
        std::string out;
        for (size_t i = 0; i < rows_; ++i) {
            out += "[";
            for (size_t j = 0; j < cols_; ++j) {
                if (j) out += ", ";
                out += at(i, j).str();
            }
            out += "]\n";
        }
        return out;
    }

private:
    Field f_;
    size_t rows_, cols_;
    std::vector<FieldValue> a_;
};

inline void check_same_field(const Matrix& a, const Matrix& b) {
    if (!(a.field() == b.field()))
        throw FieldMismatch(a.field().name() + " vs " + b.field().name());
}

inline Matrix mat_add(const Matrix& a, const Matrix& b) {
    check_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("add " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " with " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    Matrix r(a.field(), a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
    return r;
}

inline Matrix mat_sub(const Matrix& a, const Matrix& b) {
    check_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("sub");
    Matrix r(a.field(), a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
    return r;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
    check_same_field(a, b);
    if (a.cols() != b.rows())
        throw DimensionMismatch("mul " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " with " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    Matrix r(a.field(), a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (size_t j = 0; j < b.cols(); ++j)
                r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
        }
    return r;
}

inline Matrix mat_scale(const FieldValue& c, const Matrix& a) {
    Matrix r(a.field(), a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = c * a.at(i, j);
    return r;
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
    check_same_field(a, b);
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack row counts differ");
    Matrix r(a.field(), a.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
    check_same_field(a, b);
    if (a.cols() != b.cols()) throw DimensionMismatch("vstack column counts differ");
    Matrix r(a.field(), a.rows() + b.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
    return r;
}

inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
    check_same_field(a, b);
    Matrix r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) r.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return r;
}

struct RrefResult {
    Matrix R;
    size_t rank = 0;
    std::vector<size_t> pivots; // pivot column per nonzero row
};

// Unique reduced row echelon form. Pivot selection: first nonzero entry
// scanning top-to-bottom within each column, columns left-to-right.
inline RrefResult rref(Matrix M) {
    size_t rank = 0;
    std::vector<size_t> pivots;
    for (size_t col = 0; col < M.cols() && rank < M.rows(); ++col) {
        size_t sel = rank;
        while (sel < M.rows() && M.at(sel, col).is_zero()) ++sel;
        if (sel == M.rows()) continue;
        if (sel != rank)
            for (size_t j = 0; j < M.cols(); ++j) std::swap(M.at(sel, j), M.at(rank, j));
        FieldValue inv = M.at(rank, col).inv();
        for (size_t j = col; j < M.cols(); ++j) M.at(rank, j) = inv * M.at(rank, j);
        for (size_t i = 0; i < M.rows(); ++i) {
            if (i == rank || M.at(i, col).is_zero()) continue;
            FieldValue f = M.at(i, col);
            for (size_t j = col; j < M.cols(); ++j)
                M.at(i, j) = M.at(i, j) - f * M.at(rank, j);
        }
        pivots.push_back(col);
        ++rank;
    }
    return {std::move(M), rank, std::move(pivots)};
}

inline size_t mat_rank(const Matrix& M) { return rref(M).rank; }

// Rows form a basis of {x : Mx = 0}; returned in RREF-of-basis form, which is
// canonical. Row count = cols - rank(M).
inline Matrix nullspace(const Matrix& M) {
    RrefResult r = rref(M);
    std::vector<bool> is_pivot(M.cols(), false);
    for (size_t c : r.pivots) is_pivot[c] = true;
    Matrix basis(M.field(), M.cols() - r.rank, M.cols());
    size_t row = 0;
    for (size_t free_col = 0; free_col < M.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        basis.at(row, free_col) = FieldValue::one(M.field());
        for (size_t i = 0; i < r.rank; ++i)
            basis.at(row, r.pivots[i]) = -r.R.at(i, free_col);
        ++row;
    }
    return rref(std::move(basis)).R;
}

inline Matrix inverse(const Matrix& M) {
    if (M.rows() != M.cols()) throw DimensionMismatch("inverse of non-square matrix");
    size_t n = M.rows();
    RrefResult r = rref(hstack(M, Matrix::identity(M.field(), n)));
    if (r.rank < n || (n > 0 && r.pivots[n - 1] >= n)) throw SingularMatrix();
    Matrix inv(M.field(), n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv.at(i, j) = r.R.at(i, n + j);
    return inv;
}

} // namespace sflow
