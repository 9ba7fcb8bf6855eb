#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "field.hpp"

namespace tgrs {

using FVector = std::vector<FieldElement>;

struct RrefResult;

/// Dense matrix over one Field, row-major, exact arithmetic throughout.
///
/// Entries are stored as canonical element indices with a shared_ptr keeping
/// the field alive, so matrices are cheap to copy and safe to move across
/// scopes. Enumeration-heavy callers can work on the raw index storage via
/// idx()/set_idx() and the field's *x routines.
class FMatrix {
public:
    FMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static FMatrix identity(FieldPtr field, std::size_t n) {
        FMatrix m(std::move(field), n, n);
        for (std::size_t i = 0; i < n; ++i) m.set_idx(i, i, 1);
        return m;
    }

    /// Square matrix with v on the main diagonal.
    static FMatrix diag(const FVector& v) {
        if (v.empty()) throw DimensionMismatch("diag of empty vector");
        FMatrix m(v.front().field_ptr()->shared_from_this(), v.size(), v.size());
        for (std::size_t i = 0; i < v.size(); ++i) m.set(i, i, v[i]);
        return m;
    }

    static FMatrix from_rows(FieldPtr field, const std::vector<FVector>& rows) {
        if (rows.empty()) throw DimensionMismatch("matrix needs at least one row");
        FMatrix m(std::move(field), rows.size(), rows.front().size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != m.cols_) throw DimensionMismatch("ragged rows");
            for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, rows[r][c]);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }

    FieldElement at(std::size_t r, std::size_t c) const { return {data_[r * cols_ + c], field_.get()}; }
    void set(std::size_t r, std::size_t c, FieldElement v) {
        if (v.field_ptr() != field_.get()) throw FieldMismatch("entry from another field");
        data_[r * cols_ + c] = v.index();
    }

    std::uint32_t idx(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set_idx(std::size_t r, std::size_t c, std::uint32_t v) { data_[r * cols_ + c] = v; }

    FVector row(std::size_t r) const {
        FVector out;
        out.reserve(cols_);
        for (std::size_t c = 0; c < cols_; ++c) out.push_back(at(r, c));
        return out;
    }

    bool operator==(const FMatrix& o) const {
        if (field_.get() != o.field_.get()) throw FieldMismatch("comparing matrices over different fields");
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const FMatrix& o) const { return !(*this == o); }

    FMatrix operator+(const FMatrix& o) const {
        check_same_shape(o);
        FMatrix out(field_, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_->addx(data_[i], o.data_[i]);
        return out;
    }
    FMatrix operator-(const FMatrix& o) const {
        check_same_shape(o);
        FMatrix out(field_, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_->subx(data_[i], o.data_[i]);
        return out;
    }
    FMatrix operator*(FieldElement s) const {
        if (s.field_ptr() != field_.get()) throw FieldMismatch("scalar from another field");
        FMatrix out(field_, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_->mulx(data_[i], s.index());
        return out;
    }

    FMatrix operator*(const FMatrix& o) const {
        if (field_.get() != o.field_.get()) throw FieldMismatch("multiplying matrices over different fields");
        if (cols_ != o.rows_) throw DimensionMismatch("inner dimensions disagree");
        FMatrix out(field_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t kk = 0; kk < cols_; ++kk) {
                std::uint32_t a = data_[i * cols_ + kk];
                if (!a) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    std::uint32_t b = o.data_[kk * o.cols_ + j];
                    if (!b) continue;
                    auto& cell = out.data_[i * o.cols_ + j];
                    cell = field_->addx(cell, field_->mulx(a, b));
                }
            }
        return out;
    }

    FMatrix transpose() const {
        FMatrix out(field_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out.data_[c * rows_ + r] = data_[r * cols_ + c];
        return out;
    }

    bool is_zero() const {
        for (auto v : data_)
            if (v) return false;
        return true;
    }

    FMatrix hstack(const FMatrix& o) const {
        if (field_.get() != o.field_.get()) throw FieldMismatch("stacking matrices over different fields");
        if (rows_ != o.rows_) throw DimensionMismatch("row counts disagree");
        FMatrix out(field_, rows_, cols_ + o.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) out.set_idx(r, c, idx(r, c));
            for (std::size_t c = 0; c < o.cols_; ++c) out.set_idx(r, cols_ + c, o.idx(r, c));
        }
        return out;
    }

    FMatrix vstack(const FMatrix& o) const {
        if (field_.get() != o.field_.get()) throw FieldMismatch("stacking matrices over different fields");
        if (cols_ != o.cols_) throw DimensionMismatch("column counts disagree");
        FMatrix out(field_, rows_ + o.rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i];
        for (std::size_t i = 0; i < o.data_.size(); ++i) out.data_[data_.size() + i] = o.data_[i];
        return out;
    }

    FMatrix select_columns(const std::vector<std::size_t>& which) const {
        FMatrix out(field_, rows_, which.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t j = 0; j < which.size(); ++j) {
                if (which[j] >= cols_) throw DimensionMismatch("column index out of range");
                out.set_idx(r, j, idx(r, which[j]));
            }
        return out;
    }

    /// Reduced row echelon form with deterministic pivoting: columns are
    /// scanned left to right and the first row with a nonzero entry becomes
    /// the pivot, so the result is reproducible bit for bit.
    RrefResult rref() const;

    std::size_t rank() const;

    /// Basis of the right kernel, one vector per free column in ascending
    /// order; each basis vector carries -1 at its free column and the RREF
    /// column entries at the pivot positions.
    std::vector<FVector> null_space() const;

    enum class SolveKind { Unique, Affine, NoSolution };

    struct SolveResult {
        SolveKind kind;
        FVector x0;                  // a particular solution (empty when NoSolution)
        std::vector<FVector> kernel; // homogeneous basis (empty when Unique)
    };

    /// Exact classification of A x = b.
    SolveResult solve_right(const FVector& b) const;

private:
    void check_same_shape(const FMatrix& o) const {
        if (field_.get() != o.field_.get()) throw FieldMismatch("matrices over different fields");
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("shapes disagree");
    }

    FieldPtr field_;
    std::size_t rows_, cols_;
    std::vector<std::uint32_t> data_;
};

struct RrefResult {
    FMatrix R;
    std::vector<std::size_t> pivots;
    std::size_t rank;
};

inline RrefResult FMatrix::rref() const {
    FMatrix R(*this);
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < cols_ && pr < rows_; ++c) {
        std::size_t sel = pr;
        while (sel < rows_ && R.idx(sel, c) == 0) ++sel;
        if (sel == rows_) continue;
        if (sel != pr)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(R.data_[sel * cols_ + j], R.data_[pr * cols_ + j]);
        std::uint32_t inv = field_->invx(R.idx(pr, c));
        for (std::size_t j = c; j < cols_; ++j) R.set_idx(pr, j, field_->mulx(R.idx(pr, j), inv));
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == pr) continue;
            std::uint32_t f = R.idx(r, c);
            if (!f) continue;
            for (std::size_t j = c; j < cols_; ++j)
                R.set_idx(r, j, field_->subx(R.idx(r, j), field_->mulx(f, R.idx(pr, j))));
        }
        pivots.push_back(c);
        ++pr;
    }
    return {std::move(R), std::move(pivots), pr};
}

inline std::size_t FMatrix::rank() const { return rref().rank; }

inline std::vector<FVector> FMatrix::null_space() const {
    auto [R, pivots, rank_] = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<FVector> basis;
    FieldElement minus_one = -field_->one();
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        FVector v(cols_, field_->zero());
        v[f] = minus_one;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = R.at(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline FMatrix::SolveResult FMatrix::solve_right(const FVector& b) const {
    if (b.size() != rows_) throw DimensionMismatch("rhs length disagrees with row count");
    FMatrix aug(field_, rows_, cols_ + 1);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) aug.set_idx(r, c, idx(r, c));
        aug.set(r, cols_, b[r]);
    }
    auto [R, pivots, rank_] = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return {SolveKind::NoSolution, {}, {}};
    FVector x0(cols_, field_->zero());
    for (std::size_t i = 0; i < pivots.size(); ++i) x0[pivots[i]] = R.at(i, cols_);
    if (rank_ == cols_) return {SolveKind::Unique, std::move(x0), {}};
    return {SolveKind::Affine, std::move(x0), null_space()};
}

inline FVector mat_vec(const FMatrix& A, const FVector& x) {
    if (x.size() != A.cols()) throw DimensionMismatch("vector length disagrees with column count");
    const auto& f = *A.field();
    FVector out(A.rows(), A.field()->zero());
    for (std::size_t r = 0; r < A.rows(); ++r) {
        std::uint32_t acc = 0;
        for (std::size_t c = 0; c < A.cols(); ++c) acc = f.addx(acc, f.mulx(A.idx(r, c), x[c].index()));
        out[r] = {acc, &f};
    }
    return out;
}

inline FVector vec_mat(const FVector& x, const FMatrix& A) {
    if (x.size() != A.rows()) throw DimensionMismatch("vector length disagrees with row count");
    const auto& f = *A.field();
    FVector out(A.cols(), A.field()->zero());
    for (std::size_t c = 0; c < A.cols(); ++c) {
        std::uint32_t acc = 0;
        for (std::size_t r = 0; r < A.rows(); ++r) acc = f.addx(acc, f.mulx(x[r].index(), A.idx(r, c)));
        out[c] = {acc, &f};
    }
    return out;
}

} // namespace tgrs
