#pragma once

#include "tatecup/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tatecup {

using IntVector = std::vector<Integer>;

inline bool is_zero_vector(std::span<const Integer> v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x.is_zero(); });
}

inline IntVector to_int_vector(std::initializer_list<long long> xs) { return IntVector(xs.begin(), xs.end()); }

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            for (long long x : r) data_.emplace_back(x);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& cols) {
        IntMatrix m(rows, cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (cols[c].size() != rows) throw std::invalid_argument("column length mismatch");
            for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Integer> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Integer> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    IntVector column(std::size_t c) const {
        IntVector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    /// Rows [begin, end) as a new matrix.
    IntMatrix row_block(std::size_t begin, std::size_t end) const {
        IntMatrix m(end - begin, cols_);
        std::copy(data_.begin() + static_cast<std::ptrdiff_t>(begin * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>(end * cols_), m.data_.begin());
        return m;
    }

    IntMatrix col_block(std::size_t begin, std::size_t end) const {
        IntMatrix m(rows_, end - begin);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = begin; c < end; ++c) m(r, c - begin) = (*this)(r, c);
        return m;
    }

    bool is_zero() const { return is_zero_vector(data_); }

    std::size_t count_nonzero() const {
        return static_cast<std::size_t>(std::count_if(data_.begin(), data_.end(), [](const Integer& x) { return !x.is_zero(); }));
    }

    // Elementary operations used by the normal-form routines.
    void add_row_multiple(std::size_t target, std::size_t source, const Integer& q, std::size_t from_col = 0) {
        if (q.is_zero()) return;
        Integer* t = data_.data() + target * cols_;
        const Integer* s = data_.data() + source * cols_;
        for (std::size_t c = from_col; c < cols_; ++c)
            if (!s[c].is_zero()) t[c].add_product(q, s[c]);
    }
    void add_col_multiple(std::size_t target, std::size_t source, const Integer& q, std::size_t from_row = 0) {
        if (q.is_zero()) return;
        for (std::size_t r = from_row; r < rows_; ++r) {
            const Integer& s = (*this)(r, source);
            if (!s.is_zero()) (*this)(r, target).add_product(q, s);
        }
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
    }
    void negate_row(std::size_t r) {
        for (auto& x : row(r)) x.negate();
    }
    void negate_col(std::size_t c) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c).negate();
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
        IntMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Integer& x = a(i, k);
                if (x.is_zero()) continue;
                out.add_row_scaled_from(i, b, k, x);
            }
        return out;
    }

    friend IntVector operator*(const IntMatrix& a, std::span<const Integer> v) {
        if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
        IntVector out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            const Integer* r = a.data_.data() + i * a.cols_;
            for (std::size_t c = 0; c < a.cols_; ++c)
                if (!r[c].is_zero() && !v[c].is_zero()) out[i].add_product(r[c], v[c]);
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
        os << "[";
        for (std::size_t r = 0; r < m.rows_; ++r) {
            os << (r ? ", [" : "[");
            for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? ", " : "") << m(r, c);
            os << "]";
        }
        return os << "]";
    }

private:
    void add_row_scaled_from(std::size_t target, const IntMatrix& b, std::size_t brow, const Integer& q) {
        Integer* t = data_.data() + target * cols_;
        const Integer* s = b.data_.data() + brow * b.cols_;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!s[c].is_zero()) t[c].add_product(q, s[c]);
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> data_;
};

/// Compressed sparse row integer matrix. Built from triplets; immutable after.
class SparseIntMatrix {
public:
    struct Entry {
        std::uint32_t col;
        Integer value;
    };

    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_start_(rows + 1, 0) {}

    /// Triplets may repeat; duplicates are summed and zeros dropped.
    static SparseIntMatrix from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, Integer>> triplets) {
        std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseIntMatrix m(rows, cols);
        std::size_t i = 0;
        for (std::size_t r = 0; r < rows; ++r) {
            m.row_start_[r] = m.entries_.size();
            while (i < triplets.size() && triplets[i].first.first == r) {
                std::uint32_t c = triplets[i].first.second;
                if (c >= cols) throw std::out_of_range("sparse triplet column out of range");
                Integer v;
                while (i < triplets.size() && triplets[i].first.first == r && triplets[i].first.second == c) {
                    v += triplets[i].second;
                    ++i;
                }
                if (!v.is_zero()) m.entries_.push_back({c, std::move(v)});
            }
        }
        if (i != triplets.size()) throw std::out_of_range("sparse triplet row out of range");
        m.row_start_[rows] = m.entries_.size();
        return m;
    }

    static SparseIntMatrix from_dense(const IntMatrix& d) {
        SparseIntMatrix m(d.rows(), d.cols());
        for (std::size_t r = 0; r < d.rows(); ++r) {
            m.row_start_[r] = m.entries_.size();
            for (std::size_t c = 0; c < d.cols(); ++c)
                if (!d(r, c).is_zero()) m.entries_.push_back({static_cast<std::uint32_t>(c), d(r, c)});
        }
        m.row_start_[d.rows()] = m.entries_.size();
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nonzeros() const noexcept { return entries_.size(); }

    std::span<const Entry> row(std::size_t r) const {
        return {entries_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]};
    }

    IntMatrix to_dense() const {
        IntMatrix d(rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (const auto& e : row(r)) d(r, e.col) = e.value;
        return d;
    }

    IntVector operator*(std::span<const Integer> v) const {
        if (v.size() != cols_) throw std::invalid_argument("sparse matrix-vector dimension mismatch");
        IntVector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (const auto& e : row(r))
                if (!v[e.col].is_zero()) out[r].add_product(e.value, v[e.col]);
        return out;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::size_t> row_start_{0};
    std::vector<Entry> entries_;
};

}  // namespace tatecup
