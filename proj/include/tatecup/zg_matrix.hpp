#pragma once

// Vectors and matrices over Z[G], and the regular-representation expansion
// to plain integer linear algebra.
//
// Conventions: a ZGMatrix M with rows indexed by a target basis and columns by
// a source basis is the left-module map e_c -> sum_r M(r,c) e_r. On a vector,
// (M x)_r = sum_c x_c * M(r,c) (scalar on the left). A free module of rank a
// has Z-basis {g e_i}; the Z-coordinate of g e_i is i * |G| + g.

#include "tatecup/errors.hpp"
#include "tatecup/group.hpp"
#include "tatecup/int_matrix.hpp"
#include "tatecup/normal_form.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

namespace tatecup {

/// Element of a free Z[G]-module of rank n, stored by Z-coordinates.
class ZGVector {
public:
    ZGVector(GroupPtr group, std::size_t rank) : group_(std::move(group)), z_(rank * group_->order()) {}
    ZGVector(GroupPtr group, IntVector z) : group_(std::move(group)), z_(std::move(z)) {
        if (z_.size() % group_->order() != 0) throw ValidationError("Z-coordinate vector length is not a multiple of |G|");
    }

    const GroupPtr& group() const noexcept { return group_; }
    std::size_t rank() const noexcept { return z_.size() / group_->order(); }
    const IntVector& z() const noexcept { return z_; }
    IntVector& z() noexcept { return z_; }

    std::span<const Integer> coeff(std::size_t i) const { return {z_.data() + i * group_->order(), group_->order()}; }
    std::span<Integer> coeff(std::size_t i) { return {z_.data() + i * group_->order(), group_->order()}; }

    GroupRingElement entry(std::size_t i) const {
        auto c = coeff(i);
        return GroupRingElement(group_, IntVector(c.begin(), c.end()));
    }
    void set_entry(std::size_t i, const GroupRingElement& e) {
        auto c = coeff(i);
        std::copy(e.coefficients().begin(), e.coefficients().end(), c.begin());
    }

    bool is_zero() const { return is_zero_vector(z_); }

    /// Image in the module tensored down to Z: one augmentation per coordinate.
    IntVector tensor_down() const {
        IntVector out(rank());
        for (std::size_t i = 0; i < rank(); ++i) out[i] = augmentation(coeff(i));
        return out;
    }

    /// Lift of an integer vector along tensoring down: coefficient on the identity.
    static ZGVector identity_lift(GroupPtr group, std::span<const Integer> v) {
        ZGVector x(group, v.size());
        for (std::size_t i = 0; i < v.size(); ++i) x.z_[i * group->order()] = v[i];
        return x;
    }

    /// g * x under the left action.
    ZGVector act(std::size_t g) const {
        ZGVector out(group_, rank());
        const std::size_t n = group_->order();
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t h = 0; h < n; ++h) out.z_[i * n + group_->mul(g, h)] = z_[i * n + h];
        return out;
    }

    /// lambda * x for a ring element lambda.
    ZGVector scaled(std::span<const Integer> lambda) const {
        ZGVector out(group_, rank());
        for (std::size_t i = 0; i < rank(); ++i) ring_multiply_add(*group_, lambda, coeff(i), out.coeff(i));
        return out;
    }

    /// Invariant under every group element.
    bool is_invariant() const {
        const std::size_t n = group_->order();
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t h = 1; h < n; ++h)
                if (z_[i * n + h] != z_[i * n]) return false;
        return true;
    }

    ZGVector& operator+=(const ZGVector& o) {
        check(o);
        for (std::size_t k = 0; k < z_.size(); ++k) z_[k] += o.z_[k];
        return *this;
    }
    ZGVector& operator-=(const ZGVector& o) {
        check(o);
        for (std::size_t k = 0; k < z_.size(); ++k) z_[k] -= o.z_[k];
        return *this;
    }
    ZGVector& operator*=(const Integer& k) {
        for (auto& x : z_) x *= k;
        return *this;
    }
    friend ZGVector operator+(ZGVector a, const ZGVector& b) { return a += b; }
    friend ZGVector operator-(ZGVector a, const ZGVector& b) { return a -= b; }
    friend ZGVector operator*(ZGVector a, const Integer& k) { return a *= k; }
    friend bool operator==(const ZGVector& a, const ZGVector& b) { return a.z_ == b.z_; }

private:
    void check(const ZGVector& o) const {
        if (o.z_.size() != z_.size() || !group_->same_law(*o.group_)) throw ValidationError("ZGVector shape mismatch");
    }

    GroupPtr group_;
    IntVector z_;
};

/// N * x: every coordinate becomes augmentation(x_i) * N.
inline ZGVector norm_times(const ZGVector& x) {
    ZGVector out(x.group(), x.rank());
    for (std::size_t i = 0; i < x.rank(); ++i) {
        Integer a = augmentation(x.coeff(i));
        for (auto& c : out.coeff(i)) c = a;
    }
    return out;
}

/// Sparse (compressed column) matrix over Z[G].
class ZGMatrix {
public:
    ZGMatrix() = default;
    ZGMatrix(GroupPtr group, std::size_t rows, std::size_t cols)
        : group_(std::move(group)), rows_(rows), cols_(cols), col_start_(cols + 1, 0) {}

    /// Accumulates monomials coefficient * g at (row, col), then freezes.
    class Builder {
    public:
        Builder(GroupPtr group, std::size_t rows, std::size_t cols) : group_(std::move(group)), rows_(rows), cols_(cols) {}

        void add(std::size_t row, std::size_t col, std::size_t g, Integer c) {
            if (row >= rows_ || col >= cols_) throw std::out_of_range("ZGMatrix::Builder index out of range");
            if (c.is_zero()) return;
            terms_.push_back({static_cast<std::uint32_t>(col), static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(g), std::move(c)});
        }
        void add(std::size_t row, std::size_t col, std::span<const Integer> element) {
            for (std::size_t g = 0; g < element.size(); ++g)
                if (!element[g].is_zero()) add(row, col, g, element[g]);
        }
        void add(std::size_t row, std::size_t col, const GroupRingElement& e) { add(row, col, e.coefficients()); }
        void set_column(std::size_t col, const ZGVector& v) {
            for (std::size_t r = 0; r < v.rank(); ++r) add(r, col, v.coeff(r));
        }

        ZGMatrix build() && {
            std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
                return std::tie(a.col, a.row, a.g) < std::tie(b.col, b.row, b.g);
            });
            const std::size_t n = group_->order();
            ZGMatrix m(group_, rows_, cols_);
            std::size_t i = 0;
            for (std::size_t c = 0; c < cols_; ++c) {
                m.col_start_[c] = m.row_index_.size();
                while (i < terms_.size() && terms_[i].col == c) {
                    std::uint32_t r = terms_[i].row;
                    std::vector<Integer> coeff(n);
                    while (i < terms_.size() && terms_[i].col == c && terms_[i].row == r) {
                        coeff[terms_[i].g] += terms_[i].value;
                        ++i;
                    }
                    if (!is_zero_vector(coeff)) {
                        m.row_index_.push_back(r);
                        for (auto& x : coeff) m.coeffs_.push_back(std::move(x));
                    }
                }
            }
            m.col_start_[cols_] = m.row_index_.size();
            return m;
        }

    private:
        struct Term {
            std::uint32_t col, row, g;
            Integer value;
        };
        GroupPtr group_;
        std::size_t rows_, cols_;
        std::vector<Term> terms_;
    };

    static ZGMatrix identity(GroupPtr group, std::size_t n) {
        Builder b(group, n, n);
        for (std::size_t i = 0; i < n; ++i) b.add(i, i, 0, 1);
        return std::move(b).build();
    }

    /// Dense literal: entries[r][c] is a coefficient vector of length |G|.
    static ZGMatrix from_dense(GroupPtr group, const std::vector<std::vector<std::vector<Integer>>>& entries,
                               std::size_t rows, std::size_t cols) {
        Builder b(group, rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) {
                if (entries[r][c].size() != group->order()) throw ValidationError("ZG entry has wrong length");
                b.add(r, c, entries[r][c]);
            }
        return std::move(b).build();
    }

    const GroupPtr& group() const noexcept { return group_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nonzero_entries() const noexcept { return row_index_.size(); }

    /// Nonzero entries of column c as (row, coefficients).
    template <class F>
    void for_each_in_column(std::size_t c, F&& f) const {
        const std::size_t n = group_->order();
        for (std::size_t k = col_start_[c]; k < col_start_[c + 1]; ++k)
            f(static_cast<std::size_t>(row_index_[k]), std::span<const Integer>(coeffs_.data() + k * n, n));
    }

    GroupRingElement entry(std::size_t r, std::size_t c) const {
        GroupRingElement e(group_);
        for (std::size_t k = col_start_[c]; k < col_start_[c + 1]; ++k)
            if (row_index_[k] == r)
                for (std::size_t g = 0; g < group_->order(); ++g) e[g] = coeffs_[k * group_->order() + g];
        return e;
    }

    ZGVector column(std::size_t c) const {
        ZGVector v(group_, rows_);
        for_each_in_column(c, [&](std::size_t r, std::span<const Integer> e) { std::copy(e.begin(), e.end(), v.coeff(r).begin()); });
        return v;
    }

    bool is_zero() const { return row_index_.empty(); }

    /// M x.
    ZGVector apply(const ZGVector& x) const {
        if (x.rank() != cols_) throw ValidationError("ZGMatrix::apply: rank mismatch");
        ZGVector out(group_, rows_);
        for (std::size_t c = 0; c < cols_; ++c) {
            auto xc = x.coeff(c);
            if (is_zero_vector(xc)) continue;
            for_each_in_column(c, [&](std::size_t r, std::span<const Integer> e) { ring_multiply_add(*group_, xc, e, out.coeff(r)); });
        }
        return out;
    }

    /// Entry-wise augmentation: the same map after tensoring down to Z.
    IntMatrix tensor_down() const {
        IntMatrix out(rows_, cols_);
        for (std::size_t c = 0; c < cols_; ++c)
            for_each_in_column(c, [&](std::size_t r, std::span<const Integer> e) { out(r, c) = augmentation(e); });
        return out;
    }

    friend bool operator==(const ZGMatrix& a, const ZGMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.col_start_ == b.col_start_ && a.row_index_ == b.row_index_ &&
               a.coeffs_ == b.coeffs_;
    }

private:
    GroupPtr group_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::size_t> col_start_{0};
    std::vector<std::uint32_t> row_index_;
    std::vector<Integer> coeffs_;
};

/// The composite map "first N, then M": (M o N)(s,c) = sum_r N(r,c) * M(s,r).
inline ZGMatrix compose(const ZGMatrix& m, const ZGMatrix& n) {
    if (m.cols() != n.rows()) throw ValidationError("compose: dimension mismatch");
    if (!m.group()->same_law(*n.group())) throw ValidationError("compose: mismatched groups");
    const auto& group = m.group();
    ZGMatrix::Builder b(group, m.rows(), n.cols());
    for (std::size_t c = 0; c < n.cols(); ++c) {
        ZGVector col(group, m.rows());
        n.for_each_in_column(c, [&](std::size_t r, std::span<const Integer> nrc) {
            m.for_each_in_column(r, [&](std::size_t s, std::span<const Integer> msr) { ring_multiply_add(*group, nrc, msr, col.coeff(s)); });
        });
        b.set_column(c, col);
    }
    return std::move(b).build();
}

/// The same map on Z-bases {g e_i}: Z[(r, g h), (c, g)] = M(r, c)_h.
inline SparseIntMatrix z_expansion(const ZGMatrix& m) {
    const auto& group = *m.group();
    const std::size_t n = group.order();
    std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, Integer>> triplets;
    for (std::size_t c = 0; c < m.cols(); ++c)
        m.for_each_in_column(c, [&](std::size_t r, std::span<const Integer> e) {
            for (std::size_t h = 0; h < n; ++h) {
                if (e[h].is_zero()) continue;
                for (std::size_t g = 0; g < n; ++g)
                    triplets.push_back({{static_cast<std::uint32_t>(r * n + group.mul(g, h)), static_cast<std::uint32_t>(c * n + g)}, e[h]});
            }
        });
    return SparseIntMatrix::from_triplets(m.rows() * n, m.cols() * n, std::move(triplets));
}

/// Solves M x = b over Z[G] for many right-hand sides through the expanded system.
class ZGSolver {
public:
    explicit ZGSolver(const ZGMatrix& m) : group_(m.group()), rows_(m.rows()), cols_(m.cols()), solver_(z_expansion(m).to_dense()) {}

    std::optional<ZGVector> solve(const ZGVector& b) const {
        if (b.rank() != rows_) throw ValidationError("ZGSolver: right-hand side has wrong rank");
        auto x = solver_.solve(b.z());
        if (!x) return std::nullopt;
        return ZGVector(group_, std::move(*x));
    }

    std::size_t z_rank() const noexcept { return solver_.rank(); }

private:
    GroupPtr group_;
    std::size_t rows_, cols_;
    LinearSolver solver_;
};

inline std::optional<ZGVector> solve_zg_linear(const ZGMatrix& a, const ZGVector& b) {
    auto x = ZGSolver(a).solve(b);
    if (x) detail::check_internal(a.apply(*x) == b, "solve_zg_linear failed its re-multiplication check");
    return x;
}

}  // namespace tatecup
