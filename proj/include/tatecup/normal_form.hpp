#pragma once

// Smith and Hermite normal forms over Z, the sparse elementary-divisor engine,
// and a factor-once linear solver.

#include "tatecup/errors.hpp"
#include "tatecup/int_matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace tatecup {

struct SmithOptions {
    bool transforms = true;  // compute U and V
    bool inverses = false;   // also compute U^-1 and V^-1 (requires transforms)
};

/// U * A * V = S with S diagonal, d_1 | d_2 | ... | d_r, all d_i > 0.
struct SmithDecomposition {
    IntMatrix U, S, V;
    IntMatrix U_inverse, V_inverse;  // empty unless requested
    std::size_t rank = 0;

    std::vector<Integer> invariant_factors() const {
        std::vector<Integer> d;
        for (std::size_t i = 0; i < rank; ++i) d.push_back(S(i, i));
        return d;
    }
};

namespace detail {

class SmithWorker {
public:
    SmithWorker(const IntMatrix& a, SmithOptions opt)
        : w_(a), with_t_(opt.transforms), with_inv_(opt.transforms && opt.inverses) {
        if (with_t_) {
            u_ = IntMatrix::identity(a.rows());
            v_ = IntMatrix::identity(a.cols());
        }
        if (with_inv_) {
            ui_ = IntMatrix::identity(a.rows());
            vi_ = IntMatrix::identity(a.cols());
        }
    }

    SmithDecomposition run() {
        const std::size_t m = w_.rows(), n = w_.cols();
        std::size_t t = 0;
        for (; t < std::min(m, n); ++t) {
            auto piv = find_pivot(t);
            if (!piv) break;
            move_to(t, piv->first, piv->second);
            reduce_at(t);
            if (w_(t, t).sign() < 0) negate_row(t);
        }
        SmithDecomposition out;
        out.rank = t;
        out.S = std::move(w_);
        out.U = std::move(u_);
        out.V = std::move(v_);
        out.U_inverse = std::move(ui_);
        out.V_inverse = std::move(vi_);
        return out;
    }

private:
    // Smallest nonzero absolute value, ties broken by lowest (row, col).
    std::optional<std::pair<std::size_t, std::size_t>> find_pivot(std::size_t t) const {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        const Integer* best_v = nullptr;
        for (std::size_t i = t; i < w_.rows(); ++i)
            for (std::size_t j = t; j < w_.cols(); ++j) {
                const Integer& x = w_(i, j);
                if (x.is_zero()) continue;
                if (!best_v || cmp_abs(x, *best_v) == std::strong_ordering::less) {
                    best = {i, j};
                    best_v = &x;
                    if (x.is_unit()) return best;
                }
            }
        return best;
    }

    void move_to(std::size_t t, std::size_t i, std::size_t j) {
        swap_rows(t, i);
        swap_cols(t, j);
    }

    void reduce_at(std::size_t t) {
        const std::size_t m = w_.rows(), n = w_.cols();
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (w_(i, t).is_zero()) continue;
                Integer q = nearest_div(w_(i, t), w_(t, t));
                add_row(i, t, -q, t);
                if (!w_(i, t).is_zero()) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (w_(t, j).is_zero()) continue;
                Integer q = nearest_div(w_(t, j), w_(t, t));
                add_col(j, t, -q, t);
                if (!w_(t, j).is_zero()) clean = false;
            }
            if (!clean) {
                // A remainder smaller than the pivot survived; promote the smallest.
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (!w_(i, t).is_zero() && cmp_abs(w_(i, t), w_(bi, bj)) == std::strong_ordering::less) bi = i, bj = t;
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!w_(t, j).is_zero() && cmp_abs(w_(t, j), w_(bi, bj)) == std::strong_ordering::less) bi = t, bj = j;
                move_to(t, bi, bj);
                continue;
            }
            // Divisibility chain: the pivot must divide the whole trailing block.
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!divides(w_(t, t), w_(i, j))) {
                        add_row(t, i, Integer(1), t);
                        fixed = true;
                        break;
                    }
            if (!fixed) return;
        }
    }

    void add_row(std::size_t target, std::size_t source, const Integer& q, std::size_t from_col) {
        w_.add_row_multiple(target, source, q, from_col);
        if (with_t_) u_.add_row_multiple(target, source, q);
        if (with_inv_) ui_.add_col_multiple(source, target, -q);
    }
    void add_col(std::size_t target, std::size_t source, const Integer& q, std::size_t from_row) {
        w_.add_col_multiple(target, source, q, from_row);
        if (with_t_) v_.add_col_multiple(target, source, q);
        if (with_inv_) vi_.add_row_multiple(source, target, -q);
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        w_.swap_rows(a, b);
        if (with_t_) u_.swap_rows(a, b);
        if (with_inv_) ui_.swap_cols(a, b);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        w_.swap_cols(a, b);
        if (with_t_) v_.swap_cols(a, b);
        if (with_inv_) vi_.swap_rows(a, b);
    }
    void negate_row(std::size_t r) {
        w_.negate_row(r);
        if (with_t_) u_.negate_row(r);
        if (with_inv_) ui_.negate_col(r);
    }

    IntMatrix w_, u_, v_, ui_, vi_;
    bool with_t_, with_inv_;
};

}  // namespace detail

/// Deterministic Smith normal form.
inline SmithDecomposition smith_normal_form(const IntMatrix& a, SmithOptions opt = {}) {
    return detail::SmithWorker(a, opt).run();
}

/// Nonzero invariant factors d_1 | ... | d_r of a sparse matrix, without
/// transforms. Unit pivots are eliminated in sparse storage; whatever is left
/// (or everything, once fill exceeds the threshold) is finished densely.
inline std::vector<Integer> elementary_divisors(const SparseIntMatrix& a,
                                                double fill_threshold = default_limits().dense_fill_threshold) {
    using Row = std::vector<std::pair<std::uint32_t, Integer>>;
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<Row> rows(m);
    std::vector<std::vector<std::uint32_t>> col_rows(n);
    std::size_t nnz = 0;
    for (std::size_t r = 0; r < m; ++r)
        for (const auto& e : a.row(r)) {
            rows[r].emplace_back(e.col, e.value);
            col_rows[e.col].push_back(static_cast<std::uint32_t>(r));
            ++nnz;
        }
    std::vector<bool> row_active(m, true), col_active(n, true);
    std::size_t active_rows = m, active_cols = n, ones = 0;

    auto find = [](const Row& row, std::uint32_t c) -> const Integer* {
        auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::uint32_t x) { return e.first < x; });
        return (it != row.end() && it->first == c) ? &it->second : nullptr;
    };
    // rows[i] -= q * rows[p]
    auto subtract = [&](std::uint32_t i, std::uint32_t p, const Integer& q) {
        Row& ri = rows[i];
        const Row& rp = rows[p];
        Row out;
        out.reserve(ri.size() + rp.size());
        std::size_t x = 0, y = 0;
        while (x < ri.size() || y < rp.size()) {
            if (y == rp.size() || (x < ri.size() && ri[x].first < rp[y].first)) {
                out.push_back(std::move(ri[x++]));
            } else if (x == ri.size() || rp[y].first < ri[x].first) {
                Integer v;
                v.sub_product(q, rp[y].second);
                col_rows[rp[y].first].push_back(i);
                out.emplace_back(rp[y].first, std::move(v));
                ++y;
            } else {
                Integer v = std::move(ri[x].second);
                v.sub_product(q, rp[y].second);
                if (!v.is_zero()) out.emplace_back(ri[x].first, std::move(v));
                ++x, ++y;
            }
        }
        nnz = nnz + out.size() - ri.size();
        ri = std::move(out);
    };

    bool progress = true, go_dense = false;
    while (progress && !go_dense) {
        progress = false;
        for (std::uint32_t c = 0; c < n && !go_dense; ++c) {
            if (!col_active[c]) continue;
            auto& cr = col_rows[c];
            std::sort(cr.begin(), cr.end());
            cr.erase(std::unique(cr.begin(), cr.end()), cr.end());
            std::erase_if(cr, [&](std::uint32_t r) { return !row_active[r] || !find(rows[r], c); });
            if (cr.empty()) {
                col_active[c] = false;
                --active_cols;
                continue;
            }
            std::optional<std::uint32_t> piv;
            for (std::uint32_t r : cr)
                if (find(rows[r], c)->is_unit() && (!piv || rows[r].size() < rows[*piv].size())) piv = r;
            if (!piv) continue;
            const Integer v = *find(rows[*piv], c);
            for (std::uint32_t r : std::vector<std::uint32_t>(cr)) {
                if (r == *piv) continue;
                Integer q = *find(rows[r], c) * v;  // v = +-1
                subtract(r, *piv, q);
            }
            nnz -= rows[*piv].size();
            rows[*piv].clear();
            row_active[*piv] = false;
            col_active[c] = false;
            --active_rows;
            --active_cols;
            cr.clear();
            ++ones;
            progress = true;
            double cells = static_cast<double>(active_rows) * static_cast<double>(active_cols);
            if (cells > 4096.0 && static_cast<double>(nnz) > fill_threshold * cells) go_dense = true;
        }
    }

    std::vector<Integer> result(ones, Integer(1));
    std::vector<std::size_t> rmap, cmap(n, SIZE_MAX);
    for (std::size_t r = 0; r < m; ++r)
        if (row_active[r] && !rows[r].empty()) rmap.push_back(r);
    std::size_t nc = 0;
    for (std::size_t c = 0; c < n; ++c)
        if (col_active[c]) cmap[c] = nc++;
    if (!rmap.empty() && nc > 0) {
        IntMatrix rest(rmap.size(), nc);
        for (std::size_t i = 0; i < rmap.size(); ++i)
            for (auto& [c, v] : rows[rmap[i]])
                if (cmap[c] != SIZE_MAX) rest(i, cmap[c]) = std::move(v);
        auto snf = smith_normal_form(rest, {.transforms = false});
        for (auto& d : snf.invariant_factors()) result.push_back(std::move(d));
    }
    return result;
}

inline std::vector<Integer> elementary_divisors(const IntMatrix& a) {
    return elementary_divisors(SparseIntMatrix::from_dense(a));
}

/// Factors A once (column Hermite form, A * V = H) and answers A x = b for
/// many right-hand sides. Every returned solution has been re-multiplied.
class LinearSolver {
public:
    explicit LinearSolver(IntMatrix a) : a_(std::move(a)) {
        const std::size_t m = a_.rows(), n = a_.cols();
        e_ = a_.transpose();
        u_ = IntMatrix::identity(n);
        std::size_t p = 0;
        for (std::size_t c = 0; c < m && p < n; ++c) {
            for (;;) {
                std::optional<std::size_t> s;
                for (std::size_t i = p; i < n; ++i)
                    if (!e_(i, c).is_zero() && (!s || cmp_abs(e_(i, c), e_(*s, c)) == std::strong_ordering::less)) s = i;
                if (!s) break;
                bool clean = true;
                for (std::size_t i = p; i < n; ++i) {
                    if (i == *s || e_(i, c).is_zero()) continue;
                    Integer q = nearest_div(e_(i, c), e_(*s, c));
                    add_row(i, *s, -q, c);
                    if (!e_(i, c).is_zero()) clean = false;
                }
                if (!clean) continue;
                if (*s != p) {
                    e_.swap_rows(*s, p);
                    u_.swap_rows(*s, p);
                }
                if (e_(p, c).sign() < 0) {
                    e_.negate_row(p);
                    u_.negate_row(p);
                }
                for (std::size_t i = 0; i < p; ++i) {
                    if (e_(i, c).is_zero()) continue;
                    add_row(i, p, -floor_div(e_(i, c), e_(p, c)), c);
                }
                pivot_cols_.push_back(c);
                ++p;
                break;
            }
        }
    }

    const IntMatrix& matrix() const noexcept { return a_; }
    std::size_t rank() const noexcept { return pivot_cols_.size(); }

    std::optional<IntVector> solve(std::span<const Integer> b) const {
        if (b.size() != a_.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
        IntVector r(b.begin(), b.end());
        IntVector x(a_.cols());
        for (std::size_t p = 0; p < pivot_cols_.size(); ++p) {
            const std::size_t c = pivot_cols_[p];
            if (r[c].is_zero()) continue;
            if (!divides(e_(p, c), r[c])) return std::nullopt;
            Integer y = exact_div(r[c], e_(p, c));
            auto erow = e_.row(p);
            for (std::size_t j = c; j < r.size(); ++j)
                if (!erow[j].is_zero()) r[j].sub_product(y, erow[j]);
            auto urow = u_.row(p);
            for (std::size_t j = 0; j < x.size(); ++j)
                if (!urow[j].is_zero()) x[j].add_product(y, urow[j]);
        }
        if (!is_zero_vector(r)) return std::nullopt;
        detail::check_internal(a_ * x == IntVector(b.begin(), b.end()), "linear solve failed its re-multiplication check");
        return x;
    }

    /// Columns form a Z-basis of ker A.
    IntMatrix kernel_basis() const {
        const std::size_t n = a_.cols();
        IntMatrix k(n, n - rank());
        for (std::size_t i = rank(); i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) k(j, i - rank()) = u_(i, j);
        return k;
    }

private:
    void add_row(std::size_t target, std::size_t source, const Integer& q, std::size_t from_col) {
        e_.add_row_multiple(target, source, q, from_col);
        u_.add_row_multiple(target, source, q);
    }

    IntMatrix a_;
    IntMatrix e_;  // echelon form of A^T
    IntMatrix u_;  // u_ * A^T = e_
    std::vector<std::size_t> pivot_cols_;
};

/// x with A x = b, or nullopt when no integral solution exists.
inline std::optional<IntVector> solve_linear(const IntMatrix& a, std::span<const Integer> b) {
    return LinearSolver(a).solve(b);
}

}  // namespace tatecup
