#pragma once

// The join P * Q = suspension of P (x)_Z Q with the diagonal G-action:
//   (P * Q)_d = sum_{k=0}^{d+1} P_{k-1} (x)_Z Q_{d-k},   P_{-1} = Q_{-1} = Z.
// A product of two genuine modules P_a (x) Q_b is free over Z[G] on
// e_i (x) g f_j (the twist sits on the second factor). Summands with a Z factor
// are free on e_i (x) 1 or 1 (x) f_j.
//
// Boundary: d(x (x) s) = dx (x) s + (-1)^{|x|+1} x (x) ds, where |1| = -1 and the
// boundary P_0 -> Z is the augmentation.

#include "tatecup/errors.hpp"
#include "tatecup/resolution.hpp"
#include "tatecup/zg_matrix.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tatecup {

/// Basis vector of (P * Q)_deg. `i` is empty for the Z factor on the left
/// (k = 0), `j` is empty for the Z factor on the right (k = deg + 1). In both
/// cases g is the identity.
struct JoinBasisIndex {
    std::size_t k = 0;
    std::optional<std::size_t> i;
    std::size_t g = 0;
    std::optional<std::size_t> j;

    friend bool operator==(const JoinBasisIndex&, const JoinBasisIndex&) = default;
};

/// Enumeration of the free basis of one degree of a join, lexicographic in (k, i, g, j).
class JoinLayout {
public:
    JoinLayout(std::size_t degree, std::size_t group_order, const std::vector<std::size_t>& p_ranks,
               const std::vector<std::size_t>& q_ranks)
        : degree_(degree), order_(group_order) {
        if (p_ranks.size() < degree + 1 || q_ranks.size() < degree + 1)
            throw DegreeError("join degree " + std::to_string(degree) + " needs both factors to that degree");
        for (std::size_t k = 0; k <= degree + 1; ++k) {
            std::size_t rp = k == 0 ? 1 : p_ranks[k - 1];
            std::size_t rq = k == degree + 1 ? 1 : q_ranks[degree - k];
            std::size_t w = (k == 0 || k == degree + 1) ? 1 : order_;
            p_rank_.push_back(rp);
            q_rank_.push_back(rq);
            offset_.push_back(rank_);
            rank_ += rp * w * rq;
        }
        offset_.push_back(rank_);
    }

    std::size_t degree() const noexcept { return degree_; }
    std::size_t rank() const noexcept { return rank_; }
    std::size_t summand_offset(std::size_t k) const { return offset_.at(k); }
    std::size_t summand_size(std::size_t k) const { return offset_.at(k + 1) - offset_.at(k); }

    bool mixed(std::size_t k) const noexcept { return k != 0 && k != degree_ + 1; }

    std::size_t index(std::size_t k, std::size_t i, std::size_t g, std::size_t j) const {
        if (k > degree_ + 1) throw DegreeError("join summand out of range");
        if (k == 0) return offset_[0] + j;
        if (k == degree_ + 1) return offset_[k] + i;
        return offset_[k] + (i * order_ + g) * q_rank_[k] + j;
    }
    std::size_t index(const JoinBasisIndex& b) const { return index(b.k, b.i.value_or(0), b.g, b.j.value_or(0)); }

    JoinBasisIndex at(std::size_t idx) const {
        if (idx >= rank_) throw DegreeError("join basis index out of range");
        std::size_t k = 0;
        while (offset_[k + 1] <= idx) ++k;
        std::size_t r = idx - offset_[k];
        if (k == 0) return {0, std::nullopt, 0, r};
        if (k == degree_ + 1) return {k, r, 0, std::nullopt};
        std::size_t rq = q_rank_[k];
        return {k, r / (order_ * rq), (r / rq) % order_, r % rq};
    }

private:
    std::size_t degree_, order_;
    std::size_t rank_ = 0;
    std::vector<std::size_t> p_rank_, q_rank_, offset_;
};

/// Closed form for rank (P * Q)_d; used to cross-check the enumeration.
inline std::size_t join_rank_formula(const std::vector<std::size_t>& p_ranks, const std::vector<std::size_t>& q_ranks,
                                     std::size_t group_order, std::size_t d) {
    auto rho = [](const std::vector<std::size_t>& r, long deg) -> std::size_t { return deg < 0 ? 1 : r.at(static_cast<std::size_t>(deg)); };
    std::size_t total = 0;
    for (long k = 0; k <= static_cast<long>(d) + 1; ++k) {
        long a = k - 1, b = static_cast<long>(d) - k;
        std::size_t w = (a < 0 || b < 0) ? 1 : group_order;
        total += rho(p_ranks, a) * rho(q_ranks, b) * w;
    }
    return total;
}

class Join {
public:
    /// Builds P * Q through degree n.
    Join(const Resolution& p, const Resolution& q, std::size_t n, const Limits& limits = default_limits())
        : p_ranks_(p.ranks), q_ranks_(q.ranks) {
        if (!p.group->same_law(*q.group)) throw ValidationError("join of resolutions over different groups");
        p.require_degree(n);
        q.require_degree(n);
        res_.group = p.group;
        res_.id = "join(" + p.id + "," + q.id + ")";
        for (std::size_t d = 0; d <= n; ++d) {
            layouts_.emplace_back(d, p.group->order(), p.ranks, q.ranks);
            detail::check_budget(*p.group, layouts_.back().rank(), d, limits, "join");
            res_.ranks.push_back(layouts_.back().rank());
        }
        build_augmentation(p, q);
        for (std::size_t d = 1; d <= n; ++d) res_.differentials.push_back(build_differential(p, q, d));
    }

    const Resolution& resolution() const noexcept { return res_; }
    const JoinLayout& layout(std::size_t d) const {
        if (d >= layouts_.size()) throw DegreeError("join computed to degree " + std::to_string(res_.max_degree()));
        return layouts_[d];
    }

    /// x (x) y for x in P_n, y in Q_m, as an element of (P * Q)_{n+m+1}.
    ZGVector include_cycle_tensor(std::size_t n, const ZGVector& x, std::size_t m, const ZGVector& y) const {
        const std::size_t deg = n + m + 1;
        const auto& lay = layout(deg);
        if (n >= p_ranks_.size() || m >= q_ranks_.size() || x.rank() != p_ranks_[n] || y.rank() != q_ranks_[m])
            throw ValidationError("include_cycle_tensor: rank mismatch");
        const auto& group = *res_.group;
        const std::size_t order = group.order();
        ZGVector out(res_.group, lay.rank());
        // g e_i (x) h f_j = g . (e_i (x) g^-1 h f_j)
        for (std::size_t i = 0; i < x.rank(); ++i) {
            auto xi = x.coeff(i);
            for (std::size_t g = 0; g < order; ++g) {
                if (xi[g].is_zero()) continue;
                const std::size_t ginv = group.inv(g);
                for (std::size_t j = 0; j < y.rank(); ++j) {
                    auto yj = y.coeff(j);
                    for (std::size_t h = 0; h < order; ++h) {
                        if (yj[h].is_zero()) continue;
                        out.coeff(lay.index(n + 1, i, group.mul(ginv, h), j))[g].add_product(xi[g], yj[h]);
                    }
                }
            }
        }
        return out;
    }

private:
    void build_augmentation(const Resolution& p, const Resolution& q) {
        const auto& lay = layouts_[0];
        res_.augmentation.assign(lay.rank(), Integer());
        for (std::size_t j = 0; j < q.rank(0); ++j) res_.augmentation[lay.index(0, 0, 0, j)] = q.augmentation[j];
        for (std::size_t i = 0; i < p.rank(0); ++i) res_.augmentation[lay.index(1, i, 0, 0)] = p.augmentation[i];
    }

    ZGMatrix build_differential(const Resolution& p, const Resolution& q, std::size_t d) const {
        const auto& src = layouts_[d];
        const auto& dst = layouts_[d - 1];
        const auto& group = *res_.group;
        const std::size_t order = group.order();
        ZGMatrix::Builder b(res_.group, dst.rank(), src.rank());

        for (std::size_t k = 0; k <= d + 1; ++k) {
            const long a = static_cast<long>(k) - 1;  // P-degree; -1 is the Z factor
            const long qb = static_cast<long>(d) - static_cast<long>(k);
            const Integer sign = (a + 1) % 2 == 0 ? Integer(1) : Integer(-1);

            if (k == 0) {
                // 1 (x) f_j  ->  1 (x) d f_j
                const auto& dq = q.d(d);
                for (std::size_t j = 0; j < q.rank(d); ++j) {
                    const std::size_t col = src.index(0, 0, 0, j);
                    dq.for_each_in_column(j, [&](std::size_t jj, std::span<const Integer> c) { b.add(dst.index(0, 0, 0, jj), col, c); });
                }
                continue;
            }
            if (k == d + 1) {
                // e_i (x) 1  ->  d e_i (x) 1
                const auto& dp = p.d(d);
                for (std::size_t i = 0; i < p.rank(d); ++i) {
                    const std::size_t col = src.index(k, i, 0, 0);
                    dp.for_each_in_column(i, [&](std::size_t ii, std::span<const Integer> c) { b.add(dst.index(d, ii, 0, 0), col, c); });
                }
                continue;
            }

            const std::size_t pa = static_cast<std::size_t>(a), qd = static_cast<std::size_t>(qb);
            for (std::size_t i = 0; i < p.rank(pa); ++i)
                for (std::size_t h = 0; h < order; ++h)
                    for (std::size_t j = 0; j < q.rank(qd); ++j) {
                        const std::size_t col = src.index(k, i, h, j);

                        // d e_i (x) h f_j
                        if (pa == 0) {
                            b.add(dst.index(0, 0, 0, j), col, h, p.augmentation[i]);
                        } else {
                            p.d(pa).for_each_in_column(i, [&](std::size_t ii, std::span<const Integer> c) {
                                // c_g g e_ii (x) h f_j = c_g g . (e_ii (x) g^-1 h f_j)
                                for (std::size_t g = 0; g < order; ++g)
                                    if (!c[g].is_zero()) b.add(dst.index(k - 1, ii, group.mul(group.inv(g), h), j), col, g, c[g]);
                            });
                        }

                        // sign * e_i (x) d(h f_j)
                        if (qd == 0) {
                            b.add(dst.index(k, i, 0, 0), col, 0, sign * q.augmentation[j]);
                        } else {
                            q.d(qd).for_each_in_column(j, [&](std::size_t jj, std::span<const Integer> c) {
                                for (std::size_t g = 0; g < order; ++g)
                                    if (!c[g].is_zero()) b.add(dst.index(k, i, group.mul(h, g), jj), col, 0, sign * c[g]);
                            });
                        }
                    }
        }
        return std::move(b).build();
    }

    std::vector<std::size_t> p_ranks_, q_ranks_;
    Resolution res_;
    std::vector<JoinLayout> layouts_;
};

/// P * Q through degree n as a plain resolution.
inline Resolution join(const Resolution& p, const Resolution& q, std::size_t n, const Limits& limits = default_limits()) {
    return Join(p, q, n, limits).resolution();
}

}  // namespace tatecup
