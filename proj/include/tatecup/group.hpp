#pragma once

// Finite groups as multiplication tables, and arithmetic in the integral group
// ring Z[G] with dense coefficient vectors.

#include "tatecup/errors.hpp"
#include "tatecup/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <sstream>
#include <span>
#include <string>
#include <vector>

namespace tatecup {

using Permutation = std::vector<std::size_t>;

/// Finite group with elements 0..order-1; element 0 is the identity.
class FiniteGroup {
public:
    /// Validates the table; throws ValidationError if it is not a group law
    /// with identity 0.
    FiniteGroup(std::string label, std::vector<std::vector<std::size_t>> table,
                const Limits& limits = default_limits())
        : label_(std::move(label)), order_(table.size()) {
        if (order_ == 0) throw ValidationError("group table is empty");
        mul_.resize(order_ * order_);
        for (std::size_t i = 0; i < order_; ++i) {
            if (table[i].size() != order_) throw ValidationError("group table row " + std::to_string(i) + " has wrong length");
            for (std::size_t j = 0; j < order_; ++j) {
                if (table[i][j] >= order_) throw ValidationError("group table entry out of range");
                mul_[i * order_ + j] = table[i][j];
            }
        }
        validate(limits);
    }

    const std::string& label() const noexcept { return label_; }
    std::size_t order() const noexcept { return order_; }
    static constexpr std::size_t identity() noexcept { return 0; }
    std::size_t mul(std::size_t a, std::size_t b) const noexcept { return mul_[a * order_ + b]; }
    std::size_t inv(std::size_t a) const noexcept { return inv_[a]; }

    std::vector<std::vector<std::size_t>> table() const {
        std::vector<std::vector<std::size_t>> t(order_, std::vector<std::size_t>(order_));
        for (std::size_t i = 0; i < order_; ++i)
            for (std::size_t j = 0; j < order_; ++j) t[i][j] = mul(i, j);
        return t;
    }

    bool same_law(const FiniteGroup& o) const noexcept { return this == &o || (order_ == o.order_ && mul_ == o.mul_); }

    std::size_t element_order(std::size_t g) const {
        std::size_t k = 1;
        for (std::size_t x = g; x != identity(); x = mul(x, g)) ++k;
        return k;
    }

    bool is_abelian() const noexcept {
        for (std::size_t a = 0; a < order_; ++a)
            for (std::size_t b = a + 1; b < order_; ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

private:
    void validate(const Limits& limits) {
        for (std::size_t g = 0; g < order_; ++g) {
            if (mul(0, g) != g || mul(g, 0) != g) throw ValidationError("element 0 is not the identity of the table");
        }
        // Latin square rows/columns give existence and uniqueness of inverses.
        inv_.assign(order_, order_);
        for (std::size_t a = 0; a < order_; ++a) {
            std::vector<bool> seen_row(order_, false), seen_col(order_, false);
            for (std::size_t b = 0; b < order_; ++b) {
                std::size_t r = mul(a, b), c = mul(b, a);
                if (seen_row[r] || seen_col[c]) throw ValidationError("group table is not a Latin square");
                seen_row[r] = seen_col[c] = true;
                if (r == 0) inv_[a] = b;
            }
        }
        for (std::size_t a = 0; a < order_; ++a)
            if (mul(inv_[a], a) != 0) throw ValidationError("inverse table inconsistent");
        auto check = [&](std::size_t a, std::size_t b, std::size_t c) {
            if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
                std::ostringstream os;
                os << "group table is not associative at (" << a << "," << b << "," << c << ")";
                throw ValidationError(os.str());
            }
        };
        if (order_ <= limits.exhaustive_check_order) {
            for (std::size_t a = 0; a < order_; ++a)
                for (std::size_t b = 0; b < order_; ++b)
                    for (std::size_t c = 0; c < order_; ++c) check(a, b, c);
        } else {
            // Deterministic sample: every pair against a stride of third elements.
            std::size_t stride = std::max<std::size_t>(1, order_ / 16);
            for (std::size_t a = 0; a < order_; ++a)
                for (std::size_t b = 0; b < order_; ++b)
                    for (std::size_t c = (a + b) % stride; c < order_; c += stride) check(a, b, c);
        }
    }

    std::string label_;
    std::size_t order_;
    std::vector<std::size_t> mul_;
    std::vector<std::size_t> inv_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// ---------------------------------------------------------------------------
// Named families.

inline GroupPtr cyclic_group(std::size_t n) {
    if (n == 0) throw ValidationError("cyclic group order must be positive");
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return std::make_shared<FiniteGroup>("C" + std::to_string(n), std::move(t));
}

/// Symmetries of the regular n-gon, order 2n. Element r^i s^j has index i + n*j.
inline GroupPtr dihedral_group(std::size_t n) {
    if (n < 1) throw ValidationError("dihedral group needs n >= 1");
    std::size_t order = 2 * n;
    std::vector<std::vector<std::size_t>> t(order, std::vector<std::size_t>(order));
    for (std::size_t x = 0; x < order; ++x) {
        std::size_t a = x % n, b = x / n;
        for (std::size_t y = 0; y < order; ++y) {
            std::size_t c = y % n, d = y / n;
            // r^a s^b r^c s^d = r^(a + (-1)^b c) s^(b+d)
            std::size_t rot = b == 0 ? (a + c) % n : (a + n - c) % n;
            t[x][y] = rot + n * ((b + d) % 2);
        }
    }
    return std::make_shared<FiniteGroup>("D" + std::to_string(n), std::move(t));
}

/// Quaternion group {1,-1,i,-i,j,-j,k,-k} in that index order.
inline GroupPtr quaternion_group() {
    // unit index u in {0:1, 1:i, 2:j, 3:k}; element index = 2*u + (negative ? 1 : 0)
    static constexpr int unit_mul[4][4][2] = {
        // {unit, sign(0=+,1=-)}
        {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
        {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
        {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
        {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
    };
    std::vector<std::vector<std::size_t>> t(8, std::vector<std::size_t>(8));
    for (std::size_t x = 0; x < 8; ++x)
        for (std::size_t y = 0; y < 8; ++y) {
            std::size_t ux = x / 2, uy = y / 2;
            int sx = static_cast<int>(x % 2), sy = static_cast<int>(y % 2);
            int u = unit_mul[ux][uy][0];
            int s = (unit_mul[ux][uy][1] + sx + sy) % 2;
            t[x][y] = static_cast<std::size_t>(2 * u + s);
        }
    return std::make_shared<FiniteGroup>("Q8", std::move(t));
}

namespace detail {

inline Permutation compose(const Permutation& p, const Permutation& q) {
    // (p*q)(x) = p(q(x))
    Permutation r(q.size());
    for (std::size_t x = 0; x < q.size(); ++x) r[x] = p[q[x]];
    return r;
}

inline std::vector<std::vector<std::size_t>> table_from_elements(const std::vector<Permutation>& elems) {
    std::map<Permutation, std::size_t> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
    std::vector<std::vector<std::size_t>> t(elems.size(), std::vector<std::size_t>(elems.size()));
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j) t[i][j] = index.at(compose(elems[i], elems[j]));
    return t;
}

}  // namespace detail

/// Symmetric group on n <= 5 points; elements in lexicographic one-line order,
/// so the identity comes first.
inline GroupPtr symmetric_group(std::size_t n) {
    if (n < 1 || n > 5) throw ValidationError("symmetric group supported for 1 <= n <= 5");
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    std::vector<Permutation> elems;
    do elems.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return std::make_shared<FiniteGroup>("S" + std::to_string(n), detail::table_from_elements(elems));
}

/// Closure of permutation generators. Accepts 0-based or 1-based one-line images.
/// Elements are enumerated breadth-first from the identity, applying generators
/// in the given order.
inline GroupPtr permutation_group(std::size_t degree, std::vector<Permutation> generators, std::string label = {},
                                  const Limits& limits = default_limits()) {
    if (degree == 0) throw ValidationError("permutation degree must be positive");
    for (auto& g : generators) {
        if (g.size() != degree) throw ValidationError("generator length differs from degree");
        bool one_based = std::find(g.begin(), g.end(), 0) == g.end();
        if (one_based)
            for (auto& x : g) {
                if (x == 0 || x > degree) throw ValidationError("generator image out of range");
                --x;
            }
        std::vector<bool> seen(degree, false);
        for (auto x : g) {
            if (x >= degree || seen[x]) throw ValidationError("generator is not a permutation");
            seen[x] = true;
        }
    }
    Permutation id(degree);
    for (std::size_t i = 0; i < degree; ++i) id[i] = i;
    std::vector<Permutation> elems{id};
    std::map<Permutation, std::size_t> index{{id, 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : generators) {
            Permutation next = detail::compose(g, elems[head]);
            if (index.emplace(next, elems.size()).second) {
                elems.push_back(std::move(next));
                if (elems.size() > limits.max_group_order)
                    throw BudgetExceeded("permutation closure exceeds max group order " + std::to_string(limits.max_group_order));
            }
        }
    }
    if (label.empty()) label = "Perm" + std::to_string(degree) + "_" + std::to_string(elems.size());
    return std::make_shared<FiniteGroup>(std::move(label), detail::table_from_elements(elems), limits);
}

/// Parses "cyclic:n", "dihedral:n", "sym:n", "q8", "trivial" and short aliases.
inline GroupPtr named_group(const std::string& spec) {
    // Labels as printed ("C6", "D4", "S3") are accepted too.
    if (spec.size() >= 2 && std::string("CDS").find(spec[0]) != std::string::npos &&
        std::all_of(spec.begin() + 1, spec.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return named_group(spec.substr(0, 1) + ":" + spec.substr(1));
    auto colon = spec.find(':');
    std::string family = spec.substr(0, colon);
    std::size_t arg = 0;
    if (colon != std::string::npos) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(spec.substr(colon + 1), &used);
            if (used != spec.size() - colon - 1 || v < 0) throw std::invalid_argument("bad");
            arg = static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            throw ValidationError("bad group parameter in '" + spec + "'");
        }
    }
    auto need_arg = [&] {
        if (colon == std::string::npos) throw ValidationError("group '" + family + "' needs a parameter, e.g. " + family + ":4");
    };
    if (family == "trivial") return cyclic_group(1);
    if (family == "q8" || family == "quaternion8" || family == "Q8") return quaternion_group();
    if (family == "cyclic" || family == "C") {
        need_arg();
        return cyclic_group(arg);
    }
    if (family == "dihedral" || family == "D") {
        need_arg();
        return dihedral_group(arg);
    }
    if (family == "sym" || family == "symmetric" || family == "S") {
        need_arg();
        return symmetric_group(arg);
    }
    throw ValidationError("unknown group family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Group ring.

/// Element of Z[G]: one coefficient per group element.
class GroupRingElement {
public:
    explicit GroupRingElement(GroupPtr group) : group_(std::move(group)), coeffs_(group_->order()) {}
    GroupRingElement(GroupPtr group, std::vector<Integer> coeffs) : group_(std::move(group)), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != group_->order()) throw ValidationError("group ring element has wrong length");
    }

    static GroupRingElement basis(GroupPtr group, std::size_t g, Integer c = 1) {
        GroupRingElement e(std::move(group));
        e.coeffs_.at(g) = std::move(c);
        return e;
    }

    const GroupPtr& group() const noexcept { return group_; }
    std::span<const Integer> coefficients() const noexcept { return coeffs_; }
    const Integer& operator[](std::size_t g) const { return coeffs_[g]; }
    Integer& operator[](std::size_t g) { return coeffs_[g]; }

    bool is_zero() const noexcept {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c.is_zero(); });
    }

    GroupRingElement& operator+=(const GroupRingElement& o) {
        check_same(o);
        for (std::size_t g = 0; g < coeffs_.size(); ++g) coeffs_[g] += o.coeffs_[g];
        return *this;
    }
    GroupRingElement& operator-=(const GroupRingElement& o) {
        check_same(o);
        for (std::size_t g = 0; g < coeffs_.size(); ++g) coeffs_[g] -= o.coeffs_[g];
        return *this;
    }
    GroupRingElement& operator*=(const Integer& k) {
        for (auto& c : coeffs_) c *= k;
        return *this;
    }

    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
    friend GroupRingElement operator*(GroupRingElement a, const Integer& k) { return a *= k; }

    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return a.group_->same_law(*b.group_) && a.coeffs_ == b.coeffs_;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t g = 0; g < coeffs_.size(); ++g) {
            if (coeffs_[g].is_zero()) continue;
            if (!first) os << " + ";
            os << coeffs_[g] << "*g" << g;
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    void check_same(const GroupRingElement& o) const {
        if (!group_->same_law(*o.group_)) throw ValidationError("group ring elements from different groups");
    }

    GroupPtr group_;
    std::vector<Integer> coeffs_;
};

/// Norm element: the sum of all group elements.
inline GroupRingElement norm_element(const GroupPtr& group) {
    return GroupRingElement(group, std::vector<Integer>(group->order(), Integer(1)));
}

/// Sum of coefficients; the ring map Z[G] -> Z.
inline Integer augmentation(std::span<const Integer> coeffs) {
    Integer s;
    for (const auto& c : coeffs) s += c;
    return s;
}

inline Integer augmentation(const GroupRingElement& a) { return augmentation(a.coefficients()); }

/// out += a * b in Z[G] on raw coefficient spans.
inline void ring_multiply_add(const FiniteGroup& group, std::span<const Integer> a, std::span<const Integer> b,
                              std::span<Integer> out) {
    const std::size_t n = group.order();
    for (std::size_t g = 0; g < n; ++g) {
        if (a[g].is_zero()) continue;
        for (std::size_t h = 0; h < n; ++h) {
            if (b[h].is_zero()) continue;
            out[group.mul(g, h)].add_product(a[g], b[h]);
        }
    }
}

/// Convolution product (ab)_h = sum over g g' = h of a_g b_g'.
inline GroupRingElement ring_multiply(const GroupRingElement& a, const GroupRingElement& b) {
    if (!a.group()->same_law(*b.group())) throw ValidationError("ring_multiply: mismatched groups");
    std::vector<Integer> acc(a.group()->order());
    ring_multiply_add(*a.group(), a.coefficients(), b.coefficients(), acc);
    return GroupRingElement(a.group(), std::move(acc));
}

inline GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) { return ring_multiply(a, b); }

}  // namespace tatecup
