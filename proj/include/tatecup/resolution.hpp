#pragma once

// Augmented free resolutions of the trivial module Z over Z[G]:
//   ... -> P_2 -> P_1 -> P_0 -> Z -> 0
// with validation (d o d = 0, eps o d_1 = 0, exactness certificates) and the
// standard constructions.

#include "tatecup/errors.hpp"
#include "tatecup/group.hpp"
#include "tatecup/normal_form.hpp"
#include "tatecup/zg_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace tatecup {

struct Resolution {
    GroupPtr group;
    std::string id;
    std::vector<std::size_t> ranks;        // r_0 .. r_n
    std::vector<ZGMatrix> differentials;   // d_1 .. d_n, d_k is r_{k-1} x r_k
    std::vector<Integer> augmentation;     // eps(e_i) for the basis of P_0

    std::size_t max_degree() const noexcept { return ranks.empty() ? 0 : ranks.size() - 1; }
    std::size_t rank(std::size_t k) const {
        if (k >= ranks.size()) throw DegreeError("resolution has no degree " + std::to_string(k));
        return ranks[k];
    }
    std::size_t z_rank(std::size_t k) const { return rank(k) * group->order(); }

    const ZGMatrix& d(std::size_t k) const {
        if (k == 0 || k > differentials.size())
            throw DegreeError("resolution " + id + " has no differential d_" + std::to_string(k) + " (computed to degree " +
                              std::to_string(max_degree()) + ")");
        return differentials[k - 1];
    }

    void require_degree(std::size_t k) const {
        if (k > max_degree())
            throw DegreeError("resolution " + id + " computed to degree " + std::to_string(max_degree()) + ", degree " +
                              std::to_string(k) + " needed");
    }

    Integer augment(const ZGVector& x) const {
        Integer s;
        for (std::size_t i = 0; i < x.rank(); ++i) s.add_product(augmentation.at(i), tatecup::augmentation(x.coeff(i)));
        return s;
    }

    ZGVector zero(std::size_t k) const { return ZGVector(group, rank(k)); }
    ZGVector basis_vector(std::size_t k, std::size_t i) const {
        ZGVector v(group, rank(k));
        v.coeff(i)[0] = 1;
        return v;
    }

    /// The same resolution cut off at degree n.
    Resolution truncated(std::size_t n) const {
        require_degree(n);
        Resolution r{group, id, {ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(n + 1)},
                     {differentials.begin(), differentials.begin() + static_cast<std::ptrdiff_t>(n)}, augmentation};
        return r;
    }
};

// ---------------------------------------------------------------------------
// Validation.

struct ValidationCheck {
    std::string kind;  // "shape", "augmentation", "boundary", "exactness"
    std::size_t degree = 0;
    bool passed = true;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    const ValidationCheck* first_failure() const {
        for (const auto& c : checks)
            if (!c.passed) return &c;
        return nullptr;
    }
    std::string summary() const {
        if (const auto* f = first_failure()) {
            std::ostringstream os;
            os << f->kind << " check failed at degree " << f->degree;
            if (!f->detail.empty()) os << ": " << f->detail;
            return os.str();
        }
        return "all " + std::to_string(checks.size()) + " checks passed";
    }
};

struct ValidationOptions {
    bool exactness = true;
    /// Exactness certificates are computed for degrees <= this bound.
    std::size_t max_exactness_degree = SIZE_MAX;
};

namespace detail {

inline SparseIntMatrix augmentation_row(const Resolution& p) {
    const std::size_t n = p.group->order();
    std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, Integer>> t;
    for (std::size_t i = 0; i < p.augmentation.size(); ++i)
        for (std::size_t g = 0; g < n; ++g) t.push_back({{0, static_cast<std::uint32_t>(i * n + g)}, p.augmentation[i]});
    return SparseIntMatrix::from_triplets(1, p.ranks.at(0) * n, std::move(t));
}

inline bool all_units(const std::vector<Integer>& d) {
    for (const auto& x : d)
        if (!x.is_one()) return false;
    return true;
}

}  // namespace detail

inline ValidationReport validate_resolution(const Resolution& p, ValidationOptions opt = {}) {
    ValidationReport rep;
    auto add = [&](std::string kind, std::size_t deg, bool ok, std::string detail = {}) {
        rep.checks.push_back({std::move(kind), deg, ok, std::move(detail)});
    };

    // Shapes first; nothing else is meaningful if they fail.
    bool shape_ok = !p.ranks.empty() && p.differentials.size() + 1 == p.ranks.size() && p.augmentation.size() == p.ranks[0];
    add("shape", 0, shape_ok, shape_ok ? "" : "ranks, differentials and augmentation lengths disagree");
    if (!shape_ok) return rep;
    for (std::size_t k = 1; k <= p.max_degree(); ++k) {
        const auto& d = p.differentials[k - 1];
        bool ok = d.rows() == p.ranks[k - 1] && d.cols() == p.ranks[k] && d.group() && d.group()->same_law(*p.group);
        add("shape", k, ok, ok ? "" : "d_" + std::to_string(k) + " has the wrong shape or group");
        if (!ok) return rep;
    }

    if (p.max_degree() >= 1) {
        const auto& d1 = p.d(1);
        bool ok = true;
        for (std::size_t c = 0; c < d1.cols() && ok; ++c) ok = p.augment(d1.column(c)).is_zero();
        add("augmentation", 1, ok, ok ? "" : "eps o d_1 != 0");
    }
    for (std::size_t k = 2; k <= p.max_degree(); ++k) {
        bool ok = compose(p.d(k - 1), p.d(k)).is_zero();
        add("boundary", k, ok, ok ? "" : "d_" + std::to_string(k - 1) + " o d_" + std::to_string(k) + " != 0");
    }
    if (!rep.passed() || !opt.exactness) return rep;

    // Exactness at P_k for k < n: rank(d_k) + rank(d_{k+1}) = rank_Z(P_k) and
    // im d_{k+1} saturated (all invariant factors 1). At k = 0, eps plays d_0 and
    // must also be onto Z.
    std::vector<std::optional<std::vector<Integer>>> divisors(p.max_degree() + 1);
    auto divisors_of = [&](std::size_t k) -> const std::vector<Integer>& {
        if (!divisors[k]) divisors[k] = elementary_divisors(k == 0 ? detail::augmentation_row(p) : z_expansion(p.d(k)));
        return *divisors[k];
    };
    std::size_t top = p.max_degree() == 0 ? 0 : std::min(p.max_degree() - 1, opt.max_exactness_degree);
    if (p.max_degree() == 0) {
        bool ok = detail::all_units(divisors_of(0)) && divisors_of(0).size() == 1;
        add("exactness", 0, ok, ok ? "" : "augmentation is not onto Z");
        return rep;
    }
    for (std::size_t k = 0; k <= top; ++k) {
        const auto& lower = divisors_of(k);
        const auto& upper = divisors_of(k + 1);
        bool ok = lower.size() + upper.size() == p.z_rank(k) && detail::all_units(upper);
        if (k == 0) ok = ok && lower.size() == 1 && detail::all_units(lower);
        std::string why;
        if (!ok) {
            std::ostringstream os;
            os << "rank(in)=" << lower.size() << " rank(out)=" << upper.size() << " dim=" << p.z_rank(k);
            if (!detail::all_units(upper)) os << ", image of d_" << k + 1 << " not saturated";
            why = os.str();
        }
        add("exactness", k, ok, why);
    }
    return rep;
}

inline void require_valid(const Resolution& p, ValidationOptions opt = {}) {
    auto rep = validate_resolution(p, opt);
    if (!rep.passed()) throw ValidationError("resolution " + p.id + ": " + rep.summary());
}

// ---------------------------------------------------------------------------
// Constructions.

namespace detail {

inline void check_budget(const FiniteGroup& g, std::size_t rank, std::size_t degree, const Limits& limits,
                         const std::string& what) {
    if (rank > limits.max_zrank / g.order())
        throw BudgetExceeded(what + " degree " + std::to_string(degree) + " needs " + std::to_string(rank) +
                             " free generators over a group of order " + std::to_string(g.order()) +
                             ", beyond max-zrank " + std::to_string(limits.max_zrank));
}

}  // namespace detail

/// Normalized bar resolution: P_k free on [g_1|...|g_k] with every g_i != 1,
/// d[g_1|...|g_k] = g_1[g_2|...|g_k] + sum_i (-1)^i [..|g_i g_{i+1}|..] + (-1)^k [g_1|...|g_{k-1}],
/// dropping cells that contain the identity.
inline Resolution bar_resolution(GroupPtr group, std::size_t n, const Limits& limits = default_limits()) {
    const std::size_t order = group->order();
    const std::size_t base = order - 1;
    Resolution r;
    r.group = group;
    r.id = "bar";
    std::size_t rank = 1;
    for (std::size_t k = 0; k <= n; ++k) {
        detail::check_budget(*group, rank, k, limits, "bar resolution");
        r.ranks.push_back(rank);
        if (k < n) rank = base == 0 ? 0 : rank * base;
    }
    r.augmentation = {Integer(1)};
    for (std::size_t k = 1; k <= n; ++k) {
        ZGMatrix::Builder b(group, r.ranks[k - 1], r.ranks[k]);
        std::vector<std::size_t> cell(k), face;
        for (std::size_t idx = 0; idx < r.ranks[k]; ++idx) {
            for (std::size_t i = 0, x = idx; i < k; ++i, x /= base) cell[k - 1 - i] = x % base + 1;
            auto encode = [&](const std::vector<std::size_t>& f) {
                std::size_t v = 0;
                for (std::size_t g : f) v = v * base + (g - 1);
                return v;
            };
            face.assign(cell.begin() + 1, cell.end());
            b.add(encode(face), idx, cell[0], 1);
            for (std::size_t i = 1; i < k; ++i) {
                std::size_t prod = group->mul(cell[i - 1], cell[i]);
                if (prod == FiniteGroup::identity()) continue;
                face.assign(cell.begin(), cell.end());
                face[i - 1] = prod;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                b.add(encode(face), idx, 0, (i % 2) ? -1 : 1);
            }
            face.assign(cell.begin(), cell.end() - 1);
            b.add(encode(face), idx, 0, (k % 2) ? -1 : 1);
        }
        r.differentials.push_back(std::move(b).build());
    }
    return r;
}

/// Period-2 resolution of Z over Z[C_m]: d_k = t - 1 for odd k and N for even k.
inline Resolution periodic_cyclic_resolution(std::size_t m, std::size_t n) {
    if (m < 2) throw ValidationError("periodic cyclic resolution needs m >= 2");
    auto group = cyclic_group(m);
    Resolution r;
    r.group = group;
    r.id = "periodic";
    r.ranks.assign(n + 1, 1);
    r.augmentation = {Integer(1)};
    for (std::size_t k = 1; k <= n; ++k) {
        ZGMatrix::Builder b(group, 1, 1);
        if (k % 2) {
            b.add(0, 0, 1, 1);
            b.add(0, 0, 0, -1);
        } else {
            for (std::size_t g = 0; g < m; ++g) b.add(0, 0, g, 1);
        }
        r.differentials.push_back(std::move(b).build());
    }
    return r;
}

namespace detail {

/// Echelon basis of a subspace of F_p^n, for cheap rank bookkeeping.
class ModularEchelon {
public:
    static constexpr std::int64_t kPrime = 2147483647;  // 2^31 - 1

    explicit ModularEchelon(std::size_t dim) : dim_(dim) {}

    static std::int64_t reduce(const Integer& x) { return floor_mod(x, Integer(kPrime)).to_int64(); }

    /// Inserts v; returns true when it was independent.
    bool insert(std::vector<std::int64_t> v) {
        for (const auto& [piv, row] : rows_) {
            std::int64_t f = v[piv];
            if (f == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j)
                if (row[j]) v[j] = ((v[j] - f * row[j]) % kPrime + kPrime) % kPrime;
        }
        std::size_t piv = 0;
        while (piv < dim_ && v[piv] == 0) ++piv;
        if (piv == dim_) return false;
        std::int64_t inv = power(v[piv], kPrime - 2);
        for (auto& x : v) x = x * inv % kPrime;
        rows_.emplace_back(piv, std::move(v));
        return true;
    }

    std::size_t rank() const noexcept { return rows_.size(); }

private:
    static std::int64_t power(std::int64_t b, std::int64_t e) {
        std::int64_t r = 1;
        b %= kPrime;
        while (e) {
            if (e & 1) r = r * b % kPrime;
            b = b * b % kPrime;
            e >>= 1;
        }
        return r;
    }

    std::size_t dim_;
    std::vector<std::pair<std::size_t, std::vector<std::int64_t>>> rows_;
};

inline IntVector act_on_z(const FiniteGroup& group, std::size_t g, const IntVector& v) {
    const std::size_t n = group.order();
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size() / n; ++i)
        for (std::size_t h = 0; h < n; ++h) out[i * n + group.mul(g, h)] = v[i * n + h];
    return out;
}

inline Integer dot(const IntVector& a, const IntVector& b) {
    Integer s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s.add_product(a[i], b[i]);
    return s;
}

/// Pairwise reduction b_i -= round(<b_i,b_j>/<b_j,b_j>) b_j until no vector gets
/// shorter. Unimodular, so the lattice is unchanged; keeps kernel entries small.
inline void size_reduce(std::vector<IntVector>& basis) {
    std::vector<Integer> norms;
    for (const auto& b : basis) norms.push_back(dot(b, b));
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j) {
                if (i == j || norms[j].is_zero()) continue;
                Integer q = nearest_div(dot(basis[i], basis[j]), norms[j]);
                if (q.is_zero()) continue;
                IntVector t = basis[i];
                for (std::size_t r = 0; r < t.size(); ++r) t[r].sub_product(q, basis[j][r]);
                Integer nt = dot(t, t);
                if (nt < norms[i]) {
                    basis[i] = std::move(t);
                    norms[i] = std::move(nt);
                    changed = true;
                }
            }
    }
}

/// Picks Z[G]-module generators of the saturated lattice spanned by the columns
/// of `kernel`: first greedily for rank (measured mod a large prime), then adds
/// kernel basis vectors until every one of them lies in the span.
inline std::vector<IntVector> select_module_generators(const FiniteGroup& group, const IntMatrix& kernel) {
    const std::size_t dim = kernel.rows(), ell = kernel.cols();
    std::vector<IntVector> candidates;
    for (std::size_t c = 0; c < ell; ++c) candidates.push_back(kernel.column(c));
    size_reduce(candidates);
    std::vector<std::vector<std::vector<std::int64_t>>> orbits_mod(ell);
    for (std::size_t c = 0; c < ell; ++c)
        for (std::size_t g = 0; g < group.order(); ++g) {
            IntVector w = act_on_z(group, g, candidates[c]);
            std::vector<std::int64_t> m(dim);
            for (std::size_t j = 0; j < dim; ++j) m[j] = ModularEchelon::reduce(w[j]);
            orbits_mod[c].push_back(std::move(m));
        }

    std::vector<IntVector> chosen;
    std::vector<bool> used(ell, false);
    ModularEchelon span(dim);
    auto take = [&](std::size_t c) {
        used[c] = true;
        chosen.push_back(candidates[c]);
        for (const auto& v : orbits_mod[c]) span.insert(v);
    };
    while (span.rank() < ell) {
        std::optional<std::size_t> best;
        std::size_t best_gain = 0;
        for (std::size_t c = 0; c < ell; ++c) {
            if (used[c]) continue;
            ModularEchelon trial = span;
            std::size_t gain = 0;
            for (const auto& v : orbits_mod[c]) gain += trial.insert(v);
            if (gain > best_gain) best = c, best_gain = gain;
            if (best_gain == group.order()) break;
        }
        if (!best) break;
        take(*best);
    }
    // Saturation: the orbits must span the whole (saturated) kernel lattice, i.e.
    // their elementary divisors are all 1. While they are not, add the first
    // candidate that shrinks the index the most.
    auto index_with = [&](std::optional<std::size_t> extra) {
        std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, Integer>> t;
        std::uint32_t col = 0;
        auto push = [&](const IntVector& v) {
            for (std::size_t g = 0; g < group.order(); ++g, ++col) {
                IntVector w = act_on_z(group, g, v);
                for (std::size_t r = 0; r < dim; ++r)
                    if (!w[r].is_zero()) t.push_back({{static_cast<std::uint32_t>(r), col}, w[r]});
            }
        };
        for (const auto& v : chosen) push(v);
        if (extra) push(candidates[*extra]);
        auto divs = elementary_divisors(SparseIntMatrix::from_triplets(dim, col, std::move(t)));
        Integer index(1);
        for (const auto& d : divs) index *= d;
        return divs.size() == ell ? index : Integer(0);
    };
    Integer index = index_with(std::nullopt);
    check_internal(!index.is_zero(), "module generators do not reach full rank");
    while (!index.is_one()) {
        std::optional<std::size_t> best;
        Integer best_index = index;
        for (std::size_t c = 0; c < ell; ++c) {
            if (used[c]) continue;
            Integer next = index_with(c);
            if (next < best_index) best = c, best_index = next;
        }
        check_internal(best.has_value(), "kernel lattice could not be saturated by its own basis");
        take(*best);
        index = best_index;
    }
    return chosen;
}

}  // namespace detail

/// Free resolution built degree by degree: the next module is free on a small
/// set of Z[G]-generators of the kernel of the previous differential. Much
/// smaller than the bar resolution for noncyclic groups.
inline Resolution kernel_resolution(GroupPtr group, std::size_t n, const Limits& limits = default_limits()) {
    const std::size_t order = group->order();
    Resolution r;
    r.group = group;
    r.id = "kernel";
    r.ranks = {1};
    r.augmentation = {Integer(1)};
    IntMatrix previous(1, order);
    for (std::size_t g = 0; g < order; ++g) previous(0, g) = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        IntMatrix kernel = LinearSolver(previous).kernel_basis();
        auto gens = detail::select_module_generators(*group, kernel);
        detail::check_budget(*group, gens.size(), k, limits, "kernel resolution");
        ZGMatrix::Builder b(group, r.ranks[k - 1], gens.size());
        for (std::size_t j = 0; j < gens.size(); ++j) b.set_column(j, ZGVector(group, gens[j]));
        r.differentials.push_back(std::move(b).build());
        r.ranks.push_back(gens.size());
        previous = z_expansion(r.differentials.back()).to_dense();
    }
    return r;
}

}  // namespace tatecup
