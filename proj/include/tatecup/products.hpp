#pragma once

// The product H_{n} (x) H_{m} -> H_{n+m+1} (negative Tate degrees -n-1, -m-1)
// computed two ways.
//
// Join pipeline: for cycles y_a, y_b of P (x) Z, the element (N y_a) (x) y_b of
// (P * P)_{n+m+1} is a cycle after tensoring down; a comparison map
// P * P -> P carries it back to P where it is classified. This is the product
// (x (x) 1) (x) (y (x) 1) -> ((N x) (x) y) (x) 1, i.e. the exterior product
// followed by a transfer.
//
// Composition pipeline: g(1) = N y_b defines g : Z -> Omega^{m+1} Z; lifting g
// along P gives maps P_k -> P_{k+m+1}, and the image of f(1) = N y_a under the
// degree-n component is an invariant cycle whose Phi-image is the product.

#include "tatecup/errors.hpp"
#include "tatecup/homology.hpp"
#include "tatecup/join.hpp"
#include "tatecup/resolution.hpp"
#include "tatecup/tate.hpp"
#include "tatecup/zg_matrix.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tatecup {

/// Components source_k -> target_{k + degree_shift}. The recorded sign s means
/// d o psi_k = s * psi_{k-1} o d.
struct ChainMap {
    std::string source_id, target_id;
    std::size_t degree_shift = 0;
    int commutation_sign = 1;
    std::vector<ZGMatrix> components;

    std::size_t top_degree() const { return components.empty() ? 0 : components.size() - 1; }
    const ZGMatrix& at(std::size_t k) const {
        if (k >= components.size()) throw DegreeError("chain map computed to degree " + std::to_string(top_degree()));
        return components[k];
    }
    ZGVector apply(std::size_t k, const ZGVector& x) const { return at(k).apply(x); }
};

/// Solvers for d_k of one resolution, built on first use.
class DifferentialSolvers {
public:
    explicit DifferentialSolvers(const Resolution& p) : p_(&p) {}

    const ZGSolver& operator()(std::size_t k) {
        auto it = solvers_.find(k);
        if (it == solvers_.end()) it = solvers_.emplace(k, ZGSolver(p_->d(k))).first;
        return it->second;
    }

private:
    const Resolution* p_;
    std::map<std::size_t, ZGSolver> solvers_;
};

namespace detail {

inline ZGVector lift_through(const ZGSolver& solver, const ZGMatrix& d, const ZGVector& rhs, const std::string& what) {
    auto x = solver.solve(rhs);
    if (!x) throw ValidationError(what + ": lifting equation has no solution (is the target resolution exact?)");
    check_internal(d.apply(*x) == rhs, what + ": lift failed its re-multiplication check");
    return *x;
}

/// Extends a degree-0 comparison map psi : P -> Q until it covers degree `up_to`.
inline void extend_comparison(ChainMap& psi, const Resolution& p, const Resolution& q, std::size_t up_to, DifferentialSolvers& solvers) {
    p.require_degree(up_to);
    q.require_degree(up_to);
    const auto& group = p.group;
    if (psi.components.empty()) {
        // psi_0: eps_Q(psi_0 e_i) = eps_P(e_i)
        const std::size_t n = group->order();
        IntMatrix eps(1, q.z_rank(0));
        for (std::size_t j = 0; j < q.rank(0); ++j)
            for (std::size_t g = 0; g < n; ++g) eps(0, j * n + g) = q.augmentation[j];
        LinearSolver solver(eps);
        ZGMatrix::Builder b(group, q.rank(0), p.rank(0));
        for (std::size_t i = 0; i < p.rank(0); ++i) {
            auto x = solver.solve(IntVector{p.augmentation[i]});
            if (!x) throw ValidationError("comparison map: augmentation of " + q.id + " is not onto Z");
            b.set_column(i, ZGVector(group, std::move(*x)));
        }
        psi.components.push_back(std::move(b).build());
    }
    for (std::size_t k = psi.components.size(); k <= up_to; ++k) {
        const auto& dp = p.d(k);
        const auto& dq = q.d(k);
        const auto& solver = solvers(k);
        ZGMatrix::Builder b(group, q.rank(k), p.rank(k));
        for (std::size_t c = 0; c < p.rank(k); ++c)
            b.set_column(c, lift_through(solver, dq, psi.components[k - 1].apply(dp.column(c)), "comparison map"));
        psi.components.push_back(std::move(b).build());
    }
}

}  // namespace detail

/// Degree-0 chain map P -> Q over the identity of Z, through degree up_to.
inline ChainMap lift_comparison(const Resolution& p, const Resolution& q, std::size_t up_to) {
    if (!p.group->same_law(*q.group)) throw ValidationError("comparison map between resolutions over different groups");
    ChainMap psi{p.id, q.id, 0, 1, {}};
    DifferentialSolvers solvers(q);
    detail::extend_comparison(psi, p, q, up_to, solvers);
    return psi;
}

/// Checks eps_Q o psi_0 = eps_P and d o psi_k = psi_{k-1} o d.
inline ValidationReport check_comparison(const ChainMap& psi, const Resolution& p, const Resolution& q) {
    ValidationReport rep;
    bool ok = true;
    for (std::size_t i = 0; i < p.rank(0) && ok; ++i) ok = q.augment(psi.at(0).column(i)) == p.augmentation[i];
    rep.checks.push_back({"augmentation", 0, ok, ok ? "" : "eps o psi_0 != eps"});
    for (std::size_t k = 1; k <= psi.top_degree(); ++k) {
        ZGMatrix lhs = compose(q.d(k), psi.at(k));
        ZGMatrix rhs = compose(psi.at(k - 1), p.d(k));
        bool c = psi.commutation_sign == 1 && lhs == rhs;
        rep.checks.push_back({"commutation", k, c, c ? "" : "d o psi != psi o d"});
    }
    return rep;
}

/// Lifts g : Z -> Omega^{m+1} Z, 1 -> g1 (an invariant cycle in P_m), to maps
/// P_k -> P_{k+m+1} for k <= up_to with d o g_0 = g1 * eps and d o g_k = g_{k-1} o d.
inline ChainMap lift_cycle_map(const Resolution& p, const InvariantCycle& g1, std::size_t up_to, DifferentialSolvers& solvers) {
    check_invariant_cycle(p, g1);
    const std::size_t s = g1.degree + 1;
    p.require_degree(up_to + s);
    ChainMap g{p.id, p.id, s, 1, {}};
    for (std::size_t k = 0; k <= up_to; ++k) {
        const auto& target_d = p.d(k + s);
        const auto& solver = solvers(k + s);
        ZGMatrix::Builder b(p.group, p.rank(k + s), p.rank(k));
        for (std::size_t c = 0; c < p.rank(k); ++c) {
            ZGVector rhs = k == 0 ? g1.vector * p.augmentation[c] : g.components[k - 1].apply(p.d(k).column(c));
            b.set_column(c, detail::lift_through(solver, target_d, rhs, "cycle map"));
        }
        g.components.push_back(std::move(b).build());
    }
    return g;
}

inline ValidationReport check_cycle_map(const ChainMap& g, const Resolution& p, const InvariantCycle& g1) {
    ValidationReport rep;
    const std::size_t s = g.degree_shift;
    bool ok = true;
    for (std::size_t c = 0; c < p.rank(0) && ok; ++c) ok = p.d(s).apply(g.at(0).column(c)) == g1.vector * p.augmentation[c];
    rep.checks.push_back({"base", 0, ok, ok ? "" : "d o g_0 != g(1) eps"});
    for (std::size_t k = 1; k <= g.top_degree(); ++k) {
        bool c = compose(p.d(k + s), g.at(k)) == compose(g.at(k - 1), p.d(k));
        rep.checks.push_back({"commutation", k, c, c ? "" : "d o g_k != g_{k-1} o d"});
    }
    return rep;
}

/// Image of each generator of H_n(P) in H_n(Q) under a comparison map.
inline std::vector<IntVector> induced_map(const ChainMap& psi, const Resolution& p, const HomologyGroup& hp, const HomologyGroup& hq) {
    std::vector<IntVector> images;
    const std::size_t n = hp.degree();
    for (const auto& z : hp.generators()) {
        ZGVector lifted = ZGVector::identity_lift(p.group, z);
        images.push_back(hq.classify(psi.apply(n, lifted).tensor_down()));
    }
    return images;
}

struct ProductEntry {
    std::size_t n = 0, m = 0, a = 0, b = 0;
    IntVector join, composition;
    bool agree = false;
};

struct ProductTable {
    std::string group;
    std::string resolution;
    std::vector<ProductEntry> entries;

    bool all_agree() const {
        for (const auto& e : entries)
            if (!e.agree) return false;
        return true;
    }
};

struct CommutativityEntry {
    std::size_t n = 0, m = 0, a = 0, b = 0;
    IntVector ab, ba;
};

/// Products over one fixed resolution, with the join, its comparison map and
/// homology groups cached.
class ProductEngine {
public:
    explicit ProductEngine(Resolution p, const Limits& limits = default_limits())
        : p_(std::make_unique<Resolution>(std::move(p))), limits_(limits), solvers_(*p_) {}

    ProductEngine(const ProductEngine&) = delete;
    ProductEngine& operator=(const ProductEngine&) = delete;

    const Resolution& resolution() const noexcept { return *p_; }

    const HomologyGroup& homology(std::size_t n) {
        auto it = homology_.find(n);
        if (it == homology_.end()) it = homology_.emplace(n, tatecup::homology(*p_, n)).first;
        return it->second;
    }

    /// P * P through degree d (rebuilt larger on demand; lower degrees never change).
    const Join& join(std::size_t d) {
        if (!join_ || join_->resolution().max_degree() < d) join_ = std::make_unique<Join>(*p_, *p_, d, limits_);
        return *join_;
    }

    /// Comparison map P * P -> P through degree d.
    const ChainMap& comparison(std::size_t d) {
        const auto& j = join(d).resolution();
        if (!comparison_) comparison_ = ChainMap{j.id, p_->id, 0, 1, {}};
        detail::extend_comparison(*comparison_, j, *p_, d, solvers_);
        return *comparison_;
    }

    void require_product_depth(std::size_t n, std::size_t m) const {
        if (n == 0 || m == 0) throw DegreeError("products are defined for degrees n, m >= 1");
        if (p_->max_degree() < n + m + 2)
            throw DegreeError("a product into H_" + std::to_string(n + m + 1) + " needs resolution depth " + std::to_string(n + m + 2) +
                              ", have " + std::to_string(p_->max_degree()));
    }

    /// The chain-level join product (N a) (x) b in (P * P)_{n+m+1}, for lifts a, b to
    /// P of cycles of P (x) Z.
    ZGVector join_chain(std::size_t n, const ZGVector& a, std::size_t m, const ZGVector& b) {
        require_product_depth(n, m);
        require_cycle(n, a.tensor_down());
        require_cycle(m, b.tensor_down());
        ZGVector x = norm_times(a);
        const std::size_t deg = n + m + 1;
        const Join& j = join(deg);
        ZGVector w = j.include_cycle_tensor(n, x, m, b);
        detail::check_internal(is_zero_vector(j.resolution().d(deg).apply(w).tensor_down()),
                               "join product: (N x) (x) y is not a cycle after tensoring down");
        return w;
    }

    IntVector join_product_lifted(std::size_t n, const ZGVector& a, std::size_t m, const ZGVector& b) {
        const std::size_t deg = n + m + 1;
        ZGVector w = join_chain(n, a, m, b);
        ZGVector v = comparison(deg).apply(deg, w);
        return homology(deg).classify(v.tensor_down());
    }

    IntVector join_product_cycles(std::size_t n, std::span<const Integer> ya, std::size_t m, std::span<const Integer> yb) {
        return join_product_lifted(n, ZGVector::identity_lift(p_->group, ya), m, ZGVector::identity_lift(p_->group, yb));
    }

    IntVector join_product(std::size_t n, std::span<const Integer> a, std::size_t m, std::span<const Integer> b) {
        require_product_depth(n, m);
        return join_product_cycles(n, homology(n).representative(a), m, homology(m).representative(b));
    }

    /// g~_n(f(1)) in P_{n+m+1}.
    InvariantCycle composition_chain(std::size_t n, std::span<const Integer> ya, std::size_t m, std::span<const Integer> yb) {
        require_product_depth(n, m);
        require_cycle(n, ya);
        require_cycle(m, yb);
        InvariantCycle f1 = phi_inverse(*p_, n, ya);
        InvariantCycle g1 = phi_inverse(*p_, m, yb);
        ChainMap g = lift_cycle_map(*p_, g1, n, solvers_);
        InvariantCycle out{n + m + 1, g.apply(n, f1.vector)};
        check_invariant_cycle(*p_, out);
        return out;
    }

    IntVector composition_product_cycles(std::size_t n, std::span<const Integer> ya, std::size_t m, std::span<const Integer> yb) {
        InvariantCycle v = composition_chain(n, ya, m, yb);
        return phi(*p_, homology(n + m + 1), v);
    }

    IntVector composition_product(std::size_t n, std::span<const Integer> a, std::size_t m, std::span<const Integer> b) {
        require_product_depth(n, m);
        return composition_product_cycles(n, homology(n).representative(a), m, homology(m).representative(b));
    }

    ProductTable product_table(const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
        ProductTable t{p_->group->label(), p_->id, {}};
        for (auto [n, m] : pairs) require_product_depth(n, m);
        for (auto [n, m] : pairs) {
            const std::size_t ga = homology(n).num_generators(), gb = homology(m).num_generators();
            for (std::size_t a = 0; a < ga; ++a)
                for (std::size_t b = 0; b < gb; ++b) {
                    ProductEntry e{n, m, a, b, {}, {}, false};
                    IntVector ca = homology(n).unit_class(a), cb = homology(m).unit_class(b);
                    e.join = join_product(n, ca, m, cb);
                    e.composition = composition_product(n, ca, m, cb);
                    e.agree = e.join == e.composition;
                    t.entries.push_back(std::move(e));
                }
        }
        return t;
    }

    /// Both orders a.b and b.a for every generator pair; nothing is asserted about them.
    std::vector<CommutativityEntry> commutativity(const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
        std::vector<CommutativityEntry> out;
        for (auto [n, m] : pairs) require_product_depth(n, m);
        for (auto [n, m] : pairs) {
            for (std::size_t a = 0; a < homology(n).num_generators(); ++a)
                for (std::size_t b = 0; b < homology(m).num_generators(); ++b) {
                    IntVector ca = homology(n).unit_class(a), cb = homology(m).unit_class(b);
                    out.push_back({n, m, a, b, join_product(n, ca, m, cb), join_product(m, cb, n, ca)});
                }
        }
        return out;
    }

private:
    void require_cycle(std::size_t n, std::span<const Integer> y) {
        if (y.size() != p_->rank(n) || !homology(n).is_cycle(y))
            throw ValidationError("product input is not a cycle of degree " + std::to_string(n));
    }

    std::unique_ptr<Resolution> p_;
    Limits limits_;
    DifferentialSolvers solvers_;
    std::map<std::size_t, HomologyGroup> homology_;
    std::unique_ptr<Join> join_;
    std::optional<ChainMap> comparison_;
};

}  // namespace tatecup
