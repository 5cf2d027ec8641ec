#pragma once

// Negative Tate cohomology through homology. A stable map f : Z -> Omega^{n+1} Z
// is determined by the invariant cycle x = f(1) in P_n. Writing x = N y (always
// possible on a free module), Phi(f) is the class of y (x) 1 in H_n(G, Z);
// Phi is an isomorphism for n >= 1, and f factors through a projective exactly
// when Phi(f) = 0.

#include "tatecup/errors.hpp"
#include "tatecup/homology.hpp"
#include "tatecup/resolution.hpp"
#include "tatecup/zg_matrix.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tatecup {

struct InvariantCycle {
    std::size_t degree = 0;
    ZGVector vector;
};

/// Throws ValidationError unless x is G-invariant and d_n x = 0.
inline void check_invariant_cycle(const Resolution& p, const InvariantCycle& x) {
    if (x.vector.rank() != p.rank(x.degree)) throw ValidationError("invariant cycle has the wrong rank");
    if (!x.vector.is_invariant()) throw ValidationError("element of P_" + std::to_string(x.degree) + " is not G-invariant");
    bool cycle = x.degree == 0 ? p.augment(x.vector).is_zero() : p.d(x.degree).apply(x.vector).is_zero();
    if (!cycle) throw ValidationError("element of P_" + std::to_string(x.degree) + " is not a cycle");
}

/// Phi^-1 on a cycle y of P_n (x) Z: the identity-coefficient lift times N.
inline InvariantCycle phi_inverse(const Resolution& p, std::size_t n, std::span<const Integer> y) {
    if (n == 0) throw DegreeError("phi_inverse needs n >= 1");
    if (y.size() != p.rank(n)) throw ValidationError("phi_inverse: vector has the wrong length");
    if (!is_zero_vector(p.d(n).tensor_down() * y)) throw ValidationError("phi_inverse: input is not a cycle");
    InvariantCycle x{n, norm_times(ZGVector::identity_lift(p.group, y))};
    detail::check_internal(x.vector.is_invariant() && p.d(n).apply(x.vector).is_zero(), "N y is not an invariant cycle");
    return x;
}

inline InvariantCycle phi_inverse_class(const Resolution& p, const HomologyGroup& h, std::span<const Integer> coords) {
    return phi_inverse(p, h.degree(), h.representative(coords));
}

/// Phi: on an invariant x the identity slice y_i = x_{i,1} satisfies N y = x.
inline IntVector phi(const Resolution& p, const HomologyGroup& h, const InvariantCycle& x) {
    if (x.degree == 0) throw DegreeError("phi needs n >= 1");
    if (h.degree() != x.degree) throw ValidationError("phi: homology group has the wrong degree");
    check_invariant_cycle(p, x);
    IntVector y(x.vector.rank());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = x.vector.coeff(i)[0];
    return h.classify(y);
}

/// Phi computed by solving N y = x with the general Z[G] solver.
inline IntVector phi_via_solver(const Resolution& p, const HomologyGroup& h, const InvariantCycle& x) {
    if (h.degree() != x.degree) throw ValidationError("phi: homology group has the wrong degree");
    check_invariant_cycle(p, x);
    const std::size_t r = x.vector.rank();
    ZGMatrix::Builder b(p.group, r, r);
    auto n = norm_element(p.group);
    for (std::size_t i = 0; i < r; ++i) b.add(i, i, n);
    auto y = solve_zg_linear(std::move(b).build(), x.vector);
    if (!y) throw InternalError("norm equation N y = x has no solution for an invariant x");
    return h.classify(y->tensor_down());
}

inline bool is_stably_zero(const Resolution& p, const HomologyGroup& h, const InvariantCycle& x) {
    return is_zero_vector(phi(p, h, x));
}

/// Tate group in a negative degree k: zero for k = -1, H_{-k-1} for k <= -2.
struct TateGroup {
    int degree = -1;
    std::optional<HomologyGroup> homology;

    bool is_zero() const { return !homology || homology->is_trivial(); }
    std::vector<Integer> invariant_factors() const { return homology ? homology->invariant_factors() : std::vector<Integer>{}; }
};

inline TateGroup tate_group(const Resolution& p, int k) {
    if (k >= 0) throw DegreeError("Tate cohomology is only computed in negative degrees (got " + std::to_string(k) + ")");
    if (k == -1) return {k, std::nullopt};
    return {k, homology(p, static_cast<std::size_t>(-k - 1))};
}

}  // namespace tatecup
