#pragma once

// Integral homology H_n(G, Z) = H_n(P (x)_{Z[G]} Z), with explicit generator
// cycles and a map from cycles to class coordinates.

#include "tatecup/errors.hpp"
#include "tatecup/normal_form.hpp"
#include "tatecup/resolution.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace tatecup {

/// Free Z-complex: ranks r_0..r_n and d_k : Z^{r_k} -> Z^{r_{k-1}} at index k-1.
struct IntChainComplex {
    std::vector<std::size_t> ranks;
    std::vector<IntMatrix> differentials;

    const IntMatrix& d(std::size_t k) const {
        if (k == 0 || k > differentials.size()) throw DegreeError("chain complex has no d_" + std::to_string(k));
        return differentials[k - 1];
    }
};

inline IntChainComplex tensor_down(const Resolution& p) {
    IntChainComplex c;
    c.ranks = p.ranks;
    for (const auto& d : p.differentials) c.differentials.push_back(d.tensor_down());
    return c;
}

class HomologyGroup {
public:
    /// H_n of a complex given by its incoming differential d_n (rows r_{n-1},
    /// cols r_n; pass a 0 x r_n matrix for n = 0) and outgoing d_{n+1}.
    HomologyGroup(std::size_t degree, IntMatrix d_in, const IntMatrix& d_out) : degree_(degree), d_in_(std::move(d_in)) {
        const std::size_t r = d_in_.cols();
        if (d_out.rows() != r) throw ValidationError("homology: differentials do not compose");

        auto sb = smith_normal_form(d_in_, {true, true});
        const std::size_t rb = sb.rank;
        // Columns rb.. of V span ker d_in; rows rb.. of V^-1 give coordinates on it.
        IntMatrix kernel = sb.V.col_block(rb, r);
        IntMatrix to_kernel = sb.V_inverse.row_block(rb, r);
        IntMatrix rel = to_kernel * d_out;

        auto sa = smith_normal_form(rel, {true, true});
        const std::size_t dim = r - rb;
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < dim; ++i) {
            Integer s = i < sa.rank ? sa.S(i, i) : Integer(0);
            if (s.is_one()) continue;
            kept.push_back(i);
            factors_.push_back(s);
        }
        IntMatrix project = sa.U * to_kernel;
        classifier_ = IntMatrix(kept.size(), r);
        for (std::size_t a = 0; a < kept.size(); ++a) {
            for (std::size_t c = 0; c < r; ++c) classifier_(a, c) = project(kept[a], c);
            generators_.push_back(kernel * sa.U_inverse.column(kept[a]));
        }
    }

    std::size_t degree() const noexcept { return degree_; }
    /// Invariant factors other than 1, in divisibility order; 0 stands for Z.
    const std::vector<Integer>& invariant_factors() const noexcept { return factors_; }
    const std::vector<IntVector>& generators() const noexcept { return generators_; }
    std::size_t num_generators() const noexcept { return factors_.size(); }
    std::size_t chain_rank() const noexcept { return d_in_.cols(); }
    bool is_trivial() const noexcept { return factors_.empty(); }

    /// Order of the group; 0 when infinite.
    Integer order() const {
        Integer o(1);
        for (const auto& f : factors_) o *= f;
        return o;
    }

    bool is_cycle(std::span<const Integer> z) const {
        return z.size() == chain_rank() && is_zero_vector(d_in_ * z);
    }

    /// Canonical coordinates of the class of a cycle.
    IntVector classify(std::span<const Integer> z) const {
        if (z.size() != chain_rank()) throw ValidationError("classify: vector has the wrong length");
        if (!is_cycle(z)) throw ValidationError("classify: vector is not a cycle in degree " + std::to_string(degree_));
        return reduce(classifier_ * z);
    }

    /// Reduces coordinates modulo the invariant factors (into [0, d)).
    IntVector reduce(IntVector c) const {
        if (c.size() != factors_.size()) throw ValidationError("class coordinates have the wrong length");
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!factors_[i].is_zero()) c[i] = floor_mod(c[i], factors_[i]);
        return c;
    }

    IntVector zero_class() const { return IntVector(factors_.size()); }
    IntVector unit_class(std::size_t i) const {
        IntVector c(factors_.size());
        c.at(i) = 1;
        return c;
    }

    /// A cycle representing the given coordinates.
    IntVector representative(std::span<const Integer> c) const {
        if (c.size() != factors_.size()) throw ValidationError("class coordinates have the wrong length");
        IntVector z(chain_rank());
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < z.size(); ++j) z[j].add_product(c[i], generators_[i][j]);
        return z;
    }

    /// Additive order of a class; 0 when infinite.
    Integer order_of(std::span<const Integer> c) const {
        IntVector r = reduce(IntVector(c.begin(), c.end()));
        Integer o(1);
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (r[i].is_zero()) continue;
            if (factors_[i].is_zero()) return Integer(0);
            o = lcm(o, exact_div(factors_[i], gcd(factors_[i], r[i])));
        }
        return o;
    }

    /// Largest additive order of any element (0 when the group is infinite).
    Integer exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }

private:
    std::size_t degree_;
    IntMatrix d_in_;
    std::vector<Integer> factors_;
    std::vector<IntVector> generators_;
    IntMatrix classifier_;
};

inline HomologyGroup homology(const IntChainComplex& c, std::size_t n) {
    if (n + 1 >= c.ranks.size()) throw DegreeError("homology in degree " + std::to_string(n) + " needs the complex to degree " + std::to_string(n + 1));
    IntMatrix d_in = n == 0 ? IntMatrix(0, c.ranks[0]) : c.d(n);
    return HomologyGroup(n, std::move(d_in), c.d(n + 1));
}

inline HomologyGroup homology(const Resolution& p, std::size_t n) {
    if (n + 1 > p.max_degree())
        throw DegreeError("homology in degree " + std::to_string(n) + " needs resolution " + p.id + " to degree " + std::to_string(n + 1) +
                          " (computed to " + std::to_string(p.max_degree()) + ")");
    IntMatrix d_in = n == 0 ? IntMatrix(0, p.rank(0)) : p.d(n).tensor_down();
    return HomologyGroup(n, std::move(d_in), p.d(n + 1).tensor_down());
}

}  // namespace tatecup
