#pragma once

// Self-checks over one resolution: validity of the resolution and its join,
// Phi round trips on generators and random cycles, agreement of the two product
// pipelines, representative independence and bilinearity.

#include "tatecup/errors.hpp"
#include "tatecup/homology.hpp"
#include "tatecup/join.hpp"
#include "tatecup/products.hpp"
#include "tatecup/resolution.hpp"
#include "tatecup/tate.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace tatecup {

struct VerifyCheck {
    explicit VerifyCheck(std::string n) : name(std::move(n)) {}

    std::string name;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::string first_failure;

    void record(bool ok, const std::string& what) {
        if (ok) {
            ++passed;
        } else {
            if (failed == 0) first_failure = what;
            ++failed;
        }
    }
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (c.failed) return false;
        return true;
    }
    std::size_t total_passed() const {
        std::size_t n = 0;
        for (const auto& c : checks) n += c.passed;
        return n;
    }
    std::size_t total_failed() const {
        std::size_t n = 0;
        for (const auto& c : checks) n += c.failed;
        return n;
    }
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::size_t random_cycles = 100;
    /// Highest degree at which the join gets a full exactness certificate.
    std::size_t join_exactness_degree = 4;
    /// Products are checked for all n, m >= 1 with n + m + 1 <= this (and within depth).
    std::size_t max_product_degree = 7;
};

namespace detail {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    Integer small(long lo = -3, long hi = 3) { return Integer(std::uniform_int_distribution<long>(lo, hi)(rng_)); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

    IntVector vector(std::size_t n) {
        IntVector v(n);
        for (auto& x : v) x = small();
        return v;
    }
    ZGVector zg_vector(const GroupPtr& g, std::size_t rank) {
        ZGVector v(g, rank);
        for (auto& x : v.z()) x = small(-2, 2);
        return v;
    }
    /// Random element of I * P: every coordinate has augmentation zero.
    ZGVector augmentation_zero(const GroupPtr& g, std::size_t rank) {
        ZGVector v(g, rank);
        for (std::size_t i = 0; i < rank; ++i) {
            auto c = v.coeff(i);
            for (int t = 0; t < 2; ++t) {
                Integer k = small();
                c[index(g->order())] += k;
                c[0] -= k;
            }
        }
        return v;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace detail

/// A random cycle of P_n (x) Z together with its class: a random combination
/// of the generators plus a random boundary.
inline std::pair<IntVector, IntVector> random_cycle(const Resolution& p, const HomologyGroup& h, detail::Sampler& rng) {
    IntVector coords = rng.vector(h.num_generators());
    IntVector z = h.representative(coords);
    const std::size_t n = h.degree();
    IntVector s = rng.vector(p.rank(n + 1));
    IntVector bd = p.d(n + 1).tensor_down() * s;
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += bd[i];
    return {z, h.reduce(coords)};
}

inline VerifyReport verify_resolution(ProductEngine& engine, const VerifyOptions& opt = {}) {
    const Resolution& p = engine.resolution();
    const std::size_t depth = p.max_degree();
    detail::Sampler rng(opt.seed);
    VerifyReport rep;

    {
        VerifyCheck c{"resolution"};
        auto v = validate_resolution(p);
        c.record(v.passed(), v.summary());
        rep.checks.push_back(c);
    }
    if (depth >= 1) {
        VerifyCheck c{"join"};
        const std::size_t jd = std::min(depth - 1, opt.join_exactness_degree);
        Join j(p, p, jd);
        for (std::size_t d = 0; d <= jd; ++d)
            c.record(j.resolution().rank(d) == join_rank_formula(p.ranks, p.ranks, p.group->order(), d), "rank formula, degree " + std::to_string(d));
        auto v = validate_resolution(j.resolution());
        c.record(v.passed(), v.summary());
        rep.checks.push_back(c);
    }

    VerifyCheck phi_check{"phi"};
    for (std::size_t n = 1; n + 1 <= depth; ++n) {
        const auto& h = engine.homology(n);
        for (std::size_t i = 0; i < h.num_generators(); ++i) {
            auto x = phi_inverse_class(p, h, h.unit_class(i));
            phi_check.record(phi(p, h, x) == h.unit_class(i), "phi(phi_inverse(gen " + std::to_string(i) + ")) in degree " + std::to_string(n));
            phi_check.record(phi_via_solver(p, h, x) == h.unit_class(i), "solver phi on gen " + std::to_string(i) + " in degree " + std::to_string(n));
        }
        for (std::size_t t = 0; t < opt.random_cycles; ++t) {
            auto [z, cls] = random_cycle(p, h, rng);
            auto x = phi_inverse(p, n, z);
            const std::string where = "random cycle " + std::to_string(t) + " in degree " + std::to_string(n);
            phi_check.record(phi(p, h, x) == cls, where);
            phi_check.record(is_stably_zero(p, h, x) == is_zero_vector(cls), "stable-zero test on " + where);
            // Adding N d(s) must not change the class.
            ZGVector s = rng.zg_vector(p.group, p.rank(n + 1));
            InvariantCycle shifted{n, x.vector + norm_times(p.d(n + 1).apply(s))};
            phi_check.record(phi(p, h, shifted) == cls, "boundary shift of " + where);
        }
    }
    rep.checks.push_back(phi_check);

    VerifyCheck agree{"pipelines agree"}, reps{"representative independence"}, bilinear{"bilinearity"};
    for (std::size_t n = 1; n + 3 <= depth; ++n)
        for (std::size_t m = 1; n + m + 2 <= depth && n + m + 1 <= opt.max_product_degree; ++m) {
            const auto& ha = engine.homology(n);
            const auto& hb = engine.homology(m);
            const auto& hc = engine.homology(n + m + 1);
            const std::string pair = std::to_string(n) + "x" + std::to_string(m);
            for (std::size_t a = 0; a < ha.num_generators(); ++a)
                for (std::size_t b = 0; b < hb.num_generators(); ++b) {
                    auto ca = ha.unit_class(a), cb = hb.unit_class(b);
                    IntVector j = engine.join_product(n, ca, m, cb);
                    IntVector y = engine.composition_product(n, ca, m, cb);
                    agree.record(j == y, pair + " generators " + std::to_string(a) + "," + std::to_string(b));

                    // Other cycles in the same classes, lifted with extra augmentation-zero terms.
                    auto [za, cla] = random_cycle(p, ha, rng);
                    auto [zb, clb] = random_cycle(p, hb, rng);
                    IntVector za2 = ha.representative(ca), zb2 = hb.representative(cb);
                    IntVector bd_a = p.d(n + 1).tensor_down() * rng.vector(p.rank(n + 1));
                    IntVector bd_b = p.d(m + 1).tensor_down() * rng.vector(p.rank(m + 1));
                    for (std::size_t i = 0; i < za2.size(); ++i) za2[i] += bd_a[i];
                    for (std::size_t i = 0; i < zb2.size(); ++i) zb2[i] += bd_b[i];
                    ZGVector la = ZGVector::identity_lift(p.group, za2) + rng.augmentation_zero(p.group, za2.size());
                    ZGVector lb = ZGVector::identity_lift(p.group, zb2) + rng.augmentation_zero(p.group, zb2.size());
                    reps.record(engine.join_product_lifted(n, la, m, lb) == j, pair + " perturbed representatives");
                    reps.record(engine.composition_product_cycles(n, za2, m, zb2) == j, pair + " perturbed representatives (composition)");

                    // (a + a') b = ab + a'b with a' random.
                    IntVector sum = ca;
                    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += cla[i];
                    IntVector lhs = engine.join_product(n, sum, m, cb);
                    IntVector rhs = j, other = engine.join_product(n, cla, m, cb);
                    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += other[i];
                    bilinear.record(lhs == hc.reduce(rhs), pair + " additivity in the first factor");
                    IntVector lhs2 = engine.join_product(n, ca, m, clb);
                    IntVector rhs2 = engine.composition_product(n, ca, m, clb);
                    bilinear.record(lhs2 == rhs2, pair + " random second factor");
                }
            bilinear.record(is_zero_vector(engine.join_product(n, ha.zero_class(), m, hb.zero_class())), pair + " zero times zero");
            if (hb.num_generators())
                bilinear.record(is_zero_vector(engine.join_product(n, ha.zero_class(), m, hb.unit_class(0))), pair + " zero times generator");
        }
    rep.checks.push_back(agree);
    rep.checks.push_back(reps);
    rep.checks.push_back(bilinear);
    return rep;
}

}  // namespace tatecup
