#include "tatecup/homology.hpp"
#include "tatecup/io.hpp"
#include "tatecup/tate.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tatecup;

namespace {

std::vector<Integer> ints(std::initializer_list<long long> xs) { return to_int_vector(xs); }

Resolution q8_fixture() { return load_resolution(std::filesystem::path(TATECUP_DATA_DIR) / "q8_periodic.json"); }

/// Invariant factors (> 1) of the cokernel of the relation rows e_g + e_h - e_gh.
std::vector<Integer> relation_matrix_abelianization(const FiniteGroup& g) {
    const std::size_t n = g.order();
    IntMatrix rel(n * n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            rel(a * n + b, a) += Integer(1);
            rel(a * n + b, b) += Integer(1);
            rel(a * n + b, g.mul(a, b)) -= Integer(1);
        }
    std::vector<Integer> out;
    for (const auto& d : smith_normal_form(rel, {false, false}).invariant_factors())
        if (!d.is_one()) out.push_back(d);
    return out;
}

std::vector<Resolution> test_resolutions() {
    std::vector<Resolution> out;
    for (std::size_t m : {2, 3, 4, 6}) out.push_back(periodic_cyclic_resolution(m, 5));
    out.push_back(bar_resolution(cyclic_group(3), 5));
    out.push_back(kernel_resolution(symmetric_group(3), 5));
    out.push_back(kernel_resolution(dihedral_group(4), 5));
    out.push_back(q8_fixture().truncated(5));
    return out;
}

}  // namespace

TEST(TensorDown, PeriodicCyclic) {
    for (std::size_t m = 2; m <= 5; ++m) {
        auto c = tensor_down(periodic_cyclic_resolution(m, 4));
        for (std::size_t k = 1; k <= 4; ++k) EXPECT_EQ(c.d(k)(0, 0), Integer(k % 2 ? 0 : static_cast<long>(m)));
    }
}

TEST(TensorDown, TrivialGroup) {
    auto c = tensor_down(bar_resolution(cyclic_group(1), 2));
    EXPECT_EQ(c.ranks, (std::vector<std::size_t>{1, 0, 0}));
    auto h0 = homology(c, 0);
    EXPECT_EQ(h0.invariant_factors(), ints({0}));
    EXPECT_TRUE(homology(c, 1).is_trivial());
}

TEST(TensorDown, BarCyclicTwo) {
    auto bar = tensor_down(bar_resolution(cyclic_group(2), 4));
    auto per = tensor_down(periodic_cyclic_resolution(2, 4));
    for (std::size_t k = 1; k <= 4; ++k) EXPECT_EQ(bar.d(k), per.d(k));
}

TEST(Homology, CyclicGroupsOddAndEven) {
    for (std::size_t m = 2; m <= 6; ++m) {
        auto p = periodic_cyclic_resolution(m, 6);
        for (std::size_t n = 1; n <= 5; ++n) {
            auto h = homology(p, n);
            if (n % 2) {
                EXPECT_EQ(h.invariant_factors(), ints({static_cast<long long>(m)})) << "C" << m << " H" << n;
                EXPECT_EQ(h.order(), Integer(static_cast<long>(m)));
            } else {
                EXPECT_TRUE(h.is_trivial()) << "C" << m << " H" << n;
            }
        }
    }
}

TEST(Homology, CyclicViaBarResolution) {
    for (std::size_t m : {2, 3, 4}) {
        auto p = bar_resolution(cyclic_group(m), 5);
        for (std::size_t n = 1; n <= 4; ++n)
            EXPECT_EQ(homology(p, n).invariant_factors(), n % 2 ? ints({static_cast<long long>(m)}) : ints({})) << m << " " << n;
    }
}

TEST(Homology, SymmetricThreeFirstDegree) { EXPECT_EQ(homology(bar_resolution(symmetric_group(3), 2), 1).invariant_factors(), ints({2})); }

TEST(Homology, FirstHomologyIsAbelianization) {
    for (auto g : {symmetric_group(3), dihedral_group(4), quaternion_group(), dihedral_group(3), cyclic_group(6)}) {
        auto expected = oracle::abelianization(*g);
        EXPECT_EQ(relation_matrix_abelianization(*g), expected) << g->label();
        EXPECT_EQ(homology(kernel_resolution(g, 2), 1).invariant_factors(), expected) << g->label();
        EXPECT_EQ(homology(bar_resolution(g, 2), 1).invariant_factors(), expected) << g->label();
    }
    EXPECT_EQ(oracle::abelianization(*dihedral_group(4)), ints({2, 2}));
    EXPECT_EQ(oracle::abelianization(*quaternion_group()), ints({2, 2}));
}

TEST(Homology, IndependentOfResolution) {
    auto g = symmetric_group(3);
    auto bar = bar_resolution(g, 4), ker = kernel_resolution(g, 4);
    for (std::size_t n = 1; n <= 3; ++n) EXPECT_EQ(homology(bar, n).invariant_factors(), homology(ker, n).invariant_factors());
    EXPECT_EQ(homology(ker, 3).invariant_factors(), ints({6}));
}

TEST(Homology, ClassifyContract) {
    std::mt19937_64 rng(1);
    for (const auto& p : test_resolutions()) {
        for (std::size_t n = 1; n <= 4; ++n) {
            auto h = homology(p, n);
            for (std::size_t i = 0; i < h.num_generators(); ++i) {
                EXPECT_TRUE(h.is_cycle(h.generators()[i]));
                EXPECT_EQ(h.classify(h.generators()[i]), h.unit_class(i));
            }
            IntVector s(p.rank(n + 1));
            for (auto& x : s) x = Integer(static_cast<long>(rng() % 7) - 3);
            EXPECT_EQ(h.classify(p.d(n + 1).tensor_down() * s), h.zero_class());
        }
    }
}

TEST(Homology, NonCycleRejected) {
    auto p = periodic_cyclic_resolution(3, 4);
    auto h = homology(p, 2);
    EXPECT_THROW(h.classify(ints({1})), ValidationError);
}

TEST(Homology, NeedsOneDegreeAbove) {
    auto p = periodic_cyclic_resolution(3, 3);
    EXPECT_NO_THROW(homology(p, 2));
    EXPECT_THROW(homology(p, 3), DegreeError);
}

TEST(PhiInverse, CyclicExamples) {
    auto p2 = periodic_cyclic_resolution(2, 3);
    auto x = phi_inverse(p2, 1, ints({1}));
    EXPECT_EQ(x.vector.z(), ints({1, 1}));
    EXPECT_TRUE(x.vector.is_invariant());
    EXPECT_TRUE(p2.d(1).apply(x.vector).is_zero());

    auto p3 = periodic_cyclic_resolution(3, 3);
    EXPECT_EQ(phi_inverse(p3, 1, ints({1})).vector.z(), ints({1, 1, 1}));
    EXPECT_THROW(phi_inverse(p3, 2, ints({1})), ValidationError);
    EXPECT_THROW(phi_inverse(p3, 0, ints({1})), DegreeError);
}

TEST(PhiInverse, BoundaryGoesToZero) {
    auto p = periodic_cyclic_resolution(4, 4);
    auto h = homology(p, 1);
    auto b = p.d(2).tensor_down() * ints({5});
    auto x = phi_inverse(p, 1, b);
    EXPECT_TRUE(is_zero_vector(phi(p, h, x)));
    EXPECT_TRUE(is_stably_zero(p, h, x));
}

TEST(Phi, CyclicTwoExamples) {
    auto p = periodic_cyclic_resolution(2, 3);
    auto h = homology(p, 1);
    InvariantCycle x{1, ZGVector(p.group, ints({1, 1}))};
    EXPECT_EQ(phi(p, h, x), ints({1}));
    EXPECT_FALSE(is_stably_zero(p, h, x));
    InvariantCycle twice{1, ZGVector(p.group, ints({2, 2}))};
    EXPECT_TRUE(is_stably_zero(p, h, twice));
}

TEST(Phi, RejectsNonInvariantOrNonCycle) {
    auto p = periodic_cyclic_resolution(3, 3);
    auto h = homology(p, 1);
    EXPECT_THROW(phi(p, h, InvariantCycle{1, ZGVector(p.group, ints({1, 0, 0}))}), ValidationError);
    auto h2 = homology(p, 2);
    EXPECT_THROW(phi(p, h2, InvariantCycle{2, ZGVector(p.group, ints({1, 1, 1}))}), ValidationError);
}

TEST(Phi, RoundTripOnGenerators) {
    for (std::size_t m : {2, 3, 4})
        for (std::size_t n : {1, 3}) {
            auto p = periodic_cyclic_resolution(m, 5);
            auto h = homology(p, n);
            for (std::size_t i = 0; i < h.num_generators(); ++i) {
                auto x = phi_inverse_class(p, h, h.unit_class(i));
                EXPECT_EQ(phi(p, h, x), h.unit_class(i));
            }
        }
    for (const auto& p : test_resolutions())
        for (std::size_t n = 1; n <= 4; ++n) {
            auto h = homology(p, n);
            for (std::size_t i = 0; i < h.num_generators(); ++i) {
                auto x = phi_inverse_class(p, h, h.unit_class(i));
                EXPECT_EQ(phi(p, h, x), h.unit_class(i)) << p.group->label() << " degree " << n;
                EXPECT_EQ(phi_via_solver(p, h, x), h.unit_class(i));
            }
        }
}

TEST(Phi, IndependentOfNormPreimage) {
    // Every slice x_{i,g} solves N y = x; so does the solver's answer. All must classify alike.
    std::mt19937_64 rng(12);
    for (const auto& p : test_resolutions())
        for (std::size_t n = 1; n <= 3; ++n) {
            auto h = homology(p, n);
            IntVector c(h.num_generators());
            for (auto& v : c) v = Integer(static_cast<long>(rng() % 9) - 4);
            IntVector z = h.representative(c);
            auto x = phi_inverse(p, n, z);
            x.vector += norm_times(p.d(n + 1).apply(ZGVector(p.group, IntVector(p.z_rank(n + 1), Integer(1)))));
            auto expected = phi(p, h, x);
            EXPECT_EQ(expected, h.reduce(c));
            EXPECT_EQ(phi_via_solver(p, h, x), expected);
            for (std::size_t g = 0; g < p.group->order(); ++g) {
                IntVector y(x.vector.rank());
                for (std::size_t i = 0; i < y.size(); ++i) y[i] = x.vector.coeff(i)[g];
                EXPECT_EQ(h.classify(y), expected);
            }
        }
}

TEST(Phi, AdditiveAndKillsBoundaries) {
    std::mt19937_64 rng(13);
    for (const auto& p : test_resolutions())
        for (std::size_t n = 1; n <= 4; ++n) {
            auto h = homology(p, n);
            for (int t = 0; t < 5; ++t) {
                IntVector a(h.num_generators()), b(h.num_generators());
                for (auto& v : a) v = Integer(static_cast<long>(rng() % 9) - 4);
                for (auto& v : b) v = Integer(static_cast<long>(rng() % 9) - 4);
                auto xa = phi_inverse_class(p, h, a), xb = phi_inverse_class(p, h, b);
                IntVector sum = a;
                for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b[i];
                EXPECT_EQ(phi(p, h, InvariantCycle{n, xa.vector + xb.vector}), h.reduce(sum));
                ZGVector s(p.group, p.rank(n + 1));
                for (auto& v : s.z()) v = Integer(static_cast<long>(rng() % 5) - 2);
                EXPECT_EQ(phi(p, h, InvariantCycle{n, xa.vector + norm_times(p.d(n + 1).apply(s))}), h.reduce(a));
            }
        }
}

TEST(Phi, StableZeroMatchesZeroClass) {
    for (std::size_t m : {2, 4, 6}) {
        auto p = periodic_cyclic_resolution(m, 4);
        auto h = homology(p, 3);
        for (long k = -7; k <= 7; ++k) {
            auto x = phi_inverse_class(p, h, ints({k}));
            EXPECT_EQ(is_stably_zero(p, h, x), k % static_cast<long>(m) == 0) << m << " " << k;
        }
    }
}

TEST(Tate, NegativeDegrees) {
    auto p = periodic_cyclic_resolution(4, 4);
    EXPECT_TRUE(tate_group(p, -1).is_zero());
    EXPECT_EQ(tate_group(p, -2).invariant_factors(), ints({4}));
    EXPECT_TRUE(tate_group(p, -3).is_zero());
    EXPECT_THROW(tate_group(p, 0), DegreeError);
    EXPECT_THROW(tate_group(p, 3), DegreeError);
}

TEST(Tate, MinusOneVanishesForEveryGroup) {
    for (const auto& p : test_resolutions()) {
        EXPECT_TRUE(tate_group(p, -1).is_zero()) << p.group->label();
        // The norm map H_0 = Z -> H^0 = Z is multiplication by |G|, which has no kernel.
        EXPECT_EQ(homology(p, 0).invariant_factors(), ints({0}));
    }
}
