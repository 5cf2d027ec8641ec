#include "tatecup/normal_form.hpp"
#include "tatecup/zg_matrix.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tatecup;

namespace {

IntMatrix mat(std::size_t rows, std::size_t cols, std::initializer_list<long long> xs) {
    IntMatrix m(rows, cols);
    auto it = xs.begin();
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = *it++;
    return m;
}

mpz_class det(const IntMatrix& m) {
    std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m(r, c).to_mpz();
    return oracle::determinant(a);
}

void expect_valid_smith(const IntMatrix& a) {
    auto s = smith_normal_form(a);
    ASSERT_EQ(s.U * a * s.V, s.S);
    EXPECT_EQ(mpz_class(abs(det(s.U))), 1);
    EXPECT_EQ(mpz_class(abs(det(s.V))), 1);
    for (std::size_t r = 0; r < s.S.rows(); ++r)
        for (std::size_t c = 0; c < s.S.cols(); ++c)
            if (r != c || r >= s.rank) {
                EXPECT_TRUE(s.S(r, c).is_zero());
            }
    for (std::size_t i = 0; i < s.rank; ++i) {
        EXPECT_GT(s.S(i, i).sign(), 0);
        if (i + 1 < s.rank) {
            EXPECT_TRUE(divides(s.S(i, i), s.S(i + 1, i + 1)));
        }
    }
}

ZGMatrix one_by_one(const GroupPtr& g, std::initializer_list<long long> entry) {
    ZGMatrix::Builder b(g, 1, 1);
    b.add(0, 0, to_int_vector(entry));
    return std::move(b).build();
}

ZGMatrix random_zg(const GroupPtr& g, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-2, 2);
    ZGMatrix::Builder b(g, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            for (std::size_t x = 0; x < g->order(); ++x) b.add(r, c, x, Integer(d(rng)));
    return std::move(b).build();
}

}  // namespace

TEST(Smith, SmallExamples) {
    auto z = smith_normal_form(mat(1, 1, {0}));
    EXPECT_EQ(z.S, mat(1, 1, {0}));
    EXPECT_EQ(z.rank, 0u);
    EXPECT_EQ(smith_normal_form(IntMatrix::identity(2)).S, IntMatrix::identity(2));
    auto s = smith_normal_form(mat(2, 2, {2, 4, 6, 8}));
    EXPECT_EQ(s.S, mat(2, 2, {2, 0, 0, 4}));
    EXPECT_EQ(s.invariant_factors()[0] * s.invariant_factors()[1], Integer(mpz_class(abs(det(mat(2, 2, {2, 4, 6, 8}))))));
}

TEST(Smith, Deterministic) {
    auto a = mat(3, 4, {4, -6, 2, 0, 3, 9, -12, 5, 0, 7, 1, 1});
    auto s1 = smith_normal_form(a), s2 = smith_normal_form(a);
    EXPECT_EQ(s1.U, s2.U);
    EXPECT_EQ(s1.V, s2.V);
    EXPECT_EQ(s1.S, s2.S);
}

TEST(Smith, InversesWhenRequested) {
    auto a = mat(3, 3, {2, 4, 4, -6, 6, 12, 10, -4, -16});
    auto s = smith_normal_form(a, {true, true});
    EXPECT_EQ(s.U * s.U_inverse, IntMatrix::identity(3));
    EXPECT_EQ(s.V * s.V_inverse, IntMatrix::identity(3));
}

TEST(Smith, RandomMatricesAgainstMinorGcd) {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 200; ++t) {
        IntMatrix a = oracle::random_matrix(rng);
        expect_valid_smith(a);
        auto expected = oracle::minor_gcd_factors(a);
        EXPECT_EQ(smith_normal_form(a).invariant_factors(), expected) << a;
        EXPECT_EQ(elementary_divisors(a), expected) << a;
    }
}

TEST(Smith, LargeEntriesStayExact) {
    IntMatrix a = mat(2, 2, {1, 0, 0, 1});
    a(0, 0) = Integer::parse("98765432109876543210");
    a(0, 1) = Integer::parse("12345678901234567890");
    a(1, 0) = Integer::parse("-5555555555555555555555");
    a(1, 1) = 7;
    expect_valid_smith(a);
    EXPECT_EQ(smith_normal_form(a).invariant_factors(), oracle::minor_gcd_factors(a));
}

TEST(Solve, Examples) {
    IntVector b = to_int_vector({4, -2, 9});
    EXPECT_EQ(solve_linear(IntMatrix::identity(3), b), b);
    EXPECT_FALSE(solve_linear(mat(1, 1, {2}), to_int_vector({3})).has_value());
    auto x = solve_linear(mat(1, 2, {2, 3}), to_int_vector({1}));
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(mat(1, 2, {2, 3}) * *x, to_int_vector({1}));
}

TEST(Solve, RandomSystemsSolvedExactlyWhenConsistent) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        IntMatrix a = oracle::random_matrix(rng, 6);
        IntVector x0(a.cols());
        for (auto& v : x0) v = Integer(static_cast<long>(rng() % 7) - 3);
        IntVector b = a * x0;
        auto x = solve_linear(a, b);
        ASSERT_TRUE(x.has_value());
        EXPECT_EQ(a * *x, b);
        LinearSolver ls(a);
        IntMatrix k = ls.kernel_basis();
        EXPECT_TRUE((a * k).is_zero());
        EXPECT_EQ(k.cols() + ls.rank(), a.cols());
    }
}

TEST(ZExpansion, Examples) {
    auto c2 = cyclic_group(2);
    EXPECT_EQ(z_expansion(one_by_one(c2, {1, 1})).to_dense(), mat(2, 2, {1, 1, 1, 1}));
    EXPECT_EQ(z_expansion(one_by_one(c2, {-1, 1})).to_dense(), mat(2, 2, {-1, 1, 1, -1}));
    EXPECT_TRUE(z_expansion(compose(one_by_one(c2, {-1, 1}), one_by_one(c2, {1, 1}))).to_dense().is_zero());
    auto s3 = symmetric_group(3);
    EXPECT_EQ(z_expansion(ZGMatrix::identity(s3, 3)).to_dense(), IntMatrix::identity(18));
}

TEST(ZExpansion, Functorial) {
    std::mt19937_64 rng(3);
    for (auto g : {cyclic_group(3), symmetric_group(3), quaternion_group()}) {
        for (int t = 0; t < 5; ++t) {
            auto m = random_zg(g, 2, 3, rng), n = random_zg(g, 3, 2, rng);
            EXPECT_EQ(z_expansion(compose(m, n)).to_dense(), z_expansion(m).to_dense() * z_expansion(n).to_dense());
            ZGVector x(g, 2);
            for (auto& v : x.z()) v = Integer(static_cast<long>(rng() % 5) - 2);
            EXPECT_EQ(n.apply(x).z(), z_expansion(n).to_dense() * x.z());
            EXPECT_EQ(m.apply(n.apply(x)), compose(m, n).apply(x));
        }
    }
}

TEST(SolveZG, Examples) {
    auto c2 = cyclic_group(2);
    ZGVector b(c2, to_int_vector({1, 1}));
    auto x = solve_zg_linear(one_by_one(c2, {1, 1}), b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(one_by_one(c2, {1, 1}).apply(*x), b);
    EXPECT_FALSE(solve_zg_linear(one_by_one(c2, {-1, 1}), b).has_value());

    auto s3 = symmetric_group(3);
    ZGVector y(s3, to_int_vector({1, 2, 3, 4, 5, 6, -1, -2, -3, -4, -5, -6}));
    EXPECT_EQ(solve_zg_linear(ZGMatrix::identity(s3, 2), y), y);
}

TEST(SolveZG, RandomConsistentSystems) {
    std::mt19937_64 rng(9);
    for (auto g : {cyclic_group(4), dihedral_group(3)}) {
        for (int t = 0; t < 10; ++t) {
            auto a = random_zg(g, 2, 3, rng);
            ZGVector x0(g, 3);
            for (auto& v : x0.z()) v = Integer(static_cast<long>(rng() % 5) - 2);
            auto b = a.apply(x0);
            auto x = solve_zg_linear(a, b);
            ASSERT_TRUE(x.has_value());
            EXPECT_EQ(a.apply(*x), b);
        }
    }
}
