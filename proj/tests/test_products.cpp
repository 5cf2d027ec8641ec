#include "tatecup/io.hpp"
#include "tatecup/products.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tatecup;

namespace {

std::vector<Integer> ints(std::initializer_list<long long> xs) { return to_int_vector(xs); }

Resolution q8_fixture() { return load_resolution(std::filesystem::path(TATECUP_DATA_DIR) / "q8_periodic.json"); }

IntVector transport(const ChainMap& psi, const Resolution& p, const HomologyGroup& hp, const HomologyGroup& hq, std::span<const Integer> c) {
    ZGVector lifted = ZGVector::identity_lift(p.group, hp.representative(c));
    return hq.classify(psi.apply(hp.degree(), lifted).tensor_down());
}

IntVector add(IntVector a, const IntVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

/// All (n, m) with n, m >= 1 and n + m + 1 <= top.
std::vector<std::pair<std::size_t, std::size_t>> pairs_up_to(std::size_t top) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t n = 1; n + 2 <= top; ++n)
        for (std::size_t m = 1; n + m + 1 <= top; ++m) out.emplace_back(n, m);
    return out;
}

void expect_pipelines_agree(Resolution p, std::size_t top) {
    const std::string label = p.group->label();
    ProductEngine engine(std::move(p));
    auto table = engine.product_table(pairs_up_to(top));
    for (const auto& e : table.entries)
        EXPECT_EQ(e.join, e.composition) << label << " " << e.n << "x" << e.m << " generators " << e.a << "," << e.b;
    EXPECT_TRUE(table.all_agree());
}

}  // namespace

TEST(Comparison, SelfMapSatisfiesContract) {
    auto p = kernel_resolution(symmetric_group(3), 5);
    auto psi = lift_comparison(p, p, 4);
    EXPECT_TRUE(check_comparison(psi, p, p).passed());
    for (std::size_t n = 1; n <= 3; ++n) {
        auto h = homology(p, n);
        auto images = induced_map(psi, p, h, h);
        for (std::size_t i = 0; i < images.size(); ++i) EXPECT_EQ(images[i], h.unit_class(i));
    }
}

TEST(Comparison, JoinToResolutionOverCyclicTwo) {
    auto r = periodic_cyclic_resolution(2, 6);
    auto j = join(r, r, 5);
    auto psi = lift_comparison(j, r, 4);
    EXPECT_EQ(psi.top_degree(), 4u);
    auto rep = check_comparison(psi, j, r);
    EXPECT_TRUE(rep.passed()) << rep.summary();
}

TEST(Comparison, BrokenMapIsCaught) {
    auto r = periodic_cyclic_resolution(3, 4);
    auto psi = lift_comparison(r, r, 3);
    ZGMatrix::Builder twice(r.group, 1, 1);
    twice.add(0, 0, 0, Integer(2));
    psi.components[2] = std::move(twice).build();
    EXPECT_FALSE(check_comparison(psi, r, r).passed());
}

TEST(Comparison, InducedMapIsBijectionForCyclicThree) {
    auto bar = bar_resolution(cyclic_group(3), 5);
    auto per = periodic_cyclic_resolution(3, 5);
    auto psi = lift_comparison(bar, per, 4);
    ASSERT_TRUE(check_comparison(psi, bar, per).passed());
    for (std::size_t n : {1, 3}) {
        auto hb = homology(bar, n), hp = homology(per, n);
        auto images = induced_map(psi, bar, hb, hp);
        ASSERT_EQ(images.size(), 1u);
        EXPECT_EQ(hp.order_of(images[0]), Integer(3)) << "degree " << n;
    }
    auto back = lift_comparison(per, bar, 4);
    for (std::size_t n : {1, 3}) {
        auto hb = homology(bar, n), hp = homology(per, n);
        auto there = induced_map(psi, bar, hb, hp)[0];
        auto round = transport(back, per, hp, hb, there);
        EXPECT_EQ(round, hb.unit_class(0));
    }
}

TEST(CycleMap, LiftIsChainMap) {
    for (auto p : {periodic_cyclic_resolution(4, 7), kernel_resolution(symmetric_group(3), 7)}) {
        DifferentialSolvers solvers(p);
        for (std::size_t m : {1, 3}) {
            auto h = homology(p, m);
            auto g1 = phi_inverse_class(p, h, h.unit_class(0));
            auto g = lift_cycle_map(p, g1, 3, solvers);
            EXPECT_EQ(g.degree_shift, m + 1);
            EXPECT_TRUE(check_cycle_map(g, p, g1).passed()) << p.id << " m=" << m;
        }
    }
}

TEST(Products, GeneratorTimesGeneratorIsGeneratorForCyclicGroups) {
    for (std::size_t m = 2; m <= 5; ++m) {
        ProductEngine engine(periodic_cyclic_resolution(m, 8));
        for (auto [a, b] : {std::pair<std::size_t, std::size_t>{1, 1}, {1, 3}, {3, 3}}) {
            auto c = engine.join_product(a, ints({1}), b, ints({1}));
            EXPECT_EQ(engine.homology(a + b + 1).order_of(c), Integer(static_cast<long>(m))) << "C" << m << " " << a << "x" << b;
        }
    }
}

TEST(Products, CyclicTwoTable) {
    ProductEngine engine(periodic_cyclic_resolution(2, 8));
    auto t = engine.product_table({{1, 1}, {1, 3}, {3, 3}});
    ASSERT_EQ(t.entries.size(), 3u);
    for (const auto& e : t.entries) {
        EXPECT_EQ(e.join, ints({1}));
        EXPECT_TRUE(e.agree);
    }
}

TEST(Products, CyclicThreeHasOrderThree) {
    ProductEngine engine(periodic_cyclic_resolution(3, 4));
    auto t = engine.product_table({{1, 1}});
    ASSERT_EQ(t.entries.size(), 1u);
    EXPECT_EQ(engine.homology(3).order_of(t.entries[0].join), Integer(3));
}

TEST(Products, PipelinesAgreeOnCyclicGroups) {
    for (std::size_t m : {2, 3, 4, 6}) expect_pipelines_agree(periodic_cyclic_resolution(m, 8), 7);
}

TEST(Products, PipelinesAgreeOnSymmetricThree) { expect_pipelines_agree(kernel_resolution(symmetric_group(3), 8), 7); }

TEST(Products, PipelinesAgreeOnDihedralFour) { expect_pipelines_agree(kernel_resolution(dihedral_group(4), 8), 7); }

TEST(Products, PipelinesAgreeOnBarResolution) { expect_pipelines_agree(bar_resolution(cyclic_group(3), 5), 4); }

TEST(Products, ZeroFactorsGiveZero) {
    ProductEngine engine(kernel_resolution(dihedral_group(4), 6));
    for (auto [n, m] : pairs_up_to(5)) {
        auto za = engine.homology(n).zero_class(), zb = engine.homology(m).zero_class();
        EXPECT_TRUE(is_zero_vector(engine.join_product(n, za, m, zb)));
        EXPECT_TRUE(is_zero_vector(engine.composition_product(n, za, m, zb)));
        for (std::size_t b = 0; b < engine.homology(m).num_generators(); ++b) {
            EXPECT_TRUE(is_zero_vector(engine.join_product(n, za, m, engine.homology(m).unit_class(b))));
            EXPECT_TRUE(is_zero_vector(engine.composition_product(n, za, m, engine.homology(m).unit_class(b))));
        }
    }
}

TEST(Products, Bilinear) {
    std::mt19937_64 rng(21);
    for (auto p : {kernel_resolution(dihedral_group(4), 6), periodic_cyclic_resolution(6, 6)}) {
        ProductEngine engine(std::move(p));
        for (auto [n, m] : pairs_up_to(5)) {
            const auto& ha = engine.homology(n);
            const auto& hb = engine.homology(m);
            const auto& hc = engine.homology(n + m + 1);
            auto rnd = [&](const HomologyGroup& h) {
                IntVector c(h.num_generators());
                for (auto& x : c) x = Integer(static_cast<long>(rng() % 11) - 5);
                return c;
            };
            auto a = rnd(ha), a2 = rnd(ha), b = rnd(hb), b2 = rnd(hb);
            EXPECT_EQ(engine.join_product(n, add(a, a2), m, b), hc.reduce(add(engine.join_product(n, a, m, b), engine.join_product(n, a2, m, b))));
            EXPECT_EQ(engine.join_product(n, a, m, add(b, b2)), hc.reduce(add(engine.join_product(n, a, m, b), engine.join_product(n, a, m, b2))));
            EXPECT_EQ(engine.composition_product(n, a, m, add(b, b2)), engine.join_product(n, a, m, add(b, b2)));
        }
    }
}

TEST(Products, RepresentativeIndependence) {
    std::mt19937_64 rng(5);
    for (auto p : {kernel_resolution(symmetric_group(3), 6), periodic_cyclic_resolution(4, 6)}) {
        ProductEngine engine(std::move(p));
        const auto& r = engine.resolution();
        for (auto [n, m] : pairs_up_to(5)) {
            const auto& ha = engine.homology(n);
            const auto& hb = engine.homology(m);
            for (std::size_t a = 0; a < ha.num_generators(); ++a)
                for (std::size_t b = 0; b < hb.num_generators(); ++b) {
                    auto expected = engine.join_product(n, ha.unit_class(a), m, hb.unit_class(b));
                    IntVector ya = ha.generators()[a], yb = hb.generators()[b];
                    IntVector sa(r.rank(n + 1)), sb(r.rank(m + 1));
                    for (auto& x : sa) x = Integer(static_cast<long>(rng() % 7) - 3);
                    for (auto& x : sb) x = Integer(static_cast<long>(rng() % 7) - 3);
                    ya = add(ya, r.d(n + 1).tensor_down() * sa);
                    yb = add(yb, r.d(m + 1).tensor_down() * sb);
                    EXPECT_EQ(engine.join_product_cycles(n, ya, m, yb), expected);
                    EXPECT_EQ(engine.composition_product_cycles(n, ya, m, yb), expected);
                    // A different lift of y_a: add an element of the augmentation ideal, which N kills.
                    ZGVector la = ZGVector::identity_lift(r.group, ya);
                    for (std::size_t i = 0; i < la.rank(); ++i) {
                        la.coeff(i)[r.group->order() - 1] += Integer(2);
                        la.coeff(i)[0] -= Integer(2);
                    }
                    EXPECT_EQ(engine.join_product_lifted(n, la, m, ZGVector::identity_lift(r.group, yb)), expected);
                }
        }
    }
}

TEST(Products, ResolutionIndependenceForCyclicGroups) {
    for (std::size_t m : {2, 3}) {
        const std::size_t top = m == 2 ? 7 : 3;
        auto bar = bar_resolution(cyclic_group(m), top + 1);
        auto per = periodic_cyclic_resolution(m, top + 1);
        auto psi = lift_comparison(bar, per, top);
        ASSERT_TRUE(check_comparison(psi, bar, per).passed());
        ProductEngine eb(bar), ep(per);
        for (auto [n, k] : pairs_up_to(top)) {
            if (n % 2 == 0 || k % 2 == 0) continue;
            auto a = eb.homology(n).unit_class(0), b = eb.homology(k).unit_class(0);
            auto on_bar = transport(psi, bar, eb.homology(n + k + 1), ep.homology(n + k + 1), eb.join_product(n, a, k, b));
            auto ta = transport(psi, bar, eb.homology(n), ep.homology(n), a);
            auto tb = transport(psi, bar, eb.homology(k), ep.homology(k), b);
            EXPECT_EQ(on_bar, ep.join_product(n, ta, k, tb)) << "C" << m << " " << n << "x" << k;
        }
    }
}

TEST(Products, ResolutionIndependenceForNoncyclicGroups) {
    for (auto g : {symmetric_group(3), dihedral_group(4)}) {
        const std::size_t top = 3;
        auto bar = bar_resolution(g, top + 1);
        auto ker = kernel_resolution(g, top + 1);
        auto psi = lift_comparison(bar, ker, top);
        ASSERT_TRUE(check_comparison(psi, bar, ker).passed());
        ProductEngine eb(bar), ek(ker);
        for (auto [n, m] : pairs_up_to(top)) {
            const auto& ha = eb.homology(n);
            const auto& hb = eb.homology(m);
            for (std::size_t a = 0; a < ha.num_generators(); ++a)
                for (std::size_t b = 0; b < hb.num_generators(); ++b) {
                    auto ua = ha.unit_class(a), ub = hb.unit_class(b);
                    auto on_bar = transport(psi, bar, eb.homology(n + m + 1), ek.homology(n + m + 1), eb.join_product(n, ua, m, ub));
                    auto ta = transport(psi, bar, ha, ek.homology(n), ua);
                    auto tb = transport(psi, bar, hb, ek.homology(m), ub);
                    EXPECT_EQ(on_bar, ek.join_product(n, ta, m, tb)) << g->label() << " " << n << "x" << m;
                }
        }
    }
}

TEST(Products, QuaternionThreeByThreeIsNonzero) {
    ProductEngine engine(q8_fixture());
    auto h7 = engine.homology(7);
    EXPECT_EQ(h7.invariant_factors(), ints({8}));
    auto t = engine.product_table({{3, 3}});
    ASSERT_EQ(t.entries.size(), 1u);
    EXPECT_FALSE(is_zero_vector(t.entries[0].join));
    EXPECT_TRUE(t.entries[0].agree);
    EXPECT_EQ(h7.order_of(t.entries[0].join), Integer(8));
}

TEST(Products, TrivialGroupTableIsEmpty) {
    ProductEngine engine(bar_resolution(cyclic_group(1), 8));
    auto t = engine.product_table({{1, 1}, {1, 3}, {3, 3}});
    EXPECT_TRUE(t.entries.empty());
}

TEST(Products, DegreeChecks) {
    ProductEngine engine(periodic_cyclic_resolution(3, 4));
    EXPECT_THROW(engine.join_product(0, ints({0}), 1, ints({1})), DegreeError);
    EXPECT_THROW(engine.join_product(1, ints({1}), 3, ints({1})), DegreeError);
    ProductEngine deep(periodic_cyclic_resolution(3, 6));
    EXPECT_THROW(deep.join_product_cycles(1, ints({1}), 2, ints({1})), ValidationError);
}

TEST(Products, CommutativityIsRecorded) {
    ProductEngine engine(periodic_cyclic_resolution(5, 6));
    auto c = engine.commutativity({{1, 3}});
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(engine.homology(5).order_of(c[0].ab), Integer(5));
    EXPECT_EQ(engine.homology(5).order_of(c[0].ba), Integer(5));
}

TEST(Products, JoinChainIsCycleAfterTensoringDown) {
    ProductEngine engine(kernel_resolution(symmetric_group(3), 6));
    const auto& p = engine.resolution();
    for (auto [n, m] : pairs_up_to(5)) {
        const auto& ha = engine.homology(n);
        const auto& hb = engine.homology(m);
        if (!ha.num_generators() || !hb.num_generators()) continue;
        auto a = ZGVector::identity_lift(p.group, ha.generators()[0]);
        auto w = engine.join_chain(n, a, m, ZGVector::identity_lift(p.group, hb.generators()[0]));
        EXPECT_TRUE(is_zero_vector(engine.join(n + m + 1).resolution().d(n + m + 1).apply(w).tensor_down()));
    }
}
