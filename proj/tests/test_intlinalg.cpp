#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "rodvol/intlinalg.hpp"

using namespace rodvol;

namespace {

IntVector iv(std::initializer_list<long long> xs) { return to_int_vector(xs); }

} // namespace

TEST(Content, Examples)
{
    EXPECT_EQ(content(iv({2, 4, 3})), 1);
    EXPECT_EQ(content(iv({4, 6, 0})), 2);
    EXPECT_EQ(content(iv({0, 0, 0})), 0);
    EXPECT_EQ(content(iv({-9, 6})), 3);
}

TEST(Content, EmptyVectorIsDimensionError)
{
    try {
        content(IntVector{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Dimension);
    }
}

TEST(Content, InvariantUnderUnimodularMaps)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> d(-40, 40);
    for (int trial = 0; trial < 300; ++trial) {
        const IntVector v{d(rng), d(rng), d(rng)};
        const auto m = oracle::random_sl(rng, 3);
        EXPECT_EQ(content(oracle::apply(m, v)), content(v));
    }
}

TEST(PrimitiveVector, CanonicalSign)
{
    EXPECT_EQ(PrimitiveVector({-13, -17, 3}).coords(), iv({13, 17, -3}));
    EXPECT_EQ(PrimitiveVector({0, -1, 0}).coords(), iv({0, 1, 0}));
}

TEST(PrimitiveVector, Rejects)
{
    EXPECT_THROW(PrimitiveVector({2, 4, 6}), Error);
    try {
        PrimitiveVector({0, 0, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroVector);
    }
    try {
        PrimitiveVector({4, 6, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonPrimitive);
    }
}

TEST(ExtendedGcd, Identity)
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long long> d(-500, 500);
    for (int i = 0; i < 500; ++i) {
        const Integer a = d(rng), b = d(rng);
        auto [g, x, y] = extended_gcd(a, b);
        EXPECT_EQ(a * x + b * y, g);
        EXPECT_EQ(g, oracle::gcd(a, b));
    }
}

TEST(Determinant, MatchesCofactorExpansion)
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long long> d(-9, 9);
    for (std::size_t n = 1; n <= 5; ++n)
        for (int trial = 0; trial < 60; ++trial) {
            IntMatrix m(n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    m(r, c) = d(rng);
            EXPECT_EQ(determinant(m), oracle::det(oracle::to_mat(m)));
        }
}

TEST(Rank, Examples)
{
    EXPECT_EQ(rank({iv({2, 4, 3}), iv({5, 7, 1}), iv({9, 8, 6}), iv({0, 0, 1})}), 3u);
    EXPECT_EQ(rank({iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, 0})}), 2u);
    EXPECT_EQ(rank({iv({0, 0, 1}), iv({0, 0, -1})}), 1u);
}

TEST(BezoutComplete, MatricesFromTheWorkedExample)
{
    EXPECT_EQ(bezout_complete(PrimitiveVector{2, 4, 3}).matrix(), (IntMatrix{{1, 0, 2}, {0, -1, 4}, {0, -1, 3}}));
    EXPECT_EQ(bezout_complete(PrimitiveVector{5, 7, 1}).matrix(), (IntMatrix{{1, 0, 5}, {0, 1, 7}, {0, 0, 1}}));
    EXPECT_EQ(bezout_complete(PrimitiveVector{9, 8, 6}).matrix(),
              (IntMatrix{{-4, 0, 9}, {-4, -1, 8}, {-3, -1, 6}}));
    EXPECT_EQ(bezout_complete(PrimitiveVector{0, 0, 1}).matrix(), IntMatrix::identity(3));
}

TEST(BezoutComplete, SmallCases)
{
    for (const auto& v : {iv({1, 0}), iv({0, 1}), iv({-1, 0}), iv({1, 0, 0}), iv({-1, 0, 0}), iv({0, 0, -1}),
                          iv({-1, 0, 0, 0}), iv({3, -2}), iv({0, 5, 7})}) {
        const UnimodularMatrix m = bezout_complete(v);
        EXPECT_EQ(oracle::det(oracle::to_mat(m.matrix())), 1) << to_string(v);
        EXPECT_EQ(m.matrix().column(v.size() - 1), v) << to_string(v);
    }
}

TEST(BezoutComplete, RandomDimensionsTwoToFive)
{
    std::mt19937_64 rng(2024);
    for (std::size_t n = 2; n <= 5; ++n)
        for (int trial = 0; trial < 400; ++trial) {
            const IntVector v = oracle::random_primitive(rng, n, trial < 200 ? 12 : 100000);
            const UnimodularMatrix m = bezout_complete(v);
            ASSERT_EQ(oracle::det(oracle::to_mat(m.matrix())), 1) << to_string(v);
            ASSERT_EQ(m.matrix().column(n - 1), v);
            IntVector e(n, 0);
            e[n - 1] = 1;
            ASSERT_EQ(unimodular_inverse(m).matrix().apply(v), e);
        }
}

TEST(BezoutComplete, Rejects)
{
    EXPECT_THROW(bezout_complete(iv({2, 4, 6})), Error);
    EXPECT_THROW(bezout_complete(iv({1})), Error);
    EXPECT_THROW(bezout_complete(iv({0, 0})), Error);
}

TEST(UnimodularInverse, Examples)
{
    EXPECT_EQ(unimodular_inverse(UnimodularMatrix{{1, 0, 5}, {0, 1, 7}, {0, 0, 1}}).matrix(),
              (IntMatrix{{1, 0, -5}, {0, 1, -7}, {0, 0, 1}}));
    EXPECT_EQ(unimodular_inverse(UnimodularMatrix{{1, 0, 2}, {0, -1, 4}, {0, -1, 3}}).matrix(),
              (IntMatrix{{1, -2, 2}, {0, 3, -4}, {0, 1, -1}}));
}

TEST(UnimodularInverse, ProductIsIdentityAndInvolution)
{
    std::mt19937_64 rng(77);
    for (std::size_t n = 1; n <= 5; ++n)
        for (int trial = 0; trial < 80; ++trial) {
            auto a = oracle::random_sl(rng, n);
            if (trial % 2)
                for (auto& x : a[0])
                    x = -x; // det -1
            const UnimodularMatrix m(oracle::from_mat(a));
            const UnimodularMatrix inv = unimodular_inverse(m);
            EXPECT_EQ(oracle::mul(a, oracle::to_mat(inv.matrix())), oracle::identity(n));
            EXPECT_EQ(unimodular_inverse(inv), m);
        }
}

TEST(UnimodularMatrix, RejectsSingular)
{
    try {
        UnimodularMatrix m{{2, 0}, {0, 1}};
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotUnimodular);
    }
}

TEST(TransformDirections, NormalizationOfTheSecondRod)
{
    const UnimodularMatrix m{{1, 0, -5}, {0, 1, -7}, {0, 0, 1}};
    const std::vector<PrimitiveVector> e3{PrimitiveVector{0, 0, 1}};
    EXPECT_EQ(transform_directions(m, {PrimitiveVector{5, 7, 1}}), e3);
    const auto out = transform_directions(m, {PrimitiveVector{2, 4, 3}, PrimitiveVector{9, 8, 6}, PrimitiveVector{0, 0, 1}});
    EXPECT_EQ(out, (std::vector<PrimitiveVector>{{13, 17, -3}, {21, 34, -6}, {5, 7, -1}}));
}

TEST(TransformDirections, DimensionMismatch)
{
    EXPECT_THROW(transform_directions(UnimodularMatrix{{1, 0}, {0, 1}}, {PrimitiveVector{1, 0, 0}}), Error);
}

TEST(MinResidueInverse, TiesGoPositive)
{
    EXPECT_EQ(min_residue_inverse(1, 2), 1);
    EXPECT_EQ(min_residue_inverse(3, 7), -2);
    EXPECT_EQ(min_residue_inverse(5, 1), 0);
}
