#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "rodvol/dehnfill.hpp"
#include "rodvol/tables.hpp"

using namespace rodvol;

namespace {

IntVector iv(std::initializer_list<long long> xs) { return to_int_vector(xs); }

} // namespace

TEST(CoreDirection, Parity)
{
    EXPECT_EQ(core_direction({}), (PrimitiveVector{1, 0, 0}));
    EXPECT_EQ(core_direction({3}), (PrimitiveVector{0, 1, 0}));
    EXPECT_EQ(core_direction({2, -4}), (PrimitiveVector{1, 0, 0}));
}

TEST(NestedTrace, FiveThirds)
{
    const auto t = nested_trace({1, 1, 2});
    EXPECT_EQ(t, (std::vector<IntVector>{iv({0, 1, 0}), iv({2, 1, 0}), iv({2, 3, 0}), iv({5, 3, 0})}));
}

TEST(NestedTrace, SingleTerm)
{
    for (long long n = -5; n <= 5; ++n)
        EXPECT_EQ(nested_trace({n}), (std::vector<IntVector>{iv({0, 1, 0}), iv({n, 1, 0})}));
}

TEST(NestedTrace, EmptyAndNegative)
{
    EXPECT_EQ(nested_trace({}), std::vector<IntVector>{iv({1, 0, 0})});
    const auto t = nested_trace({2, -4});
    EXPECT_EQ(t, (std::vector<IntVector>{iv({1, 0, 0}), iv({1, -4, 0}), iv({-7, -4, 0})}));
    EXPECT_EQ(PrimitiveVector(t.back()), (PrimitiveVector{7, 4, 0}));
}

// Final vector is +-(p, q, 0); after the step with c_j the sheared pair is
// proportional to the tail [c_j; ..., c_m].
TEST(NestedTrace, StepsFollowTails)
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        const ContinuedFraction cf = oracle::random_cf(rng, 8, 9);
        const auto t = nested_trace(cf);
        ASSERT_EQ(t.size(), cf.length() + 1);
        const Rational x = eval_cf(cf);
        EXPECT_EQ(Rational(t.back()[0], t.back()[1]), x) << cf.str();
        EXPECT_EQ(t.back()[2], 0);
        const std::size_t m = cf.length();
        for (std::size_t j = m; j >= 1; --j) {
            const IntVector& v = t[m - j + 1];
            const std::vector<Integer> tail(cf.terms().begin() + static_cast<long>(j - 1), cf.terms().end());
            const Rational r = oracle::eval(tail);
            // odd j: x/y = tail, even j: y/x = tail
            const Rational got = j % 2 == 1 ? Rational(v[0], v[1]) : Rational(v[1], v[0]);
            EXPECT_EQ(got, r) << cf.str() << " j=" << j;
        }
    }
}

TEST(ComposeSlopes, StackedPair)
{
    const auto s = compose_slopes({ContinuedFraction{10}, ContinuedFraction{0}});
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0], (FillingSlope{1, 1, 0, 10}));
    EXPECT_EQ(s[1], (FillingSlope{2, 1, 0, -10}));
}

TEST(ComposeSlopes, RepeatedSix)
{
    const auto s = compose_slopes({ContinuedFraction{6, 6, 6, 6, 6, 6}, ContinuedFraction{0}});
    std::set<std::size_t> inner;
    std::size_t outer = 0;
    for (const auto& f : s) {
        EXPECT_EQ(abs_int(f.ell), 6);
        if (f.outermost())
            ++outer;
        else
            inner.insert(f.index);
    }
    EXPECT_EQ(outer, 2u);
    EXPECT_EQ(inner.size(), 5u);
    EXPECT_EQ(s.size(), 2u + 2u * 5u);
    EXPECT_EQ(s[0].ell, 6);
    EXPECT_EQ(s.back().ell, -6);
}

TEST(ComposeSlopes, CountMatchesFillingRods)
{
    std::mt19937_64 rng(8);
    for (int i = 0; i < 300; ++i) {
        std::vector<ContinuedFraction> cfs;
        std::size_t merges = 0, sum_m = 0;
        const int families = 2 + static_cast<int>(rng() % 4);
        for (int f = 0; f < families; ++f) {
            auto cf = oracle::random_cf(rng, 5, 7);
            sum_m += cf.length();
            merges += cf.empty() ? 0 : 1;
            cfs.push_back(cf);
        }
        EXPECT_EQ(compose_slopes(cfs).size(), 2 * sum_m - merges);
    }
}

TEST(ComposeSlopes, SkipsEmptyFamilies)
{
    const auto s = compose_slopes({ContinuedFraction{}, ContinuedFraction{0}});
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].family, 2u);
    EXPECT_EQ(s[0].ell, 0);
}

TEST(SlopeLength, Values)
{
    EXPECT_NEAR(slope_length(6), std::sqrt(40.0), 1e-12);
    EXPECT_GT(slope_length(6), 2 * std::numbers::pi);
    EXPECT_LT(slope_length(5), 2 * std::numbers::pi);
    EXPECT_DOUBLE_EQ(slope_length(0), 2.0);
    EXPECT_DOUBLE_EQ(slope_length(-7), slope_length(7));
    for (long long l = 0; l < 200; ++l)
        EXPECT_LT(slope_length(l), slope_length(l + 1));
}

TEST(TwoPiCheck, Gate)
{
    const auto six = compose_slopes({ContinuedFraction{6, 6, 6, 6, 6, 6}, ContinuedFraction{0}});
    EXPECT_TRUE(two_pi_check(six).exceeds);
    const auto five = compose_slopes({ContinuedFraction{5, 6}, ContinuedFraction{0}});
    const auto r = two_pi_check(five);
    EXPECT_FALSE(r.exceeds);
    EXPECT_NEAR(r.min_length, std::sqrt(29.0), 1e-12);
    EXPECT_THROW(two_pi_check(compose_slopes({ContinuedFraction{0}, ContinuedFraction{0, 2}})), Error);
}

TEST(ParentManifold, TwoFamilyStack)
{
    for (long long n = 1; n <= 10; ++n) {
        const auto pm = parent_manifold(make_stacked({{n, 1}, {0, 1}}), {ContinuedFraction{n}, ContinuedFraction{0}});
        EXPECT_EQ(pm.octahedron_count, 4u);
        EXPECT_EQ(pm.volume_units, 4);
        EXPECT_EQ(pm.E, 0u);
        EXPECT_EQ(pm.O, 2u);
        EXPECT_TRUE(pm.alternating);
    }
}

TEST(ParentManifold, SevenFold)
{
    const ContinuedFraction cf = repeated_cf(7);
    const Rational x = eval_cf(cf);
    const auto pm = parent_manifold(make_stacked({PrimitiveVector(IntVector{x.num(), x.den()}), {0, 1}}),
                                    {cf, ContinuedFraction{0}});
    EXPECT_EQ(pm.sum_m, 8u);
    EXPECT_EQ(pm.octahedron_count, 16u);
    EXPECT_EQ(pm.filling_rod_count, 16u);
    EXPECT_EQ(pm.O, 2u);
}

TEST(ParentManifold, EmptyFamilyIsFlagged)
{
    const auto pm = parent_manifold(make_stacked({{1, 0}, {0, 1}}), {ContinuedFraction{}, ContinuedFraction{0}});
    EXPECT_EQ(pm.sum_m, 1u);
    EXPECT_EQ(pm.octahedron_count, 2u);
    EXPECT_FALSE(pm.alternating);
    EXPECT_EQ(pm.E + pm.O, 2u);
}

TEST(ParentManifold, Errors)
{
    auto code = [](auto f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Invariant;
    };
    const StackedConfig s = make_stacked({{3, 1}, {0, 1}});
    EXPECT_EQ(code([&] { parent_manifold(s, {ContinuedFraction{3}}); }), ErrorCode::Mismatch);
    EXPECT_EQ(code([&] { parent_manifold(s, {ContinuedFraction{4}, ContinuedFraction{0}}); }), ErrorCode::Mismatch);
    StackedConfig two = s;
    two.vertical.push_back(VerticalRod{Rational(1, 4), Rational(1, 4)});
    EXPECT_EQ(code([&] { parent_manifold(two, {ContinuedFraction{3}, ContinuedFraction{0}}); }),
              ErrorCode::Precondition);
    const StackedConfig tor = make_stacked({{1, 0}, {1, 0}, {0, 1}});
    EXPECT_EQ(code([&] { parent_manifold(tor, {ContinuedFraction{}, ContinuedFraction{}, ContinuedFraction{0}}); }),
              ErrorCode::NotHyperbolic);
}
