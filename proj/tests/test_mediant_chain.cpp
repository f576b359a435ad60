#include <gtest/gtest.h>

#include "farey_approx/mediant_chain.hpp"
#include "oracles.hpp"

#include <random>

using namespace farey_approx;

namespace {

Rational Q(std::int64_t n, std::int64_t d) { return Rational(BigInt(n), BigInt(d)); }

FareyPair pair(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t n) {
    return FareyPair(Q(a, b), Q(c, d), FareyOrder(n));
}

void expect_subdivision_invariants(const Subdivision& s, const Rational& lo, const Rational& hi) {
    ASSERT_GE(s.points.size(), 2u);
    EXPECT_EQ(s.points.front(), lo);
    EXPECT_EQ(s.points.back(), hi);
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        const Rational& p = s.points[i];
        EXPECT_TRUE(p.valid()) << p;
        EXPECT_LE(p.den(), s.denom_bound) << p;
        if (i == 0) continue;
        const Rational& prev = s.points[i - 1];
        EXPECT_LT(prev, p);
        EXPECT_LE(p - prev, s.gap_bound) << prev << " " << p;
        EXPECT_EQ(prev.den() * p.num() - prev.num() * p.den(), 1) << prev << " " << p;
    }
}

}  // namespace

TEST(Chains, Examples) {
    EXPECT_EQ(chain_U(pair(0, 1, 1, 1, 1), 2).terms, (std::vector<Rational>{Q(1, 1), Q(1, 2), Q(1, 3)}));
    EXPECT_EQ(chain_U(pair(1, 3, 1, 2, 3), 2).terms, (std::vector<Rational>{Q(1, 2), Q(2, 5), Q(3, 8)}));
    EXPECT_EQ(chain_U(pair(0, 1, 1, 5, 5), 0).terms, (std::vector<Rational>{Q(1, 5)}));
    EXPECT_EQ(chain_V(pair(0, 1, 1, 1, 1), 2).terms, (std::vector<Rational>{Q(0, 1), Q(1, 2), Q(2, 3)}));
    EXPECT_EQ(chain_V(pair(1, 3, 1, 2, 3), 2).terms, (std::vector<Rational>{Q(1, 3), Q(2, 5), Q(3, 7)}));
    EXPECT_EQ(chain_V(pair(0, 1, 1, 2, 2), 1).terms, (std::vector<Rational>{Q(0, 1), Q(1, 3)}));
    EXPECT_EQ(chain_U(pair(0, 1, 1, 1, 1), 2).side, ChainSide::u_descending);
    EXPECT_EQ(chain_V(pair(0, 1, 1, 1, 1), 2).side, ChainSide::v_ascending);
}

TEST(Gaps, Examples) {
    EXPECT_EQ(gap_U(pair(0, 1, 1, 1, 1), 0), Q(1, 2));
    EXPECT_EQ(gap_U(pair(1, 3, 1, 2, 3), 1), Q(1, 40));
    EXPECT_EQ(tail_V(pair(1, 3, 1, 2, 3), 0), Q(1, 6));
    EXPECT_EQ(gap_V(pair(1, 3, 1, 2, 3), 0), Q(1, 15));
    EXPECT_EQ(tail_U(pair(1, 3, 1, 2, 3), 1), Q(1, 15));
}

TEST(Chains, MonotoneReducedAndInsideInterval) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const FareyPair base = oracle::random_farey_pair(rng, 60);
        const auto u = chain_U(base, 30).terms;
        const auto v = chain_V(base, 30).terms;
        ASSERT_EQ(u.size(), 31u);
        ASSERT_EQ(v.size(), 31u);
        for (std::size_t i = 0; i < u.size(); ++i) {
            EXPECT_TRUE(u[i].valid());
            EXPECT_TRUE(v[i].valid());
            EXPECT_GT(u[i], base.left());
            EXPECT_LE(u[i], base.right());
            EXPECT_GE(v[i], base.left());
            EXPECT_LT(v[i], base.right());
            // literal formula: no reduction ever happens
            EXPECT_EQ(u[i].den(), base.right().den() + static_cast<int>(i) * base.left().den());
            EXPECT_EQ(v[i].den(), base.left().den() + static_cast<int>(i) * base.right().den());
            if (i > 0) {
                EXPECT_LT(u[i], u[i - 1]);
                EXPECT_GT(v[i], v[i - 1]);
            }
        }
    }
}

TEST(Gaps, ClosedFormsMatchSubtraction) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const FareyPair base = oracle::random_farey_pair(rng, 60);
        for (int i = 0; i <= 50; ++i) {
            const BigInt bi = i;
            EXPECT_EQ(gap_U(base, bi), u_term(base, bi) - u_term(base, bi + 1));
            EXPECT_EQ(gap_V(base, bi), v_term(base, bi + 1) - v_term(base, bi));
            EXPECT_EQ(tail_U(base, bi), u_term(base, bi) - base.left());
            EXPECT_EQ(tail_V(base, bi), base.right() - v_term(base, bi));
        }
    }
}

TEST(Subdivide, EndpointsWhenAlreadyFine) {
    auto r = subdivide(pair(0, 1, 1, 1, 1), Rational(1), BigInt(100), 1000);
    ASSERT_TRUE(std::holds_alternative<Subdivision>(r));
    EXPECT_EQ(std::get<Subdivision>(r).points, (std::vector<Rational>{Q(0, 1), Q(1, 1)}));

    // (1/3, 1/2) has gap 1/6, so a bound of 1/5 is already met.
    auto r2 = subdivide(pair(1, 3, 1, 2, 3), Q(1, 5), BigInt(100), 1000);
    ASSERT_TRUE(std::holds_alternative<Subdivision>(r2));
    EXPECT_EQ(std::get<Subdivision>(r2).points, (std::vector<Rational>{Q(1, 3), Q(1, 2)}));
}

TEST(Subdivide, OneMediantStep) {
    auto r = subdivide(pair(1, 3, 1, 2, 3), Q(1, 10), BigInt(100), 1000);
    ASSERT_TRUE(std::holds_alternative<Subdivision>(r));
    EXPECT_EQ(std::get<Subdivision>(r).points, (std::vector<Rational>{Q(1, 3), Q(2, 5), Q(1, 2)}));
}

TEST(Subdivide, GrowsTowardTheSmallerDenominator) {
    // k2 > k1: U chain from the right endpoint down toward 0/1.
    auto r = subdivide(pair(0, 1, 1, 3, 3), Q(1, 12), BigInt(100), 1000);
    ASSERT_TRUE(std::holds_alternative<Subdivision>(r));
    EXPECT_EQ(std::get<Subdivision>(r).points,
              (std::vector<Rational>{Q(0, 1), Q(1, 12), Q(1, 11), Q(1, 10), Q(1, 9), Q(1, 8), Q(1, 7), Q(1, 6),
                                     Q(1, 5), Q(1, 4), Q(1, 3)}));
    // The chain's own first step 1/3 - 1/4 = 1/12 cannot be refined further.
    EXPECT_TRUE(std::holds_alternative<Infeasible>(subdivide(pair(0, 1, 1, 3, 3), Q(1, 20), BigInt(100), 1000)));
    // k1 > k2: V chain from the left endpoint up toward 1/1.
    auto v = subdivide(pair(2, 3, 1, 1, 3), Q(1, 5), BigInt(100), 1000);
    ASSERT_TRUE(std::holds_alternative<Subdivision>(v));
    EXPECT_EQ(std::get<Subdivision>(v).points, (std::vector<Rational>{Q(2, 3), Q(3, 4), Q(4, 5), Q(1, 1)}));
}

TEST(Subdivide, InfeasibleUnderDenominatorBound) {
    auto r = subdivide(pair(0, 1, 1, 7, 7), Q(1, 100), BigInt(10), 1000);
    EXPECT_TRUE(std::holds_alternative<Infeasible>(r));
}

TEST(Subdivide, OverflowAndBadInput) {
    EXPECT_THROW(subdivide(pair(0, 1, 1, 1000, 1000), Q(1, 1000000), BigInt(10000000), 100), OverflowError);
    EXPECT_THROW(subdivide(pair(0, 1, 1, 1, 1), Rational(0), BigInt(10), 100), std::invalid_argument);
}

TEST(Subdivide, RandomInstancesAgreeWithPrefixEnumeration) {
    std::mt19937_64 rng(33);
    std::uniform_int_distribution<std::int64_t> gd(2, 5000);
    std::uniform_int_distribution<std::int64_t> dd(1, 400);
    int feasible = 0;
    int infeasible = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const FareyPair base = oracle::random_farey_pair(rng, 60);
        const Rational gap = Q(1, gd(rng));
        const BigInt bound = base.order().value() + dd(rng);
        const auto r = subdivide(base, gap, bound, 1'000'000);
        const bool oracle_ok = oracle::some_chain_prefix_fits(base, gap, bound);
        if (const auto* s = std::get_if<Subdivision>(&r)) {
            ++feasible;
            EXPECT_TRUE(oracle_ok);
            expect_subdivision_invariants(*s, base.left(), base.right());
        } else {
            ++infeasible;
            EXPECT_FALSE(oracle_ok) << base.left() << " " << base.right() << " gap " << gap << " D " << bound;
        }
    }
    EXPECT_GT(feasible, 50);
    EXPECT_GT(infeasible, 50);
}

TEST(Subdivide, MinimalChainLength) {
    std::mt19937_64 rng(34);
    std::uniform_int_distribution<std::int64_t> gd(2, 3000);
    for (int trial = 0; trial < 200; ++trial) {
        const FareyPair base = oracle::random_farey_pair(rng, 40);
        const Rational gap = Q(1, gd(rng));
        const auto r = subdivide(base, gap, BigInt(1) << 40, 1'000'000);
        ASSERT_TRUE(std::holds_alternative<Subdivision>(r) || std::holds_alternative<Infeasible>(r));
        const auto* s = std::get_if<Subdivision>(&r);
        if (s == nullptr || s->points.size() <= 2) continue;
        // Dropping the outermost chain point must break the gap bound.
        auto shorter = s->points;
        const bool u_side = base.right().den() >= base.left().den();
        shorter.erase(u_side ? shorter.begin() + 1 : shorter.end() - 2);
        EXPECT_FALSE(oracle::prefix_fits(shorter, gap, BigInt(1) << 40));
    }
}

TEST(SubdivideRange, ConcatenatesIntervals) {
    auto r = subdivide_range(Q(0, 1), Q(1, 1), FareyOrder(3), Q(1, 5), BigInt(100), 1000);
    ASSERT_TRUE(std::holds_alternative<Subdivision>(r));
    const auto& s = std::get<Subdivision>(r);
    expect_subdivision_invariants(s, Q(0, 1), Q(1, 1));
    for (const auto& f : oracle::enumerate_farey(3))
        EXPECT_NE(std::find(s.points.begin(), s.points.end(), f), s.points.end()) << f;
    EXPECT_TRUE(std::is_sorted(s.points.begin(), s.points.end()));
    EXPECT_EQ(std::adjacent_find(s.points.begin(), s.points.end()), s.points.end());
}

TEST(SubdivideRange, RandomRanges) {
    std::mt19937_64 rng(35);
    std::uniform_int_distribution<std::int64_t> od(1, 20);
    std::uniform_int_distribution<std::int64_t> gd(2, 200);
    for (int trial = 0; trial < 100; ++trial) {
        const std::int64_t n = od(rng);
        const auto seq = oracle::enumerate_farey(n);
        std::uniform_int_distribution<std::size_t> id(0, seq.size() - 1);
        std::size_t a = id(rng), b = id(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        const Rational gap = Q(1, gd(rng));
        const auto r = subdivide_range(seq[a], seq[b], FareyOrder(n), gap, BigInt(1000), 1'000'000);
        bool all_ok = true;
        for (std::size_t i = a; i < b; ++i)
            all_ok = all_ok && oracle::some_chain_prefix_fits(FareyPair(seq[i], seq[i + 1], FareyOrder(n)), gap,
                                                               BigInt(1000));
        if (const auto* s = std::get_if<Subdivision>(&r)) {
            EXPECT_TRUE(all_ok);
            expect_subdivision_invariants(*s, seq[a], seq[b]);
        } else {
            EXPECT_FALSE(all_ok);
        }
    }
}

TEST(SubdivideRange, RejectsNonMembers) {
    EXPECT_THROW(subdivide_range(Q(1, 7), Q(1, 2), FareyOrder(5), Q(1, 10), BigInt(100), 100),
                 std::invalid_argument);
    EXPECT_THROW(subdivide_range(Q(1, 2), Q(1, 3), FareyOrder(5), Q(1, 10), BigInt(100), 100),
                 std::invalid_argument);
}
