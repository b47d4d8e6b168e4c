#include <gtest/gtest.h>

#include <limits>
#include <set>

#include "distcsp/error.hpp"
#include "distcsp/offset_set.hpp"
#include "generators.hpp"

using namespace distcsp;
using distcsp::testing::Rng;
using distcsp::testing::uniform;

namespace {

std::set<Offset> naive_sum(const std::set<Offset>& a, const std::set<Offset>& b) {
    std::set<Offset> out;
    for (auto x : a)
        for (auto y : b)
            out.insert(x + y);
    return out;
}

std::set<Offset> random_set(Rng& rng) {
    std::set<Offset> s;
    const auto n = uniform(rng, 0, 6);
    for (int i = 0; i < n; ++i)
        s.insert(uniform(rng, -20, 20));
    return s;
}

OffsetSet from(const std::set<Offset>& s) { return OffsetSet(std::vector<Offset>(s.begin(), s.end())); }

} // namespace

TEST(OffsetSet, ConstructionSortsAndDeduplicates) {
    OffsetSet s{3, -1, 3, 0};
    EXPECT_EQ(s.size(), 3u);
    EXPECT_EQ(s.to_string(), "{-1,0,3}");
    EXPECT_EQ(s.min(), -1);
    EXPECT_EQ(s.max(), 3);
    EXPECT_TRUE(s.contains(0));
    EXPECT_FALSE(s.contains(1));
}

TEST(OffsetSet, FullAndEmpty) {
    EXPECT_EQ(OffsetSet::full().to_string(), "FULL");
    EXPECT_EQ(OffsetSet::empty().to_string(), "{}");
    EXPECT_TRUE(OffsetSet::full().contains(123456789));
    EXPECT_TRUE(OffsetSet::empty().is_empty());
    EXPECT_FALSE(OffsetSet::full().is_empty());
    EXPECT_EQ(OffsetSet::range(-2, 1), (OffsetSet{-2, -1, 0, 1}));
}

TEST(OffsetSet, SumsetAlgebra) {
    const auto full = OffsetSet::full();
    const auto empty = OffsetSet::empty();
    const OffsetSet s{-1, 2};
    EXPECT_EQ(offsetset_sum(s, full), full);
    EXPECT_EQ(offsetset_sum(full, full), full);
    EXPECT_EQ(offsetset_sum(empty, full), empty);
    EXPECT_EQ(offsetset_sum(full, empty), empty);
    EXPECT_EQ(offsetset_sum(s, empty), empty);
    EXPECT_EQ(offsetset_sum(s, OffsetSet{0}), s);
    EXPECT_EQ(offsetset_sum(OffsetSet{-1, 1}, OffsetSet{-1, 1}), (OffsetSet{-2, 0, 2}));
}

TEST(OffsetSet, IntersectAndInvert) {
    const OffsetSet s{-3, 0, 4};
    EXPECT_EQ(offsetset_intersect(s, OffsetSet::full()), s);
    EXPECT_EQ(offsetset_intersect(OffsetSet::full(), OffsetSet::full()), OffsetSet::full());
    EXPECT_EQ(offsetset_intersect(s, OffsetSet{0, 1, 4}), (OffsetSet{0, 4}));
    EXPECT_EQ(offsetset_invert(s), (OffsetSet{-4, 0, 3}));
    EXPECT_EQ(offsetset_invert(OffsetSet::full()), OffsetSet::full());
    EXPECT_TRUE(offsetset_subset(OffsetSet{0}, s));
    EXPECT_TRUE(offsetset_subset(s, OffsetSet::full()));
    EXPECT_FALSE(offsetset_subset(OffsetSet::full(), s));
}

TEST(OffsetSet, RandomAgainstNaiveSets) {
    Rng rng(11);
    for (int round = 0; round < 2000; ++round) {
        const auto a = random_set(rng), b = random_set(rng);
        const auto sa = from(a), sb = from(b);
        EXPECT_EQ(offsetset_sum(sa, sb), from(naive_sum(a, b)));
        std::set<Offset> inter;
        for (auto x : a)
            if (b.count(x))
                inter.insert(x);
        EXPECT_EQ(offsetset_intersect(sa, sb), from(inter));
        EXPECT_EQ(offsetset_invert(offsetset_invert(sa)), sa);
        // commutativity and inversion distributing over the sum
        EXPECT_EQ(offsetset_sum(sa, sb), offsetset_sum(sb, sa));
        EXPECT_EQ(offsetset_invert(offsetset_sum(sa, sb)),
                  offsetset_sum(offsetset_invert(sa), offsetset_invert(sb)));
    }
}

TEST(OffsetSet, OverflowIsReported) {
    const auto big = std::numeric_limits<Offset>::max();
    EXPECT_THROW(offsetset_sum(OffsetSet{big}, OffsetSet{1}), OverflowError);
    EXPECT_THROW(offsetset_invert(OffsetSet{std::numeric_limits<Offset>::min()}), OverflowError);
    EXPECT_THROW(OffsetSet::full().min(), DomainError);
}

TEST(OffsetSet, LargeSumsetsAgainstNaiveSets) {
    Rng rng(12);
    for (int round = 0; round < 200; ++round) {
        std::set<Offset> a, b;
        const auto spread = uniform(rng, 40, 4000);
        for (int i = 0; i < uniform(rng, 16, 60); ++i)
            a.insert(uniform(rng, -spread, spread));
        for (int i = 0; i < uniform(rng, 16, 60); ++i)
            b.insert(uniform(rng, -spread, spread));
        EXPECT_EQ(offsetset_sum(from(a), from(b)), from(naive_sum(a, b)));
    }
}
