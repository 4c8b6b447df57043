#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "egzlab/cycles.hpp"
#include "egzlab/rng.hpp"
#include "oracles.hpp"

using namespace egz;

namespace {

PointSet random_subset(const Modulus& m, std::size_t count, SplitMix64& rng) {
    std::set<std::int64_t> picked;
    while (picked.size() < count)
        picked.insert(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m.size()))));
    return PointSet(m, std::vector<std::int64_t>(picked.begin(), picked.end()));
}

std::vector<std::vector<std::int64_t>> entry_lists(const CycleEnumeration& e) {
    std::vector<std::vector<std::int64_t>> out;
    for (const auto& c : e.cycles) out.push_back(c.entries);
    return out;
}

}  // namespace

TEST_CASE("multiplicity patterns validate and round-trip as text") {
    MultiplicityPattern p({3, 2, 2, 1});
    CHECK(p.length() == 4);
    CHECK(p.sum() == 8);
    CHECK(p.to_string() == "3,2,2,1");
    CHECK(MultiplicityPattern::parse("3,2,2,1") == p);
    CHECK_THROWS_AS(MultiplicityPattern(std::vector<int>{}), std::invalid_argument);
    CHECK_THROWS_AS(MultiplicityPattern(std::vector<int>{1, 2}),
                    std::invalid_argument);  // increasing
    CHECK_THROWS_AS(MultiplicityPattern(std::vector<int>{2, 0}),
                    std::invalid_argument);  // zero part
    CHECK_THROWS_AS(MultiplicityPattern::parse("2,,1"), std::invalid_argument);
    CHECK_THROWS_AS(MultiplicityPattern::parse(""), std::invalid_argument);
}

TEST_CASE("cycles are zero-sum p-tuples") {
    Modulus m(5, 1);
    CHECK_NOTHROW(Cycle(m, {1, 1, 2, 2, 4}));                        // sums to 10 = 0
    CHECK_THROWS_AS(Cycle(m, {1, 1, 2, 2, 3}), std::invalid_argument);  // sums to 9
    CHECK_THROWS_AS(Cycle(m, {1, 4, 0, 0}), std::invalid_argument);     // arity 4
    CHECK_THROWS_AS(Cycle(m, {1, 1, 2, 2, 5}), std::invalid_argument);  // out of range
    CHECK(is_cycle(m, std::vector<std::int64_t>{0, 1, 2, 3, 4}));
    CHECK_FALSE(is_cycle(m, std::vector<std::int64_t>{0, 1, 2, 3, 3}));

    Cycle c(m, {2, 1, 2, 4, 1});
    CHECK(c.support() == std::vector<std::int64_t>{1, 2, 4});
    CHECK(c.entry(3) == VectorFp::from_index(m, 4));
    CHECK(multiplicity_pattern(c) == MultiplicityPattern({2, 2, 1}));
}

TEST_CASE("canonical block order sorts by multiplicity then element index") {
    Modulus m(5, 1);
    Cycle c(m, {2, 1, 2, 4, 1});
    auto [ordered, blocks] = canonical_block_order(c);
    CHECK(ordered.entries == std::vector<std::int64_t>{1, 1, 2, 2, 4});
    CHECK(blocks.pattern == MultiplicityPattern({2, 2, 1}));
    REQUIRE(blocks.blocks.size() == 3);
    CHECK(blocks.blocks[0] == std::pair<int, int>{0, 2});
    CHECK(blocks.blocks[1] == std::pair<int, int>{2, 4});
    CHECK(blocks.blocks[2] == std::pair<int, int>{4, 5});
    // dominant block first even when its element index is larger
    Cycle d(m, {3, 4, 4, 4, 0});  // 3+12 = 15 = 0
    auto [ordered2, blocks2] = canonical_block_order(d);
    CHECK(ordered2.entries == std::vector<std::int64_t>{4, 4, 4, 0, 3});
    CHECK(blocks2.pattern == MultiplicityPattern({3, 1, 1}));
}

TEST_CASE("cycle collections must be support-disjoint") {
    Modulus m(5, 1);
    std::vector<Cycle> ok = {Cycle(m, {0, 0, 0, 0, 0}), Cycle(m, {1, 1, 1, 1, 1})};
    CHECK_NOTHROW(CycleCollection(m, ok));
    std::vector<Cycle> overlap = {Cycle(m, {0, 1, 2, 3, 4}), Cycle(m, {1, 1, 1, 1, 1})};
    CHECK_THROWS_AS(CycleCollection(m, overlap), std::invalid_argument);
}

TEST_CASE("enumeration matches the nested-loop oracle") {
    SplitMix64 rng(0xC1C7E5);
    for (int trial = 0; trial < 8; ++trial) {
        Modulus m = trial % 2 == 0 ? Modulus(3, 2) : Modulus(5, 1);
        const std::size_t size = 2 + rng.below(4);
        PointSet a = random_subset(m, size, rng);
        const auto got = enumerate_cycles(a);
        CHECK_FALSE(got.budget_exhausted);
        CHECK(entry_lists(got) == oracle::naive_cycles(a));
    }
}

TEST_CASE("pattern-filtered enumeration matches the oracle") {
    SplitMix64 rng(0xF117E2);
    Modulus m(5, 1);
    const std::vector<MultiplicityPattern> patterns = {
        MultiplicityPattern({1, 1, 1, 1, 1}), MultiplicityPattern({2, 2, 1}),
        MultiplicityPattern({3, 2}), MultiplicityPattern({5})};
    for (int trial = 0; trial < 6; ++trial) {
        PointSet a = random_subset(m, 2 + rng.below(3), rng);
        for (const auto& pat : patterns) {
            const auto got = enumerate_cycles(a, pat);
            CHECK(entry_lists(got) == oracle::naive_cycles(a, pat));
        }
    }
}

TEST_CASE("enumeration emits cycles in lexicographic order with limits as prefixes") {
    Modulus m(5, 1);
    PointSet a(m, std::vector<std::int64_t>{0, 1, 2, 3, 4});
    const auto full = enumerate_cycles(a);
    CHECK(std::is_sorted(full.cycles.begin(), full.cycles.end(),
                         [](const Cycle& x, const Cycle& y) { return x.entries < y.entries; }));
    EnumLimits limits;
    limits.limit = 7;
    const auto capped = enumerate_cycles(a, std::nullopt, limits);
    CHECK(capped.hit_limit);
    CHECK(capped.cycles.size() == 7);
    for (std::size_t i = 0; i < 7; ++i)
        CHECK(capped.cycles[i] == full.cycles[i]);
}

TEST_CASE("exhausted budgets are flagged, not silently truncated") {
    Modulus m(5, 1);
    PointSet a(m, std::vector<std::int64_t>{0, 1, 2, 3, 4});
    EnumLimits limits;
    limits.budget = 10;
    const auto partial = enumerate_cycles(a, std::nullopt, limits);
    CHECK(partial.budget_exhausted);
    CHECK(partial.nodes >= 10);
    CHECK_THROWS_AS(max_disjoint_cycles(a, MultiplicityPattern({1, 1, 1, 1, 1}), 5, 10),
                    BudgetExceeded);
}

TEST_CASE("greedy disjoint collection is maximal when below the cap") {
    Modulus m(5, 1);
    PointSet a(m, std::vector<std::int64_t>{0, 1, 2, 3, 4});
    const MultiplicityPattern distinct({1, 1, 1, 1, 1});
    const CycleCollection got = max_disjoint_cycles(a, distinct, 10);
    CHECK(got.size() == 1);  // one cycle uses all five elements
    CHECK(got.cycles[0].entries == std::vector<std::int64_t>{0, 1, 2, 3, 4});
    // cap stops early
    CHECK(max_disjoint_cycles(a, distinct, 0).size() == 0);
    // pattern with no instances
    PointSet b(m, std::vector<std::int64_t>{1, 2});
    CHECK(max_disjoint_cycles(b, distinct, 10).size() == 0);
    // every element of F_5 spawns a disjoint (x,...,x) cycle since 5x = 0
    const CycleCollection fives = max_disjoint_cycles(a, MultiplicityPattern({5}), 10);
    REQUIRE(fives.size() == 5);
    for (std::int64_t x = 0; x < 5; ++x)
        CHECK(fives.cycles[static_cast<std::size_t>(x)].entries ==
              std::vector<std::int64_t>(5, x));
}

TEST_CASE("color classes validate arity and modulus") {
    Modulus m(5, 1);
    std::vector<PointSet> four(4, PointSet(m, std::vector<std::int64_t>{0}));
    CHECK_THROWS_AS(ColorClasses(m, four), std::invalid_argument);
    std::vector<PointSet> five(5, PointSet(m, std::vector<std::int64_t>{0}));
    CHECK_NOTHROW(ColorClasses(m, five));
}

TEST_CASE("extendable pairs match a direct product scan") {
    Modulus m(5, 1);
    // X_1 = {1,2}, X_2 = {1,2}, X_3 = {0,3}, X_4 = {0,4}, X_5 = {0,2}
    std::vector<PointSet> sets = {
        PointSet(m, std::vector<std::int64_t>{1, 2}), PointSet(m, std::vector<std::int64_t>{1, 2}),
        PointSet(m, std::vector<std::int64_t>{0, 3}), PointSet(m, std::vector<std::int64_t>{0, 4}),
        PointSet(m, std::vector<std::int64_t>{0, 2})};
    ColorClasses classes(m, sets);
    for (int j = 3; j <= 5; ++j) {
        std::set<std::pair<std::int64_t, std::int64_t>> expect;
        for (auto x1 : sets[0].indices())
            for (auto x2 : sets[1].indices())
                for (auto x3 : sets[2].indices())
                    for (auto x4 : sets[3].indices())
                        for (auto x5 : sets[4].indices())
                            if ((x1 + x2 + x3 + x4 + x5) % 5 == 0) {
                                const std::int64_t xs[5] = {x1, x2, x3, x4, x5};
                                expect.emplace(x1, xs[j - 1]);
                            }
        const auto got = extendable_pairs(classes, j);
        CHECK(got == std::vector<std::pair<std::int64_t, std::int64_t>>(expect.begin(),
                                                                        expect.end()));
    }
    CHECK_THROWS_AS(extendable_pairs(classes, 2), std::invalid_argument);
    CHECK_THROWS_AS(extendable_pairs(classes, 6), std::invalid_argument);
}
