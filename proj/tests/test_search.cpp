#include <doctest.h>

#include <map>
#include <stdexcept>
#include <vector>

#include "egzlab/decompose.hpp"
#include "egzlab/fp.hpp"
#include "egzlab/rng.hpp"
#include "egzlab/search.hpp"
#include "oracles.hpp"

using namespace egz;

TEST_CASE("cyclic group arithmetic over composite moduli") {
    CyclicGroup z4(4, 1);
    CHECK(z4.size() == 4);
    CHECK(z4.add(3, 2) == 1);
    CHECK(z4.scale(-1, 1) == 3);
    CHECK(z4.element_order(0) == 1);
    CHECK(z4.element_order(1) == 4);
    CHECK(z4.element_order(2) == 2);

    CyclicGroup z6(6, 1);
    CHECK(z6.element_order(4) == 3);
    CHECK(z6.element_order(3) == 2);

    CyclicGroup z62(6, 2);  // indices little-endian: (a, b) -> a + 6b
    CHECK(z62.size() == 36);
    CHECK(z62.add(1 + 6 * 5, 5 + 6 * 1) == 0);  // (1,5)+(5,1) = (0,0)
    CHECK(z62.element_order(2 + 6 * 3) == 6);   // lcm(3, 2)

    CHECK_THROWS_AS(CyclicGroup(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(CyclicGroup(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(CyclicGroup(2, 41), std::invalid_argument);  // 2^41 > cap
}

TEST_CASE("zero-sum subsequence detector agrees with brute force") {
    CyclicGroup z5(5, 1);
    // 4 copies of 1: no subsequence of length <= 4 sums to 0 mod 5
    CHECK_FALSE(has_zero_sum_subsequence(z5, {{1, 4}}, 4));
    CHECK(has_zero_sum_subsequence(z5, {{1, 5}}, 5));
    CHECK(has_zero_sum_subsequence(z5, {{2, 1}, {3, 1}}, 2));
    // 2 + 3 = 0 needs length 2; at length 1 nothing vanishes
    CHECK_FALSE(has_zero_sum_subsequence(z5, {{2, 1}, {3, 1}}, 1));

    SplitMix64 rng(0xBEEF5);
    for (int trial = 0; trial < 40; ++trial) {
        const std::int64_t m = 2 + static_cast<std::int64_t>(rng.below(4));  // 2..5
        const int n = 1 + static_cast<int>(rng.below(2));
        CyclicGroup g(m, n);
        std::map<std::int64_t, int> counts;
        const int total = 1 + static_cast<int>(rng.below(6));
        for (int i = 0; i < total; ++i)
            ++counts[static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(g.size())))];
        Multiset seq(counts.begin(), counts.end());
        for (int len = 1; len <= total; ++len) {
            CHECK(has_zero_sum_subsequence(g, seq, len) ==
                  oracle::naive_zero_sum_subsequence(g, seq, len));
        }
    }

    CHECK_THROWS_AS(has_zero_sum_subsequence(z5, {{5, 1}}, 1), std::invalid_argument);
    CHECK_THROWS_AS(has_zero_sum_subsequence(z5, {{1, -1}}, 1), std::invalid_argument);
    CHECK_THROWS_AS(has_zero_sum_subsequence(z5, {{1, 2}}, 0), std::invalid_argument);
}

namespace {

void check_egz_witness(const CyclicGroup& g, const SearchResult& r) {
    std::int64_t total = 0;
    for (auto [elem, count] : r.witness_multiset) {
        CHECK(count >= 1);
        total += count;
    }
    CHECK(total == r.value - 1);
    // length-m zero-sum subsequences must genuinely be absent
    CHECK_FALSE(oracle::naive_zero_sum_subsequence(
        g, r.witness_multiset, static_cast<int>(g.m())));
}

}  // namespace

TEST_CASE("sequence constants for small groups") {
    struct Row {
        std::int64_t m;
        int n;
        std::int64_t value;
    };
    // 2m-1 in rank 1, 4m-3 in rank 2, 2^n+1 for m = 2
    const std::vector<Row> table = {{2, 1, 3}, {3, 1, 5}, {4, 1, 7}, {5, 1, 9},
                                    {2, 2, 5}, {3, 2, 9}, {2, 3, 9}};
    for (const auto& row : table) {
        CyclicGroup g(row.m, row.n);
        const SearchResult r = egz_constant(row.m, row.n);
        CHECK(r.value == row.value);
        CHECK(r.exhaustive);
        CHECK(r.nodes_expanded > 0);
        check_egz_witness(g, r);
    }
}

TEST_CASE("search reports truncation under a tiny budget") {
    const SearchResult r = egz_constant(5, 2, 50);
    CHECK_FALSE(r.exhaustive);
    CHECK(r.nodes_expanded <= 51);  // the node that trips the budget is counted
}

namespace {

void check_maxset_witness(std::int64_t p, int n, const SearchResult& r) {
    Modulus m(p, n);
    CHECK(r.witness_set.size() == static_cast<std::size_t>(r.value));
    PointSet a(m, r.witness_set);
    CHECK(a.size() == r.witness_set.size());  // no duplicates slipped in
    CHECK_FALSE(oracle::naive_has_p_distinct_zero_sum(a));
}

}  // namespace

TEST_CASE("largest sets without p distinct elements summing to zero") {
    struct Row {
        std::int64_t p;
        int n;
        std::int64_t value;
    };
    const std::vector<Row> table = {{3, 1, 2}, {3, 2, 4}, {5, 1, 4}};
    for (const auto& row : table) {
        const SearchResult r = max_distinct_zero_sum_free(row.p, row.n);
        CHECK(r.value == row.value);
        CHECK(r.exhaustive);
        check_maxset_witness(row.p, row.n, r);

        MaxSetOptions opt;
        opt.translation_symmetry = true;
        const SearchResult s = max_distinct_zero_sum_free(row.p, row.n, opt);
        CHECK(s.value == row.value);
        CHECK(s.exhaustive);
        check_maxset_witness(row.p, row.n, s);
    }

    CHECK_THROWS_AS(max_distinct_zero_sum_free(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(max_distinct_zero_sum_free(2, 1), std::invalid_argument);
}

TEST_CASE("the rank-2 p = 5 maximum is eight") {
    // Settles the open parameter choice: exhaustive search over F_5^2.
    MaxSetOptions opt;
    opt.translation_symmetry = true;
    const SearchResult r = max_distinct_zero_sum_free(5, 2, opt);
    CHECK(r.value == 8);
    CHECK(r.exhaustive);
    check_maxset_witness(5, 2, r);
}

TEST_CASE("maxset search reports truncation under a tiny budget") {
    MaxSetOptions opt;
    opt.budget = 20;
    const SearchResult r = max_distinct_zero_sum_free(5, 2, opt);
    CHECK_FALSE(r.exhaustive);
}
