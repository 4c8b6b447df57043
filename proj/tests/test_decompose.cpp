#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "egzlab/decompose.hpp"
#include "egzlab/rng.hpp"
#include "oracles.hpp"

using namespace egz;

namespace {

PointSet set_of(const Modulus& m, std::vector<std::int64_t> idx) {
    return PointSet(m, std::move(idx));
}

// 8 points of F_5^2 on the two axes; zero-sum free over 5 distinct elements,
// yet rich in cycles of repeated-element patterns.
PointSet axes_set() {
    Modulus m(5, 2);
    // (1,0),(2,0),(3,0),(4,0) and (0,1),(0,2),(0,3),(0,4) as indices x + 5 y
    return set_of(m, {1, 2, 3, 4, 5, 10, 15, 20});
}

}  // namespace

TEST_CASE("distinct zero-sum detection agrees with subset enumeration") {
    SplitMix64 rng(0xD15C0);
    for (int trial = 0; trial < 30; ++trial) {
        Modulus m = trial % 2 == 0 ? Modulus(5, 1) : Modulus(5, 2);
        const std::size_t size = rng.below(9);
        std::vector<std::int64_t> idx;
        for (std::size_t i = 0; i < size; ++i)
            idx.push_back(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m.size()))));
        PointSet a(m, idx);
        const auto found = find_p_distinct_zero_sum(a);
        CHECK(found.has_value() == oracle::naive_has_p_distinct_zero_sum(a));
        CHECK(check_no_p_distinct_zero_sum(a) == !found.has_value());
        if (found) {
            auto entries = found->entries;
            CHECK(is_cycle(m, entries));
            std::sort(entries.begin(), entries.end());
            CHECK(std::adjacent_find(entries.begin(), entries.end()) == entries.end());
            for (auto e : entries) CHECK(a.contains(e));
        }
    }
}

TEST_CASE("pattern list is ordered by decreasing length, reverse-lex inside a length") {
    const auto five = pattern_list(5);
    REQUIRE(five.size() == 7);
    CHECK(five[0] == MultiplicityPattern({1, 1, 1, 1, 1}));
    CHECK(five[1] == MultiplicityPattern({2, 1, 1, 1}));
    CHECK(five[2] == MultiplicityPattern({3, 1, 1}));
    CHECK(five[3] == MultiplicityPattern({2, 2, 1}));
    CHECK(five[4] == MultiplicityPattern({4, 1}));
    CHECK(five[5] == MultiplicityPattern({3, 2}));
    CHECK(five[6] == MultiplicityPattern({5}));

    const auto seven = pattern_list(7);
    CHECK(seven.size() == 15);
    CHECK(seven.front() == MultiplicityPattern({1, 1, 1, 1, 1, 1, 1}));
    CHECK(seven.back() == MultiplicityPattern({7}));
    for (const auto& pat : seven) CHECK(pat.sum() == 7);
    for (std::size_t i = 1; i < seven.size(); ++i)
        CHECK(seven[i - 1].length() >= seven[i].length());

    CHECK_THROWS_AS(pattern_list(4), std::invalid_argument);
}

TEST_CASE("stripping stops at the first pattern carrying L disjoint cycles") {
    Modulus m(5, 1);
    PointSet a = set_of(m, {1, 2, 3, 4});
    const StripOutcome out = strip_patterns(a, 1);
    // no 5 distinct elements and no 4-distinct cycle exist in {1,2,3,4};
    // the first hit is pattern (3,1,1) via 3*1 + 3 + 4 = 10
    CHECK(out.lambda == MultiplicityPattern({3, 1, 1}));
    REQUIRE(out.trace.size() == 3);
    CHECK_FALSE(out.trace[0].stopped);
    CHECK(out.trace[0].deleted.empty());
    CHECK_FALSE(out.trace[1].stopped);
    CHECK(out.trace[1].deleted.empty());
    CHECK(out.trace[2].stopped);
    CHECK(out.m.size() == 1);
    CHECK(out.m.cycles[0].entries == std::vector<std::int64_t>{1, 1, 1, 3, 4});
    CHECK(out.a_prime == a);
}

TEST_CASE("stripping rejects inputs with p distinct elements summing to zero") {
    Modulus m(5, 1);
    CHECK_THROWS_AS(strip_patterns(set_of(m, {0, 1, 2, 3, 4}), 1), std::invalid_argument);
    CHECK_THROWS_AS(strip_patterns(set_of(m, {1, 2, 3, 4}), 0), std::invalid_argument);
}

TEST_CASE("stripping reports exhaustion for unreachable targets") {
    Modulus m(5, 1);
    PointSet a = set_of(m, {1});
    try {
        strip_patterns(a, 5);
        FAIL("expected StripExhausted");
    } catch (const StripExhausted& e) {
        CHECK(e.trace.size() == 7);  // every pattern tried
        for (const auto& step : e.trace) CHECK_FALSE(step.stopped);
        // only the final pattern (5) had a cycle to delete
        CHECK(e.trace[6].pattern == MultiplicityPattern({5}));
        CHECK(e.trace[6].deleted == std::vector<std::int64_t>{1});
    }
}

TEST_CASE("color classes from a collection") {
    Modulus m(5, 1);
    const Cycle c(m, {1, 1, 1, 3, 4});
    const CycleCollection coll(m, {c});
    const ColorClasses classes = build_color_classes(coll, MultiplicityPattern({3, 1, 1}));
    REQUIRE(classes.sets.size() == 5);
    CHECK(classes.sets[0].indices() == std::vector<std::int64_t>{1});
    CHECK(classes.sets[2].indices() == std::vector<std::int64_t>{1});
    CHECK(classes.sets[3].indices() == std::vector<std::int64_t>{3});
    CHECK(classes.sets[4].indices() == std::vector<std::int64_t>{4});

    // lambda_1 = 1 admits no repeated first block
    CHECK_THROWS_AS(build_color_classes(coll, MultiplicityPattern({1, 1, 1, 1, 1})),
                    std::invalid_argument);
    // wrong pattern for the cycle
    CHECK_THROWS_AS(build_color_classes(coll, MultiplicityPattern({2, 2, 1})),
                    std::invalid_argument);
    // cycle out of canonical block order
    const Cycle disordered(m, {3, 1, 1, 1, 4});
    CHECK_THROWS_AS(build_color_classes(CycleCollection(m, {disordered}),
                                        MultiplicityPattern({3, 1, 1})),
                    std::invalid_argument);
}

TEST_CASE("hypothesis verification distinguishes clean and dirty class systems") {
    Modulus m(5, 1);
    const CycleCollection coll(m, {Cycle(m, {1, 1, 1, 3, 4})});
    const ColorClasses clean = build_color_classes(coll, MultiplicityPattern({3, 1, 1}));
    const HypothesisCheck ok = verify_hypothesis(clean);
    CHECK(ok.ok);
    CHECK_FALSE(ok.witness.has_value());

    std::vector<PointSet> dirty = {set_of(m, {1, 2}), set_of(m, {1, 2}), set_of(m, {0}),
                                   set_of(m, {0}), set_of(m, {2})};
    const HypothesisCheck bad = verify_hypothesis(ColorClasses(m, dirty));
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.witness->entries[0] != bad.witness->entries[1]);
}

TEST_CASE("pipeline produces a fully-flagged certificate that certifies") {
    Modulus m(5, 1);
    PointSet a = set_of(m, {1, 2, 3, 4});
    const Certificate cert = run_theorem_pipeline(a);
    CHECK(cert.valid);
    CHECK(cert.flags.all());
    CHECK(cert.schema == 1);
    CHECK(cert.l_value == 1);  // ceil(4 / 35)
    CHECK_FALSE(cert.l_overridden);
    CHECK(cert.lambda == MultiplicityPattern({3, 1, 1}));
    CHECK(cert.m_cycles.size() == 1);
    CHECK(cert.mprime_cycles.size() == 1);
    CHECK(cert.extendable_counts.size() == 3);  // j = 3, 4, 5
    CHECK(cert.gamma_value == doctest::Approx(3.3711863303).epsilon(1e-9));

    const CertifyReport report = certify(cert);
    CHECK(report.valid);
    CHECK(report.first_failure.empty());
    CHECK(report.flags.all());
}

TEST_CASE("pipeline handles the larger axes example with an explicit L") {
    PointSet a = axes_set();
    PipelineOptions opts;
    opts.l_override = 2;
    const Certificate cert = run_theorem_pipeline(a, opts);
    CHECK(cert.valid);
    CHECK(cert.l_overridden);
    CHECK(cert.l_value == 2);
    CHECK(cert.m_cycles.size() == 2);
    CHECK(certify(cert).valid);
}

TEST_CASE("pipeline rejects bad inputs") {
    Modulus m(5, 1);
    CHECK_THROWS_AS(run_theorem_pipeline(set_of(m, {0, 1, 2, 3, 4})), std::invalid_argument);
    CHECK_THROWS_AS(run_theorem_pipeline(set_of(m, {})), std::invalid_argument);
    Modulus m3(3, 1);
    CHECK_THROWS_AS(run_theorem_pipeline(set_of(m3, {1})), std::invalid_argument);
}

TEST_CASE("certify pinpoints corrupted certificate fields") {
    Modulus m(5, 1);
    const Certificate good = run_theorem_pipeline(set_of(m, {1, 2, 3, 4}));

    Certificate wrong_l = good;
    wrong_l.l_value = 2;
    CHECK(certify(wrong_l).first_failure == "l-value");

    Certificate dropped = good;
    dropped.m_cycles.clear();
    CHECK(certify(dropped).first_failure == "collection-size");

    Certificate skewed = good;
    skewed.gamma_value *= 1.01;
    CHECK(certify(skewed).first_failure == "numeric-consistency");

    Certificate miscounted = good;
    miscounted.extendable_counts[0] += 1;
    CHECK(certify(miscounted).first_failure == "pair-sums");

    Certificate padded = good;
    padded.a_prime.push_back(0);  // 0 is not in the input set
    CHECK(certify(padded).first_failure == "a-prime");

    Certificate hollowed = good;
    hollowed.mprime_cycles.clear();
    CHECK(certify(hollowed).first_failure == "floor");

    Certificate relabeled = good;
    relabeled.schema = 2;
    CHECK(certify(relabeled).first_failure == "schema");

    Certificate broken_cycle = good;
    broken_cycle.m_cycles[0][0] = broken_cycle.m_cycles[0][0] == 0 ? 1 : 0;
    const auto broken_report = certify(broken_cycle);
    CHECK_FALSE(broken_report.valid);  // no longer a zero-sum tuple: shape failure
}
