#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "egzlab/bounds.hpp"
#include "oracles.hpp"

using namespace egz;
using doctest::Approx;

namespace {
constexpr double kTight = 1e-9;
}

TEST_CASE("objective evaluates the truncated geometric ratio") {
    // p=3, k=3, t=1/2: (1 + 1/2 + 1/4) / (1/2)^(2/3)
    CHECK(objective(3, 3, 0.5) == Approx(1.75 / std::pow(0.5, 2.0 / 3.0)).epsilon(1e-12));
    CHECK(std::exp(log_objective(5, 5, 0.3)) == Approx(objective(5, 5, 0.3)).epsilon(1e-12));
    CHECK_THROWS_AS(objective(5, 3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(objective(5, 3, 1.0), std::invalid_argument);
}

TEST_CASE("minimizer returns a certified interior minimum") {
    const BoundReport r = gamma_pk(5, 3);
    CHECK(r.p == 5);
    CHECK(r.k == 3);
    CHECK(r.grid_checked);
    CHECK(r.t_star > 0.0);
    CHECK(r.t_star < 1.0);
    // no grid point beats the reported minimum
    for (int i = 1; i < 2000; ++i) {
        const double t = i / 2000.0;
        CHECK(objective(5, 3, t) >= r.gamma_value - 1e-7);
    }
    CHECK_THROWS_AS(gamma_pk(4, 3), std::invalid_argument);   // composite p
    CHECK_THROWS_AS(gamma_pk(5, 2), std::invalid_argument);   // k too small
    CHECK_THROWS_AS(gamma_pk(2, 3), std::invalid_argument);   // p too small
}

TEST_CASE("frozen bound constants") {
    CHECK(gamma_pk(3, 3).gamma_value == Approx(2.7551046130).epsilon(kTight));
    CHECK(gamma_pk(5, 3).gamma_value == Approx(4.4615777657).epsilon(kTight));
    CHECK(gamma_p(5) == Approx(3.3711863303).epsilon(kTight));
    CHECK(gamma_p(7) == Approx(3.5856823235).epsilon(kTight));
    // the p-variable constant stays below 4
    for (std::int64_t p : {3, 5, 7, 11, 13, 89, 97}) CHECK(gamma_p(p) < 4.0);
    // and the two definitions of gamma_p agree
    for (std::int64_t p : {3, 5, 7, 11})
        CHECK(gamma_p(p) == Approx(gamma_pk(p, static_cast<int>(p)).gamma_value).epsilon(1e-12));
}

TEST_CASE("golden-section minimizer agrees with the bracketed result") {
    const double direct = golden_section_min(&objective, 5, 3, 1e-6, 1.0 - 1e-6, 1e-10);
    CHECK(objective(5, 3, direct) == Approx(gamma_pk(5, 3).gamma_value).epsilon(1e-8));
}

TEST_CASE("partition counts match exhaustive enumeration") {
    for (int t = 1; t <= 12; ++t)
        CHECK(partition_count(t) == oracle::enumerate_partitions(t).size());
    CHECK(partition_count(5) == 7);
    CHECK(partition_count(7) == 15);
    CHECK(partition_count(97) == 133230930);
    CHECK_THROWS_AS(partition_count(0), std::invalid_argument);
}

TEST_CASE("bell numbers match exhaustive enumeration") {
    for (int k = 1; k <= 12; ++k) CHECK(bell_number(k) == oracle::count_set_partitions(k));
    CHECK(bell_number(3) == 5);
    CHECK(bell_number(5) == 52);
    CHECK(bell_number(25) == 4638590332229999353ULL);
    CHECK_THROWS_AS(bell_number(26), std::overflow_error);
}

TEST_CASE("theorem-level bounds") {
    const TheoremBound b = theorem_bounds(5, 2);
    CHECK(b.c_p == 350);  // 2 * 25 * 7
    CHECK(b.main_bound ==
          Approx(350.0 * std::pow(std::sqrt(gamma_p(5) * 5.0), 2.0)).epsilon(1e-12));
    CHECK(b.weak_bound == Approx(350.0 * std::pow(2.0 * std::sqrt(5.0), 2.0)).epsilon(1e-12));
    CHECK(b.egz_bound == Approx(4.0 * b.main_bound + 1.0).epsilon(1e-12));
    CHECK(b.main_bound < b.weak_bound);  // sqrt(gamma_p p) < 2 sqrt(p) since gamma_p < 4
    CHECK_THROWS_AS(theorem_bounds(3, 2), std::invalid_argument);  // needs p >= 5
}

TEST_CASE("reference comparison values") {
    const ReferenceValues r = reference_values(5, 6);
    CHECK(r.edel_rate == Approx(2.1398263879).epsilon(kTight));
    CHECK(r.edel_value == Approx(96.0).epsilon(1e-9));  // 96^(6/6)
    CHECK(r.ratio == Approx(r.gamma_p3 / 5.0).epsilon(1e-12));
    CHECK(r.sqrt_gamma_p_times_p == Approx(std::sqrt(r.gamma_p * 5.0)).epsilon(1e-12));
    CHECK(r.ratio_in_range);
    CHECK(r.sqrt_below_gamma_p3);
}
