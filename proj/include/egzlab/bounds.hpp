#pragma once

// Numeric bound constants: the slice-rank minimum
//
//     Gamma_{p,k} = min_{0<t<1} (1 + t + ... + t^{p-1}) / t^{(p-1)/k}
//
// with gamma_p = Gamma_{p,p} and the Ellenberg-Gijswijt constant Gamma_p =
// Gamma_{p,3}, plus the integer counts P(p) (partitions) and B(k) (set
// partitions) and the derived theorem-level bounds.

#include <cstdint>
#include <vector>

namespace egz {

// Minimization report for one (p, k). The grid check re-evaluates the
// objective on a uniform 10^4-point grid and certifies that no grid point
// beats the reported minimum by more than 10*tol in the log domain.
struct BoundReport {
    std::int64_t p = 0;
    int k = 0;
    double t_star = 0.0;
    double gamma_value = 0.0;
    double tolerance = 0.0;
    bool grid_checked = false;
};

// (1 + t + ... + t^{p-1}) / t^{(p-1)/k}; throws if t is outside (0,1).
double objective(std::int64_t p, int k, double t);
double log_objective(std::int64_t p, int k, double t);

// Minimizes the objective over (0,1). Brackets a zero of d/dt log(objective)
// by a sign scan over 64 geometric sample points, then bisects; falls back to
// golden-section on the objective when no sign change shows up.
BoundReport gamma_pk(std::int64_t p, int k, double tol = 1e-12);

// gamma_p of the p-variable slice-rank bound, i.e. Gamma_{p,p}.
double gamma_p(std::int64_t p, double tol = 1e-12);

// Golden-section minimizer on [lo, hi], exposed for reuse and cross-checks.
double golden_section_min(double (*f)(std::int64_t, int, double), std::int64_t p, int k,
                          double lo, double hi, double tol);

std::uint64_t partition_count(int p);
std::uint64_t bell_number(int k);

struct TheoremBound {
    std::int64_t p = 0;
    int n = 0;
    std::int64_t c_p = 0;      // 2 p^2 P(p)
    double main_bound = 0.0;   // C_p (sqrt(gamma_p * p))^n
    double weak_bound = 0.0;   // C_p (2 sqrt(p))^n
    double egz_bound = 0.0;    // (p-1) * main_bound + 1
};

TheoremBound theorem_bounds(std::int64_t p, int n, double tol = 1e-12);

struct ReferenceValues {
    std::int64_t p = 0;
    int n = 0;
    double edel_value = 0.0;        // 96^{n/6}
    double edel_rate = 0.0;         // 96^{1/6}
    double gamma_p3 = 0.0;          // Gamma_{p,3}
    double gamma_p = 0.0;           // Gamma_{p,p}
    double sqrt_gamma_p_times_p = 0.0;
    double ratio = 0.0;             // Gamma_{p,3} / p
    bool sqrt_below_gamma_p3 = false;
    bool ratio_in_range = false;    // 0.84 < ratio < 0.92
};

ReferenceValues reference_values(std::int64_t p, int n, double tol = 1e-12);

}  // namespace egz
