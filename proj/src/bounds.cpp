#include "egzlab/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "egzlab/fp.hpp"

namespace egz {

namespace {

void check_pk(std::int64_t p, int k) {
    if (p < 3 || !is_prime(p))
        throw std::invalid_argument("bounds: p must be a prime >= 3, got " + std::to_string(p));
    if (k < 3)
        throw std::invalid_argument("bounds: k must be >= 3, got " + std::to_string(k));
}

// log of 1 + t + ... + t^{p-1}, summed lowest power first (terms decay).
double log_power_sum(std::int64_t p, double t) {
    double sum = 0.0, term = 1.0;
    for (std::int64_t i = 0; i < p; ++i) {
        sum += term;
        term *= t;
    }
    return std::log(sum);
}

// d/dt log(objective), multiplied by t > 0 to avoid the 1/t pole:
//   s(t) = (sum i t^i) / (sum t^i) - (p-1)/k.
// The weighted mean rises from 0 to (p-1)/2 as t goes 0 -> 1, so for k >= 3
// there is always a sign change.
double scaled_dlog(std::int64_t p, int k, double t) {
    double num = 0.0, den = 0.0, term = 1.0;
    for (std::int64_t i = 0; i < p; ++i) {
        den += term;
        num += static_cast<double>(i) * term;
        term *= t;
    }
    return num / den - static_cast<double>(p - 1) / static_cast<double>(k);
}

constexpr double kScanLo = 1e-8;
constexpr double kScanHi = 1.0 - 1e-9;
constexpr int kScanPoints = 64;
constexpr int kGridPoints = 10'000;
constexpr int kMaxBisect = 200;

}  // namespace

double log_objective(std::int64_t p, int k, double t) {
    check_pk(p, k);
    if (!(t > 0.0 && t < 1.0))
        throw std::invalid_argument("objective: t must lie in (0,1)");
    const double a = static_cast<double>(p - 1) / static_cast<double>(k);
    return log_power_sum(p, t) - a * std::log(t);
}

double objective(std::int64_t p, int k, double t) {
    return std::exp(log_objective(p, k, t));
}

double golden_section_min(double (*f)(std::int64_t, int, double), std::int64_t p, int k,
                          double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(p, k, c), fd = f(p, k, d);
    for (int i = 0; i < 400 && (b - a) > tol * std::max(1.0, std::abs(a)); ++i) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(p, k, c);
        } else {
            a = c; c = d; fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(p, k, d);
        }
    }
    return (a + b) / 2.0;
}

BoundReport gamma_pk(std::int64_t p, int k, double tol) {
    check_pk(p, k);
    if (!(tol > 0.0))
        throw std::invalid_argument("gamma_pk: tol must be positive");

    // Sign scan over geometric sample points.
    double t_star = -1.0;
    const double ratio = std::pow(kScanHi / kScanLo, 1.0 / (kScanPoints - 1));
    double prev_t = kScanLo;
    double prev_s = scaled_dlog(p, k, prev_t);
    for (int j = 1; j < kScanPoints && t_star < 0.0; ++j) {
        const double t = kScanLo * std::pow(ratio, j);
        const double s = scaled_dlog(p, k, t);
        if (prev_s <= 0.0 && s >= 0.0) {
            // Bisection on the derivative sign.
            double a = prev_t, b = t;
            for (int it = 0; it < kMaxBisect && (b - a) > 1e-16 * std::max(1.0, a); ++it) {
                const double mid = 0.5 * (a + b);
                if (scaled_dlog(p, k, mid) <= 0.0)
                    a = mid;
                else
                    b = mid;
            }
            t_star = 0.5 * (a + b);
            // Curvature-based residual: if the bracket still moves the
            // log-objective by more than tol, the tolerance is unattainable.
            const double resid = std::abs(log_objective(p, k, a) -
                                          2.0 * log_objective(p, k, t_star) +
                                          log_objective(p, k, b));
            if (resid > tol)
                throw std::runtime_error("gamma_pk: did not converge; tolerance too tight");
        }
        prev_t = t;
        prev_s = s;
    }
    if (t_star < 0.0)
        t_star = golden_section_min(&log_objective, p, k, kScanLo, kScanHi, tol);

    double best_log = log_objective(p, k, t_star);

    // Certify against a uniform grid; refine from the best grid point if the
    // grid ever wins (it should not, the stationary point is unique).
    for (int pass = 0; pass < 2; ++pass) {
        double grid_best_log = best_log, grid_best_t = t_star;
        for (int i = 1; i <= kGridPoints; ++i) {
            const double t = static_cast<double>(i) / (kGridPoints + 1);
            const double v = log_objective(p, k, t);
            if (v < grid_best_log) {
                grid_best_log = v;
                grid_best_t = t;
            }
        }
        if (grid_best_log >= best_log - 10.0 * tol)
            break;
        if (pass == 1)
            throw std::runtime_error("gamma_pk: grid check failed after refinement");
        const double step = 1.0 / (kGridPoints + 1);
        t_star = golden_section_min(&log_objective, p, k,
                                    std::max(kScanLo, grid_best_t - step),
                                    std::min(kScanHi, grid_best_t + step), tol);
        best_log = log_objective(p, k, t_star);
    }

    BoundReport r;
    r.p = p;
    r.k = k;
    r.t_star = t_star;
    r.gamma_value = std::exp(best_log);
    r.tolerance = tol;
    r.grid_checked = true;
    return r;
}

double gamma_p(std::int64_t p, double tol) {
    return gamma_pk(p, static_cast<int>(p), tol).gamma_value;
}

std::uint64_t partition_count(int p) {
    if (p < 1)
        throw std::invalid_argument("partition_count: argument must be >= 1");
    // Classic DP over largest part.
    std::vector<std::uint64_t> dp(static_cast<std::size_t>(p) + 1, 0);
    dp[0] = 1;
    for (int part = 1; part <= p; ++part)
        for (int s = part; s <= p; ++s) {
            const std::uint64_t add = dp[static_cast<std::size_t>(s - part)];
            if (dp[static_cast<std::size_t>(s)] > UINT64_MAX - add)
                throw std::overflow_error("partition_count: overflow");
            dp[static_cast<std::size_t>(s)] += add;
        }
    return dp[static_cast<std::size_t>(p)];
}

std::uint64_t bell_number(int k) {
    if (k < 1)
        throw std::invalid_argument("bell_number: argument must be >= 1");
    if (k > 25)
        throw std::overflow_error("bell_number: B(k) exceeds 64 bits for k > 25");
    // Bell triangle; after the i-th expansion the row ends in B(i+1).
    std::vector<std::uint64_t> row{1};
    for (int i = 1; i < k; ++i) {
        std::vector<std::uint64_t> next;
        next.reserve(row.size() + 1);
        next.push_back(row.back());
        for (auto v : row)
            next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.back();
}

TheoremBound theorem_bounds(std::int64_t p, int n, double tol) {
    if (p < 5 || !is_prime(p))
        throw std::invalid_argument("theorem_bounds: p must be a prime >= 5");
    if (n < 0)
        throw std::invalid_argument("theorem_bounds: n must be >= 0");
    TheoremBound b;
    b.p = p;
    b.n = n;
    const std::uint64_t pp = partition_count(static_cast<int>(p));
    b.c_p = 2 * p * p * static_cast<std::int64_t>(pp);
    const double g = gamma_p(p, tol);
    const double c = static_cast<double>(b.c_p);
    b.main_bound = c * std::pow(std::sqrt(g * static_cast<double>(p)), n);
    b.weak_bound = c * std::pow(2.0 * std::sqrt(static_cast<double>(p)), n);
    b.egz_bound = static_cast<double>(p - 1) * b.main_bound + 1.0;
    return b;
}

ReferenceValues reference_values(std::int64_t p, int n, double tol) {
    if (p < 3 || !is_prime(p))
        throw std::invalid_argument("reference_values: p must be a prime >= 3");
    if (n < 0)
        throw std::invalid_argument("reference_values: n must be >= 0");
    ReferenceValues r;
    r.p = p;
    r.n = n;
    r.edel_rate = std::pow(96.0, 1.0 / 6.0);
    r.edel_value = std::pow(96.0, static_cast<double>(n) / 6.0);
    r.gamma_p3 = gamma_pk(p, 3, tol).gamma_value;
    r.gamma_p = gamma_p(p, tol);
    r.sqrt_gamma_p_times_p = std::sqrt(r.gamma_p * static_cast<double>(p));
    r.ratio = r.gamma_p3 / static_cast<double>(p);
    r.sqrt_below_gamma_p3 = r.sqrt_gamma_p_times_p < r.gamma_p3 - 1e-9;
    r.ratio_in_range = r.ratio > 0.84 + 1e-9 && r.ratio < 0.92 - 1e-9;
    return r;
}

}  // namespace egz
