#pragma once

#include <cstdint>

namespace pexgaf {

/// Weight exponent beta of e^{-|z|^beta} together with the constants derived from it.
///
/// `c_beta` is the Stirling constant 2^{2/beta} beta^{1/2-2/beta}; the forbidden
/// annulus of the conditional zero process is (hole_inner, hole_outer) = (1, e^{1/beta}).
struct WeightModel {
    double beta = 2.0;
    double c_beta = 0.0;
    double hole_inner = 1.0;
    double hole_outer = 0.0;

    /// Throws ParameterError unless beta is finite and positive.
    static WeightModel make(double beta);
};

/// Truncation data for the polynomial part P_N of F_beta on the disk of radius r.
struct TruncationPlan {
    double r = 0.0;
    double alpha = 0.0;
    std::int64_t n_trunc = 0;  // N = round(beta alpha r^beta / 2), at least 1
    double s = 0.0;
    double gamma = 0.0;        // r^{-s}
    double t = 0.0;            // equal to gamma
    double big_b = 1.0;        // support radius multiplier B
    double m0 = 0.0;           // B^{2 beta} r^{2 beta}
    double k0_shift = 0.0;     // 2 m0 gamma
    double l_scale = 0.0;      // (r - K_0) / (1 + t)
    bool alpha_out_of_range = false;  // alpha outside [log r, 2 log r]
    // False for desk-scale simulation plans with r <= 1, where K_0 and L carry no
    // meaning; l_scale is then set to r and k0_shift to 0.
    bool scaling_fields_valid = true;
};

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// -1/2 ln Gamma(2(n+1)/beta): log of the coefficient a_n of xi_n in F_beta.
double log_coefficient(std::int64_t n, const WeightModel& model);

/// a_n = 1/sqrt(Gamma(2(n+1)/beta)). Underflows to 0 for large n; use log_coefficient there.
double coefficient(std::int64_t n, const WeightModel& model);

struct StirlingBounds {
    double lower = 0.0;  // ln[C_beta k^{2/beta-1/2} (2k/(beta e))^{2k/beta}]
    double upper = 0.0;  // lower + ln 2
    bool contains(double value) const { return lower <= value && value <= upper; }
};

/// Log-domain two-sided Stirling bracket for Gamma(2(k+1)/beta), k >= 1.
StirlingBounds stirling_bounds(std::int64_t k, const WeightModel& model);

/// Smallest k0 >= 1 such that the Stirling bracket contains ln Gamma(2(k+1)/beta) for
/// every k in [k0, k_max]. Returns k_max + 1 if the bracket fails at k_max.
/// Results are cached per (beta, k_max); the cache is guarded by a mutex.
std::int64_t stirling_threshold(const WeightModel& model, std::int64_t k_max = 100000);

/// Plan following the asymptotic data choice: N = beta alpha r^beta / 2 (rounded half
/// up, minimum 1), gamma = t = r^{-s}, M_0 = B^{2beta} r^{2beta}, K_0 = 2 M_0 gamma,
/// L = (r - K_0)/(1 + t).
///
/// Requires r > 1, alpha > 0, big_b >= 1 and s > 1 + 4 beta (ParameterError otherwise).
/// An alpha outside [log r, 2 log r] only sets `alpha_out_of_range`. Throws
/// ParameterError if K_0 >= r (no positive L exists).
TruncationPlan make_truncation_plan(double r, const WeightModel& model, double alpha,
                                    double big_b, double s);

/// Desk-scale plan for Monte Carlo on D(0, big_b r) with any r > 0.
///
/// N is the smallest degree (at least `min_degree`) for which the neglected kernel mass
/// sum_{k>N} a_k^2 (big_b r)^{2k} is below `rel_tail^2` times the kernel K(big_b r);
/// alpha is then set to 2N/(beta r^beta) so that N = beta alpha r^beta / 2 holds.
TruncationPlan make_simulation_plan(double r, const WeightModel& model, double big_b,
                                    double rel_tail = 1e-16, std::int64_t min_degree = 8);

/// Desk-scale plan with an explicit scale alpha (N = round(beta alpha r^beta / 2)),
/// without the r > 1 and s preconditions.
TruncationPlan make_scaled_plan(double r, const WeightModel& model, double alpha,
                                double big_b);

} // namespace pexgaf
