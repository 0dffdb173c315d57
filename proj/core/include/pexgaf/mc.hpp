#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pexgaf/gaf.hpp"
#include "pexgaf/special.hpp"
#include "pexgaf/zeros.hpp"

namespace pexgaf {

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Wilson score interval for k successes in n trials at normal quantile z.
WilsonInterval wilson_interval(std::int64_t k, std::int64_t n, double z = 1.959963984540054);

struct HoleResults {
    std::int64_t hole_count = 0;
    double p_hat = 0.0;
    WilsonInterval ci95;
    // Zeros divided by r, concatenated in trial order; offsets has one entry per
    // contributing trial plus a final end marker.
    std::vector<cplx> conditional_zeros;
    std::vector<std::int64_t> conditional_offsets;
    std::vector<cplx> unconditional_zeros;
    std::vector<std::int64_t> unconditional_offsets;
    std::vector<double> conditional_zero_radii;    // |z_j| / r
    std::vector<double> unconditional_zero_radii;  // |z_j| / r
    std::int64_t unconditional_trials = 0;
    std::int64_t contour_failures = 0;  // trials whose hole contour could not be certified
    bool starved = false;               // no accepted trials
};

struct HoleExperiment {
    WeightModel model;
    TruncationPlan plan;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    double hole_radius = 0.0;
    double search_multiple = 0.0;  // zero lists cover |z| <= search_multiple * hole_radius
    HoleResults results;
};

/// Default radius multiple for the zero lists: 3, raised for small beta so that the
/// lists reach 1.2 e^{1/beta} r with a 5% margin.
double default_search_multiple(const WeightModel& model);

/// Simulation plan on D(0, search_multiple r).
TruncationPlan make_hole_plan(const WeightModel& model, double r, double search_multiple);

struct HoleOptions {
    unsigned threads = 1;
    double search_multiple = 0.0;  // 0 selects default_search_multiple
    // Number of leading trials whose zeros enter the unconditional lists; negative means all.
    std::int64_t unconditional_trials = -1;
};

/// Rejection estimate of P[n(r) = 0]; trial i uses substream i of `seed`. Results do not
/// depend on the number of threads. The plan must cover D(0, search_multiple r).
HoleExperiment estimate_hole_probability(const WeightModel& model, const TruncationPlan& plan,
                                         double r, std::int64_t trials, std::uint64_t seed,
                                         const HoleOptions& options = {});

struct DepletionStatistic {
    double band_frac_cond = 0.0;
    double band_frac_uncond = 0.0;
    double zscore = 0.0;  // positive for conditional depletion
    std::int64_t band_cond = 0;
    std::int64_t total_cond = 0;
    std::int64_t band_uncond = 0;
    std::int64_t total_uncond = 0;
    bool valid = false;
    std::string flag;  // reason when not valid
};

/// Pooled two-proportion z-score for the fraction of scaled zeros in (1, e^{1/beta}).
/// Requires at least 10 accepted trials and lists reaching 1.2 e^{1/beta}.
DepletionStatistic depletion_statistic(const HoleExperiment& experiment);

/// Same statistic between the unconditional zeros of even and odd trials.
DepletionStatistic split_half_statistic(const HoleExperiment& experiment);

struct DominantResult {
    std::int64_t k0 = 0;
    std::int64_t n_trunc = 0;
    double alpha = 0.0;
    double log_tail_constant = 0.0;
    std::int64_t trials = 0;
    std::int64_t events = 0;
    double p_hat = 0.0;
    WilsonInterval ci95;
    double log_lower_bound = 0.0;  // -(beta Z_p / 2) r^{2 beta}
    std::int64_t inclusion_checked = 0;
    std::int64_t inclusion_violations = 0;
};

/// Probability of |xi_{k0}| b_{k0} > sum_{k != k0} |xi_k| b_k + tail, b_k = a_k r^k,
/// k0 = floor(beta p r^beta / 2), with the series cut at alpha = 4^beta e. When
/// `check_inclusion` is set, every event trial is checked to have exactly k0 zeros in D(0, r).
DominantResult dominant_monomial_probability(const WeightModel& model, double r, double p,
                                             std::int64_t trials, std::uint64_t seed,
                                             unsigned threads = 1, bool check_inclusion = true);

struct LinearStatisticSummary {
    double mean_cond = 0.0;
    double mean_uncond = 0.0;
    double target = 0.0;  // r^beta times the integral of phi against mu_0
    double gap = 0.0;     // mean_cond - target
    std::int64_t accepted = 0;
};

/// Conditional mean of n(phi; r) over hole trials next to its limiting target.
/// Throws CoverageError when phi reaches beyond the zero lists.
LinearStatisticSummary conditional_linear_statistics(const HoleExperiment& experiment,
                                                     const TestFunction& phi);

struct TailStudy {
    std::int64_t n_trunc = 0;
    double alpha = 0.0;
    double log_bound = 0.0;
    double max_log_tail = 0.0;  // largest log |T_N| seen
    std::int64_t trials = 0;
    std::int64_t exceedances = 0;
};

/// Empirical check of the tail bound: T_N(z) = sum_{k=N+1}^{N+200} xi_k a_k z^k on a
/// grid x grid lattice of the square [-B r, B r]^2 restricted to |z| <= B r.
TailStudy tail_exceedance_study(const WeightModel& model, const TruncationPlan& plan,
                                std::int64_t trials, std::uint64_t seed, int grid = 64,
                                unsigned threads = 1);

} // namespace pexgaf
