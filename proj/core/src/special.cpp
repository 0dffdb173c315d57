#include "pexgaf/special.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "pexgaf/error.hpp"

namespace pexgaf {

WeightModel WeightModel::make(double beta) {
    if (!std::isfinite(beta) || beta <= 0.0) {
        throw ParameterError("weight exponent beta must be finite and positive, got " +
                             std::to_string(beta));
    }
    WeightModel m;
    m.beta = beta;
    m.c_beta = std::pow(2.0, 2.0 / beta) * std::pow(beta, 0.5 - 2.0 / beta);
    m.hole_inner = 1.0;
    m.hole_outer = std::exp(1.0 / beta);
    return m;
}

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("log_gamma requires a finite positive argument, got " +
                          std::to_string(x));
    }
    return std::lgamma(x);
}

double log_coefficient(std::int64_t n, const WeightModel& model) {
    if (n < 0) throw DomainError("coefficient index must be nonnegative");
    return -0.5 * log_gamma(2.0 * static_cast<double>(n + 1) / model.beta);
}

double coefficient(std::int64_t n, const WeightModel& model) {
    return std::exp(log_coefficient(n, model));
}

StirlingBounds stirling_bounds(std::int64_t k, const WeightModel& model) {
    if (k < 1) throw DomainError("stirling_bounds requires k >= 1");
    const double beta = model.beta;
    const double kd = static_cast<double>(k);
    StirlingBounds b;
    b.lower = std::log(model.c_beta) + (2.0 / beta - 0.5) * std::log(kd) +
              (2.0 * kd / beta) * std::log(2.0 * kd / (beta * std::numbers::e));
    b.upper = b.lower + std::numbers::ln2;
    return b;
}

std::int64_t stirling_threshold(const WeightModel& model, std::int64_t k_max) {
    static std::mutex mu;
    static std::map<std::pair<double, std::int64_t>, std::int64_t> cache;
    const auto key = std::make_pair(model.beta, k_max);
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    std::int64_t threshold = 1;
    for (std::int64_t k = k_max; k >= 1; --k) {
        const double lg = log_gamma(2.0 * static_cast<double>(k + 1) / model.beta);
        if (!stirling_bounds(k, model).contains(lg)) {
            threshold = k + 1;
            break;
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, threshold);
    return threshold;
}

namespace {

std::int64_t round_half_up(double x) {
    return static_cast<std::int64_t>(std::floor(x + 0.5));
}

void fill_scaling_fields(TruncationPlan& plan, const WeightModel& model, double s) {
    plan.s = s;
    plan.gamma = std::pow(plan.r, -s);
    plan.t = plan.gamma;
    plan.m0 = std::pow(plan.big_b, 2.0 * model.beta) * std::pow(plan.r, 2.0 * model.beta);
    plan.k0_shift = 2.0 * plan.m0 * plan.gamma;
    plan.l_scale = (plan.r - plan.k0_shift) / (1.0 + plan.t);
}

void check_alpha_range(TruncationPlan& plan) {
    const double lr = std::log(plan.r);
    plan.alpha_out_of_range = !(plan.alpha >= lr && plan.alpha <= 2.0 * lr);
}

} // namespace

TruncationPlan make_truncation_plan(double r, const WeightModel& model, double alpha,
                                    double big_b, double s) {
    if (!(r > 1.0) || !std::isfinite(r)) throw ParameterError("truncation plan requires r > 1");
    if (!(alpha > 0.0)) throw ParameterError("truncation plan requires alpha > 0");
    if (!(big_b >= 1.0)) throw ParameterError("truncation plan requires B >= 1");
    if (!(s > 1.0 + 4.0 * model.beta)) {
        throw ParameterError("truncation plan requires s > 1 + 4 beta (s = " +
                             std::to_string(s) + ", beta = " + std::to_string(model.beta) + ")");
    }
    TruncationPlan plan;
    plan.r = r;
    plan.alpha = alpha;
    plan.big_b = big_b;
    plan.n_trunc = std::max<std::int64_t>(
        1, round_half_up(model.beta * alpha * std::pow(r, model.beta) / 2.0));
    fill_scaling_fields(plan, model, s);
    if (!(plan.l_scale > 0.0)) {
        throw ParameterError("K_0 = 2 M_0 r^{-s} exceeds r; increase s or r");
    }
    check_alpha_range(plan);
    return plan;
}

TruncationPlan make_scaled_plan(double r, const WeightModel& model, double alpha,
                                double big_b) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ParameterError("plan requires r > 0");
    if (!(alpha > 0.0)) throw ParameterError("plan requires alpha > 0");
    if (!(big_b >= 1.0)) throw ParameterError("plan requires B >= 1");
    TruncationPlan plan;
    plan.r = r;
    plan.alpha = alpha;
    plan.big_b = big_b;
    plan.n_trunc = std::max<std::int64_t>(
        1, round_half_up(model.beta * alpha * std::pow(r, model.beta) / 2.0));
    fill_scaling_fields(plan, model, 2.0 + 4.0 * model.beta);
    if (!(plan.l_scale > 0.0) || r <= 1.0) {
        plan.scaling_fields_valid = false;
        plan.l_scale = r;
        plan.k0_shift = 0.0;
    }
    check_alpha_range(plan);
    return plan;
}

TruncationPlan make_simulation_plan(double r, const WeightModel& model, double big_b,
                                    double rel_tail, std::int64_t min_degree) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ParameterError("plan requires r > 0");
    if (!(big_b >= 1.0)) throw ParameterError("plan requires B >= 1");
    if (!(rel_tail > 0.0 && rel_tail < 1.0)) throw ParameterError("rel_tail must lie in (0,1)");

    // log of a_k^2 R^{2k}; the sequence is log-concave with its peak near beta R^beta / 2.
    const double log_radius = std::log(big_b * r);
    std::vector<double> terms;
    double peak = -INFINITY;
    for (std::int64_t k = 0;; ++k) {
        const double lt = 2.0 * log_coefficient(k, model) + 2.0 * static_cast<double>(k) * log_radius;
        terms.push_back(lt);
        if (lt > peak) peak = lt;
        if (lt < peak - 120.0 && k > 2 * min_degree) break;
    }
    // Suffix log-sum-exp gives the neglected mass past each candidate degree.
    const std::size_t count = terms.size();
    std::vector<double> suffix(count + 1, -INFINITY);
    for (std::size_t i = count; i-- > 0;) {
        const double a = suffix[i + 1];
        const double b = terms[i];
        const double m = std::max(a, b);
        suffix[i] = m + std::log(std::exp(a - m) + std::exp(b - m));
    }
    const double log_kernel = suffix[0];
    const double target = 2.0 * std::log(rel_tail);
    std::int64_t n = min_degree;
    while (static_cast<std::size_t>(n + 1) < count && suffix[n + 1] - log_kernel > target) ++n;

    const double alpha = 2.0 * static_cast<double>(n) / (model.beta * std::pow(r, model.beta));
    TruncationPlan plan = make_scaled_plan(r, model, alpha, big_b);
    plan.n_trunc = n;
    return plan;
}

} // namespace pexgaf
