#include "pexgaf/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "pexgaf/error.hpp"
#include "pexgaf/measures.hpp"

namespace pexgaf {

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers; the output is indexed by trial,
// so the reduction order never depends on scheduling.
template <class Result, class Fn>
std::vector<Result> run_trials(std::int64_t n, unsigned threads, Fn&& fn) {
    std::vector<Result> out(static_cast<std::size_t>(n));
    const unsigned workers =
        std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::int64_t>(n, 1))));
    if (workers == 1) {
        for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(i);
        return out;
    }
    constexpr std::int64_t chunk = 64;
    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::int64_t begin = next.fetch_add(chunk);
            if (begin >= n) return;
            const std::int64_t end = std::min(n, begin + chunk);
            try {
                for (std::int64_t i = begin; i < end; ++i) out[static_cast<std::size_t>(i)] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

struct HoleTrial {
    bool hole = false;
    bool contour_failed = false;
    bool has_zeros = false;
    std::vector<cplx> zeros;  // scaled by 1/r
};

DepletionStatistic two_proportion(std::int64_t band_a, std::int64_t total_a, std::int64_t band_b,
                                  std::int64_t total_b) {
    DepletionStatistic st;
    st.band_cond = band_a;
    st.total_cond = total_a;
    st.band_uncond = band_b;
    st.total_uncond = total_b;
    if (total_a == 0 || total_b == 0) {
        st.flag = "no zeros in one of the samples (fraction 0/0)";
        return st;
    }
    const double na = static_cast<double>(total_a);
    const double nb = static_cast<double>(total_b);
    st.band_frac_cond = static_cast<double>(band_a) / na;
    st.band_frac_uncond = static_cast<double>(band_b) / nb;
    const double pooled = static_cast<double>(band_a + band_b) / (na + nb);
    const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / na + 1.0 / nb));
    if (se == 0.0) {
        st.flag = "degenerate pooled proportion";
        return st;
    }
    st.zscore = (st.band_frac_uncond - st.band_frac_cond) / se;
    st.valid = true;
    return st;
}

std::pair<std::int64_t, std::int64_t> band_counts(const std::vector<double>& radii, double outer) {
    std::int64_t band = 0;
    for (double x : radii) {
        if (x > 1.0 && x < outer) ++band;
    }
    return {band, static_cast<std::int64_t>(radii.size())};
}

} // namespace

WilsonInterval wilson_interval(std::int64_t k, std::int64_t n, double z) {
    if (n <= 0 || k < 0 || k > n) throw ParameterError("Wilson interval needs 0 <= k <= n, n > 0");
    const double nn = static_cast<double>(n);
    const double ph = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (ph + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {k == 0 ? 0.0 : std::max(0.0, center - half), k == n ? 1.0 : std::min(1.0, center + half)};
}

double default_search_multiple(const WeightModel& model) {
    return std::max(3.0, 1.2 * model.hole_outer * 1.05);
}

TruncationPlan make_hole_plan(const WeightModel& model, double r, double search_multiple) {
    if (!(r > 0.0)) throw ParameterError("hole radius must be positive");
    if (!(search_multiple >= 1.0)) throw ParameterError("search multiple must be at least 1");
    return make_simulation_plan(r, model, search_multiple);
}

HoleExperiment estimate_hole_probability(const WeightModel& model, const TruncationPlan& plan,
                                         double r, std::int64_t trials, std::uint64_t seed,
                                         const HoleOptions& options) {
    if (trials < 100) throw ParameterError("hole experiment needs at least 100 trials");
    if (!(r > 0.0)) throw ParameterError("hole radius must be positive");
    HoleExperiment ex;
    ex.model = model;
    ex.plan = plan;
    ex.trials = trials;
    ex.seed = seed;
    ex.hole_radius = r;
    ex.search_multiple =
        options.search_multiple > 0.0 ? options.search_multiple : default_search_multiple(model);
    const double search_radius = ex.search_multiple * r;
    if (search_radius > 2.0 * plan.big_b * plan.r * (1.0 + 1e-12)) {
        throw CoverageError("plan does not cover the zero search disk");
    }
    const std::int64_t uncond =
        options.unconditional_trials < 0 ? trials : std::min(trials, options.unconditional_trials);
    const auto n_coeff = static_cast<std::size_t>(plan.n_trunc + 1);

    auto one = [&](std::int64_t i) {
        HoleTrial t;
        const auto xi = draw_xi(seed, static_cast<std::uint64_t>(i), n_coeff);
        const ScaledPolynomial poly = make_scaled_polynomial(xi, model, plan.r);
        try {
            t.hole = count_zeros_argument_detail(poly, r).count == 0;
        } catch (const ContourError&) {
            t.contour_failed = true;
        }
        if (t.hole || i < uncond) {
            const ZeroSet zs = find_zeros(poly, search_radius);
            t.zeros.reserve(zs.zeros.size());
            for (const auto& z : zs.zeros) t.zeros.push_back(z / r);
            t.has_zeros = true;
        }
        return t;
    };
    const auto results = run_trials<HoleTrial>(trials, options.threads, one);

    HoleResults& res = ex.results;
    for (std::int64_t i = 0; i < trials; ++i) {
        const HoleTrial& t = results[static_cast<std::size_t>(i)];
        if (t.contour_failed) ++res.contour_failures;
        if (t.hole) {
            ++res.hole_count;
            res.conditional_offsets.push_back(static_cast<std::int64_t>(res.conditional_zeros.size()));
            for (const auto& z : t.zeros) {
                res.conditional_zeros.push_back(z);
                res.conditional_zero_radii.push_back(std::abs(z));
            }
        }
        if (i < uncond && t.has_zeros) {
            ++res.unconditional_trials;
            res.unconditional_offsets.push_back(
                static_cast<std::int64_t>(res.unconditional_zeros.size()));
            for (const auto& z : t.zeros) {
                res.unconditional_zeros.push_back(z);
                res.unconditional_zero_radii.push_back(std::abs(z));
            }
        }
    }
    res.conditional_offsets.push_back(static_cast<std::int64_t>(res.conditional_zeros.size()));
    res.unconditional_offsets.push_back(static_cast<std::int64_t>(res.unconditional_zeros.size()));
    res.p_hat = static_cast<double>(res.hole_count) / static_cast<double>(trials);
    res.ci95 = wilson_interval(res.hole_count, trials);
    res.starved = res.hole_count == 0;
    return ex;
}

DepletionStatistic depletion_statistic(const HoleExperiment& experiment) {
    const double outer = experiment.model.hole_outer;
    const auto& res = experiment.results;
    const auto [bc, tc] = band_counts(res.conditional_zero_radii, outer);
    const auto [bu, tu] = band_counts(res.unconditional_zero_radii, outer);
    DepletionStatistic st = two_proportion(bc, tc, bu, tu);
    if (res.hole_count < 10) {
        st.valid = false;
        st.flag = "fewer than 10 accepted trials";
    } else if (experiment.search_multiple < 1.2 * outer) {
        st.valid = false;
        st.flag = "zero lists do not reach 1.2 e^{1/beta}";
    }
    return st;
}

DepletionStatistic split_half_statistic(const HoleExperiment& experiment) {
    const auto& res = experiment.results;
    const double outer = experiment.model.hole_outer;
    std::int64_t band[2] = {0, 0};
    std::int64_t total[2] = {0, 0};
    for (std::size_t t = 0; t + 1 < res.unconditional_offsets.size(); ++t) {
        const std::size_t half = t % 2;
        for (auto j = res.unconditional_offsets[t]; j < res.unconditional_offsets[t + 1]; ++j) {
            const double x = res.unconditional_zero_radii[static_cast<std::size_t>(j)];
            ++total[half];
            if (x > 1.0 && x < outer) ++band[half];
        }
    }
    return two_proportion(band[0], total[0], band[1], total[1]);
}

DominantResult dominant_monomial_probability(const WeightModel& model, double r, double p,
                                             std::int64_t trials, std::uint64_t seed,
                                             unsigned threads, bool check_inclusion) {
    if (!(r > 0.0)) throw ParameterError("radius must be positive");
    if (!(p >= 0.0)) throw DomainError("level p must be nonnegative");
    if (trials < 1) throw ParameterError("trials must be positive");
    const double beta = model.beta;
    DominantResult out;
    out.alpha = std::pow(4.0, beta) * std::numbers::e;
    const TruncationPlan plan = make_scaled_plan(r, model, out.alpha, 1.0);
    out.n_trunc = plan.n_trunc;
    out.k0 = static_cast<std::int64_t>(std::floor(beta * p * std::pow(r, beta) / 2.0));
    if (out.k0 > out.n_trunc) throw ParameterError("dominant index k0 exceeds the degree N");
    out.log_tail_constant = tail_bound(plan, model).log_value;
    out.trials = trials;
    out.log_lower_bound = p == 1.0 ? 0.0 : -(beta * z_of_p(p) / 2.0) * std::pow(r, 2.0 * beta);

    const auto n = static_cast<std::size_t>(out.n_trunc + 1);
    std::vector<double> b(n);
    for (std::size_t k = 0; k < n; ++k) {
        b[k] = std::exp(log_coefficient(static_cast<std::int64_t>(k), model) +
                        static_cast<double>(k) * std::log(r));
    }
    const double tail = std::exp(out.log_tail_constant);
    const auto k0 = static_cast<std::size_t>(out.k0);

    struct Trial {
        bool event = false;
        bool checked = false;
        bool violation = false;
    };
    auto one = [&](std::int64_t i) {
        Trial t;
        const auto xi = draw_xi(seed, static_cast<std::uint64_t>(i), n);
        double rest = tail;
        for (std::size_t k = 0; k < n; ++k) {
            if (k != k0) rest += std::abs(xi[k]) * b[k];
        }
        t.event = std::abs(xi[k0]) * b[k0] > rest;
        if (t.event && check_inclusion) {
            t.checked = true;
            const ScaledPolynomial poly = make_scaled_polynomial(xi, model, r);
            try {
                t.violation = count_zeros_argument_detail(poly, r).count != out.k0;
            } catch (const ContourError&) {
                t.violation = true;
            }
        }
        return t;
    };
    const auto results = run_trials<Trial>(trials, threads, one);
    for (const auto& t : results) {
        out.events += t.event ? 1 : 0;
        out.inclusion_checked += t.checked ? 1 : 0;
        out.inclusion_violations += t.violation ? 1 : 0;
    }
    out.p_hat = static_cast<double>(out.events) / static_cast<double>(trials);
    out.ci95 = wilson_interval(out.events, trials);
    return out;
}

LinearStatisticSummary conditional_linear_statistics(const HoleExperiment& experiment,
                                                     const TestFunction& phi) {
    const double r = experiment.hole_radius;
    const auto& res = experiment.results;
    LinearStatisticSummary out;
    out.accepted = res.hole_count;

    auto mean_over = [&](const std::vector<cplx>& zeros, const std::vector<std::int64_t>& offsets) {
        if (offsets.size() < 2) return 0.0;
        double sum = 0.0;
        ZeroSet zs;
        zs.radius = experiment.search_multiple * r;
        for (std::size_t t = 0; t + 1 < offsets.size(); ++t) {
            zs.zeros.clear();
            for (auto j = offsets[t]; j < offsets[t + 1]; ++j) {
                zs.zeros.push_back(zeros[static_cast<std::size_t>(j)] * r);
            }
            sum += linear_statistic(zs, phi, r);
        }
        return sum / static_cast<double>(offsets.size() - 1);
    };
    out.mean_cond = mean_over(res.conditional_zeros, res.conditional_offsets);
    out.mean_uncond = mean_over(res.unconditional_zeros, res.unconditional_offsets);
    if (phi.support_radius() > experiment.search_multiple) {
        throw CoverageError("test function support exceeds the zero lists");
    }

    const RadialMeasure mu0 = limiting_measure(experiment.model, 0.0);
    std::vector<double> breaks{1.0, experiment.model.hole_outer};
    for (double v : phi.params()) {
        if (v > 0.0) breaks.push_back(v);
    }
    const double integral =
        integrate(mu0, [&](cplx z) { return phi(z); }, phi.support_radius(), breaks);
    out.target = std::pow(r, experiment.model.beta) * integral;
    out.gap = out.mean_cond - out.target;
    return out;
}

TailStudy tail_exceedance_study(const WeightModel& model, const TruncationPlan& plan,
                                std::int64_t trials, std::uint64_t seed, int grid,
                                unsigned threads) {
    if (trials < 1) throw ParameterError("trials must be positive");
    if (grid < 2) throw ParameterError("grid must have at least 2 points per side");
    TailStudy out;
    out.log_bound = tail_bound(plan, model).log_value;
    out.n_trunc = plan.n_trunc;
    out.alpha = plan.alpha;
    out.trials = trials;
    constexpr std::int64_t n_terms = 200;
    const std::int64_t first = plan.n_trunc + 1;
    const double log_a_first = log_coefficient(first, model);
    std::vector<double> ratio(n_terms);
    for (std::int64_t j = 0; j < n_terms; ++j) {
        ratio[static_cast<std::size_t>(j)] = std::exp(log_coefficient(first + j, model) - log_a_first);
    }
    const double rb = plan.big_b * plan.r;
    std::vector<cplx> points;
    for (int i = 0; i < grid; ++i) {
        for (int k = 0; k < grid; ++k) {
            const cplx z(-rb + 2.0 * rb * i / (grid - 1), -rb + 2.0 * rb * k / (grid - 1));
            if (std::abs(z) <= rb && std::abs(z) > 0.0) points.push_back(z);
        }
    }
    const auto n_coeff = static_cast<std::size_t>(first + n_terms);
    auto one = [&](std::int64_t trial) {
        const auto xi = draw_xi(seed, static_cast<std::uint64_t>(trial), n_coeff);
        std::vector<cplx> c(n_terms);
        for (std::int64_t j = 0; j < n_terms; ++j) {
            c[static_cast<std::size_t>(j)] =
                xi[static_cast<std::size_t>(first + j)] * ratio[static_cast<std::size_t>(j)];
        }
        double worst = -std::numeric_limits<double>::infinity();
        for (const auto& z : points) {
            cplx acc(0.0, 0.0);
            for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
            const double lv = static_cast<double>(first) * std::log(std::abs(z)) + log_a_first +
                              std::log(std::abs(acc));
            worst = std::max(worst, lv);
        }
        return worst;
    };
    const auto results = run_trials<double>(trials, threads, one);
    out.max_log_tail = -std::numeric_limits<double>::infinity();
    for (double v : results) {
        out.max_log_tail = std::max(out.max_log_tail, v);
        if (v > out.log_bound) ++out.exceedances;
    }
    return out;
}

} // namespace pexgaf
