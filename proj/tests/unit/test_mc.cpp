#include <cmath>

#include "doctest.h"
#include "pexgaf/error.hpp"
#include "pexgaf/mc.hpp"
#include "pexgaf/measures.hpp"

using namespace pexgaf;

namespace {

HoleExperiment run_hole(double beta, double r, std::int64_t trials, std::uint64_t seed,
                        HoleOptions opt = {}) {
    const auto m = WeightModel::make(beta);
    const double mult = opt.search_multiple > 0.0 ? opt.search_multiple : default_search_multiple(m);
    return estimate_hole_probability(m, make_hole_plan(m, r, mult), r, trials, seed, opt);
}

} // namespace

TEST_CASE("Wilson interval") {
    for (auto [k, n] : {std::pair<std::int64_t, std::int64_t>{0, 100}, {37, 100}, {100, 100}, {3, 1000}}) {
        const double z = 1.959963984540054;
        const double ph = static_cast<double>(k) / n;
        const double den = 1.0 + z * z / n;
        const double c = (ph + z * z / (2.0 * n)) / den;
        const double h = z * std::sqrt(ph * (1.0 - ph) / n + z * z / (4.0 * n * n)) / den;
        const auto w = wilson_interval(k, n);
        CHECK(w.lo == doctest::Approx(std::max(0.0, c - h)).epsilon(1e-12));
        CHECK(w.hi == doctest::Approx(std::min(1.0, c + h)).epsilon(1e-12));
        CHECK(w.lo <= ph);
        CHECK(ph <= w.hi);
    }
    CHECK(wilson_interval(0, 100).lo == 0.0);
    CHECK(wilson_interval(100, 100).hi == 1.0);
    CHECK_THROWS_AS(wilson_interval(5, 0), ParameterError);
    CHECK_THROWS_AS(wilson_interval(6, 5), ParameterError);
}

TEST_CASE("search multiple") {
    CHECK(default_search_multiple(WeightModel::make(2.0)) == 3.0);
    const auto m = WeightModel::make(0.5);
    CHECK(default_search_multiple(m) >= 1.2 * m.hole_outer);
}

TEST_CASE("hole probability at small radius") {
    const auto e = run_hole(2.0, 0.1, 200, 1);
    CHECK(e.results.p_hat >= 0.9);
    CHECK(e.results.p_hat <= 1.0);
    CHECK(e.results.ci95.lo <= e.results.p_hat);
    CHECK(e.results.hole_count == static_cast<std::int64_t>(std::llround(e.results.p_hat * 200)));
    CHECK(e.results.conditional_offsets.size() == static_cast<std::size_t>(e.results.hole_count) + 1);
    for (double rr : e.results.conditional_zero_radii) CHECK(rr > 1.0);
    CHECK(e.results.conditional_zero_radii.size() == e.results.conditional_zeros.size());
    CHECK_THROWS_AS(run_hole(2.0, 0.1, 99, 1), ParameterError);
}

TEST_CASE("hole probability decreases with the radius") {
    double prev = 1.0;
    for (double r : {0.3, 0.6, 0.9}) {
        const auto e = run_hole(2.0, r, 400, 5);
        CHECK(e.results.p_hat < prev);
        prev = e.results.p_hat;
    }
}

TEST_CASE("unconditional zero counts follow the intensity") {
    const auto m = WeightModel::make(2.0);
    const auto e = run_hole(2.0, 0.8, 400, 9);
    std::int64_t inside = 0;
    for (double rr : e.results.unconditional_zero_radii) inside += rr <= 1.5 ? 1 : 0;
    const double mean = static_cast<double>(inside) / e.results.unconditional_trials;
    // F_2 with unit coefficients: E n(x) = x^2
    CHECK(std::abs(mean - 1.44) < 0.2);
    CHECK(e.results.unconditional_trials == 400);
    (void)m;
}

TEST_CASE("results do not depend on the thread count") {
    HoleOptions one;
    HoleOptions three;
    three.threads = 3;
    const auto a = run_hole(1.0, 0.7, 150, 77, one);
    const auto b = run_hole(1.0, 0.7, 150, 77, three);
    CHECK(a.results.hole_count == b.results.hole_count);
    CHECK(a.results.conditional_zeros == b.results.conditional_zeros);
    CHECK(a.results.unconditional_zeros == b.results.unconditional_zeros);
    CHECK(a.results.unconditional_offsets == b.results.unconditional_offsets);
    const auto d1 = dominant_monomial_probability(WeightModel::make(2.0), 1.5, 2.0, 300, 4, 1);
    const auto d3 = dominant_monomial_probability(WeightModel::make(2.0), 1.5, 2.0, 300, 4, 3);
    CHECK(d1.events == d3.events);
}

TEST_CASE("coverage is enforced") {
    const auto m = WeightModel::make(2.0);
    const auto small = make_hole_plan(m, 0.5, 1.0);
    HoleOptions opt;
    opt.search_multiple = 3.0;
    CHECK_THROWS_AS(estimate_hole_probability(m, small, 0.5, 100, 1, opt), CoverageError);
}

TEST_CASE("depletion statistic flags") {
    const auto rare = run_hole(2.0, 2.0, 100, 3);
    const auto st = depletion_statistic(rare);
    CHECK_FALSE(st.valid);
    CHECK(st.flag == "fewer than 10 accepted trials");

    HoleOptions narrow;
    narrow.search_multiple = 1.1;
    const auto e = run_hole(2.0, 0.5, 100, 3, narrow);
    const auto st2 = depletion_statistic(e);
    CHECK_FALSE(st2.valid);
    CHECK(st2.flag == "zero lists do not reach 1.2 e^{1/beta}");
}

TEST_CASE("depletion statistic and split-half control") {
    const auto e = run_hole(2.0, 0.9, 800, 21);
    const double outer = std::exp(0.5);
    auto band = [&](const std::vector<double>& v) {
        std::int64_t c = 0;
        for (double x : v) c += (x > 1.0 && x < outer) ? 1 : 0;
        return c;
    };
    const auto st = depletion_statistic(e);
    REQUIRE(st.valid);
    const double n1 = static_cast<double>(e.results.conditional_zero_radii.size());
    const double n2 = static_cast<double>(e.results.unconditional_zero_radii.size());
    const double k1 = static_cast<double>(band(e.results.conditional_zero_radii));
    const double k2 = static_cast<double>(band(e.results.unconditional_zero_radii));
    CHECK(st.band_cond == static_cast<std::int64_t>(k1));
    CHECK(st.total_uncond == static_cast<std::int64_t>(n2));
    const double pool = (k1 + k2) / (n1 + n2);
    const double z = (k2 / n2 - k1 / n1) / std::sqrt(pool * (1.0 - pool) * (1.0 / n1 + 1.0 / n2));
    CHECK(st.zscore == doctest::Approx(z).epsilon(1e-12));
    // zeros pushed out of the hole accumulate just beyond its edge
    CHECK(st.band_frac_cond > st.band_frac_uncond);

    const auto ctl = split_half_statistic(e);
    REQUIRE(ctl.valid);
    CHECK(std::abs(ctl.zscore) < 4.0);
    CHECK(ctl.total_cond + ctl.total_uncond == static_cast<std::int64_t>(n2));
}

TEST_CASE("dominant monomial event") {
    const auto m = WeightModel::make(2.0);
    const auto d = dominant_monomial_probability(m, 1.0, 2.0, 2000, 11);
    CHECK(d.k0 == 2);
    CHECK(d.alpha == doctest::Approx(16.0 * std::exp(1.0)));
    CHECK(d.events > 0);
    CHECK(d.inclusion_checked == d.events);
    CHECK(d.inclusion_violations == 0);
    CHECK(d.log_lower_bound == doctest::Approx(-z_of_p(2.0)).epsilon(1e-12));
    CHECK(d.ci95.lo <= d.p_hat);
    CHECK(d.p_hat <= d.ci95.hi);
    const auto d1 = dominant_monomial_probability(WeightModel::make(1.0), 2.0, 0.5, 1000, 12);
    CHECK(d1.k0 == 0);
    CHECK(d1.inclusion_violations == 0);
    CHECK_THROWS_AS(dominant_monomial_probability(m, 1.5, 2.0, 0, 11), ParameterError);
}

TEST_CASE("tail exceedance study") {
    for (double beta : {1.0, 2.0}) {
        const auto m = WeightModel::make(beta);
        const auto plan = make_scaled_plan(1.5, m, std::pow(4.0, beta) * std::exp(1.0), 1.0);
        const auto ts = tail_exceedance_study(m, plan, 50, 3, 32);
        CHECK(ts.n_trunc == plan.n_trunc);
        CHECK(ts.exceedances == 0);
        CHECK(ts.max_log_tail < ts.log_bound);
        CHECK(ts.log_bound == doctest::Approx(tail_bound(plan, m).log_value));
    }
    const auto m = WeightModel::make(2.0);
    const auto weak = make_scaled_plan(1.5, m, 4.0, 1.0);
    CHECK_THROWS_AS(tail_exceedance_study(m, weak, 10, 3, 16), ParameterError);
}

TEST_CASE("conditional linear statistics") {
    const auto e = run_hole(2.0, 0.8, 600, 17);
    const auto phi = TestFunction::mollified_annulus(0.0, 2.5, 0.2);
    const auto s = conditional_linear_statistics(e, phi);
    CHECK(s.accepted == e.results.hole_count);
    CHECK(s.mean_cond >= 0.0);
    CHECK(s.gap == doctest::Approx(s.mean_cond - s.target));
    // unconditional mean of n(phi; r) is close to r^2 times the integral of phi / pi
    CHECK(s.mean_uncond > 0.0);
    const auto wide = TestFunction::mollified_annulus(0.0, 3.5, 0.2);
    CHECK_THROWS_AS(conditional_linear_statistics(e, wide), CoverageError);
}
