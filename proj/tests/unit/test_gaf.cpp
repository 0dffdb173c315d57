#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pexgaf/error.hpp"
#include "pexgaf/gaf.hpp"

using namespace pexgaf;

TEST_CASE("coefficient draws are normalized and reproducible") {
    const auto xi = draw_xi(1, 0, 100001);
    double s = 0.0;
    for (const auto& v : xi) s += std::norm(v);
    const double mean = s / static_cast<double>(xi.size());
    CHECK(mean >= 0.99);
    CHECK(mean <= 1.01);
    CHECK(draw_xi(1, 0, 100001) == xi);
    const auto prefix = draw_xi(1, 0, 10);
    for (std::size_t k = 0; k < prefix.size(); ++k) CHECK(prefix[k] == xi[k]);
}

TEST_CASE("different streams are uncorrelated") {
    const std::size_t n = 100000;
    const auto a = draw_xi(1, 0, n);
    const auto b = draw_xi(1, 1, n);
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sab += a[k].real() * b[k].real();
        saa += a[k].real() * a[k].real();
        sbb += b[k].real() * b[k].real();
    }
    CHECK(std::abs(sab / std::sqrt(saa * sbb)) < 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(draw_xi(2, 0, 5) != draw_xi(1, 0, 5));
}

TEST_CASE("evaluation of the truncated series") {
    const auto m = WeightModel::make(2.0);
    const auto plan = make_simulation_plan(3.0, m, 1.0);
    const auto sample = sample_gaf(m, plan, 7, 3);
    CHECK(sample.xi.size() == static_cast<std::size_t>(plan.n_trunc + 1));
    CHECK(evaluate_truncated(sample, 0.0) == sample.xi[0] * coefficient(0, m));

    std::vector<cplx> unit(static_cast<std::size_t>(plan.n_trunc + 1), 0.0);
    unit[0] = 1.0;
    const auto flat = make_sample(m, plan, unit);
    CHECK(std::abs(evaluate_truncated(flat, cplx(1.3, -2.0)) - coefficient(0, m)) < 1e-15);

    for (int j = 0; j < 16; ++j) {
        const double th = 2.0 * std::numbers::pi * j / 16.0;
        const cplx z = std::polar(plan.r, th);
        std::complex<long double> naive = 0.0L;
        for (std::size_t k = 0; k < sample.xi.size(); ++k) {
            const long double mag = std::exp(static_cast<long double>(log_coefficient(static_cast<std::int64_t>(k), m)) +
                                             static_cast<long double>(k) * std::log(static_cast<long double>(plan.r)));
            naive += std::complex<long double>(sample.xi[k]) * mag *
                     std::polar(1.0L, static_cast<long double>(k) * static_cast<long double>(th));
        }
        const cplx v = evaluate_truncated(sample, z);
        const cplx nv(static_cast<double>(naive.real()), static_cast<double>(naive.imag()));
        CHECK(std::abs(v - nv) <= 1e-9 * std::abs(nv));
    }
    CHECK_THROWS_AS(evaluate_truncated(sample, cplx(std::nan(""), 0.0)), DomainError);
    CHECK_THROWS_AS(evaluate_truncated(sample, cplx(4.0 * plan.r * 1.01, 0.0)), DomainError);
    CHECK_THROWS_AS(make_sample(m, plan, std::vector<cplx>(3)), ParameterError);
}

TEST_CASE("samples are deterministic") {
    const auto m = WeightModel::make(1.0);
    const auto plan = make_simulation_plan(1.0, m, 3.0);
    const auto a = sample_gaf(m, plan, 42, 9);
    const auto b = sample_gaf(m, plan, 42, 9);
    CHECK(a.xi == b.xi);
    CHECK(a.poly.c == b.poly.c);
}

TEST_CASE("tail bound formula") {
    const auto m2 = WeightModel::make(2.0);
    const double alpha = 16.0 * std::numbers::e;
    const auto plan = make_scaled_plan(3.0, m2, alpha, 1.0);
    CHECK(plan.n_trunc == 391);
    const double expect = (391.0 / 2.0) * std::log(4.0 / alpha);
    CHECK(tail_bound(plan, m2).log_value == doctest::Approx(expect).epsilon(1e-14));

    const auto m1 = WeightModel::make(1.0);
    const auto p1 = make_scaled_plan(3.0, m1, 4.0 * std::numbers::e, 1.0);
    CHECK(tail_bound(p1, m1).log_value == doctest::Approx(-static_cast<double>(p1.n_trunc)).epsilon(1e-14));

    const auto bad = make_scaled_plan(3.0, m2, 10.0, 1.0);
    CHECK_THROWS_AS(tail_bound(bad, m2), ParameterError);
}

TEST_CASE("kernel diagonal") {
    for (double beta : {0.5, 1.0, 2.0, 3.0}) {
        const auto m = WeightModel::make(beta);
        CHECK(kernel_diag(m, 30, 0.0) == doctest::Approx(std::exp(-std::lgamma(2.0 / beta))).epsilon(1e-14));
    }
    const auto m2 = WeightModel::make(2.0);
    CHECK(std::abs(kernel_diag(m2, 40, 1.0) - std::numbers::e) < 1e-10);
    CHECK(kernel_diag(m2, 80, 2.0) == doctest::Approx(std::exp(4.0)).epsilon(1e-13));
    CHECK(log_kernel_diag(m2, 5000, 40.0) == doctest::Approx(1600.0).epsilon(1e-12));
}

TEST_CASE("first intensity") {
    const auto m2 = WeightModel::make(2.0);
    for (double x : {0.0, 0.5, 1.0, 2.0, 3.0}) {
        CHECK(std::abs(first_intensity(m2, 200, x) - 1.0 / std::numbers::pi) < 1e-4);
    }
    CHECK(first_intensity(m2, 0, 1.0) == 0.0);
    CHECK(expected_zero_count(m2, 200, 1.5) == doctest::Approx(2.25).epsilon(1e-4));
    // flux identity: E n(r) = r K'(r) / (2 K(r)) = weighted mean of k
    for (double beta : {1.0, 3.0}) {
        const auto m = WeightModel::make(beta);
        const std::int64_t n = 60;
        const double r = 1.2;
        double num = 0.0;
        double den = 0.0;
        for (std::int64_t k = 0; k <= n; ++k) {
            const double t = std::exp(2.0 * log_coefficient(k, m) + 2.0 * static_cast<double>(k) * std::log(r));
            num += static_cast<double>(k) * t;
            den += t;
        }
        CHECK(expected_zero_count(m, n, r) == doctest::Approx(num / den).epsilon(1e-5));
    }
}

TEST_CASE("sample variance matches the kernel") {
    const auto m = WeightModel::make(2.0);
    const auto plan = make_simulation_plan(2.0, m, 1.0);
    const int n = 10000;
    for (double x : {0.5, 1.0, plan.r / 2.0}) {
        double s1 = 0.0;
        double s2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto sample = sample_gaf(m, plan, 11, static_cast<std::uint64_t>(i));
            const double v = std::norm(evaluate_truncated(sample, cplx(0.0, x)));
            s1 += v;
            s2 += v * v;
        }
        const double mean = s1 / n;
        const double se = std::sqrt((s2 / n - mean * mean) / n);
        CHECK(std::abs(mean - kernel_diag(m, plan.n_trunc, x)) <= 5.0 * se);
    }
}
