#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pexgaf/error.hpp"
#include "pexgaf/zeros.hpp"

using namespace pexgaf;

namespace {

ScaledPolynomial from_roots(const std::vector<cplx>& roots) {
    std::vector<cplx> c{1.0};
    for (const auto& w : roots) {
        std::vector<cplx> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= w * c[k];
        }
        c = next;
    }
    ScaledPolynomial p;
    p.rho0 = 1.0;
    p.c = c;
    return p;
}

bool contains_close(const std::vector<cplx>& zs, cplx w, double tol) {
    for (const auto& z : zs) {
        if (std::abs(z - w) <= tol) return true;
    }
    return false;
}

} // namespace

TEST_CASE("companion roots recover known zeros") {
    const std::vector<cplx> w{{0.3, 0.1}, {-0.5, 0.4}, {0.0, -0.7}, {0.9, 0.2}, {-0.2, -0.2}};
    const auto zs = find_zeros(from_roots(w), 1.0);
    REQUIRE(zs.zeros.size() == 5);
    for (const auto& v : w) CHECK(contains_close(zs.zeros, v, 1e-8));
    CHECK(zs.discarded_exterior == 0);
    CHECK(zs.residual_max <= 1e-6 * zs.max_coefficient);

    auto outer = w;
    outer.push_back({2.0, 0.0});
    const auto zs2 = find_zeros(from_roots(outer), 1.0);
    CHECK(zs2.zeros.size() == 5);
    CHECK(zs2.discarded_exterior == 1);
}

TEST_CASE("single zero at the origin") {
    const auto m = WeightModel::make(2.0);
    const auto plan = make_simulation_plan(1.0, m, 2.0);
    std::vector<cplx> xi(static_cast<std::size_t>(plan.n_trunc + 1), 0.0);
    xi[1] = 1.0;
    const auto zs = find_zeros(make_sample(m, plan, xi), 1.0);
    REQUIRE(zs.zeros.size() == 1);
    CHECK(std::abs(zs.zeros[0]) == 0.0);
    CHECK(zs.discarded_exterior == 0);
    CHECK(zs.dropped_leading == plan.n_trunc - 1);
}

TEST_CASE("degenerate and oversized polynomials are rejected") {
    ScaledPolynomial zero;
    zero.c = std::vector<cplx>(5, 0.0);
    CHECK_THROWS_AS(find_zeros(zero, 1.0), DegenerateDegreeError);
    ScaledPolynomial big;
    big.c = std::vector<cplx>(2002, 1.0);
    CHECK_THROWS_AS(find_zeros(big, 1.0), ParameterError);
    const auto m = WeightModel::make(2.0);
    const auto plan = make_simulation_plan(1.0, m, 1.0);
    CHECK_THROWS_AS(find_zeros(sample_gaf(m, plan, 1, 1), 2.5), ParameterError);
}

TEST_CASE("argument principle counts") {
    ScaledPolynomial p;
    p.c = {1.0, 1e-12, 0.0};
    CHECK(count_zeros_argument_detail(p, 1.0).count == 0);
    std::vector<cplx> w;
    for (int j = 0; j < 7; ++j) w.push_back(std::polar(0.6, 0.9 * j));
    w.push_back({3.0, 0.0});
    CHECK(count_zeros_argument_detail(from_roots(w), 1.0).count == 7);
    CHECK(count_zeros_argument_detail(from_roots(w), 4.0).count == 8);
}

TEST_CASE("contour through a zero is nudged or reported") {
    const auto p = from_roots({{1.0, 0.0}, {0.2, 0.0}});
    const auto ac = count_zeros_argument_detail(p, 1.0);
    CHECK(ac.nudges >= 1);
    CHECK(ac.count == (ac.radius_used > 1.0 ? 2 : 1));
}

TEST_CASE("companion and contour counts agree on random samples") {
    const auto m = WeightModel::make(2.0);
    const double r = 1.5;
    const auto plan = make_simulation_plan(r, m, 2.0);
    int agree = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto s = sample_gaf(m, plan, 5, static_cast<std::uint64_t>(i));
        const auto zs = find_zeros(s, r);
        if (static_cast<std::int64_t>(zs.zeros.size()) == count_zeros_argument(s, r)) ++agree;
        CHECK(zs.residual_max <= 1e-6 * zs.max_coefficient);
    }
    CHECK(agree >= 999);
}

TEST_CASE("conjugated coefficients give conjugated zeros") {
    const auto m = WeightModel::make(1.0);
    const auto plan = make_simulation_plan(1.0, m, 2.0);
    for (int i = 0; i < 20; ++i) {
        const auto s = sample_gaf(m, plan, 8, static_cast<std::uint64_t>(i));
        auto xi = s.xi;
        for (auto& v : xi) v = std::conj(v);
        const auto a = find_zeros(s, 2.0);
        const auto b = find_zeros(make_sample(m, plan, xi), 2.0);
        REQUIRE(a.zeros.size() == b.zeros.size());
        for (const auto& z : a.zeros) CHECK(contains_close(b.zeros, std::conj(z), 1e-8));
    }
}

TEST_CASE("mean zero count matches the intensity integral") {
    for (double beta : {1.0, 2.0, 3.0}) {
        const auto m = WeightModel::make(beta);
        for (double r : {1.0, 1.5}) {
            const auto plan = make_simulation_plan(r, m, 1.0);
            const int n = 10000;
            double s1 = 0.0;
            double s2 = 0.0;
            for (int i = 0; i < n; ++i) {
                const auto c = static_cast<double>(
                    count_zeros_argument(sample_gaf(m, plan, 21, static_cast<std::uint64_t>(i)), r));
                s1 += c;
                s2 += c * c;
            }
            const double mean = s1 / n;
            const double se = std::sqrt((s2 / n - mean * mean) / n);
            CHECK(std::abs(mean - expected_zero_count(m, plan.n_trunc, r)) <= 3.0 * se);
        }
    }
}

TEST_CASE("no excess zeros at beta = 2, r = 2") {
    const auto m = WeightModel::make(2.0);
    const double r = 2.0;
    const auto plan = make_simulation_plan(r, m, 1.0);
    int excess = 0;
    for (int i = 0; i < 10000; ++i) {
        if (count_zeros_argument(sample_gaf(m, plan, 3, static_cast<std::uint64_t>(i)), r) > 16) ++excess;
    }
    CHECK(excess == 0);
}

TEST_CASE("test function catalogue") {
    const auto bump = TestFunction::radial_bump(0.0, 1.0);
    CHECK(bump(0.0) == doctest::Approx(1.0));
    CHECK(bump(cplx(1.0, 0.0)) == 0.0);
    CHECK(bump(cplx(0.0, 1.5)) == 0.0);
    CHECK(bump.support_radius() == 1.0);

    const auto ring = TestFunction::radial_bump(2.0, 0.5);
    CHECK(ring(cplx(2.0, 0.0)) == doctest::Approx(1.0));
    CHECK(ring(cplx(1.4, 0.0)) == 0.0);
    CHECK(ring.support_radius() == 2.5);
    CHECK_THROWS_AS(TestFunction::radial_bump(0.3, 0.5), ParameterError);

    const auto disk = TestFunction::mollified_annulus(0.0, 1.0, 0.05);
    CHECK(disk(cplx(0.5, 0.3)) == 1.0);
    CHECK(disk(cplx(0.0, 1.0)) == 0.0);

    const auto pb = TestFunction::poly_bump(1.0, 0.5, 1.0, -1.0);
    CHECK_FALSE(pb.is_radial());
    CHECK(pb(cplx(0.0, 0.0)) == doctest::Approx(0.5));
    CHECK(pb(cplx(1.2, 0.0)) == 0.0);

    CHECK(TestFunction::from_name("bump", {0.0, 1.0}).kind() == TestFunction::Kind::radial_bump);
    CHECK(TestFunction::from_name("annulus", {1.0, 2.0, 0.1}).kind() == TestFunction::Kind::mollified_annulus);
    CHECK_THROWS_AS(TestFunction::from_name("bump", {1.0}), ParameterError);
    CHECK_THROWS_AS(TestFunction::from_name("nope", {}), ParameterError);
}

TEST_CASE("test function gradients, energy and modulus of continuity") {
    const std::vector<TestFunction> fs{TestFunction::radial_bump(0.0, 1.0),
                                       TestFunction::radial_bump(1.5, 0.5),
                                       TestFunction::mollified_annulus(1.0, 2.0, 0.2),
                                       TestFunction::poly_bump(1.2, 0.3, 0.8, -0.4)};
    std::mt19937_64 rng(5);
    for (const auto& f : fs) {
        const double b = f.support_radius();
        std::uniform_real_distribution<double> u(-1.1 * b, 1.1 * b);
        for (int i = 0; i < 200; ++i) {
            const cplx z(u(rng), u(rng));
            if (std::abs(z) > b) CHECK(f(z) == 0.0);
            const double h = 1e-6;
            const auto [gx, gy] = f.gradient(z);
            CHECK(gx == doctest::Approx((f(z + h) - f(z - h)) / (2 * h)).epsilon(1e-5).scale(1.0));
            CHECK(gy == doctest::Approx((f(z + cplx(0, h)) - f(z - cplx(0, h))) / (2 * h)).epsilon(1e-5).scale(1.0));
        }
        // midpoint-rule Dirichlet energy on a fine lattice
        const int n = 800;
        const double dx = 2.0 * b / n;
        double e = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const cplx z(-b + (i + 0.5) * dx, -b + (j + 0.5) * dx);
                const auto [gx, gy] = f.gradient(z);
                e += (gx * gx + gy * gy) * dx * dx;
            }
        }
        CHECK(f.dirichlet_energy() == doctest::Approx(e).epsilon(2e-3));
        for (double t : {0.01, 0.1, 0.5}) {
            double worst = 0.0;
            for (int i = 0; i < 2000; ++i) {
                const cplx z(u(rng), u(rng));
                const double th = 2.0 * std::numbers::pi * (i % 37) / 37.0;
                const cplx w = z + std::polar(t * (i % 11) / 10.0, th);
                worst = std::max(worst, std::abs(f(z) - f(w)));
            }
            CHECK(f.modulus_of_continuity(t) >= worst);
        }
    }
}

TEST_CASE("linear statistics") {
    const auto disk = TestFunction::mollified_annulus(0.0, 1.0, 0.05);
    ZeroSet zs;
    zs.radius = 2.0;
    CHECK(linear_statistic(zs, disk, 2.0) == 0.0);
    zs.zeros = {{0.1, 0.2}, {-0.5, 0.3}, {0.0, -0.9}};
    CHECK(linear_statistic(zs, disk, 2.0) == 3.0);

    const auto bump = TestFunction::radial_bump(0.0, 1.0);
    double expect = 0.0;
    for (const auto& z : zs.zeros) {
        const double s = std::abs(z) / 2.0;
        expect += std::exp(1.0 - 1.0 / (1.0 - s * s));
    }
    CHECK(linear_statistic(zs, bump, 2.0) == doctest::Approx(expect).epsilon(1e-14));
    CHECK_THROWS_AS(linear_statistic(zs, bump, 2.5), CoverageError);
}
