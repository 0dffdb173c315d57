#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pexgaf/error.hpp"
#include "pexgaf/measures.hpp"

using namespace pexgaf;

namespace {

constexpr double kE = std::numbers::e;

double h(double x) { return x > 0.0 ? x * (std::log(x) - 1.0) : 0.0; }

struct Combo {
    double alpha;
    double beta;
    double p;
};

std::vector<Combo> combos() {
    std::vector<Combo> out;
    for (double alpha : {10.0, 100.0}) {
        for (double beta : {0.5, 1.0, 2.0, 3.0}) {
            for (double p : {0.0, 0.4, 1.7, 3.0, 5.0}) {
                if (p < alpha) out.push_back({alpha, beta, p});
            }
        }
    }
    return out;
}

} // namespace

TEST_CASE("conjugate level q(p)") {
    CHECK(q_of_p(0.0) == kE);
    CHECK(q_of_p(kE) == 0.0);
    CHECK(q_of_p(5.0) == 0.0);
    const double q = q_of_p(0.5);
    CHECK(q > 1.0);
    CHECK(q < kE);
    CHECK(std::abs(h(q) - h(0.5)) <= 1e-13);
    CHECK(q_of_p(q_of_p(0.3)) == doctest::Approx(0.3).epsilon(1e-12));
    for (double p : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.1, 1.5, 2.0, 2.5}) {
        CHECK(std::abs(q_of_p(q_of_p(p)) - p) <= 1e-10);
        CHECK(std::abs(h(q_of_p(p)) - h(p)) <= 1e-12);
    }
    CHECK_THROWS_AS(q_of_p(1.0), ParameterError);
    CHECK_THROWS_AS(q_of_p(-0.1), DomainError);
}

TEST_CASE("rate constant Z_p") {
    CHECK(z_of_p(0.0) == doctest::Approx(kE * kE / 4.0).epsilon(1e-14));
    CHECK(z_of_p(kE) == doctest::Approx(kE * kE / 4.0).epsilon(1e-14));
    CHECK(z_of_p(4.0) == doctest::Approx(4.0 * (2.0 * std::log(4.0) - 1.0)).epsilon(1e-14));
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        CHECK(std::abs(z_of_p(p) - z_of_p(q_of_p(p))) <= 1e-10);
        CHECK(z_of_p(p) > 0.0);
    }
    for (double side : {-1.0, 1.0}) {
        double prev = INFINITY;
        for (int k = 2; k <= 6; ++k) {
            const double z = z_of_p(1.0 + side * std::pow(10.0, -k));
            CHECK(z < prev);
            prev = z;
        }
        CHECK(prev < 1e-10);
    }
    CHECK_THROWS_AS(z_of_p(1.0), ParameterError);
    const auto hp = hole_params(0.5);
    CHECK(hp.regime == Regime::p_lt_1);
    CHECK(hole_params(0.0).regime == Regime::p_eq_0);
    CHECK(hole_params(2.0).regime == Regime::p_in_1_e);
    CHECK(hole_params(3.0).regime == Regime::p_ge_e);
}

TEST_CASE("minimizer measures") {
    const auto m2 = WeightModel::make(2.0);
    const auto mu = minimizer_measure(10.0, m2, 0.0);
    REQUIRE(mu.atoms.size() == 1);
    CHECK(mu.atoms[0].radius == 1.0);
    CHECK(mu.atoms[0].mass == doctest::Approx(kE / 10.0).epsilon(1e-15));
    REQUIRE(mu.pieces.size() == 1);
    CHECK(mu.pieces[0].r_in == doctest::Approx(std::sqrt(kE)).epsilon(1e-15));
    CHECK(mu.pieces[0].r_out == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
    CHECK(mu.pieces[0].coeff == doctest::Approx(0.1).epsilon(1e-15));

    const auto mu3 = minimizer_measure(20.0, WeightModel::make(1.0), kE);
    REQUIRE(mu3.atoms.size() == 1);
    CHECK(mu3.atoms[0].mass == doctest::Approx(kE / 20.0).epsilon(1e-15));
    REQUIRE(mu3.pieces.size() == 1);
    CHECK(mu3.pieces[0].r_in == doctest::Approx(kE).epsilon(1e-15));
    CHECK(mu3.pieces[0].r_out == doctest::Approx(20.0).epsilon(1e-15));

    for (double alpha : {kE + 0.5, 10.0, 100.0}) {
        for (double beta : {0.5, 1.0, 2.0, 3.0}) {
            for (double p : {0.0, 0.4, 1.7, kE, 5.0}) {
                if (p >= alpha) continue;
                const auto m = minimizer_measure(alpha, WeightModel::make(beta), p);
                CHECK(std::abs(m.total_mass() - 1.0) <= 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(minimizer_measure(10.0, m2, 1.0), ParameterError);
    CHECK_THROWS_AS(minimizer_measure(10.0, m2, 10.0), ParameterError);
    CHECK_THROWS_AS(minimizer_measure(2.0, m2, 0.0), ParameterError);
}

TEST_CASE("mass constraints of the minimizers") {
    for (const auto& c : combos()) {
        const auto m = WeightModel::make(c.beta);
        const auto mu = minimizer_measure(c.alpha, m, c.p);
        if (c.p < 1.0) {
            CHECK(mu.band_mass(-1.0, 1.0) <= c.p / c.alpha + 1e-14);
            CHECK(mu.band_mass(1.0, std::pow(q_of_p(c.p), 1.0 / c.beta)) <= 1e-14);
        } else {
            CHECK(mu.closed_disk_mass(1.0) >= c.p / c.alpha - 1e-14);
        }
    }
}

TEST_CASE("limiting measure") {
    const auto m2 = WeightModel::make(2.0);
    const auto mu = limiting_measure(m2, 0.0);
    REQUIRE(mu.atoms.size() == 1);
    CHECK(mu.atoms[0].mass == doctest::Approx(kE).epsilon(1e-15));
    CHECK(std::isinf(mu.total_mass()));
    CHECK_FALSE(mu.bounded());
    for (double beta : {0.5, 1.0, 2.0, 3.0}) {
        const auto m = limiting_measure(WeightModel::make(beta), 0.0);
        for (double big_r : {std::exp(1.0 / beta), 2.0, 5.0}) {
            if (big_r < std::exp(1.0 / beta)) continue;
            CHECK(m.closed_disk_mass(big_r) ==
                  doctest::Approx(beta * std::pow(big_r, beta) / 2.0).epsilon(1e-12));
        }
    }
    const auto mp = limiting_measure(m2, 0.5);
    CHECK(mp.band_mass(1.0, std::sqrt(q_of_p(0.5))) == 0.0);
    CHECK_THROWS_AS(limiting_measure(m2, 1.5), ParameterError);
}

TEST_CASE("closed-form potential agrees with the exact oracle") {
    for (const auto& c : combos()) {
        const auto m = WeightModel::make(c.beta);
        const auto mu = minimizer_measure(c.alpha, m, c.p);
        const double top = 1.5 * std::pow(c.alpha, 1.0 / c.beta);
        for (int i = 0; i < 200; ++i) {
            const double x = top * i / 199.0;
            CHECK(std::abs(potential_closed(mu, c.alpha, m, c.p, x) - potential_quadrature(mu, x)) <= 1e-10);
        }
        if (c.p < 1.0) {
            CHECK(potential_closed(mu, c.alpha, m, c.p, 0.0) ==
                  doctest::Approx((std::log(c.alpha) - 1.0) / c.beta).epsilon(1e-13));
        }
        const double edge = std::pow(c.alpha, 1.0 / c.beta);
        CHECK(potential_closed(mu, c.alpha, m, c.p, edge) ==
              doctest::Approx(std::log(c.alpha) / c.beta).epsilon(1e-13));
    }
    const auto m2 = WeightModel::make(2.0);
    const auto mu = minimizer_measure(10.0, m2, 0.5);
    const double expect = (std::log(10.0) - 1.0) / 2.0 + (0.5 - 0.5 * std::log(0.5)) / 20.0;
    CHECK(potential_closed(mu, 10.0, m2, 0.5, 1.0) == doctest::Approx(expect).epsilon(1e-13));
    CHECK_THROWS_AS(potential_closed(mu, 10.0, m2, 0.5, -1.0), DomainError);
    CHECK_THROWS_AS(potential_closed(mu, 10.0, m2, 0.4, 1.0), ParameterError);
}

TEST_CASE("exact potentials of simple measures") {
    RadialMeasure circle;
    circle.atoms = {{1.0, 1.0}};
    CHECK(potential_quadrature(circle, 0.5) == 0.0);
    CHECK(potential_quadrature(circle, 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    for (double beta : {0.5, 1.0, 2.0, 3.0}) {
        const double alpha = 7.0;
        RadialMeasure disk;
        disk.beta = beta;
        disk.pieces = {{0.0, std::pow(alpha, 1.0 / beta), 1.0 / alpha}};
        CHECK(potential_quadrature(disk, 0.0) ==
              doctest::Approx((std::log(alpha) - 1.0) / beta).epsilon(1e-13));
    }
    CHECK_THROWS_AS(potential_quadrature(limiting_measure(WeightModel::make(2.0), 0.0), 1.0), ParameterError);
}

TEST_CASE("B functional") {
    for (const auto& c : combos()) {
        const auto m = WeightModel::make(c.beta);
        const auto mu = minimizer_measure(c.alpha, m, c.p);
        CHECK(std::abs(b_functional(mu, c.alpha, m) - 2.0 / c.beta * (std::log(c.alpha) - 1.0)) <= 1e-10);
    }
    RadialMeasure circle;
    circle.atoms = {{1.0, 1.0}};
    const auto m2 = WeightModel::make(2.0);
    const double alpha = kE * kE;
    double grid_max = -INFINITY;
    for (int i = 0; i <= 200000; ++i) {
        const double x = 4.0 * i / 200000.0;
        grid_max = std::max(grid_max, std::log(std::max(x, 1.0)) - x * x / (2.0 * alpha));
    }
    CHECK(b_functional(circle, alpha, m2) == doctest::Approx(2.0 * grid_max).epsilon(1e-9));
}

TEST_CASE("log energy") {
    RadialMeasure circle;
    circle.atoms = {{1.0, 1.0}};
    CHECK(log_energy(circle) == 0.0);
    RadialMeasure two;
    two.atoms = {{0.5, 0.25}, {2.0, 0.75}};
    const double expect = 0.0625 * std::log(0.5) + 2 * 0.25 * 0.75 * std::log(2.0) + 0.5625 * std::log(2.0);
    CHECK(log_energy(two) == doctest::Approx(expect).epsilon(1e-14));
    // scaled m-hat on the disk of radius alpha^{1/beta}: energy (log alpha)/beta - 1/(2 beta)
    for (double beta : {0.5, 1.0, 2.0, 3.0}) {
        const double alpha = 10.0;
        RadialMeasure disk;
        disk.beta = beta;
        disk.pieces = {{0.0, std::pow(alpha, 1.0 / beta), 1.0 / alpha}};
        CHECK(log_energy(disk) == doctest::Approx(std::log(alpha) / beta - 0.5 / beta).epsilon(1e-12));
    }
}

TEST_CASE("energy identity for the minimizers") {
    for (const auto& c : combos()) {
        const auto m = WeightModel::make(c.beta);
        const auto mu = minimizer_measure(c.alpha, m, c.p);
        const double closed = (std::log(c.alpha) - 1.5) / c.beta + 2.0 * z_of_p(c.p) / (c.beta * c.alpha * c.alpha);
        CHECK(i_closed_form(c.alpha, m, c.p) == doctest::Approx(closed).epsilon(1e-15));
        CHECK(std::abs(i_functional(mu, c.alpha, m) - closed) <= 1e-8);
        const auto rep = equilibrium_report(mu, c.alpha, m, c.p);
        CHECK(std::abs(rep.i_value - (rep.b_value - rep.sigma_value)) <= 1e-10);
    }
}

TEST_CASE("equilibrium conditions") {
    for (const auto& c : combos()) {
        const auto m = WeightModel::make(c.beta);
        const auto mu = minimizer_measure(c.alpha, m, c.p);
        const auto rep = equilibrium_report(mu, c.alpha, m, c.p);
        CHECK(rep.g_support_dev <= 1e-9);
        CHECK(rep.g_max <= 1e-9);
        CHECK(rep.probe_grid.size() == 2000);
        if (c.p < 1.0) {
            const double expect = (c.p - 1.0 - (c.p > 0.0 ? c.p * std::log(c.p) : 0.0)) / (c.beta * c.alpha);
            CHECK(std::abs(rep.g_unit_circle - expect) <= 1e-10);
        }
    }
}

TEST_CASE("random feasible perturbations do not lower I") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const Combo c : {Combo{10.0, 2.0, 0.0}, Combo{10.0, 1.0, 0.5}, Combo{20.0, 2.0, 2.0}, Combo{20.0, 1.0, 4.0}}) {
        const auto m = WeightModel::make(c.beta);
        const auto mu = minimizer_measure(c.alpha, m, c.p);
        const double base = i_functional(mu, c.alpha, m);
        const double r_max = std::pow(c.alpha, 1.0 / c.beta);
        for (int trial = 0; trial < 25; ++trial) {
            const double eps = 0.2 * u(rng);
            RadialMeasure nu = mu;
            for (auto& a : nu.atoms) a.mass *= 1.0 - eps;
            for (auto& pc : nu.pieces) pc.coeff *= 1.0 - eps;
            const int k = 1 + static_cast<int>(3 * u(rng));
            std::vector<double> frac(static_cast<std::size_t>(k));
            double tot = 0.0;
            for (auto& v : frac) tot += (v = u(rng) + 0.05);
            for (auto& v : frac) v /= tot;
            if (c.p >= 1.0) {
                const double f0 = c.p / c.alpha + (1.0 - c.p / c.alpha) * u(rng);
                const double rest = 1.0 - frac[0];
                for (std::size_t j = 1; j < frac.size(); ++j) frac[j] *= rest > 0.0 ? (1.0 - f0) / rest : 0.0;
                frac[0] = k == 1 ? 1.0 : f0;
            }
            for (int j = 0; j < k; ++j) {
                double radius;
                if (c.p < 1.0) {
                    radius = 1.0 + (1.5 * r_max - 1.0) * u(rng);
                } else if (j == 0) {
                    radius = 0.05 + 0.95 * u(rng);
                } else {
                    radius = 0.05 + 1.5 * r_max * u(rng);
                }
                nu.atoms.push_back({radius, eps * frac[static_cast<std::size_t>(j)]});
            }
            CHECK(std::abs(nu.total_mass() - 1.0) <= 1e-12);
            if (c.p < 1.0) {
                REQUIRE(nu.band_mass(-1.0, 1.0) <= c.p / c.alpha + 1e-12);
            } else {
                REQUIRE(nu.closed_disk_mass(1.0) >= c.p / c.alpha - 1e-12);
            }
            CHECK(i_functional(nu, c.alpha, m) >= base - 1e-10);
        }
    }
}

TEST_CASE("integration against radial measures") {
    const auto m2 = WeightModel::make(2.0);
    const auto mu = minimizer_measure(10.0, m2, 0.0);
    CHECK(integrate(mu, [](cplx) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-12));
    const auto lim = limiting_measure(m2, 0.0);
    // mass of the disk of radius 3: beta R^beta / 2
    CHECK(integrate(lim, [](cplx) { return 1.0; }, 3.0) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK_THROWS_AS(integrate(lim, [](cplx) { return 1.0; }), ParameterError);
}
