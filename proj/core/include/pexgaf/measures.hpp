#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "pexgaf/gaf.hpp"
#include "pexgaf/special.hpp"

namespace pexgaf {

/// Uniform probability measure on the circle |z| = radius, scaled by mass.
struct CircleAtom {
    double radius = 1.0;
    double mass = 0.0;
};

/// coeff times the radial measure (beta/2pi) t^{beta-1} dt dtheta restricted to
/// r_in <= |z| <= r_out; its mass is coeff (r_out^beta - r_in^beta). r_out may be +inf.
struct AnnulusPiece {
    double r_in = 0.0;
    double r_out = 1.0;
    double coeff = 0.0;
};

struct RadialMeasure {
    std::vector<CircleAtom> atoms;
    std::vector<AnnulusPiece> pieces;
    double beta = 2.0;

    bool bounded() const;
    /// +inf when a piece is unbounded.
    double total_mass() const;
    /// Mass of {a < |z| < b} (open band; atoms on the boundary excluded).
    double band_mass(double a, double b) const;
    /// Mass of the closed disk {|z| <= x}.
    double closed_disk_mass(double x) const;
};

enum class Regime { p_eq_0, p_lt_1, p_in_1_e, p_ge_e };
std::string to_string(Regime regime);

struct HoleParams {
    double p = 0.0;
    double q = 0.0;
    double z_p = 0.0;
    Regime regime = Regime::p_eq_0;
};

/// Conjugate level: q = e at p = 0, the other root of x(log x - 1) = p(log p - 1) for
/// 0 < p < e, and q = 0 for p >= e. Throws ParameterError at p = 1, DomainError for p < 0.
double q_of_p(double p);
/// Hole-probability rate constant Z_p.
double z_of_p(double p);
HoleParams hole_params(double p);

/// Constrained minimizer of I_{alpha,beta} for the level p (p != 1, 0 <= p < alpha, alpha > e).
RadialMeasure minimizer_measure(double alpha, const WeightModel& model, double p);

/// (beta/2) (q - p) on the unit circle plus (beta/2) m-hat on |z| <= p^{1/beta} and on
/// |z| >= q^{1/beta} (unbounded). Only 0 <= p < 1 is supported.
RadialMeasure limiting_measure(const WeightModel& model, double p);

/// Closed-form potential of minimizer_measure(alpha, model, p) at |w| = x.
double potential_closed(const RadialMeasure& mu, double alpha, const WeightModel& model, double p,
                        double x);

/// Exact potential of any radial measure via the circle average log max(|w|, t).
/// Unbounded pieces need a finite `truncation` radius (ParameterError otherwise).
double potential_quadrature(const RadialMeasure& mu, double x,
                            double truncation = std::numeric_limits<double>::infinity());

/// B_{alpha,beta}(mu) = 2 sup_w (U_mu(w) - |w|^beta/(beta alpha)), searched on
/// [0, alpha^{1/beta}] with a 2000-point grid and golden-section refinement.
double b_functional(const RadialMeasure& mu, double alpha, const WeightModel& model);

/// Logarithmic energy Sigma(mu) in closed form.
double log_energy(const RadialMeasure& mu);

/// I_{alpha,beta}(mu) = B_{alpha,beta}(mu) - Sigma(mu).
double i_functional(const RadialMeasure& mu, double alpha, const WeightModel& model);

/// Closed-form minimum (1/beta)(log alpha - 3/2) + 2 Z_p / (beta alpha^2).
double i_closed_form(double alpha, const WeightModel& model, double p);

struct EnergyReport {
    double b_value = 0.0;
    double sigma_value = 0.0;
    double i_value = 0.0;
    double g_max = 0.0;
    double g_support_dev = 0.0;
    double g_unit_circle = 0.0;
    std::vector<double> probe_grid;
};

/// g_mu(x) = U_mu(x) - x^beta/(beta alpha) - B/2 on the probe grid [0, 1.5 alpha^{1/beta}]
/// and on the support pieces of mu.
EnergyReport equilibrium_report(const RadialMeasure& mu, double alpha, const WeightModel& model,
                                double p);

/// Integral of f over mu. Atoms use a 256-point trapezoid rule in the angle; pieces are
/// integrated in T = t^beta with adaptive Gauss-Kronrod, split at `breakpoints` (radii).
/// Pieces are cut at `cutoff`, which must be finite for unbounded measures.
double integrate(const RadialMeasure& mu, const std::function<double(cplx)>& f,
                 double cutoff = std::numeric_limits<double>::infinity(),
                 const std::vector<double>& breakpoints = {});

} // namespace pexgaf
