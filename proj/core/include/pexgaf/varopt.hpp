#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pexgaf/measures.hpp"
#include "pexgaf/special.hpp"

namespace pexgaf {

/// Probability measure made of uniform circle measures at the grid radii.
struct DiscretizedRadialMeasure {
    std::vector<double> grid;     // strictly increasing radii in (0, R_max]
    std::vector<double> weights;  // nonnegative, summing to 1

    RadialMeasure to_radial_measure(double beta) const;
    /// Mass on grid radii strictly inside (a, b).
    double band_mass(double a, double b) const;
};

enum class MassConstraint {
    mass_inside_le,         // mu(open unit disk) <= p/alpha
    mass_closed_inside_ge,  // mu(closed unit disk) >= p/alpha
};

/// The constraint the minimizer of level p is characterized under.
MassConstraint constraint_for(double p);

/// K_ij = log max(r_i, r_j); Sigma = w^T K w for circle-atom measures.
Eigen::MatrixXd energy_matrix(const std::vector<double>& grid);

/// Geometric radii on [r_min, alpha^{1/beta}] with r_min = 1e-3 alpha^{1/beta}, with the
/// nearest nodes replaced by the exact radii 1, p^{1/beta} and q^{1/beta} where defined.
std::vector<double> make_varopt_grid(double alpha, const WeightModel& model, double p,
                                     std::size_t grid_size);

/// J(w) = 2 sup_x (U_w(x) - x^beta/(beta alpha)) - w^T K w. The supremum is evaluated
/// exactly: between consecutive radii U_w is a + b log x, so each interval has one
/// closed-form stationary point.
double varopt_objective(const DiscretizedRadialMeasure& mu, double alpha, const WeightModel& model);

enum class VaroptMethod {
    interior_point,  // primal-dual QP on the epigraph form with the sup taken over probe radii
    subgradient,     // projected subgradient with diminishing steps and iterate averaging
};

struct VaroptOptions {
    std::size_t grid_size = 400;
    VaroptMethod method = VaroptMethod::interior_point;
    std::int64_t max_iters = 400000;  // subgradient iterations; the QP stops after 200
    double tol = 1e-6;                // objective decrease per window (subgradient)
    std::int64_t window = 200;
    std::size_t probes_per_interval = 4;
};

struct VaroptResult {
    DiscretizedRadialMeasure measure;
    double objective = 0.0;
    bool converged = false;
    std::int64_t iterations = 0;
    double probe_objective = 0.0;  // objective with the sup restricted to the probe radii
};

/// Euclidean projection of y onto {w >= 0, sum w = 1} intersected with the block
/// constraint on `inside` indices (sum <= bound or sum >= bound).
std::vector<double> project_feasible(const std::vector<double>& y, const std::vector<bool>& inside,
                                     double bound, bool upper);

/// Minimizes J over grid measures satisfying the mass constraint. The reported objective
/// always uses the exact supremum. Throws ParameterError when p >= alpha or alpha <= e, and when the grid is too small.
VaroptResult minimize_constrained(double alpha, const WeightModel& model, double p,
                                  MassConstraint constraint, const VaroptOptions& options = {});

} // namespace pexgaf
