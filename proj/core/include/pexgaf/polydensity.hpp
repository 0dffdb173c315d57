#pragma once

#include <cstdint>
#include <vector>

#include "pexgaf/gaf.hpp"
#include "pexgaf/special.hpp"

namespace pexgaf {

/// Degree N, scale L and the log normalization of the joint zero density of
/// P_{N,L}(z) = sum_k xi_k a_k (L z)^k.
struct PolyDensityParams {
    std::int64_t n_deg = 1;
    double l_scale = 1.0;
    WeightModel model;
    // ln N! + sum_{k<=N} ln Gamma(2(k+1)/beta) - N ln pi - (N+1) ln Gamma(2/beta) - N(N+1) ln L
    double log_a_nl = 0.0;
};

PolyDensityParams make_poly_density_params(std::int64_t n_deg, double l_scale,
                                           const WeightModel& model);

/// ln of the 2k-th absolute moment of nu_L: Gamma(2(k+1)/beta) / (Gamma(2/beta) L^{2k}).
double log_nu_moment(std::int64_t k, const PolyDensityParams& params);
double nu_moment(std::int64_t k, const PolyDensityParams& params);

/// ln of the integral of prod_j |w - z_j|^2 against nu_L, through the monomial
/// expansion of prod_j (w - z_j) rescaled by max(1, max_j |z_j|).
double log_weighted_norm(const std::vector<cplx>& zbar, const PolyDensityParams& params);
double weighted_norm(const std::vector<cplx>& zbar, const PolyDensityParams& params);

/// ln S(zbar), identical to log_weighted_norm.
double s_functional(const std::vector<cplx>& zbar, const PolyDensityParams& params);

/// sum_{j != k} ln |z_j - z_k|; -inf for coincident zeros.
double log_vandermonde(const std::vector<cplx>& zbar);

/// Joint density of the zeros in uniformly random order, in the normalization with
/// the factor N! included (it integrates to N! over C^N). Requires N <= 6.
double joint_density(const std::vector<cplx>& zbar, const PolyDensityParams& params);
double log_joint_density(const std::vector<cplx>& zbar, const PolyDensityParams& params);

/// ln A(zbar) = max_w (2 sum_j ln |w - z_j| - L^beta |w|^beta).
///
/// Polar grid of 256 angles by 512 radii on |w| <= 2 (2N/(beta L^beta))^{1/beta}, followed
/// by compass refinement of the best grid points. The disk is doubled while the maximizer
/// sits on its boundary. The result is a lower bound on the true maximum, within 1e-6.
double a_functional(const std::vector<cplx>& zbar, const PolyDensityParams& params);

/// I*(zbar) = ln A / N - sum_{j != k} ln |z_j - z_k| / N^2; +inf for coincident zeros.
double i_star(const std::vector<cplx>& zbar, const PolyDensityParams& params);

} // namespace pexgaf
