#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "pexgaf/special.hpp"

namespace pexgaf {

using cplx = std::complex<double>;

/// Polynomial in the rescaled variable u = z / rho0 with coefficients
/// c_k = xi_k a_k rho0^k, so that sum_k c_k u^k = sum_k xi_k a_k z^k.
struct ScaledPolynomial {
    double rho0 = 1.0;
    std::vector<cplx> c;

    cplx eval_u(cplx u) const;
    /// Value and derivative with respect to u.
    std::pair<cplx, cplx> eval_u_with_derivative(cplx u) const;
    /// sum_k |c_k| rho^k, the majorant of |P| on |u| = rho.
    double abs_sum(double rho) const;
    /// sum_k k |c_k| rho^{k-1}, the majorant of |P'| on |u| = rho.
    double abs_derivative_sum(double rho) const;
    double max_abs_coefficient() const;
};

/// One realization of the truncated power series of F_beta.
struct GafSample {
    WeightModel model;
    TruncationPlan plan;
    std::vector<cplx> xi;  // xi_0 .. xi_N
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
    ScaledPolynomial poly;  // rescaled at rho0 = plan.r
};

/// i.i.d. standard complex Gaussians (real and imaginary parts N(0, 1/2)) for the
/// substream (seed, stream_id). The first n values do not depend on `count`.
std::vector<cplx> draw_xi(std::uint64_t seed, std::uint64_t stream_id, std::size_t count);

/// Builds the scaled polynomial for arbitrary coefficients xi at reference radius rho0.
ScaledPolynomial make_scaled_polynomial(const std::vector<cplx>& xi, const WeightModel& model,
                                        double rho0);

GafSample sample_gaf(const WeightModel& model, const TruncationPlan& plan, std::uint64_t seed,
                     std::uint64_t stream_id);

/// Sample with caller-supplied coefficients (length must be plan.n_trunc + 1).
GafSample make_sample(const WeightModel& model, const TruncationPlan& plan,
                      std::vector<cplx> xi);

/// P_N(z) = sum_{k<=N} xi_k a_k z^k, by Horner in u = z / plan.r.
/// Throws DomainError for non-finite z or |z| > 4 B r.
cplx evaluate_truncated(const GafSample& sample, cplx z);

/// Tail bound exp((N/beta) log(4 B^beta / alpha)) kept in log form.
struct TailBound {
    double log_value = 0.0;
    double value() const;
};

/// Requires plan.alpha >= (4 plan.big_b)^beta, otherwise ParameterError.
TailBound tail_bound(const TruncationPlan& plan, const WeightModel& model);

/// log |sum_{k=first}^{last} xi_k a_k z^k| using the supplied coefficient sequence
/// (which must have at least last+1 entries). Returns -inf at z = 0 when first > 0.
double log_partial_sum_modulus(const std::vector<cplx>& xi, std::int64_t first,
                               std::int64_t last, const WeightModel& model, cplx z);

/// log K_N(x) where K_N(x) = sum_{k<=N} x^{2k} / Gamma(2(k+1)/beta).
double log_kernel_diag(const WeightModel& model, std::int64_t n_trunc, double x);
double kernel_diag(const WeightModel& model, std::int64_t n_trunc, double x);

/// First intensity (1/4pi) Laplacian log K_N at |z| = x, by central differences.
double first_intensity(const WeightModel& model, std::int64_t n_trunc, double x);

/// Expected number of zeros of P_N in D(0, r): integral of first_intensity over the disk.
double expected_zero_count(const WeightModel& model, std::int64_t n_trunc, double r);

} // namespace pexgaf
