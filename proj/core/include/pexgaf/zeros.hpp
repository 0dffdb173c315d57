#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pexgaf/gaf.hpp"

namespace pexgaf {

enum class RootMethod { companion, argument_principle };

/// Zeros of a truncated sample inside the closed disk of radius `radius`.
struct ZeroSet {
    std::vector<cplx> zeros;  // with multiplicity
    double radius = 0.0;
    double residual_max = 0.0;       // max |P(u_j)| of the scaled polynomial over retained zeros
    double max_coefficient = 0.0;    // max |c_k| of the scaled polynomial
    RootMethod method = RootMethod::companion;
    std::int64_t discarded_exterior = 0;
    std::int64_t dropped_leading = 0;  // negligible leading coefficients removed (explicit degree reduction)
    std::int64_t effective_degree = 0;
};

/// Roots of the scaled polynomial of `sample` with |z| <= search_radius (1 + 1e-12).
///
/// Leading coefficients below 1e-300 are removed and counted in `dropped_leading`;
/// an identically zero polynomial raises DegenerateDegreeError. Requires
/// search_radius <= 2 B r and degree <= 2000 (ParameterError otherwise).
ZeroSet find_zeros(const GafSample& sample, double search_radius);

/// Same for an arbitrary rescaled polynomial, without the plan-based radius cap.
ZeroSet find_zeros(const ScaledPolynomial& poly, double search_radius);

struct ArgumentCount {
    std::int64_t count = 0;
    double radius_used = 0.0;  // r, or the nudged radius
    int nudges = 0;
    std::int64_t evaluations = 0;
};

/// Winding number of P on |z| = r by certified phase tracking: each arc step is short
/// enough that P stays inside the disk of radius |P(z_a)|/2 around P(z_a).
/// Retries at r(1+1e-6), r(1-1e-6), r(1+2e-6) when a zero is within 1e-9 r of the
/// contour; throws ContourError if all three nudges fail.
ArgumentCount count_zeros_argument_detail(const ScaledPolynomial& poly, double r);
std::int64_t count_zeros_argument(const GafSample& sample, double r);

/// Fixed catalogue of compactly supported smooth test functions.
class TestFunction {
public:
    enum class Kind { radial_bump, mollified_annulus, poly_bump };

    /// exp(1 - 1/(1 - s^2)) profile in s = (|z| - center)/half_width. Requires
    /// center == 0 or center >= half_width so that the function is smooth.
    static TestFunction radial_bump(double center, double half_width);
    /// Equals 1 on [r_in + eps, r_out - eps], 0 outside (r_in, r_out), smooth steps
    /// in between. r_in = 0 gives a mollified disk indicator.
    static TestFunction mollified_annulus(double r_in, double r_out, double eps);
    /// (c0 + c1 Re z + c2 Im z) times the disk bump of radius half_width.
    static TestFunction poly_bump(double half_width, double c0, double c1, double c2);
    /// Catalogue lookup for the CLI: "bump", "annulus", "polybump".
    static TestFunction from_name(const std::string& name, const std::vector<double>& params);

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    double support_radius() const { return support_radius_; }
    double operator()(cplx z) const;
    /// Gradient (d/dx, d/dy).
    std::pair<double, double> gradient(cplx z) const;
    /// Integral of |grad phi|^2 over the plane.
    double dirichlet_energy() const { return dirichlet_energy_; }
    /// Upper bound on sup{|phi(x) - phi(y)| : |x - y| <= t}.
    double modulus_of_continuity(double t) const;
    bool is_radial() const { return kind_ != Kind::poly_bump; }
    /// Radial profile phi(x) for radial kinds.
    double radial_value(double x) const;
    double radial_derivative(double x) const;
    const std::vector<double>& params() const { return params_; }

private:
    TestFunction() = default;
    void finalize();

    Kind kind_ = Kind::radial_bump;
    std::string name_;
    std::vector<double> params_;
    double support_radius_ = 0.0;
    double dirichlet_energy_ = 0.0;
    double lipschitz_ = 0.0;
    double oscillation_ = 0.0;
};

/// n(phi; r) = sum_j phi(z_j / r). Throws CoverageError unless zset.radius >= r B.
double linear_statistic(const ZeroSet& zset, const TestFunction& phi, double r);

} // namespace pexgaf
