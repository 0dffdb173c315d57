#include "pexgaf/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pexgaf/error.hpp"

namespace pexgaf {

namespace {

constexpr double kNegligible = 1e-300;
constexpr std::int64_t kMaxDegree = 2000;

// Eigenvalues of the companion matrix of the monic polynomial with coefficients
// a_0..a_{n-1} (in increasing degree), after diagonal balancing.
std::vector<cplx> companion_roots(const std::vector<cplx>& coeffs) {
    const auto n = static_cast<lapack_int>(coeffs.size() - 1);
    const cplx lead = coeffs.back();
    std::vector<cplx> h(static_cast<std::size_t>(n) * n, cplx{0.0, 0.0});
    for (lapack_int j = 0; j < n; ++j) {
        h[static_cast<std::size_t>(j) * n] = -coeffs[static_cast<std::size_t>(n - 1 - j)] / lead;
    }
    for (lapack_int i = 0; i + 1 < n; ++i) h[static_cast<std::size_t>(i) * n + i + 1] = 1.0;

    lapack_int ilo = 1;
    lapack_int ihi = n;
    std::vector<double> scale(static_cast<std::size_t>(n));
    if (LAPACKE_zgebal(LAPACK_COL_MAJOR, 'S', n, h.data(), n, &ilo, &ihi, scale.data()) != 0) {
        throw ConvergenceError("companion balancing failed");
    }
    std::vector<cplx> w(static_cast<std::size_t>(n));
    cplx dummy{};
    const lapack_int info = LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'E', 'N', n, ilo, ihi, h.data(), n,
                                           w.data(), &dummy, 1);
    if (info != 0) throw ConvergenceError("companion eigenvalue iteration did not converge");
    return w;
}

cplx horner(const std::vector<cplx>& c, cplx u) {
    cplx acc{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
    return acc;
}

// Newton refinement of the roots with |u| <= u_max; the others are left as computed.
void polish(const std::vector<cplx>& c, std::vector<cplx>& roots, double u_max) {
    const std::size_t n = roots.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(roots[i]) > u_max) continue;
        double sep = INFINITY;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) sep = std::min(sep, std::abs(roots[i] - roots[j]));
        }
        const cplx start = roots[i];
        cplx u = start;
        double best = std::abs(horner(c, u));
        cplx best_u = u;
        for (int it = 0; it < 8; ++it) {
            cplx p{0.0, 0.0};
            cplx dp{0.0, 0.0};
            for (auto k = c.rbegin(); k != c.rend(); ++k) {
                dp = dp * u + p;
                p = p * u + *k;
            }
            if (dp == cplx{0.0, 0.0}) break;
            const cplx step = p / dp;
            u -= step;
            if (std::abs(u - start) > 0.25 * sep) break;
            const double res = std::abs(horner(c, u));
            if (res < best) {
                best = res;
                best_u = u;
            }
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(u))) break;
        }
        roots[i] = best_u;
    }
}

} // namespace

ZeroSet find_zeros(const ScaledPolynomial& poly, double search_radius) {
    if (!(search_radius > 0.0)) throw ParameterError("search radius must be positive");
    std::vector<cplx> c = poly.c;
    ZeroSet out;
    out.radius = search_radius;
    out.method = RootMethod::companion;
    out.max_coefficient = poly.max_abs_coefficient();

    while (!c.empty() && std::abs(c.back()) < kNegligible) {
        c.pop_back();
        ++out.dropped_leading;
    }
    if (c.empty()) throw DegenerateDegreeError("polynomial is identically zero");
    const auto degree = static_cast<std::int64_t>(c.size()) - 1;
    if (degree > kMaxDegree) {
        throw ParameterError("find_zeros supports degree <= 2000, got " + std::to_string(degree));
    }
    out.effective_degree = degree;

    std::size_t zero_roots = 0;
    while (zero_roots < c.size() - 1 && std::abs(c[zero_roots]) < kNegligible) ++zero_roots;
    std::vector<cplx> reduced(c.begin() + static_cast<std::ptrdiff_t>(zero_roots), c.end());

    std::vector<cplx> roots_u;
    if (reduced.size() > 1) {
        roots_u = companion_roots(reduced);
        polish(reduced, roots_u, 1.01 * search_radius / poly.rho0);
    }
    roots_u.insert(roots_u.end(), zero_roots, cplx{0.0, 0.0});

    const double limit = search_radius * (1.0 + 1e-12);
    for (const cplx& u : roots_u) {
        const cplx z = u * poly.rho0;
        if (std::abs(z) <= limit) {
            out.zeros.push_back(z);
            out.residual_max = std::max(out.residual_max, std::abs(horner(c, u)));
        } else {
            ++out.discarded_exterior;
        }
    }
    return out;
}

ZeroSet find_zeros(const GafSample& sample, double search_radius) {
    if (search_radius > 2.0 * sample.plan.big_b * sample.plan.r * (1.0 + 1e-12)) {
        throw ParameterError("find_zeros: search radius exceeds 2 B r");
    }
    return find_zeros(sample.poly, search_radius);
}

namespace {

struct Winding {
    bool ok = false;
    std::int64_t count = 0;
    std::int64_t evaluations = 0;
};

Winding winding_on_circle(const ScaledPolynomial& poly, double rho, double min_distance_u) {
    constexpr std::int64_t kMaxEvaluations = 4'000'000;
    const double two_pi = 2.0 * std::numbers::pi;
    const double deriv_bound = std::max(poly.abs_derivative_sum(rho), 1e-300);
    Winding w;
    double theta = 0.0;
    auto [p_prev, dp_prev] = poly.eval_u_with_derivative(std::polar(rho, 0.0));
    w.evaluations = 1;
    double total = 0.0;
    while (theta < two_pi) {
        const double mag = std::abs(p_prev);
        const double dmag = std::abs(dp_prev);
        if (mag == 0.0 || (dmag > 0.0 && mag / dmag < min_distance_u)) return w;
        double step = 0.5 * mag / (deriv_bound * rho);
        step = std::min(step, 0.25);
        if (theta + step > two_pi) step = two_pi - theta;
        if (step < 1e-14) return w;
        theta += step;
        const auto [p, dp] = poly.eval_u_with_derivative(std::polar(rho, theta));
        total += std::arg(p / p_prev);
        p_prev = p;
        dp_prev = dp;
        if (++w.evaluations > kMaxEvaluations) return w;
    }
    w.ok = true;
    w.count = std::llround(total / two_pi);
    return w;
}

} // namespace

ArgumentCount count_zeros_argument_detail(const ScaledPolynomial& poly, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ParameterError("contour radius must be positive");
    const double factors[] = {1.0, 1.0 + 1e-6, 1.0 - 1e-6, 1.0 + 2e-6};
    ArgumentCount result;
    for (int attempt = 0; attempt < 4; ++attempt) {
        const double radius = r * factors[attempt];
        const double rho = radius / poly.rho0;
        const Winding w = winding_on_circle(poly, rho, 1e-9 * r / poly.rho0);
        result.evaluations += w.evaluations;
        if (w.ok) {
            result.count = w.count;
            result.radius_used = radius;
            result.nudges = attempt;
            return result;
        }
    }
    throw ContourError("zero within 1e-9 r of the contour |z| = " + std::to_string(r) +
                       " persisted after 3 radius nudges");
}

std::int64_t count_zeros_argument(const GafSample& sample, double r) {
    return count_zeros_argument_detail(sample.poly, r).count;
}

// ---------------------------------------------------------------------------
// Test functions

namespace {

double bump(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double bump_derivative(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    const double d = 1.0 - s * s;
    return bump(s) * (-2.0 * s / (d * d));
}

double step_f(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double step_f_derivative(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = step_f(t);
    const double b = step_f(1.0 - t);
    return a / (a + b);
}

double smooth_step_derivative(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double a = step_f(t);
    const double b = step_f(1.0 - t);
    const double da = step_f_derivative(t);
    const double db = -step_f_derivative(1.0 - t);
    return (da * b - a * db) / ((a + b) * (a + b));
}

} // namespace

TestFunction TestFunction::radial_bump(double center, double half_width) {
    if (!(half_width > 0.0) || center < 0.0 || (center > 0.0 && center < half_width)) {
        throw ParameterError("radial bump needs half_width > 0 and center == 0 or >= half_width");
    }
    TestFunction f;
    f.kind_ = Kind::radial_bump;
    f.name_ = "bump";
    f.params_ = {center, half_width};
    f.support_radius_ = center + half_width;
    f.finalize();
    return f;
}

TestFunction TestFunction::mollified_annulus(double r_in, double r_out, double eps) {
    if (r_in < 0.0 || !(eps > 0.0) || !(r_out - r_in >= 2.0 * eps)) {
        throw ParameterError("mollified annulus needs 0 <= r_in, eps > 0, r_out - r_in >= 2 eps");
    }
    TestFunction f;
    f.kind_ = Kind::mollified_annulus;
    f.name_ = "annulus";
    f.params_ = {r_in, r_out, eps};
    f.support_radius_ = r_out;
    f.finalize();
    return f;
}

TestFunction TestFunction::poly_bump(double half_width, double c0, double c1, double c2) {
    if (!(half_width > 0.0)) throw ParameterError("poly bump needs half_width > 0");
    TestFunction f;
    f.kind_ = Kind::poly_bump;
    f.name_ = "polybump";
    f.params_ = {half_width, c0, c1, c2};
    f.support_radius_ = half_width;
    f.finalize();
    return f;
}

TestFunction TestFunction::from_name(const std::string& name, const std::vector<double>& p) {
    auto need = [&](std::size_t n) {
        if (p.size() != n) {
            throw ParameterError("test function '" + name + "' expects " + std::to_string(n) +
                                 " parameters");
        }
    };
    if (name == "bump") {
        need(2);
        return radial_bump(p[0], p[1]);
    }
    if (name == "annulus") {
        need(3);
        return mollified_annulus(p[0], p[1], p[2]);
    }
    if (name == "polybump") {
        need(4);
        return poly_bump(p[0], p[1], p[2], p[3]);
    }
    throw ParameterError("unknown test function '" + name + "' (bump, annulus, polybump)");
}

double TestFunction::radial_value(double x) const {
    switch (kind_) {
        case Kind::radial_bump:
            return bump((x - params_[0]) / params_[1]);
        case Kind::mollified_annulus: {
            const double r_in = params_[0];
            const double r_out = params_[1];
            const double eps = params_[2];
            const double outer = smooth_step((r_out - x) / eps);
            if (r_in == 0.0) return outer;
            return smooth_step((x - r_in) / eps) * outer;
        }
        case Kind::poly_bump:
            break;
    }
    throw ParameterError("radial profile requested for a non-radial test function");
}

double TestFunction::radial_derivative(double x) const {
    switch (kind_) {
        case Kind::radial_bump:
            return bump_derivative((x - params_[0]) / params_[1]) / params_[1];
        case Kind::mollified_annulus: {
            const double r_in = params_[0];
            const double r_out = params_[1];
            const double eps = params_[2];
            const double outer = smooth_step((r_out - x) / eps);
            const double d_outer = -smooth_step_derivative((r_out - x) / eps) / eps;
            if (r_in == 0.0) return d_outer;
            const double inner = smooth_step((x - r_in) / eps);
            const double d_inner = smooth_step_derivative((x - r_in) / eps) / eps;
            return d_inner * outer + inner * d_outer;
        }
        case Kind::poly_bump:
            break;
    }
    throw ParameterError("radial profile requested for a non-radial test function");
}

double TestFunction::operator()(cplx z) const {
    const double x = std::abs(z);
    if (kind_ == Kind::poly_bump) {
        const double w = params_[0];
        return (params_[1] + params_[2] * z.real() + params_[3] * z.imag()) * bump(x / w);
    }
    return radial_value(x);
}

std::pair<double, double> TestFunction::gradient(cplx z) const {
    const double x = std::abs(z);
    if (kind_ == Kind::poly_bump) {
        const double w = params_[0];
        const double p = params_[1] + params_[2] * z.real() + params_[3] * z.imag();
        const double b = bump(x / w);
        double gx = params_[2] * b;
        double gy = params_[3] * b;
        if (x > 0.0) {
            const double db = bump_derivative(x / w) / w;
            gx += p * db * z.real() / x;
            gy += p * db * z.imag() / x;
        }
        return {gx, gy};
    }
    if (x == 0.0) return {0.0, 0.0};
    const double d = radial_derivative(x);
    return {d * z.real() / x, d * z.imag() / x};
}

void TestFunction::finalize() {
    using boost::math::quadrature::gauss_kronrod;
    const double B = support_radius_;
    constexpr int kRadial = 20001;
    if (is_radial()) {
        auto integrand = [&](double x) {
            const double d = radial_derivative(x);
            return 2.0 * std::numbers::pi * x * d * d;
        };
        // Split at the kinks of the profile's support so each panel is smooth.
        std::vector<double> cuts;
        if (kind_ == Kind::radial_bump) {
            cuts = {std::max(0.0, params_[0] - params_[1]), params_[0], B};
        } else {
            const double r_in = params_[0];
            const double r_out = params_[1];
            const double eps = params_[2];
            cuts = {r_in, r_in + eps, r_out - eps, r_out};
        }
        double energy = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (cuts[i + 1] > cuts[i]) {
                energy += gauss_kronrod<double, 61>::integrate(integrand, cuts[i], cuts[i + 1], 15,
                                                               1e-12);
            }
        }
        dirichlet_energy_ = energy;
        double g = 0.0;
        double lo = INFINITY;
        double hi = -INFINITY;
        for (int i = 0; i < kRadial; ++i) {
            const double x = B * i / (kRadial - 1);
            g = std::max(g, std::abs(radial_derivative(x)));
            const double v = radial_value(x);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        lo = std::min(lo, 0.0);
        lipschitz_ = 1.02 * g;
        oscillation_ = hi - lo;
        return;
    }
    // Non-radial: polar grid for the gradient supremum, nested quadrature for the energy.
    constexpr int kAngles = 128;
    auto ring = [&](double x) {
        double acc = 0.0;
        for (int j = 0; j < kAngles; ++j) {
            const double th = 2.0 * std::numbers::pi * j / kAngles;
            const auto [gx, gy] = gradient(std::polar(x, th));
            acc += gx * gx + gy * gy;
        }
        return acc * (2.0 * std::numbers::pi / kAngles) * x;
    };
    dirichlet_energy_ = gauss_kronrod<double, 61>::integrate(ring, 0.0, B, 15, 1e-12);
    double g = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double x = B * i / 400.0;
        for (int j = 0; j < 256; ++j) {
            const cplx z = std::polar(x, 2.0 * std::numbers::pi * j / 256.0);
            const auto [gx, gy] = gradient(z);
            g = std::max(g, std::hypot(gx, gy));
            const double v = (*this)(z);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    lipschitz_ = 1.05 * g;
    oscillation_ = 1.05 * (hi - lo);
}

double TestFunction::modulus_of_continuity(double t) const {
    if (t < 0.0) throw DomainError("modulus of continuity needs t >= 0");
    return std::min(lipschitz_ * t, oscillation_);
}

double linear_statistic(const ZeroSet& zset, const TestFunction& phi, double r) {
    if (!(r > 0.0)) throw ParameterError("linear_statistic needs r > 0");
    if (zset.radius < r * phi.support_radius() * (1.0 - 1e-12)) {
        throw CoverageError("zero set radius " + std::to_string(zset.radius) +
                            " does not cover the test function support " +
                            std::to_string(r * phi.support_radius()));
    }
    double acc = 0.0;
    for (const cplx& z : zset.zeros) acc += phi(z / r);
    return acc;
}

} // namespace pexgaf
