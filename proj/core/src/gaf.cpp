#include "pexgaf/gaf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pexgaf/error.hpp"

namespace pexgaf {

cplx ScaledPolynomial::eval_u(cplx u) const {
    cplx acc{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
    return acc;
}

std::pair<cplx, cplx> ScaledPolynomial::eval_u_with_derivative(cplx u) const {
    cplx p{0.0, 0.0};
    cplx dp{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * u + p;
        p = p * u + *it;
    }
    return {p, dp};
}

double ScaledPolynomial::abs_sum(double rho) const {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * rho + std::abs(*it);
    return acc;
}

double ScaledPolynomial::abs_derivative_sum(double rho) const {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) {
        acc = acc * rho + static_cast<double>(k) * std::abs(c[k]);
    }
    return acc;
}

double ScaledPolynomial::max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& v : c) m = std::max(m, std::abs(v));
    return m;
}

std::vector<cplx> draw_xi(std::uint64_t seed, std::uint64_t stream_id, std::size_t count) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32), 0x9e3779b9u};
    std::mt19937_64 engine(seq);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    std::vector<cplx> xi(count);
    for (auto& v : xi) {
        const double re = normal(engine);
        const double im = normal(engine);
        v = cplx(re, im);
    }
    return xi;
}

ScaledPolynomial make_scaled_polynomial(const std::vector<cplx>& xi, const WeightModel& model,
                                        double rho0) {
    ScaledPolynomial poly;
    poly.rho0 = rho0;
    poly.c.resize(xi.size());
    const double log_rho = std::log(rho0);
    for (std::size_t k = 0; k < xi.size(); ++k) {
        const auto kk = static_cast<std::int64_t>(k);
        poly.c[k] = xi[k] * std::exp(log_coefficient(kk, model) + static_cast<double>(k) * log_rho);
    }
    return poly;
}

GafSample make_sample(const WeightModel& model, const TruncationPlan& plan, std::vector<cplx> xi) {
    if (xi.size() != static_cast<std::size_t>(plan.n_trunc + 1)) {
        throw ParameterError("coefficient vector length must equal n_trunc + 1");
    }
    GafSample s;
    s.model = model;
    s.plan = plan;
    s.xi = std::move(xi);
    s.poly = make_scaled_polynomial(s.xi, model, plan.r);
    return s;
}

GafSample sample_gaf(const WeightModel& model, const TruncationPlan& plan, std::uint64_t seed,
                     std::uint64_t stream_id) {
    if (plan.n_trunc < 1 || !(plan.r > 0.0)) throw ParameterError("invalid truncation plan");
    GafSample s = make_sample(model, plan,
                              draw_xi(seed, stream_id, static_cast<std::size_t>(plan.n_trunc + 1)));
    s.seed = seed;
    s.stream_id = stream_id;
    return s;
}

cplx evaluate_truncated(const GafSample& sample, cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("evaluate_truncated: non-finite evaluation point");
    }
    if (std::abs(z) > 4.0 * sample.plan.big_b * sample.plan.r * (1.0 + 1e-12)) {
        throw DomainError("evaluate_truncated: |z| exceeds 4 B r");
    }
    return sample.poly.eval_u(z / sample.poly.rho0);
}

double TailBound::value() const { return std::exp(log_value); }

TailBound tail_bound(const TruncationPlan& plan, const WeightModel& model) {
    const double required = std::pow(4.0 * plan.big_b, model.beta);
    if (plan.alpha < required) {
        throw ParameterError("tail bound needs alpha >= (4B)^beta (alpha = " +
                             std::to_string(plan.alpha) + ", (4B)^beta = " +
                             std::to_string(required) + ")");
    }
    TailBound tb;
    tb.log_value = (static_cast<double>(plan.n_trunc) / model.beta) *
                   std::log(4.0 * std::pow(plan.big_b, model.beta) / plan.alpha);
    return tb;
}

double log_partial_sum_modulus(const std::vector<cplx>& xi, std::int64_t first,
                               std::int64_t last, const WeightModel& model, cplx z) {
    if (first < 0 || last < first || static_cast<std::size_t>(last) >= xi.size()) {
        throw ParameterError("log_partial_sum_modulus: index range outside coefficients");
    }
    const double mod = std::abs(z);
    if (mod == 0.0) {
        return first == 0 ? std::log(std::abs(xi[0])) + log_coefficient(0, model) : -INFINITY;
    }
    const double log_mod = std::log(mod);
    const double theta = std::arg(z);
    std::vector<double> logs(static_cast<std::size_t>(last - first + 1));
    double peak = -INFINITY;
    for (std::int64_t k = first; k <= last; ++k) {
        const double l = log_coefficient(k, model) + static_cast<double>(k) * log_mod;
        logs[static_cast<std::size_t>(k - first)] = l;
        peak = std::max(peak, l);
    }
    cplx acc{0.0, 0.0};
    for (std::int64_t k = first; k <= last; ++k) {
        const double w = std::exp(logs[static_cast<std::size_t>(k - first)] - peak);
        acc += xi[static_cast<std::size_t>(k)] * w * std::polar(1.0, static_cast<double>(k) * theta);
    }
    return peak + std::log(std::abs(acc));
}

double log_kernel_diag(const WeightModel& model, std::int64_t n_trunc, double x) {
    if (!(x >= 0.0) && !(x < 0.0)) throw DomainError("kernel_diag: NaN argument");
    const double ax = std::abs(x);
    if (ax == 0.0) return 2.0 * log_coefficient(0, model);
    const double lx = std::log(ax);
    double peak = -INFINITY;
    std::vector<double> terms(static_cast<std::size_t>(n_trunc + 1));
    for (std::int64_t k = 0; k <= n_trunc; ++k) {
        const double l = 2.0 * log_coefficient(k, model) + 2.0 * static_cast<double>(k) * lx;
        terms[static_cast<std::size_t>(k)] = l;
        peak = std::max(peak, l);
    }
    double acc = 0.0;
    for (double l : terms) acc += std::exp(l - peak);
    return peak + std::log(acc);
}

double kernel_diag(const WeightModel& model, std::int64_t n_trunc, double x) {
    if (x < 0.0) throw DomainError("kernel_diag requires x >= 0");
    return std::exp(log_kernel_diag(model, n_trunc, x));
}

double first_intensity(const WeightModel& model, std::int64_t n_trunc, double x) {
    if (x < 0.0) throw DomainError("first_intensity requires x >= 0");
    const double h = std::max(1e-4, 1e-4 * x);
    const double f0 = log_kernel_diag(model, n_trunc, x);
    const double fp = log_kernel_diag(model, n_trunc, x + h);
    if (x == 0.0) {
        // Radial f is even; Laplacian at the origin is 2 f''(0) = 4 (f(h) - f(0)) / h^2.
        return 4.0 * (fp - f0) / (h * h) / (4.0 * std::numbers::pi);
    }
    const double fm = log_kernel_diag(model, n_trunc, x - h);
    const double d2 = (fp - 2.0 * f0 + fm) / (h * h);
    const double d1 = (fp - fm) / (2.0 * h);
    return (d2 + d1 / x) / (4.0 * std::numbers::pi);
}

double expected_zero_count(const WeightModel& model, std::int64_t n_trunc, double r) {
    if (!(r >= 0.0)) throw DomainError("expected_zero_count requires r >= 0");
    if (r == 0.0) return 0.0;
    auto integrand = [&](double x) {
        return 2.0 * std::numbers::pi * x * first_intensity(model, n_trunc, x);
    };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, r, 12,
                                                                         1e-10);
}

} // namespace pexgaf
