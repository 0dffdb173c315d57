#include "pexgaf/polydensity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "pexgaf/error.hpp"

namespace pexgaf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_degree(const std::vector<cplx>& zbar, const PolyDensityParams& params) {
    if (static_cast<std::int64_t>(zbar.size()) != params.n_deg) {
        throw ParameterError("zero configuration length differs from the degree N");
    }
    for (const auto& z : zbar) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw DomainError("zero configuration contains a non-finite point");
        }
    }
}

double log_sum_exp(const std::vector<double>& terms) {
    double m = -kInf;
    for (double t : terms) m = std::max(m, t);
    if (m == -kInf) return -kInf;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - m);
    return m + std::log(s);
}

// ln |d_k| for prod_j (v - s_j) with |s_j| <= 1. Intermediate coefficients are bounded by
// binomial coefficients, so the working precision grows with the degree.
template <class Real>
std::vector<double> log_abs_expansion(const std::vector<cplx>& roots) {
    const std::size_t n = roots.size();
    std::vector<Real> re(n + 1, Real(0));
    std::vector<Real> im(n + 1, Real(0));
    re[0] = 1;
    for (std::size_t j = 0; j < n; ++j) {
        const Real sr = roots[j].real();
        const Real si = roots[j].imag();
        // multiply by (v - s): d_k <- d_{k-1} - s d_k
        for (std::size_t k = j + 1; k > 0; --k) {
            const Real nr = re[k - 1] - (sr * re[k] - si * im[k]);
            const Real ni = im[k - 1] - (sr * im[k] + si * re[k]);
            re[k] = nr;
            im[k] = ni;
        }
        const Real r0 = -(sr * re[0] - si * im[0]);
        const Real i0 = -(sr * im[0] + si * re[0]);
        re[0] = r0;
        im[0] = i0;
    }
    std::vector<double> out(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const Real m2 = re[k] * re[k] + im[k] * im[k];
        out[k] = m2 > 0 ? 0.5 * static_cast<double>(log(m2)) : -kInf;
    }
    return out;
}

std::vector<double> log_abs_expansion_double(const std::vector<cplx>& roots) {
    std::vector<cplx> d(roots.size() + 1, cplx(0.0, 0.0));
    d[0] = 1.0;
    for (std::size_t j = 0; j < roots.size(); ++j) {
        for (std::size_t k = j + 1; k > 0; --k) d[k] = d[k - 1] - roots[j] * d[k];
        d[0] = -roots[j] * d[0];
    }
    std::vector<double> out(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
        const double a = std::abs(d[k]);
        out[k] = a > 0.0 ? std::log(a) : -kInf;
    }
    return out;
}

using boost::multiprecision::cpp_bin_float;
using boost::multiprecision::number;
using Mp50 = number<cpp_bin_float<50>>;
using Mp140 = number<cpp_bin_float<140>>;
using Mp640 = number<cpp_bin_float<640>>;

std::vector<double> log_abs_expansion_any(const std::vector<cplx>& roots) {
    const std::size_t n = roots.size();
    if (n <= 12) return log_abs_expansion_double(roots);
    if (n <= 100) return log_abs_expansion<Mp50>(roots);
    if (n <= 400) return log_abs_expansion<Mp140>(roots);
    if (n <= 2000) return log_abs_expansion<Mp640>(roots);
    throw ParameterError("weighted norm supports degree N <= 2000");
}

double log_objective(const std::vector<cplx>& zbar, double lb, double beta, cplx w) {
    double s = 0.0;
    for (const auto& z : zbar) s += std::log(std::norm(w - z));
    return s - lb * std::pow(std::abs(w), beta);
}

} // namespace

PolyDensityParams make_poly_density_params(std::int64_t n_deg, double l_scale,
                                           const WeightModel& model) {
    if (n_deg < 1) throw ParameterError("degree N must be at least 1");
    if (!(l_scale > 0.0) || !std::isfinite(l_scale)) throw ParameterError("L must be positive");
    PolyDensityParams params;
    params.n_deg = n_deg;
    params.l_scale = l_scale;
    params.model = model;
    const double n = static_cast<double>(n_deg);
    double acc = log_gamma(n + 1.0);
    for (std::int64_t k = 0; k <= n_deg; ++k) {
        acc += log_gamma(2.0 * static_cast<double>(k + 1) / model.beta);
    }
    acc -= n * std::log(std::numbers::pi);
    acc -= (n + 1.0) * log_gamma(2.0 / model.beta);
    acc -= n * (n + 1.0) * std::log(l_scale);
    params.log_a_nl = acc;
    return params;
}

double log_nu_moment(std::int64_t k, const PolyDensityParams& params) {
    if (k < 0) throw DomainError("moment index must be nonnegative");
    const double beta = params.model.beta;
    return log_gamma(2.0 * static_cast<double>(k + 1) / beta) - log_gamma(2.0 / beta) -
           2.0 * static_cast<double>(k) * std::log(params.l_scale);
}

double nu_moment(std::int64_t k, const PolyDensityParams& params) {
    return std::exp(log_nu_moment(k, params));
}

double log_weighted_norm(const std::vector<cplx>& zbar, const PolyDensityParams& params) {
    check_degree(zbar, params);
    double rho = 1.0;
    for (const auto& z : zbar) rho = std::max(rho, std::abs(z));
    std::vector<cplx> scaled(zbar.size());
    for (std::size_t j = 0; j < zbar.size(); ++j) scaled[j] = zbar[j] / rho;
    const std::vector<double> log_d = log_abs_expansion_any(scaled);
    const std::int64_t n = params.n_deg;
    const double log_rho = std::log(rho);
    std::vector<double> terms(static_cast<std::size_t>(n + 1));
    for (std::int64_t k = 0; k <= n; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        terms[kk] = 2.0 * static_cast<double>(n - k) * log_rho + 2.0 * log_d[kk] +
                    log_nu_moment(k, params);
    }
    return log_sum_exp(terms);
}

double weighted_norm(const std::vector<cplx>& zbar, const PolyDensityParams& params) {
    return std::exp(log_weighted_norm(zbar, params));
}

double s_functional(const std::vector<cplx>& zbar, const PolyDensityParams& params) {
    return log_weighted_norm(zbar, params);
}

double log_vandermonde(const std::vector<cplx>& zbar) {
    double s = 0.0;
    for (std::size_t j = 0; j < zbar.size(); ++j) {
        for (std::size_t k = j + 1; k < zbar.size(); ++k) {
            const double d = std::abs(zbar[j] - zbar[k]);
            if (d == 0.0) return -kInf;
            s += 2.0 * std::log(d);
        }
    }
    return s;
}

double log_joint_density(const std::vector<cplx>& zbar, const PolyDensityParams& params) {
    check_degree(zbar, params);
    const double lv = log_vandermonde(zbar);
    if (lv == -kInf) return -kInf;
    return params.log_a_nl + lv -
           static_cast<double>(params.n_deg + 1) * log_weighted_norm(zbar, params);
}

double joint_density(const std::vector<cplx>& zbar, const PolyDensityParams& params) {
    if (params.n_deg > 6) throw ParameterError("joint density evaluation supports N <= 6");
    return std::exp(log_joint_density(zbar, params));
}

double a_functional(const std::vector<cplx>& zbar, const PolyDensityParams& params) {
    check_degree(zbar, params);
    constexpr int n_angles = 256;
    constexpr int n_radii = 512;
    constexpr int n_candidates = 8;
    const double beta = params.model.beta;
    const double lb = std::pow(params.l_scale, beta);
    const double n = static_cast<double>(params.n_deg);
    double radius = 2.0 * std::pow(2.0 * n / (beta * lb), 1.0 / beta);

    std::array<double, n_angles> cs{};
    std::array<double, n_angles> sn{};
    for (int a = 0; a < n_angles; ++a) {
        const double th = 2.0 * std::numbers::pi * a / n_angles;
        cs[static_cast<std::size_t>(a)] = std::cos(th);
        sn[static_cast<std::size_t>(a)] = std::sin(th);
    }

    // Product of squared distances in blocks of eight, which stays in range for
    // configurations of moderate size; falls back to logs otherwise.
    auto grid_value = [&](cplx w, double weight) {
        double s = 0.0;
        double prod = 1.0;
        int count = 0;
        for (const auto& z : zbar) {
            prod *= std::norm(w - z);
            if (++count == 8) {
                s += std::log(prod);
                prod = 1.0;
                count = 0;
            }
        }
        s += std::log(prod);
        if (!std::isfinite(s) && s != -kInf) return log_objective(zbar, lb, beta, w);
        return s - weight;
    };

    struct Candidate {
        double value;
        cplx w;
        int radius_index;
    };

    for (int doubling = 0; doubling < 30; ++doubling) {
        std::vector<Candidate> best;
        best.reserve(n_candidates + 1);
        auto offer = [&](double value, cplx w, int ri) {
            if (!(value > -kInf)) return;
            if (best.size() == n_candidates && value <= best.back().value) return;
            best.push_back({value, w, ri});
            std::sort(best.begin(), best.end(),
                      [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
            if (best.size() > n_candidates) best.pop_back();
        };
        const double dr = radius / (n_radii - 1);
        offer(grid_value(cplx(0.0, 0.0), 0.0), cplx(0.0, 0.0), 0);
        for (int ri = 1; ri < n_radii; ++ri) {
            const double x = dr * ri;
            const double weight = lb * std::pow(x, beta);
            for (int a = 0; a < n_angles; ++a) {
                const cplx w(x * cs[static_cast<std::size_t>(a)], x * sn[static_cast<std::size_t>(a)]);
                offer(grid_value(w, weight), w, ri);
            }
        }
        if (best.empty()) return -kInf;
        if (best.front().radius_index == n_radii - 1) {
            radius *= 2.0;
            continue;
        }
        double result = -kInf;
        const double h_min = 1e-11 * std::max(1.0, radius);
        for (const auto& cand : best) {
            cplx w = cand.w;
            double val = log_objective(zbar, lb, beta, w);
            double h = 2.0 * dr;
            while (h > h_min) {
                bool moved = false;
                for (int d = 0; d < 8; ++d) {
                    const double th = std::numbers::pi * d / 4.0;
                    const cplx trial = w + h * cplx(std::cos(th), std::sin(th));
                    const double tv = log_objective(zbar, lb, beta, trial);
                    if (tv > val) {
                        val = tv;
                        w = trial;
                        moved = true;
                    }
                }
                if (!moved) h *= 0.5;
            }
            result = std::max(result, val);
        }
        return result;
    }
    throw ConvergenceError("a_functional: maximizer escaped every search disk");
}

double i_star(const std::vector<cplx>& zbar, const PolyDensityParams& params) {
    check_degree(zbar, params);
    const double lv = log_vandermonde(zbar);
    if (lv == -kInf) return kInf;
    const double n = static_cast<double>(params.n_deg);
    return a_functional(zbar, params) / n - lv / (n * n);
}

} // namespace pexgaf
