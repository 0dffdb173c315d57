#include "pexgaf/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pexgaf/error.hpp"

namespace pexgaf {

namespace {

constexpr double kE = std::numbers::e;

// h(x) = x (log x - 1), h(0) = 0.
double h_fn(double x) { return x > 0.0 ? x * (std::log(x) - 1.0) : 0.0; }

// Antiderivatives in T of log T and T log T, both vanishing at 0.
double h_int(double t) { return t > 0.0 ? t * std::log(t) - t : 0.0; }
double g_int(double t) { return t > 0.0 ? 0.5 * t * t * std::log(t) - 0.25 * t * t : 0.0; }

void check_p(double p) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
        throw DomainError("level p must be finite and nonnegative, got " + std::to_string(p));
    }
    if (p == 1.0) throw ParameterError("level p = 1 is singular (Z_p = 0 and q = p)");
}

// Bisection on a monotone bracket until the midpoint stops moving.
double bisect(double lo, double hi, double target, bool increasing) {
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double v = h_fn(mid);
        const bool below = increasing ? (v < target) : (v > target);
        (below ? lo : hi) = mid;
        if (hi - lo < 1e-16) break;
    }
    return 0.5 * (lo + hi);
}

// Support geometry of the minimizer in powers T = |z|^beta: inner piece [0, a],
// unit-circle atom of mass (b - a)/alpha, outer piece [b, alpha].
struct Shape {
    double a = 0.0;
    double b = 0.0;
};

Shape shape_of(double p) {
    check_p(p);
    if (p < 1.0) return {p, q_of_p(p)};
    if (p < kE) return {q_of_p(p), p};
    return {0.0, p};
}

} // namespace

bool RadialMeasure::bounded() const {
    return std::all_of(pieces.begin(), pieces.end(),
                       [](const AnnulusPiece& pc) { return std::isfinite(pc.r_out); });
}

double RadialMeasure::total_mass() const {
    double m = 0.0;
    for (const auto& at : atoms) m += at.mass;
    for (const auto& pc : pieces) {
        if (!std::isfinite(pc.r_out)) {
            if (pc.coeff > 0.0) return std::numeric_limits<double>::infinity();
            continue;
        }
        m += pc.coeff * (std::pow(pc.r_out, beta) - std::pow(pc.r_in, beta));
    }
    return m;
}

double RadialMeasure::band_mass(double a, double b) const {
    double m = 0.0;
    for (const auto& at : atoms) {
        if (at.radius > a && at.radius < b) m += at.mass;
    }
    for (const auto& pc : pieces) {
        const double lo = std::max(a, pc.r_in);
        const double hi = std::min(b, pc.r_out);
        if (hi > lo) m += pc.coeff * (std::pow(hi, beta) - std::pow(lo, beta));
    }
    return m;
}

double RadialMeasure::closed_disk_mass(double x) const {
    double m = 0.0;
    for (const auto& at : atoms) {
        if (at.radius <= x) m += at.mass;
    }
    for (const auto& pc : pieces) {
        const double hi = std::min(x, pc.r_out);
        if (hi > pc.r_in) m += pc.coeff * (std::pow(hi, beta) - std::pow(pc.r_in, beta));
    }
    return m;
}

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::p_eq_0: return "p_eq_0";
        case Regime::p_lt_1: return "p_lt_1";
        case Regime::p_in_1_e: return "p_in_1_e";
        case Regime::p_ge_e: return "p_ge_e";
    }
    return "unknown";
}

double q_of_p(double p) {
    check_p(p);
    if (p == 0.0) return kE;
    if (p >= kE) return 0.0;
    const double target = h_fn(p);
    // h decreases on (0,1) from 0 to -1 and increases on (1,e) from -1 to 0.
    if (p < 1.0) return bisect(1.0, kE, target, true);
    return bisect(0.0, 1.0, target, false);
}

double z_of_p(double p) {
    check_p(p);
    if (p == 0.0) return kE * kE / 4.0;
    if (p >= kE) return 0.25 * p * p * (2.0 * std::log(p) - 1.0);
    const double q = q_of_p(p);
    auto term = [](double x) { return x > 0.0 ? x * x * (2.0 * std::log(x) - 1.0) : 0.0; };
    return std::abs(0.25 * (term(q) - term(p)));
}

HoleParams hole_params(double p) {
    HoleParams hp;
    hp.p = p;
    hp.q = q_of_p(p);
    hp.z_p = z_of_p(p);
    if (p == 0.0) hp.regime = Regime::p_eq_0;
    else if (p < 1.0) hp.regime = Regime::p_lt_1;
    else if (p < kE) hp.regime = Regime::p_in_1_e;
    else hp.regime = Regime::p_ge_e;
    return hp;
}

RadialMeasure minimizer_measure(double alpha, const WeightModel& model, double p) {
    check_p(p);
    if (!(alpha > kE)) throw ParameterError("minimizer needs alpha > e");
    if (p >= alpha) throw ParameterError("empty bulk: level p must be below alpha");
    if (!(alpha > p * (1.0 + 1e-9))) throw ParameterError("minimizer needs alpha > p (1 + 1e-9)");
    const Shape s = shape_of(p);
    const double beta = model.beta;
    const double inv = 1.0 / alpha;
    RadialMeasure mu;
    mu.beta = beta;
    mu.atoms.push_back({1.0, (s.b - s.a) / alpha});
    if (s.a > 0.0) mu.pieces.push_back({0.0, std::pow(s.a, 1.0 / beta), inv});
    mu.pieces.push_back({std::pow(s.b, 1.0 / beta), std::pow(alpha, 1.0 / beta), inv});
    return mu;
}

RadialMeasure limiting_measure(const WeightModel& model, double p) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw ParameterError("limiting measure is only defined for 0 <= p < 1");
    }
    const double q = q_of_p(p);
    const double beta = model.beta;
    RadialMeasure mu;
    mu.beta = beta;
    mu.atoms.push_back({1.0, beta * (q - p) / 2.0});
    if (p > 0.0) mu.pieces.push_back({0.0, std::pow(p, 1.0 / beta), beta / 2.0});
    mu.pieces.push_back({std::pow(q, 1.0 / beta), std::numeric_limits<double>::infinity(), beta / 2.0});
    return mu;
}

double potential_closed(const RadialMeasure& mu, double alpha, const WeightModel& model, double p,
                        double x) {
    if (!(x >= 0.0)) throw DomainError("potential needs x >= 0");
    const Shape s = shape_of(p);
    const double beta = model.beta;
    double atom_mass = 0.0;
    for (const auto& at : mu.atoms) {
        if (at.radius == 1.0) atom_mass += at.mass;
    }
    if (std::abs(atom_mass - (s.b - s.a) / alpha) > 1e-12) {
        throw ParameterError("measure does not match the minimizer for (alpha, p)");
    }
    const double X = std::pow(x, beta);
    const double c0 = (std::log(alpha) - 1.0) / beta;
    const double ba = beta * alpha;
    if (X <= s.a || x == 0.0) return c0 + X / ba + (h_fn(s.a) - h_fn(s.b)) / ba;
    const double lx = std::log(x);
    if (X <= 1.0) return (s.a / alpha) * lx + c0 - h_fn(s.b) / ba;
    if (X < s.b) return (s.b / alpha) * lx + c0 - h_fn(s.b) / ba;
    if (X <= alpha) return c0 + X / ba;
    return lx;
}

double potential_quadrature(const RadialMeasure& mu, double x, double truncation) {
    if (!(x >= 0.0)) throw DomainError("potential needs x >= 0");
    const double beta = mu.beta;
    double u = 0.0;
    for (const auto& at : mu.atoms) u += at.mass * std::log(std::max(x, at.radius));
    const double X = std::pow(x, beta);
    for (const auto& pc : mu.pieces) {
        const double r_out = std::min(pc.r_out, truncation);
        if (!std::isfinite(r_out)) {
            throw ParameterError("unbounded piece requires a finite truncation radius");
        }
        if (r_out <= pc.r_in) continue;
        const double t_in = std::pow(pc.r_in, beta);
        const double t_out = std::pow(r_out, beta);
        double acc = 0.0;
        if (X > t_in) acc += std::log(x) * (std::min(X, t_out) - t_in);
        if (X < t_out) acc += (h_int(t_out) - h_int(std::max(X, t_in))) / beta;
        u += pc.coeff * acc;
    }
    return u;
}

double b_functional(const RadialMeasure& mu, double alpha, const WeightModel& model) {
    const double beta = model.beta;
    const double ba = beta * alpha;
    const double r_max = std::pow(alpha, 1.0 / beta);
    auto f = [&](double x) { return potential_quadrature(mu, x) - std::pow(x, beta) / ba; };
    constexpr int kGrid = 2000;
    int best_i = 0;
    double best = -INFINITY;
    for (int i = 0; i < kGrid; ++i) {
        const double v = f(r_max * i / (kGrid - 1));
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    double lo = r_max * std::max(0, best_i - 1) / (kGrid - 1);
    double hi = r_max * std::min(kGrid - 1, best_i + 1) / (kGrid - 1);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    best = std::max({best, f1, f2});
    return 2.0 * best;
}

double log_energy(const RadialMeasure& mu) {
    if (!mu.bounded()) throw ParameterError("log energy needs a bounded measure");
    const double beta = mu.beta;
    std::map<double, double> atoms;
    for (const auto& at : mu.atoms) atoms[at.radius] += at.mass;
    std::vector<double> cuts;
    for (const auto& [r, m] : atoms) cuts.push_back(r);
    for (const auto& pc : mu.pieces) {
        cuts.push_back(pc.r_in);
        cuts.push_back(pc.r_out);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // Sigma = integral of log u d(F(u)^2), F(u) = mu(closed disk of radius u).
    double sigma = 0.0;
    double mass = 0.0;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const double r = cuts[i];
        if (auto it = atoms.find(r); it != atoms.end() && r > 0.0) {
            const double m = it->second;
            sigma += std::log(r) * ((mass + m) * (mass + m) - mass * mass);
            mass += m;
        }
        if (i + 1 == cuts.size()) break;
        const double r_next = cuts[i + 1];
        double density = 0.0;
        for (const auto& pc : mu.pieces) {
            if (pc.r_in <= r && pc.r_out >= r_next) density += pc.coeff;
        }
        if (density == 0.0) continue;
        const double ta = std::pow(r, beta);
        const double tb = std::pow(r_next, beta);
        const double a0 = mass - density * ta;
        sigma += (2.0 * density / beta) *
                 (a0 * (h_int(tb) - h_int(ta)) + density * (g_int(tb) - g_int(ta)));
        mass += density * (tb - ta);
    }
    return sigma;
}

double i_functional(const RadialMeasure& mu, double alpha, const WeightModel& model) {
    return b_functional(mu, alpha, model) - log_energy(mu);
}

double i_closed_form(double alpha, const WeightModel& model, double p) {
    return (std::log(alpha) - 1.5) / model.beta + 2.0 * z_of_p(p) / (model.beta * alpha * alpha);
}

EnergyReport equilibrium_report(const RadialMeasure& mu, double alpha, const WeightModel& model,
                                double p) {
    (void)p;
    const double beta = model.beta;
    const double ba = beta * alpha;
    EnergyReport rep;
    rep.b_value = b_functional(mu, alpha, model);
    rep.sigma_value = log_energy(mu);
    rep.i_value = rep.b_value - rep.sigma_value;
    auto g = [&](double x) {
        return potential_quadrature(mu, x) - std::pow(x, beta) / ba - 0.5 * rep.b_value;
    };
    const double r_max = std::pow(alpha, 1.0 / beta);
    constexpr int kProbe = 2000;
    rep.probe_grid.reserve(kProbe);
    rep.g_max = -INFINITY;
    for (int i = 0; i < kProbe; ++i) {
        const double x = 1.5 * r_max * i / (kProbe - 1);
        rep.probe_grid.push_back(x);
        rep.g_max = std::max(rep.g_max, g(x));
    }
    rep.g_support_dev = 0.0;
    for (const auto& pc : mu.pieces) {
        constexpr int kPer = 200;
        for (int i = 0; i < kPer; ++i) {
            const double x = pc.r_in + (pc.r_out - pc.r_in) * i / (kPer - 1);
            rep.g_support_dev = std::max(rep.g_support_dev, std::abs(g(x)));
        }
    }
    rep.g_unit_circle = g(1.0);
    return rep;
}

double integrate(const RadialMeasure& mu, const std::function<double(cplx)>& f, double cutoff,
                 const std::vector<double>& breakpoints) {
    using boost::math::quadrature::gauss_kronrod;
    const double beta = mu.beta;
    constexpr int kAngles = 256;
    auto ring_average = [&](double t) {
        double acc = 0.0;
        for (int j = 0; j < kAngles; ++j) {
            acc += f(std::polar(t, 2.0 * std::numbers::pi * j / kAngles));
        }
        return acc / kAngles;
    };
    double total = 0.0;
    for (const auto& at : mu.atoms) total += at.mass * ring_average(at.radius);
    for (const auto& pc : mu.pieces) {
        const double r_out = std::min(pc.r_out, cutoff);
        if (!std::isfinite(r_out)) {
            throw ParameterError("integrate over an unbounded piece needs a finite cutoff");
        }
        if (r_out <= pc.r_in) continue;
        std::vector<double> cuts{pc.r_in, r_out};
        for (double b : breakpoints) {
            if (b > pc.r_in && b < r_out) cuts.push_back(b);
        }
        std::sort(cuts.begin(), cuts.end());
        auto integrand = [&](double T) { return ring_average(std::pow(T, 1.0 / beta)); };
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double ta = std::pow(cuts[i], beta);
            const double tb = std::pow(cuts[i + 1], beta);
            total += pc.coeff *
                     gauss_kronrod<double, 61>::integrate(integrand, ta, tb, 15, 1e-11);
        }
    }
    return total;
}

} // namespace pexgaf
