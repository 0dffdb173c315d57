#include "pexgaf/varopt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "pexgaf/error.hpp"

namespace pexgaf {

RadialMeasure DiscretizedRadialMeasure::to_radial_measure(double beta) const {
    RadialMeasure mu;
    mu.beta = beta;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (weights[i] > 0.0) mu.atoms.push_back({grid[i], weights[i]});
    }
    return mu;
}

double DiscretizedRadialMeasure::band_mass(double a, double b) const {
    double m = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] > a && grid[i] < b) m += weights[i];
    }
    return m;
}

MassConstraint constraint_for(double p) {
    return p < 1.0 ? MassConstraint::mass_inside_le : MassConstraint::mass_closed_inside_ge;
}

Eigen::MatrixXd energy_matrix(const std::vector<double>& grid) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            k(i, j) = std::log(std::max(grid[static_cast<std::size_t>(i)],
                                        grid[static_cast<std::size_t>(j)]));
        }
    }
    return k;
}

std::vector<double> make_varopt_grid(double alpha, const WeightModel& model, double p,
                                     std::size_t grid_size) {
    if (grid_size < 8) throw ParameterError("varopt grid needs at least 8 radii");
    const double beta = model.beta;
    const double r_max = std::pow(alpha, 1.0 / beta);
    const double r_min = 1e-3 * r_max;
    std::vector<double> grid(grid_size);
    const double ratio = std::log(r_max / r_min) / static_cast<double>(grid_size - 1);
    for (std::size_t i = 0; i < grid_size; ++i) grid[i] = r_min * std::exp(ratio * static_cast<double>(i));
    grid.back() = r_max;

    std::vector<double> exact{1.0};
    if (p > 0.0) exact.push_back(std::pow(p, 1.0 / beta));
    const double q = q_of_p(p);
    if (q > 0.0) exact.push_back(std::pow(q, 1.0 / beta));
    std::vector<bool> pinned(grid_size, false);
    pinned.front() = pinned.back() = true;
    for (double e : exact) {
        if (!(e > r_min && e < r_max)) continue;
        std::size_t best = 0;
        double dist = INFINITY;
        for (std::size_t i = 0; i < grid_size; ++i) {
            if (pinned[i]) continue;
            const double d = std::abs(std::log(grid[i] / e));
            if (d < dist) {
                dist = d;
                best = i;
            }
        }
        grid[best] = e;
        pinned[best] = true;
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

namespace {

struct Evaluation {
    double objective = 0.0;
    double x_star = 0.0;
    std::vector<double> kw;  // K w
};

Evaluation evaluate(const std::vector<double>& grid, const std::vector<double>& log_grid,
                    const std::vector<double>& w, double alpha, double beta) {
    const std::size_t m = grid.size();
    Evaluation ev;
    ev.kw.resize(m);
    // suffix[i] = sum_{j > i} w_j log r_j
    std::vector<double> suffix(m + 1, 0.0);
    for (std::size_t i = m; i-- > 0;) suffix[i] = suffix[i + 1] + w[i] * log_grid[i];
    const double ba = beta * alpha;
    double best = suffix[0];  // x = 0
    double best_x = 0.0;
    double prefix = 0.0;
    double quad = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        prefix += w[i];
        ev.kw[i] = log_grid[i] * prefix + suffix[i + 1];
        quad += w[i] * ev.kw[i];
        if (i + 1 < m && prefix > 0.0) {
            double x = std::pow(alpha * prefix, 1.0 / beta);
            x = std::clamp(x, grid[i], grid[i + 1]);
            const double f = prefix * std::log(x) + suffix[i + 1] - std::pow(x, beta) / ba;
            if (f > best) {
                best = f;
                best_x = x;
            }
        }
    }
    ev.objective = 2.0 * best - quad;
    ev.x_star = best_x;
    return ev;
}

// Euclidean projection onto {x >= 0, sum x = total}.
void project_simplex(std::vector<double>& x, double total) {
    if (x.empty()) return;
    if (total <= 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return;
    }
    std::vector<double> s(x);
    std::sort(s.begin(), s.end(), std::greater<>());
    double cum = 0.0;
    double theta = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        cum += s[i];
        const double t = (cum - total) / static_cast<double>(i + 1);
        if (i + 1 == s.size() || s[i + 1] <= t) {
            theta = t;
            break;
        }
    }
    for (double& v : x) v = std::max(v - theta, 0.0);
}

} // namespace

std::vector<double> project_feasible(const std::vector<double>& y, const std::vector<bool>& inside,
                                     double bound, bool upper) {
    std::vector<double> w(y);
    project_simplex(w, 1.0);
    double in_mass = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (inside[i]) in_mass += w[i];
    }
    const bool ok = upper ? in_mass <= bound : in_mass >= bound;
    if (ok) return w;
    // Active block constraint: the problem splits into two scaled-simplex projections.
    std::vector<double> yi;
    std::vector<double> yo;
    for (std::size_t i = 0; i < y.size(); ++i) (inside[i] ? yi : yo).push_back(y[i]);
    if (yo.empty() && bound < 1.0) throw ParameterError("constraint leaves no admissible radii");
    if (yi.empty() && bound > 0.0) throw ParameterError("constraint leaves no admissible radii");
    project_simplex(yi, bound);
    project_simplex(yo, 1.0 - bound);
    std::size_t a = 0;
    std::size_t b = 0;
    for (std::size_t i = 0; i < y.size(); ++i) w[i] = inside[i] ? yi[a++] : yo[b++];
    return w;
}

double varopt_objective(const DiscretizedRadialMeasure& mu, double alpha, const WeightModel& model) {
    std::vector<double> lg(mu.grid.size());
    for (std::size_t i = 0; i < lg.size(); ++i) lg[i] = std::log(mu.grid[i]);
    return evaluate(mu.grid, lg, mu.weights, alpha, model.beta).objective;
}

namespace {

struct Problem {
    double alpha;
    double beta;
    std::vector<double> grid;
    std::vector<double> log_grid;
    std::vector<bool> inside;
    double bound;
    bool upper;
};

void subgradient_solve(const Problem& pb, const VaroptOptions& options, VaroptResult& result) {
    const std::size_t m = pb.grid.size();
    std::vector<double> w = project_feasible(std::vector<double>(m, 1.0 / static_cast<double>(m)),
                                             pb.inside, pb.bound, pb.upper);
    Evaluation ev = evaluate(pb.grid, pb.log_grid, w, pb.alpha, pb.beta);
    result.measure.weights = w;
    result.objective = ev.objective;

    std::vector<double> avg(m, 0.0);
    double avg_weight = 0.0;
    std::int64_t epoch_end = 1024;
    double window_start = result.objective;
    std::vector<double> g(m);
    std::vector<double> y(m);
    std::int64_t k = 0;
    for (; k < options.max_iters; ++k) {
        const double lx = ev.x_star > 0.0 ? std::log(ev.x_star) : -INFINITY;
        for (std::size_t i = 0; i < m; ++i) g[i] = 2.0 * (std::max(lx, pb.log_grid[i]) - ev.kw[i]);
        const double gmean = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(m);
        double gnorm2 = 0.0;
        for (double& v : g) {
            v -= gmean;
            gnorm2 += v * v;
        }
        if (gnorm2 == 0.0) break;
        const double step = 0.5 / (std::sqrt(gnorm2) * std::sqrt(static_cast<double>(k) + 1.0));
        for (std::size_t i = 0; i < m; ++i) y[i] = w[i] - step * g[i];
        w = project_feasible(y, pb.inside, pb.bound, pb.upper);
        ev = evaluate(pb.grid, pb.log_grid, w, pb.alpha, pb.beta);
        if (ev.objective < result.objective) {
            result.objective = ev.objective;
            result.measure.weights = w;
        }
        for (std::size_t i = 0; i < m; ++i) avg[i] += step * w[i];
        avg_weight += step;
        if (k + 1 == epoch_end) {
            std::vector<double> candidate(m);
            for (std::size_t i = 0; i < m; ++i) candidate[i] = avg[i] / avg_weight;
            const double obj = evaluate(pb.grid, pb.log_grid, candidate, pb.alpha, pb.beta).objective;
            if (obj < result.objective) {
                result.objective = obj;
                result.measure.weights = candidate;
            }
            std::fill(avg.begin(), avg.end(), 0.0);
            avg_weight = 0.0;
            epoch_end *= 2;
        }
        if ((k + 1) % options.window == 0) {
            if (window_start - result.objective < options.tol && k + 1 >= 4096) {
                result.converged = true;
                ++k;
                break;
            }
            window_start = result.objective;
        }
    }
    result.iterations = k;
}

// Epigraph form: minimize 2 s - w^T K w subject to U_w(x_j) - x_j^beta/(beta alpha) <= s on
// the probe radii, w >= 0, sum w = 1 and the block constraint. Mehrotra predictor-corrector.
void interior_point_solve(const Problem& pb, const VaroptOptions& options, VaroptResult& result) {
    using Eigen::Index;
    using Eigen::MatrixXd;
    using Eigen::VectorXd;
    const std::size_t m = pb.grid.size();
    const double r_max = pb.grid.back();

    std::vector<double> probes{0.0};
    const std::size_t per = std::max<std::size_t>(options.probes_per_interval, 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double ratio = std::log(pb.grid[i + 1] / pb.grid[i]);
        for (std::size_t k = 0; k < per; ++k) {
            probes.push_back(pb.grid[i] * std::exp(ratio * static_cast<double>(k) / static_cast<double>(per)));
        }
    }
    probes.push_back(r_max);
    const auto np = static_cast<Index>(probes.size());
    const auto nw = static_cast<Index>(m);
    const Index n = nw + 1;           // w and s
    const Index ni = np + nw + 1;     // probes, nonnegativity, block

    MatrixXd a(np, nw);
    VectorXd qv(np);
    for (Index j = 0; j < np; ++j) {
        const double x = probes[static_cast<std::size_t>(j)];
        const double lx = x > 0.0 ? std::log(x) : -INFINITY;
        for (Index i = 0; i < nw; ++i) a(j, i) = std::max(lx, pb.log_grid[static_cast<std::size_t>(i)]);
        qv(j) = std::pow(x, pb.beta) / (pb.beta * pb.alpha);
    }
    const MatrixXd kmat = energy_matrix(pb.grid);
    VectorXd block(nw);
    for (Index i = 0; i < nw; ++i) block(i) = pb.inside[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
    const double sign = pb.upper ? 1.0 : -1.0;  // sign * block.w <= sign * bound

    // G x <= h with x = (w, s)
    auto g_times = [&](const VectorXd& x) {
        VectorXd out(ni);
        out.head(np) = a * x.head(nw) - VectorXd::Constant(np, x(nw));
        out.segment(np, nw) = -x.head(nw);
        out(ni - 1) = sign * block.dot(x.head(nw));
        return out;
    };
    auto gt_times = [&](const VectorXd& z) {
        VectorXd out(n);
        out.head(nw) = a.transpose() * z.head(np) - z.segment(np, nw) + sign * z(ni - 1) * block;
        out(nw) = -z.head(np).sum();
        return out;
    };
    VectorXd h(ni);
    h.head(np) = qv;
    h.segment(np, nw).setZero();
    h(ni - 1) = sign * pb.bound;

    VectorXd x(n);
    {
        std::vector<double> w0 = project_feasible(std::vector<double>(m, 1.0 / static_cast<double>(m)),
                                                  pb.inside, pb.bound, pb.upper);
        for (Index i = 0; i < nw; ++i) x(i) = w0[static_cast<std::size_t>(i)];
        x(nw) = (a * x.head(nw) - qv).maxCoeff() + 1.0;
    }
    VectorXd sl = (h - g_times(x)).cwiseMax(1.0);
    VectorXd z = VectorXd::Ones(ni);
    double y = 0.0;
    const double mi = static_cast<double>(ni);

    std::int64_t it = 0;
    for (; it < 200; ++it) {
        const VectorXd w = x.head(nw);
        VectorXd rd(n);
        rd.head(nw) = -2.0 * (kmat * w) + VectorXd::Constant(nw, y);
        rd(nw) = 2.0;
        rd += gt_times(z);
        const double re = w.sum() - 1.0;
        const VectorXd rg = g_times(x) + sl - h;
        const double mu = sl.dot(z) / mi;
        const double scale = 1.0 + std::abs(2.0 * x(nw) - w.dot(kmat * w));
        if (mu < 1e-12 * scale && rd.norm() < 1e-7 * (1.0 + z.lpNorm<Eigen::Infinity>()) &&
            std::abs(re) < 1e-12 && rg.norm() < 1e-10 * scale) {
            result.converged = true;
            break;
        }
        const VectorXd d = z.cwiseQuotient(sl);
        MatrixXd hm = MatrixXd::Zero(n + 1, n + 1);
        const VectorXd dp = d.head(np);
        hm.topLeftCorner(nw, nw) = -2.0 * kmat + a.transpose() * dp.asDiagonal() * a;
        const VectorXd adp = a.transpose() * dp;
        hm.block(0, nw, nw, 1) = -adp;
        hm.block(nw, 0, 1, nw) = -adp.transpose();
        hm(nw, nw) = dp.sum();
        for (Index i = 0; i < nw; ++i) hm(i, i) += d(np + i);
        hm.topLeftCorner(nw, nw) += d(ni - 1) * block * block.transpose();
        for (Index i = 0; i < nw; ++i) {
            hm(i, n) = 1.0;
            hm(n, i) = 1.0;
        }
        const Eigen::PartialPivLU<MatrixXd> lu(hm);

        auto solve = [&](const VectorXd& rc, VectorXd& dx, double& dy, VectorXd& dz, VectorXd& ds) {
            const VectorXd t = d.cwiseProduct(rg) - rc.cwiseQuotient(sl);
            VectorXd rhs(n + 1);
            rhs.head(n) = -rd - gt_times(t);
            rhs(n) = -re;
            const VectorXd sol = lu.solve(rhs);
            dx = sol.head(n);
            dy = sol(n);
            dz = d.cwiseProduct(g_times(dx) + rg) - rc.cwiseQuotient(sl);
            ds = -(rc + sl.cwiseProduct(dz)).cwiseQuotient(z);
        };
        auto max_step = [&](const VectorXd& ds, const VectorXd& dz) {
            double step = 1.0;
            for (Index i = 0; i < ni; ++i) {
                if (ds(i) < 0.0) step = std::min(step, -sl(i) / ds(i));
                if (dz(i) < 0.0) step = std::min(step, -z(i) / dz(i));
            }
            return step;
        };

        VectorXd dx;
        VectorXd dz;
        VectorXd ds;
        double dy = 0.0;
        const VectorXd rc_aff = sl.cwiseProduct(z);
        solve(rc_aff, dx, dy, dz, ds);
        const double a_aff = max_step(ds, dz);
        const double mu_aff = (sl + a_aff * ds).dot(z + a_aff * dz) / mi;
        const double sigma = std::pow(mu_aff / mu, 3.0);
        const VectorXd rc = rc_aff + ds.cwiseProduct(dz) - VectorXd::Constant(ni, sigma * mu);
        solve(rc, dx, dy, dz, ds);
        const double step = std::min(1.0, 0.99 * max_step(ds, dz));
        x += step * dx;
        y += step * dy;
        z += step * dz;
        sl += step * ds;
    }
    result.iterations = it;
    std::vector<double> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = std::max(0.0, x(static_cast<Index>(i)));
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w) v /= total;
    w = project_feasible(w, pb.inside, pb.bound, pb.upper);
    result.measure.weights = w;
    const VectorXd wv = Eigen::Map<const VectorXd>(w.data(), nw);
    result.probe_objective = 2.0 * (a * wv - qv).maxCoeff() - wv.dot(kmat * wv);
    result.objective = evaluate(pb.grid, pb.log_grid, w, pb.alpha, pb.beta).objective;
}

} // namespace

VaroptResult minimize_constrained(double alpha, const WeightModel& model, double p,
                                  MassConstraint constraint, const VaroptOptions& options) {
    if (!(alpha > std::numbers::e)) throw ParameterError("varopt needs alpha > e");
    if (!(p >= 0.0) || p >= alpha) throw ParameterError("infeasible level: need 0 <= p < alpha");
    if (p == 1.0) throw ParameterError("p = 1 is singular");
    if (options.grid_size < 200) throw ParameterError("varopt needs grid_size >= 200");
    Problem pb;
    pb.alpha = alpha;
    pb.beta = model.beta;
    pb.grid = make_varopt_grid(alpha, model, p, options.grid_size);
    const std::size_t m = pb.grid.size();
    pb.log_grid.resize(m);
    for (std::size_t i = 0; i < m; ++i) pb.log_grid[i] = std::log(pb.grid[i]);
    pb.upper = constraint == MassConstraint::mass_inside_le;
    pb.inside.resize(m);
    for (std::size_t i = 0; i < m; ++i) pb.inside[i] = pb.upper ? pb.grid[i] < 1.0 : pb.grid[i] <= 1.0;
    pb.bound = p / alpha;

    VaroptResult result;
    result.measure.grid = pb.grid;
    if (options.method == VaroptMethod::subgradient) {
        subgradient_solve(pb, options, result);
        result.probe_objective = result.objective;
    } else {
        interior_point_solve(pb, options, result);
    }
    return result;
}

} // namespace pexgaf
