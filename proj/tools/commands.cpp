#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "errors.hpp"
#include "pexgaf/error.hpp"
#include "pexgaf/gaf.hpp"
#include "pexgaf/mc.hpp"
#include "pexgaf/measures.hpp"
#include "pexgaf/polydensity.hpp"
#include "pexgaf/special.hpp"
#include "pexgaf/varopt.hpp"
#include "pexgaf/zeros.hpp"

namespace pexgaf::cli {

namespace {

constexpr const char* kClosed = "closed_form";
constexpr const char* kOptimizer = "optimizer";
constexpr const char* kCheck = "closed_form";

using Defaults = std::vector<std::pair<std::string, std::string>>;

Defaults with_common(Defaults extra) {
    Defaults d{{"out", ""}};
    d.insert(d.begin(), extra.begin(), extra.end());
    return d;
}

std::string fmt(double x) { return format_number(x); }

unsigned thread_count(const Settings& s) {
    const std::int64_t t = s.get_int("threads");
    if (t < 1 || t > 256) throw ParameterError("threads must be in [1, 256]");
    return static_cast<unsigned>(t);
}

RunRecord start_record(const std::string& command, const Settings& s) {
    RunRecord r;
    r.command = command;
    r.artifact_version = kArtifactVersion;
    r.started_at = utc_timestamp();
    for (const auto& [k, v] : s.entries()) {
        if (k != "out") r.params.add(k, v);
    }
    return r;
}

void add_measure(Node& parent, const RadialMeasure& mu) {
    Node& atoms = parent.add_section("atoms");
    for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
        Node& a = atoms.add_section("atom_" + std::to_string(i));
        a.add("radius", with_provenance(mu.atoms[i].radius, kClosed));
        a.add("mass", with_provenance(mu.atoms[i].mass, kClosed));
    }
    Node& pieces = parent.add_section("pieces");
    for (std::size_t i = 0; i < mu.pieces.size(); ++i) {
        Node& p = pieces.add_section("piece_" + std::to_string(i));
        p.add("r_in", with_provenance(mu.pieces[i].r_in, kClosed));
        p.add("r_out", with_provenance(mu.pieces[i].r_out, kClosed));
        p.add("coeff", with_provenance(mu.pieces[i].coeff, kClosed));
    }
}

// ---- table -------------------------------------------------------------

CommandOutput cmd_table(const Settings& s) {
    const auto p_list = s.get_list("p_list");
    if (p_list.empty()) throw ParameterError("p_list is empty");
    CommandOutput out;
    out.record = start_record("table", s);
    out.csv = table_csv(p_list);
    Node& rows = out.record.results.add_section("rows");
    for (std::size_t i = 0; i < p_list.size(); ++i) {
        Node& row = rows.add_section("row_" + std::to_string(i));
        const double p = p_list[i];
        row.add("p", with_provenance(p, kClosed));
        if (p == 1.0) {
            row.add("regime", "singular");
            continue;
        }
        const auto hp = hole_params(p);
        row.add("q", with_provenance(hp.q, kClosed));
        row.add("Z_p", with_provenance(hp.z_p, kClosed));
        row.add("regime", to_string(hp.regime));
    }
    return out;
}

// ---- measure -----------------------------------------------------------

CommandOutput cmd_measure(const Settings& s) {
    const double alpha = s.get_double("alpha");
    const auto model = WeightModel::make(s.get_double("beta"));
    const double p = s.get_double("p");
    const auto mu = minimizer_measure(alpha, model, p);
    const auto rep = equilibrium_report(mu, alpha, model, p);
    CommandOutput out;
    out.record = start_record("measure", s);
    Node& res = out.record.results;
    Node& m = res.add_section("measure");
    add_measure(m, mu);
    m.add("total_mass", with_provenance(mu.total_mass(), kClosed));
    Node& e = res.add_section("energy");
    e.add("B", with_provenance(rep.b_value, kClosed));
    e.add("Sigma", with_provenance(rep.sigma_value, kClosed));
    e.add("I", with_provenance(rep.i_value, kClosed));
    e.add("I_formula", with_provenance(i_closed_form(alpha, model, p), kClosed));
    e.add("g_max", with_provenance(rep.g_max, kClosed));
    e.add("g_support_dev", with_provenance(rep.g_support_dev, kClosed));
    e.add("g_unit_circle", with_provenance(rep.g_unit_circle, kClosed));
    return out;
}

// ---- varopt ------------------------------------------------------------

CommandOutput cmd_varopt(const Settings& s) {
    const double alpha = s.get_double("alpha");
    const auto model = WeightModel::make(s.get_double("beta"));
    const double p = s.get_double("p");
    VaroptOptions opt;
    const std::int64_t grid = s.get_int("grid");
    if (grid < 1) throw ParameterError("grid must be positive");
    opt.grid_size = static_cast<std::size_t>(grid);
    const std::string& method = s.raw("method");
    if (method == "interior_point") {
        opt.method = VaroptMethod::interior_point;
    } else if (method == "subgradient") {
        opt.method = VaroptMethod::subgradient;
    } else {
        throw ParameterError("method must be interior_point or subgradient");
    }
    const std::string& cons = s.raw("constraint");
    MassConstraint constraint = constraint_for(p);
    if (cons == "le") {
        constraint = MassConstraint::mass_inside_le;
    } else if (cons == "ge") {
        constraint = MassConstraint::mass_closed_inside_ge;
    } else if (cons != "auto") {
        throw ParameterError("constraint must be auto, le or ge");
    }
    const auto result = minimize_constrained(alpha, model, p, constraint, opt);
    const double closed = i_closed_form(alpha, model, p);
    CommandOutput out;
    out.record = start_record("varopt", s);
    Node& res = out.record.results;
    res.add("objective", with_provenance(result.objective, kOptimizer));
    res.add("probe_objective", with_provenance(result.probe_objective, kOptimizer));
    res.add("closed_form_minimum", with_provenance(closed, kClosed));
    res.add("gap", with_provenance(result.objective - closed, kOptimizer));
    res.add("converged", result.converged ? "true" : "false");
    res.add("iterations", with_provenance(result.iterations, kOptimizer));
    // support gaps of the closed-form minimizer on either side of the unit circle
    const auto exact = minimizer_measure(alpha, model, p);
    double lo = 0.0;
    double hi = INFINITY;
    for (const auto& piece : exact.pieces) {
        if (piece.r_out <= 1.0) lo = std::max(lo, piece.r_out);
        if (piece.r_in >= 1.0) hi = std::min(hi, piece.r_in);
    }
    const auto& w = result.measure.weights;
    const auto& g = result.measure.grid;
    double unit = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] == 1.0) unit += w[i];
    }
    res.add("band_inner", with_provenance(lo, kClosed));
    res.add("band_outer", with_provenance(hi, kClosed));
    res.add("band_mass", with_provenance(result.measure.band_mass(lo, 1.0) + result.measure.band_mass(1.0, hi),
                                         kOptimizer));
    res.add("unit_circle_weight", with_provenance(unit, kOptimizer));
    Node& prof = res.add_section("profile");
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (w[i] <= 1e-8) continue;
        prof.add("node_" + std::to_string(i), "radius=" + fmt(g[i]) + " weight=" + fmt(w[i]) + " [optimizer]");
    }
    return out;
}

// ---- simulate ------------------------------------------------------------

HoleExperiment run_hole(const Settings& s, const WeightModel& model) {
    const double r = s.get_double("r");
    HoleOptions opt;
    opt.threads = thread_count(s);
    opt.search_multiple = s.get_double("search_multiple");
    opt.unconditional_trials = s.get_int("uncond_trials");
    const double mult = opt.search_multiple > 0.0 ? opt.search_multiple : default_search_multiple(model);
    return estimate_hole_probability(model, make_hole_plan(model, r, mult), r, s.get_int("trials"),
                                     s.get_uint("seed"), opt);
}

void add_depletion(Node& parent, const std::string& name, const DepletionStatistic& st, std::int64_t trials) {
    Node& d = parent.add_section(name);
    const auto tag = mc_tag(trials);
    d.add("valid", st.valid ? "true" : "false");
    if (!st.valid) d.add("flag", st.flag);
    d.add("band_frac_cond", with_provenance(st.band_frac_cond, tag));
    d.add("band_frac_uncond", with_provenance(st.band_frac_uncond, tag));
    d.add("zscore", with_provenance(st.zscore, tag));
    d.add("band_cond", with_provenance(st.band_cond, tag));
    d.add("total_cond", with_provenance(st.total_cond, tag));
    d.add("band_uncond", with_provenance(st.band_uncond, tag));
    d.add("total_uncond", with_provenance(st.total_uncond, tag));
}

void add_hole(Node& res, const HoleExperiment& e) {
    const auto tag = mc_tag(e.trials);
    const auto& h = e.results;
    res.add("n_trunc", with_provenance(e.plan.n_trunc, kClosed));
    res.add("search_multiple", with_provenance(e.search_multiple, kClosed));
    res.add("hole_count", with_provenance(h.hole_count, tag));
    res.add("p_hat", with_provenance(h.p_hat, tag));
    res.add("ci95_lo", with_provenance(h.ci95.lo, tag));
    res.add("ci95_hi", with_provenance(h.ci95.hi, tag));
    res.add("contour_failures", with_provenance(h.contour_failures, tag));
    res.add("unconditional_trials", with_provenance(h.unconditional_trials, tag));
    add_depletion(res, "depletion", depletion_statistic(e), e.trials);
    add_depletion(res, "split_half", split_half_statistic(e), e.trials);

    constexpr int kBins = 30;
    std::vector<std::int64_t> cond(kBins, 0);
    std::vector<std::int64_t> uncond(kBins, 0);
    const double width = e.search_multiple / kBins;
    auto bin = [&](double x) { return std::min(kBins - 1, static_cast<int>(x / width)); };
    for (double x : h.conditional_zero_radii) ++cond[static_cast<std::size_t>(bin(x))];
    for (double x : h.unconditional_zero_radii) ++uncond[static_cast<std::size_t>(bin(x))];
    Node& hist = res.add_section("radial_histogram");
    for (int b = 0; b < kBins; ++b) {
        char key[16];
        std::snprintf(key, sizeof key, "bin_%02d", b);
        hist.add(key, "lo=" + fmt(b * width) + " hi=" + fmt((b + 1) * width) +
                          " cond=" + std::to_string(cond[static_cast<std::size_t>(b)]) +
                          " uncond=" + std::to_string(uncond[static_cast<std::size_t>(b)]) + " [" + tag + "]");
    }
}

CommandOutput cmd_simulate_hole(const Settings& s) {
    const auto model = WeightModel::make(s.get_double("beta"));
    const auto e = run_hole(s, model);
    CommandOutput out;
    out.record = start_record("simulate hole", s);
    add_hole(out.record.results, e);
    return out;
}

TestFunction make_phi(const Settings& s, const WeightModel& model) {
    const std::string& name = s.raw("phi");
    std::vector<double> params = s.get_list("phi_params");
    if (params.empty() && name == "annulus") {
        params = {1.05, 0.95 * model.hole_outer, 0.02};
    }
    return TestFunction::from_name(name, params);
}

CommandOutput cmd_simulate_conditional(const Settings& s) {
    const auto model = WeightModel::make(s.get_double("beta"));
    const auto phi = make_phi(s, model);
    const auto e = run_hole(s, model);
    const auto sum = conditional_linear_statistics(e, phi);
    CommandOutput out;
    out.record = start_record("simulate conditional", s);
    Node& res = out.record.results;
    const auto tag = mc_tag(e.trials);
    res.add("hole_count", with_provenance(e.results.hole_count, tag));
    res.add("p_hat", with_provenance(e.results.p_hat, tag));
    Node& ls = res.add_section("linear_statistic");
    ls.add("phi", phi.name());
    ls.add("support_radius", with_provenance(phi.support_radius(), kClosed));
    ls.add("accepted", with_provenance(sum.accepted, tag));
    ls.add("mean_cond", with_provenance(sum.mean_cond, tag));
    ls.add("mean_uncond", with_provenance(sum.mean_uncond, tag));
    ls.add("target", with_provenance(sum.target, kClosed));
    ls.add("gap", with_provenance(sum.gap, tag));
    add_depletion(res, "depletion", depletion_statistic(e), e.trials);
    return out;
}

CommandOutput cmd_simulate_dominant(const Settings& s) {
    const auto model = WeightModel::make(s.get_double("beta"));
    const std::int64_t inc = s.get_int("check_inclusion");
    const auto d = dominant_monomial_probability(model, s.get_double("r"), s.get_double("p"), s.get_int("trials"),
                                                 s.get_uint("seed"), thread_count(s), inc != 0);
    CommandOutput out;
    out.record = start_record("simulate dominant", s);
    Node& res = out.record.results;
    const auto tag = mc_tag(d.trials);
    res.add("k0", with_provenance(d.k0, kClosed));
    res.add("n_trunc", with_provenance(d.n_trunc, kClosed));
    res.add("alpha", with_provenance(d.alpha, kClosed));
    res.add("log_tail_constant", with_provenance(d.log_tail_constant, kClosed));
    res.add("events", with_provenance(d.events, tag));
    res.add("p_hat", with_provenance(d.p_hat, tag));
    res.add("ci95_lo", with_provenance(d.ci95.lo, tag));
    res.add("ci95_hi", with_provenance(d.ci95.hi, tag));
    res.add("log_p_hat", with_provenance(d.events > 0 ? std::log(d.p_hat) : -INFINITY, tag));
    res.add("log_lower_bound", with_provenance(d.log_lower_bound, kClosed));
    res.add("inclusion_checked", with_provenance(d.inclusion_checked, tag));
    res.add("inclusion_violations", with_provenance(d.inclusion_violations, tag));
    return out;
}

// ---- check ---------------------------------------------------------------

CommandOutput finish_check(RunRecord record, bool passed, const std::string& detail) {
    record.results.add("passed", passed ? "true" : "false");
    record.results.add("detail", detail);
    CommandOutput out;
    out.record = std::move(record);
    out.check_passed = passed;
    return out;
}

CommandOutput cmd_check_density(const Settings& s) {
    const auto model = WeightModel::make(s.get_double("beta"));
    const double l = s.get_double("l_scale");
    const std::int64_t grid = s.get_int("grid");
    if (grid < 2) throw ParameterError("grid must be at least 2");
    const auto params = make_poly_density_params(1, l, model);
    // one zero of xi_0 a_0 + xi_1 a_1 L z: ratio of complex Gaussians with scale c = a_0 / (a_1 L)
    const double c2 = std::exp(2.0 * (log_coefficient(0, model) - log_coefficient(1, model))) / (l * l);
    double worst = 0.0;
    const double tol = 1e-12;
    for (std::int64_t i = 0; i < grid; ++i) {
        for (std::int64_t j = 0; j < grid; ++j) {
            const cplx z(-3.0 + 6.0 * static_cast<double>(i) / static_cast<double>(grid - 1),
                         -3.0 + 6.0 * static_cast<double>(j) / static_cast<double>(grid - 1));
            const double expect = c2 / (std::numbers::pi * std::pow(c2 + std::norm(z), 2.0));
            worst = std::max(worst, std::abs(joint_density({z}, params) - expect));
        }
    }
    RunRecord r = start_record("check density", s);
    r.results.add("max_abs_error", with_provenance(worst, kCheck));
    r.results.add("tolerance", with_provenance(tol, kClosed));
    return finish_check(std::move(r), worst <= tol, "N=1 density against the Gaussian ratio law on |Re z|,|Im z| <= 3");
}

CommandOutput cmd_check_intensity(const Settings& s) {
    const auto model = WeightModel::make(s.get_double("beta"));
    const double r = s.get_double("r");
    if (!(r > 0.0)) throw ParameterError("r must be positive");
    const auto plan = make_simulation_plan(r, model, 2.0);
    const std::int64_t n = plan.n_trunc;
    // E n(r) = sum k t_k / sum t_k with t_k = a_k^2 r^{2k}, in log form
    std::vector<double> lt(static_cast<std::size_t>(n + 1));
    for (std::int64_t k = 0; k <= n; ++k) {
        lt[static_cast<std::size_t>(k)] = 2.0 * log_coefficient(k, model) + 2.0 * static_cast<double>(k) * std::log(r);
    }
    const double top = *std::max_element(lt.begin(), lt.end());
    double num = 0.0;
    double den = 0.0;
    for (std::int64_t k = 0; k <= n; ++k) {
        const double t = std::exp(lt[static_cast<std::size_t>(k)] - top);
        num += static_cast<double>(k) * t;
        den += t;
    }
    const double flux = num / den;
    const double integrated = expected_zero_count(model, n, r);
    const double err = std::abs(integrated - flux);
    const double tol = 1e-6 * std::max(1.0, flux);
    RunRecord rec = start_record("check intensity", s);
    rec.results.add("n_trunc", with_provenance(n, kClosed));
    rec.results.add("flux_count", with_provenance(flux, kClosed));
    rec.results.add("integrated_intensity", with_provenance(integrated, kCheck));
    rec.results.add("abs_error", with_provenance(err, kCheck));
    rec.results.add("tolerance", with_provenance(tol, kClosed));
    return finish_check(std::move(rec), err <= tol, "integrated first intensity against the flux identity");
}

CommandOutput cmd_check_stirling(const Settings& s) {
    const auto model = WeightModel::make(s.get_double("beta"));
    const std::int64_t k_max = s.get_int("grid");
    if (k_max < 1) throw ParameterError("grid (k_max) must be positive");
    const std::int64_t k0 = stirling_threshold(model, k_max);
    std::int64_t failures = 0;
    for (std::int64_t k = std::max<std::int64_t>(k0, 1); k <= k_max; ++k) {
        const double lg = log_gamma(2.0 * (static_cast<double>(k) + 1.0) / model.beta);
        if (!stirling_bounds(k, model).contains(lg)) ++failures;
    }
    RunRecord rec = start_record("check stirling", s);
    rec.results.add("c_beta", with_provenance(model.c_beta, kClosed));
    rec.results.add("threshold", with_provenance(k0, kCheck));
    rec.results.add("k_max", with_provenance(static_cast<double>(k_max), kClosed));
    rec.results.add("failures", with_provenance(failures, kCheck));
    const bool ok = failures == 0 && k0 <= 50;
    return finish_check(std::move(rec), ok, "Stirling bracket from the threshold (at most 50) to k_max");
}

CommandOutput cmd_check_tail(const Settings& s) {
    const auto model = WeightModel::make(s.get_double("beta"));
    const double r = s.get_double("r");
    const double alpha = s.raw("alpha") == "auto" ? std::pow(4.0, model.beta) * std::numbers::e : s.get_double("alpha");
    const double big_b = s.get_double("big_b");
    const auto plan = make_scaled_plan(r, model, alpha, big_b);
    const std::int64_t grid = s.get_int("grid");
    if (grid < 2 || grid > 4096) throw ParameterError("grid must be in [2, 4096]");
    const auto ts = tail_exceedance_study(model, plan, s.get_int("trials"), s.get_uint("seed"),
                                          static_cast<int>(grid), thread_count(s));
    RunRecord rec = start_record("check tail", s);
    const auto tag = mc_tag(ts.trials);
    rec.results.add("n_trunc", with_provenance(ts.n_trunc, kClosed));
    rec.results.add("alpha", with_provenance(ts.alpha, kClosed));
    rec.results.add("log_bound", with_provenance(ts.log_bound, kClosed));
    rec.results.add("max_log_tail", with_provenance(ts.max_log_tail, tag));
    rec.results.add("exceedances", with_provenance(ts.exceedances, tag));
    return finish_check(std::move(rec), ts.exceedances == 0, "tail modulus against the bound on the lattice in |z| <= B r");
}

CommandOutput cmd_check_potential(const Settings& s) {
    const double alpha = s.get_double("alpha");
    const auto model = WeightModel::make(s.get_double("beta"));
    const double p = s.get_double("p");
    const std::int64_t grid = s.get_int("grid");
    if (grid < 2) throw ParameterError("grid must be at least 2");
    const auto mu = minimizer_measure(alpha, model, p);
    const double top = 1.5 * std::pow(alpha, 1.0 / model.beta);
    double worst = 0.0;
    for (std::int64_t i = 0; i < grid; ++i) {
        const double x = top * static_cast<double>(i) / static_cast<double>(grid - 1);
        worst = std::max(worst, std::abs(potential_closed(mu, alpha, model, p, x) - potential_quadrature(mu, x)));
    }
    const auto rep = equilibrium_report(mu, alpha, model, p);
    const double tol = 1e-10;
    RunRecord rec = start_record("check potential", s);
    rec.results.add("max_abs_gap", with_provenance(worst, kCheck));
    rec.results.add("g_max", with_provenance(rep.g_max, kClosed));
    rec.results.add("g_support_dev", with_provenance(rep.g_support_dev, kClosed));
    rec.results.add("tolerance", with_provenance(tol, kClosed));
    const bool ok = worst <= tol && rep.g_max <= 1e-9 && rep.g_support_dev <= 1e-9;
    return finish_check(std::move(rec), ok, "closed-form potential against the circle-average potential; g conditions");
}

} // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{
        "table",           "measure",         "varopt",          "simulate hole",   "simulate conditional",
        "simulate dominant", "check density", "check intensity", "check stirling", "check tail",
        "check potential"};
    return names;
}

std::vector<std::pair<std::string, std::string>> default_settings(const std::string& command) {
    const Defaults mc_common{{"trials", "1000"}, {"seed", "1"}, {"threads", "1"}};
    auto join = [](Defaults a, const Defaults& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    if (command == "table") return with_common({{"beta", "2"}, {"p_list", "0,0.5,1,2,e,4"}});
    if (command == "measure") return with_common({{"alpha", "10"}, {"beta", "2"}, {"p", "0"}});
    if (command == "varopt") {
        return with_common({{"alpha", "10"}, {"beta", "2"}, {"p", "0"}, {"grid", "400"},
                            {"method", "interior_point"}, {"constraint", "auto"}});
    }
    const Defaults hole{{"beta", "2"}, {"r", "1"}, {"search_multiple", "0"}, {"uncond_trials", "-1"}};
    if (command == "simulate hole") return with_common(join(hole, mc_common));
    if (command == "simulate conditional") {
        return with_common(join(join(hole, mc_common), {{"phi", "annulus"}, {"phi_params", ""}}));
    }
    if (command == "simulate dominant") {
        return with_common(join({{"beta", "2"}, {"r", "1"}, {"p", "0"}, {"check_inclusion", "1"}}, mc_common));
    }
    if (command == "check density") return with_common({{"beta", "2"}, {"l_scale", "1"}, {"grid", "201"}});
    if (command == "check intensity") return with_common({{"beta", "2"}, {"r", "1.5"}});
    if (command == "check stirling") return with_common({{"beta", "2"}, {"grid", "100000"}});
    if (command == "check tail") {
        return with_common(join({{"beta", "2"}, {"r", "1.5"}, {"alpha", "auto"}, {"big_b", "1"}, {"grid", "32"}},
                                mc_common));
    }
    if (command == "check potential") {
        return with_common({{"alpha", "10"}, {"beta", "2"}, {"p", "0.5"}, {"grid", "200"}});
    }
    throw ParseError("unknown command '" + command + "'");
}

CommandOutput run_command(const std::string& command, const Settings& s) {
    CommandOutput out;
    if (command == "table") {
        out = cmd_table(s);
    } else if (command == "measure") {
        out = cmd_measure(s);
    } else if (command == "varopt") {
        out = cmd_varopt(s);
    } else if (command == "simulate hole") {
        out = cmd_simulate_hole(s);
    } else if (command == "simulate conditional") {
        out = cmd_simulate_conditional(s);
    } else if (command == "simulate dominant") {
        out = cmd_simulate_dominant(s);
    } else if (command == "check density") {
        out = cmd_check_density(s);
    } else if (command == "check intensity") {
        out = cmd_check_intensity(s);
    } else if (command == "check stirling") {
        out = cmd_check_stirling(s);
    } else if (command == "check tail") {
        out = cmd_check_tail(s);
    } else if (command == "check potential") {
        out = cmd_check_potential(s);
    } else {
        throw ParseError("unknown command '" + command + "'");
    }
    out.record.finished_at = utc_timestamp();
    return out;
}

std::string table_csv(const std::vector<double>& p_list) {
    std::ostringstream os;
    os << "p,q,Z_p,regime\n";
    for (double p : p_list) {
        if (p == 1.0) {
            os << format_number(p) << ",,,singular\n";
            continue;
        }
        const auto hp = hole_params(p);
        os << format_number(p) << ',' << format_number(hp.q) << ',' << format_number(hp.z_p) << ','
           << to_string(hp.regime) << '\n';
    }
    return os.str();
}

} // namespace pexgaf::cli
