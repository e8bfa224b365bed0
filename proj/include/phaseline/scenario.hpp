#ifndef PHASELINE_SCENARIO_HPP
#define PHASELINE_SCENARIO_HPP

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "phaseline/asymptotics.hpp"
#include "phaseline/io.hpp"
#include "phaseline/pde_solver.hpp"
#include "phaseline/steady_states.hpp"
#include "phaseline/sturm.hpp"

namespace phaseline {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& w) : std::runtime_error(w) {}
};

struct NoSignChange : std::runtime_error {
    explicit NoSignChange(const std::string& w) : std::runtime_error(w) {}
};

inline json nonlinearity_to_json(const Nonlinearity& f)
{
    return json{{"coeffs", f.core_coeffs()}, {"kappa", f.kappa()}, {"delta", f.blend_width()}};
}

inline Nonlinearity nonlinearity_from_json(const json& j, const std::string& path = "nonlinearity")
{
    if (!j.is_object() || !j.contains("coeffs") || !j.contains("kappa") || !j.contains("delta"))
        throw ConfigError(path + ": need coeffs, kappa, delta");
    std::vector<double> coeffs;
    for (const auto& c : j["coeffs"]) coeffs.push_back(c.get<double>());
    return Nonlinearity(coeffs, j["kappa"].get<double>(), j["delta"].get<double>());
}

/// One canned experiment: a nonlinearity, a datum, a solver configuration,
/// and a list of named assertions evaluated on the resulting trajectory.
struct Scenario {
    std::string name;
    json nonlinearity;
    double L = 50.0;
    int n = 2001;
    double dt = 0.05;
    double T = 60.0;
    std::vector<double> snapshot_times;
    json u0;
    double window = 20.0;
    double burn_in = -1.0;  // default: T/2
    double radius = 1e-2;
    double blowup_bound = 0.0;
    json checks = json::array();
    json bisect;  // optional
    json raw;     // canonical document, used for the config hash

    Nonlinearity make_nonlinearity() const { return nonlinearity_from_json(nonlinearity); }
    Grid make_grid() const { return Grid::symmetric(L, n); }
    double effective_burn_in() const { return burn_in >= 0.0 ? burn_in : 0.5 * T; }
    std::uint64_t hash() const { return io::config_hash(raw); }
};

namespace detail {

template <typename T>
T need(const json& j, const std::string& key, const std::string& path)
{
    if (!j.contains(key)) throw ConfigError(path + "." + key + ": missing");
    try {
        return j.at(key).get<T>();
    } catch (const std::exception&) {
        throw ConfigError(path + "." + key + ": wrong type");
    }
}

template <typename T>
T pick(const json& j, const std::string& key, T fallback)
{
    if (!j.contains(key)) return fallback;
    return j.at(key).get<T>();
}

} // namespace detail

inline Scenario parse_scenario(const json& doc)
{
    if (!doc.is_object()) throw ConfigError("scenario: document must be an object");
    Scenario sc;
    sc.raw = doc;
    sc.name = detail::need<std::string>(doc, "name", "scenario");
    if (!doc.contains("nonlinearity")) throw ConfigError("scenario.nonlinearity: missing");
    sc.nonlinearity = doc["nonlinearity"];
    nonlinearity_from_json(sc.nonlinearity);  // validate now

    if (!doc.contains("grid")) throw ConfigError("scenario.grid: missing");
    sc.L = detail::need<double>(doc["grid"], "L", "scenario.grid");
    sc.n = detail::need<int>(doc["grid"], "n", "scenario.grid");
    if (sc.n < 3) throw ConfigError("scenario.grid.n: need n >= 3");

    sc.dt = detail::need<double>(doc, "dt", "scenario");
    sc.T = detail::need<double>(doc, "T", "scenario");
    if (sc.dt <= 0.0) throw ConfigError("scenario.dt: must be > 0");
    if (sc.T <= 0.0) throw ConfigError("scenario.T: must be > 0");

    if (!doc.contains("snapshots")) throw ConfigError("scenario.snapshots: missing");
    const json& snaps = doc["snapshots"];
    if (snaps.is_array()) {
        for (const auto& t : snaps) sc.snapshot_times.push_back(t.get<double>());
    } else if (snaps.is_object()) {
        const double from = detail::need<double>(snaps, "from", "scenario.snapshots");
        const double to = detail::need<double>(snaps, "to", "scenario.snapshots");
        const int count = detail::need<int>(snaps, "count", "scenario.snapshots");
        if (count < 2) throw ConfigError("scenario.snapshots.count: need >= 2");
        for (int i = 0; i < count; ++i)
            sc.snapshot_times.push_back(from + (to - from) * i / (count - 1));
    } else {
        throw ConfigError("scenario.snapshots: need an array or {from,to,count}");
    }
    for (double t : sc.snapshot_times)
        if (t < 0.0 || t > sc.T + 1e-12)
            throw ConfigError("scenario.snapshots: time outside [0, T]");

    if (!doc.contains("u0")) throw ConfigError("scenario.u0: missing");
    sc.u0 = doc["u0"];
    if (!sc.u0.contains("kind")) throw ConfigError("scenario.u0.kind: missing");

    sc.window = detail::pick<double>(doc, "window", 20.0);
    sc.burn_in = detail::pick<double>(doc, "burn_in", -1.0);
    sc.radius = detail::pick<double>(doc, "radius", 1e-2);
    sc.blowup_bound = detail::pick<double>(doc, "blowup_bound", 0.0);
    if (doc.contains("checks")) {
        sc.checks = doc["checks"];
        if (!sc.checks.is_array()) throw ConfigError("scenario.checks: must be an array");
    }
    if (doc.contains("bisect")) sc.bisect = doc["bisect"];
    return sc;
}

inline Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("scenario file: cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError("scenario file " + path.string() + ": " + e.what());
    }
    return parse_scenario(doc);
}

// --- initial data ----------------------------------------------------------

namespace detail {

inline double cosine_ramp(double x, double lo_val, double hi_val, double center, double width)
{
    const double s = (x - (center - 0.5 * width)) / width;
    if (s <= 0.0) return lo_val;
    if (s >= 1.0) return hi_val;
    return lo_val + (hi_val - lo_val) * 0.5 * (1.0 - std::cos(3.14159265358979323846 * s));
}

} // namespace detail

inline InitialDatum build_datum(const Grid& g, const json& u0)
{
    const std::string kind = u0.at("kind").get<std::string>();
    const json params = u0.value("params", json::object());
    InitialDatum d;
    d.grid = g;
    d.values.resize(g.n);

    if (kind == "gaussian") {
        const double amplitude = detail::need<double>(params, "amplitude", "u0.params");
        const double denom = detail::pick<double>(params, "denom", 8.0);
        const double center = detail::pick<double>(params, "center", 0.0);
        const double offset = detail::pick<double>(params, "offset", 0.0);
        for (int i = 0; i < g.n; ++i) {
            const double dx = g.x(i) - center;
            d.values[i] = offset + amplitude * std::exp(-dx * dx / denom);
        }
        d.theta_minus0 = d.theta_plus0 = offset;
    } else if (kind == "smoothed_step") {
        const double left = detail::need<double>(params, "left", "u0.params");
        const double right = detail::need<double>(params, "right", "u0.params");
        const double center = detail::pick<double>(params, "center", 0.0);
        const double width = detail::pick<double>(params, "width", 4.0);
        for (int i = 0; i < g.n; ++i)
            d.values[i] = detail::cosine_ramp(g.x(i), left, right, center, width);
        d.theta_minus0 = left;
        d.theta_plus0 = right;
    } else if (kind == "g_def") {
        // plateau datum: beta on (-inf,-q), theta on [-q,0], gamma on (0,inf),
        // with cosine mollification of the two jumps
        const double beta = detail::need<double>(params, "beta", "u0.params");
        const double theta = detail::need<double>(params, "theta", "u0.params");
        const double q = detail::need<double>(params, "q", "u0.params");
        const double gamma = detail::need<double>(params, "gamma", "u0.params");
        const double width = detail::pick<double>(params, "width", 1.0);
        for (int i = 0; i < g.n; ++i) {
            const double x = g.x(i);
            if (x <= -0.5 * q)
                d.values[i] = detail::cosine_ramp(x, beta, theta, -q, width);
            else
                d.values[i] = detail::cosine_ramp(x, theta, gamma, 0.0, width);
        }
        d.theta_minus0 = beta;
        d.theta_plus0 = gamma;
    } else if (kind == "file") {
        const std::string path = detail::need<std::string>(params, "path", "u0.params");
        const auto cols = io::read_csv(path);
        if (cols.size() < 2 || cols[0].size() < 2)
            throw ConfigError("u0.params.path: need a CSV with x,u columns");
        const auto& fx = cols[0];
        const auto& fu = cols[1];
        for (int i = 0; i < g.n; ++i) {
            const double x = g.x(i);
            if (x <= fx.front()) {
                d.values[i] = fu.front();
            } else if (x >= fx.back()) {
                d.values[i] = fu.back();
            } else {
                const auto it = std::upper_bound(fx.begin(), fx.end(), x);
                const std::size_t j = it - fx.begin();
                const double w = (x - fx[j - 1]) / (fx[j] - fx[j - 1]);
                d.values[i] = fu[j - 1] * (1.0 - w) + fu[j] * w;
            }
        }
        d.theta_minus0 = detail::pick<double>(params, "theta_minus", fu.front());
        d.theta_plus0 = detail::pick<double>(params, "theta_plus", fu.back());
    } else {
        throw ConfigError("u0.kind: unknown kind '" + kind + "'");
    }
    d.limits_equal = d.theta_minus0 == d.theta_plus0;
    return d;
}

// --- checks -----------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ScenarioReport {
    std::string name;
    std::uint64_t config_hash = 0;
    std::vector<CheckResult> checks;
    bool all_passed = true;
};

/// Shared lazily-computed analyses handed to the individual checks.
class CheckContext {
public:
    CheckContext(const Nonlinearity& f, const Scenario& sc, const Trajectory& traj)
        : f_(f), sc_(sc), traj_(traj)
    {
    }

    const Nonlinearity& f() const { return f_; }
    const Scenario& scenario() const { return sc_; }
    const Trajectory& trajectory() const { return traj_; }

    const OmegaEstimate& omega()
    {
        if (!omega_)
            omega_ = omega_estimate(f_, traj_, sc_.window, sc_.effective_burn_in(), sc_.radius);
        return *omega_;
    }
    const PiComponent& pi0()
    {
        if (!pi0_) pi0_ = component_pi0(f_);
        return *pi0_;
    }
    const SteadyProfile& wave()
    {
        if (!wave_) wave_ = standing_waves(f_, pi0_ ? *pi0_ : pi0()).first;
        return *wave_;
    }
    const SteadyProfile& ground()
    {
        if (!ground_) ground_ = ground_state(f_, pi0_ ? *pi0_ : pi0());
        return *ground_;
    }

    static double interp_profile(const SteadyProfile& prof, double x)
    {
        if (x <= prof.xs.front()) return prof.phi.front();
        if (x >= prof.xs.back()) return prof.phi.back();
        const double jr = (x - prof.xs.front()) / (prof.xs[1] - prof.xs[0]);
        const std::size_t j = static_cast<std::size_t>(jr);
        const double w = jr - j;
        return prof.phi[j] * (1.0 - w) + prof.phi[j + 1] * w;
    }

private:
    const Nonlinearity& f_;
    const Scenario& sc_;
    const Trajectory& traj_;
    std::optional<OmegaEstimate> omega_;
    std::optional<PiComponent> pi0_;
    std::optional<SteadyProfile> wave_;
    std::optional<SteadyProfile> ground_;
};

namespace detail {

inline std::string fmt_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

inline CheckResult check_conserved_region(CheckContext& ctx, const json& spec)
{
    const double lo = need<double>(spec, "lo", "check");
    const double hi = need<double>(spec, "hi", "check");
    const double tol = pick<double>(spec, "tol", 1e-8);
    const bool ok = conserved_region_check(ctx.trajectory(), lo, hi, tol);
    return {"conserved_region", ok,
            "[" + fmt_num(lo) + ", " + fmt_num(hi) + "] tol " + fmt_num(tol)};
}

inline CheckResult check_quasiconvergent(CheckContext& ctx, const json& spec)
{
    const double res_tol = need<double>(spec, "res_tol", "check");
    const double ut_tol = need<double>(spec, "ut_tol", "check");
    const QCVerdict v = quasiconvergence_verdict(ctx.omega(), res_tol, ut_tol);
    bool ok = v.quasiconvergent;
    if (pick<bool>(spec, "expect_convergent", false)) ok = ok && v.convergent;
    return {"quasiconvergent", ok,
            "clusters " + std::to_string(v.cluster_count) + ", max residual " +
                fmt_num(v.max_residual) + ", final sup|u_t| " + fmt_num(v.final_ut_sup)};
}

inline CheckResult check_cluster_near(CheckContext& ctx, const json& spec, bool ground)
{
    const double tol = need<double>(spec, "tol", "check");
    const double shift_range = pick<double>(spec, "shift_range", 10.0);
    const SteadyProfile& ref = ground ? ctx.ground() : ctx.wave();
    double best = std::numeric_limits<double>::infinity();
    for (const ProfileCluster& c : ctx.omega().clusters) {
        const auto [d, s] = shift_fitted_distance(
            ctx.omega().window_xs, c.representative,
            [&](double x) { return CheckContext::interp_profile(ref, x); }, shift_range);
        (void)s;
        best = std::min(best, d);
    }
    return {ground ? "cluster_near_ground_state" : "cluster_near_standing_wave", best <= tol,
            "best shift-fitted distance " + fmt_num(best) + " (tol " + fmt_num(tol) + ")"};
}

inline CheckResult check_zero_counts(CheckContext& ctx, const json& spec)
{
    const std::string field = pick<std::string>(spec, "field", std::string("ux"));
    const int skip = pick<int>(spec, "skip", 1);
    const double band = pick<double>(spec, "band_rel", 1e-6);
    const double W = ctx.scenario().window;
    std::vector<double> times;
    std::vector<ZeroReport> reports;
    const auto& states = ctx.trajectory().states;
    for (std::size_t k = static_cast<std::size_t>(skip); k < states.size(); ++k) {
        const SolutionState& s = states[k];
        times.push_back(s.t);
        if (field == "ux") {
            reports.push_back(critical_points(s, -W, W, band));
        } else if (field == "u_minus_theta_plus") {
            std::vector<double> xs(s.grid.n), v(s.grid.n);
            for (int i = 0; i < s.grid.n; ++i) {
                xs[i] = s.grid.x(i);
                v[i] = s.u[i] - s.theta_plus;
            }
            reports.push_back(zero_count(xs, v, -W, W, band));
        } else {
            throw ConfigError("check.field: unknown field '" + field + "'");
        }
    }
    const AuditVerdict v = monotonicity_audit(times, reports);
    return {"zero_counts_nonincreasing(" + field + ")", v.nonincreasing,
            std::to_string(v.considered) + " snapshots audited, " +
                std::to_string(v.drop_times.size()) + " drops"};
}

inline CheckResult check_reflection_finite(CheckContext& ctx, const json& spec)
{
    const double band = pick<double>(spec, "band_rel", 1e-6);
    std::vector<double> lambdas;
    for (const auto& l : spec.value("lambdas", json::array({-5.0, 0.0, 5.0})))
        lambdas.push_back(l.get<double>());
    const SolutionState& s = ctx.trajectory().states.back();
    bool ok = true;
    std::string detail;
    for (double l : lambdas) {
        const ZeroReport rep = reflection_zero_count(s, l, band);
        ok = ok && !rep.degenerate;
        detail += (detail.empty() ? "" : ", ") + fmt_num(l) + ": " + std::to_string(rep.count);
    }
    return {"reflection_finite", ok, detail};
}

inline CheckResult check_tail_regime(CheckContext& ctx, const json& spec)
{
    const std::string expect = need<std::string>(spec, "expect", "check");
    const double zero_band = pick<double>(spec, "zero_band", 1e-9);
    const double late = pick<double>(spec, "late_window", 0.25 * ctx.scenario().T);
    const TailClass tc = classify_tail(ctx.trajectory(), zero_band, late);
    return {"tail_regime", std::string(to_string(tc.regime)) == expect,
            std::string("classified ") + to_string(tc.regime) + ", expected " + expect};
}

inline CheckResult check_critical_points_settle(CheckContext& ctx, const json& spec)
{
    const double band = pick<double>(spec, "band_rel", 1e-6);
    const int last = pick<int>(spec, "last", 5);
    const double W = ctx.scenario().window;
    std::vector<int> counts;
    for (const SolutionState& s : ctx.trajectory().states) {
        const ZeroReport rep = critical_points(s, -W, W, band);
        if (!rep.degenerate) counts.push_back(rep.count);
    }
    if (static_cast<int>(counts.size()) < last)
        return {"critical_points_settle", false, "not enough usable snapshots"};
    bool settled = true;
    for (std::size_t k = counts.size() - last; k < counts.size(); ++k)
        settled = settled && counts[k] == counts[counts.size() - 1];
    return {"critical_points_settle", settled,
            "final count " + std::to_string(counts.back())};
}

inline CheckResult check_containment(CheckContext& ctx, const json& spec)
{
    const double tol = pick<double>(spec, "tol", 1e-3);
    const double max_outside = need<double>(spec, "max_outside", "check");
    const SolutionState& s = ctx.trajectory().states.back();
    const TrajectoryCurve curve = spatial_trajectory(s, ctx.scenario().window);
    const ContainmentReport rep = trajectory_in_component(curve, ctx.pi0(), tol);
    return {"trajectory_containment", rep.max_outside_distance <= max_outside,
            "max outside distance " + fmt_num(rep.max_outside_distance)};
}

inline CheckResult check_extrema_signs(CheckContext& ctx, const json& spec)
{
    const double band = pick<double>(spec, "band", 1e-8);
    const double W = ctx.scenario().window;
    const double burn = ctx.scenario().effective_burn_in();
    bool ok = true;
    int tested = 0;
    for (const SolutionState& s : ctx.trajectory().states) {
        if (s.t < burn) continue;
        ++tested;
        ok = ok && extrema_sign_check(s, band, -W, W);
    }
    return {"extrema_signs_late", ok && tested > 0, std::to_string(tested) + " snapshots"};
}

inline CheckResult check_simple_curves(CheckContext& ctx, const json& spec)
{
    const double tol = pick<double>(spec, "tol", 1e-6);
    const double W = ctx.scenario().window;
    const double burn = ctx.scenario().effective_burn_in();
    bool ok = true;
    int tested = 0;
    for (const SolutionState& s : ctx.trajectory().states) {
        if (s.t < burn) continue;
        ++tested;
        ok = ok && simple_curve_check(spatial_trajectory(s, W), tol);
    }
    return {"simple_curves_late", ok && tested > 0, std::to_string(tested) + " snapshots"};
}

} // namespace detail

inline CheckResult evaluate_check(CheckContext& ctx, const json& spec)
{
    const std::string name = detail::need<std::string>(spec, "name", "check");
    if (name == "conserved_region") return detail::check_conserved_region(ctx, spec);
    if (name == "quasiconvergent") return detail::check_quasiconvergent(ctx, spec);
    if (name == "cluster_near_standing_wave") return detail::check_cluster_near(ctx, spec, false);
    if (name == "cluster_near_ground_state") return detail::check_cluster_near(ctx, spec, true);
    if (name == "zero_counts_nonincreasing") return detail::check_zero_counts(ctx, spec);
    if (name == "reflection_finite") return detail::check_reflection_finite(ctx, spec);
    if (name == "tail_regime") return detail::check_tail_regime(ctx, spec);
    if (name == "critical_points_settle") return detail::check_critical_points_settle(ctx, spec);
    if (name == "trajectory_containment") return detail::check_containment(ctx, spec);
    if (name == "extrema_signs_late") return detail::check_extrema_signs(ctx, spec);
    if (name == "simple_curves_late") return detail::check_simple_curves(ctx, spec);
    throw ConfigError("checks: unknown check '" + name + "'");
}

/// Runs one scenario end to end; artifacts (snapshot CSVs, run manifest, and
/// the report document) go under out_dir/<name>/ when out_dir is given.
inline ScenarioReport run_scenario(const Scenario& sc,
                                   const std::optional<std::filesystem::path>& out_dir = {})
{
    const Nonlinearity f = sc.make_nonlinearity();
    const Grid grid = sc.make_grid();
    const InitialDatum u0 = build_datum(grid, sc.u0);

    SolverConfig cfg;
    cfg.dt = sc.dt;
    cfg.T = sc.T;
    cfg.snapshot_times = sc.snapshot_times;
    cfg.blowup_bound = sc.blowup_bound;
    Trajectory traj = run(f, u0, cfg);
    traj.config_hash = sc.hash();

    ScenarioReport report;
    report.name = sc.name;
    report.config_hash = traj.config_hash;

    CheckContext ctx(f, sc, traj);
    for (const auto& spec : sc.checks) {
        const CheckResult r = evaluate_check(ctx, spec);
        report.all_passed = report.all_passed && r.passed;
        report.checks.push_back(r);
    }

    if (out_dir) {
        const auto dir = *out_dir / sc.name;
        io::write_run(dir, sc.raw, traj);
        json doc;
        doc["name"] = report.name;
        doc["config_hash"] = io::hash_hex(report.config_hash);
        doc["all_passed"] = report.all_passed;
        json checks = json::array();
        for (const CheckResult& r : report.checks)
            checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        doc["checks"] = checks;
        std::ofstream out(dir / "report.json");
        out << doc.dump(2) << "\n";
    }
    return report;
}

// --- threshold bisection -----------------------------------------------------

struct BisectResult {
    double threshold = 0.0;
    double lo = 0.0, hi = 0.0;
    int runs = 0;
    json midpoint_config;
    Trajectory midpoint_run;
};

/// Bisection on one scalar u0 parameter until the bracket is narrower than
/// tol.  The outcome classifier is monotone in the parameter by comparison,
/// so a single sign change separates decay from spreading.
inline BisectResult threshold_bisect(const Scenario& sc, const std::string& param, double lo,
                                     double hi, double tol, int max_runs)
{
    if (!(hi > lo)) throw ConfigError("bisect: need hi > lo");
    const Nonlinearity f = sc.make_nonlinearity();
    const Grid grid = sc.make_grid();
    const double level = sc.bisect.is_object()
                             ? detail::pick<double>(sc.bisect.value("classifier", json::object()),
                                                    "level", 0.6)
                             : 0.6;

    SolverConfig cfg;
    cfg.dt = sc.dt;
    cfg.T = sc.T;
    cfg.snapshot_times = sc.snapshot_times;
    cfg.blowup_bound = sc.blowup_bound;

    const std::vector<int> idx = detail::window_indices(grid, sc.window);

    BisectResult result;
    auto run_at = [&](double value) {
        json u0_spec = sc.u0;
        u0_spec["params"][param] = value;
        const InitialDatum d = build_datum(grid, u0_spec);
        ++result.runs;
        return run(f, d, cfg);
    };
    auto classify_high = [&](const Trajectory& traj) {
        for (const SolutionState& s : traj.states)
            for (int i : idx)
                if (s.u[i] >= level) return true;
        return false;
    };

    result.lo = lo;
    result.hi = hi;
    if (hi - lo >= tol) {
        const bool lo_high = classify_high(run_at(lo));
        const bool hi_high = classify_high(run_at(hi));
        if (lo_high == hi_high)
            throw NoSignChange("threshold_bisect: both endpoints classify as " +
                               std::string(lo_high ? "high" : "low"));
        while (result.hi - result.lo >= tol && result.runs < max_runs) {
            const double mid = 0.5 * (result.lo + result.hi);
            const bool mid_high = classify_high(run_at(mid));
            if (mid_high == lo_high)
                result.lo = mid;
            else
                result.hi = mid;
        }
    }
    result.threshold = 0.5 * (result.lo + result.hi);

    json u0_spec = sc.u0;
    u0_spec["params"][param] = result.threshold;
    result.midpoint_config = sc.raw;
    result.midpoint_config["u0"] = u0_spec;
    const InitialDatum d = build_datum(grid, u0_spec);
    result.midpoint_run = run(f, d, cfg);
    result.midpoint_run.config_hash = io::config_hash(result.midpoint_config);
    return result;
}

} // namespace phaseline

#endif
