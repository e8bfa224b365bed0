#ifndef PHASELINE_ASYMPTOTICS_HPP
#define PHASELINE_ASYMPTOTICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "phaseline/pde_solver.hpp"
#include "phaseline/phase_portrait.hpp"
#include "phaseline/steady_states.hpp"

namespace phaseline {

struct InsufficientData : std::runtime_error {
    explicit InsufficientData(const std::string& w) : std::runtime_error(w) {}
};

/// The plane curve (u(x), u_x(x)) of a snapshot over an observation window.
struct TrajectoryCurve {
    std::vector<PhasePoint> points;
    double source_time = 0.0;
};

inline TrajectoryCurve spatial_trajectory(const SolutionState& state, double a, double b)
{
    TrajectoryCurve curve;
    curve.source_time = state.t;
    for (int i = 0; i < state.grid.n; ++i) {
        const double x = state.grid.x(i);
        if (x < a || x > b) continue;
        curve.points.push_back({state.u[i], state.ux[i]});
    }
    if (curve.points.size() < 8)
        throw InsufficientData("spatial_trajectory: fewer than 8 samples in the window");
    return curve;
}

inline TrajectoryCurve spatial_trajectory(const SolutionState& state, double half_width)
{
    return spatial_trajectory(state, -half_width, half_width);
}

namespace detail {

// Proper segment intersection with a touching band: crossings that only come
// within tol of an endpoint do not count.
inline bool segments_cross(PhasePoint a, PhasePoint b, PhasePoint c, PhasePoint d, double tol)
{
    const auto orient = [](PhasePoint p, PhasePoint q, PhasePoint r) {
        return (q.u - p.u) * (r.v - p.v) - (q.v - p.v) * (r.u - p.u);
    };
    const double d1 = orient(a, b, c);
    const double d2 = orient(a, b, d);
    const double d3 = orient(c, d, a);
    const double d4 = orient(c, d, b);
    const double len_ab = std::hypot(b.u - a.u, b.v - a.v);
    const double len_cd = std::hypot(d.u - c.u, d.v - c.v);
    // orientation values scale with segment length: demand a margin of
    // tol * length so near-touches are not flagged
    const double m1 = tol * len_ab, m2 = tol * len_cd;
    return ((d1 > m1 && d2 < -m1) || (d1 < -m1 && d2 > m1)) &&
           ((d3 > m2 && d4 < -m2) || (d3 < -m2 && d4 > m2));
}

} // namespace detail

/// True iff no two non-adjacent segments of the polyline properly cross;
/// touches within tol are tolerated.
inline bool simple_curve_check(const TrajectoryCurve& curve, double tol = 1e-9)
{
    const auto& p = curve.points;
    const std::size_t n = p.size();
    if (n < 4) return true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 2; j + 1 < n; ++j) {
            if (detail::segments_cross(p[i], p[i + 1], p[j], p[j + 1], tol)) return false;
        }
    }
    return true;
}

/// True iff every significant interior local minimum of u on the window has
/// value <= band and every significant local maximum has value >= -band.
/// Plateau wiggles below the discrete noise floor are not extrema.
inline bool extrema_sign_check(const SolutionState& state, double band, double a, double b)
{
    std::vector<double> u;
    for (int i = 0; i < state.grid.n; ++i) {
        const double x = state.grid.x(i);
        if (x >= a && x <= b) u.push_back(state.u[i]);
    }
    if (u.size() < 3) return true;
    double sup = 0.0;
    for (double v : u) sup = std::max(sup, std::abs(v));
    const double noise = std::max(1e-12, 1e-11 * sup);

    int dir = 0;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        const double diff = u[i + 1] - u[i];
        if (std::abs(diff) <= noise) continue;
        const int new_dir = diff > 0.0 ? +1 : -1;
        if (dir == +1 && new_dir == -1) {
            if (u[i] < -band) return false;  // negative local maximum
        } else if (dir == -1 && new_dir == +1) {
            if (u[i] > band) return false;  // positive local minimum
        }
        dir = new_dir;
    }
    return true;
}

struct ProfileCluster {
    std::vector<double> representative;  // last member, restricted to the window
    double representative_time = 0.0;
    std::vector<double> member_times;
    double max_intra_distance = 0.0;  // to the first member
    double residual = 0.0;
};

struct OmegaEstimate {
    double window = 0.0;
    double burn_in = 0.0;
    std::vector<double> window_xs;
    std::vector<ProfileCluster> clusters;
    std::vector<std::array<double, 2>> ut_sup_series;  // (t, sup_window |u_t|)
};

namespace detail {

inline std::vector<int> window_indices(const Grid& g, double half_width)
{
    std::vector<int> idx;
    for (int i = 0; i < g.n; ++i)
        if (std::abs(g.x(i)) <= half_width + 1e-12) idx.push_back(i);
    return idx;
}

inline double linf(std::span<const double> a, std::span<const double> b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace detail

/// Greedy clustering of the post-burn-in window profiles under the L-inf
/// distance; a snapshot joins the first cluster whose founding member is
/// within radius, so members stay within radius of the anchor by
/// construction.  Representatives are the most recent members.
inline OmegaEstimate omega_estimate(const Nonlinearity& f, const Trajectory& traj, double window,
                                    double burn_in, double radius)
{
    if (traj.states.empty()) throw InsufficientData("omega_estimate: empty trajectory");
    const Grid& g = traj.states.front().grid;
    const std::vector<int> idx = detail::window_indices(g, window);
    if (idx.size() < 3) throw InsufficientData("omega_estimate: window too small");

    OmegaEstimate est;
    est.window = window;
    est.burn_in = burn_in;
    for (int i : idx) est.window_xs.push_back(g.x(i));

    auto restrict_u = [&](const SolutionState& s) {
        std::vector<double> out;
        out.reserve(idx.size());
        for (int i : idx) out.push_back(s.u[i]);
        return out;
    };

    std::vector<std::vector<double>> anchors;
    int post_burn = 0;
    for (const SolutionState& s : traj.states) {
        double sup_ut = 0.0;
        for (int i : idx) sup_ut = std::max(sup_ut, std::abs(s.ut[i]));
        est.ut_sup_series.push_back({s.t, sup_ut});
        if (s.t < burn_in) continue;
        ++post_burn;
        std::vector<double> prof = restrict_u(s);
        bool placed = false;
        for (std::size_t c = 0; c < anchors.size(); ++c) {
            const double d = detail::linf(prof, anchors[c]);
            if (d <= radius) {
                est.clusters[c].representative = prof;
                est.clusters[c].representative_time = s.t;
                est.clusters[c].member_times.push_back(s.t);
                est.clusters[c].max_intra_distance =
                    std::max(est.clusters[c].max_intra_distance, d);
                placed = true;
                break;
            }
        }
        if (!placed) {
            ProfileCluster cluster;
            cluster.representative = prof;
            cluster.representative_time = s.t;
            cluster.member_times = {s.t};
            est.clusters.push_back(std::move(cluster));
            anchors.push_back(restrict_u(s));
        }
    }
    if (post_burn < 5)
        throw InsufficientData("omega_estimate: need >= 5 snapshots after burn-in");
    for (ProfileCluster& c : est.clusters)
        c.residual = steady_residual(f, est.window_xs, c.representative);
    return est;
}

struct QCVerdict {
    bool quasiconvergent = false;
    bool convergent = false;
    double max_residual = 0.0;
    double final_ut_sup = 0.0;
    int cluster_count = 0;
};

/// Quasiconvergent: every cluster representative is steady up to res_tol and
/// the late |u_t| has dropped below ut_tol.  Convergent additionally means a
/// single cluster.
inline QCVerdict quasiconvergence_verdict(const OmegaEstimate& est, double res_tol,
                                          double ut_tol)
{
    QCVerdict verdict;
    verdict.cluster_count = static_cast<int>(est.clusters.size());
    for (const ProfileCluster& c : est.clusters)
        verdict.max_residual = std::max(verdict.max_residual, c.residual);
    verdict.final_ut_sup = est.ut_sup_series.empty() ? 0.0 : est.ut_sup_series.back()[1];
    verdict.quasiconvergent =
        !est.clusters.empty() && verdict.max_residual <= res_tol && verdict.final_ut_sup <= ut_tol;
    verdict.convergent = verdict.quasiconvergent && verdict.cluster_count == 1;
    return verdict;
}

struct ContainmentReport {
    double inside_fraction = 0.0;    // strictly inside the outer loop, off the inner chain
    double on_inner_fraction = 0.0;  // within tol of the inner chain
    double on_boundary_fraction = 0.0;
    double outside_fraction = 0.0;
    double max_outside_distance = 0.0;  // worst excursion beyond the outer loop
};

/// Locates every sample of the curve relative to the component: inside the
/// outer loop, on it, on the trivial inner chain, or outside, with the worst
/// outward excursion distance.
inline ContainmentReport trajectory_in_component(const TrajectoryCurve& curve,
                                                 const PiComponent& pi0, double tol)
{
    if (!pi0.bounded)
        throw std::invalid_argument("trajectory_in_component: component is unbounded");
    ContainmentReport rep;
    const double total = static_cast<double>(curve.points.size());
    const PhasePoint center{pi0.center, 0.0};
    for (const PhasePoint& p : curve.points) {
        const double d_center = std::hypot(p.u - center.u, p.v - center.v);
        if (d_center <= tol) {
            rep.on_inner_fraction += 1.0;
            continue;
        }
        switch (interior_contains(pi0.lambda_out, p, tol)) {
            case PointLocation::inside: rep.inside_fraction += 1.0; break;
            case PointLocation::on_boundary: rep.on_boundary_fraction += 1.0; break;
            case PointLocation::outside:
                rep.outside_fraction += 1.0;
                rep.max_outside_distance =
                    std::max(rep.max_outside_distance, distance_to_loop(pi0.lambda_out, p));
                break;
        }
    }
    rep.inside_fraction /= total;
    rep.on_inner_fraction /= total;
    rep.on_boundary_fraction /= total;
    rep.outside_fraction /= total;
    return rep;
}

enum class TailRegime { T1, T2, T3, undetermined };

inline const char* to_string(TailRegime r)
{
    switch (r) {
        case TailRegime::T1: return "T1";
        case TailRegime::T2: return "T2";
        case TailRegime::T3: return "T3";
        case TailRegime::undetermined: return "undetermined";
    }
    return "?";
}

struct TailClass {
    TailRegime regime = TailRegime::undetermined;
    std::vector<std::array<double, 3>> theta_series;  // (t, theta_minus, theta_plus)
};

/// Classifies the boundary behavior over the trailing late_window of the run:
/// both limits away from zero (T1), both inside the zero band (T2), or mixed
/// with uniform sides (T3).
inline TailClass classify_tail(const Trajectory& traj, double zero_band, double late_window)
{
    TailClass tc;
    for (const SolutionState& s : traj.states)
        tc.theta_series.push_back({s.t, s.theta_minus, s.theta_plus});
    if (traj.states.empty()) return tc;

    const double t_end = traj.states.back().t;
    bool minus_all_nonzero = true, minus_all_zero = true;
    bool plus_all_nonzero = true, plus_all_zero = true;
    int considered = 0;
    for (const SolutionState& s : traj.states) {
        if (s.t < t_end - late_window) continue;
        ++considered;
        (std::abs(s.theta_minus) > zero_band ? minus_all_zero : minus_all_nonzero) = false;
        (std::abs(s.theta_plus) > zero_band ? plus_all_zero : plus_all_nonzero) = false;
    }
    if (considered == 0) return tc;
    if (minus_all_nonzero && plus_all_nonzero) tc.regime = TailRegime::T1;
    else if (minus_all_zero && plus_all_zero) tc.regime = TailRegime::T2;
    else if ((minus_all_zero && plus_all_nonzero) || (minus_all_nonzero && plus_all_zero))
        tc.regime = TailRegime::T3;
    return tc;
}

/// Snapshot subsequence centered at t_center, re-centered in time; the
/// desk-scale stand-in for a piece of an entire solution.
inline std::vector<SolutionState> entire_window(const Trajectory& traj, double t_center,
                                                double half_width)
{
    if (traj.states.empty() || t_center - half_width < traj.states.front().t - 1e-9 ||
        t_center + half_width > traj.states.back().t + 1e-9)
        throw std::out_of_range("entire_window: window not contained in the run");
    std::vector<SolutionState> out;
    for (const SolutionState& s : traj.states) {
        if (s.t < t_center - half_width - 1e-9 || s.t > t_center + half_width + 1e-9) continue;
        SolutionState shifted = s;
        shifted.t = s.t - t_center;
        out.push_back(std::move(shifted));
    }
    return out;
}

/// Best L-inf distance between a sampled profile and a reference curve over
/// shifts in [-shift_range, shift_range]; coarse scan plus golden-section
/// refinement.  Returns {distance, shift}.
inline std::pair<double, double> shift_fitted_distance(std::span<const double> xs,
                                                       std::span<const double> values,
                                                       const std::function<double(double)>& ref,
                                                       double shift_range)
{
    auto objective = [&](double s) {
        double d = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            d = std::max(d, std::abs(values[i] - ref(xs[i] - s)));
        return d;
    };
    double best_s = 0.0, best = objective(0.0);
    const int coarse = 200;
    for (int i = 0; i <= coarse; ++i) {
        const double s = -shift_range + 2.0 * shift_range * i / coarse;
        const double d = objective(s);
        if (d < best) {
            best = d;
            best_s = s;
        }
    }
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = best_s - 2.0 * shift_range / coarse;
    double b = best_s + 2.0 * shift_range / coarse;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = objective(c), fd = objective(d);
    for (int it = 0; it < 120; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = objective(d);
        }
    }
    const double s_opt = 0.5 * (a + b);
    const double d_opt = objective(s_opt);
    if (d_opt < best) return {d_opt, s_opt};
    return {best, best_s};
}

} // namespace phaseline

#endif
