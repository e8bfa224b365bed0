#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "phaseline/asymptotics.hpp"

using namespace phaseline;

namespace {
Nonlinearity cubic() { return Nonlinearity({0.0, 1.0, 0.0, -1.0}, 3.0, 1.0); }

SolutionState state_from(const Nonlinearity& f, const Grid& g, double (*fn)(double),
                         double theta_m = 0.0, double theta_p = 0.0)
{
    std::vector<double> u(g.n);
    for (int i = 0; i < g.n; ++i) u[i] = fn(g.x(i));
    return make_state(f, g, std::move(u), 0.0, theta_m, theta_p);
}

std::vector<double> linspace_times(double t0, double t1, int count)
{
    std::vector<double> out;
    for (int i = 0; i < count; ++i) out.push_back(t0 + (t1 - t0) * i / (count - 1));
    return out;
}
} // namespace

TEST_CASE("spatial trajectory of canned profiles")
{
    const Nonlinearity f = cubic();
    const Grid g = Grid::symmetric(20.0, 2001);

    const SolutionState zero = state_from(f, g, [](double) { return 0.0; });
    const TrajectoryCurve c0 = spatial_trajectory(zero, 10.0);
    for (const PhasePoint& p : c0.points) {
        CHECK(p.u == 0.0);
        CHECK(p.v == 0.0);
    }

    const SolutionState front =
        state_from(f, g, [](double x) { return std::tanh(x / std::sqrt(2.0)); }, -1.0, 1.0);
    const TrajectoryCurve c1 = spatial_trajectory(front, 10.0);
    for (const PhasePoint& p : c1.points) {
        const double v_exact = (1.0 - p.u * p.u) / std::sqrt(2.0);
        REQUIRE(std::abs(p.v - v_exact) <= 1e-6);
    }

    const SolutionState bump =
        state_from(f, g, [](double x) { return std::exp(-x * x / 8.0); });
    const TrajectoryCurve c2 = spatial_trajectory(bump, 15.0);
    CHECK(std::hypot(c2.points.front().u, c2.points.front().v) < 1e-3);
    CHECK(std::hypot(c2.points.back().u, c2.points.back().v) < 1e-3);
}

TEST_CASE("simple curve check")
{
    const Nonlinearity f = cubic();
    const Grid g = Grid::symmetric(20.0, 2001);
    const SolutionState front =
        state_from(f, g, [](double x) { return std::tanh(x / std::sqrt(2.0)); }, -1.0, 1.0);
    CHECK(simple_curve_check(spatial_trajectory(front, 10.0), 1e-9));

    // pulse-like snapshot: up one branch, back the other; still simple
    const SolutionState pulse = state_from(f, g, [](double x) {
        return std::exp(-(x + 2.0) * (x + 2.0) / 4.0) - std::exp(-(x - 2.0) * (x - 2.0) / 4.0);
    });
    CHECK(simple_curve_check(spatial_trajectory(pulse, 15.0), 1e-9));

    // hand-built figure eight crosses itself
    TrajectoryCurve eight;
    eight.points = {{-1.0, -1.0}, {1.0, 1.0},  {1.0, -1.0}, {-1.0, 1.0},
                    {-1.0, -0.5}, {0.5, -0.5}, {0.5, 0.8}};
    CHECK_FALSE(simple_curve_check(eight, 1e-9));
}

TEST_CASE("extrema sign check")
{
    const Nonlinearity f = cubic();
    const Grid g = Grid::symmetric(20.0, 2001);

    const SolutionState bump =
        state_from(f, g, [](double x) { return std::exp(-x * x / 8.0); });
    CHECK(extrema_sign_check(bump, 1e-8, -15.0, 15.0));

    const SolutionState wiggly =
        state_from(f, g, [](double x) { return 0.5 + 0.1 * std::cos(x); });
    CHECK_FALSE(extrema_sign_check(wiggly, 1e-8, -15.0, 15.0));

    // flat states with roundoff-level wiggles are clean
    const SolutionState flat = state_from(f, g, [](double x) {
        return 1.0 + 1e-15 * std::sin(100.0 * x);
    });
    CHECK(extrema_sign_check(flat, 1e-8, -15.0, 15.0));
}

TEST_CASE("omega estimate of the zero trajectory")
{
    const Nonlinearity f = cubic();
    const Grid g = Grid::symmetric(25.0, 501);
    InitialDatum d;
    d.grid = g;
    d.values.assign(g.n, 0.0);
    SolverConfig cfg{.dt = 0.05, .T = 10.0, .snapshot_times = linspace_times(0.0, 10.0, 21)};
    const Trajectory traj = run(f, d, cfg);

    const OmegaEstimate est = omega_estimate(f, traj, 20.0, 2.0, 1e-2);
    REQUIRE(est.clusters.size() == 1);
    CHECK(est.clusters[0].residual == 0.0);
    for (double v : est.clusters[0].representative) CHECK(v == 0.0);

    const QCVerdict verdict = quasiconvergence_verdict(est, 1e-3, 1e-4);
    CHECK(verdict.quasiconvergent);
    CHECK(verdict.convergent);
}

TEST_CASE("omega estimate requires enough post-burn-in snapshots")
{
    const Nonlinearity f = cubic();
    const Grid g = Grid::symmetric(25.0, 501);
    InitialDatum d;
    d.grid = g;
    d.values.assign(g.n, 0.0);
    SolverConfig cfg{.dt = 0.05, .T = 10.0, .snapshot_times = {0.0, 5.0, 10.0}};
    const Trajectory traj = run(f, d, cfg);
    CHECK_THROWS_AS(omega_estimate(f, traj, 20.0, 2.0, 1e-2), InsufficientData);
}

TEST_CASE("synthetic two-phase trajectory is quasiconvergent but not convergent")
{
    // hand-built fixture: snapshots alternate between two exact steady states
    // (0 and 1) with a fast transition, mimicking a connecting trajectory
    const Nonlinearity f = cubic();
    const Grid g = Grid::symmetric(25.0, 501);
    Trajectory traj;
    for (int k = 0; k <= 40; ++k) {
        const double value = (k < 20) ? 0.0 : 1.0;
        traj.states.push_back(
            make_state(f, g, std::vector<double>(g.n, value), k * 1.0, value, value));
    }
    const OmegaEstimate est = omega_estimate(f, traj, 20.0, 0.0, 1e-2);
    REQUIRE(est.clusters.size() == 2);
    const QCVerdict verdict = quasiconvergence_verdict(est, 1e-3, 1e-4);
    CHECK(verdict.quasiconvergent);
    CHECK_FALSE(verdict.convergent);
}

TEST_CASE("containment of curves in the cubic component")
{
    const Nonlinearity f = cubic();
    const PiComponent comp = component_pi0(f);
    const Grid g = Grid::symmetric(20.0, 2001);

    // the heteroclinic front lies on the outer loop
    const SolutionState front =
        state_from(f, g, [](double x) { return std::tanh(x / std::sqrt(2.0)); }, -1.0, 1.0);
    const ContainmentReport on_loop =
        trajectory_in_component(spatial_trajectory(front, 10.0), comp, 1e-4);
    CHECK(on_loop.max_outside_distance <= 1e-4);
    CHECK(on_loop.on_boundary_fraction > 0.9);

    // a small periodic profile stays strictly inside
    const SteadyProfile small = profile_from_orbit(f, periodic_orbit_at(f, -0.2),
                                                   {.half_width = 15.0, .dx = 0.02});
    SolutionState sp = make_state(f, Grid::symmetric(15.0, (int)small.xs.size()),
                                  small.phi, 0.0, small.phi.front(), small.phi.back());
    const ContainmentReport inside =
        trajectory_in_component(spatial_trajectory(sp, 14.0), comp, 1e-6);
    CHECK(inside.inside_fraction == 1.0);
    CHECK(inside.max_outside_distance == 0.0);

    // the zero state collapses onto the inner chain
    const SolutionState zero = state_from(f, g, [](double) { return 0.0; });
    const ContainmentReport inner =
        trajectory_in_component(spatial_trajectory(zero, 10.0), comp, 1e-6);
    CHECK(inner.on_inner_fraction == 1.0);
}

TEST_CASE("tail classification from boundary series")
{
    const Nonlinearity f = cubic();
    const Grid g = Grid::symmetric(30.0, 301);

    auto make_traj = [&](double theta_m0, double theta_p0) {
        InitialDatum d;
        d.grid = g;
        d.values.assign(g.n, 0.0);
        for (int i = 0; i < g.n; ++i) {
            const double x = g.x(i);
            const double s = 1.0 / (1.0 + std::exp(-x));
            d.values[i] = theta_m0 * (1.0 - s) + theta_p0 * s;
        }
        d.theta_minus0 = theta_m0;
        d.theta_plus0 = theta_p0;
        SolverConfig cfg{.dt = 0.05, .T = 30.0,
                         .snapshot_times = linspace_times(0.0, 30.0, 31)};
        return run(f, d, cfg);
    };

    CHECK(classify_tail(make_traj(0.0, 0.0), 1e-9, 10.0).regime == TailRegime::T2);
    CHECK(classify_tail(make_traj(-0.1, -0.1), 1e-9, 10.0).regime == TailRegime::T1);
    CHECK(classify_tail(make_traj(-0.1, 0.0), 1e-9, 10.0).regime == TailRegime::T3);

    // the T1 pair converges to the stable equilibrium on its side
    const Trajectory t1 = make_traj(-0.1, -0.1);
    CHECK(t1.states.back().theta_minus == Catch::Approx(-1.0).margin(1e-6));
    CHECK(t1.states.back().theta_plus == Catch::Approx(-1.0).margin(1e-6));
}

TEST_CASE("entire window extraction and recentering")
{
    const Nonlinearity f = cubic();
    const Grid g = Grid::symmetric(25.0, 301);
    InitialDatum d;
    d.grid = g;
    d.values.assign(g.n, 0.0);
    SolverConfig cfg{.dt = 0.05, .T = 20.0, .snapshot_times = linspace_times(0.0, 20.0, 41)};
    const Trajectory traj = run(f, d, cfg);

    const auto window = entire_window(traj, 10.0, 3.0);
    REQUIRE(window.size() == 13);
    CHECK(window.front().t == Catch::Approx(-3.0).margin(1e-12));
    CHECK(window.back().t == Catch::Approx(3.0).margin(1e-12));
    CHECK_THROWS_AS(entire_window(traj, 19.0, 3.0), std::out_of_range);
}

TEST_CASE("shift fit recovers a known translation")
{
    std::vector<double> xs, values;
    for (double x = -15.0; x <= 15.0; x += 0.01) {
        xs.push_back(x);
        values.push_back(std::tanh((x - 1.7) / std::sqrt(2.0)));
    }
    const auto [dist, shift] = shift_fitted_distance(
        xs, values, [](double x) { return std::tanh(x / std::sqrt(2.0)); }, 5.0);
    CHECK(dist <= 1e-9);
    CHECK(shift == Catch::Approx(1.7).margin(1e-6));
}
