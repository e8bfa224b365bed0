#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "phaseline/steady_states.hpp"

using namespace phaseline;

namespace {
Nonlinearity cubic() { return Nonlinearity({0.0, 1.0, 0.0, -1.0}, 3.0, 1.0); }
Nonlinearity unbalanced() { return Nonlinearity({0.0, 0.3, 0.7, -1.0}, 3.0, 1.0); }
} // namespace

TEST_CASE("increasing wave of the symmetric cubic is tanh(x/sqrt(2))")
{
    const Nonlinearity f = cubic();
    const auto [up, down] = standing_waves(f, component_pi0(f));

    CHECK(up.kind == ProfileKind::standing_wave);
    REQUIRE(up.limits.has_value());
    CHECK(up.limits->first == Catch::Approx(-1.0).margin(1e-9));
    CHECK(up.limits->second == Catch::Approx(1.0).margin(1e-9));

    double worst = 0.0;
    for (std::size_t i = 0; i < up.xs.size(); ++i) {
        if (std::abs(up.xs[i]) > 10.0) continue;
        worst = std::max(worst, std::abs(up.phi[i] - std::tanh(up.xs[i] / std::sqrt(2.0))));
    }
    CHECK(worst <= 1e-6);

    // anchoring: phi(0) = mid-range crossing, phi'(0) = 1/sqrt(2)
    const std::size_t mid = up.xs.size() / 2;
    CHECK(up.xs[mid] == Catch::Approx(0.0).margin(1e-12));
    CHECK(up.phi[mid] == Catch::Approx(0.0).margin(1e-9));
    CHECK(up.dphi[mid] == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-9));

    // reflection is exact on the shared grid
    for (std::size_t i = 0; i < up.xs.size(); ++i) {
        REQUIRE(down.phi[i] == up.phi[up.xs.size() - 1 - i]);
        REQUIRE(down.dphi[i] == -up.dphi[up.xs.size() - 1 - i]);
    }
}

TEST_CASE("standing waves require a heteroclinic outer loop")
{
    const Nonlinearity f = unbalanced();
    CHECK_THROWS_AS(standing_waves(f, component_pi0(f)), WrongLoopKind);
    CHECK_THROWS_AS(ground_state(cubic(), component_pi0(cubic())), WrongLoopKind);
}

TEST_CASE("ground state of the unbalanced cubic")
{
    const Nonlinearity f = unbalanced();
    const PiComponent comp = component_pi0(f);
    const SteadyProfile gs = ground_state(f, comp);

    CHECK(gs.kind == ProfileKind::ground_state);
    const std::size_t mid = gs.xs.size() / 2;
    // peak at the anchor equals the nose of the loop, derivative vanishes
    CHECK(gs.phi[mid] == Catch::Approx(comp.q_hat).margin(1e-9));
    CHECK(gs.dphi[mid] == 0.0);

    // even about the anchor
    for (std::size_t i = 0; i < gs.xs.size(); ++i) {
        REQUIRE(gs.phi[i] == Catch::Approx(gs.phi[gs.xs.size() - 1 - i]).margin(1e-12));
    }

    // tails approach the saddle level at the linearized rate sqrt(-f'(-0.3))
    CHECK(std::abs(gs.phi.front() + 0.3) <= 1e-6);
    const double lam = std::sqrt(0.39);
    auto tail_at = [&](double x) {
        const std::size_t i = static_cast<std::size_t>(std::lround((x - gs.xs.front()) / 0.01));
        return gs.phi[i] + 0.3;
    };
    CHECK(tail_at(20.0) == Catch::Approx(9.8169e-6).epsilon(1e-3));
    CHECK(tail_at(24.0) <= 1e-6);
    CHECK(tail_at(24.0) / tail_at(20.0) == Catch::Approx(std::exp(-4.0 * lam)).epsilon(1e-3));

    // residual of the emitted profile
    CHECK(steady_residual(f, gs.xs, gs.phi) <= 1e-5);
}

TEST_CASE("periodic profile repeats with the minimal period")
{
    const Nonlinearity f = cubic();
    const OrbitRecord orbit = periodic_orbit_at(f, -0.5);
    const double rho = minimal_period(f, orbit);
    const SteadyProfile prof = profile_from_orbit(f, orbit, {.half_width = 20.0});

    REQUIRE(prof.period.has_value());
    CHECK(*prof.period == Catch::Approx(rho).margin(1e-8));

    // phi(x + rho) = phi(x) on emitted samples (nearest-sample comparison)
    const double dx = prof.xs[1] - prof.xs[0];
    const long shift = std::lround(*prof.period / dx);
    double worst = 0.0;
    for (std::size_t i = 0; i + shift < prof.xs.size(); ++i)
        worst = std::max(worst, std::abs(prof.phi[i + shift] - prof.phi[i]));
    // the shift is off the exact period by at most dx/2, so allow |dphi| * dx
    CHECK(worst <= 0.6 * dx);

    CHECK(steady_residual(f, prof.xs, prof.phi) <= 1e-5);
}

TEST_CASE("profiles stay on the energy level")
{
    const Nonlinearity f = unbalanced();
    const PiComponent comp = component_pi0(f);
    const SteadyProfile gs = ground_state(f, comp);
    for (std::size_t i = 0; i < gs.xs.size(); ++i) {
        const double H = 0.5 * gs.dphi[i] * gs.dphi[i] + f.antiderivative(gs.phi[i]);
        REQUIRE(std::abs(H - gs.level) <= 1e-8);
    }
}

TEST_CASE("shift covariance of the anchor")
{
    const Nonlinearity f = cubic();
    const PiComponent comp = component_pi0(f);
    const auto orb = [&] {
        auto [up, down] = standing_waves(f, comp, {.x0 = 0.0, .half_width = 15.0});
        (void)down;
        return up;
    }();
    auto [shifted, down2] = standing_waves(f, comp, {.x0 = 3.0, .half_width = 15.0});
    (void)down2;
    // sample i of the shifted profile corresponds to the same offset from the anchor
    for (std::size_t i = 0; i < orb.xs.size(); ++i) {
        REQUIRE(shifted.xs[i] - 3.0 == Catch::Approx(orb.xs[i]).margin(1e-12));
        REQUIRE(shifted.phi[i] == Catch::Approx(orb.phi[i]).margin(1e-11));
    }
}

TEST_CASE("residual of exact, constant, and offset profiles")
{
    const Nonlinearity f = cubic();

    // closed-form steady state on a uniform grid: only the O(h^2) floor remains
    std::vector<double> xs, phi;
    for (double x = -10.0; x <= 10.0 + 1e-12; x += 0.01) {
        xs.push_back(x);
        phi.push_back(std::tanh(x / std::sqrt(2.0)));
    }
    CHECK(steady_residual(f, xs, phi) <= 1e-3);

    std::vector<double> zeros(xs.size(), 0.0);
    CHECK(steady_residual(f, xs, zeros) == 0.0);

    std::vector<double> half(xs.size(), 0.5);
    CHECK(steady_residual(f, xs, half) == Catch::Approx(0.375).margin(1e-14));
}

TEST_CASE("difference of distinct steady profiles has only simple zeros")
{
    const Nonlinearity f = cubic();
    const PiComponent comp = component_pi0(f);
    auto [up, down] = standing_waves(f, comp, {.half_width = 15.0});
    const SteadyProfile per = profile_from_orbit(f, periodic_orbit_at(f, -0.6),
                                                 {.half_width = 15.0});
    int crossings = 0;
    for (std::size_t i = 1; i < up.xs.size(); ++i) {
        const double a = up.phi[i - 1] - per.phi[i - 1];
        const double b = up.phi[i] - per.phi[i];
        if ((a > 0 && b < 0) || (a < 0 && b > 0)) {
            ++crossings;
            // simple zero: the difference of derivatives stays away from zero
            REQUIRE(std::abs(up.dphi[i] - per.dphi[i]) > 1e-3);
        }
    }
    CHECK(crossings > 0);
}
