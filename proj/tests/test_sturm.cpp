#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "phaseline/sturm.hpp"

using namespace phaseline;

namespace {
Nonlinearity cubic() { return Nonlinearity({0.0, 1.0, 0.0, -1.0}, 3.0, 1.0); }

std::vector<double> sample_xs(double a, double b, int n)
{
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = a + (b - a) * i / (n - 1);
    return xs;
}

std::vector<double> map_values(const std::vector<double>& xs, double (*fn)(double))
{
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) v[i] = fn(xs[i]);
    return v;
}
} // namespace

TEST_CASE("single simple zero")
{
    const auto xs = sample_xs(-1.5, 1.5, 301);
    const auto v = map_values(xs, [](double x) { return x; });
    const ZeroReport rep = zero_count(xs, v, -1.0, 1.0, 1e-6);
    CHECK(rep.count == 1);
    REQUIRE(rep.locations.size() == 1);
    CHECK(rep.locations[0] == Catch::Approx(0.0).margin(1e-9));
    CHECK(rep.endpoints_nonzero);
    CHECK(rep.suspected_multiple.empty());
}

TEST_CASE("cubic polynomial roots are counted and localized")
{
    const auto xs = sample_xs(-1.0, 3.0, 4001);
    const auto v = map_values(xs, [](double x) { return x * (x - 1.0) * (x - 2.0); });
    const ZeroReport rep = zero_count(xs, v, -1.0 + 1e-9, 3.0 - 1e-9, 1e-6);
    REQUIRE(rep.count == 3);
    CHECK(rep.locations[0] == Catch::Approx(0.0).margin(1e-4));
    CHECK(rep.locations[1] == Catch::Approx(1.0).margin(1e-4));
    CHECK(rep.locations[2] == Catch::Approx(2.0).margin(1e-4));
}

TEST_CASE("constant function has no zeros")
{
    const auto xs = sample_xs(-1.0, 1.0, 51);
    const std::vector<double> v(xs.size(), 1.0);
    const ZeroReport rep = zero_count(xs, v, -0.9, 0.9, 1e-6);
    CHECK(rep.count == 0);
    CHECK_FALSE(rep.degenerate);
}

TEST_CASE("identically zero window is flagged degenerate")
{
    const auto xs = sample_xs(-1.0, 1.0, 51);
    const std::vector<double> v(xs.size(), 0.0);
    const ZeroReport rep = zero_count(xs, v, -0.9, 0.9, 1e-6);
    CHECK(rep.degenerate);
    CHECK(rep.count == 0);
    CHECK_FALSE(rep.endpoints_nonzero);
    CHECK_FALSE(rep.suspected_multiple.empty());
}

TEST_CASE("band absorbs noise-level tangencies")
{
    // positive dip that grazes zero without crossing: suspected, not counted
    const auto xs = sample_xs(-2.0, 2.0, 2001);
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) v[i] = xs[i] * xs[i] + 1e-9;
    const ZeroReport rep = zero_count(xs, v, -1.5, 1.5, 1e-6);
    CHECK(rep.count == 0);
    REQUIRE(rep.suspected_multiple.size() == 1);
    CHECK(rep.suspected_multiple[0] == Catch::Approx(0.0).margin(1e-2));
}

TEST_CASE("census is invariant under rescaling")
{
    const auto xs = sample_xs(-3.0, 3.0, 1201);
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) v[i] = std::sin(3.0 * xs[i]);
    const ZeroReport r1 = zero_count(xs, v, -2.9, 2.9, 1e-6);
    std::vector<double> scaled = v;
    for (double& y : scaled) y *= 1e-7;
    const ZeroReport r2 = zero_count(xs, scaled, -2.9, 2.9, 1e-6);
    CHECK(r1.count == r2.count);
    const int brute = oracle::count_sign_changes([](double x) { return std::sin(3.0 * x); },
                                                 -2.9, 2.9);
    CHECK(r1.count == brute);
}

TEST_CASE("count matches exact roots when the grid resolves the separation")
{
    const auto xs = sample_xs(-0.5, 5.5, 6001);
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        v[i] = std::sin(xs[i] * xs[i]);  // roots at sqrt(k*pi), clustering slowly
    const ZeroReport rep = zero_count(xs, v, -0.4, 5.4, 1e-6);
    int exact = 0;
    for (int k = 1; k * 3.14159265358979 < 5.4 * 5.4; ++k) ++exact;
    CHECK(rep.count == exact);
}

TEST_CASE("critical points of canned profiles")
{
    const Nonlinearity f = cubic();
    const Grid g = Grid::symmetric(20.0, 2001);

    std::vector<double> bump(g.n), front(g.n);
    for (int i = 0; i < g.n; ++i) {
        bump[i] = std::exp(-g.x(i) * g.x(i) / 8.0);
        front[i] = std::tanh(g.x(i) / std::sqrt(2.0));
    }
    const SolutionState s_bump = make_state(f, g, bump, 0.0, 0.0, 0.0);
    const SolutionState s_front = make_state(f, g, front, 0.0, -1.0, 1.0);

    CHECK(critical_points(s_bump, -15.0, 15.0).count == 1);
    CHECK(critical_points(s_front, -15.0, 15.0).count == 0);

    // pulse with one zero has exactly two critical points (max and min)
    std::vector<double> pulse(g.n);
    for (int i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        pulse[i] = std::exp(-(x + 2.0) * (x + 2.0) / 4.0) - std::exp(-(x - 2.0) * (x - 2.0) / 4.0);
    }
    const SolutionState s_pulse = make_state(f, g, pulse, 0.0, 0.0, 0.0);
    CHECK(critical_points(s_pulse, -15.0, 15.0).count == 2);
}

TEST_CASE("monotonicity audit")
{
    auto mk = [](int count) {
        ZeroReport r;
        r.count = count;
        r.endpoints_nonzero = true;
        return r;
    };
    const std::vector<double> times{0.0, 1.0, 2.0, 3.0};

    std::vector<ZeroReport> good{mk(3), mk(3), mk(1), mk(1)};
    const AuditVerdict v1 = monotonicity_audit(times, good);
    CHECK(v1.nonincreasing);
    REQUIRE(v1.drop_times.size() == 1);
    CHECK(v1.drop_times[0] == 2.0);

    std::vector<ZeroReport> bad{mk(1), mk(2)};
    const AuditVerdict v2 = monotonicity_audit(std::vector<double>{0.0, 1.0}, bad);
    CHECK_FALSE(v2.nonincreasing);

    // excluded snapshots do not participate
    std::vector<ZeroReport> mixed{mk(3), mk(9), mk(2)};
    mixed[1].endpoints_nonzero = false;
    const AuditVerdict v3 = monotonicity_audit(std::vector<double>{0.0, 1.0, 2.0}, mixed);
    CHECK(v3.nonincreasing);
    CHECK(v3.considered == 2);
}

TEST_CASE("reflection census on a front")
{
    const Nonlinearity f = cubic();
    const Grid g = Grid::symmetric(20.0, 2001);
    std::vector<double> front(g.n);
    for (int i = 0; i < g.n; ++i) front[i] = std::tanh(g.x(i) / std::sqrt(2.0));
    const SolutionState s = make_state(f, g, front, 0.0, -1.0, 1.0);

    // monotone profile: only the forced zero of the reflection at lambda
    const ZeroReport rep = reflection_zero_count(s, 2.0, 1e-6);
    CHECK_FALSE(rep.degenerate);
    CHECK(rep.count == 1);
    REQUIRE(rep.locations.size() == 1);
    CHECK(rep.locations[0] == Catch::Approx(2.0).margin(1e-6));

    // off-grid reflection point still works through interpolation
    const ZeroReport rep2 = reflection_zero_count(s, 2.005, 1e-6);
    CHECK(rep2.count == 1);
}

TEST_CASE("reflection census flags even profiles as degenerate")
{
    const Nonlinearity f = cubic();
    const Grid g = Grid::symmetric(20.0, 2001);
    std::vector<double> bump(g.n);
    for (int i = 0; i < g.n; ++i) bump[i] = std::exp(-g.x(i) * g.x(i) / 8.0);
    const SolutionState s = make_state(f, g, bump, 0.0, 0.0, 0.0);
    const ZeroReport rep = reflection_zero_count(s, 0.0, 1e-6);
    CHECK(rep.degenerate);
}

TEST_CASE("reflection census needs a usable symmetric window")
{
    const Nonlinearity f = cubic();
    const Grid g = Grid::symmetric(20.0, 2001);
    std::vector<double> front(g.n);
    for (int i = 0; i < g.n; ++i) front[i] = std::tanh(g.x(i));
    const SolutionState s = make_state(f, g, front, 0.0, -1.0, 1.0);
    CHECK_THROWS_AS(reflection_zero_count(s, 19.99, 1e-6), WindowTooSmall);
    CHECK_THROWS_AS(reflection_zero_count(s, 25.0, 1e-6), WindowTooSmall);
}
