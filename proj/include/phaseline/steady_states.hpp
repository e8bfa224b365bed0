#ifndef PHASELINE_STEADY_STATES_HPP
#define PHASELINE_STEADY_STATES_HPP

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "phaseline/phase_portrait.hpp"

namespace phaseline {

struct WrongLoopKind : std::runtime_error {
    explicit WrongLoopKind(const std::string& w) : std::runtime_error(w) {}
};

enum class ProfileKind { periodic, ground_state, standing_wave, constant };

inline const char* to_string(ProfileKind k)
{
    switch (k) {
        case ProfileKind::periodic: return "periodic";
        case ProfileKind::ground_state: return "ground_state";
        case ProfileKind::standing_wave: return "standing_wave";
        case ProfileKind::constant: return "constant";
    }
    return "?";
}

/// Steady state of u_t = u_xx + f(u) sampled on a uniform grid centered at
/// its anchor (the turning point for ground states and periodic profiles, the
/// mid-range crossing for standing waves).
struct SteadyProfile {
    ProfileKind kind = ProfileKind::constant;
    std::vector<double> xs, phi, dphi;
    std::optional<double> period;
    std::optional<std::pair<double, double>> limits;  // (phi(-inf), phi(+inf))
    double anchor = 0.0;
    double level = 0.0;
};

struct ProfileOptions {
    double x0 = 0.0;          // anchor location
    double half_width = 40.0; // emitted window is [x0 - half_width, x0 + half_width]
    double dx = 0.01;
    int table_size = 2048;    // resolution of the x(u) inversion table
    double tail_eps = 1e-6;   // switch to the linearized tail this close to a limit
};

namespace detail {

// Monotone (x, u) table with du/dx = v known at the nodes; inverted by cubic
// Hermite interpolation.
struct BranchTable {
    std::vector<double> x, u, v;

    double interp(double xq, double* dudx = nullptr) const
    {
        std::size_t lo = 0, hi = x.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (x[mid] <= xq ? lo : hi) = mid;
        }
        const double dx = x[hi] - x[lo];
        if (dx <= 0.0) {
            if (dudx) *dudx = v[lo];
            return u[lo];
        }
        const double t = (xq - x[lo]) / dx;
        const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
        const double h10 = t * (1 - t) * (1 - t);
        const double h01 = t * t * (3 - 2 * t);
        const double h11 = t * t * (t - 1);
        if (dudx) {
            const double g00 = 6 * t * (t - 1) / dx;
            const double g10 = (1 - t) * (1 - 3 * t);
            const double g01 = -6 * t * (t - 1) / dx;
            const double g11 = t * (3 * t - 2);
            *dudx = g00 * u[lo] + g10 * v[lo] + g01 * u[hi] + g11 * v[hi];
        }
        return h00 * u[lo] + h10 * dx * v[lo] + h01 * u[hi] + h11 * dx * v[hi];
    }
};

// Cumulative x(theta) along the upper branch of the level-c arc over
// [lo, hi], restricted to theta in [theta_a, theta_b]; x(theta_a) = 0.
inline BranchTable build_branch_table(const Nonlinearity& f, double c, double lo, double hi,
                                      double theta_a, double theta_b, int n)
{
    BranchTable tab;
    tab.x.resize(n + 1);
    tab.u.resize(n + 1);
    tab.v.resize(n + 1);
    const double h = 0.5 * (hi - lo);
    double acc = 0.0;
    double prev_theta = theta_a;
    for (int i = 0; i <= n; ++i) {
        const double theta = theta_a + (theta_b - theta_a) * i / n;
        if (i > 0) {
            acc += arc_x_span(f, c, lo, hi, prev_theta, theta, 1e-11);
            prev_theta = theta;
        }
        const double sh = std::sin(0.5 * theta);
        const double u = lo + 2.0 * h * sh * sh;  // m - h*cos(theta), cancellation-free
        tab.x[i] = acc;
        tab.u[i] = u;
        tab.v[i] = std::sqrt(radicand_on_arc(f, c, lo, hi, u));
    }
    return tab;
}

inline double theta_of_offset_from_lo(double s, double h)
{
    return 2.0 * std::asin(std::min(1.0, std::sqrt(std::max(0.0, s / (2.0 * h)))));
}

} // namespace detail

/// Converts a phase-plane orbit into an x-parameterized profile by inverting
/// the arc integral x(u); homoclinic and heteroclinic tails switch to the
/// linearized exponential decay once within tail_eps of the limit.
inline SteadyProfile profile_from_orbit(const Nonlinearity& f, const OrbitRecord& orbit,
                                        ProfileOptions opt = {})
{
    const double pi = 3.14159265358979323846;
    if (orbit.kind == OrbitKind::equilibrium) {
        SteadyProfile prof;
        prof.kind = ProfileKind::constant;
        prof.anchor = opt.x0;
        prof.level = orbit.level;
        prof.limits = {{orbit.u_min, orbit.u_min}};
        const int count = static_cast<int>(std::lround(2.0 * opt.half_width / opt.dx)) + 1;
        for (int i = 0; i < count; ++i) {
            prof.xs.push_back(opt.x0 - opt.half_width + i * opt.dx);
            prof.phi.push_back(orbit.u_min);
            prof.dphi.push_back(0.0);
        }
        return prof;
    }

    const double c = orbit.level;
    const double lo = orbit.u_min, hi = orbit.u_max;
    const double h = 0.5 * (hi - lo);
    SteadyProfile prof;
    prof.anchor = opt.x0;
    prof.level = c;
    const int count = static_cast<int>(std::lround(2.0 * opt.half_width / opt.dx)) + 1;
    prof.xs.resize(count);
    prof.phi.resize(count);
    prof.dphi.resize(count);
    for (int i = 0; i < count; ++i) prof.xs[i] = opt.x0 - opt.half_width + i * opt.dx;

    if (orbit.kind == OrbitKind::periodic) {
        prof.kind = ProfileKind::periodic;
        const auto tab = detail::build_branch_table(f, c, lo, hi, 0.0, pi, opt.table_size);
        const double half_period = tab.x.back();
        const double period = 2.0 * half_period;
        prof.period = period;
        // phi(x0) = lo (left turning point), ascending branch first
        for (int i = 0; i < count; ++i) {
            double xi = std::fmod(prof.xs[i] - opt.x0, period);
            if (xi < 0.0) xi += period;
            const bool ascending = xi <= half_period;
            const double xq = ascending ? xi : period - xi;
            const double u = tab.interp(xq);
            const double v = std::sqrt(detail::radicand_on_arc(f, c, lo, hi, u));
            prof.phi[i] = u;
            prof.dphi[i] = ascending ? v : -v;
        }
        return prof;
    }

    if (orbit.kind == OrbitKind::heteroclinic) {
        prof.kind = ProfileKind::standing_wave;
        prof.limits = {{lo, hi}};
        const double theta_a = detail::theta_of_offset_from_lo(opt.tail_eps, h);
        const double theta_b = pi - detail::theta_of_offset_from_lo(opt.tail_eps, h);
        const auto tab =
            detail::build_branch_table(f, c, lo, hi, theta_a, theta_b, opt.table_size);
        // anchor at the mid-range crossing: shift the table so x(u = mid) = 0
        const double mid_theta = 0.5 * pi;
        const double x_mid = detail::arc_x_span(f, c, lo, hi, theta_a, mid_theta, 1e-11);
        const double x_min_tab = -x_mid, x_max_tab = tab.x.back() - x_mid;
        const double lam_lo = std::sqrt(std::max(0.0, -f.derivative(lo)));
        const double lam_hi = std::sqrt(std::max(0.0, -f.derivative(hi)));
        for (int i = 0; i < count; ++i) {
            const double xr = prof.xs[i] - opt.x0;
            if (xr < x_min_tab) {
                const double a = opt.tail_eps * std::exp(lam_lo * (xr - x_min_tab));
                prof.phi[i] = lo + a;
                prof.dphi[i] = lam_lo * a;
            } else if (xr > x_max_tab) {
                const double a = opt.tail_eps * std::exp(-lam_hi * (xr - x_max_tab));
                prof.phi[i] = hi - a;
                prof.dphi[i] = lam_hi * a;
            } else {
                const double u = tab.interp(xr + x_mid);
                prof.phi[i] = u;
                prof.dphi[i] = std::sqrt(detail::radicand_on_arc(f, c, lo, hi, u));
            }
        }
        return prof;
    }

    // homoclinic: even about the anchor, extremum at the nose
    prof.kind = ProfileKind::ground_state;
    const bool limit_at_lo = std::abs(orbit.limit_equilibria.at(0) - lo) <
                             std::abs(orbit.limit_equilibria.at(0) - hi);
    const double gamma = limit_at_lo ? lo : hi;
    prof.limits = {{gamma, gamma}};
    const double lam = std::sqrt(std::max(0.0, -f.derivative(gamma)));

    if (limit_at_lo) {
        // table from theta_cut (near gamma = lo) to pi (nose = hi)
        const double theta_a = detail::theta_of_offset_from_lo(opt.tail_eps, h);
        const auto tab = detail::build_branch_table(f, c, lo, hi, theta_a, pi, opt.table_size);
        const double x_reach = tab.x.back();  // from the cut up to the nose
        for (int i = 0; i < count; ++i) {
            const double d = std::abs(prof.xs[i] - opt.x0);
            if (d <= 1e-12) {
                prof.phi[i] = hi;
                prof.dphi[i] = 0.0;
            } else if (d > x_reach) {
                const double a = opt.tail_eps * std::exp(-lam * (d - x_reach));
                prof.phi[i] = gamma + a;
                prof.dphi[i] = (prof.xs[i] < opt.x0 ? 1.0 : -1.0) * lam * a;
            } else {
                const double u = tab.interp(x_reach - d);
                const double v = std::sqrt(detail::radicand_on_arc(f, c, lo, hi, u));
                prof.phi[i] = u;
                prof.dphi[i] = (prof.xs[i] < opt.x0 ? v : -v);
            }
        }
    } else {
        // dipping profile: the minimum sits at the anchor, limit gamma = hi
        const double theta_b = pi - detail::theta_of_offset_from_lo(opt.tail_eps, h);
        const auto tab = detail::build_branch_table(f, c, lo, hi, 0.0, theta_b, opt.table_size);
        const double x_reach = tab.x.back();
        for (int i = 0; i < count; ++i) {
            const double d = std::abs(prof.xs[i] - opt.x0);
            if (d <= 1e-12) {
                prof.phi[i] = lo;
                prof.dphi[i] = 0.0;
            } else if (d > x_reach) {
                const double a = opt.tail_eps * std::exp(-lam * (d - x_reach));
                prof.phi[i] = gamma - a;
                prof.dphi[i] = (prof.xs[i] < opt.x0 ? -1.0 : 1.0) * lam * a;
            } else {
                const double u = tab.interp(d);
                const double v = std::sqrt(detail::radicand_on_arc(f, c, lo, hi, u));
                prof.phi[i] = u;
                prof.dphi[i] = (prof.xs[i] < opt.x0 ? -v : v);
            }
        }
    }
    return prof;
}

/// Max norm of phi'' + f(phi) over the interior nodes, with second-order
/// differences that tolerate nonuniform spacing.
inline double steady_residual(const Nonlinearity& f, std::span<const double> xs,
                              std::span<const double> phi)
{
    if (xs.size() != phi.size() || xs.size() < 3)
        throw std::invalid_argument("steady_residual: need >= 3 samples");
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        const double hl = xs[i] - xs[i - 1];
        const double hr = xs[i + 1] - xs[i];
        if (hl <= 0.0 || hr <= 0.0)
            throw std::invalid_argument("steady_residual: xs must be strictly increasing");
        const double second =
            2.0 * (hl * phi[i + 1] - (hl + hr) * phi[i] + hr * phi[i - 1]) / (hl * hr * (hl + hr));
        worst = std::max(worst, std::abs(second + f(phi[i])));
    }
    return worst;
}

namespace detail {

inline OrbitRecord upper_orbit_of(const Loop& loop)
{
    OrbitRecord rec;
    rec.kind = loop.kind;
    rec.level = loop.level;
    rec.u_min = loop.u_min;
    rec.u_max = loop.u_max;
    rec.limit_equilibria = loop.limit_equilibria;
    const std::size_t n_upper = (loop.boundary.size() + 1) / 2;
    rec.polyline.assign(loop.boundary.begin(), loop.boundary.begin() + n_upper);
    return rec;
}

} // namespace detail

/// Ground state of the component: the profile of the homoclinic outer loop,
/// anchored so that the single critical point sits at x = 0.
inline SteadyProfile ground_state(const Nonlinearity& f, const PiComponent& pi0,
                                  ProfileOptions opt = {})
{
    if (!pi0.bounded || pi0.lambda_out.kind != OrbitKind::homoclinic)
        throw WrongLoopKind("ground_state: outer loop is not homoclinic");
    return profile_from_orbit(f, detail::upper_orbit_of(pi0.lambda_out), opt);
}

/// The increasing and decreasing standing waves of a heteroclinic outer loop;
/// the decreasing wave is the exact reflection of the increasing one.
inline std::pair<SteadyProfile, SteadyProfile> standing_waves(const Nonlinearity& f,
                                                              const PiComponent& pi0,
                                                              ProfileOptions opt = {})
{
    if (!pi0.bounded || pi0.lambda_out.kind != OrbitKind::heteroclinic)
        throw WrongLoopKind("standing_waves: outer loop is not heteroclinic");
    SteadyProfile up = profile_from_orbit(f, detail::upper_orbit_of(pi0.lambda_out), opt);
    // the emitted window is symmetric about the anchor, so the reflection
    // lives on the same grid
    SteadyProfile down = up;
    const std::size_t n = up.xs.size();
    for (std::size_t i = 0; i < n; ++i) {
        down.phi[i] = up.phi[n - 1 - i];
        down.dphi[i] = -up.dphi[n - 1 - i];
    }
    if (up.limits) down.limits = {{up.limits->second, up.limits->first}};
    return {std::move(up), std::move(down)};
}

} // namespace phaseline

#endif
