#ifndef PHASELINE_PDE_SOLVER_HPP
#define PHASELINE_PDE_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "phaseline/nonlinearity.hpp"
#include "phaseline/numerics.hpp"

namespace phaseline {

struct BlowUp : std::runtime_error {
    double time;
    explicit BlowUp(double t)
        : std::runtime_error("solution exceeded the blow-up bound at t = " + std::to_string(t)),
          time(t)
    {
    }
};

struct Grid {
    double x_min = 0.0;
    double x_max = 0.0;
    int n = 0;
    double h = 0.0;

    static Grid over(double x_min, double x_max, int n)
    {
        if (n < 3) throw std::invalid_argument("Grid: need n >= 3");
        if (!(x_max > x_min)) throw std::invalid_argument("Grid: need x_max > x_min");
        return {x_min, x_max, n, (x_max - x_min) / (n - 1)};
    }
    static Grid symmetric(double half_width, int n) { return over(-half_width, half_width, n); }
    double x(int i) const { return x_min + h * i; }
    bool operator==(const Grid&) const = default;
};

/// Initial datum with declared spatial limits; the boundary values of the
/// truncated domain follow the far-field equation theta' = f(theta) starting
/// from these limits.
struct InitialDatum {
    Grid grid;
    std::vector<double> values;
    double theta_minus0 = 0.0;
    double theta_plus0 = 0.0;
    bool limits_equal = false;
};

struct SolutionState {
    double t = 0.0;
    Grid grid;
    std::vector<double> u;
    std::vector<double> ux;  // fourth-order differences, one-sided at the ends
    std::vector<double> ut;  // D2 u + f(u)
    double theta_minus = 0.0;
    double theta_plus = 0.0;
};

struct SolverConfig {
    double dt = 1e-2;
    double T = 1.0;
    std::vector<double> snapshot_times;
    double blowup_bound = 0.0;  // <= 0: use 10 * (kappa + delta)
};

struct Trajectory {
    std::vector<SolutionState> states;
    std::uint64_t config_hash = 0;

    const SolutionState& at_time(double t) const
    {
        for (const SolutionState& s : states)
            if (std::abs(s.t - t) <= 1e-9 * std::max(1.0, std::abs(t))) return s;
        throw std::out_of_range("Trajectory: no snapshot at t = " + std::to_string(t));
    }
};

namespace detail {

inline std::vector<double> derive_ux(const Grid& g, const std::vector<double>& u)
{
    const int n = g.n;
    const double d = 12.0 * g.h;
    std::vector<double> ux(n);
    if (n < 5) {
        for (int i = 0; i < n; ++i) {
            const int im = std::max(0, i - 1), ip = std::min(n - 1, i + 1);
            ux[i] = (u[ip] - u[im]) / ((ip - im) * g.h);
        }
        return ux;
    }
    ux[0] = (-25.0 * u[0] + 48.0 * u[1] - 36.0 * u[2] + 16.0 * u[3] - 3.0 * u[4]) / d;
    ux[1] = (-3.0 * u[0] - 10.0 * u[1] + 18.0 * u[2] - 6.0 * u[3] + u[4]) / d;
    for (int i = 2; i < n - 2; ++i)
        ux[i] = (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]) / d;
    ux[n - 2] = (3.0 * u[n - 1] + 10.0 * u[n - 2] - 18.0 * u[n - 3] + 6.0 * u[n - 4] -
                 u[n - 5]) / d;
    ux[n - 1] = (25.0 * u[n - 1] - 48.0 * u[n - 2] + 36.0 * u[n - 3] - 16.0 * u[n - 4] +
                 3.0 * u[n - 5]) / d;
    return ux;
}

inline std::vector<double> derive_ut(const Nonlinearity& f, const Grid& g,
                                     const std::vector<double>& u)
{
    const int n = g.n;
    std::vector<double> ut(n);
    const double inv_h2 = 1.0 / (g.h * g.h);
    ut[0] = f(u[0]);
    ut[n - 1] = f(u[n - 1]);
    for (int i = 1; i < n - 1; ++i)
        ut[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_h2 + f(u[i]);
    return ut;
}

} // namespace detail

/// Time stepper: Strang splitting with the reaction advanced by one
/// Runge-Kutta substep per half-step and the diffusion by Crank-Nicolson with
/// a cached tridiagonal factorization.  Boundary nodes ride the reaction flow
/// only, which is the far-field equation theta' = f(theta); a boundary that
/// starts exactly at an unstable zero of f is pinned there.
class Stepper {
public:
    Stepper(const Nonlinearity& f, Grid grid, double dt, double blowup_bound)
        : f_(f), grid_(grid), dt_(dt), blowup_(blowup_bound)
    {
        if (dt <= 0.0) throw std::invalid_argument("Stepper: dt must be > 0");
        const int m = grid.n - 2;  // interior unknowns
        const double alpha = 0.5 * dt / (grid.h * grid.h);
        alpha_ = alpha;
        // LU sweep coefficients for the constant tridiagonal (-a, b, -a)
        cp_.resize(m);
        const double b = 1.0 + 2.0 * alpha;
        double beta = b;
        cp_[0] = -alpha / beta;
        for (int i = 1; i < m; ++i) {
            beta = b + alpha * cp_[i - 1];
            cp_[i] = -alpha / beta;
        }
        inv_beta_.resize(m);
        beta = b;
        inv_beta_[0] = 1.0 / beta;
        for (int i = 1; i < m; ++i) {
            beta = b + alpha * cp_[i - 1];
            inv_beta_[i] = 1.0 / beta;
        }
        rhs_.resize(m);
    }

    /// One step of size dt applied in place; u holds node values, the theta
    /// pair are the current boundary states.  Pinned flags freeze a boundary.
    void advance(std::vector<double>& u, bool pin_minus, bool pin_plus, double t_new)
    {
        const int n = grid_.n;
        const int m = n - 2;
        auto react_half = [&](double y) { return rk4_step([&](double s) { return f_(s); }, y, 0.5 * dt_); };

        for (int i = 0; i < n; ++i) u[i] = react_half(u[i]);
        if (pin_minus) u[0] = 0.0;
        if (pin_plus) u[n - 1] = 0.0;

        // Crank-Nicolson on the diffusion; boundary nodes are Dirichlet data
        // unchanged by this sub-step (the solution is flat at the far field).
        for (int i = 0; i < m; ++i) {
            const int j = i + 1;
            rhs_[i] = u[j] + alpha_ * (u[j - 1] - 2.0 * u[j] + u[j + 1]);
        }
        rhs_[0] += alpha_ * u[0];
        rhs_[m - 1] += alpha_ * u[n - 1];
        // forward sweep
        rhs_[0] *= inv_beta_[0];
        for (int i = 1; i < m; ++i) rhs_[i] = (rhs_[i] + alpha_ * rhs_[i - 1]) * inv_beta_[i];
        // back substitution
        for (int i = m - 2; i >= 0; --i) rhs_[i] -= cp_[i] * rhs_[i + 1];
        for (int i = 0; i < m; ++i) u[i + 1] = rhs_[i];

        for (int i = 0; i < n; ++i) u[i] = react_half(u[i]);
        if (pin_minus) u[0] = 0.0;
        if (pin_plus) u[n - 1] = 0.0;

        double sup = 0.0;
        for (double v : u) sup = std::max(sup, std::abs(v));
        if (!(sup <= blowup_)) throw BlowUp(t_new);
    }

    const Grid& grid() const { return grid_; }
    double dt() const { return dt_; }

private:
    Nonlinearity f_;
    Grid grid_;
    double dt_, blowup_, alpha_;
    std::vector<double> cp_, inv_beta_, rhs_;
};

inline double default_blowup_bound(const Nonlinearity& f) { return 10.0 * f.cutoff(); }

inline SolutionState make_state(const Nonlinearity& f, const Grid& grid, std::vector<double> u,
                                double t, double theta_minus, double theta_plus)
{
    SolutionState s;
    s.t = t;
    s.grid = grid;
    s.ux = detail::derive_ux(grid, u);
    s.ut = detail::derive_ut(f, grid, u);
    s.u = std::move(u);
    s.theta_minus = theta_minus;
    s.theta_plus = theta_plus;
    return s;
}

/// One step of the scheme applied to a snapshot.
inline SolutionState step(const Nonlinearity& f, const SolutionState& state, double dt,
                          double blowup_bound = 0.0)
{
    if (blowup_bound <= 0.0) blowup_bound = default_blowup_bound(f);
    Stepper stepper(f, state.grid, dt, blowup_bound);
    std::vector<double> u = state.u;
    const bool pin_minus = state.theta_minus == 0.0 && f(0.0) == 0.0;
    const bool pin_plus = state.theta_plus == 0.0 && f(0.0) == 0.0;
    stepper.advance(u, pin_minus, pin_plus, state.t + dt);
    const double tm = u.front(), tp = u.back();
    return make_state(f, state.grid, std::move(u), state.t + dt, tm, tp);
}

/// Integrates u_t = u_xx + f(u) and returns snapshots at the requested times.
/// Segment step counts are chosen so every snapshot time is hit exactly.
inline Trajectory run(const Nonlinearity& f, const InitialDatum& u0, const SolverConfig& cfg)
{
    if (cfg.dt <= 0.0) throw std::invalid_argument("run: dt must be > 0");
    if (static_cast<int>(u0.values.size()) != u0.grid.n)
        throw std::invalid_argument("run: datum does not match its grid");
    std::vector<double> times = cfg.snapshot_times;
    std::sort(times.begin(), times.end());
    for (double t : times)
        if (t < 0.0 || t > cfg.T + 1e-12)
            throw std::invalid_argument("run: snapshot time outside [0, T]");

    const double blowup = cfg.blowup_bound > 0.0 ? cfg.blowup_bound : default_blowup_bound(f);

    std::vector<double> u = u0.values;
    const bool pin_minus = u0.theta_minus0 == 0.0 && f(0.0) == 0.0;
    const bool pin_plus = u0.theta_plus0 == 0.0 && f(0.0) == 0.0;
    u.front() = u0.theta_minus0;
    u.back() = u0.theta_plus0;

    Trajectory traj;
    double t_cur = 0.0;
    std::size_t next = 0;
    if (!times.empty() && times[0] == 0.0) {
        traj.states.push_back(make_state(f, u0.grid, u, 0.0, u.front(), u.back()));
        ++next;
    }
    while (next < times.size()) {
        const double t_target = times[next];
        const double span = t_target - t_cur;
        if (span > 1e-12) {
            const long steps = std::max<long>(1, std::lround(std::ceil(span / cfg.dt - 1e-9)));
            const double dt_seg = span / static_cast<double>(steps);
            Stepper seg(f, u0.grid, dt_seg, blowup);
            for (long k = 0; k < steps; ++k)
                seg.advance(u, pin_minus, pin_plus, t_cur + dt_seg * (k + 1));
        }
        t_cur = t_target;
        traj.states.push_back(make_state(f, u0.grid, u, t_cur, u.front(), u.back()));
        ++next;
    }
    return traj;
}

/// High-accuracy solution of the far-field equation xi' = f(xi), xi(0) =
/// theta0, evaluated at time t.
inline double boundary_theta(const Nonlinearity& f, double theta0, double t, double tol = 1e-10)
{
    return ode_solve([&](double y) { return f(y); }, theta0, t, tol);
}

/// True iff every snapshot of the trajectory stays inside [lo, hi] up to tol.
/// Meaningful when f(lo) > 0 > f(hi) and the datum starts inside, in which
/// case the exact flow preserves the region.
inline bool conserved_region_check(const Trajectory& traj, double lo, double hi,
                                   double tol = 1e-8)
{
    for (const SolutionState& s : traj.states)
        for (double v : s.u)
            if (v < lo - tol || v > hi + tol) return false;
    return true;
}

} // namespace phaseline

#endif
