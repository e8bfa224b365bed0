#ifndef PHASELINE_NUMERICS_HPP
#define PHASELINE_NUMERICS_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace phaseline {

struct QuadratureFailure : std::runtime_error {
    explicit QuadratureFailure(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

template <typename F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth, bool& ok)
{
    const double m  = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left  = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-14 * (std::abs(a) + std::abs(b)))
        return left + right + delta / 15.0;
    if (depth <= 0) {
        ok = false;
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, ok)
         + adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, ok);
}

} // namespace detail

// Adaptive Simpson rule. The tolerance is applied as
// max(abs_tol, rel_tol*|I|) with |I| estimated from a coarse pass.
template <typename F>
double integrate(const F& f, double a, double b, double rel_tol = 1e-10,
                 double abs_tol = 0.0, int max_depth = 48)
{
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double coarse = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double tol = std::max(abs_tol, rel_tol * std::abs(coarse));
    if (tol == 0.0) tol = rel_tol;
    bool ok = true;
    const double result =
        detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, coarse, tol, max_depth, ok);
    if (!ok) throw QuadratureFailure("adaptive quadrature did not converge");
    return result;
}

// Bisection on a bracketed sign change, followed by secant polishing.
// Requires g(lo) and g(hi) of opposite (weak) sign.
template <typename G>
double refine_root(const G& g, double lo, double hi, double tol = 1e-14)
{
    double glo = g(lo), ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo > 0.0) == (ghi > 0.0))
        throw std::invalid_argument("refine_root: endpoints do not bracket a sign change");
    for (int it = 0; it < 200 && (hi - lo) > tol * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
    }
    return 0.5 * (lo + hi);
}

// One classical Runge-Kutta step for the scalar autonomous equation y' = f(y).
template <typename F>
double rk4_step(const F& f, double y, double dt)
{
    const double k1 = f(y);
    const double k2 = f(y + 0.5 * dt * k1);
    const double k3 = f(y + 0.5 * dt * k2);
    const double k4 = f(y + dt * k3);
    return y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Adaptive Cash-Karp 4(5) integration of the scalar autonomous equation
// y' = f(y) from t=0 to t=t_end.
template <typename F>
double ode_solve(const F& f, double y0, double t_end, double tol = 1e-10)
{
    if (t_end == 0.0) return y0;
    static constexpr double b21 = 1.0 / 5.0;
    static constexpr double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
    static constexpr double b41 = 3.0 / 10.0, b42 = -9.0 / 10.0, b43 = 6.0 / 5.0;
    static constexpr double b51 = -11.0 / 54.0, b52 = 5.0 / 2.0, b53 = -70.0 / 27.0,
                            b54 = 35.0 / 27.0;
    static constexpr double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0, b63 = 575.0 / 13824.0,
                            b64 = 44275.0 / 110592.0, b65 = 253.0 / 4096.0;
    static constexpr double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0, c4 = 125.0 / 594.0,
                            c6 = 512.0 / 1771.0;
    static constexpr double d1 = 2825.0 / 27648.0, d3 = 18575.0 / 48384.0,
                            d4 = 13525.0 / 55296.0, d5 = 277.0 / 14336.0, d6 = 1.0 / 4.0;

    double t = 0.0, y = y0;
    double h = t_end / 16.0;
    const double h_min = std::abs(t_end) * 1e-15;
    for (long step = 0; step < 2000000; ++step) {
        if (t == t_end) return y;
        if ((t_end > 0.0 && t + h > t_end) || (t_end < 0.0 && t + h < t_end)) h = t_end - t;
        const double k1 = f(y);
        const double k2 = f(y + h * b21 * k1);
        const double k3 = f(y + h * (b31 * k1 + b32 * k2));
        const double k4 = f(y + h * (b41 * k1 + b42 * k2 + b43 * k3));
        const double k5 = f(y + h * (b51 * k1 + b52 * k2 + b53 * k3 + b54 * k4));
        const double k6 = f(y + h * (b61 * k1 + b62 * k2 + b63 * k3 + b64 * k4 + b65 * k5));
        const double y5 = y + h * (c1 * k1 + c3 * k3 + c4 * k4 + c6 * k6);
        const double y4 = y + h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6);
        const double err = std::abs(y5 - y4);
        const double scale = tol * std::max(1.0, std::abs(y));
        if (err <= scale || std::abs(h) <= h_min) {
            t += h;
            y = y5;
            if (err > 0.0) h *= std::min(5.0, 0.9 * std::pow(scale / err, 0.2));
        } else {
            h *= std::max(0.1, 0.9 * std::pow(scale / err, 0.25));
        }
    }
    throw std::runtime_error("ode_solve: step budget exhausted");
}

// 64-bit FNV-1a, used to fingerprint configurations.
inline std::uint64_t fnv1a(const std::string& data)
{
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

} // namespace phaseline

#endif
