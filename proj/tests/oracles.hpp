#ifndef PHASELINE_TEST_ORACLES_HPP
#define PHASELINE_TEST_ORACLES_HPP

// Independent numerical oracles for the test suite.  These deliberately do
// not share code with the library: the quadrature here is a fixed-order
// composite rule, and the ODE reference is plain RK4 with tiny steps.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

// Composite Boole's rule with 4n panels; O(h^6), plenty for smooth integrands.
inline double quad(const std::function<double(double)>& f, double a, double b, int panels = 2000)
{
    const double h = (b - a) / (4.0 * panels);
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + 4.0 * i * h;
        sum += 2.0 * h / 45.0 *
               (7.0 * f(x0) + 32.0 * f(x0 + h) + 12.0 * f(x0 + 2 * h) + 32.0 * f(x0 + 3 * h) +
                7.0 * f(x0 + 4 * h));
    }
    return sum;
}

// Reference solution of the scalar equation y' = g(y) by RK4 with n_steps.
inline double ode(const std::function<double(double)>& g, double y0, double t, int n_steps = 200000)
{
    const double h = t / n_steps;
    double y = y0;
    for (int i = 0; i < n_steps; ++i) {
        const double k1 = g(y);
        const double k2 = g(y + 0.5 * h * k1);
        const double k3 = g(y + 0.5 * h * k2);
        const double k4 = g(y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
}

// Brute-force zero scan: counts sign changes of f on a fine grid.
inline int count_sign_changes(const std::function<double(double)>& f, double a, double b,
                              int n = 200000)
{
    int count = 0;
    double prev = f(a);
    for (int i = 1; i <= n; ++i) {
        const double x = a + (b - a) * i / n;
        const double cur = f(x);
        if ((prev > 0.0 && cur < 0.0) || (prev < 0.0 && cur > 0.0)) ++count;
        if (cur != 0.0) prev = cur;
    }
    return count;
}

} // namespace oracle

#endif
