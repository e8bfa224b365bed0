#ifndef PHASELINE_NONLINEARITY_HPP
#define PHASELINE_NONLINEARITY_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "phaseline/numerics.hpp"

namespace phaseline {

struct NondegeneracyViolation : std::runtime_error {
    explicit NondegeneracyViolation(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline double poly_eval(const std::vector<double>& c, double u)
{
    double r = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) r = r * u + c[k];
    return r;
}

inline std::vector<double> poly_derivative(const std::vector<double>& c)
{
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
    return d;
}

inline std::vector<double> poly_antiderivative(const std::vector<double>& c)
{
    std::vector<double> a(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) a[k + 1] = c[k] / static_cast<double>(k + 1);
    return a;
}

} // namespace detail

/// Reaction term with a polynomial core on [-kappa, kappa], a linear ramp of
/// width delta on each side, and the linear tail u/2 beyond.  The ramp keeps
/// the function globally Lipschitz and makes every orbit of the steady-state
/// phase plane bounded.
class Nonlinearity {
public:
    Nonlinearity(std::vector<double> core_coeffs, double kappa, double delta)
        : coeffs_(std::move(core_coeffs)), kappa_(kappa), delta_(delta)
    {
        if (kappa_ < 0.0) throw std::invalid_argument("Nonlinearity: kappa must be >= 0");
        if (delta_ <= 0.0) throw std::invalid_argument("Nonlinearity: delta must be > 0");
        dcoeffs_ = detail::poly_derivative(coeffs_);
        d2coeffs_ = detail::poly_derivative(dcoeffs_);
        d3coeffs_ = detail::poly_derivative(d2coeffs_);
        acoeffs_ = detail::poly_antiderivative(coeffs_);
        f_hi_ = detail::poly_eval(coeffs_, kappa_);
        f_lo_ = detail::poly_eval(coeffs_, -kappa_);
        slope_hi_ = (0.5 * (kappa_ + delta_) - f_hi_) / delta_;
        slope_lo_ = (f_lo_ - (-0.5 * (kappa_ + delta_))) / delta_;
        F_hi_ = detail::poly_eval(acoeffs_, kappa_);
        F_lo_ = detail::poly_eval(acoeffs_, -kappa_);
        F_cut_hi_ = F_hi_ + blend_integral_hi(kappa_ + delta_);
        F_cut_lo_ = F_lo_ - blend_integral_lo(-(kappa_ + delta_));
        lipschitz_ = compute_lipschitz();
    }

    double value(double u) const
    {
        const double cut = kappa_ + delta_;
        if (u >= cut || u <= -cut) return 0.5 * u;
        if (u > kappa_) return f_hi_ + slope_hi_ * (u - kappa_);
        if (u < -kappa_) return f_lo_ + slope_lo_ * (u + kappa_);
        return detail::poly_eval(coeffs_, u);
    }

    double operator()(double u) const { return value(u); }

    /// Piecewise-analytic derivative of value().
    double derivative(double u) const
    {
        const double cut = kappa_ + delta_;
        if (u >= cut || u <= -cut) return 0.5;
        if (u > kappa_) return slope_hi_;
        if (u < -kappa_) return slope_lo_;
        return detail::poly_eval(dcoeffs_, u);
    }

    /// Higher derivatives of the piecewise form (zero off the core).
    double derivative2(double u) const
    {
        if (std::abs(u) > kappa_) return 0.0;
        return detail::poly_eval(d2coeffs_, u);
    }
    double derivative3(double u) const
    {
        if (std::abs(u) > kappa_) return 0.0;
        return detail::poly_eval(d3coeffs_, u);
    }

    /// Exact antiderivative with antiderivative(0) == 0.
    double antiderivative(double u) const
    {
        const double cut = kappa_ + delta_;
        if (u >= cut) return F_cut_hi_ + 0.25 * (u * u - cut * cut);
        if (u <= -cut) return F_cut_lo_ + 0.25 * (u * u - cut * cut);
        if (u > kappa_) return F_hi_ + blend_integral_hi(u);
        if (u < -kappa_) return F_lo_ - blend_integral_lo(u);
        return detail::poly_eval(acoeffs_, u);
    }

    double kappa() const { return kappa_; }
    double blend_width() const { return delta_; }
    double cutoff() const { return kappa_ + delta_; }
    double lipschitz_bound() const { return lipschitz_; }
    const std::vector<double>& core_coeffs() const { return coeffs_; }

private:
    // Integral of the upper ramp from kappa to u (u in [kappa, kappa+delta]).
    double blend_integral_hi(double u) const
    {
        const double s = u - kappa_;
        return f_hi_ * s + 0.5 * slope_hi_ * s * s;
    }
    // Integral of the lower ramp from u to -kappa (u in [-kappa-delta, -kappa]).
    double blend_integral_lo(double u) const
    {
        const double s = u + kappa_;  // negative
        return -(f_lo_ * s + 0.5 * slope_lo_ * s * s);
    }

    double compute_lipschitz() const
    {
        double m = 0.5;
        m = std::max(m, std::abs(slope_hi_));
        m = std::max(m, std::abs(slope_lo_));
        if (!coeffs_.empty() && kappa_ > 0.0) {
            // max |f'| over the core: check endpoints and the critical points of f'.
            m = std::max(m, std::abs(detail::poly_eval(dcoeffs_, kappa_)));
            m = std::max(m, std::abs(detail::poly_eval(dcoeffs_, -kappa_)));
            const std::vector<double> ddc = detail::poly_derivative(dcoeffs_);
            if (!ddc.empty()) {
                const int n_scan = 2048;
                double prev_u = -kappa_;
                double prev = detail::poly_eval(ddc, prev_u);
                for (int i = 1; i <= n_scan; ++i) {
                    const double u = -kappa_ + 2.0 * kappa_ * i / n_scan;
                    const double cur = detail::poly_eval(ddc, u);
                    if ((prev <= 0.0 && cur >= 0.0) || (prev >= 0.0 && cur <= 0.0)) {
                        if (prev != cur) {
                            const double root = refine_root(
                                [&](double s) { return detail::poly_eval(ddc, s); }, prev_u, u);
                            m = std::max(m, std::abs(detail::poly_eval(dcoeffs_, root)));
                        }
                    }
                    prev_u = u;
                    prev = cur;
                }
            }
        }
        return m * (1.0 + 1e-12);
    }

    std::vector<double> coeffs_, dcoeffs_, d2coeffs_, d3coeffs_, acoeffs_;
    double kappa_, delta_;
    double f_hi_, f_lo_, slope_hi_, slope_lo_;
    double F_hi_, F_lo_, F_cut_hi_, F_cut_lo_;
    double lipschitz_;
};

/// Far-field surgery: wrap a polynomial core so that the reaction term equals
/// u/2 outside [-kappa-delta, kappa+delta], with a linear ramp in between.
inline Nonlinearity apply_far_field(std::vector<double> core_coeffs, double kappa, double delta)
{
    return Nonlinearity(std::move(core_coeffs), kappa, delta);
}

enum class RootStability { stable, unstable };

struct Root {
    double location;
    double derivative;
    RootStability stability;
};

struct RootReport {
    std::vector<Root> roots;
    bool nd_satisfied = true;
    double min_abs_derivative = std::numeric_limits<double>::infinity();
};

/// Locates every zero of f on [-kappa-delta, kappa+delta] by a dense sign-change
/// scan refined with bisection.  Never throws; degenerate roots are reported
/// with nd_satisfied = false.
inline RootReport scan_roots(const Nonlinearity& f, double tol, double nd_tol = 1e-8)
{
    if (tol <= 0.0) throw std::invalid_argument("scan_roots: tol must be > 0");
    RootReport report;
    const double hi = f.cutoff();
    const double lo = -hi;
    const double spacing = std::min(tol, 1e-3 * (hi - lo));
    const long n = std::max<long>(8, std::lround((hi - lo) / spacing));
    const double h = (hi - lo) / static_cast<double>(n);

    auto push = [&](double loc) {
        if (!report.roots.empty() && std::abs(loc - report.roots.back().location) < 0.5 * h)
            return;
        const double d = f.derivative(loc);
        report.roots.push_back(
            {loc, d, d < 0.0 ? RootStability::stable : RootStability::unstable});
    };

    double prev_u = lo;
    double prev = f(prev_u);
    if (prev == 0.0) push(prev_u);
    for (long i = 1; i <= n; ++i) {
        const double u = (i == n) ? hi : lo + h * static_cast<double>(i);
        const double cur = f(u);
        if (cur == 0.0) {
            push(u);
        } else if ((prev > 0.0 && cur < 0.0) || (prev < 0.0 && cur > 0.0)) {
            push(refine_root([&](double s) { return f(s); }, prev_u, u, 1e-15));
        }
        prev_u = u;
        prev = cur;
    }

    for (const Root& r : report.roots)
        report.min_abs_derivative = std::min(report.min_abs_derivative, std::abs(r.derivative));
    report.nd_satisfied = report.roots.empty() || report.min_abs_derivative > nd_tol;
    return report;
}

/// scan_roots plus enforcement of the simple-zero hypothesis: throws
/// NondegeneracyViolation when some root has |f'| below nd_tol.
inline RootReport find_roots(const Nonlinearity& f, double tol, double nd_tol = 1e-8)
{
    RootReport report = scan_roots(f, tol, nd_tol);
    if (!report.nd_satisfied)
        throw NondegeneracyViolation("find_roots: a zero of f has |f'| <= " +
                                     std::to_string(nd_tol));
    return report;
}

/// True iff every reported root is simple with margin tol.
inline bool check_nondegeneracy(const RootReport& report, double tol)
{
    for (const Root& r : report.roots)
        if (!(std::abs(r.derivative) > tol)) return false;
    return true;
}

} // namespace phaseline

#endif
