#ifndef PHASELINE_STURM_HPP
#define PHASELINE_STURM_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "phaseline/pde_solver.hpp"

namespace phaseline {

struct WindowTooSmall : std::runtime_error {
    explicit WindowTooSmall(const std::string& w) : std::runtime_error(w) {}
};

/// Sign-change census of a sampled function on an interval.  A zero is
/// counted only when the sign actually flips; excursions that stay inside the
/// noise band are reported as suspected multiple zeros instead, since
/// multiplicity is not decidable from samples.
struct ZeroReport {
    int count = 0;
    bool degenerate = false;  // every sample inside the band
    std::vector<double> locations;
    std::vector<double> suspected_multiple;
    double a = 0.0, b = 0.0;
    bool endpoints_nonzero = true;
};

/// Counts strict sign changes of v on (a, b).  The band is relative: samples
/// with |v| <= band_rel * sup_window |v| are treated as potential zeros, so
/// the census is invariant under rescaling of v.  band_abs adds a floor for
/// fields that are derived differences of a larger quantity: when the whole
/// window sits below it the report is degenerate.
inline ZeroReport zero_count(std::span<const double> xs, std::span<const double> v, double a,
                             double b, double band_rel = 1e-6, double band_abs = 0.0)
{
    if (xs.size() != v.size()) throw std::invalid_argument("zero_count: size mismatch");
    if (!(band_rel >= 0.0)) throw std::invalid_argument("zero_count: band must be >= 0");
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0 && xs[i] <= xs[i - 1])
            throw std::invalid_argument("zero_count: xs must be strictly increasing");
        if (xs[i] > a && xs[i] < b) idx.push_back(i);
    }
    if (idx.size() < 2) throw std::invalid_argument("zero_count: fewer than 2 samples in (a,b)");

    ZeroReport report;
    report.a = a;
    report.b = b;

    double sup = 0.0;
    for (std::size_t i : idx) sup = std::max(sup, std::abs(v[i]));
    const double band = std::max(band_rel * sup, band_abs);

    auto cls = [&](std::size_t i) -> int {
        if (v[i] > band) return +1;
        if (v[i] < -band) return -1;
        return 0;
    };

    report.endpoints_nonzero = cls(idx.front()) != 0 && cls(idx.back()) != 0;
    if (sup <= band_abs || sup == 0.0) {
        report.degenerate = true;
        report.endpoints_nonzero = false;
        report.suspected_multiple.push_back(0.5 * (xs[idx.front()] + xs[idx.back()]));
        return report;
    }

    // argmin of |v| over a run of in-band samples
    auto run_min = [&](std::size_t from, std::size_t to) {
        double best = std::numeric_limits<double>::infinity();
        double where = xs[idx[from]];
        for (std::size_t k = from; k <= to; ++k) {
            if (std::abs(v[idx[k]]) < best) {
                best = std::abs(v[idx[k]]);
                where = xs[idx[k]];
            }
        }
        return where;
    };

    int last_sign = 0;
    std::size_t last_sign_pos = 0;
    std::size_t run_start = 0;
    bool in_run = false;
    bool leading_run = false;

    for (std::size_t k = 0; k < idx.size(); ++k) {
        const int c = cls(idx[k]);
        if (c == 0) {
            if (!in_run) {
                in_run = true;
                run_start = k;
                leading_run = (last_sign == 0);
            }
            continue;
        }
        if (last_sign == 0) {
            if (in_run && leading_run)
                report.suspected_multiple.push_back(run_min(run_start, k - 1));
        } else if (c != last_sign) {
            // sign change; localize on the raw adjacent pair that crosses
            double loc = xs[idx[k]];
            for (std::size_t m = last_sign_pos; m < k; ++m) {
                const double v0 = v[idx[m]], v1 = v[idx[m + 1]];
                if ((v0 >= 0.0 && v1 <= 0.0) || (v0 <= 0.0 && v1 >= 0.0)) {
                    const double x0 = xs[idx[m]], x1 = xs[idx[m + 1]];
                    loc = (v1 == v0) ? 0.5 * (x0 + x1) : x0 + (x1 - x0) * (0.0 - v0) / (v1 - v0);
                    break;
                }
            }
            ++report.count;
            report.locations.push_back(loc);
        } else if (in_run) {
            // dip into the band without a sign change
            report.suspected_multiple.push_back(run_min(run_start, k - 1));
        }
        last_sign = c;
        last_sign_pos = k;
        in_run = false;
    }
    if (in_run && last_sign != 0)
        report.suspected_multiple.push_back(run_min(run_start, idx.size() - 1));
    return report;
}

/// Critical points of a snapshot: sign changes of u_x on the window.
inline ZeroReport critical_points(const SolutionState& state, double a, double b,
                                  double band_rel = 1e-6)
{
    std::vector<double> xs(state.grid.n);
    for (int i = 0; i < state.grid.n; ++i) xs[i] = state.grid.x(i);
    return zero_count(xs, state.ux, a, b, band_rel);
}

struct AuditVerdict {
    bool nonincreasing = true;
    std::vector<double> drop_times;
    int considered = 0;
};

/// Checks that the census never increases along a snapshot sequence.
/// Snapshots whose window endpoints fall inside the band, or that are fully
/// degenerate, are excluded rather than counted.
inline AuditVerdict monotonicity_audit(std::span<const double> times,
                                       std::span<const ZeroReport> reports)
{
    if (times.size() != reports.size())
        throw std::invalid_argument("monotonicity_audit: size mismatch");
    AuditVerdict verdict;
    bool have_prev = false;
    int prev = 0;
    for (std::size_t k = 0; k < reports.size(); ++k) {
        if (reports[k].degenerate || !reports[k].endpoints_nonzero) continue;
        ++verdict.considered;
        if (have_prev) {
            if (reports[k].count > prev) verdict.nonincreasing = false;
            if (reports[k].count < prev) verdict.drop_times.push_back(times[k]);
        }
        prev = reports[k].count;
        have_prev = true;
    }
    return verdict;
}

/// Census of the reflection difference u(2*lambda - x) - u(x) on the largest
/// window symmetric about lambda that fits the grid.
inline ZeroReport reflection_zero_count(const SolutionState& state, double lambda,
                                        double band_rel = 1e-6)
{
    const Grid& g = state.grid;
    const double half = std::min(lambda - g.x_min, g.x_max - lambda);
    if (!(half > 0.0)) throw WindowTooSmall("reflection_zero_count: lambda outside the grid");

    std::vector<double> xs, w;
    double u_scale = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        if (x < lambda - half || x > lambda + half) continue;
        const double y = 2.0 * lambda - x;
        const double jr = (y - g.x_min) / g.h;
        const long j0 = std::lround(std::floor(jr));
        double uy;
        if (std::abs(jr - std::lround(jr)) < 1e-9) {
            uy = state.u[static_cast<std::size_t>(std::lround(jr))];
        } else {
            const double frac = jr - j0;
            uy = state.u[j0] * (1.0 - frac) + state.u[j0 + 1] * frac;
        }
        xs.push_back(x);
        w.push_back(uy - state.u[i]);
        u_scale = std::max(u_scale, std::abs(state.u[i]));
    }
    if (xs.size() < 8) throw WindowTooSmall("reflection_zero_count: fewer than 8 nodes");
    // a reflection difference at the roundoff floor of u itself is symmetry,
    // not structure
    return zero_count(xs, w, xs.front() - 0.5 * g.h, xs.back() + 0.5 * g.h, band_rel,
                      band_rel * u_scale);
}

} // namespace phaseline

#endif
