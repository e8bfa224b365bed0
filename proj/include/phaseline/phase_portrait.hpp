#ifndef PHASELINE_PHASE_PORTRAIT_HPP
#define PHASELINE_PHASE_PORTRAIT_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "phaseline/nonlinearity.hpp"
#include "phaseline/numerics.hpp"

namespace phaseline {

struct NoReturnPoint : std::runtime_error {
    explicit NoReturnPoint(const std::string& w) : std::runtime_error(w) {}
};
struct HitsEquilibrium : std::runtime_error {
    explicit HitsEquilibrium(const std::string& w) : std::runtime_error(w) {}
};
struct InsidePeriodicRegion : std::runtime_error {
    explicit InsidePeriodicRegion(const std::string& w) : std::runtime_error(w) {}
};
struct NotACenter : std::runtime_error {
    explicit NotACenter(const std::string& w) : std::runtime_error(w) {}
};
struct DegenerateEquilibrium : std::runtime_error {
    explicit DegenerateEquilibrium(const std::string& w) : std::runtime_error(w) {}
};

struct PhasePoint {
    double u = 0.0;
    double v = 0.0;
};

/// Energy of the planar steady-state system u_x = v, v_x = -f(u).
inline double hamiltonian(const Nonlinearity& f, PhasePoint p)
{
    return 0.5 * p.v * p.v + f.antiderivative(p.u);
}

enum class OrbitKind { equilibrium, periodic, homoclinic, heteroclinic };

inline const char* to_string(OrbitKind k)
{
    switch (k) {
        case OrbitKind::equilibrium: return "equilibrium";
        case OrbitKind::periodic: return "periodic";
        case OrbitKind::homoclinic: return "homoclinic";
        case OrbitKind::heteroclinic: return "heteroclinic";
    }
    return "?";
}

/// One orbit of the planar system, sampled on its upper branch
/// v = +sqrt(2(c - F(u))); the lower branch is the mirror image.
struct OrbitRecord {
    OrbitKind kind = OrbitKind::equilibrium;
    double level = 0.0;
    double u_min = 0.0;
    double u_max = 0.0;
    std::vector<double> limit_equilibria;  // 0, 1, or 2 locations
    std::vector<PhasePoint> polyline;      // upper branch, u increasing
};

/// A Jordan curve made of a homoclinic orbit plus its equilibrium, or of two
/// mirror heteroclinic orbits plus their equilibria.
struct Loop {
    OrbitKind kind = OrbitKind::homoclinic;
    double level = 0.0;
    std::vector<PhasePoint> boundary;  // closed: first == last
    std::vector<double> limit_equilibria;
    double u_min = 0.0;
    double u_max = 0.0;
};

/// Connected component of the plane minus the nonstationary periodic orbits:
/// equilibria, homoclinic and heteroclinic orbits at one energy level.
struct Chain {
    double level = 0.0;
    double u_min = 0.0;
    double u_max = 0.0;
    std::vector<OrbitRecord> members;
    std::vector<Loop> loops;
    bool trivial() const { return members.size() == 1 && loops.empty(); }
};

/// Connected component of the periodic-orbit region around a center, with its
/// trivial inner chain and outer loop; p_hat/q_hat are the u-extremes of the
/// outer loop.
struct PiComponent {
    double center = 0.0;
    Chain sigma_in;
    Loop lambda_out;
    double p_hat = 0.0;
    double q_hat = 0.0;
    bool bounded = false;
};

enum class EquilibriumType { center, saddle };

inline EquilibriumType classify_equilibrium(const Nonlinearity& f, double root, double tol = 1e-8)
{
    const double d = f.derivative(root);
    if (std::abs(d) <= tol)
        throw DegenerateEquilibrium("classify_equilibrium: |f'| <= tol at " + std::to_string(root));
    return d > 0.0 ? EquilibriumType::center : EquilibriumType::saddle;
}

namespace detail {

inline double level_tol(double c) { return 1e-9 * std::max(1.0, std::abs(c)); }

// 2(c - F(e + s)) expanded about e; exact when the core polynomial has degree
// <= 3, and free of the cancellation that plagues direct evaluation near a
// turning point or a saddle.
inline double radicand_near(const Nonlinearity& f, double e, double c, double s)
{
    const double r = 2.0 * (c - f.antiderivative(e)) -
                     2.0 * s * (f(e) + s * (0.5 * f.derivative(e) +
                                 s * (f.derivative2(e) / 6.0 + s * f.derivative3(e) / 24.0)));
    return std::max(0.0, r);
}

// 2(c - F(u)) with a switch to the expansion near the arc endpoints.
inline double radicand_on_arc(const Nonlinearity& f, double c, double lo, double hi, double u)
{
    const double width = hi - lo;
    const double sw = 1e-3 * width;
    if (u - lo < sw) return radicand_near(f, lo, c, u - lo);
    if (hi - u < sw) return radicand_near(f, hi, c, -(hi - u));
    return std::max(0.0, 2.0 * (c - f.antiderivative(u)));
}

// Integrand of the x(u) arc integral under u = m - h*cos(theta):
//   dx = du / sqrt(2(c - F(u))) = h sin(theta) dtheta / sqrt(...).
// Endpoint values are the analytic limits of the removable singularity.
struct ArcIntegrand {
    const Nonlinearity& f;
    double c, lo, hi;

    double operator()(double theta) const
    {
        const double h = 0.5 * (hi - lo);
        if (theta <= 0.0) {
            const double slope = -f(lo);
            if (slope <= 0.0) return 0.0;  // guarded by the callers
            return std::sqrt(h / slope);
        }
        const double pi = 3.14159265358979323846;
        if (theta >= pi) {
            const double slope = f(hi);
            if (slope <= 0.0) return 0.0;
            return std::sqrt(h / slope);
        }
        const double sh = std::sin(0.5 * theta);
        const double ch = std::cos(0.5 * theta);
        const double s_lo = 2.0 * h * sh * sh;  // u - lo, cancellation-free
        const double s_hi = 2.0 * h * ch * ch;  // hi - u
        const double width = hi - lo;
        double rad;
        if (s_lo < 1e-3 * width)
            rad = radicand_near(f, lo, c, s_lo);
        else if (s_hi < 1e-3 * width)
            rad = radicand_near(f, hi, c, -s_hi);
        else
            rad = std::max(0.0, 2.0 * (c - f.antiderivative(lo + s_lo)));
        if (rad <= 0.0) return 0.0;
        return h * std::sin(theta) / std::sqrt(rad);
    }
};

// x-length of the piece of the upper arc between theta_a and theta_b.
inline double arc_x_span(const Nonlinearity& f, double c, double lo, double hi, double theta_a,
                         double theta_b, double rel_tol = 1e-10)
{
    const ArcIntegrand g{f, c, lo, hi};
    return integrate(g, theta_a, theta_b, rel_tol, 0.0, 52);
}

// Samples the upper branch of the level-c arc over [lo, hi] on a grid
// clustered at the turning points.
inline std::vector<PhasePoint> sample_upper_branch(const Nonlinearity& f, double c, double lo,
                                                   double hi, int n_samples)
{
    const double pi = 3.14159265358979323846;
    std::vector<PhasePoint> pts;
    pts.reserve(n_samples + 1);
    const double m = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    for (int i = 0; i <= n_samples; ++i) {
        const double theta = pi * i / n_samples;
        const double u = (i == 0) ? lo : (i == n_samples ? hi : m - h * std::cos(theta));
        const double rad = radicand_on_arc(f, c, lo, hi, u);
        pts.push_back({u, std::sqrt(rad)});
    }
    return pts;
}

// u beyond which the far-field tail keeps F above level c for sure.
inline double tail_bound(const Nonlinearity& f, double c)
{
    const double cut = f.cutoff();
    const double fc = f.antiderivative(cut);
    const double fm = f.antiderivative(-cut);
    double b = cut;
    if (c >= fc) b = std::max(b, std::sqrt(cut * cut + 4.0 * (c - fc)));
    if (c >= fm) b = std::max(b, std::sqrt(cut * cut + 4.0 * (c - fm)));
    return b + 1.0;
}

// Marches from a in direction dir (+1/-1) until F exceeds c + tol, returns the
// refined point where F == c, or nullopt if the bound is reached first.
inline std::optional<double> march_to_level(const Nonlinearity& f, double a, double c, int dir,
                                            double bound)
{
    const double tol = level_tol(c);
    const long n_steps = 8000;
    const double step = dir * (bound + std::abs(a)) / n_steps;
    double prev = a;
    for (long i = 1; i <= 2 * n_steps; ++i) {
        const double u = a + step * static_cast<double>(i);
        if (std::abs(u) > bound) return std::nullopt;
        if (f.antiderivative(u) - c > tol) {
            return refine_root([&](double s) { return f.antiderivative(s) - c; }, prev, u, 1e-15);
        }
        prev = u;
    }
    return std::nullopt;
}

// F(b) - F(a) for a close to the anchor root g, evaluated through the Taylor
// expansion of F about g so that the quadratic degeneracy at a saddle does
// not drown in roundoff.  Exact for core polynomials of degree <= 3.
inline double level_gap_anchored(const Nonlinearity& f, double g, double a, double b)
{
    const double s = a - g;
    const double taylor = s * (f(g) + s * (0.5 * f.derivative(g) +
                            s * (f.derivative2(g) / 6.0 + s * f.derivative3(g) / 24.0)));
    return (f.antiderivative(b) - f.antiderivative(g)) - taylor;
}

inline OrbitRecord make_equilibrium_record(double gamma, double c)
{
    OrbitRecord rec;
    rec.kind = OrbitKind::equilibrium;
    rec.level = c;
    rec.u_min = rec.u_max = gamma;
    rec.limit_equilibria = {gamma};
    rec.polyline = {{gamma, 0.0}};
    return rec;
}

// Closed Jordan boundary from an upper arc: upper branch left-to-right, then
// the mirrored lower branch right-to-left, first point repeated at the end.
inline std::vector<PhasePoint> close_boundary(const std::vector<PhasePoint>& upper)
{
    std::vector<PhasePoint> b = upper;
    for (std::size_t i = upper.size() - 1; i-- > 1;) b.push_back({upper[i].u, -upper[i].v});
    b.push_back(upper.front());
    return b;
}

} // namespace detail

/// Orbit through the left turning point (p, 0); requires f(p) < 0 so that the
/// level set opens to the right of p.
inline OrbitRecord periodic_orbit_at(const Nonlinearity& f, double p, int n_samples = 800)
{
    const double c = f.antiderivative(p);
    const double fp = f(p);
    if (std::abs(fp) <= 1e-12)
        throw HitsEquilibrium("periodic_orbit_at: (p,0) is an equilibrium");
    if (fp > 0.0)
        throw NoReturnPoint("periodic_orbit_at: p is not a left turning point (f(p) > 0)");

    // Walk the equilibria right of p.  A root whose level sits above c caps
    // the orbit; one at the level of c (to the accuracy recoverable from p)
    // makes the level a chain.  Direct subtraction of F values cannot resolve
    // gaps below roundoff, so gaps are re-evaluated anchored at the root
    // nearest to p.
    const RootReport roots = scan_roots(f, 1e-4);
    double anchor = p;
    double anchor_dist = std::numeric_limits<double>::infinity();
    for (const Root& r : roots.roots) {
        const double d = std::abs(p - r.location);
        if (d < anchor_dist) {
            anchor_dist = d;
            anchor = r.location;
        }
    }

    const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, std::abs(c));
    double march_cap = detail::tail_bound(f, c);
    std::optional<double> q;
    for (const Root& r : roots.roots) {
        if (r.location <= p) continue;
        double gap = f.antiderivative(r.location) - c;  // F(root) - F(p)
        if (std::abs(gap) <= noise && anchor_dist < 1.0)
            gap = detail::level_gap_anchored(f, anchor, p, r.location);
        if (gap > 1e-3 * std::max(1.0, std::abs(c))) {
            march_cap = r.location;  // plain march will find q before this root
            break;
        }
        if (gap > 0.0) {
            // barrier barely above the level: solve the expansion about the
            // root for the turning point just left of it
            const double f0 = f(r.location);
            const double f1 = f.derivative(r.location);
            const double f2 = f.derivative2(r.location);
            const double f3 = f.derivative3(r.location);
            auto rad = [&](double s) {
                return -2.0 * gap -
                       2.0 * s * (f0 + s * (0.5 * f1 + s * (f2 / 6.0 + s * f3 / 24.0)));
            };
            double s_lo = -(r.location - p) * 0.5;
            while (rad(s_lo) <= 0.0 && s_lo < -1e-300) s_lo *= 0.5;
            q = r.location + refine_root(rad, s_lo, 0.0, 1e-16);
            break;
        }
        if (gap > -noise)
            throw HitsEquilibrium("periodic_orbit_at: level set contains the equilibrium at " +
                                  std::to_string(r.location));
        // gap clearly negative: the branch passes above this equilibrium
    }

    if (!q) {
        q = detail::march_to_level(f, p, c, +1, march_cap);
        if (!q) throw NoReturnPoint("periodic_orbit_at: F never re-attains F(p) to the right");
    }

    OrbitRecord rec;
    rec.kind = OrbitKind::periodic;
    rec.level = c;
    rec.u_min = p;
    rec.u_max = *q;
    rec.polyline = detail::sample_upper_branch(f, c, p, *q, n_samples);
    return rec;
}

/// Minimal period 2 * int_p^q du / sqrt(2(F(p) - F(u))) of a periodic orbit,
/// with the turning-point singularities removed by a trigonometric
/// substitution.
inline double minimal_period(const Nonlinearity& f, const OrbitRecord& orbit,
                             double rel_tol = 1e-9)
{
    if (orbit.kind != OrbitKind::periodic)
        throw std::invalid_argument("minimal_period: orbit is not periodic");
    const double pi = 3.14159265358979323846;
    return 2.0 * detail::arc_x_span(f, orbit.level, orbit.u_min, orbit.u_max, 0.0, pi, rel_tol);
}

/// The chain through (a, 0).  Throws InsidePeriodicRegion when (a, 0) lies on
/// a nonstationary periodic orbit.
inline Chain chain_through(const Nonlinearity& f, double a, int n_samples = 800)
{
    const double c = f.antiderivative(a);
    const double tol = detail::level_tol(c);
    const double fa = f(a);

    // a center is its own trivial chain
    if (std::abs(fa) <= 1e-12 && f.derivative(a) > 0.0) {
        Chain chain;
        chain.level = c;
        chain.u_min = chain.u_max = a;
        chain.members = {detail::make_equilibrium_record(a, c)};
        return chain;
    }

    const double bound = detail::tail_bound(f, c);
    const auto right = detail::march_to_level(f, a, c, +1, bound);
    const auto left = detail::march_to_level(f, a, c, -1, bound);
    double q = right ? *right : a;
    double p = left ? *left : a;
    if (std::abs(fa) > 1e-12) {
        // (a,0) is a turning point itself: the level set does not extend to the
        // side where F increases
        if (fa < 0.0) p = a;
        else q = a;
    }

    const RootReport roots = scan_roots(f, 1e-4);
    std::vector<double> interior;
    for (const Root& r : roots.roots)
        if (r.location >= p - tol && r.location <= q + tol &&
            std::abs(f.antiderivative(r.location) - c) <= tol)
            interior.push_back(r.location);
    std::sort(interior.begin(), interior.end());

    if (interior.empty())
        throw InsidePeriodicRegion("chain_through: (a,0) lies on a periodic orbit");

    Chain chain;
    chain.level = c;
    chain.u_min = p;
    chain.u_max = q;

    auto add_arc = [&](double lo, double hi, OrbitKind kind, std::vector<double> limits) {
        OrbitRecord rec;
        rec.kind = kind;
        rec.level = c;
        rec.u_min = lo;
        rec.u_max = hi;
        rec.limit_equilibria = std::move(limits);
        rec.polyline = detail::sample_upper_branch(f, c, lo, hi, n_samples);
        chain.members.push_back(rec);
        Loop loop;
        loop.kind = kind;
        loop.level = c;
        loop.boundary = detail::close_boundary(rec.polyline);
        loop.limit_equilibria = rec.limit_equilibria;
        loop.u_min = lo;
        loop.u_max = hi;
        chain.loops.push_back(std::move(loop));
    };

    if (p < interior.front() - tol)
        add_arc(p, interior.front(), OrbitKind::homoclinic, {interior.front()});
    for (std::size_t i = 0; i < interior.size(); ++i) {
        chain.members.push_back(detail::make_equilibrium_record(interior[i], c));
        if (i + 1 < interior.size())
            add_arc(interior[i], interior[i + 1], OrbitKind::heteroclinic,
                    {interior[i], interior[i + 1]});
    }
    if (q > interior.back() + tol)
        add_arc(interior.back(), q, OrbitKind::homoclinic, {interior.back()});

    return chain;
}

/// The component of the periodic-orbit region whose closure contains (0, 0),
/// with its trivial inner chain and its outer loop.  Requires f(0) = 0 and
/// f'(0) > 0.  When no saddle flanks the center the component is unbounded
/// and the returned record has bounded = false and no outer loop.
inline PiComponent component_pi0(const Nonlinearity& f, int n_samples = 800)
{
    if (std::abs(f(0.0)) > 1e-12 || f.derivative(0.0) <= 1e-8)
        throw NotACenter("component_pi0: requires f(0) = 0 and f'(0) > 0");

    PiComponent comp;
    comp.center = 0.0;
    comp.sigma_in = chain_through(f, 0.0);

    const RootReport roots = scan_roots(f, 1e-4);
    std::optional<double> gamma_l, gamma_r;
    for (const Root& r : roots.roots) {
        if (r.location < -1e-12 && (!gamma_l || r.location > *gamma_l)) gamma_l = r.location;
        if (r.location > 1e-12 && (!gamma_r || r.location < *gamma_r)) gamma_r = r.location;
    }

    if (!gamma_l && !gamma_r) {
        comp.bounded = false;
        comp.p_hat = -std::numeric_limits<double>::infinity();
        comp.q_hat = std::numeric_limits<double>::infinity();
        return comp;
    }

    const double c_l = gamma_l ? f.antiderivative(*gamma_l)
                               : std::numeric_limits<double>::infinity();
    const double c_r = gamma_r ? f.antiderivative(*gamma_r)
                               : std::numeric_limits<double>::infinity();
    const double c = std::min(c_l, c_r);
    const double tol = detail::level_tol(c);

    comp.bounded = true;
    if (gamma_l && gamma_r && std::abs(c_l - c_r) <= tol) {
        // heteroclinic loop between the two flanking saddles
        comp.p_hat = *gamma_l;
        comp.q_hat = *gamma_r;
        comp.lambda_out.kind = OrbitKind::heteroclinic;
        comp.lambda_out.level = 0.5 * (c_l + c_r);
        comp.lambda_out.limit_equilibria = {*gamma_l, *gamma_r};
    } else if (c_l < c_r) {
        // homoclinic loop to the left saddle, nose right of the center
        const double bound = detail::tail_bound(f, c);
        const auto nose = detail::march_to_level(f, 0.0, c, +1, bound);
        if (!nose) throw NoReturnPoint("component_pi0: homoclinic nose not found");
        comp.p_hat = *gamma_l;
        comp.q_hat = *nose;
        comp.lambda_out.kind = OrbitKind::homoclinic;
        comp.lambda_out.level = c;
        comp.lambda_out.limit_equilibria = {*gamma_l};
    } else {
        const double bound = detail::tail_bound(f, c);
        const auto nose = detail::march_to_level(f, 0.0, c, -1, bound);
        if (!nose) throw NoReturnPoint("component_pi0: homoclinic nose not found");
        comp.p_hat = *nose;
        comp.q_hat = *gamma_r;
        comp.lambda_out.kind = OrbitKind::homoclinic;
        comp.lambda_out.level = c;
        comp.lambda_out.limit_equilibria = {*gamma_r};
    }
    comp.lambda_out.u_min = comp.p_hat;
    comp.lambda_out.u_max = comp.q_hat;
    comp.lambda_out.boundary = detail::close_boundary(detail::sample_upper_branch(
        f, comp.lambda_out.level, comp.p_hat, comp.q_hat, n_samples));
    return comp;
}

/// Euclidean distance from a point to the sampled loop boundary.
inline double distance_to_loop(const Loop& loop, PhasePoint p)
{
    double best = std::numeric_limits<double>::infinity();
    const auto& b = loop.boundary;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        const double ax = b[i].u, ay = b[i].v;
        const double bx = b[i + 1].u, by = b[i + 1].v;
        const double dx = bx - ax, dy = by - ay;
        const double len2 = dx * dx + dy * dy;
        double t = 0.0;
        if (len2 > 0.0) t = std::clamp(((p.u - ax) * dx + (p.v - ay) * dy) / len2, 0.0, 1.0);
        const double px = ax + t * dx - p.u;
        const double py = ay + t * dy - p.v;
        best = std::min(best, std::sqrt(px * px + py * py));
    }
    return best;
}

enum class PointLocation { inside, outside, on_boundary };

/// Even-odd ray-crossing test against the sampled Jordan boundary, with an
/// on_boundary band of width tol.
inline PointLocation interior_contains(const Loop& loop, PhasePoint p, double tol)
{
    if (distance_to_loop(loop, p) < tol) return PointLocation::on_boundary;
    bool inside = false;
    const auto& b = loop.boundary;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        const double yi = b[i].v, yj = b[i + 1].v;
        if ((yi > p.v) == (yj > p.v)) continue;
        const double x_cross = b[i].u + (b[i + 1].u - b[i].u) * (p.v - yi) / (yj - yi);
        if (p.u < x_cross) inside = !inside;
    }
    return inside ? PointLocation::inside : PointLocation::outside;
}

} // namespace phaseline

#endif
