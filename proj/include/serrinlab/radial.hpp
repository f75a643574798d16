#pragma once

// Radial solutions of  u'' + (n-1)(f'/f) u' + nku = -1  on geodesic balls
// (closed form on space forms, series + shooting otherwise) and on slab
// domains {a <= t <= b}, together with the 1-D quadrature that backs every
// volume and boundary integral of the verification suite.
//
// All integrals are per unit fiber volume times model.fiber_volume(); for
// the space-form factories that factor is the area of the unit (n-1)-sphere,
// so ball integrals come out in the familiar total measure.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>
#include <json.hpp>

#include "serrinlab/errors.hpp"
#include "serrinlab/geometry.hpp"
#include "serrinlab/integrands.hpp"
#include "serrinlab/quadrature.hpp"
#include "serrinlab/warp.hpp"

namespace serrinlab {

struct BallProblem {
    WarpModel model;
    double radius = 1.0;
    bool allow_nonpositive = false;

    void validate() const {
        if (!model.has_pole())
            throw std::invalid_argument("ball: warp has no pole (need f(0)=0, f'(0)=1)");
        if (!(radius > 0) || !model.interval().contains_interior(radius))
            throw std::invalid_argument("ball: radius must lie inside the warp interval");
        if (model.k() > 0) {
            const double limit = kPi / (2.0 * std::sqrt(model.k()));
            if (radius >= limit && !allow_nonpositive)
                throw PositivityError("ball: radius >= pi/(2 sqrt(k)); solution not positive "
                                      "(pass allow_nonpositive to compute anyway)");
        }
    }
};

struct SlabProblem {
    WarpModel model;
    double a = 0, b = 1;

    void validate() const {
        if (!(a < b)) throw std::invalid_argument("slab: requires a < b");
        if (!model.interval().contains_interior(a) || !model.interval().contains_interior(b))
            throw std::invalid_argument("slab: [a,b] must lie inside the warp interval");
    }
};

enum class RadialDomain { Ball, Slab };

struct BoundaryRecord {
    double t = 0;
    int orientation = +1;  // nu = orientation * d/dt
    double u_nu = 0;
    double H = 0;          // slice mean curvature w.r.t. nu (signed)
};

namespace detail {

/// Chebyshev-Lobatto points mapped to [lo, hi], ascending.
inline std::vector<double> chebyshev_grid(double lo, double hi, int m) {
    std::vector<double> t(m + 1);
    for (int j = 0; j <= m; ++j)
        t[j] = lo + (hi - lo) * 0.5 * (1.0 - std::cos(kPi * j / m));
    t.front() = lo;
    t.back() = hi;
    return t;
}

/// Barycentric interpolation on the Chebyshev-Lobatto grid; weights are
/// (-1)^j (halved at the ends), which stays stable for any m.
class ChebInterpolant {
public:
    ChebInterpolant() = default;
    explicit ChebInterpolant(std::vector<double> grid) : grid_(std::move(grid)) {}

    double operator()(const std::vector<double>& values, double t) const {
        const std::size_t m = grid_.size() - 1;
        double num = 0, den = 0;
        for (std::size_t j = 0; j <= m; ++j) {
            double d = t - grid_[j];
            if (std::abs(d) < 1e-300) return values[j];
            double w = (j % 2 == 0) ? 1.0 : -1.0;
            if (j == 0 || j == m) w *= 0.5;
            const double q = w / d;
            num += q * values[j];
            den += q;
        }
        return num / den;
    }

private:
    std::vector<double> grid_;
};

}  // namespace detail

/// A 1-D solution profile with derivatives on a Chebyshev grid plus the
/// Serrin boundary data. Closed-form solutions carry an exact evaluator;
/// numeric ones are evaluated by barycentric interpolation of the grid
/// arrays (spectrally accurate for these analytic profiles).
class RadialSolution {
public:
    WarpModel model;
    RadialDomain domain = RadialDomain::Ball;
    double lo = 0, hi = 1;
    std::vector<double> grid, u, u1, u2;
    double c = 0;  // |u'| at the outer boundary
    std::vector<BoundaryRecord> boundary;
    bool positive = true;

    using ExactEval = std::function<std::array<double, 3>(double)>;
    ExactEval exact;  // set for closed-form solutions

    int n() const { return model.n(); }
    double k() const { return model.k(); }

    std::array<double, 3> eval(double t) const {
        if (exact) return exact(t);
        return {interp_(u, t), interp_(u1, t), interp_(u2, t)};
    }

    void finalize() {
        interp_ = detail::ChebInterpolant(grid);
        positive = true;
        for (std::size_t i = 1; i + 1 < grid.size(); ++i)
            if (!(u[i] > 0)) { positive = false; break; }
    }

    /// Max |u'' + (n-1)(f'/f)u' + nku + 1| over interior grid points,
    /// evaluated from the stored triple. At the pole of a ball the radial
    /// Laplacian limit n u''(0) replaces the degenerate formula.
    double pde_residual_max() const {
        const int n_ = n();
        const double k_ = k();
        double worst = 0;
        for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
            const double q = model.jet(grid[i]).f1 / model.jet(grid[i]).f;
            const double r = u2[i] + (n_ - 1) * q * u1[i] + n_ * k_ * u[i] + 1.0;
            worst = std::max(worst, std::abs(r));
        }
        if (domain == RadialDomain::Ball) {
            const double r0 = n_ * u2.front() + n_ * k_ * u.front() + 1.0;
            worst = std::max(worst, std::abs(r0));
        }
        return worst;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["n"] = n();
        j["k"] = k();
        j["warp"] = model.describe();
        j["domain"] = domain == RadialDomain::Ball ? "ball" : "slab";
        j["lo"] = lo;
        j["hi"] = hi;
        j["c"] = c;
        j["positive"] = positive;
        j["grid"] = grid;
        j["u"] = u;
        j["u1"] = u1;
        j["u2"] = u2;
        j["boundary"] = nlohmann::ordered_json::array();
        for (const auto& b : boundary)
            j["boundary"].push_back({{"t", b.t},
                                     {"orientation", b.orientation},
                                     {"u_nu", b.u_nu},
                                     {"H", b.H}});
        return j;
    }

private:
    detail::ChebInterpolant interp_;
};

namespace detail {

using OdeState = std::array<double, 2>;

inline void integrate_segment(const WarpModel& model, bool homogeneous, OdeState& y,
                              double t0, double t1) {
    namespace odeint = boost::numeric::odeint;
    const int n = model.n();
    const double k = model.k();
    auto sys = [&](const OdeState& s, OdeState& dsdt, double t) {
        const WarpJet j = model.jet(t);
        const double q = j.f1 / j.f;
        dsdt[0] = s[1];
        dsdt[1] = -(n - 1) * q * s[1] - n * k * s[0] - (homogeneous ? 0.0 : 1.0);
    };
    auto stepper = odeint::make_controlled(1e-13, 1e-13,
                                           odeint::runge_kutta_fehlberg78<OdeState>());
    odeint::integrate_adaptive(stepper, sys, y, t0, t1, (t1 - t0) * 1e-3);
}

struct PoleSeries {
    double alpha, a2, a4;
    double eval_u(double t) const { return alpha + a2 * t * t + a4 * t * t * t * t; }
    double eval_u1(double t) const { return 2 * a2 * t + 4 * a4 * t * t * t; }
    double eval_u2(double t) const { return 2 * a2 + 12 * a4 * t * t; }
};

inline PoleSeries pole_series(const WarpModel& model, double alpha) {
    const int n = model.n();
    const double k = model.k();
    const double f3 = model.pole_cubic_coeff();
    PoleSeries s;
    s.alpha = alpha;
    s.a2 = -(1.0 + n * k * alpha) / (2.0 * n);
    s.a4 = -s.a2 * (4.0 * (n - 1) * f3 + n * k) / (4.0 * (n + 2));
    return s;
}

/// Shoots from the pole with u(0)=alpha, u'(0)=0 and returns u(radius).
inline double shoot_ball(const WarpModel& model, double radius, double alpha) {
    const double ts = 1e-3 * radius;
    const PoleSeries s = pole_series(model, alpha);
    OdeState y{s.eval_u(ts), s.eval_u1(ts)};
    integrate_segment(model, false, y, ts, radius);
    return y[0];
}

}  // namespace detail

/// Closed-form space-form ball solution; the PDE residual of the stored
/// triple is the transcription check, exercised by the test suite.
inline RadialSolution solve_ball_closed_form(const BallProblem& p, int m = 512) {
    p.validate();
    if (!p.model.is_space_form())
        throw std::invalid_argument("solve_ball_closed_form: model is not a space form");
    const int n = p.model.n();
    const double k = p.model.k();
    const double Rb = p.radius;

    RadialSolution sol;
    sol.model = p.model;
    sol.domain = RadialDomain::Ball;
    sol.lo = 0;
    sol.hi = Rb;

    if (k == 0) {
        sol.exact = [n, Rb](double r) -> std::array<double, 3> {
            return {(Rb * Rb - r * r) / (2.0 * n), -r / static_cast<double>(n), -1.0 / n};
        };
    } else if (k > 0) {
        const double s = std::sqrt(k);
        const double cb = std::cos(s * Rb);
        if (std::abs(cb) < 1e-14)
            throw PositivityError("solve_ball_closed_form: cos(sqrt(k) R) = 0");
        sol.exact = [n, k, s, cb](double r) -> std::array<double, 3> {
            const double denom = n * k * cb;
            return {(std::cos(s * r) - cb) / denom,
                    -s * std::sin(s * r) / denom,
                    -k * std::cos(s * r) / denom};
        };
    } else {
        const double s = std::sqrt(-k);
        const double cb = std::cosh(s * Rb);
        sol.exact = [n, k, s, cb](double r) -> std::array<double, 3> {
            const double denom = n * (-k) * cb;
            return {(cb - std::cosh(s * r)) / denom,
                    -s * std::sinh(s * r) / denom,
                    k * std::cosh(s * r) / denom};
        };
    }

    sol.grid = detail::chebyshev_grid(0, Rb, m);
    sol.u.resize(m + 1);
    sol.u1.resize(m + 1);
    sol.u2.resize(m + 1);
    for (int j = 0; j <= m; ++j) {
        const auto v = sol.exact(sol.grid[j]);
        sol.u[j] = v[0];
        sol.u1[j] = v[1];
        sol.u2[j] = v[2];
    }
    sol.u.back() = 0.0;  // u(Rb) = 0 exactly for every branch

    const double H = slice_mean_curvature(p.model, Rb, +1);
    sol.boundary = {{Rb, +1, sol.u1.back(), H}};
    sol.c = std::abs(sol.u1.back());
    sol.finalize();
    if (p.model.k() > 0 && !sol.positive && !p.allow_nonpositive)
        throw PositivityError("solve_ball_closed_form: solution not positive");
    return sol;
}

/// Series start at the pole plus secant shooting on u(0) = alpha.
/// The ODE is linear, so the secant converges immediately; a vanishing
/// sensitivity of u(R) to alpha signals resonance and raises SolverError.
inline RadialSolution solve_ball_numeric(const BallProblem& p, double tol = 1e-11, int m = 512) {
    p.validate();
    const WarpModel& model = p.model;
    const double Rb = p.radius;
    const int n = model.n();

    double a0 = Rb * Rb / (2.0 * n);
    double a1 = a0 + 0.5 * (1.0 + std::abs(a0));
    double g0 = detail::shoot_ball(model, Rb, a0);
    double g1 = detail::shoot_ball(model, Rb, a1);
    double alpha = a1;
    for (int iter = 0; iter < 60; ++iter) {
        if (std::abs(g1 - g0) <= 1e-14 * (std::abs(g0) + std::abs(g1)) + 1e-300)
            throw SolverError("solve_ball_numeric: shooting is singular (no sign change in the "
                              "bracket; homogeneous solution vanishes at the boundary)");
        alpha = a1 - g1 * (a1 - a0) / (g1 - g0);
        const double g = detail::shoot_ball(model, Rb, alpha);
        a0 = a1; g0 = g1;
        a1 = alpha; g1 = g;
        if (std::abs(g) <= tol * std::max(1.0, std::abs(alpha))) break;
        if (iter == 59)
            throw SolverError("solve_ball_numeric: secant did not converge");
    }

    // Fill the grid (plus midpoints for the self-check) by integrating
    // segment to segment from the series start.
    for (int attempt = 0;; ++attempt) {
        RadialSolution sol;
        sol.model = model;
        sol.domain = RadialDomain::Ball;
        sol.lo = 0;
        sol.hi = Rb;
        sol.grid = detail::chebyshev_grid(0, Rb, m);
        const int np = m + 1;
        sol.u.resize(np);
        sol.u1.resize(np);
        sol.u2.resize(np);

        std::vector<double> mids(m);
        for (int j = 0; j < m; ++j) mids[j] = 0.5 * (sol.grid[j] + sol.grid[j + 1]);
        std::vector<double> mid_u(m);

        const double ts = 1e-3 * Rb;
        const detail::PoleSeries series = detail::pole_series(model, alpha);
        const double k = model.k();
        auto store = [&](int idx, double t, const detail::OdeState& y) {
            sol.u[idx] = y[0];
            sol.u1[idx] = y[1];
            const WarpJet j = model.jet(t);
            sol.u2[idx] = -(n - 1) * (j.f1 / j.f) * y[1] - n * k * y[0] - 1.0;
        };

        detail::OdeState y{series.eval_u(ts), series.eval_u1(ts)};
        double t_cur = ts;
        std::size_t gi = 0, mi = 0;
        // Points below the series start come straight from the series.
        while (gi < sol.grid.size() && sol.grid[gi] < ts) {
            const double t = sol.grid[gi];
            sol.u[gi] = series.eval_u(t);
            sol.u1[gi] = series.eval_u1(t);
            sol.u2[gi] = series.eval_u2(t);
            ++gi;
        }
        while (mi < mids.size() && mids[mi] < ts) {
            mid_u[mi] = series.eval_u(mids[mi]);
            ++mi;
        }
        while (gi < sol.grid.size() || mi < mids.size()) {
            const double tg = gi < sol.grid.size() ? sol.grid[gi]
                                                   : std::numeric_limits<double>::infinity();
            const double tm = mi < mids.size() ? mids[mi]
                                               : std::numeric_limits<double>::infinity();
            const double t_next = std::min(tg, tm);
            if (t_next > t_cur) detail::integrate_segment(model, false, y, t_cur, t_next);
            t_cur = t_next;
            if (tg == t_next) { store(static_cast<int>(gi), t_next, y); ++gi; }
            if (tm == t_next) { mid_u[mi] = y[0]; ++mi; }
        }

        sol.finalize();
        const double H = slice_mean_curvature(model, Rb, +1);
        sol.boundary = {{Rb, +1, sol.u1.back(), H}};
        sol.c = std::abs(sol.u1.back());

        // Interpolation self-check at midpoints; double the grid if it
        // misses the target (analytic profiles pass at the default m).
        double scale = 1.0;
        for (double v : sol.u) scale = std::max(scale, std::abs(v));
        double worst = 0;
        for (int j = 0; j < m; ++j)
            worst = std::max(worst, std::abs(sol.eval(mids[j])[0] - mid_u[j]));
        if (worst <= 1e-11 * scale || attempt >= 2) {
            if (model.k() > 0 && !sol.positive && !p.allow_nonpositive)
                throw PositivityError("solve_ball_numeric: solution not positive");
            return sol;
        }
        m *= 2;
    }
}

/// Two-point problem u(a) = u(b) = 0 by linear shooting. Boundary records
/// carry orientation -1 at t=a and +1 at t=b with signed mean curvature.
inline RadialSolution solve_slab(const SlabProblem& p, double tol = 1e-11, int m = 512) {
    p.validate();
    const WarpModel& model = p.model;
    (void)tol;

    detail::OdeState w{0.0, 0.0};
    detail::integrate_segment(model, false, w, p.a, p.b);
    detail::OdeState z{0.0, 1.0};
    detail::integrate_segment(model, true, z, p.a, p.b);
    if (std::abs(z[0]) <= 1e-10 * (p.b - p.a))
        throw SolverError("solve_slab: resonance (homogeneous solution vanishes at both ends)");
    const double slope = -w[0] / z[0];

    RadialSolution sol;
    sol.model = model;
    sol.domain = RadialDomain::Slab;
    sol.lo = p.a;
    sol.hi = p.b;
    sol.grid = detail::chebyshev_grid(p.a, p.b, m);
    sol.u.assign(m + 1, 0.0);
    sol.u1.assign(m + 1, 0.0);
    sol.u2.assign(m + 1, 0.0);

    const int n = model.n();
    const double k = model.k();
    detail::OdeState y{0.0, slope};
    auto store = [&](int idx, double t) {
        sol.u[idx] = y[0];
        sol.u1[idx] = y[1];
        const WarpJet j = model.jet(t);
        sol.u2[idx] = -(n - 1) * (j.f1 / j.f) * y[1] - n * k * y[0] - 1.0;
    };
    store(0, p.a);
    for (int j = 1; j <= m; ++j) {
        detail::integrate_segment(model, false, y, sol.grid[j - 1], sol.grid[j]);
        store(j, sol.grid[j]);
    }
    sol.u.back() = 0.0;

    sol.boundary = {{p.a, -1, -sol.u1.front(), slice_mean_curvature(model, p.a, -1)},
                    {p.b, +1, sol.u1.back(), slice_mean_curvature(model, p.b, +1)}};
    sol.c = std::abs(sol.u1.back());
    sol.finalize();
    return sol;
}

/// Serrin overdetermined data extracted from a solution.
struct SerrinData {
    double c = 0;               // overdetermined constant candidate, |u_nu| outer
    double H_out = 0;           // outer mean curvature
    bool overdet_holds = false; // all |u_nu| equal to rel 1e-9
    bool cor23_holds = false;   // u_nu = -(n-1)/(nH) on every component with H > 0
    bool h_zero_warning = false;
    double overdet_spread = 0;  // (max-min)/max of |u_nu|
    double cor23_residual = 0;  // max |(n-1) + nH u_nu| / (n-1) over checked components
    int cor23_checked = 0;
};

inline SerrinData serrin_boundary_data(const RadialSolution& s) {
    SerrinData d;
    d.c = s.c;
    d.H_out = s.boundary.back().H;
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (const auto& b : s.boundary) {
        lo = std::min(lo, std::abs(b.u_nu));
        hi = std::max(hi, std::abs(b.u_nu));
    }
    d.overdet_spread = hi > 0 ? (hi - lo) / hi : 0.0;
    d.overdet_holds = d.overdet_spread <= 1e-9;
    const int n = s.n();
    for (const auto& b : s.boundary) {
        if (std::abs(b.H) < 1e-12) {
            d.h_zero_warning = true;
            continue;
        }
        if (b.H > 0) {
            d.cor23_residual = std::max(
                d.cor23_residual, std::abs((n - 1) + n * b.H * b.u_nu) / (n - 1));
            ++d.cor23_checked;
        }
    }
    d.cor23_holds = d.cor23_checked > 0 && d.cor23_residual <= 1e-9;
    return d;
}

// ---------------------------------------------------------------------------
// Integration

inline std::vector<BoundaryPoint> boundary_points(const RadialSolution& s) {
    std::vector<BoundaryPoint> pts;
    pts.reserve(s.boundary.size());
    for (const auto& b : s.boundary) {
        const WarpJet j = s.model.jet(b.t);
        BoundaryPoint p;
        p.t = b.t;
        p.orientation = b.orientation;
        p.u_nu = b.u_nu;
        p.H = b.H;
        p.Xnu = b.orientation * j.f;
        p.phi = j.f1;
        p.weight = std::pow(j.f, s.n() - 1) * s.model.fiber_volume();
        pts.push_back(p);
    }
    return pts;
}

inline double integrate_volume(const RadialSolution& s, VolumeIntegrand which,
                               double rel_tol = 1e-12) {
    const int n = s.n();
    const double k = s.k();
    const WarpModel& model = s.model;
    auto f = [&](double t) -> double {
        const WarpJet j = model.jet(t);
        const double weight = std::pow(j.f, n - 1);
        const auto uv = s.eval(t);
        const double u = uv[0], du = uv[1], ddu = uv[2];
        double val = 0;
        switch (which) {
            case VolumeIntegrand::One:    val = 1.0; break;
            case VolumeIntegrand::U:      val = u; break;
            case VolumeIntegrand::U2:     val = u * u; break;
            case VolumeIntegrand::Phi:    val = j.f1; break;
            case VolumeIntegrand::PhiU:   val = j.f1 * u; break;
            case VolumeIntegrand::PhiU2:  val = j.f1 * u * u; break;
            case VolumeIntegrand::GradU2: val = du * du; break;
            case VolumeIntegrand::U2LapPhi:
                val = u * u * conformal_factor_laplacian(model, t);
                break;
            case VolumeIntegrand::U2PhiRXR: {
                const CurvatureSample cs = curvature_sample(model, t);
                val = u * u * (cs.phi * cs.scalar + 0.5 * cs.XR);
                break;
            }
            case VolumeIntegrand::TracelessHessSq: {
                const double q = j.f1 / j.f;
                const double diff = ddu - q * du;
                val = (n - 1.0) / n * diff * diff;
                break;
            }
            case VolumeIntegrand::RicShiftGradU2: {
                const double ric_radial = -(n - 1) * j.f2 / j.f;
                val = (ric_radial - (n - 1) * k) * du * du;
                break;
            }
            case VolumeIntegrand::Main36: {
                const CurvatureSample cs = curvature_sample(model, t);
                val = u * u * (cs.phi * (-cs.scalar + n * (n - 1.0) * k) - 0.5 * cs.XR);
                break;
            }
            case VolumeIntegrand::Main310:
                val = u * u * (conformal_factor_laplacian(model, t) + n * k * j.f1);
                break;
            case VolumeIntegrand::Cor310Rhs: {
                const double ric_radial = -(n - 1) * j.f2 / j.f;
                const double xu = j.f * du;  // <X, grad u>
                val = 2.0 / (n - 1) * u * (ric_radial * xu - (n - 1) * k * xu);
                break;
            }
        }
        return val * weight;
    };
    return model.fiber_volume() * integrate_1d(f, s.lo, s.hi, rel_tol);
}

/// Sum of expr(p) * p.weight over the boundary records.
template <class F>
double integrate_boundary(const RadialSolution& s, F&& expr) {
    double total = 0;
    for (const auto& p : boundary_points(s)) total += expr(p) * p.weight;
    return total;
}

/// Named catalogs for the CLI / serialization surface.
inline double integrate_radial(const RadialSolution& s, const std::string& name) {
    static const std::map<std::string, VolumeIntegrand> volume{
        {"1", VolumeIntegrand::One},        {"u", VolumeIntegrand::U},
        {"u2", VolumeIntegrand::U2},        {"phi", VolumeIntegrand::Phi},
        {"phi_u", VolumeIntegrand::PhiU},   {"phi_u2", VolumeIntegrand::PhiU2},
        {"grad_u2", VolumeIntegrand::GradU2},
        {"u2_lap_phi", VolumeIntegrand::U2LapPhi},
        {"u2_phi_r_xr", VolumeIntegrand::U2PhiRXR}};
    if (auto it = volume.find(name); it != volume.end()) return integrate_volume(s, it->second);

    auto check_h = [&]() {
        for (const auto& b : s.boundary)
            if (std::abs(b.H) < 1e-12)
                throw std::domain_error("integrate_radial: 1/H with H = 0 on a boundary component");
    };
    if (name == "bnd:1") return integrate_boundary(s, [](const BoundaryPoint&) { return 1.0; });
    if (name == "bnd:1/H") {
        check_h();
        return integrate_boundary(s, [](const BoundaryPoint& p) { return 1.0 / p.H; });
    }
    if (name == "bnd:u_nu") return integrate_boundary(s, [](const BoundaryPoint& p) { return p.u_nu; });
    if (name == "bnd:u_nu2")
        return integrate_boundary(s, [](const BoundaryPoint& p) { return p.u_nu * p.u_nu; });
    if (name == "bnd:X_nu") return integrate_boundary(s, [](const BoundaryPoint& p) { return p.Xnu; });
    if (name == "bnd:phi") return integrate_boundary(s, [](const BoundaryPoint& p) { return p.phi; });
    if (name == "bnd:H_u_nu2")
        return integrate_boundary(s, [](const BoundaryPoint& p) { return p.H * p.u_nu * p.u_nu; });
    throw std::invalid_argument("integrate_radial: unknown integrand '" + name + "'");
}

// Hooks consumed by the generic identity verifiers.

inline bool solution_overdet_holds(const RadialSolution& s) {
    return serrin_boundary_data(s).overdet_holds;
}
inline double solution_c(const RadialSolution& s) { return s.c; }
inline bool solution_has_second_derivatives(const RadialSolution&) { return true; }

namespace detail {

/// Curvature formulas are differences of O(1/f^2) pieces; within ~1% of a
/// pole (f -> 0) their roundoff swamps any physically meaningful deviation.
inline double curvature_sample_floor(const RadialSolution& s) {
    return s.domain == RadialDomain::Ball ? s.lo + 0.01 * (s.hi - s.lo) : s.lo;
}

}  // namespace detail

/// Max |R(t) - n(n-1)k| over the solution interval (constant-scalar test).
inline double scalar_curvature_deviation_max(const RadialSolution& s) {
    const double target = s.n() * (s.n() - 1.0) * s.k();
    const double lo = std::max(detail::curvature_sample_floor(s),
                               s.lo + 1e-6 * (s.hi - s.lo));
    double dev = 0;
    for (double t : linspace(lo, s.hi, 65))
        dev = std::max(dev, std::abs(curvature_sample(s.model, t).scalar - target));
    return dev;
}

/// Max of |u^2 [phi(-R + n(n-1)k) - X(R)/2]| over grid points (the
/// pointwise-vanishing check for Einstein ambients).
inline double main36_integrand_max(const RadialSolution& s) {
    const int n = s.n();
    const double k = s.k();
    const double floor_t = detail::curvature_sample_floor(s);
    double worst = 0;
    for (std::size_t i = 1; i < s.grid.size(); ++i) {
        if (s.grid[i] < floor_t) continue;
        const CurvatureSample cs = curvature_sample(s.model, s.grid[i]);
        const double bracket = cs.phi * (-cs.scalar + n * (n - 1.0) * k) - 0.5 * cs.XR;
        worst = std::max(worst, std::abs(s.u[i] * s.u[i] * bracket));
    }
    return worst;
}

/// Min of (Ricci eigenvalues - (n-1)k) over grid points; the hypothesis
/// Ric >= (n-1)k g checked at sample resolution.
inline double ricci_lower_bound_margin(const RadialSolution& s) {
    const double target = (s.n() - 1.0) * s.k();
    const double floor_t = detail::curvature_sample_floor(s);
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < s.grid.size(); ++i) {
        if (s.grid[i] < floor_t) continue;
        const CurvatureSample cs = curvature_sample(s.model, s.grid[i]);
        margin = std::min({margin, cs.ric_radial - target, cs.ric_fiber - target});
    }
    return margin;
}

}  // namespace serrinlab
