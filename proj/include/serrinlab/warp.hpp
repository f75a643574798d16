#pragma once

// Warped-product ambient I x_f N: the warp function f, its first three
// derivatives, and the model data (dimension n, curvature constant k,
// fiber scalar curvature, fiber volume normalization).

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "serrinlab/expr.hpp"

namespace serrinlab {

inline constexpr double kPi = 3.14159265358979323846;

/// (f, f', f'', f''') at a point.
struct WarpJet {
    double f = 0, f1 = 0, f2 = 0, f3 = 0;
};

struct Interval {
    double lo = 0;
    double hi = std::numeric_limits<double>::infinity();
    bool contains_interior(double t) const { return t > lo && t < hi; }
};

enum class WarpKind { Euclidean, Sphere, Hyperbolic, Exp, Cosh, Custom, Function };

/// Richardson-extrapolated central differences (2 levels) for black-box
/// warps. The base step follows the derivative order: plain h for f',
/// wider steps for f''/f''' where roundoff in the difference quotient
/// would otherwise dominate.
inline WarpJet richardson_jet(const std::function<double(double)>& f, double t) {
    auto extrapolate = [](const std::array<double, 3>& d) {
        const double r1a = (4.0 * d[1] - d[0]) / 3.0;
        const double r1b = (4.0 * d[2] - d[1]) / 3.0;
        return (16.0 * r1b - r1a) / 15.0;
    };
    auto deriv1 = [&](double h) { return (f(t + h) - f(t - h)) / (2 * h); };
    auto deriv2 = [&](double h) { return (f(t + h) - 2 * f(t) + f(t - h)) / (h * h); };
    auto deriv3 = [&](double h) {
        return (f(t + 2 * h) - 2 * f(t + h) + 2 * f(t - h) - f(t - 2 * h)) / (2 * h * h * h);
    };
    const double scale = std::max(1.0, std::abs(t));
    const double h1 = 1e-4 * scale, h2 = 1e-3 * scale, h3 = 8e-3 * scale;
    WarpJet j;
    j.f = f(t);
    j.f1 = extrapolate({deriv1(h1), deriv1(h1 / 2), deriv1(h1 / 4)});
    j.f2 = extrapolate({deriv2(h2), deriv2(h2 / 2), deriv2(h2 / 4)});
    j.f3 = extrapolate({deriv3(h3), deriv3(h3 / 2), deriv3(h3 / 4)});
    return j;
}

/// Warped-product model data. The fiber N enters only through its constant
/// scalar curvature (fiber_scalar); when the ambient Einstein condition is
/// evaluated the fiber is assumed Einstein, which is the only reading the
/// scalar alone supports.
class WarpModel {
public:
    WarpModel() = default;

    static WarpModel space_form(int n, double k) {
        WarpModel m;
        m.n_ = check_dim(n);
        m.k_ = k;
        m.fiber_scalar_ = static_cast<double>((n - 1) * (n - 2));
        m.fiber_volume_ = unit_sphere_area(n);
        if (k > 0) {
            m.kind_ = WarpKind::Sphere;
            m.interval_ = {0.0, kPi / std::sqrt(k)};
        } else if (k < 0) {
            m.kind_ = WarpKind::Hyperbolic;
            m.interval_ = {0.0, std::numeric_limits<double>::infinity()};
        } else {
            m.kind_ = WarpKind::Euclidean;
            m.interval_ = {0.0, std::numeric_limits<double>::infinity()};
        }
        return m;
    }

    /// R x_{e^t} N with Ricci-flat fiber; Einstein with k = -1.
    static WarpModel exp_warp(int n, double k = -1.0, double fiber_scalar = 0.0) {
        WarpModel m;
        m.n_ = check_dim(n);
        m.k_ = k;
        m.kind_ = WarpKind::Exp;
        m.fiber_scalar_ = fiber_scalar;
        m.interval_ = {-std::numeric_limits<double>::infinity(),
                       std::numeric_limits<double>::infinity()};
        return m;
    }

    /// (eps, inf) x_{cosh t} N; Einstein with k = -1 when the fiber has
    /// scalar curvature -(n-1)(n-2).
    static WarpModel cosh_warp(int n, double k = -1.0, double eps = 1e-3) {
        WarpModel m;
        m.n_ = check_dim(n);
        m.k_ = k;
        m.kind_ = WarpKind::Cosh;
        m.fiber_scalar_ = -static_cast<double>((n - 1) * (n - 2));
        m.interval_ = {eps, std::numeric_limits<double>::infinity()};
        return m;
    }

    static WarpModel custom(int n, double k, const std::string& expression,
                            Interval interval = {0.0, std::numeric_limits<double>::infinity()},
                            double fiber_scalar = 0.0) {
        WarpModel m;
        m.n_ = check_dim(n);
        m.k_ = k;
        m.kind_ = WarpKind::Custom;
        m.fiber_scalar_ = fiber_scalar;
        m.interval_ = interval;
        m.expr_f_ = expr::parse(expression);
        m.expr_f1_ = expr::derivative(m.expr_f_);
        m.expr_f2_ = expr::derivative(m.expr_f1_);
        m.expr_f3_ = expr::derivative(m.expr_f2_);
        m.expr_src_ = expression;
        return m;
    }

    /// Black-box warp; jets come from richardson_jet.
    static WarpModel from_function(int n, double k, std::function<double(double)> f,
                                   Interval interval, double fiber_scalar = 0.0) {
        WarpModel m;
        m.n_ = check_dim(n);
        m.k_ = k;
        m.kind_ = WarpKind::Function;
        m.fiber_scalar_ = fiber_scalar;
        m.interval_ = interval;
        m.fn_ = std::move(f);
        return m;
    }

    static double unit_sphere_area(int n) {
        // Area of S^{n-1} in R^n.
        return 2.0 * std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0);
    }

    int n() const { return n_; }
    double k() const { return k_; }
    double fiber_scalar() const { return fiber_scalar_; }
    double fiber_volume() const { return fiber_volume_; }
    WarpModel& set_fiber_volume(double v) { fiber_volume_ = v; return *this; }
    WarpModel& set_fiber_scalar(double v) { fiber_scalar_ = v; return *this; }
    const Interval& interval() const { return interval_; }
    WarpModel& set_interval(Interval iv) { interval_ = iv; return *this; }
    WarpKind kind() const { return kind_; }

    bool is_space_form() const {
        if (fiber_scalar_ != static_cast<double>((n_ - 1) * (n_ - 2))) return false;
        switch (kind_) {
            case WarpKind::Euclidean: return k_ == 0;
            case WarpKind::Sphere:    return k_ > 0;
            case WarpKind::Hyperbolic:return k_ < 0;
            default:                  return false;
        }
    }

    /// Warps with f(0) = 0, f'(0) = 1; geodesic balls are centered there.
    bool has_pole() const {
        switch (kind_) {
            case WarpKind::Euclidean:
            case WarpKind::Sphere:
            case WarpKind::Hyperbolic: return true;
            case WarpKind::Custom:
            case WarpKind::Function: {
                const double d = 1e-6;
                if (interval_.lo != 0.0) return false;
                const double fd = value_unchecked(d);
                return std::abs(fd / d - 1.0) < 1e-4 && std::abs(value_unchecked(d / 2) / (d / 2) - 1.0) < 1e-4;
            }
            default: return false;
        }
    }

    /// f'''(0)/6, the leading correction of a pole warp; feeds the series
    /// start of the ball shooting solver.
    double pole_cubic_coeff() const {
        switch (kind_) {
            case WarpKind::Euclidean: return 0.0;
            case WarpKind::Sphere:
            case WarpKind::Hyperbolic: return -k_ / 6.0;
            default: return jet(1e-3).f3 / 6.0;
        }
    }

    WarpJet jet(double t) const {
        if (!interval_.contains_interior(t))
            throw std::domain_error("warp: t=" + std::to_string(t) + " outside the model interval");
        WarpJet j = jet_unchecked(t);
        if (!(j.f > 0))
            throw std::domain_error("warp: degenerate metric, f(t) <= 0 at t=" + std::to_string(t));
        return j;
    }

    /// f'/f, safe against the pole blow-up only through the caller keeping
    /// t interior.
    double log_derivative(double t) const {
        WarpJet j = jet(t);
        return j.f1 / j.f;
    }

    std::string describe() const {
        switch (kind_) {
            case WarpKind::Euclidean: return "euclidean";
            case WarpKind::Sphere:    return "sphere";
            case WarpKind::Hyperbolic:return "hyperbolic";
            case WarpKind::Exp:       return "exp";
            case WarpKind::Cosh:      return "cosh";
            case WarpKind::Custom:    return "custom:" + expr_src_;
            case WarpKind::Function:  return "function";
        }
        return "?";
    }

private:
    int n_ = 3;
    double k_ = 0;
    WarpKind kind_ = WarpKind::Euclidean;
    double fiber_scalar_ = 2;
    double fiber_volume_ = 1;
    Interval interval_{};
    expr::NodePtr expr_f_, expr_f1_, expr_f2_, expr_f3_;
    std::string expr_src_;
    std::function<double(double)> fn_;

    static int check_dim(int n) {
        if (n < 2) throw std::invalid_argument("warp: dimension must be >= 2");
        return n;
    }

    double value_unchecked(double t) const {
        switch (kind_) {
            case WarpKind::Custom: return expr::eval(expr_f_, t);
            case WarpKind::Function: return fn_(t);
            default: return jet_unchecked(t).f;
        }
    }

    WarpJet jet_unchecked(double t) const {
        WarpJet j;
        switch (kind_) {
            case WarpKind::Euclidean:
                j = {t, 1.0, 0.0, 0.0};
                break;
            case WarpKind::Sphere: {
                const double s = std::sqrt(k_);
                j.f = std::sin(s * t) / s;
                j.f1 = std::cos(s * t);
                j.f2 = -k_ * j.f;
                j.f3 = -k_ * j.f1;
                break;
            }
            case WarpKind::Hyperbolic: {
                const double s = std::sqrt(-k_);
                j.f = std::sinh(s * t) / s;
                j.f1 = std::cosh(s * t);
                j.f2 = -k_ * j.f;
                j.f3 = -k_ * j.f1;
                break;
            }
            case WarpKind::Exp: {
                const double v = std::exp(t);
                j = {v, v, v, v};
                break;
            }
            case WarpKind::Cosh:
                j = {std::cosh(t), std::sinh(t), std::cosh(t), std::sinh(t)};
                break;
            case WarpKind::Custom:
                j.f = expr::eval(expr_f_, t);
                j.f1 = expr::eval(expr_f1_, t);
                j.f2 = expr::eval(expr_f2_, t);
                j.f3 = expr::eval(expr_f3_, t);
                break;
            case WarpKind::Function:
                j = richardson_jet(fn_, t);
                break;
        }
        return j;
    }
};

/// eval_warp per the module contract: closed-form jets for catalog warps,
/// symbolic jets for expression warps, Richardson differences for black-box
/// functions. Throws std::domain_error outside I or where f <= 0.
inline WarpJet eval_warp(const WarpModel& model, double t) { return model.jet(t); }

}  // namespace serrinlab
