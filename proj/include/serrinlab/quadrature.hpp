#pragma once

#include <functional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace serrinlab {

/// Adaptive Gauss-Kronrod integration over [a, b], relative tolerance
/// 1e-12 by default. Endpoints are never evaluated (open nodes), which the
/// radial integrands rely on at the pole t = 0.
inline double integrate_1d(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-12) {
    if (a == b) return 0.0;
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 31>::integrate(f, a, b, 12, rel_tol);
}

}  // namespace serrinlab
