#pragma once

// Shared integrand vocabulary. Each solution backend (radial profiles,
// P1 finite elements) implements integrate_volume / boundary_points for
// these, which is the whole surface the identity verifiers consume.

namespace serrinlab {

/// Named volume integrands (measure: Riemannian volume per the backend).
enum class VolumeIntegrand {
    One, U, U2, Phi, PhiU, PhiU2, GradU2, U2LapPhi, U2PhiRXR,
    // composites used by the verifiers
    TracelessHessSq,   // |traceless Hessian of u|^2 (radial backend only)
    RicShiftGradU2,    // [Ric - (n-1)k g](grad u, grad u) (radial backend only)
    Main36,            // u^2 [phi(-R + n(n-1)k) - X(R)/2]
    Main310,           // u^2 [lap(phi) + nk phi]
    Cor310Rhs          // 2/(n-1) u [Ric(X, grad u) - (n-1)k <X, grad u>] (radial only)
};

/// One boundary sample: a slice endpoint for radial solutions, an edge
/// midpoint for FEM ones. `weight` carries the full boundary measure so
/// that sum(value * weight) is the boundary integral.
struct BoundaryPoint {
    double t = 0;       // radial coordinate (geodesic radius for FEM)
    int orientation = +1;
    double u_nu = 0;    // outward normal derivative
    double H = 0;       // mean curvature w.r.t. the outward normal (signed)
    double Xnu = 0;     // <X, nu> for the radial conformal field
    double phi = 0;     // conformal factor at the sample
    double weight = 0;
};

}  // namespace serrinlab
