#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "serrinlab/radial.hpp"
#include "support/fd_metric.hpp"

using namespace serrinlab;

namespace {

// Exact Euclidean annulus profile on [1,2] (n=2, warp t, k=0):
// u'' + u'/t = -1  =>  u = -t^2/4 + A ln t + B,  u(1) = u(2) = 0.
struct AnnulusExact {
    double A = 0.75 / std::log(2.0);
    double B = 0.25;
    double u(double t) const { return -t * t / 4 + A * std::log(t) + B; }
    double u1(double t) const { return -t / 2 + A / t; }
    double u2(double t) const { return -0.5 - A / (t * t); }
};

}  // namespace

TEST_CASE("closed form Euclidean ball n=3") {
    auto sol = solve_ball_closed_form({WarpModel::space_form(3, 0.0), 1.0});
    CHECK(sol.eval(0.0)[0] == Catch::Approx(1.0 / 6).epsilon(1e-14));
    CHECK(sol.c == Catch::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(sol.pde_residual_max() <= 1e-12);
    CHECK(sol.positive);
    CHECK(std::abs(sol.u.back()) <= 1e-12);
}

TEST_CASE("closed form spherical cap n=2, R=pi/4") {
    auto sol = solve_ball_closed_form({WarpModel::space_form(2, 1.0), kPi / 4});
    CHECK(sol.c == Catch::Approx(0.5).epsilon(1e-13));  // tan(pi/4)/2
    CHECK(sol.pde_residual_max() <= 1e-12);
}

TEST_CASE("closed form hyperbolic ball n=3") {
    auto sol = solve_ball_closed_form({WarpModel::space_form(3, -1.0), 1.0});
    CHECK(sol.c == Catch::Approx(std::tanh(1.0) / 3).epsilon(1e-13));
    CHECK(sol.pde_residual_max() <= 1e-12);
}

TEST_CASE("closed form PDE residual across the space-form sweep") {
    for (int n : {2, 3, 5})
        for (double k : {-1.0, 0.0, 1.0})
            for (double rb : {0.3, 0.9, 1.5}) {
                auto sol = solve_ball_closed_form({WarpModel::space_form(n, k), rb});
                INFO("n=" << n << " k=" << k << " Rb=" << rb);
                CHECK(sol.pde_residual_max() <= 1e-12);
                CHECK(sol.positive);
            }
}

TEST_CASE("closed form positivity guard for k > 0") {
    CHECK_THROWS_AS(solve_ball_closed_form({WarpModel::space_form(3, 1.0), 1.6}),
                    PositivityError);
    BallProblem escape{WarpModel::space_form(3, 1.0), 1.6, true};
    auto sol = solve_ball_closed_form(escape);
    CHECK_FALSE(sol.positive);
}

TEST_CASE("closed form rejects non space forms") {
    CHECK_THROWS_AS(solve_ball_closed_form({WarpModel::exp_warp(3), 1.0}),
                    std::invalid_argument);
}

TEST_CASE("numeric shooting matches closed forms") {
    auto flat = solve_ball_numeric({WarpModel::space_form(3, 0.0), 1.0}, 1e-11);
    CHECK(flat.c == Catch::Approx(1.0 / 3).margin(1e-10));

    auto hyp = solve_ball_numeric({WarpModel::space_form(3, -1.0), 2.0}, 1e-11);
    CHECK(hyp.c == Catch::Approx(std::tanh(2.0) / 3).margin(1e-9));

    // near-hemisphere stress case
    auto cap = solve_ball_numeric({WarpModel::space_form(2, 1.0), kPi / 2 - 0.01}, 1e-11);
    CHECK(cap.positive);
    CHECK(cap.c == Catch::Approx(std::tan(kPi / 2 - 0.01) / 2).epsilon(1e-9));
}

TEST_CASE("numeric vs closed form profiles on the sweep grid") {
    for (int n : {2, 3, 5})
        for (double k : {-1.0, 0.0, 1.0})
            for (double rb : {0.3, 0.9, 1.5}) {
                BallProblem p{WarpModel::space_form(n, k), rb};
                auto cf = solve_ball_closed_form(p);
                auto num = solve_ball_numeric(p, 1e-11);
                double worst = 0, worst1 = 0;
                for (std::size_t i = 0; i < num.grid.size(); ++i) {
                    worst = std::max(worst, std::abs(num.u[i] - cf.eval(num.grid[i])[0]));
                    worst1 = std::max(worst1, std::abs(num.u1[i] - cf.eval(num.grid[i])[1]));
                }
                INFO("n=" << n << " k=" << k << " Rb=" << rb);
                CHECK(worst <= 1e-9);
                CHECK(worst1 <= 1e-9 * std::max(1.0, cf.c));
                CHECK(std::abs(num.u.back()) <= 1e-12);
            }
}

TEST_CASE("numeric solver on a custom warp with a pole") {
    auto m = WarpModel::custom(3, 0.0, "t + 0.1*t^3", {0.0, 10.0}, 2.0);
    auto sol = solve_ball_numeric({m, 1.0}, 1e-11);
    CHECK(sol.positive);
    CHECK(sol.pde_residual_max() <= 1e-12);
    CHECK(std::abs(sol.u.back()) <= 1e-12);
}

TEST_CASE("slab solver reproduces the exact annulus profile") {
    AnnulusExact exact;
    auto sol = solve_slab({WarpModel::space_form(2, 0.0), 1.0, 2.0});
    double worst = 0;
    for (std::size_t i = 0; i < sol.grid.size(); ++i)
        worst = std::max(worst, std::abs(sol.u[i] - exact.u(sol.grid[i])));
    CHECK(worst <= 1e-10);
    CHECK(sol.u1.front() == Catch::Approx(exact.u1(1.0)).margin(1e-10));
    CHECK(sol.u1.back() == Catch::Approx(exact.u1(2.0)).margin(1e-10));
    CHECK(sol.positive);

    // overdetermined condition fails: |u'(1)| and |u'(2)| differ by > 10%
    const double r = std::abs(sol.u1.front()) / std::abs(sol.u1.back());
    CHECK(r > 1.1);
    CHECK_FALSE(serrin_boundary_data(sol).overdet_holds);

    // boundary records: orientation and signed mean curvature
    CHECK(sol.boundary.front().orientation == -1);
    CHECK(sol.boundary.front().H == Catch::Approx(-1.0));
    CHECK(sol.boundary.back().H == Catch::Approx(0.5));
    CHECK(sol.boundary.front().u_nu == Catch::Approx(-exact.u1(1.0)).margin(1e-10));
    CHECK(sol.boundary.back().u_nu == Catch::Approx(exact.u1(2.0)).margin(1e-10));
}

TEST_CASE("slab on the exp warp: solution exists, Serrin condition fails") {
    auto sol = solve_slab({WarpModel::exp_warp(3), 0.0, 1.0});
    CHECK(sol.positive);
    CHECK(sol.pde_residual_max() <= 1e-9);
    auto sd = serrin_boundary_data(sol);
    CHECK_FALSE(sd.overdet_holds);
}

TEST_CASE("thin annulus asymptotics") {
    const double eps = 1e-3;
    auto sol = solve_slab({WarpModel::space_form(2, 0.0), 1.0, 1.0 + eps});
    double umax = 0;
    for (double v : sol.u) umax = std::max(umax, v);
    CHECK(umax < eps);
}

TEST_CASE("resonance detection") {
    // constant warp, u'' + nk u = -1 with nk = pi^2 on [0,1]: sin(pi t)
    // solves the homogeneous problem with both ends zero.
    auto m = WarpModel::custom(2, kPi * kPi / 2.0, "1", {-10.0, 10.0});
    CHECK_THROWS_AS(solve_slab({m, 0.0, 1.0}), SolverError);
}

TEST_CASE("serrin boundary data on space-form balls") {
    auto flat = solve_ball_closed_form({WarpModel::space_form(3, 0.0), 1.0});
    auto d = serrin_boundary_data(flat);
    CHECK(d.overdet_holds);
    CHECK(d.cor23_holds);
    CHECK(d.c == Catch::Approx(1.0 / 3));
    CHECK(d.H_out == Catch::Approx(2.0));

    auto hyp = solve_ball_closed_form({WarpModel::space_form(3, -1.0), 1.0});
    auto dh = serrin_boundary_data(hyp);
    CHECK(dh.cor23_holds);  // (n-1) + nH u_nu = 0 via tanh coth = 1
    CHECK(dh.H_out == Catch::Approx(2.0 / std::tanh(1.0)));
}

TEST_CASE("H = 0 boundary component is skipped with a warning") {
    auto m = WarpModel::custom(2, 0.0, "cosh(t)", {-5.0, 5.0});
    auto sol = solve_slab({m, -1.0, 0.0});
    auto d = serrin_boundary_data(sol);
    CHECK(d.h_zero_warning);
}

TEST_CASE("integrate_radial closed values for the Euclidean unit ball") {
    auto sol = solve_ball_closed_form({WarpModel::space_form(3, 0.0), 1.0});
    // per-unit-fiber 1/45, fiber factor 4 pi
    CHECK(integrate_radial(sol, "u") == Catch::Approx(4 * kPi / 45).epsilon(1e-10));
    CHECK(integrate_radial(sol, "bnd:1") == Catch::Approx(4 * kPi).epsilon(1e-13));
    CHECK(integrate_radial(sol, "bnd:1/H") == Catch::Approx(2 * kPi).epsilon(1e-13));
    CHECK(integrate_volume(sol, VolumeIntegrand::One) ==
          Catch::Approx(4 * kPi / 3).epsilon(1e-12));
}

TEST_CASE("1/H pole error") {
    auto m = WarpModel::custom(2, 0.0, "cosh(t)", {-5.0, 5.0});
    auto sol = solve_slab({m, -1.0, 0.0});
    CHECK_THROWS_AS(integrate_radial(sol, "bnd:1/H"), std::domain_error);
}

TEST_CASE("unknown integrand is rejected") {
    auto sol = solve_ball_closed_form({WarpModel::space_form(3, 0.0), 1.0}, 16);
    CHECK_THROWS_AS(integrate_radial(sol, "u3"), std::invalid_argument);
}

TEST_CASE("divergence theorem closure across solvers and domains") {
    auto closure = [](const RadialSolution& s) {
        const double lhs = integrate_radial(s, "bnd:u_nu");
        const double rhs = -integrate_volume(s, VolumeIntegrand::One)
                           - s.n() * s.k() * integrate_volume(s, VolumeIntegrand::U);
        return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-14});
    };
    for (int n : {2, 3, 5})
        for (double k : {-1.0, 0.0, 1.0}) {
            auto cf = solve_ball_closed_form({WarpModel::space_form(n, k), 0.9});
            CHECK(closure(cf) <= 1e-10);
            auto num = solve_ball_numeric({WarpModel::space_form(n, k), 0.9}, 1e-11);
            CHECK(closure(num) <= 1e-10);
        }
    CHECK(closure(solve_slab({WarpModel::space_form(2, 0.0), 1.0, 2.0})) <= 1e-10);
    CHECK(closure(solve_slab({WarpModel::exp_warp(3), 0.0, 1.0})) <= 1e-10);
    CHECK(closure(solve_slab({WarpModel::cosh_warp(4), 0.5, 1.5})) <= 1e-10);
}

TEST_CASE("traceless Hessian formula against the FD Christoffel Hessian") {
    // 2-D reduction: radial testfn g = cosh t on dt^2 + f^2 dtheta^2 with
    // f = sinh t. Hessian: H_tt = g'', H_thth = -Gamma^t_{thth} g'.
    auto m = WarpModel::space_form(2, -1.0);
    oracle::MetricFn metric = [&m](const Eigen::VectorXd& x) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2, 2);
        const double f = m.jet(x[0]).f;
        g(0, 0) = 1;
        g(1, 1) = f * f;
        return g;
    };
    for (double t : {0.5, 1.0, 1.7}) {
        Eigen::VectorXd x(2);
        x << t, 0.2;
        const auto gam = oracle::christoffel(metric, x, 2e-3);
        const double g1 = std::sinh(t), g2 = std::cosh(t);  // testfn cosh t
        const double h_tt = g2 - gam[0](0, 0) * g1;
        const double h_thth = -gam[0](1, 1) * g1;  // covariant component
        const double f = std::sinh(t);
        const double hess_sq = h_tt * h_tt + (h_thth / (f * f)) * (h_thth / (f * f));
        const double lap = h_tt + h_thth / (f * f);
        const double hess0_fd = hess_sq - lap * lap / 2;
        const WarpJet j = m.jet(t);
        const double formula = 0.5 * (g2 - (j.f1 / j.f) * g1) * (g2 - (j.f1 / j.f) * g1);
        CHECK(hess0_fd == Catch::Approx(formula).margin(1e-7 * std::max(1.0, formula)));
    }
}

TEST_CASE("solution serializes to JSON with grids and boundary records") {
    auto sol = solve_ball_closed_form({WarpModel::space_form(3, 0.0), 1.0}, 16);
    auto j = sol.to_json();
    CHECK(j["n"] == 3);
    CHECK(j["c"] == Catch::Approx(1.0 / 3));
    CHECK(j["grid"].size() == 17);
    CHECK(j["boundary"].size() == 1);
    CHECK(j["boundary"][0]["orientation"] == 1);
}
