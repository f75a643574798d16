#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "serrinlab/geometry.hpp"
#include "serrinlab/warp.hpp"
#include "support/fd_metric.hpp"

using namespace serrinlab;

namespace {

std::vector<WarpModel> catalog_models() {
    return {WarpModel::space_form(3, 0.0), WarpModel::space_form(3, 1.0),
            WarpModel::space_form(3, -1.0), WarpModel::exp_warp(4),
            WarpModel::cosh_warp(4)};
}

double sample_in(const WarpModel& m, double x01) {
    // map [0,1) into a bounded window of the model interval
    double lo = std::max(m.interval().lo, -1.0) + 0.05;
    double hi = std::min(m.interval().hi, 2.5) - 0.05;
    return lo + (hi - lo) * x01;
}

}  // namespace

TEST_CASE("eval_warp catalog closed forms") {
    auto euclid = WarpModel::space_form(3, 0.0);
    auto j = eval_warp(euclid, 2.0);
    CHECK(j.f == 2.0);
    CHECK(j.f1 == 1.0);
    CHECK(j.f2 == 0.0);
    CHECK(j.f3 == 0.0);

    auto sphere = WarpModel::space_form(3, 1.0);
    auto js = eval_warp(sphere, kPi / 4);
    const double r2 = std::sqrt(2.0) / 2;
    CHECK(js.f == Catch::Approx(r2).epsilon(1e-14));
    CHECK(js.f1 == Catch::Approx(r2).epsilon(1e-14));
    CHECK(js.f2 == Catch::Approx(-r2).epsilon(1e-14));
    CHECK(js.f3 == Catch::Approx(-r2).epsilon(1e-14));

    auto cosh_m = WarpModel::cosh_warp(4);
    auto jc = eval_warp(cosh_m, 1.0);
    CHECK(jc.f == Catch::Approx(std::cosh(1.0)).epsilon(1e-15));
    CHECK(jc.f1 == Catch::Approx(std::sinh(1.0)).epsilon(1e-15));
    CHECK(jc.f2 == Catch::Approx(std::cosh(1.0)).epsilon(1e-15));
    CHECK(jc.f3 == Catch::Approx(std::sinh(1.0)).epsilon(1e-15));
}

TEST_CASE("eval_warp domain errors") {
    auto sphere = WarpModel::space_form(3, 1.0);
    CHECK_THROWS_AS(eval_warp(sphere, -0.5), std::domain_error);
    CHECK_THROWS_AS(eval_warp(sphere, 4.0), std::domain_error);  // outside (0, pi)
    auto bad = WarpModel::custom(3, 0.0, "t - 2", {0.0, 10.0});
    CHECK_THROWS_AS(eval_warp(bad, 1.0), std::domain_error);  // f <= 0
}

TEST_CASE("curvature_sample space-form values against the FD oracle") {
    // n=3 sphere: scalar = n(n-1)k = 6 at any t
    auto sphere = WarpModel::space_form(3, 1.0);
    auto s = curvature_sample(sphere, 0.7);
    CHECK(s.scalar == Catch::Approx(6.0).margin(1e-12));

    oracle::MetricFn metric = [](const Eigen::VectorXd& x) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(3, 3);
        const double f = std::sin(x[0]);
        g(0, 0) = 1;
        g(1, 1) = f * f;
        g(2, 2) = f * f * std::sin(x[1]) * std::sin(x[1]);
        return g;
    };
    Eigen::VectorXd x(3);
    x << 0.7, 1.1, 0.3;
    const Eigen::MatrixXd ric = oracle::ricci(metric, x, 4e-3);
    CHECK(ric(0, 0) == Catch::Approx(s.ric_radial).margin(1e-6));
    CHECK(ric(1, 1) / metric(x)(1, 1) == Catch::Approx(s.ric_fiber).margin(1e-6));
    CHECK(oracle::scalar_curvature(metric, x, 4e-3) == Catch::Approx(6.0).margin(1e-6));
}

TEST_CASE("curvature_sample flat space") {
    auto flat = WarpModel::space_form(3, 0.0);
    auto s = curvature_sample(flat, 1.0);
    CHECK(s.scalar == Catch::Approx(0.0).margin(1e-13));
    CHECK(s.ric_radial == Catch::Approx(0.0).margin(1e-13));
}

TEST_CASE("curvature_sample exp warp n=4 against the FD oracle") {
    auto m = WarpModel::exp_warp(4);
    auto s = curvature_sample(m, 0.3);
    CHECK(s.ric_radial == Catch::Approx(-3.0).margin(1e-12));
    CHECK(s.ric_fiber == Catch::Approx(-3.0).margin(1e-12));
    CHECK(s.scalar == Catch::Approx(-12.0).margin(1e-12));

    oracle::MetricFn metric = [](const Eigen::VectorXd& x) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(4, 4);
        const double f2 = std::exp(2 * x[0]);
        g(0, 0) = 1;
        g(1, 1) = f2;
        g(2, 2) = f2;
        g(3, 3) = f2;
        return g;
    };
    Eigen::VectorXd x(4);
    x << 0.3, 0.4, -0.2, 0.9;
    const Eigen::MatrixXd ric = oracle::ricci(metric, x, 4e-3);
    CHECK(ric(0, 0) == Catch::Approx(-3.0).margin(1e-6));
    CHECK(ric(1, 1) / metric(x)(1, 1) == Catch::Approx(-3.0).margin(1e-6));
    CHECK(oracle::scalar_curvature(metric, x, 4e-3) == Catch::Approx(-12.0).margin(1e-6));
}

TEST_CASE("cosh warp with hyperbolic fiber is Einstein (FD oracle)") {
    // fiber: upper half-space model, scalar curvature -6 for n=4
    oracle::MetricFn metric = [](const Eigen::VectorXd& x) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(4, 4);
        const double f = std::cosh(x[0]);
        const double y = x[2];
        g(0, 0) = 1;
        g(1, 1) = f * f / (y * y);
        g(2, 2) = f * f / (y * y);
        g(3, 3) = f * f / (y * y);
        return g;
    };
    Eigen::VectorXd x(4);
    x << 0.9, 0.3, 1.4, -0.2;
    const Eigen::MatrixXd g0 = metric(x);
    const Eigen::MatrixXd ric = oracle::ricci(metric, x, 4e-3);
    for (int i = 0; i < 4; ++i)
        CHECK(ric(i, i) / g0(i, i) == Catch::Approx(-3.0).margin(2e-5));

    auto m = WarpModel::cosh_warp(4);
    auto s = curvature_sample(m, 0.9);
    CHECK(s.ric_radial == Catch::Approx(-3.0).margin(1e-12));
    CHECK(s.ric_fiber == Catch::Approx(-3.0).margin(1e-12));
}

TEST_CASE("check_einstein catalog") {
    auto exp3 = WarpModel::exp_warp(3);
    CHECK(check_einstein(exp3, linspace(-1.0, 1.0, 50), 1e-10).pass);

    auto cosh4 = WarpModel::cosh_warp(4);
    CHECK(cosh4.fiber_scalar() == -6.0);
    CHECK(check_einstein(cosh4, linspace(0.5, 2.0, 50), 1e-10).pass);

    auto flat = WarpModel::space_form(3, 0.0);
    flat.set_fiber_scalar(2.0);
    auto flat_k1 = WarpModel::space_form(3, 1.0);
    // flat warp but k = 1: build via custom euclidean warp with k=1
    auto mixed = WarpModel::custom(3, 1.0, "t", {0.0, 100.0}, 2.0);
    CHECK_FALSE(check_einstein(mixed, linspace(0.5, 2.0, 20), 1e-10).pass);

    CHECK_THROWS_AS(check_einstein(exp3, {}, 1e-10), std::invalid_argument);
}

TEST_CASE("space form flag and Einstein at nominal k") {
    for (double k : {-1.0, 0.0, 1.0}) {
        for (int n : {2, 3, 5}) {
            auto m = WarpModel::space_form(n, k);
            CHECK(m.is_space_form());
            CHECK(check_einstein(m, linspace(0.2, k > 0 ? 1.4 : 2.0, 40), 1e-10).pass);
        }
    }
    CHECK_FALSE(WarpModel::exp_warp(3).is_space_form());
}

TEST_CASE("slice_mean_curvature") {
    auto flat = WarpModel::space_form(3, 0.0);
    CHECK(slice_mean_curvature(flat, 1.0, +1) == Catch::Approx(2.0));

    auto hyp = WarpModel::space_form(3, -1.0);
    CHECK(slice_mean_curvature(hyp, 1.0, +1) ==
          Catch::Approx(2.0 / std::tanh(1.0)).epsilon(1e-12));

    auto sph2 = WarpModel::space_form(2, 1.0);
    CHECK(slice_mean_curvature(sph2, kPi / 4, +1) == Catch::Approx(1.0).margin(1e-13));

    // cross-check against the FD jet of the warp itself
    auto fd = richardson_jet([](double t) { return std::sinh(t); }, 1.0);
    CHECK(2 * fd.f1 / fd.f == Catch::Approx(2.0 / std::tanh(1.0)).epsilon(1e-9));
}

TEST_CASE("trace consistency and Laplacian relation across the catalog") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (const auto& m : catalog_models()) {
        for (int i = 0; i < 100; ++i) {
            const double t = sample_in(m, unif(rng));
            const auto s = curvature_sample(m, t);
            // trace consistency
            CHECK(s.scalar - (s.ric_radial + (m.n() - 1) * s.ric_fiber) ==
                  Catch::Approx(0.0).margin(1e-10 * std::max(1.0, std::abs(s.scalar))));
            // -(n-1) lap(phi) = phi R + X(R)/2
            const double lap_phi = conformal_factor_laplacian(m, t);
            const double lhs = -(m.n() - 1) * lap_phi;
            const double rhs = s.phi * s.scalar + 0.5 * s.XR;
            CHECK(lhs - rhs == Catch::Approx(0.0).margin(
                1e-8 * std::max({1.0, std::abs(lhs), std::abs(rhs)})));
        }
    }
}

TEST_CASE("closed conformal field property via Christoffel symbols") {
    // In the 2-D reduction dt^2 + f^2 dtheta^2 the field X = f d/dt satisfies
    // nabla_t X = f' d/dt and nabla_theta X = f Gamma^theta_{t theta} d/theta.
    for (const auto& m : catalog_models()) {
        for (double frac : {0.2, 0.5, 0.8}) {
            const double t = sample_in(m, frac);
            const WarpJet j = m.jet(t);
            // symbolic Christoffels of the reduction
            const double gamma_t_thth = -j.f * j.f1;
            const double gamma_th_tth = j.f1 / j.f;
            CHECK(j.f * gamma_th_tth - j.f1 == Catch::Approx(0.0).margin(1e-10 * (1 + std::abs(j.f1))));
            // FD cross-check of both symbols from the metric
            oracle::MetricFn metric = [&m](const Eigen::VectorXd& x) {
                Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2, 2);
                const double f = m.jet(x[0]).f;
                g(0, 0) = 1;
                g(1, 1) = f * f;
                return g;
            };
            Eigen::VectorXd x(2);
            x << t, 0.4;
            const auto gam = oracle::christoffel(metric, x, 2e-3);
            CHECK(gam[0](1, 1) == Catch::Approx(gamma_t_thth).margin(1e-8 * (1 + std::abs(gamma_t_thth))));
            CHECK(gam[1](0, 1) == Catch::Approx(gamma_th_tth).margin(1e-8 * (1 + std::abs(gamma_th_tth))));
        }
    }
}

TEST_CASE("expression parser") {
    auto e = expr::parse("sin(t)*2 + t^2 - 1/ (t+3)");
    const double t = 0.7;
    CHECK(expr::eval(e, t) ==
          Catch::Approx(std::sin(t) * 2 + t * t - 1 / (t + 3)).epsilon(1e-15));
    CHECK(expr::eval(expr::parse("pi"), 0.0) == Catch::Approx(kPi));
    CHECK_THROWS_AS(expr::parse("sin t"), std::invalid_argument);
    CHECK_THROWS_AS(expr::parse("2 +"), std::invalid_argument);
    CHECK_THROWS_AS(expr::parse("foo(t)"), std::invalid_argument);
    CHECK_THROWS_AS(expr::parse("(t"), std::invalid_argument);
}

TEST_CASE("custom warp symbolic jets match catalog closed forms") {
    auto hyp_expr = WarpModel::custom(3, -1.0, "sinh(t)", {0.0, 50.0}, 2.0);
    auto hyp = WarpModel::space_form(3, -1.0);
    for (double t : {0.3, 0.9, 1.7}) {
        const auto a = hyp_expr.jet(t);
        const auto b = hyp.jet(t);
        CHECK(a.f == Catch::Approx(b.f).epsilon(1e-14));
        CHECK(a.f1 == Catch::Approx(b.f1).epsilon(1e-14));
        CHECK(a.f2 == Catch::Approx(b.f2).epsilon(1e-14));
        CHECK(a.f3 == Catch::Approx(b.f3).epsilon(1e-14));
    }
    // power rule with non-integer exponent
    auto p = WarpModel::custom(3, 0.0, "t^2.5", {0.0, 50.0});
    const auto j = p.jet(2.0);
    CHECK(j.f == Catch::Approx(std::pow(2.0, 2.5)).epsilon(1e-14));
    CHECK(j.f1 == Catch::Approx(2.5 * std::pow(2.0, 1.5)).epsilon(1e-14));
    CHECK(j.f2 == Catch::Approx(2.5 * 1.5 * std::pow(2.0, 0.5)).epsilon(1e-14));
    CHECK(j.f3 == Catch::Approx(2.5 * 1.5 * 0.5 * std::pow(2.0, -0.5)).epsilon(1e-13));
}

TEST_CASE("richardson_jet black-box route vs closed forms") {
    auto fd = WarpModel::from_function(3, -1.0, [](double t) { return std::sinh(t); },
                                       {0.0, 50.0}, 2.0);
    auto exact = WarpModel::space_form(3, -1.0);
    for (double t : {0.4, 1.0, 2.0}) {
        const auto a = fd.jet(t);
        const auto b = exact.jet(t);
        CHECK(a.f1 == Catch::Approx(b.f1).epsilon(1e-10));
        CHECK(a.f2 == Catch::Approx(b.f2).epsilon(1e-8));
        CHECK(a.f3 == Catch::Approx(b.f3).epsilon(1e-7));
    }
}

TEST_CASE("cosh warp interval excludes a neighbourhood of the minimum") {
    auto m = WarpModel::cosh_warp(4);
    CHECK(m.interval().lo > 0);
    CHECK_THROWS_AS(m.jet(0.0), std::domain_error);
}

TEST_CASE("pole detection") {
    CHECK(WarpModel::space_form(3, 1.0).has_pole());
    CHECK(WarpModel::custom(3, 0.0, "t + 0.1*t^3", {0.0, 10.0}).has_pole());
    CHECK_FALSE(WarpModel::exp_warp(3).has_pole());
    CHECK_FALSE(WarpModel::cosh_warp(4).has_pole());
    CHECK_FALSE(WarpModel::custom(3, 0.0, "2*t", {0.0, 10.0}).has_pole());
}
