#include <doctest.h>

#include <cmath>
#include <vector>

#include "powdual/green.hpp"
#include "powdual/quadrature.hpp"
#include "powdual/slicer.hpp"
#include "powdual/specfun.hpp"

using namespace powdual;

namespace {

double rel(double a, double b) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300});
}

RadialSystem coulomb_system(double E = -0.3) {
    RadialSystem s;
    s.angular_momentum = 0.5;
    s.energy = E;
    s.terms = {PowerTerm{-1.0, -1.0}};
    return s;
}

RadialSystem osc_system(double omega, double E, double L) {
    RadialSystem s;
    s.angular_momentum = L;
    s.energy = E;
    s.terms = {PowerTerm{0.5 * omega * omega, 2.0}};
    return s;
}

RadialSystem free_system(double E = 0.0) {
    RadialSystem s;
    s.angular_momentum = 0.5;
    s.energy = E;
    return s;
}

}  // namespace

TEST_CASE("short action basics") {
    auto sys = free_system();
    CHECK(slicer::short_action(1.0, 1.0, 0.1, 0.5, sys) == 0.0);
    CHECK(slicer::short_action(1.1, 1.0, 0.1, 0.5, sys) ==
          doctest::Approx(0.05).epsilon(1e-14));
    // energy enters linearly: W(E) - W(0) = E tau
    auto sysE = coulomb_system(-0.37);
    auto sys0 = coulomb_system(0.0);
    const double dW =
        slicer::short_action(1.2, 1.0, 0.1, 1.5, sysE) - slicer::short_action(1.2, 1.0, 0.1, 1.5, sys0);
    CHECK(dW == doctest::Approx(-0.37 * 0.1).epsilon(1e-13));
    CHECK_THROWS_AS(slicer::short_action(0.0, 1.0, 0.1, 0.5, sys), DomainError);
}

TEST_CASE("transformed action reduces to the plain action under the identity map") {
    auto sys = coulomb_system();
    const auto id = trivial_map(1.0);
    for (auto [r1, r0, tau] : {std::tuple{1.2, 1.0, 0.05}, {0.7, 0.72, 0.01}})
        CHECK(rel(slicer::transformed_short_action(r1, r0, tau, id, sys),
                  slicer::short_action(r1, r0, tau, sys.angular_momentum, sys)) < 1e-14);
}

TEST_CASE("the absorbed quantum correction is (eta^2 - 1) hbar^2 sigma/(8 m rho_hat^2)") {
    auto sys = coulomb_system();
    const auto map = make_map(-1.0, 1.0);  // eta = 2
    const double rho1 = 1.1, rho0 = 0.9, sigma = 0.02;
    const double rho_hat2 = rho1 * rho0;
    const double with = slicer::transformed_short_action(rho1, rho0, sigma, map, sys);
    const double classical =
        slicer::transformed_short_action_classical(rho1, rho0, sigma, map, sys);
    CHECK(rel(classical - with, 3.0 * sigma / (8.0 * rho_hat2)) < 1e-12);
}

TEST_CASE("Coulomb action maps onto the oscillator action term by term") {
    const double E_a = -0.3, lambda_a = -1.0, C = 0.85, L_a = 0.5;
    auto sys = coulomb_system(E_a);
    const auto map = make_map(-1.0, C);
    const double L_b = 2.0 * L_a;
    const double E_b = -4.0 * C * lambda_a;
    const double lambda_b = -4.0 * C * C * E_a;

    for (auto [rho1, rho0, sigma] : {std::tuple{1.3, 1.1, 0.02}, {0.6, 0.63, 0.005}}) {
        const double got = slicer::transformed_short_action(rho1, rho0, sigma, map, sys);
        const double rho_hat2 = rho1 * rho0;
        const double by_hand = 0.5 * (rho1 - rho0) * (rho1 - rho0) / sigma -
                               (L_b * L_b - 0.25) * sigma / (2.0 * rho_hat2) -
                               (lambda_b * rho_hat2 - E_b) * sigma;
        CHECK(rel(got, by_hand) < 1e-13);
    }
}

TEST_CASE("action-level duality residual") {
    auto sys = coulomb_system();
    const auto map = make_map(-1.0, 1.0);

    SUBCASE("identity map: exactly zero") {
        slicer::SlicedPath path{{1.0, 1.3, 1.7, 2.0}, {0.1, 0.1, 0.1}};
        CHECK(slicer::action_duality_residual(path, trivial_map(1.0), sys) == 0.0);
    }
    SUBCASE("constant path: classical pullback is exact") {
        for (int N : {8, 32}) {
            slicer::SlicedPath path;
            for (int j = 0; j <= N; ++j) path.radii.push_back(1.4);
            path.times.assign(N, 1.0 / N);
            CHECK(std::fabs(slicer::action_duality_residual(path, map, sys)) < 1e-15);
        }
    }
    SUBCASE("linear path: residual decreases at order >= 1") {
        std::vector<double> resid;
        for (int N : {8, 16, 32, 64}) {
            slicer::SlicedPath path;
            for (int j = 0; j <= N; ++j) path.radii.push_back(1.0 + double(j) / N);
            path.times.assign(N, 1.0 / N);
            resid.push_back(slicer::action_duality_residual(path, map, sys));
        }
        for (std::size_t i = 0; i + 1 < resid.size(); ++i) {
            const double order = std::log2(resid[i] / resid[i + 1]);
            CHECK(order >= 1.0);
        }
    }
}

TEST_CASE("closed promotor: free limit and delta normalization direction") {
    // omega -> 0 reproduces the free radial kernel
    const double free_val = slicer::closed_promotor_osc(2.0, 1.0, 1, 0.3, 0.0, 0.0, 1, 1);
    const double arg = 2.0 * 1.0 / 0.3;
    const double want = (std::sqrt(2.0) / 0.3) *
                        std::exp(-(2.0 - 1.0) * (2.0 - 1.0) / 0.6) *
                        specfun::bessel_i_scaled(1.5, arg);
    CHECK(rel(free_val, want) < 1e-12);
    const double tiny_omega = slicer::closed_promotor_osc(2.0, 1.0, 1, 0.3, 1e-7, 0.0, 1, 1);
    CHECK(rel(free_val, tiny_omega) < 1e-9);
    // sharpening toward the diagonal as sigma -> 0
    CHECK(slicer::closed_promotor_osc(1.0001, 1.0, 0, 1e-4, 1.0, 0.0, 1, 1) >
          10.0 * slicer::closed_promotor_osc(1.03, 1.0, 0, 1e-4, 1.0, 0.0, 1, 1));
}

TEST_CASE("closed promotor composes under the Kolmogorov-Chapman rule") {
    const double got = quadrature::tanh_sinh(
        [](double rho) {
            return slicer::closed_promotor_osc(2.0, rho, 0, 0.3, 1.0, 0.7, 1, 1) *
                   slicer::closed_promotor_osc(rho, 1.0, 0, 0.2, 1.0, 0.7, 1, 1);
        },
        1e-6, 12.0, 1e-9);
    const double want = slicer::closed_promotor_osc(2.0, 1.0, 0, 0.5, 1.0, 0.7, 1, 1);
    CHECK(rel(got, want) < 1e-6);
}

TEST_CASE("time-integrated promotor gives the Green function below the spectrum") {
    const double got = quadrature::exp_sinh_0_inf(
        [](double s) { return slicer::closed_promotor_osc(2.0, 1.0, 0, s, 1.0, 1.0, 1, 1); },
        1e-10);
    const double want = green::osc_green_quadrature(2.0, 1.0, 0.5, 1.0, 1, 1, 1);
    CHECK(rel(got, want) < 1e-7);
}

TEST_CASE("single-slice kernel is delta-normalized as sigma -> 0") {
    // resolving a sqrt(sigma)-wide kernel needs a grid a few times finer
    const auto grid = RadialGrid::make_uniform(1e-3, 8.0, 2400);
    const auto w = slicer::trapezoid_weights(grid);
    auto sys = free_system();
    const auto K = slicer::slice_kernel(grid, 1e-4, 0.5, sys);
    // interior rows: away from both boundaries by a few kernel widths
    for (int i = 0; i < grid.size(); i += 37) {
        const double x = grid.points[i];
        if (x < 0.1 || x > 7.5) continue;
        double sum = 0.0;
        for (int j = 0; j < grid.size(); ++j) sum += K(i, j) * w(j);
        CHECK(std::fabs(sum - 1.0) < 1e-4);
    }
    // with a potential the deficit is O(sigma V)
    auto osc = osc_system(1.0, 0.0, 0.5);
    for (double sigma : {1e-3, 5e-4, 2.5e-4}) {
        const auto Ko = slicer::slice_kernel(grid, sigma, 0.5, osc);
        const int i = grid.size() / 2;
        double sum = 0.0;
        for (int j = 0; j < grid.size(); ++j) sum += Ko(i, j) * w(j);
        const double x = grid.points[i];
        CHECK(std::fabs(sum - 1.0) < 2.0 * sigma * (0.5 * x * x) + 1e-4);
    }
}

TEST_CASE("composition associativity") {
    const auto grid = RadialGrid::make_mixed(1e-3, 8.0, 240);
    auto sys = osc_system(1.0, 0.0, 0.5);
    const auto P3 = slicer::sliced_promotor_compose(grid, 3, 0.3, 0, sys);
    const auto P5 = slicer::sliced_promotor_compose(grid, 5, 0.5, 0, sys);
    const auto P8 = slicer::sliced_promotor_compose(grid, 8, 0.8, 0, sys);
    const auto w = slicer::trapezoid_weights(grid);
    const Eigen::MatrixXd glued = P3 * w.asDiagonal() * P5;
    const double scale = P8.cwiseAbs().maxCoeff();
    CHECK(((glued - P8).cwiseAbs().maxCoeff() / scale) < 1e-10);
}

TEST_CASE("sliced composition approaches the closed promotor") {
    const auto grid = RadialGrid::make_mixed(1e-3, 8.0, 600);
    auto sys = osc_system(1.0, 0.0, 0.5);
    const auto P = slicer::sliced_promotor_compose(grid, 64, 0.5, 0, sys);
    auto nearest = [&](double r) {
        int best = 0;
        for (int i = 1; i < grid.size(); ++i)
            if (std::fabs(grid.points[i] - r) < std::fabs(grid.points[best] - r)) best = i;
        return best;
    };
    const int i = nearest(2.0), j = nearest(1.0);
    const double want =
        slicer::closed_promotor_osc(grid.points[i], grid.points[j], 0, 0.5, 1.0, 0.0, 1, 1);
    CHECK(std::fabs(P(i, j) / want - 1.0) < 0.01);
}

TEST_CASE("compose rejects grids that truncate the kernel mass") {
    const auto grid = RadialGrid::make_uniform(0.5, 3.0, 120);  // far too narrow
    auto sys = free_system();
    CHECK_THROWS_AS(slicer::sliced_promotor_compose(grid, 8, 1.0, 0, sys),
                    ConvergenceError);
}

TEST_CASE("Bessel-form and exponential-form short-time kernels agree for large mass parameter") {
    // (m/(hbar sigma)) sqrt(xy) e^{-m(x^2+y^2)/2 hbar sigma} I_L(m x y/hbar sigma)
    // versus sqrt(m/(2 pi hbar sigma)) e^{-W_E/hbar}, at m rhat^2/(hbar sigma) >= 1e4
    auto sys = free_system();
    for (double L : {0.5, 1.5, 3.5}) {
        for (auto [x, y, sigma] : {std::tuple{1.0, 1.01, 1e-4}, {2.0, 2.002, 4e-4}}) {
            const double z = x * y / sigma;
            REQUIRE(z >= 1e4);
            const double bessel_form = (1.0 / sigma) * std::sqrt(x * y) *
                                       std::exp(-0.5 * (x - y) * (x - y) / sigma) *
                                       specfun::bessel_i_scaled(L, z);
            const double w_e = 0.5 * (x - y) * (x - y) / sigma +
                               (L * L - 0.25) * sigma / (2.0 * x * y);
            const double exp_form = std::sqrt(1.0 / (2.0 * M_PI * sigma)) * std::exp(-w_e);
            CHECK(rel(bessel_form, exp_form) < 1e-6);
        }
    }
}

TEST_CASE("gauss moment ratios") {
    const auto rep = slicer::gauss_moment_check(1.0, 1.0, 1.0, 1.0, 0.01);
    CHECK(rep.beta_ratio <= 1e-3);

    // orders from the ratio sequence over eps = 0.04, 0.02, 0.01
    std::vector<slicer::GaussMomentReport> reps;
    for (double eps : {0.04, 0.02, 0.01})
        reps.push_back(slicer::gauss_moment_check(1.0, 1.0, 1.0, 1.0, eps));
    const double beta_order = 0.5 * std::log2(reps[0].beta_ratio / reps[2].beta_ratio);
    const double gamma_order = 0.5 * std::log2(reps[0].gamma_ratio / reps[2].gamma_ratio);
    const double delta_order = 0.5 * std::log2(reps[0].delta_ratio / reps[2].delta_ratio);
    CHECK(beta_order > 1.9);
    CHECK(delta_order > 1.9);
    // the odd cubic term cancels; what survives is the even O(eps) cross term
    // with coefficient 15 gamma^2/(16 alpha^3)
    CHECK(gamma_order > 0.8);
    CHECK(gamma_order < 1.3);
    CHECK(rel(reps[2].gamma_ratio, 15.0 / 16.0 * 0.01) < 0.25);
}

TEST_CASE("grid and path validation") {
    CHECK_THROWS_AS(RadialGrid::make_uniform(0.0, 1.0, 100), DomainError);
    CHECK_THROWS_AS(RadialGrid::make_uniform(0.1, 1.0, 8), DomainError);
    CHECK_THROWS_AS(RadialGrid::make_mixed(0.5, 0.8, 100, 2.0), DomainError);
    const auto g = RadialGrid::make_geometric(1e-4, 10.0, 64);
    for (int i = 1; i < g.size(); ++i) CHECK(g.points[i] > g.points[i - 1]);
    slicer::SlicedPath bad{{1.0, 2.0}, {0.1, 0.1}};
    CHECK_THROWS_AS(bad.validate(), DomainError);
}
