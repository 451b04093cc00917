#include "powdual/slicer.hpp"

#include <cmath>

#include "powdual/quadrature.hpp"
#include "powdual/specfun.hpp"

namespace powdual::slicer {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double potential_minus_energy(const RadialSystem& sys, double r_hat) {
    double u = -sys.energy;
    for (const auto& t : sys.terms) u += t.coupling * std::pow(r_hat, t.exponent);
    return u;
}

}  // namespace

void SlicedPath::validate() const {
    if (radii.size() != times.size() + 1 || times.empty())
        throw DomainError("SlicedPath: needs N+1 radii for N time increments");
    for (double r : radii)
        if (!(r > 0.0)) throw DomainError("SlicedPath: radii must be positive");
    for (double t : times)
        if (!(t > 0.0)) throw DomainError("SlicedPath: time increments must be positive");
}

double short_action(double r_j, double r_jm1, double tau, double L, const RadialSystem& sys) {
    if (!(r_j > 0.0) || !(r_jm1 > 0.0) || !(tau > 0.0))
        throw DomainError("short_action: requires positive radii and time step");
    const double dr = r_j - r_jm1;
    const double rhat2 = r_j * r_jm1;
    const double m = sys.mass, hb = sys.hbar;
    return 0.5 * m * dr * dr / tau -
           (L * L - 0.25) * hb * hb * tau / (2.0 * m * rhat2) -
           potential_minus_energy(sys, std::sqrt(rhat2)) * tau;
}

namespace {

double transformed_action_impl(double rho_j, double rho_jm1, double sigma,
                               const DualityMap& map, const RadialSystem& sys_a,
                               bool quantum_corrected) {
    if (!(rho_j > 0.0) || !(rho_jm1 > 0.0) || !(sigma > 0.0))
        throw DomainError("transformed_short_action: requires positive inputs");
    map.validate();
    const double rho_hat = std::sqrt(rho_j * rho_jm1);
    const double jac = short_time_jacobian(map, rho_hat);  // (f'(rho_hat))^2
    const double f_hat = map_radius(map, rho_hat);         // geometric means commute with powers
    const double u_b = jac * potential_minus_energy(sys_a, f_hat);

    const double L = sys_a.angular_momentum;
    const double eta2 = map.eta * map.eta;
    const double cf = quantum_corrected ? (eta2 * L * L - 0.25) : eta2 * (L * L - 0.25);

    const double drho = rho_j - rho_jm1;
    const double m = sys_a.mass, hb = sys_a.hbar;
    return 0.5 * m * drho * drho / sigma -
           cf * hb * hb * sigma / (2.0 * m * rho_hat * rho_hat) - u_b * sigma;
}

}  // namespace

double transformed_short_action(double rho_j, double rho_jm1, double sigma,
                                const DualityMap& map, const RadialSystem& sys_a) {
    return transformed_action_impl(rho_j, rho_jm1, sigma, map, sys_a, true);
}

double transformed_short_action_classical(double rho_j, double rho_jm1, double sigma,
                                          const DualityMap& map, const RadialSystem& sys_a) {
    return transformed_action_impl(rho_j, rho_jm1, sigma, map, sys_a, false);
}

double action_duality_residual(const SlicedPath& path, const DualityMap& map,
                               const RadialSystem& sys_a) {
    path.validate();
    map.validate();
    const double L = sys_a.angular_momentum;
    double total = 0.0;
    for (int j = 0; j < path.slices(); ++j) {
        const double r0 = path.radii[j], r1 = path.radii[j + 1];
        const double tau = path.times[j];
        const double rho0 = inverse_radius(map, r0);
        const double rho1 = inverse_radius(map, r1);
        const double rho_hat = std::sqrt(rho0 * rho1);
        const double sigma = tau / short_time_jacobian(map, rho_hat);
        total += std::fabs(short_action(r1, r0, tau, L, sys_a) -
                           transformed_short_action_classical(rho1, rho0, sigma, map, sys_a));
    }
    return total;
}

double closed_promotor_osc(double rho_outer, double rho_inner, int ell, double sigma,
                           double omega, double E_b, double m, double hbar) {
    if (!(rho_outer > 0.0) || !(rho_inner > 0.0))
        throw DomainError("closed_promotor_osc: requires positive radii");
    if (!(sigma > 0.0)) throw DomainError("closed_promotor_osc: requires sigma > 0");
    if (ell < 0) throw DomainError("closed_promotor_osc: requires ell >= 0");
    if (omega < 0.0) throw DomainError("closed_promotor_osc: requires omega >= 0");

    const double dsq = (rho_outer - rho_inner) * (rho_outer - rho_inner);
    const double ssq = rho_outer * rho_outer + rho_inner * rho_inner;
    const double c = m / hbar;
    const double nu = ell + 0.5;

    // assembled fully in log space so extreme sigma cannot produce 0 * inf
    double log_pref, log_arg, expo;
    if (omega == 0.0) {
        log_pref = std::log(c * std::sqrt(rho_inner * rho_outer) / sigma);
        log_arg = std::log(c * rho_inner * rho_outer / sigma);
        expo = -0.5 * c * dsq / sigma;
    } else {
        const double q = omega * sigma;
        // log sinh q, safe for any q
        const double log_sh = (q > 36.0) ? q - std::log(2.0)
                                         : std::log(std::sinh(q));
        const double inv_sh = (q > 36.0) ? 2.0 * std::exp(-q) : 1.0 / std::sinh(q);
        log_pref = std::log(c * omega * std::sqrt(rho_inner * rho_outer)) - log_sh;
        log_arg = std::log(c * omega * rho_inner * rho_outer) - log_sh;
        expo = -0.5 * c * omega * (dsq * inv_sh + ssq * std::tanh(0.5 * q));
    }
    expo += E_b * sigma / hbar;

    // expo already folds the +arg of the scaled Bessel in (the stable
    // combination -A + arg), so the scaled value is the right factor here
    double log_i;
    if (log_arg < -25.0) {
        log_i = nu * (log_arg - std::log(2.0)) - specfun::log_gamma(nu + 1.0);
    } else {
        log_i = std::log(specfun::bessel_i_scaled(nu, std::exp(log_arg)));
    }
    const double total = log_pref + expo + log_i;
    if (total < -745.0) return 0.0;
    if (total > 709.0) throw OverflowError("closed_promotor_osc: result exceeds double range");
    return std::exp(total);
}

Eigen::MatrixXd slice_kernel(const RadialGrid& grid, double sigma1, double L,
                             const RadialSystem& sys) {
    if (!(sigma1 > 0.0)) throw DomainError("slice_kernel: requires sigma1 > 0");
    const int n = grid.size();
    const double m = sys.mass, hb = sys.hbar;
    const double norm = std::sqrt(m / (2.0 * kPi * hb * sigma1));
    const double cf = (L * L - 0.25) * hb * hb / (2.0 * m);

    Eigen::MatrixXd K(n, n);
    for (int i = 0; i < n; ++i) {
        const double x = grid.points[i];
        for (int j = 0; j <= i; ++j) {
            const double y = grid.points[j];
            const double rhat2 = x * y;
            const double w_e = 0.5 * m * (x - y) * (x - y) / sigma1 +
                               cf * sigma1 / rhat2 +
                               potential_minus_energy(sys, std::sqrt(rhat2)) * sigma1;
            const double v = (w_e / hb > 745.0) ? 0.0 : norm * std::exp(-w_e / hb);
            K(i, j) = v;
            K(j, i) = v;  // geometric-mean midpoint makes the kernel symmetric
        }
    }
    return K;
}

Eigen::VectorXd trapezoid_weights(const RadialGrid& grid) {
    const int n = grid.size();
    Eigen::VectorXd w(n);
    w(0) = 0.5 * (grid.points[1] - grid.points[0]);
    for (int i = 1; i < n - 1; ++i) w(i) = 0.5 * (grid.points[i + 1] - grid.points[i - 1]);
    w(n - 1) = 0.5 * (grid.points[n - 1] - grid.points[n - 2]);
    return w;
}

Eigen::MatrixXd sliced_promotor_compose(const RadialGrid& grid, int N, double sigma_total,
                                        int ell, const RadialSystem& sys) {
    if (N < 2) throw DomainError("sliced_promotor_compose: requires N >= 2");
    if (!(sigma_total > 0.0)) throw DomainError("sliced_promotor_compose: requires sigma_total > 0");
    const double L = quasi_L(ell, sys.dimension);
    const double sigma1 = sigma_total / N;

    const Eigen::MatrixXd K = slice_kernel(grid, sigma1, L, sys);
    const Eigen::VectorXd w = trapezoid_weights(grid);

    // single-slice mass check: rows a few kernel widths away from both grid
    // ends must not see the boundary columns (rows inside the boundary layer
    // legitimately exchange mass with the edge and are not probed)
    const int n = grid.size();
    const double width = std::sqrt(sys.hbar * sigma1 / sys.mass);
    const double margin = 6.5 * width;
    int probed = 0;
    double worst = 0.0;
    for (int i = 0; i < n; i += std::max(1, n / 96)) {
        const double x = grid.points[i];
        if (x - grid.r_min < margin || grid.r_max - x < margin) continue;
        ++probed;
        double mass = 0.0;
        for (int j = 0; j < n; ++j) mass += w(j) * K(i, j);
        if (mass <= 0.0) continue;
        const double edge = w(0) * K(i, 0) + w(n - 1) * K(i, n - 1);
        worst = std::max(worst, edge / mass);
    }
    if (probed == 0 || worst > 1e-8)
        throw ConvergenceError("sliced_promotor_compose: grid bounds truncate kernel mass");

    // P = K (W K)^{N-1} by binary exponentiation; fixed-size products keep the
    // summation order deterministic
    Eigen::MatrixXd base = K * w.asDiagonal();
    Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(n, n);
    int p = N - 1;
    while (p > 0) {
        if (p & 1) acc = acc * base;
        if (p >>= 1) base = base * base;
    }
    return acc * K;
}

GaussMomentReport gauss_moment_check(double alpha, double beta, double gamma, double delta,
                                     double eps) {
    if (!(alpha > 0.0)) throw DomainError("gauss_moment_check: requires alpha > 0");
    if (!(eps > 0.0)) throw DomainError("gauss_moment_check: requires eps > 0");

    const double X = 12.0 * std::sqrt(eps / alpha);
    const double Xg = (gamma != 0.0) ? std::min(X, 0.5 * alpha / std::fabs(gamma)) : X;
    const double Xd = (delta > 0.0) ? std::min(X, std::sqrt(0.5 * alpha / delta)) : X;
    const double base = std::sqrt(kPi * eps / alpha);

    auto integrate_even = [&](auto&& f, double x_max) {
        return 2.0 * quadrature::tanh_sinh(f, 0.0, x_max, 1e-13);
    };

    const double a_eps = alpha / eps;
    const double l1 =
        integrate_even([&](double x) { return std::exp(-a_eps * x * x + beta * x * x); }, X);
    const double r1 = base * std::exp(0.5 * beta * eps / alpha);

    // the cubic integrand is not even; integrate both half-lines
    const double g_eps = gamma / eps;
    const double l2 = quadrature::tanh_sinh(
                          [&](double x) { return std::exp(-a_eps * x * x + g_eps * x * x * x); },
                          0.0, Xg, 1e-13) +
                      quadrature::tanh_sinh(
                          [&](double x) { return std::exp(-a_eps * x * x - g_eps * x * x * x); },
                          0.0, Xg, 1e-13);
    const double r2 = base;

    const double d_eps = delta / eps;
    const double l3 = integrate_even(
        [&](double x) { return std::exp(-a_eps * x * x + d_eps * x * x * x * x); }, Xd);
    const double r3 = base * std::exp(0.75 * delta * eps / (alpha * alpha));

    return GaussMomentReport{std::fabs(l1 / r1 - 1.0), std::fabs(l2 / r2 - 1.0),
                             std::fabs(l3 / r3 - 1.0)};
}

}  // namespace powdual::slicer
