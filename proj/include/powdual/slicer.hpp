#pragma once

#include <Eigen/Dense>
#include <vector>

#include "powdual/duality.hpp"
#include "powdual/grid.hpp"

namespace powdual::slicer {

// Everything in this module runs in imaginary (Euclidean) time: sliced kernels
// are positive, compositions are contractive, and the promotor integrates to
// the (H - E)^{-1} Green function.

/// A discretized radial path r_0..r_N with positive time increments tau_1..tau_N.
struct SlicedPath {
    std::vector<double> radii;
    std::vector<double> times;

    void validate() const;
    int slices() const { return static_cast<int>(times.size()); }
};

/// Euclidean short-time radial action of one slice,
///   W = m (dr)^2 / (2 tau) + (L^2 - 1/4) hbar^2 tau / (2 m rhat^2) + U(rhat) tau
/// with rhat the geometric mean and U = V - E from the system's terms.
double short_action(double r_j, double r_jm1, double tau, double L, const RadialSystem& sys);

/// Dual-side short-time action in the mapped variables (rho, sigma), with the
/// angular rule L -> eta L, the mapped potential, and the order-hbar^2
/// correction (eta^2 - 1) hbar^2 sigma / (8 m rho_hat^2) absorbed into the
/// centrifugal coefficient (eta^2 L^2 - 1/4).
double transformed_short_action(double rho_j, double rho_jm1, double sigma,
                                const DualityMap& map, const RadialSystem& sys_a);

/// Same, without the hbar^2 correction: centrifugal coefficient eta^2 (L^2 - 1/4).
/// This is the exact classical pullback of short_action.
double transformed_short_action_classical(double rho_j, double rho_jm1, double sigma,
                                          const DualityMap& map, const RadialSystem& sys_a);

/// Maps the path slice-by-slice (rho_j = (r_j/C)^{1/eta}, sigma_j from the
/// short-time jacobian at the geometric mean) and sums |W_a - W_b| against the
/// classical dual action.  Vanishes under slice refinement of a smooth path;
/// the hbar^2 correction term belongs to the path-integral measure, not to the
/// path-wise identity, so it is excluded here.
double action_duality_residual(const SlicedPath& path, const DualityMap& map,
                               const RadialSystem& sys_a);

/// Closed-form Euclidean radial oscillator promotor
///   (m w sqrt(r' r'')/(hbar sinh w s)) exp(-m w (r'^2 + r''^2)/(2 hbar tanh w s))
///   e^{E_b s/hbar} I_{l+1/2}(m w r' r''/(hbar sinh w s)),
/// with the w -> 0 limit giving the free radial kernel.
double closed_promotor_osc(double rho_outer, double rho_inner, int ell, double sigma,
                           double omega, double E_b, double m, double hbar);

/// Single-slice kernel matrix K_xy = sqrt(m/(2 pi hbar sigma1)) exp(-W(x,y)/hbar)
/// on the grid (no quadrature weights applied).
Eigen::MatrixXd slice_kernel(const RadialGrid& grid, double sigma1, double L,
                             const RadialSystem& sys);

/// Trapezoid weights of the grid.
Eigen::VectorXd trapezoid_weights(const RadialGrid& grid);

/// N-fold Kolmogorov-Chapman composition of the short-time kernel at
/// sigma1 = sigma_total/N; entry (i, j) approximates the promotor from
/// grid point j to grid point i over sigma_total.  Throws ConvergenceError
/// when the grid cannot hold the single-slice kernel: rows more than a few
/// kernel widths from both ends must keep their boundary-column mass below
/// 1e-8 of the row mass, and at least one such row must exist.
Eigen::MatrixXd sliced_promotor_compose(const RadialGrid& grid, int N, double sigma_total,
                                        int ell, const RadialSystem& sys);

/// |LHS/RHS - 1| for the three Gaussian moment identities
///   <beta x^2>        -> (beta/2 alpha) eps,
///   <(gamma/eps) x^3> -> 0,
///   <(delta/eps) x^4> -> (3 delta/4 alpha^2) eps,
/// each under the weight exp(-alpha x^2/eps), integrated by quadrature over
/// the region where the quadratic term dominates.
struct GaussMomentReport {
    double beta_ratio;
    double gamma_ratio;
    double delta_ratio;
};
GaussMomentReport gauss_moment_check(double alpha, double beta, double gamma, double delta,
                                     double eps);

}  // namespace powdual::slicer
