#pragma once

#include <functional>
#include <vector>

#include "powdual/duality.hpp"

namespace powdual::green {

// Sign convention used throughout: the radial Green functions here are matrix
// elements of (H - E)^{-1}.  They are positive below the ground state, the
// residue  lim (E_n - E) G  equals u_n(r') u_n(r''), and dG/dr'' drops by
// 2m/hbar^2 across r'' = r'.

/// Value of a one-dimensional radial Green function at (r'', r'; E) with its
/// parameter context.
struct GreenEvaluation {
    double r_outer;
    double r_inner;
    double L;
    double E;
    double value;
    RadialSystem context;
};

/// An energy eigenvalue with quantum numbers and its normalized radial
/// eigenfunction sampler (L^2(dr) of the reduced radial measure).
struct SpectralLine {
    int n = 0;
    int ell = 0;
    double energy = 0.0;
    std::function<double(double)> eigenfunction;
};

/// Radial oscillator Green function, closed Whittaker form.
/// Requires rho_outer > rho_inner > 0 and E away from the poles
/// E_n = hbar omega (2n + L + 1).
double osc_green(double rho_outer, double rho_inner, double L_b, double E_b,
                 double omega, double m, double hbar);

/// Same value by direct quadrature of the Euclidean promotor integral; valid
/// (convergent) for E_b/hbar omega < L_b + 1, i.e. below the first pole.
double osc_green_quadrature(double rho_outer, double rho_inner, double L_b, double E_b,
                            double omega, double m, double hbar,
                            double target_rel_err = 1e-11);

/// E = hbar omega (2n + ell + 3/2).
double osc_spectrum(int n, int ell, double omega, double hbar);

/// Normalized oscillator radial eigenfunction v_{n,ell}, with
/// integral of v^2 d rho equal to 1.
std::function<double(double)> osc_eigenfunction(int n, int ell, double omega, double m,
                                                double hbar);

/// Coulomb (hydrogen-like) radial Green function, closed Whittaker form.
/// Requires E_a < 0 and k = m Z e^2/(kappa hbar^2) away from n + L + 1/2.
double coulomb_green(double r_outer, double r_inner, double L_a, double E_a,
                     double Zesq, double m, double hbar);

/// D = 3 physical radial Green function G_ell = (r' r'')^{-1} * script-G.
double coulomb_green_physical(double r_outer, double r_inner, int ell, double E_a,
                              double Zesq, double m, double hbar);

/// E = -Z^2 e^4 m / (2 hbar^2 (n + ell + 1)^2).
double coulomb_spectrum(int n, int ell, double Zesq, double m, double hbar);

/// Normalized Coulomb radial eigenfunction u_{n,ell} in L^2(dr).
std::function<double(double)> coulomb_eigenfunction(int n, int ell, double Zesq,
                                                    double m, double hbar);

/// System-B Green kernel: evaluates the 1-D radial Green function of the dual
/// partner at (rho_outer, rho_inner) for angular momentum L_b, energy E_b and
/// the mapped potential terms (constant terms already folded into E_b).
using GreenKernelB = std::function<double(double rho_outer, double rho_inner, double L_b,
                                          double E_b, const std::vector<PowerTerm>& terms_b)>;

/// System-A Green evaluator produced by the quasi-dual mapping.
using GreenEvaluator = std::function<double(double r_outer, double r_inner)>;

/// Kernel adapter for the closed-form radial oscillator: expects a single
/// quadratic term (m omega^2/2) rho^2 and reads omega from its coupling.
GreenKernelB osc_kernel(double m, double hbar);

/// Quasi-dual construction of the system-A Green function from a system-B
/// kernel: radii map through rho = (r/C)^{1/eta}, L_b = eta (ell + (D-2)/2),
/// (E, lambda) swap through the map, secondaries follow the secondary rule,
/// and the symmetrization prefactors combine into sqrt(f'(rho') f'(rho'')).
/// Power-zero mapped terms are folded into the B-side energy.
GreenEvaluator dual_green(GreenKernelB green_b, const DualityMap& map, int ell, int D,
                          double E_a, double lambda_a,
                          const std::vector<PowerTerm>& secondaries, double m, double hbar);

/// Residue of a Green function at a simple pole:  lim (E_pole - E) G(E),
/// computed by Richardson extrapolation over E = E_pole (1 +- 2^{-k} delta).
double residue_extract(const std::function<double(double)>& green_of_E, double E_pole,
                       double rel_step = 1e-2, int levels = 5);

/// Convenience overload matching the (evaluator, pole, points) call shape.
double residue_extract(const std::function<double(double, double, double)>& green,
                       double E_pole, double r_outer, double r_inner);

}  // namespace powdual::green
