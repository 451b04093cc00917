#pragma once

#include <functional>
#include <vector>

#include "powdual/green.hpp"

namespace powdual::oracle {

/// Reduced radial eigenproblem
///   -(hbar^2/2m) u'' + V_eff(r) u = E u,
/// where V_eff already contains the centrifugal term (L^2 - 1/4) hbar^2/(2 m r^2).
/// L fixes the boundary exponent u ~ r^{L+1/2} at the origin.  r_max <= 0
/// selects the automatic rule: outermost classical turning point plus enough
/// WKB decay lengths to push the truncation error below the eigenvalue target.
struct RadialProblem {
    std::function<double(double)> effective_potential;
    double mass = 1.0;
    double hbar = 1.0;
    double L = 0.5;
    double r_min = 1e-6;
    double r_max = 0.0;
    int n_points = 32000;
    int ell = -1;  ///< optional label copied into SpectralLine

    void validate() const;
};

struct EnergyWindow {
    double lo;
    double hi;
};

/// Bound states inside the window, at most `count` of them, ordered by energy.
/// Bidirectional Numerov shooting on a geometric grid (uniform in ln r, which
/// keeps power-law potentials smooth), node-count bisection to isolate each
/// level, then matching-function refinement to |dE| <= 1e-10 (scaled).
/// Eigenfunctions are normalized to a unit integral of u^2 dr with a positive
/// first lobe.  Throws NoBracketError when the matching function has no sign
/// change where the node count says a level must sit.
std::vector<green::SpectralLine> numerov_eigen(const RadialProblem& problem,
                                               EnergyWindow window, int count);

/// Log-derivative (Wronskian) mismatch of the forward and backward solutions
/// at the outermost classical turning point; zero crossings locate eigenvalues.
double shoot_mismatch(const RadialProblem& problem, double E);

/// Number of eigenvalues below E (node count of the forward sweep).
int count_nodes_below(const RadialProblem& problem, double E);

/// The r_max the automatic rule would pick for states up to E_top (the grid
/// then spans [r_min, r_max] uniformly in ln r with n_points nodes).
double resolve_r_max(const RadialProblem& problem, double E_top);

/// tanh-sinh quadrature of sampler^2 over (r_lo, r_hi).  The default target
/// suits analytic samplers; gridded (interpolated) samplers need a looser one.
double quadrature_norm(const std::function<double(double)>& sampler, double r_lo,
                       double r_hi, double target_rel_err = 1e-11);

}  // namespace powdual::oracle
