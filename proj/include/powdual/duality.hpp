#pragma once

#include <optional>
#include <vector>

#include "powdual/errors.hpp"

namespace powdual {

/// One coupling-exponent pair lambda * r^a of a central power potential.
struct PowerTerm {
    double coupling = 0.0;
    double exponent = 0.0;
};

/// A radial system: dimension, angular momentum (classical L, optionally tied
/// to an integer quantum number), energy and an ordered list of power terms,
/// the first of which is the primary term.
///
/// Units default to hbar = m = 1; both are explicit so Gaussian-unit
/// couplings (e.g. -Z e^2) remain representable.
struct RadialSystem {
    int dimension = 3;
    double angular_momentum = 0.5;          ///< classical L > 0
    std::optional<int> quantum_number;      ///< ell; when set, L = ell + (D-2)/2
    double energy = 0.0;
    std::vector<PowerTerm> terms;           ///< terms[0] is the primary term
    double mass = 1.0;
    double hbar = 1.0;

    void validate() const;
    const PowerTerm& primary() const;
};

/// The tuple (a, b, eta, C) of the power transformation r = C rho^eta with
/// eta = 2/(a+2) = -b/a and (a+2)(b+2) = 4.  eta is restricted to eta > 0;
/// the (a, b) = (0, 0) identity pair is representable only through
/// trivial_map(), since a = 0 admits no coupling-energy swap.
struct DualityMap {
    double a;
    double b;
    double eta;
    double C;

    void validate() const;
    bool is_trivial() const { return a == 0.0 && b == 0.0; }
};

/// Dual exponent b = -a * eta = 2(-a)/(a+2).
double dual_exponent(double a);

/// Build the map for primary exponent a (a not in {0, -2}) and scale C > 0.
DualityMap make_map(double a, double C);

/// The identity-power map (a = b = 0, eta = 1) with scale C.
DualityMap trivial_map(double C = 1.0);

/// Inverse map: (a', b', eta', C') = (b, a, 1/eta, C^{-1/eta}).
DualityMap invert_map(const DualityMap& map);

/// r = C rho^eta and its inverse.
double map_radius(const DualityMap& map, double rho);
double inverse_radius(const DualityMap& map, double r);

/// Local time-rescaling factor: tau/sigma = C^2 eta^2 rho^{2 eta - 2}.
double short_time_jacobian(const DualityMap& map, double rho_hat);

/// L = ell + (D-2)/2; under quasi-duality both partners reuse the same ell.
double quasi_L(int ell, int D);

/// Energy-coupling swap: E_b = -eta^2 C^{a+2} lambda_a, lambda_b = -eta^2 C^2 E_a.
struct EnergyCoupling {
    double energy;
    double coupling;
};
EnergyCoupling swap_energy_coupling(const DualityMap& map, double E_a, double lambda_a);

/// Secondary-term rule: lambda' -> (2/(a+2))^2 C^{a'+2} lambda', a' -> 2(a'-a)/(a+2).
PowerTerm map_secondary(const DualityMap& map, const PowerTerm& term);

/// Full transformation of a classical-L system; the primary term must match
/// map.a (ExponentMismatch otherwise) and the system must not carry a
/// quantized angular momentum (quantization breaks the L rule; see quasi_L).
RadialSystem transform_system(const RadialSystem& sys, const DualityMap& map);

}  // namespace powdual
