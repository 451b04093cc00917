#pragma once

#include <functional>

#include "powdual/duality.hpp"

namespace powdual::confine {

/// A two-term confinement potential
///     lambda_a r^{a'/2 - 1} + lambda_{a'} r^{a'},   0 < a' <= 2,
/// tuned so that the nu-th dual-oscillator level sits at zero energy.
/// omega is a pure gauge of the dual oscillator: every system-A observable
/// (coupling, eigenfunction, effective potential) is independent of it.
struct ConfinementSpec {
    double a_prime;
    double lambda_secondary;
    int nu = 0;
    int ell = 0;
    int dimension = 3;
    double mass = 1.0;
    double hbar = 1.0;
    double omega = 1.0;

    void validate() const;
    double L() const { return ell + 0.5 * (dimension - 2); }
    double a() const { return 0.5 * a_prime - 1.0; }
    double eta() const { return 4.0 / (2.0 + a_prime); }
    double b() const { return 2.0 * (2.0 - a_prime) / (2.0 + a_prime); }
};

/// Primary coupling that places the nu-th dual level at E = 0:
///   lambda_{a,nu} = -((a'+2)/4) sqrt(2 lambda_{a'} hbar^2/m) (2 nu + 4 L/(a'+2) + 1).
double admissible_coupling(const ConfinementSpec& spec);

/// Necessary upper bound  -sqrt(hbar^2 a'^2 lambda_{a'} / 8 m)  on the
/// primary coupling; every admissible coupling lies at or below it.
double coupling_bound(const ConfinementSpec& spec);

/// The duality data fixing the dual oscillator: the radius map with its scale
/// C, the dual energy E_b, the oscillator frequency, and the Whittaker
/// argument scale alpha of the zero-energy eigenfunction.
struct ConfineMap {
    DualityMap map;
    double E_b;
    double omega;
    double alpha;
};
ConfineMap confine_map(const ConfinementSpec& spec);

/// Zero-energy eigenfunction sampler
///   psi(r) = N r^{-(1 + a'/4)} M_{nu + (2l+1)/(2+a') + 1/2, (2l+1)/(2+a')}(alpha r^{(2+a')/2})
/// with N fixed numerically so that the integral of psi^2 dr equals 1.
std::function<double(double)> zero_energy_psi(const ConfinementSpec& spec);

/// Effective potential (L^2 - 1/4) hbar^2/(2 m r^2) - |lambda_{a,nu}| r^{a'/2-1} + lambda_{a'} r^{a'}.
double effective_potential(const ConfinementSpec& spec, double r);

}  // namespace powdual::confine
