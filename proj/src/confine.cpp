#include "powdual/confine.hpp"

#include <cmath>

#include "powdual/quadrature.hpp"
#include "powdual/specfun.hpp"

namespace powdual::confine {

void ConfinementSpec::validate() const {
    if (!(a_prime > 0.0) || a_prime > 2.0)
        throw DomainError("ConfinementSpec: a' must lie in (0, 2]; a' = 0 is the Coulomb path");
    if (!(lambda_secondary > 0.0))
        throw DomainError("ConfinementSpec: secondary coupling must be positive");
    if (nu < 0 || ell < 0) throw DomainError("ConfinementSpec: nu, ell must be >= 0");
    if (dimension < 2) throw DomainError("ConfinementSpec: dimension must be >= 2");
    if (!(mass > 0.0) || !(hbar > 0.0) || !(omega > 0.0))
        throw DomainError("ConfinementSpec: mass, hbar, omega must be positive");
}

double admissible_coupling(const ConfinementSpec& spec) {
    spec.validate();
    const double ap = spec.a_prime;
    return -0.25 * (ap + 2.0) *
           std::sqrt(2.0 * spec.lambda_secondary * spec.hbar * spec.hbar / spec.mass) *
           (2.0 * spec.nu + 4.0 * spec.L() / (ap + 2.0) + 1.0);
}

double coupling_bound(const ConfinementSpec& spec) {
    spec.validate();
    return -std::sqrt(spec.hbar * spec.hbar * spec.a_prime * spec.a_prime *
                      spec.lambda_secondary / (8.0 * spec.mass));
}

ConfineMap confine_map(const ConfinementSpec& spec) {
    spec.validate();
    const double ap = spec.a_prime;
    const double m = spec.mass, hb = spec.hbar, w = spec.omega;

    // C makes the mapped secondary coupling equal m omega^2 / 2
    const double C =
        std::pow((2.0 + ap) * (2.0 + ap) * m * w * w / (32.0 * spec.lambda_secondary),
                 1.0 / (2.0 + ap));
    const double lambda_a = admissible_coupling(spec);
    const double E_b =
        w * std::fabs(lambda_a) * std::sqrt(8.0 * m / spec.lambda_secondary) / (2.0 + ap);
    const double alpha = (4.0 / (2.0 + ap)) * std::sqrt(2.0 * m * spec.lambda_secondary) / hb;

    DualityMap map = (ap == 2.0) ? trivial_map(C) : make_map(spec.a(), C);
    return ConfineMap{map, E_b, w, alpha};
}

std::function<double(double)> zero_energy_psi(const ConfinementSpec& spec) {
    const ConfineMap cm = confine_map(spec);
    const double ap = spec.a_prime;
    const double mu = (2.0 * spec.ell + 1.0) / (2.0 + ap);
    const double alpha = cm.alpha;
    const double half_exp = 0.5 * (2.0 + ap);

    // r^{-(1+a'/4)} M_{nu+mu+1/2, mu}(alpha r^{(2+a')/2}) rewritten through the
    // terminating series: r^l alpha^{mu+1/2} e^{-z/2} 1F1(-nu; 2mu+1; z).
    // Identical values, but free of the 0 * inf corner at r -> 0.
    const double a_scale = std::pow(alpha, mu + 0.5);
    const int ell = spec.ell, nu = spec.nu;
    auto raw = [=](double r) {
        const double z = alpha * std::pow(r, half_exp);
        return std::pow(r, ell) * a_scale * std::exp(-0.5 * z) *
               specfun::kummer_m(-static_cast<double>(nu), 2.0 * mu + 1.0, z);
    };

    // normalization by quadrature; the decay envelope e^{-alpha r^{(2+a')/2}/2}
    // fixes the cutoff
    const double r_max = std::pow(90.0 * (1.0 + spec.nu + mu) / alpha, 1.0 / half_exp);
    double norm_sq;
    try {
        norm_sq = quadrature::tanh_sinh([&](double r) { const double v = raw(r); return v * v; },
                                        0.0, r_max, 1e-12);
    } catch (const ConvergenceError&) {
        throw ConvergenceError("zero_energy_psi: normalization quadrature failed");
    }
    if (!(norm_sq > 0.0) || !std::isfinite(norm_sq))
        throw ConvergenceError("zero_energy_psi: normalization quadrature failed");
    const double N = 1.0 / std::sqrt(norm_sq);
    return [=](double r) {
        if (!(r > 0.0)) throw DomainError("zero_energy_psi: requires r > 0");
        return N * raw(r);
    };
}

double effective_potential(const ConfinementSpec& spec, double r) {
    spec.validate();
    if (!(r > 0.0)) throw DomainError("effective_potential: requires r > 0");
    const double L = spec.L();
    const double lam = admissible_coupling(spec);
    return (L * L - 0.25) * spec.hbar * spec.hbar / (2.0 * spec.mass * r * r) -
           std::fabs(lam) * std::pow(r, 0.5 * spec.a_prime - 1.0) +
           spec.lambda_secondary * std::pow(r, spec.a_prime);
}

}  // namespace powdual::confine
