#include "powdual/duality.hpp"

#include <cmath>

namespace powdual {

void RadialSystem::validate() const {
    if (dimension < 2) throw DomainError("RadialSystem: dimension must be >= 2");
    if (!(mass > 0.0) || !(hbar > 0.0))
        throw DomainError("RadialSystem: mass and hbar must be positive");
    if (quantum_number) {
        if (*quantum_number < 0) throw DomainError("RadialSystem: ell must be >= 0");
        const double L = *quantum_number + 0.5 * (dimension - 2);
        if (std::fabs(angular_momentum - L) > 1e-14 * std::max(1.0, L))
            throw DomainError("RadialSystem: angular_momentum must equal ell + (D-2)/2");
    } else if (!(angular_momentum > 0.0)) {
        throw DomainError("RadialSystem: classical angular momentum must be positive");
    }
    if (terms.empty()) throw DomainError("RadialSystem: needs at least a primary term");
    if (!std::isfinite(terms.front().exponent))
        throw DomainError("RadialSystem: primary exponent must be finite");
    if (terms.front().exponent == 0.0 || terms.front().exponent == -2.0)
        throw DomainError("RadialSystem: primary exponent must avoid {0, -2}");
}

const PowerTerm& RadialSystem::primary() const {
    if (terms.empty()) throw DomainError("RadialSystem: empty term list");
    return terms.front();
}

void DualityMap::validate() const {
    if (!(C > 0.0)) throw DomainError("DualityMap: C must be positive");
    if (!(eta > 0.0)) throw DomainError("DualityMap: eta must be positive");
    const double tol = 1e-14;
    if (std::fabs((a + 2.0) * (b + 2.0) - 4.0) > 4.0 * tol)
        throw DomainError("DualityMap: (a+2)(b+2) = 4 violated");
    if (std::fabs(eta - 2.0 / (a + 2.0)) > tol * eta)
        throw DomainError("DualityMap: eta = 2/(a+2) violated");
    if (!is_trivial() && std::fabs(eta + b / a) > tol * eta)
        throw DomainError("DualityMap: eta = -b/a violated");
}

double dual_exponent(double a) {
    if (a == 0.0 || a == -2.0) throw DomainError("dual_exponent: a must avoid {0, -2}");
    return -2.0 * a / (a + 2.0);
}

DualityMap make_map(double a, double C) {
    if (a == 0.0 || a == -2.0) throw DomainError("make_map: a must avoid {0, -2}");
    if (!(C > 0.0)) throw DomainError("make_map: C must be positive");
    const double eta = 2.0 / (a + 2.0);
    if (!(eta > 0.0)) throw DomainError("make_map: a < -2 gives eta < 0, outside the r = C rho^eta branch");
    return DualityMap{a, -a * eta, eta, C};
}

DualityMap trivial_map(double C) {
    if (!(C > 0.0)) throw DomainError("trivial_map: C must be positive");
    return DualityMap{0.0, 0.0, 1.0, C};
}

DualityMap invert_map(const DualityMap& map) {
    map.validate();
    return DualityMap{map.b, map.a, 1.0 / map.eta, std::pow(map.C, -1.0 / map.eta)};
}

double map_radius(const DualityMap& map, double rho) {
    if (!(rho > 0.0)) throw DomainError("map_radius: requires rho > 0");
    return map.C * std::pow(rho, map.eta);
}

double inverse_radius(const DualityMap& map, double r) {
    if (!(r > 0.0)) throw DomainError("inverse_radius: requires r > 0");
    return std::pow(r / map.C, 1.0 / map.eta);
}

double short_time_jacobian(const DualityMap& map, double rho_hat) {
    if (!(rho_hat > 0.0)) throw DomainError("short_time_jacobian: requires rho_hat > 0");
    return map.C * map.C * map.eta * map.eta * std::pow(rho_hat, 2.0 * map.eta - 2.0);
}

double quasi_L(int ell, int D) {
    if (ell < 0) throw DomainError("quasi_L: requires ell >= 0");
    if (D < 2) throw DomainError("quasi_L: requires D >= 2");
    return ell + 0.5 * (D - 2);
}

EnergyCoupling swap_energy_coupling(const DualityMap& map, double E_a, double lambda_a) {
    const double eta2 = map.eta * map.eta;
    return EnergyCoupling{-eta2 * std::pow(map.C, map.a + 2.0) * lambda_a,
                          -eta2 * map.C * map.C * E_a};
}

PowerTerm map_secondary(const DualityMap& map, const PowerTerm& term) {
    const double s = 2.0 / (map.a + 2.0);  // equals eta
    return PowerTerm{s * s * std::pow(map.C, term.exponent + 2.0) * term.coupling,
                     2.0 * (term.exponent - map.a) / (map.a + 2.0)};
}

RadialSystem transform_system(const RadialSystem& sys, const DualityMap& map) {
    sys.validate();
    map.validate();
    if (sys.quantum_number)
        throw DomainError("transform_system: quantized systems do not transform; use quasi_L");
    if (std::fabs(sys.primary().exponent - map.a) >
        1e-14 * std::max(1.0, std::fabs(map.a)))
        throw ExponentMismatch("transform_system: primary exponent differs from map.a");

    RadialSystem dual;
    dual.dimension = sys.dimension;
    dual.mass = sys.mass;
    dual.hbar = sys.hbar;
    dual.angular_momentum = map.eta * sys.angular_momentum;

    const auto [E_b, lambda_b] = swap_energy_coupling(map, sys.energy, sys.primary().coupling);
    dual.energy = E_b;
    dual.terms.push_back(PowerTerm{lambda_b, map.b});
    for (std::size_t i = 1; i < sys.terms.size(); ++i)
        dual.terms.push_back(map_secondary(map, sys.terms[i]));
    return dual;
}

}  // namespace powdual
