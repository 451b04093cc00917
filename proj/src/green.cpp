#include "powdual/green.hpp"

#include <cmath>
#include <string>

#include "powdual/quadrature.hpp"
#include "powdual/specfun.hpp"

namespace powdual::green {

namespace {

void check_ordering(double outer, double inner, const char* who) {
    if (!(inner > 0.0)) throw DomainError(std::string(who) + ": inner radius must be positive");
    if (!(outer > inner)) throw OrderingError(std::string(who) + ": requires outer > inner");
}

void check_units(double m, double hbar, const char* who) {
    if (!(m > 0.0) || !(hbar > 0.0))
        throw DomainError(std::string(who) + ": mass and hbar must be positive");
}

// distance from k to the nearest pole k_n = n + (L+1)/2, n = 0, 1, ...
double pole_distance(double k, double L) {
    const double d = k - 0.5 * (L + 1.0);
    if (d < -0.5) return std::fabs(d);  // below the first pole by more than half a step
    const double n = std::max(0.0, std::round(d));
    return std::fabs(d - n);
}

}  // namespace

double osc_green(double rho_outer, double rho_inner, double L_b, double E_b, double omega,
                 double m, double hbar) {
    check_ordering(rho_outer, rho_inner, "osc_green");
    check_units(m, hbar, "osc_green");
    if (!(L_b > 0.0)) throw DomainError("osc_green: requires L > 0");
    if (!(omega > 0.0)) throw DomainError("osc_green: requires omega > 0");

    const double k = E_b / (2.0 * hbar * omega);
    if (pole_distance(k, L_b) < 1e-12)
        throw PoleError("osc_green: E at a spectral pole hbar omega (2n + L + 1)");

    const auto g = specfun::signed_log_gamma(0.5 * L_b - k + 0.5);
    const double log_ratio = g.log_abs - specfun::log_gamma(L_b + 1.0);
    const double s = m * omega / hbar;
    const double W = specfun::whittaker_w(k, 0.5 * L_b, s * rho_outer * rho_outer);
    const double M = specfun::whittaker_m(k, 0.5 * L_b, s * rho_inner * rho_inner);
    return g.sign * std::exp(log_ratio) * W * M /
           (hbar * omega * std::sqrt(rho_inner * rho_outer));
}

double osc_green_quadrature(double rho_outer, double rho_inner, double L_b, double E_b,
                            double omega, double m, double hbar, double target_rel_err) {
    check_ordering(rho_outer, rho_inner, "osc_green_quadrature");
    check_units(m, hbar, "osc_green_quadrature");
    if (!(L_b > 0.0) || !(omega > 0.0))
        throw DomainError("osc_green_quadrature: requires L > 0 and omega > 0");

    const double nu = E_b / (hbar * omega);
    const double decay = L_b + 1.0 - nu;  // tail falls like e^{-decay q}
    if (!(decay > 0.0))
        throw ConvergenceError("osc_green_quadrature: integral diverges at or above the first pole");

    const double c = m * omega / hbar;
    const double dsq = (rho_outer - rho_inner) * (rho_outer - rho_inner);
    const double ssq = rho_outer * rho_outer + rho_inner * rho_inner;
    auto integrand = [&](double q) {
        const double sh = std::sinh(q);
        // (rho''^2 + rho'^2) cosh q - 2 rho' rho''  ==  (drho)^2 + (rho'^2+rho''^2)(cosh q - 1)
        const double expo = -0.5 * c * (dsq / sh + ssq * std::tanh(0.5 * q)) + nu * q;
        if (expo < -745.0) return 0.0;
        const double x = c * rho_inner * rho_outer / sh;
        return std::exp(expo) * specfun::bessel_i_scaled(L_b, x) / sh;
    };

    const double Q = std::max(4.0, 40.0 / decay);
    const double tol = 0.25 * target_rel_err;
    const double i1 = quadrature::tanh_sinh(integrand, 0.0, 1.0, tol, 1e-280);
    const double i2 = quadrature::tanh_sinh(integrand, 1.0, Q, tol, 1e-280);
    const double tail_bound = integrand(Q) / decay;
    const double value = (m * std::sqrt(rho_inner * rho_outer) / (hbar * hbar)) * (i1 + i2);
    if (std::fabs(tail_bound) > 0.5 * target_rel_err * std::fabs(i1 + i2))
        throw ConvergenceError("osc_green_quadrature: tail bound not met");
    return value;
}

double osc_spectrum(int n, int ell, double omega, double hbar) {
    if (n < 0 || ell < 0) throw DomainError("osc_spectrum: requires n, ell >= 0");
    return hbar * omega * (2.0 * n + ell + 1.5);
}

std::function<double(double)> osc_eigenfunction(int n, int ell, double omega, double m,
                                                double hbar) {
    if (n < 0 || ell < 0) throw DomainError("osc_eigenfunction: requires n, ell >= 0");
    check_units(m, hbar, "osc_eigenfunction");
    const double log_pref = 0.5 * (std::log(2.0) + specfun::log_gamma(n + ell + 1.5) -
                                   specfun::log_gamma(n + 1.0) -
                                   2.0 * specfun::log_gamma(ell + 1.5));
    const double pref = std::exp(log_pref);
    const double s = m * omega / hbar;
    const double k = n + 0.5 * ell + 0.75;
    const double mu = 0.5 * ell + 0.25;
    return [=](double rho) {
        if (!(rho > 0.0)) throw DomainError("osc eigenfunction: requires rho > 0");
        return pref * specfun::whittaker_m(k, mu, s * rho * rho) / std::sqrt(rho);
    };
}

double coulomb_green(double r_outer, double r_inner, double L_a, double E_a, double Zesq,
                     double m, double hbar) {
    check_ordering(r_outer, r_inner, "coulomb_green");
    check_units(m, hbar, "coulomb_green");
    if (!(L_a > 0.0)) throw DomainError("coulomb_green: requires L > 0");
    if (!(E_a < 0.0)) throw DomainError("coulomb_green: requires E < 0");
    if (!(Zesq > 0.0)) throw DomainError("coulomb_green: requires Z e^2 > 0");

    const double kappa = std::sqrt(-2.0 * m * E_a) / hbar;
    const double k = m * Zesq / (kappa * hbar * hbar);
    // poles at k_n = n + L + 1/2
    const double d = k - (L_a + 0.5);
    if (d > -0.5 && std::fabs(d - std::max(0.0, std::round(d))) < 1e-12)
        throw PoleError("coulomb_green: E at a spectral pole");

    const auto g = specfun::signed_log_gamma(L_a - k + 0.5);
    const double log_ratio = g.log_abs - specfun::log_gamma(2.0 * L_a + 1.0);
    const double W = specfun::whittaker_w(k, L_a, 2.0 * kappa * r_outer);
    const double M = specfun::whittaker_m(k, L_a, 2.0 * kappa * r_inner);
    return g.sign * std::exp(log_ratio) * W * M * m / (kappa * hbar * hbar);
}

double coulomb_green_physical(double r_outer, double r_inner, int ell, double E_a,
                              double Zesq, double m, double hbar) {
    if (ell < 0) throw DomainError("coulomb_green_physical: requires ell >= 0");
    return coulomb_green(r_outer, r_inner, ell + 0.5, E_a, Zesq, m, hbar) /
           (r_outer * r_inner);
}

double coulomb_spectrum(int n, int ell, double Zesq, double m, double hbar) {
    if (n < 0 || ell < 0) throw DomainError("coulomb_spectrum: requires n, ell >= 0");
    const double ntil = n + ell + 1.0;
    return -Zesq * Zesq * m / (2.0 * hbar * hbar * ntil * ntil);
}

std::function<double(double)> coulomb_eigenfunction(int n, int ell, double Zesq, double m,
                                                    double hbar) {
    if (n < 0 || ell < 0) throw DomainError("coulomb_eigenfunction: requires n, ell >= 0");
    check_units(m, hbar, "coulomb_eigenfunction");
    const double ntil = n + ell + 1.0;
    const double kappa = m * Zesq / (ntil * hbar * hbar);
    const double log_pref =
        0.5 * (std::log(kappa) + specfun::log_gamma(n + 2.0 * ell + 2.0) -
               specfun::log_gamma(n + 1.0) - std::log(ntil) -
               2.0 * specfun::log_gamma(2.0 * ell + 2.0));
    const double pref = std::exp(log_pref);
    const double k = n + ell + 1.0;
    const double mu = ell + 0.5;
    return [=](double r) {
        if (!(r > 0.0)) throw DomainError("coulomb eigenfunction: requires r > 0");
        return pref * specfun::whittaker_m(k, mu, 2.0 * kappa * r);
    };
}

GreenKernelB osc_kernel(double m, double hbar) {
    check_units(m, hbar, "osc_kernel");
    return [m, hbar](double rho_outer, double rho_inner, double L_b, double E_b,
                     const std::vector<PowerTerm>& terms) {
        double lambda_osc = 0.0;
        bool seen = false;
        for (const auto& t : terms) {
            if (std::fabs(t.exponent - 2.0) < 1e-12) {
                lambda_osc += t.coupling;
                seen = true;
            } else if (t.coupling != 0.0) {
                throw DomainError("osc_kernel: mapped potential has a non-quadratic term");
            }
        }
        if (!seen || !(lambda_osc > 0.0))
            throw DomainError("osc_kernel: needs a positive quadratic coupling");
        const double omega = std::sqrt(2.0 * lambda_osc / m);
        return osc_green(rho_outer, rho_inner, L_b, E_b, omega, m, hbar);
    };
}

GreenEvaluator dual_green(GreenKernelB green_b, const DualityMap& map, int ell, int D,
                          double E_a, double lambda_a,
                          const std::vector<PowerTerm>& secondaries, double m, double hbar) {
    map.validate();
    check_units(m, hbar, "dual_green");
    const double L_b = map.eta * quasi_L(ell, D);

    const auto [E_b, lambda_b] = swap_energy_coupling(map, E_a, lambda_a);
    std::vector<PowerTerm> terms_b{PowerTerm{lambda_b, map.b}};
    for (const auto& t : secondaries) terms_b.push_back(map_secondary(map, t));

    // fold power-zero terms into the energy: G(E; V + c) = G(E - c; V)
    double E_eff = E_b;
    std::vector<PowerTerm> kept;
    for (const auto& t : terms_b) {
        if (std::fabs(t.exponent) < 1e-12)
            E_eff -= t.coupling;
        else if (t.coupling != 0.0)
            kept.push_back(t);
    }

    const DualityMap mp = map;
    return [=, kernel = std::move(green_b)](double r_outer, double r_inner) {
        check_ordering(r_outer, r_inner, "dual_green evaluator");
        const double rho_o = inverse_radius(mp, r_outer);
        const double rho_i = inverse_radius(mp, r_inner);
        if (!std::isfinite(rho_o) || !std::isfinite(rho_i))
            throw DomainError("dual_green: mapped radius not representable");
        // phi^(a)/phi^(b) reduces to sqrt(f'(rho') f'(rho'')), f'(rho) = C eta rho^{eta-1}
        const double fp_o = mp.C * mp.eta * std::pow(rho_o, mp.eta - 1.0);
        const double fp_i = mp.C * mp.eta * std::pow(rho_i, mp.eta - 1.0);
        return std::sqrt(fp_o * fp_i) * kernel(rho_o, rho_i, L_b, E_eff, kept);
    };
}

double residue_extract(const std::function<double(double)>& green_of_E, double E_pole,
                       double rel_step, int levels) {
    if (E_pole == 0.0)
        throw DomainError("residue_extract: needs a nonzero pole for relative stepping");
    if (levels < 2 || levels > 12) throw DomainError("residue_extract: levels in [2, 12]");

    // symmetric average kills the odd Taylor terms; Neville tableau in h^2
    std::vector<std::vector<double>> T(levels);
    double h = rel_step;
    for (int k = 0; k < levels; ++k, h *= 0.5) {
        const double Ep = E_pole * (1.0 + h);
        const double Em = E_pole * (1.0 - h);
        T[k].resize(k + 1);
        T[k][0] = 0.5 * ((E_pole - Ep) * green_of_E(Ep) + (E_pole - Em) * green_of_E(Em));
        double f = 1.0;
        for (int j = 1; j <= k; ++j) {
            f *= 4.0;
            T[k][j] = (f * T[k][j - 1] - T[k - 1][j - 1]) / (f - 1.0);
        }
    }
    const double best = T[levels - 1][levels - 1];
    const double prev = T[levels - 2][levels - 2];
    if (!std::isfinite(best) ||
        std::fabs(best - prev) > 1e-4 * std::max(std::fabs(best), 1e-300))
        throw ConvergenceError("residue_extract: extrapolation did not settle");
    return best;
}

double residue_extract(const std::function<double(double, double, double)>& green,
                       double E_pole, double r_outer, double r_inner) {
    return residue_extract(
        [&](double E) { return green(E, r_outer, r_inner); }, E_pole);
}

}  // namespace powdual::green
