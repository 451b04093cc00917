#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>

#include "powdual/errors.hpp"

namespace powdual::quadrature {

// Double-exponential (tanh-sinh) rule on [a, b].  Level doubling with reuse of
// previously evaluated nodes; handles integrable endpoint singularities.
// Abscissas near the endpoints are formed as offsets from the endpoint itself,
// so f can resolve boundary layers down to ~1e-300.
template <class F>
double tanh_sinh(F&& f, double a, double b, double target_rel_err = 1e-12,
                 double abs_floor = 0.0) {
    if (!(b > a)) throw DomainError("tanh_sinh: requires b > a");
    const double half = 0.5 * (b - a);
    const double t_max = 3.6;  // beyond this the endpoint offset underflows

    auto node = [&](double t, double& x, double& w) {
        const double y = 0.5 * M_PI * std::sinh(t);
        const double c = std::cosh(y);
        w = 0.5 * M_PI * std::cosh(t) / (c * c);
        const double e = std::exp(-2.0 * std::fabs(y));
        const double off = half * 2.0 * e / (1.0 + e);  // distance from nearer endpoint
        x = (t >= 0.0) ? b - off : a + off;
    };

    double x, w;
    node(0.0, x, w);
    double sum = w * f(x);  // running sum of w*f over every node seen so far
    double h = 1.0;
    double prev = std::numeric_limits<double>::quiet_NaN();

    for (int level = 0; level < 14; ++level) {
        const int stride = (level == 0) ? 1 : 2;
        if (level > 0) h *= 0.5;
        int dead = 0;
        for (double t = h; t <= t_max; t += stride * h) {
            double xp, wp, xm, wm;
            node(t, xp, wp);
            node(-t, xm, wm);
            const double c = wp * f(xp) + wm * f(xm);
            sum += c;
            dead = (std::fabs(c) <= 1e-320) ? dead + 1 : 0;
            if (dead > 4) break;
        }
        const double integral = half * h * sum;
        if (level >= 3) {
            const double scale = std::max(std::fabs(integral), abs_floor);
            if (std::fabs(integral - prev) <= target_rel_err * scale) return integral;
        }
        prev = integral;
    }
    throw ConvergenceError("tanh_sinh: tolerance not reached within level budget");
}

// Double-exponential rule on (0, inf): x = exp((pi/2) sinh t).  Suited to
// integrands with power behaviour at 0 and (super)exponential decay at infinity.
// f must evaluate without overflow for very large x (work in log space and
// return 0 when damped).
template <class F>
double exp_sinh_0_inf(F&& f, double target_rel_err = 1e-12, double abs_floor = 0.0) {
    const double t_max = 4.3;

    auto node = [&](double t, double& x, double& w) {
        const double y = 0.5 * M_PI * std::sinh(t);
        x = std::exp(y);
        w = 0.5 * M_PI * std::cosh(t) * x;
    };

    double x, w;
    node(0.0, x, w);
    double sum = w * f(x);
    double h = 1.0;
    double prev = std::numeric_limits<double>::quiet_NaN();

    for (int level = 0; level < 14; ++level) {
        const int stride = (level == 0) ? 1 : 2;
        if (level > 0) h *= 0.5;
        int dead_p = 0, dead_m = 0;
        for (double t = h; t <= t_max; t += stride * h) {
            if (dead_p <= 4) {
                double xp, wp;
                node(t, xp, wp);
                const double c = wp * f(xp);
                sum += c;
                dead_p = (std::fabs(c) <= 1e-320) ? dead_p + 1 : 0;
            }
            if (dead_m <= 4) {
                double xm, wm;
                node(-t, xm, wm);
                const double c = wm * f(xm);
                sum += c;
                dead_m = (std::fabs(c) <= 1e-320) ? dead_m + 1 : 0;
            }
            if (dead_p > 4 && dead_m > 4) break;
        }
        const double integral = h * sum;
        if (level >= 3) {
            const double scale = std::max(std::fabs(integral), abs_floor);
            if (std::fabs(integral - prev) <= target_rel_err * scale) return integral;
        }
        prev = integral;
    }
    throw ConvergenceError("exp_sinh_0_inf: tolerance not reached within level budget");
}

}  // namespace powdual::quadrature
