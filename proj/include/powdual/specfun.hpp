#pragma once

#include "powdual/accuracy.hpp"
#include "powdual/errors.hpp"

namespace powdual::specfun {

/// Gamma function on the real line (Lanczos; reflection for x < 0.5).
/// Throws PoleError at non-positive integers.
double gamma(double x);

/// log Gamma for x > 0.
double log_gamma(double x);

/// log|Gamma(x)| together with the sign of Gamma(x); valid away from poles.
struct SignedLogGamma {
    double log_abs;
    int sign;
};
SignedLogGamma signed_log_gamma(double x);

/// 1/Gamma(x); entire, returns 0 at the poles of Gamma.
double reciprocal_gamma(double x);

/// Modified Bessel function of the first kind, nu >= 0, x >= 0.
/// Ascending series for moderate x, large-argument asymptotics beyond.
/// Throws OverflowError once e^x/sqrt(2 pi x) exceeds the double range;
/// use bessel_i_scaled there.
double bessel_i(double nu, double x, FunctionAccuracy acc = {});

/// e^{-x} I_nu(x); never overflows for x >= 0.
double bessel_i_scaled(double nu, double x, FunctionAccuracy acc = {});

/// Gegenbauer polynomial C_l^alpha(t) by the three-term recurrence.
double gegenbauer(int ell, double alpha, double t);

/// Surface-normalised Gegenbauer kernel
///   (2l + D - 2) Gamma(D/2) / (2 (D-2) pi^{D/2}) * C_l^{(D-2)/2}(t),
/// the reproducing kernel of the l-wave on the unit (D-1)-sphere.
double modified_gegenbauer(int ell, int D, double t);

/// Confluent hypergeometric M(a;b;z) = 1F1 by ascending series.
double kummer_m(double a, double b, double z, FunctionAccuracy acc = {});

/// Confluent hypergeometric U(a,b,z), z > 0.
double kummer_u(double a, double b, double z, FunctionAccuracy acc = {});

/// Whittaker functions M_{k,mu}(z), W_{k,mu}(z), z > 0.
double whittaker_m(double k, double mu, double z, FunctionAccuracy acc = {});
double whittaker_w(double k, double mu, double z, FunctionAccuracy acc = {});

/// Generalized Laguerre polynomial L_n^{(alpha)}(x).
double laguerre(int n, double alpha, double x);

/// Switchover from the small-z representation of U to the large-z
/// asymptotic series; the two branches agree to ~1e-10 across z = 30.
inline constexpr double kummer_u_asymptotic_switch = 30.0;

}  // namespace powdual::specfun
