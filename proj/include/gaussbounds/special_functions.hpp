#pragma once

namespace gaussbounds {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kSqrtPi = 1.77245385090551602729816748334114518;

double erf(double x);

/// Imaginary error function, -i erf(ix).  Evaluated from its Maclaurin series;
/// overflows to +-inf beyond |x| ~ 26.
double erfi(double x);

/// Dawson's integral D(x) = exp(-x^2) * int_0^x exp(t^2) dt = (sqrt(pi)/2) exp(-x^2) erfi(x).
double dawson(double x);

/// D(x)/x, finite at the origin.
double dawson_ratio(double x);

/// gamma(1/2, x) = int_0^x t^{-1/2} e^{-t} dt = sqrt(pi) erf(sqrt(x)), x >= 0.
double lower_gamma_half(double x);

/// erf(m / sqrt(a)) / m for m >= 0, a >= 0, with the m -> 0 limit 2 / sqrt(pi a)
/// and the a -> 0 limit 1/m.  This is the Gaussian average of 1/|u| along one
/// coupling: it appears in every Coulomb kernel.
double erf_ratio(double m, double a);

}  // namespace gaussbounds
