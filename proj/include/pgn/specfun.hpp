#pragma once

#include "pgn/quadrature.hpp"

namespace pgn::specfun {

double log_beta(double a, double b);

/// Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s).
double reg_inc_gamma_p(double s, double x);

/// Complement Q(s, x) = 1 - P(s, x), computed without cancellation.
double reg_inc_gamma_q(double s, double x);

/// Incomplete beta integral over (0, c). With regularized=false this is the
/// bare integral of u^{a-1}(1-u)^{b-1}; with regularized=true it is divided
/// by B(a, b) and equals the Beta(a, b) cdf at c.
double inc_beta(double c, double a, double b, bool regularized);

/// J_m(a, b) = E[cos(m*pi*U)] for U ~ Beta(a, b). Equals the real part of
/// the Kummer pair (1F1(a; a+b; i*m*pi) + 1F1(a; a+b; -i*m*pi)) / 2,
/// evaluated here as a real cosine integral.
double beta_cos_moment(int m, double a, double b, const QuadConfig& cfg = {});

/// Tricomi U(1/2, (k+1)/2, z) from its Laplace-type integral representation,
/// with the endpoint u^{-1/2} singularity removed by u = t^2.
double tricomi_u_half(double k, double z, const QuadConfig& cfg = {});

/// Modified Bessel function of the second kind, order 0 or 1.
double bessel_k(int order, double x);

}  // namespace pgn::specfun
