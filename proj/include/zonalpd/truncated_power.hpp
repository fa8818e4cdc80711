#pragma once

#include "zonalpd/quadrature.hpp"

namespace zonalpd {

/// One kernel (t - theta)_+^delta and its integral
///   F_n^{lambda,delta}(t) = int_0^t (t-theta)^delta C_n^lambda(cos theta)
///                           sin^{2 lambda}(theta) dtheta.
/// The boundary case F_n^lambda = F_n^{lambda,lambda+1}.
struct TruncatedPowerSpec {
  double lambda;  // > 0
  double delta;   // > 0
  int n;          // >= 0
  double t;       // in (0, pi]
};

/// h_delta(u) = int_0^1 (1-s)^{delta+1} cos(u s) ds and its derivatives.
/// Closed forms for integer delta in {0,1,2,3} and order <= 3; Maclaurin
/// series below a switch threshold (avoids the cos-minus-Taylor-head
/// cancellation); quadrature fallback for non-integer delta at order 0.
double h_delta_eval(double delta, double u, int order = 0);

/// F by adaptive quadrature of the defining integral. Absolute error target
/// 1e-12 * max(1, t^{delta+1}); throws std::runtime_error with the achieved
/// estimate on non-convergence.
double f_quadrature(const TruncatedPowerSpec& spec);

/// Boundary case F_n^lambda(t) by the explicit trigonometric-polynomial
/// forms: lambda=1 via I(t,n) - I(t,n+2), lambda=2 and 3 via the e/f
/// coefficient displays. Throws for unsupported lambda.
double f_closed(int lambda, int n, double t);

/// F_n^{lambda,delta}(t) for integer lambda >= 1 and any delta > 0 via the
/// terminating cosine expansion: t^{delta+1} sum_k c_k h_{delta-1}((n+2k) t).
double f_power(int lambda, double delta, int n, double t);

/// F_n^{0,delta}(t); for delta = 1 this is (1 - cos(n t))/n^2, vanishing at
/// t = 2 k pi / n and positive elsewhere.
double f_lambda0_delta(int n, double delta, double t);
double f_lambda0(int n, double t);

/// Route dispatcher: closed/cosine-series forms where available, quadrature
/// otherwise. Works for real lambda >= 0.
double f_eval(const TruncatedPowerSpec& spec);

/// G_n^{lambda,delta}(t) = F_n^{lambda,delta+1}(t) / C_n^lambda(1).
/// Note the index shift: the G exponent convention is delta + 1 where F uses
/// delta, exactly as the defining display. lambda = 0 uses the cos(n theta)
/// limit of C_n^lambda / C_n^lambda(1).
double g_normalized(const TruncatedPowerSpec& spec);

/// Residual of the reduction
///  (2/(2 lambda - 1)) G_n^{lambda,delta}
///    = [G_n^{lambda-1,delta} - G_{n+2}^{lambda-1,delta}] / (n + lambda),
/// all three terms computed by quadrature.
double recursion_check(int lambda, double delta, int n, double t);

/// max |F_n^lambda| over a uniform t grid on (0, pi].
double sup_norm_f(int lambda, int n, int grid_size);

/// Residual of the fractional-integral reduction
///  F_n^{lambda,mu}(t) = Gamma(mu+1)/(Gamma(delta+1) Gamma(mu-delta))
///                       * int_0^t (t-s)^{mu-delta-1} F_n^{lambda,delta}(s) ds
/// for mu > delta (identity at mu = delta).
double fractional_reduction_check(double lambda, double delta, double mu, int n, double t);

}  // namespace zonalpd
