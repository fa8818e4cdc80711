#pragma once

#include <Eigen/Core>
#include <vector>

namespace zonalpd {

/// Relative tolerance used throughout for polynomial identities.
inline constexpr double kIdentityTol = 1e-10;

/// Index pair addressing one Gegenbauer polynomial C_n^lambda.
struct GegenbauerParam {
  double lambda;  // > 0
  int n;          // >= 0
};

/// C_n^lambda(x) by the forward three-term recurrence.
/// Throws std::domain_error if |x| > 1 + 1e-12.
double eval(const GegenbauerParam& p, double x);
Eigen::ArrayXd eval(const GegenbauerParam& p, const Eigen::ArrayXd& x);

/// C_n^lambda(1) = binomial(n + 2 lambda - 1, n); exact products for integer
/// lambda, log-gamma otherwise.
double value_at_one(const GegenbauerParam& p);

/// Squared norm h_n^lambda = pi 2^{1-2 lambda} Gamma(n+2 lambda)
///                           / (n! (n+lambda) Gamma(lambda)^2),
/// evaluated in log space.
double norm_h(const GegenbauerParam& p);

/// Terminating cosine expansion of sin^{2 mu}(theta) C_n^mu(cos theta):
/// the sum over k = 0..mu of coeffs[k] cos((n+2k) theta).
struct CosineExpansion {
  int mu;
  int n;
  std::vector<double> coeffs;  // length mu + 1

  double operator()(double theta) const;
};

CosineExpansion cosine_coeffs(int mu, int n);

/// sin^{2 mu}(theta) C_n^mu(cos theta) via the terminating cosine sum.
/// Cancellation-free for large n, unlike the direct product.
double weighted_eval(int mu, int n, double theta);

/// Coefficients c_{k,n}^{mu,lambda} of the connection formula
///   sin^{2 mu} C_n^mu = sum_k c_{k,n}^{mu,lambda} sin^{2 lambda} C_{n+2k}^lambda.
/// The Gamma(k+lambda-mu)/Gamma(lambda-mu) ratio is folded into a Pochhammer
/// product, so the removable singularities at lambda - mu in -N are exact:
/// coeffs vanish for k > mu - lambda in that case.
struct ConnectionCoeffs {
  double mu;
  double lambda;
  int n;
  int kmax;
  std::vector<double> coeffs;  // length kmax + 1
  bool finite_support;         // lambda - mu a non-positive integer

  /// Partial-sum reconstruction sum_k coeffs[k] sin^{2 lambda} C_{n+2k}^lambda.
  double reconstruct(double theta) const;
};

ConnectionCoeffs connection_coeffs(double mu, double lambda, int n, int kmax);

enum class ZeroBoundMethod { elbert, area };

/// Upper bound on the largest zero of C_n^lambda.
double largest_zero_bound(double lambda, int n, ZeroBoundMethod method);

}  // namespace zonalpd
