#include "zonalpd/gegenbauer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zonalpd {

namespace {

void check_param(const GegenbauerParam& p) {
  if (!(p.lambda > 0.0)) throw std::invalid_argument("GegenbauerParam: lambda must be > 0");
  if (p.n < 0) throw std::invalid_argument("GegenbauerParam: n must be >= 0");
}

bool near_integer(double x, double tol = 1e-12) {
  return std::abs(x - std::round(x)) < tol;
}

// (a)_m = a (a+1) ... (a+m-1)
double pochhammer(double a, int m) {
  double p = 1.0;
  for (int i = 0; i < m; ++i) p *= a + i;
  return p;
}

}  // namespace

double eval(const GegenbauerParam& p, double x) {
  check_param(p);
  if (std::abs(x) > 1.0 + 1e-12)
    throw std::domain_error("gegenbauer eval: |x| > 1 + 1e-12");
  if (p.n == 0) return 1.0;
  double cm = 1.0;
  double c = 2.0 * p.lambda * x;
  for (int m = 1; m < p.n; ++m) {
    const double next = (2.0 * (m + p.lambda) * x * c - (m + 2.0 * p.lambda - 1.0) * cm) / (m + 1);
    cm = c;
    c = next;
  }
  return c;
}

Eigen::ArrayXd eval(const GegenbauerParam& p, const Eigen::ArrayXd& x) {
  check_param(p);
  if ((x.abs() > 1.0 + 1e-12).any())
    throw std::domain_error("gegenbauer eval: |x| > 1 + 1e-12");
  if (p.n == 0) return Eigen::ArrayXd::Ones(x.size());
  Eigen::ArrayXd cm = Eigen::ArrayXd::Ones(x.size());
  Eigen::ArrayXd c = 2.0 * p.lambda * x;
  for (int m = 1; m < p.n; ++m) {
    Eigen::ArrayXd next = (2.0 * (m + p.lambda) * x * c - (m + 2.0 * p.lambda - 1.0) * cm) / (m + 1);
    cm.swap(c);
    c.swap(next);
  }
  return c;
}

double value_at_one(const GegenbauerParam& p) {
  check_param(p);
  const double two_lambda = 2.0 * p.lambda;
  if (near_integer(two_lambda)) {
    // binomial(n + 2 lambda - 1, n) = prod_{i=1}^{2 lambda - 1} (n + i) / i
    const int tl = static_cast<int>(std::llround(two_lambda));
    double v = 1.0;
    for (int i = 1; i <= tl - 1; ++i) v *= static_cast<double>(p.n + i) / i;
    return v;
  }
  return std::exp(std::lgamma(p.n + two_lambda) - std::lgamma(two_lambda) -
                  std::lgamma(p.n + 1.0));
}

double norm_h(const GegenbauerParam& p) {
  check_param(p);
  const double l = p.lambda, n = p.n;
  const double log_h = std::log(std::numbers::pi) + (1.0 - 2.0 * l) * std::numbers::ln2 +
                       std::lgamma(n + 2.0 * l) - std::lgamma(n + 1.0) - std::log(n + l) -
                       2.0 * std::lgamma(l);
  return std::exp(log_h);
}

double CosineExpansion::operator()(double theta) const {
  double s = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    s += coeffs[k] * std::cos((n + 2.0 * static_cast<double>(k)) * theta);
  return s;
}

CosineExpansion cosine_coeffs(int mu, int n) {
  if (mu < 1) throw std::invalid_argument("cosine_coeffs: mu must be >= 1");
  if (n < 0) throw std::invalid_argument("cosine_coeffs: n must be >= 0");
  CosineExpansion e{mu, n, std::vector<double>(mu + 1)};
  const double pref = std::pow(2.0, 1 - 2 * mu) / std::tgamma(static_cast<double>(mu));
  const double rising = pochhammer(n + 1.0, 2 * mu - 1);
  double binom = 1.0;  // binomial(mu, k), updated incrementally
  for (int k = 0; k <= mu; ++k) {
    // (n+2k) / (n+k)_{mu+1}; the n factor cancels at k = 0, which also
    // resolves the 0/0 at n = 0.
    const double ratio = (k == 0) ? 1.0 / pochhammer(n + 1.0, mu)
                                  : (n + 2.0 * k) / pochhammer(n + static_cast<double>(k), mu + 1);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    e.coeffs[k] = pref * sign * binom * rising * ratio;
    binom *= static_cast<double>(mu - k) / (k + 1);
  }
  return e;
}

double weighted_eval(int mu, int n, double theta) {
  return cosine_coeffs(mu, n)(theta);
}

double ConnectionCoeffs::reconstruct(double theta) const {
  const double s2l = std::pow(std::sin(theta) * std::sin(theta), lambda);
  double s = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0.0) continue;
    s += coeffs[k] * s2l * eval({lambda, n + 2 * static_cast<int>(k)}, std::cos(theta));
  }
  return s;
}

ConnectionCoeffs connection_coeffs(double mu, double lambda, int n, int kmax) {
  if (!(mu > (lambda - 1.0) / 2.0))
    throw std::invalid_argument("connection_coeffs: requires mu > (lambda-1)/2");
  if (!(mu > 0.0) || !(lambda > 0.0))
    throw std::invalid_argument("connection_coeffs: mu, lambda must be > 0");
  if (n < 0 || kmax < 0) throw std::invalid_argument("connection_coeffs: n, kmax must be >= 0");

  ConnectionCoeffs c{mu, lambda, n, kmax, std::vector<double>(kmax + 1, 0.0), false};
  const double d = lambda - mu;
  int support = -1;  // -1: infinite
  if (near_integer(d) && std::llround(d) <= 0) {
    c.finite_support = true;
    support = static_cast<int>(std::llround(-d));
  }

  const double log_front = (2.0 * lambda - 2.0 * mu) * std::numbers::ln2 + std::lgamma(lambda) -
                           std::lgamma(mu) - std::lgamma(n + 1.0);
  for (int k = 0; k <= kmax; ++k) {
    if (support >= 0 && k > support) break;  // remaining coefficients are zero
    // (lambda - mu)_k carries the sign; everything else is positive.
    const double poch = pochhammer(d, k);
    if (poch == 0.0) continue;
    const double log_mag = log_front + std::lgamma(n + 2.0 * mu) +
                           std::log(n + 2.0 * k + lambda) + std::lgamma(n + 2.0 * k + 1.0) +
                           std::lgamma(n + k + lambda) - std::lgamma(k + 1.0) -
                           std::lgamma(n + k + mu + 1.0) - std::lgamma(n + 2.0 * k + 2.0 * lambda);
    c.coeffs[k] = std::copysign(std::exp(log_mag + std::log(std::abs(poch))), poch);
  }
  return c;
}

double largest_zero_bound(double lambda, int n, ZeroBoundMethod method) {
  if (n < 1) throw std::invalid_argument("largest_zero_bound: n must be >= 1");
  if (!(lambda > 0.0)) throw std::invalid_argument("largest_zero_bound: lambda must be > 0");
  switch (method) {
    case ZeroBoundMethod::elbert:
      return std::sqrt(n * static_cast<double>(n) + 2.0 * (n - 1) * lambda - 1.0) / (n + lambda);
    case ZeroBoundMethod::area: {
      if (n == 1) return 0.0;  // C_1 has its only zero at the origin
      const double r = (n - 1.0) * (n + 2.0 * lambda - 2.0) / ((n + lambda - 2.0) * (n + lambda - 1.0));
      return std::sqrt(r) * std::cos(std::numbers::pi / (n + 1.0));
    }
  }
  throw std::invalid_argument("largest_zero_bound: unknown method");
}

}  // namespace zonalpd
