#include "zonalpd/truncated_power.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "zonalpd/gegenbauer.hpp"

namespace zonalpd {

namespace {

void check_spec(const TruncatedPowerSpec& s) {
  if (!(s.lambda >= 0.0)) throw std::invalid_argument("TruncatedPowerSpec: lambda must be >= 0");
  if (!(s.delta > 0.0)) throw std::invalid_argument("TruncatedPowerSpec: delta must be > 0");
  if (s.n < 0) throw std::invalid_argument("TruncatedPowerSpec: n must be >= 0");
  if (!(s.t > 0.0 && s.t <= std::numbers::pi + 1e-12))
    throw std::invalid_argument("TruncatedPowerSpec: t must be in (0, pi]");
}

bool near_integer(double x, double tol = 1e-12) {
  return std::abs(x - std::round(x)) < tol;
}

// Below this the closed forms cancel (cos u minus its Taylor head); the
// alternating series still has no cancellation here, so both sides of the
// seam carry full precision.
constexpr double kSeriesSwitch = 6.0;

// h_delta^{(r)}(u) = (P(u) + Q(u) cos u + R(u) sin u) / u^{delta+2+r},
// coefficients highest power first.
struct HClosed {
  std::vector<double> p, q, r;
};

const HClosed kH[4][4] = {
    {{{1}, {-1}, {0}},
     {{-2}, {2}, {1, 0}},
     {{6}, {1, 0, -6}, {-4, 0}},
     {{-24}, {-6, 0, 24}, {-1, 0, 18, 0}}},
    {{{2, 0}, {0}, {-2}},
     {{-4, 0}, {-2, 0}, {6}},
     {{12, 0}, {12, 0}, {2, 0, -24}},
     {{-48, 0}, {2, 0, -72, 0}, {-18, 0, 120}}},
    {{{3, 0, -6}, {6}, {0}},
     {{-6, 0, 24}, {-24}, {-6, 0}},
     {{18, 0, -120}, {-6, 0, 120}, {48, 0}},
     {{-72, 0, 720}, {72, 0, -720}, {6, 0, -360, 0}}},
    {{{4, 0, -24, 0}, {0}, {24}},
     {{-8, 0, 96, 0}, {24, 0}, {-120}},
     {{24, 0, -480, 0}, {-240, 0}, {-24, 0, 720}},
     {{-96, 0, 2880, 0}, {-24, 0, 2160, 0}, {360, 0, -5040}}}};

double polyval(const std::vector<double>& c, double u) {
  double v = 0.0;
  for (double ci : c) v = v * u + ci;
  return v;
}

// Termwise-differentiated Maclaurin series
//   h_delta^{(r)}(u) = Gamma(delta+2) sum_{2j >= r} (-1)^j (2j)!/(2j-r)!
//                      u^{2j-r} / Gamma(2j+delta+3).
constexpr int kSeriesTerms = 48;

const double* h_series_table(int d, int order) {
  // signed coefficients of u^{2j-order}, j = 0..kSeriesTerms-1
  static double table[4][4][kSeriesTerms];
  static const bool built = [] {
    for (int d2 = 0; d2 < 4; ++d2)
      for (int r = 0; r < 4; ++r)
        for (int j = 0; j < kSeriesTerms; ++j) {
          const int tj = 2 * j;
          if (tj < r) {
            table[d2][r][j] = 0.0;
            continue;
          }
          double fall = 1.0;
          for (int i = 0; i < r; ++i) fall *= tj - i;
          table[d2][r][j] = ((j % 2 == 0) ? 1.0 : -1.0) * fall *
                            std::exp(std::lgamma(d2 + 2.0) - std::lgamma(tj + d2 + 3.0));
        }
    return true;
  }();
  (void)built;
  return table[d][order];
}

double h_series(double delta, double u, int order) {
  if (near_integer(delta) && delta >= -1e-12 && delta <= 3.0 + 1e-12) {
    const double* c = h_series_table(static_cast<int>(std::llround(delta)), order);
    if (u == 0.0) return (order % 2 == 0) ? c[order / 2] : 0.0;
    const double u2 = u * u;
    double s = 0.0;
    for (int j = kSeriesTerms - 1; j >= 0; --j) s = s * u2 + c[j];
    // the table zeroes every coefficient with 2j < order, so dividing by
    // u^order only strips the factored powers
    return s * std::pow(u, -static_cast<double>(order));
  }
  const double lg_front = std::lgamma(delta + 2.0);
  double s = 0.0;
  for (int j = 0; j <= 60; ++j) {
    const int tj = 2 * j;
    if (tj < order) continue;
    double fall = 1.0;
    for (int i = 0; i < order; ++i) fall *= tj - i;
    const double term = ((j % 2 == 0) ? 1.0 : -1.0) * fall *
                        std::exp(lg_front - std::lgamma(tj + delta + 3.0)) *
                        std::pow(u, tj - order);
    s += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(s)) && tj - order > 4) break;
  }
  return s;
}

double h_quadrature(double delta, double u) {
  auto res = integrate([&](double s) { return std::pow(1.0 - s, delta + 1.0) * std::cos(u * s); },
                       0.0, 1.0, 1e-14);
  return res.value;
}

// Coefficient tables of the lambda = 2 and lambda = 3 boundary-case displays.
void e_coeffs(int n, double out[3]) {
  out[0] = n + 3.0;
  out[1] = -2.0 * (n + 2.0);
  out[2] = n + 1.0;
}

void f_coeffs(int n, double out[4]) {
  out[0] = (n + 5.0) * (n + 4.0);
  out[1] = -3.0 * (n + 5.0) * (n + 2.0);
  out[2] = 3.0 * (n + 4.0) * (n + 1.0);
  out[3] = -(n + 2.0) * (n + 1.0);
}

}  // namespace

double h_delta_eval(double delta, double u, int order) {
  if (!(delta > -1.0)) throw std::invalid_argument("h_delta_eval: delta must be > -1");
  if (order < 0 || order > 3) throw std::invalid_argument("h_delta_eval: order must be 0..3");
  if (!(u >= 0.0)) throw std::invalid_argument("h_delta_eval: u must be >= 0");
  if (u < kSeriesSwitch) return h_series(delta, u, order);
  if (near_integer(delta)) {
    const int d = static_cast<int>(std::llround(delta));
    if (d >= 0 && d <= 3) {
      const HClosed& c = kH[d][order];
      return (polyval(c.p, u) + polyval(c.q, u) * std::cos(u) + polyval(c.r, u) * std::sin(u)) /
             std::pow(u, d + 2.0 + order);
    }
  }
  if (order != 0)
    throw std::invalid_argument("h_delta_eval: closed-form derivatives need delta in {0,1,2,3}");
  return h_quadrature(delta, u);
}

double f_quadrature(const TruncatedPowerSpec& spec) {
  check_spec(spec);
  const double l = spec.lambda, d = spec.delta, t = spec.t;
  const int n = spec.n;
  std::function<double(double)> integrand;
  if (l >= 1.0 - 1e-12 && near_integer(l)) {
    const auto ce = cosine_coeffs(static_cast<int>(std::llround(l)), n);
    integrand = [ce, t, d](double th) { return std::pow(t - th, d) * ce(th); };
  } else if (l < 1e-12) {
    integrand = [n, t, d](double th) { return std::pow(t - th, d) * std::cos(n * th); };
  } else {
    integrand = [l, n, t, d](double th) {
      return std::pow(t - th, d) * eval({l, n}, std::cos(th)) *
             std::pow(std::sin(th) * std::sin(th), l);
    };
  }
  const double tol = 1e-12 * std::max(1.0, std::pow(t, d + 1.0));
  auto res = integrate(integrand, 0.0, t, tol);
  if (!res.converged)
    throw std::runtime_error("f_quadrature: non-convergence, achieved error estimate " +
                             std::to_string(res.error_estimate));
  return res.value;
}

double f_closed(int lambda, int n, double t) {
  if (n < 0) throw std::invalid_argument("f_closed: n must be >= 0");
  switch (lambda) {
    case 1: {
      // I(t,n) - I(t,n+2) with I(t,m) = t^3 h(m t), h = h_1 / 2
      return 0.5 * t * t * t * (h_delta_eval(1, n * t) - h_delta_eval(1, (n + 2) * t));
    }
    case 2: {
      double e[3];
      e_coeffs(n, e);
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += e[k] * h_delta_eval(2, (n + 2 * k) * t);
      return std::pow(t, 4) / 8.0 * s;
    }
    case 3: {
      double f[4];
      f_coeffs(n, f);
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += f[k] * h_delta_eval(3, (n + 2 * k) * t);
      return std::pow(t, 5) / 64.0 * s;
    }
    default:
      if (lambda >= 1) return f_power(lambda, lambda + 1.0, n, t);
      throw std::invalid_argument("f_closed: lambda must be a positive integer");
  }
}

double f_power(int lambda, double delta, int n, double t) {
  if (lambda < 1) throw std::invalid_argument("f_power: lambda must be >= 1");
  const auto ce = cosine_coeffs(lambda, n);
  double s = 0.0;
  for (int k = 0; k <= lambda; ++k)
    s += ce.coeffs[k] * h_delta_eval(delta - 1.0, (n + 2 * k) * t);
  return std::pow(t, delta + 1.0) * s;
}

double f_lambda0_delta(int n, double delta, double t) {
  if (n < 0) throw std::invalid_argument("f_lambda0_delta: n must be >= 0");
  return std::pow(t, delta + 1.0) * h_delta_eval(delta - 1.0, n * t);
}

double f_lambda0(int n, double t) {
  if (n < 1) throw std::invalid_argument("f_lambda0: n must be >= 1");
  // (1 - cos(n t))/n^2 without cancellation
  const double s = std::sin(0.5 * n * t);
  return 2.0 * s * s / (static_cast<double>(n) * n);
}

double f_eval(const TruncatedPowerSpec& spec) {
  check_spec(spec);
  if (spec.lambda < 1e-12) return f_lambda0_delta(spec.n, spec.delta, spec.t);
  if (near_integer(spec.lambda) && spec.lambda >= 1.0 - 1e-12) {
    // h_{delta-1} has a closed form for integer delta in {1,..,4}; the series
    // covers small arguments, quadrature on [0,1] the rest.
    return f_power(static_cast<int>(std::llround(spec.lambda)), spec.delta, spec.n, spec.t);
  }
  return f_quadrature(spec);
}

double g_normalized(const TruncatedPowerSpec& spec) {
  if (spec.lambda < 1e-12)
    return f_lambda0_delta(spec.n, spec.delta + 1.0, spec.t);  // C_n^0/C_n^0(1) -> cos(n theta)
  const double c1 = value_at_one({spec.lambda, spec.n});
  return f_eval({spec.lambda, spec.delta + 1.0, spec.n, spec.t}) / c1;
}

namespace {

// G by quadrature only, for the reduction residual.
double g_quadrature(int lambda, double delta, int n, double t) {
  std::function<double(double)> w;
  if (lambda == 0) {
    w = [n](double th) { return std::cos(n * th); };
  } else {
    const auto ce = cosine_coeffs(lambda, n);
    const double c1 = value_at_one({static_cast<double>(lambda), n});
    w = [ce, c1](double th) { return ce(th) / c1; };
  }
  auto res = integrate([&](double th) { return std::pow(t - th, delta + 1.0) * w(th); }, 0.0, t,
                       1e-13 * std::max(1.0, std::pow(t, delta + 2.0)));
  return res.value;
}

}  // namespace

double recursion_check(int lambda, double delta, int n, double t) {
  if (lambda < 1) throw std::invalid_argument("recursion_check: lambda must be >= 1");
  const double lhs = 2.0 / (2.0 * lambda - 1.0) * g_quadrature(lambda, delta, n, t);
  const double rhs =
      (g_quadrature(lambda - 1, delta, n, t) - g_quadrature(lambda - 1, delta, n + 2, t)) /
      (n + static_cast<double>(lambda));
  return std::abs(lhs - rhs);
}

double sup_norm_f(int lambda, int n, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("sup_norm_f: grid_size must be >= 2");
  double m = 0.0;
  for (int i = 1; i <= grid_size; ++i) {
    const double t = std::numbers::pi * i / grid_size;
    m = std::max(m, std::abs(f_closed(lambda, n, t)));
  }
  return m;
}

double fractional_reduction_check(double lambda, double delta, double mu, int n, double t) {
  if (mu < delta) throw std::invalid_argument("fractional_reduction_check: requires mu >= delta");
  const auto F = [&](double delta_x, double tt) {
    return f_eval({lambda, delta_x, n, tt});
  };
  const double lhs = F(mu, t);
  if (mu - delta < 1e-14) return 0.0;  // semigroup identity degenerates to F = F
  const double c = std::exp(std::lgamma(mu + 1.0) - std::lgamma(delta + 1.0) -
                            std::lgamma(mu - delta));
  auto inner = integrate([&](double s) { return std::pow(t - s, mu - delta - 1.0) * F(delta, s); },
                         0.0, t, 1e-11);
  return std::abs(lhs - c * inner.value);
}

}  // namespace zonalpd
