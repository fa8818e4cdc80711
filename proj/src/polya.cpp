#include "zonalpd/polya.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zonalpd/gegenbauer.hpp"
#include "zonalpd/truncated_power.hpp"

namespace zonalpd {

namespace {

constexpr double kPi = std::numbers::pi;

// Stencil spacing that balances finite-difference truncation against
// rounding amplification for derivative orders up to 5 (validated against
// the coefficient-route agreement tolerance).
constexpr double kTargetStencilSpacing = 3.07e-3;

double detect_support_end(const Eigen::ArrayXd& theta, const Eigen::ArrayXd& values) {
  const double floor = 1e-12 * std::max(values.abs().maxCoeff(), 1e-300);
  for (Eigen::Index i = values.size() - 1; i >= 0; --i)
    if (std::abs(values(i)) > floor) return theta(i);
  return 0.0;
}

struct Trapezoid {
  double spacing;
  long double operator()(const Eigen::ArrayXd& f) const {
    long double s = 0.5L * (f(0) + f(f.size() - 1));
    for (Eigen::Index i = 1; i + 1 < f.size(); ++i) s += f(i);
    return s * spacing;
  }
};

double chebyshev_norm(int n) { return n == 0 ? kPi : kPi / 2.0; }

}  // namespace

double SampledZonalFunction::spacing() const {
  return theta(1) - theta(0);
}

SampledZonalFunction SampledZonalFunction::from_function(const std::function<double(double)>& fn,
                                                         int n_points, int smoothness_claim) {
  if (n_points < 9) throw std::invalid_argument("SampledZonalFunction: need at least 9 points");
  SampledZonalFunction g;
  g.theta = Eigen::ArrayXd::LinSpaced(n_points, 0.0, kPi);
  g.values.resize(n_points);
  for (int i = 0; i < n_points; ++i) g.values(i) = fn(g.theta(i));
  g.support_end = detect_support_end(g.theta, g.values);
  g.smoothness_claim = smoothness_claim;
  return g;
}

SampledZonalFunction SampledZonalFunction::from_grid(const Eigen::ArrayXd& theta,
                                                     const Eigen::ArrayXd& values,
                                                     int smoothness_claim) {
  if (theta.size() != values.size() || theta.size() < 9)
    throw std::invalid_argument("SampledZonalFunction: bad grid size");
  const Eigen::Index n = theta.size();
  if (std::abs(theta(0)) > 1e-12 || std::abs(theta(n - 1) - kPi) > 1e-9)
    throw std::invalid_argument("SampledZonalFunction: grid must span [0, pi]");
  const double dth = theta(1) - theta(0);
  for (Eigen::Index i = 1; i < n; ++i)
    if (std::abs(theta(i) - theta(i - 1) - dth) > 1e-9 * std::max(1.0, dth))
      throw std::invalid_argument("SampledZonalFunction: grid must be uniform");
  SampledZonalFunction g;
  g.theta = theta;
  g.values = values;
  g.support_end = detect_support_end(theta, values);
  g.smoothness_claim = smoothness_claim;
  return g;
}

SampledZonalFunction sample_truncated_power(double t, double delta, int n_points) {
  if (!(t > 0.0 && t <= kPi)) throw std::invalid_argument("truncated power: t must be in (0, pi]");
  if (!(delta > 0.0)) throw std::invalid_argument("truncated power: delta must be > 0");
  auto g = SampledZonalFunction::from_function(
      [t, delta](double th) { return th < t ? std::pow(t - th, delta) : 0.0; }, n_points,
      static_cast<int>(std::floor(delta)));
  g.support_end = t;
  return g;
}

SampledZonalFunction sample_smooth_bump(double t0, int power, int n_points) {
  if (!(t0 > 0.0 && t0 < kPi)) throw std::invalid_argument("smooth bump: t0 must be in (0, pi)");
  if (power < 1) throw std::invalid_argument("smooth bump: power must be >= 1");
  const double c0 = std::cos(t0);
  auto g = SampledZonalFunction::from_function(
      [c0, power, t0](double th) {
        return th < t0 ? std::pow(std::cos(th) - c0, power) : 0.0;
      },
      n_points, power - 1);
  g.support_end = t0;
  return g;
}

SampledZonalFunction sample_power_series(const std::vector<double>& coeffs, int n_points) {
  return SampledZonalFunction::from_function(
      [&coeffs](double th) {
        const double x = std::cos(th);
        double v = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
        return v;
      },
      n_points, 1 << 20);  // analytic
}

std::vector<double> fornberg_weights(int order, const std::vector<double>& xs, double x0) {
  const int n = static_cast<int>(xs.size()) - 1;
  if (n < order) throw std::invalid_argument("fornberg_weights: too few nodes");
  std::vector<std::vector<long double>> c(n + 1, std::vector<long double>(order + 1, 0.0L));
  long double c1 = 1.0L;
  long double c4 = xs[0] - x0;
  c[0][0] = 1.0L;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, order);
    long double c2 = 1.0L;
    const long double c5 = c4;
    c4 = xs[i] - x0;
    for (int j = 0; j < i; ++j) {
      const long double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = static_cast<double>(c[i][order]);
  return w;
}

Eigen::ArrayXd derivative_on_grid(const Eigen::ArrayXd& values, double spacing, int order,
                                  int stride, int accuracy) {
  const int n = static_cast<int>(values.size());
  int npts = order + accuracy;
  if (npts % 2 == 0) ++npts;
  const int half = npts / 2;
  if ((npts - 1) * stride > n - 1)
    throw std::invalid_argument("derivative_on_grid: grid too small for stencil");

  // one stencil per lateral shift; shift 0 is the centered one
  std::vector<std::vector<double>> wts(2 * half + 1);
  for (int shift = -half; shift <= half; ++shift) {
    std::vector<double> xs(npts);
    for (int j = 0; j < npts; ++j) xs[j] = (j - half + shift) * stride * spacing;
    wts[shift + half] = fornberg_weights(order, xs, 0.0);
  }

  Eigen::ArrayXd out(n);
  for (int i = 0; i < n; ++i) {
    int shift = 0;
    if (i - half * stride < 0) shift = half - i / stride;
    if (i + half * stride > n - 1) shift = -(half - (n - 1 - i) / stride);
    const auto& w = wts[shift + half];
    long double acc = 0.0L;
    for (int j = 0; j < npts; ++j)
      acc += static_cast<long double>(w[j]) * values(i + (j - half + shift) * stride);
    out(i) = static_cast<double>(acc);
  }
  return out;
}

CoefficientSeries coefficients_by_quadrature(const SampledZonalFunction& g, int lambda,
                                             int n_max) {
  if (lambda < 0) throw std::invalid_argument("coefficients_by_quadrature: lambda must be >= 0");
  const int n_pts = g.size();
  const double dth = g.spacing();
  if ((n_max + 2.0 * lambda) * dth > 2.0 * kPi / 8.0)
    throw std::invalid_argument(
        "coefficients_by_quadrature: grid cannot resolve the requested n_max "
        "(need >= 8 points per oscillation period)");

  CoefficientSeries s;
  s.lambda = lambda;
  s.n_max = n_max;
  s.b.resize(n_max + 1);
  s.a.resize(n_max + 1);
  s.error_estimates.resize(n_max + 1);
  const Trapezoid trapz{dth};

  for (int n = 0; n <= n_max; ++n) {
    Eigen::ArrayXd w(n_pts);
    if (lambda == 0) {
      w = (static_cast<double>(n) * g.theta).cos();
    } else {
      const auto ce = cosine_coeffs(lambda, n);
      w.setZero();
      for (int k = 0; k <= lambda; ++k)
        w += ce.coeffs[k] * ((n + 2.0 * k) * g.theta).cos();
    }
    const Eigen::ArrayXd f = g.values * w;
    const double full = static_cast<double>(trapz(f));
    // coarse estimate on every other sample, for the error gauge
    long double coarse = 0.5L * (f(0) + f(((n_pts - 1) / 2) * 2));
    for (int i = 2; i + 2 <= ((n_pts - 1) / 2) * 2; i += 2) coarse += f(i);
    s.b[n] = full;
    s.error_estimates[n] = std::abs(full - static_cast<double>(coarse * 2.0L * dth));
    const double hn = lambda == 0 ? chebyshev_norm(n) : norm_h({static_cast<double>(lambda), n});
    s.a[n] = s.b[n] / hn;
  }
  return s;
}

CoefficientSeries coefficients_via_f(const SampledZonalFunction& g, int lambda, int n_max) {
  if (lambda < 1) throw std::invalid_argument("coefficients_via_f: lambda must be >= 1");
  const int n_pts = g.size();
  const double dth = g.spacing();
  const int order = lambda + 2;
  int npts = order + 6;
  if (npts % 2 == 0) ++npts;
  const int half = npts / 2;

  int stride = std::max(1, static_cast<int>(std::lround(kTargetStencilSpacing / dth)));
  stride = std::min(stride, (n_pts - 1) / (npts - 1));
  if (stride < 1) throw std::invalid_argument("coefficients_via_f: grid too small");

  const double reach = (half * 2 + 2) * stride * dth;
  if (g.support_end > kPi - reach)
    throw std::invalid_argument("coefficients_via_f: g must vanish identically near pi");

  const Eigen::ArrayXd d1 = derivative_on_grid(g.values, dth, order, stride);
  const Eigen::ArrayXd d2 = derivative_on_grid(g.values, dth, order, 2 * stride);
  // halving the stencil spacing doubles the peak of a genuinely singular
  // derivative; for C^{lambda+2} data the peaks agree
  const double peak1 = d1.abs().maxCoeff();
  const double peak2 = std::max(d2.abs().maxCoeff(), 1e-300);
  if (peak1 > 1.5 * peak2)
    throw std::invalid_argument(
        "coefficients_via_f: finite-difference derivative estimates diverge "
        "(g is not C^{lambda+2} at the grid resolution)");

  CoefficientSeries s;
  s.lambda = lambda;
  s.n_max = n_max;
  s.b.resize(n_max + 1);
  s.a.resize(n_max + 1);
  s.error_estimates.resize(n_max + 1);
  const double sign = (lambda % 2 == 0) ? 1.0 : -1.0;  // (-1)^{lambda+2}
  const double pref = sign / std::tgamma(lambda + 2.0);
  const Trapezoid trapz{dth};

  Eigen::ArrayXd fvals(n_pts);
  for (int n = 0; n <= n_max; ++n) {
    fvals(0) = 0.0;
    for (int i = 1; i < n_pts; ++i) fvals(i) = f_closed(lambda, n, g.theta(i));
    const double b1 = pref * static_cast<double>(trapz(fvals * d1));
    const double b2 = pref * static_cast<double>(trapz(fvals * d2));
    s.b[n] = b1;
    s.error_estimates[n] = std::abs(b1 - b2);
    s.a[n] = b1 / norm_h({static_cast<double>(lambda), n});
  }
  return s;
}

SampledZonalFunction mollify(const SampledZonalFunction& g, double h) {
  const double dth = g.spacing();
  const int p = static_cast<int>(std::lround(h / dth));
  if (p < 1) throw std::invalid_argument("mollify: h below grid resolution");

  const int n = g.size();
  auto average = [&](const Eigen::ArrayXd& v) {
    // trapezoid mean over [x, x + p dth], zero beyond pi
    Eigen::ArrayXd out(n);
    auto at = [&](int i) { return i < n ? v(i) : 0.0; };
    for (int i = 0; i < n; ++i) {
      long double acc = 0.5L * (at(i) + at(i + p));
      for (int j = 1; j < p; ++j) acc += at(i + j);
      out(i) = static_cast<double>(acc / p);
    }
    return out;
  };

  SampledZonalFunction out;
  out.theta = g.theta;
  out.values = average(average(g.values));
  out.support_end = detect_support_end(out.theta, out.values);
  out.smoothness_claim = g.smoothness_claim + 2;
  return out;
}

std::string to_string(PdClass c) {
  switch (c) {
    case PdClass::strictly_positive_definite: return "strictly_positive_definite";
    case PdClass::positive_definite: return "positive_definite";
    case PdClass::inconclusive: return "inconclusive";
    case PdClass::violated: return "violated";
  }
  return "?";
}

std::string to_string(SeriesClass c) {
  switch (c) {
    case SeriesClass::not_positive_definite: return "not_positive_definite";
    case SeriesClass::positive_definite: return "positive_definite";
    case SeriesClass::strictly_positive_definite: return "strictly_positive_definite";
  }
  return "?";
}

namespace {

// Least-squares affine fit; returns max |psi - fit|.
double affine_residual(const Eigen::ArrayXd& x, const Eigen::ArrayXd& psi) {
  const double n = static_cast<double>(x.size());
  const double sx = x.sum(), sy = psi.sum();
  const double sxx = (x * x).sum(), sxy = (x * psi).sum();
  const double det = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / det;
  const double icept = (sy - slope * sx) / n;
  return (psi - slope * x - icept).abs().maxCoeff();
}

// piecewise-linear detection by counting second-difference spikes: an exactly
// piecewise affine sample has nonzero second differences only at its knots
int second_difference_kinks(const Eigen::ArrayXd& v, double* max_d2_out) {
  const Eigen::Index n = v.size();
  Eigen::ArrayXd d2(n - 2);
  for (Eigen::Index i = 1; i + 1 < n; ++i) d2(i - 1) = v(i + 1) - 2.0 * v(i) + v(i - 1);
  const double m = d2.abs().maxCoeff();
  *max_d2_out = m;
  if (m <= 0.0) return 0;
  int count = 0;
  for (Eigen::Index i = 0; i < d2.size(); ++i)
    if (std::abs(d2(i)) > 1e-6 * m) ++count;
  return count;
}

}  // namespace

PolyaVerdict check_criterion(const SampledZonalFunction& g, int lambda, int evidence_n_max) {
  if (lambda < 0) throw std::invalid_argument("check_criterion: lambda must be >= 0");
  PolyaVerdict v;
  v.lambda = lambda;
  const int n = g.size();
  const double dth = g.spacing();
  const double maxg = std::max(g.values.abs().maxCoeff(), 1e-300);

  // (ii) support strictly inside [0, pi)
  v.checks.support_end_detected = detect_support_end(g.theta, g.values);
  v.checks.support_ok = v.checks.support_end_detected < kPi - 0.5 * dth;

  int stride = std::max(1, static_cast<int>(std::lround(kTargetStencilSpacing / dth)));
  int npts = lambda + 2 + 6;
  if (npts % 2 == 0) ++npts;
  stride = std::max(1, std::min(stride, (n - 1) / (2 * (npts - 1))));

  // psi = (-1)^lambda g^(lambda) with a per-point uncertainty gauge from the
  // stride-doubled estimate (zero for lambda = 0, where samples are exact)
  Eigen::ArrayXd psi, unc;
  const double sgn = (lambda % 2 == 0) ? 1.0 : -1.0;
  if (lambda == 0) {
    psi = g.values;
    unc = Eigen::ArrayXd::Zero(n);
    v.checks.smoothness_ok = g.values.isFinite().all();
  } else {
    psi = sgn * derivative_on_grid(g.values, dth, lambda, stride);
    const Eigen::ArrayXd psi2 = sgn * derivative_on_grid(g.values, dth, lambda, 2 * stride);
    unc = (psi - psi2).abs();
    const double range = psi.maxCoeff() - psi.minCoeff();
    v.checks.smoothness_ok = unc.maxCoeff() <= 0.05 * std::max(range, 1e-300) + 1e-9 * maxg;
  }

  // (iii) one-sided g^{(lambda+1)}(0)
  {
    const Eigen::ArrayXd e1 = derivative_on_grid(g.values, dth, lambda + 1, stride);
    const Eigen::ArrayXd e2 = derivative_on_grid(g.values, dth, lambda + 1, 2 * stride);
    v.checks.one_sided_derivative_at_zero = e1(0);
    const double scale = std::max(e1.abs().maxCoeff(), 1e-300);
    v.checks.derivative_at_zero_finite =
        std::isfinite(e1(0)) && std::abs(e1(0) - e2(0)) <= 0.1 * std::abs(e1(0)) + 1e-3 * scale;
  }

  // (iv) midpoint convexity of psi on stride-sampled triples
  {
    const double range = std::max(psi.maxCoeff() - psi.minCoeff(), 0.0);
    bool ok = true;
    double worst = 0.0;
    const int s0 = std::max(stride * ((npts + 1) / 2), 1);
    for (int s = s0; 2 * s < n; s *= 4) {
      for (int i = s; i + s < n; i += std::max(1, s / 2)) {
        const double gap = 0.5 * (psi(i - s) + psi(i + s)) - psi(i);
        const double tol = 1e-9 * range + 2.0 * (unc(i) + 0.5 * (unc(i - s) + unc(i + s)));
        worst = std::min(worst, gap);
        if (gap < -tol) ok = false;
      }
    }
    v.checks.convexity_ok = ok;
    v.checks.convexity_worst_gap = worst;
  }

  // strictness
  if (lambda >= 1) {
    const double denom = std::max(psi.abs().maxCoeff(), 1e-300);
    v.checks.affine_deviation = affine_residual(g.theta, psi) / denom;
    const double noise_rel = unc.maxCoeff() / denom;
    v.checks.strictness_ok = v.checks.affine_deviation > std::max(1e-8, 4.0 * noise_rel);
  } else {
    // circle rule: g must not be piecewise linear with finitely many pieces
    double max_d2 = 0.0;
    const int kinks = second_difference_kinks(g.values, &max_d2);
    const bool piecewise_linear = max_d2 <= 1e-12 * maxg || kinks <= 16;
    v.checks.strictness_ok = !piecewise_linear;
    v.checks.affine_deviation = max_d2 / maxg;
  }

  // verdict, combined with coefficient evidence
  const bool hypotheses = v.checks.smoothness_ok && v.checks.support_ok &&
                          v.checks.derivative_at_zero_finite && v.checks.convexity_ok;
  const int n_res = std::max(0, static_cast<int>((2.0 * kPi / 8.0) / dth) - 2 * lambda - 1);
  v.evidence_n_max = std::min(evidence_n_max, n_res);
  const auto series = coefficients_by_quadrature(g, lambda, v.evidence_n_max);
  v.coefficient_evidence = series.a;
  v.caveat = "coefficient evidence verified up to n_max only";

  if (!hypotheses) {
    v.classification = PdClass::violated;
    return v;
  }
  double a_scale = 0.0;
  for (double a : series.a) a_scale = std::max(a_scale, std::abs(a));
  bool evidence_ok = true;
  for (double a : series.a)
    if (a < -1e-10 * std::max(1.0, a_scale)) evidence_ok = false;
  if (!evidence_ok)
    v.classification = PdClass::inconclusive;
  else
    v.classification = v.checks.strictness_ok ? PdClass::strictly_positive_definite
                                              : PdClass::positive_definite;
  return v;
}

SeriesClassification classify_pd(const CoefficientSeries& series) {
  SeriesClassification r;
  r.caveat = "verified up to n_max = " + std::to_string(series.n_max) + " only";
  double scale = 0.0;
  for (double a : series.a) scale = std::max(scale, std::abs(a));
  if (scale == 0.0) {
    r.schoenberg_nonnegative = true;
    r.xu_all_positive = false;
    r.classification = SeriesClass::positive_definite;
    return r;
  }
  const double tol = 1e-10 * scale;
  r.schoenberg_nonnegative = true;
  r.xu_all_positive = true;
  for (std::size_t i = 0; i < series.a.size(); ++i) {
    const double a = series.a[i];
    if (a < -tol) r.schoenberg_nonnegative = false;
    if (!(a > tol))
      r.xu_all_positive = false;
    else
      (i % 2 == 0 ? r.cms_even_positive : r.cms_odd_positive)++;
  }
  if (!r.schoenberg_nonnegative)
    r.classification = SeriesClass::not_positive_definite;
  else if (r.xu_all_positive)
    r.classification = SeriesClass::strictly_positive_definite;
  else
    r.classification = SeriesClass::positive_definite;
  return r;
}

AllSpheresVerdict all_spheres_check(const std::vector<double>& power_series_coeffs) {
  AllSpheresVerdict v;
  v.positive_definite_all_spheres = true;
  for (std::size_t k = 0; k < power_series_coeffs.size(); ++k) {
    v.coefficient_sum += power_series_coeffs[k];
    if (power_series_coeffs[k] < 0.0 && v.first_negative_index < 0) {
      v.first_negative_index = static_cast<int>(k);
      v.positive_definite_all_spheres = false;
    }
  }
  return v;
}

}  // namespace zonalpd
