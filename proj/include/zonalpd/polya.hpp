#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

namespace zonalpd {

/// Uniform samples of a zonal profile g(theta) on [0, pi], endpoints included.
struct SampledZonalFunction {
  Eigen::ArrayXd theta;
  Eigen::ArrayXd values;
  double support_end = 0.0;   // largest theta with |g| above noise
  int smoothness_claim = 0;   // caller-asserted C^k

  double spacing() const;
  int size() const { return static_cast<int>(theta.size()); }

  /// Samples fn on n_points uniform nodes; detects support_end from the data.
  static SampledZonalFunction from_function(const std::function<double(double)>& fn,
                                            int n_points, int smoothness_claim);
  /// Validates a (theta, values) pair loaded from CSV: uniform spacing,
  /// endpoints 0 and pi.
  static SampledZonalFunction from_grid(const Eigen::ArrayXd& theta,
                                        const Eigen::ArrayXd& values, int smoothness_claim);
};

// Built-in parametric kernels.
SampledZonalFunction sample_truncated_power(double t, double delta, int n_points);
SampledZonalFunction sample_smooth_bump(double t0, int power, int n_points);
SampledZonalFunction sample_power_series(const std::vector<double>& coeffs, int n_points);

/// Gegenbauer coefficients b_n (weighted projections) and a_n = b_n / h_n.
/// lambda = 0 uses the circle convention: cos(n theta) basis, h = pi/2
/// (pi for n = 0).
struct CoefficientSeries {
  int lambda = 0;
  int n_max = 0;
  std::vector<double> b;
  std::vector<double> a;
  std::vector<double> error_estimates;
};

/// b_n by composite quadrature of g against the weighted basis on the sample
/// grid. Requires >= 8 sample points per oscillation period of the n_max-th
/// basis function.
CoefficientSeries coefficients_by_quadrature(const SampledZonalFunction& g, int lambda,
                                             int n_max);

/// b_n = ((-1)^{lambda+2} / (lambda+1)!) int_0^pi F_n^lambda(tau)
///       g^{(lambda+2)}(tau) dtau, the derivative taken by strided
/// finite differences of the samples. Requires g zero near pi.
CoefficientSeries coefficients_via_f(const SampledZonalFunction& g, int lambda, int n_max);

/// Double moving average G_h(x) = h^{-2} int_0^h int_0^h g(x+u+v) du dv with
/// g extended by zero beyond pi; h is snapped to a whole number of grid
/// steps. Exact on affine stretches; raises the smoothness claim by two.
SampledZonalFunction mollify(const SampledZonalFunction& g, double h);

enum class PdClass { strictly_positive_definite, positive_definite, inconclusive, violated };

std::string to_string(PdClass c);

struct PolyaChecks {
  bool smoothness_ok = false;            // (i)  C^lambda, by stride-refinement proxy
  bool support_ok = false;               // (ii) supp(g) inside [0, pi)
  bool derivative_at_zero_finite = false;  // (iii) one-sided g^{(lambda+1)}(0)
  bool convexity_ok = false;             // (iv) midpoint convexity of (-1)^lambda g^(lambda)
  bool strictness_ok = false;            // psi not (piecewise) linear
  double support_end_detected = 0.0;
  double one_sided_derivative_at_zero = 0.0;
  double convexity_worst_gap = 0.0;      // most negative midpoint gap found
  double affine_deviation = 0.0;         // relative Linf distance from affine fit
};

struct PolyaVerdict {
  int lambda = 0;
  PolyaChecks checks;
  PdClass classification = PdClass::violated;
  std::vector<double> coefficient_evidence;  // a_n up to evidence_n_max
  int evidence_n_max = 0;
  std::string caveat;
};

/// Hypothesis checks of the Polya-type criterion plus the strictness test;
/// lambda = 0 takes the circle route, where strictness means "not piecewise
/// linear with finitely many (<= 16) pieces".
PolyaVerdict check_criterion(const SampledZonalFunction& g, int lambda, int evidence_n_max = 64);

enum class SeriesClass { not_positive_definite, positive_definite, strictly_positive_definite };

std::string to_string(SeriesClass c);

struct SeriesClassification {
  bool schoenberg_nonnegative = false;  // all computed a_n >= 0 (within noise)
  bool xu_all_positive = false;         // all computed a_n > 0
  int cms_even_positive = 0;            // positive even-index coefficients seen
  int cms_odd_positive = 0;             // positive odd-index coefficients seen
  SeriesClass classification = SeriesClass::not_positive_definite;
  std::string caveat;                   // all infinite-family claims are truncated
};

SeriesClassification classify_pd(const CoefficientSeries& series);

struct AllSpheresVerdict {
  bool positive_definite_all_spheres = false;
  int first_negative_index = -1;
  double coefficient_sum = 0.0;
};

/// Power-series test: f(cos theta) = sum a_k (cos theta)^k is positive
/// definite on every sphere iff all a_k >= 0 and sum a_k converges
/// (partial-sum boundedness over the supplied length).
AllSpheresVerdict all_spheres_check(const std::vector<double>& power_series_coeffs);

// Finite differences on uniform grids (Fornberg weights).
std::vector<double> fornberg_weights(int order, const std::vector<double>& xs, double x0);

/// order-th derivative of uniformly sampled values, stencil spacing
/// stride * spacing, one-sided near the left edge, zero-extension on the
/// right. Accumulation in long double.
Eigen::ArrayXd derivative_on_grid(const Eigen::ArrayXd& values, double spacing, int order,
                                  int stride, int accuracy = 6);

}  // namespace zonalpd
