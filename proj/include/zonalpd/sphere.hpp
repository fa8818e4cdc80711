#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>

namespace zonalpd {

/// Finite set of unit vectors in R^d, one per row.
struct SpherePointSet {
  int d = 0;
  Eigen::MatrixXd points;

  int count() const { return static_cast<int>(points.rows()); }
};

/// Zonal kernel g(theta) on [0, pi]. support < 0 means global support.
struct ZonalKernel {
  std::string name;
  double support = -1.0;
  std::function<double(double)> g;

  double operator()(double theta) const { return g(theta); }
};

/// The prototype kernel g(theta) = (t - theta)_+^delta.
ZonalKernel truncated_power_kernel(double t, double delta);

/// arccos of the clamped inner product. Inner products outside [-1, 1] by
/// more than 1e-9 raise a domain error; smaller excursions are clamped.
double geodesic_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Uniform points on S^{d-1} from normalized Gaussian samples. The Gaussian
/// source is an explicit Box-Muller over mt19937_64 so that identical seeds
/// give identical points on every platform.
SpherePointSet random_points(int d, int count, std::uint64_t seed);

/// Symmetric matrix [g(d(x_i, x_j))]; the diagonal is g(0) exactly.
Eigen::MatrixXd gram(const SpherePointSet& points, const ZonalKernel& kernel);

enum class Definiteness { positive_definite, positive_semidefinite, indefinite };

std::string to_string(Definiteness d);

struct PdCertificate {
  Definiteness classification = Definiteness::indefinite;
  double min_eigenvalue = 0.0;
  double threshold = 0.0;  // 1e-10 * trace / n
};

PdCertificate certify_pd(const Eigen::MatrixXd& m);

struct InterpolationResult {
  Eigen::VectorXd weights;
  double residual_inf = 0.0;
  double min_eigenvalue = 0.0;
};

/// Solves [g(d(x_i,x_j))] w = y by Cholesky with one refinement step.
/// Throws std::runtime_error on poisedness failures: duplicate nodes
/// (min geodesic separation <= 1e-8) or a factorization breakdown, the
/// latter reporting the minimum eigenvalue.
InterpolationResult interpolate(const SpherePointSet& points, const Eigen::VectorXd& values,
                                const ZonalKernel& kernel);

/// s(query) = sum_j w_j g(d(query, x_j)).
double evaluate(const SpherePointSet& points, const Eigen::VectorXd& weights,
                const ZonalKernel& kernel, const Eigen::VectorXd& query);

}  // namespace zonalpd
