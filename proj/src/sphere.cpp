#include "zonalpd/sphere.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace zonalpd {

ZonalKernel truncated_power_kernel(double t, double delta) {
  if (!(t > 0.0)) throw std::invalid_argument("truncated_power_kernel: t must be > 0");
  if (!(delta > 0.0)) throw std::invalid_argument("truncated_power_kernel: delta must be > 0");
  ZonalKernel k;
  k.name = "trunc-power(t=" + std::to_string(t) + ",delta=" + std::to_string(delta) + ")";
  k.support = t;
  k.g = [t, delta](double th) { return th < t ? std::pow(t - th, delta) : 0.0; };
  return k;
}

double geodesic_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size()) throw std::invalid_argument("geodesic_distance: dimension mismatch");
  if (std::abs(x.norm() - 1.0) > 1e-9 || std::abs(y.norm() - 1.0) > 1e-9)
    throw std::domain_error("geodesic_distance: inputs must be unit vectors");
  double ip = x.dot(y);
  if (std::abs(ip) > 1.0 + 1e-9) throw std::domain_error("geodesic_distance: inner product out of range");
  ip = std::clamp(ip, -1.0, 1.0);
  return std::acos(ip);
}

SpherePointSet random_points(int d, int count, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("random_points: d must be >= 2");
  if (count < 1) throw std::invalid_argument("random_points: count must be >= 1");
  std::mt19937_64 rng(seed);
  auto uniform01 = [&rng]() {
    // 53-bit mantissa, strictly positive
    double u;
    do {
      u = static_cast<double>(rng() >> 11) * 0x1p-53;
    } while (u <= 0.0);
    return u;
  };
  bool have_spare = false;
  double spare = 0.0;
  auto normal = [&]() {
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare = r * std::sin(a);
    have_spare = true;
    return r * std::cos(a);
  };

  SpherePointSet set;
  set.d = d;
  set.points.resize(count, d);
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd v(d);
    double norm;
    do {
      for (int j = 0; j < d; ++j) v(j) = normal();
      norm = v.norm();
    } while (norm < 1e-8);
    set.points.row(i) = v / norm;
  }
  return set;
}

Eigen::MatrixXd gram(const SpherePointSet& points, const ZonalKernel& kernel) {
  const int n = points.count();
  const double diag = kernel(0.0);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = diag;
    for (int j = i + 1; j < n; ++j) {
      const double v = kernel(geodesic_distance(points.points.row(i), points.points.row(j)));
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

std::string to_string(Definiteness d) {
  switch (d) {
    case Definiteness::positive_definite: return "positive_definite";
    case Definiteness::positive_semidefinite: return "positive_semidefinite";
    case Definiteness::indefinite: return "indefinite";
  }
  return "?";
}

PdCertificate certify_pd(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("certify_pd: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  PdCertificate cert;
  cert.min_eigenvalue = es.eigenvalues().minCoeff();
  cert.threshold = 1e-10 * m.trace() / static_cast<double>(m.rows());
  if (cert.min_eigenvalue > cert.threshold)
    cert.classification = Definiteness::positive_definite;
  else if (cert.min_eigenvalue > -cert.threshold)
    cert.classification = Definiteness::positive_semidefinite;
  else
    cert.classification = Definiteness::indefinite;
  return cert;
}

InterpolationResult interpolate(const SpherePointSet& points, const Eigen::VectorXd& values,
                                const ZonalKernel& kernel) {
  const int n = points.count();
  if (values.size() != n) throw std::invalid_argument("interpolate: values/points size mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (geodesic_distance(points.points.row(i), points.points.row(j)) <= 1e-8)
        throw std::runtime_error("interpolate: poisedness failure, duplicate nodes " +
                                 std::to_string(i) + " and " + std::to_string(j));

  const Eigen::MatrixXd m = gram(points, kernel);
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  InterpolationResult res;
  if (llt.info() != Eigen::Success) {
    const auto cert = certify_pd(m);
    throw std::runtime_error("interpolate: factorization failed, min eigenvalue " +
                             std::to_string(cert.min_eigenvalue) +
                             " (kernel not strictly positive definite on this set)");
  }
  res.weights = llt.solve(values);
  res.weights += llt.solve(values - m * res.weights);  // one refinement step
  res.residual_inf = (m * res.weights - values).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  res.min_eigenvalue = es.eigenvalues().minCoeff();
  return res;
}

double evaluate(const SpherePointSet& points, const Eigen::VectorXd& weights,
                const ZonalKernel& kernel, const Eigen::VectorXd& query) {
  if (weights.size() != points.count())
    throw std::invalid_argument("evaluate: weights/points size mismatch");
  double s = 0.0;
  for (int j = 0; j < points.count(); ++j)
    s += weights(j) * kernel(geodesic_distance(query, points.points.row(j)));
  return s;
}

}  // namespace zonalpd
