#pragma once

#include <functional>
#include <vector>

namespace zonalpd {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
  int panels = 0;
};

/// Nodes and weights of the p-point Gauss-Legendre rule on [-1, 1].
/// Results are cached per p; thread-safe.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int p);

/// Adaptive composite Gauss-Legendre integration of f over [a, b].
/// abs_tol is an absolute error target; panels are bisected dyadically
/// until the whole-vs-halves discrepancy meets the local share of abs_tol.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-12);

}  // namespace zonalpd
