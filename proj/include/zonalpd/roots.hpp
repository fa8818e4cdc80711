#pragma once

#include <functional>
#include <optional>

namespace zonalpd {

struct BracketedRoot {
  double lo = 0.0;
  double hi = 0.0;
  double root = 0.0;
  double residual = 0.0;
};

/// First sign change of f on (lo, hi] found by a uniform scan with the given
/// step, refined by bisection to interval width <= width_tol.
std::optional<BracketedRoot> bracket_and_bisect(const std::function<double(double)>& f,
                                                double lo, double hi, double step = 0.01,
                                                double width_tol = 1e-12);

}  // namespace zonalpd
