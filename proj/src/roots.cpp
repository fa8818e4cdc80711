#include "zonalpd/roots.hpp"

#include <cmath>

namespace zonalpd {

std::optional<BracketedRoot> bracket_and_bisect(const std::function<double(double)>& f,
                                                double lo, double hi, double step,
                                                double width_tol) {
  double a = lo + step;
  double fa = f(a);
  double b = a;
  bool found = false;
  while (b < hi) {
    b = std::min(b + step, hi);
    const double fb = f(b);
    if (fa == 0.0) {
      return BracketedRoot{a, a, a, 0.0};
    }
    if (fa * fb <= 0.0) {
      found = true;
      // bisect [a, b]
      double xa = a, xb = b, va = fa;
      while (xb - xa > width_tol) {
        const double m = 0.5 * (xa + xb);
        const double vm = f(m);
        if (vm == 0.0) {
          xa = xb = m;
          break;
        }
        if (va * vm < 0.0)
          xb = m;
        else {
          xa = m;
          va = vm;
        }
      }
      const double root = 0.5 * (xa + xb);
      return BracketedRoot{a, b, root, std::abs(f(root))};
    }
    a = b;
    fa = fb;
  }
  (void)found;
  return std::nullopt;
}

}  // namespace zonalpd
