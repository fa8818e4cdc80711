#include "zonalpd/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace zonalpd {

namespace {

// Newton iteration on the Legendre polynomial, exploiting node symmetry.
std::pair<std::vector<double>, std::vector<double>> make_rule(int p) {
  std::vector<double> x(p), w(p);
  const int m = (p + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (p + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < p; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1);
      }
      pp = p * (z * p0 - p1) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p0 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i] = -z;
    x[p - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[p - 1 - i] = w[i];
  }
  return {x, w};
}

constexpr int kPanelOrder = 15;
constexpr int kMaxPanels = 1 << 21;

double panel(const std::function<double(double)>& f, double a, double b,
             const std::vector<double>& x, const std::vector<double>& w) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(c + h * x[i]);
  return s * h;
}

}  // namespace

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int p) {
  if (p < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, make_rule(p)).first;
  return it->second;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol) {
  QuadratureResult res;
  if (a == b) return res;
  const auto& [x, w] = gauss_legendre(kPanelOrder);
  const double total_len = std::abs(b - a);
  const double min_len = total_len * 0x1p-48;

  struct Seg {
    double a, b, whole;
  };
  std::vector<Seg> stack;
  stack.push_back({a, b, panel(f, a, b, x, w)});

  while (!stack.empty()) {
    const Seg s = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (s.a + s.b);
    const double left = panel(f, s.a, mid, x, w);
    const double right = panel(f, mid, s.b, x, w);
    const double refined = left + right;
    const double err = std::abs(refined - s.whole);
    // below the rounding floor of the panel values, refinement cannot help
    const double floor = 8.0 * 0x1p-52 * (std::abs(left) + std::abs(right) + std::abs(s.whole));
    const double local_tol = std::max(abs_tol * std::abs(s.b - s.a) / total_len, floor);
    if (err <= local_tol || std::abs(s.b - s.a) <= min_len ||
        res.panels >= kMaxPanels) {
      res.value += refined;
      res.error_estimate += err;
      res.panels += 2;
      if (err > local_tol) res.converged = false;
    } else {
      stack.push_back({s.a, mid, left});
      stack.push_back({mid, s.b, right});
    }
  }
  return res;
}

}  // namespace zonalpd
