#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zonalpd/gegenbauer.hpp"
#include "zonalpd/truncated_power.hpp"

using namespace zonalpd;

namespace {
constexpr double kPi = std::numbers::pi;

// long-double series oracle for h_delta^{(r)}, independent of the library's
// branch selection
long double h_series_oracle(double delta, double u, int order) {
  long double s = 0.0L;
  for (int j = 0; j <= 80; ++j) {
    const int tj = 2 * j;
    if (tj < order) continue;
    long double fall = 1.0L;
    for (int i = 0; i < order; ++i) fall *= tj - i;
    const long double mag =
        std::exp(static_cast<long double>(std::lgamma(delta + 2.0)) -
                 std::lgamma(static_cast<long double>(tj) + delta + 3.0L));
    s += ((j % 2 == 0) ? 1.0L : -1.0L) * fall * mag * std::pow(static_cast<long double>(u), tj - order);
  }
  return s;
}
}  // namespace

TEST_CASE("f_quadrature basics") {
  // int_0^{pi/2} (pi/2 - th)^2 sin^2 th dth = pi^3/48 - pi/8
  const double exact = kPi * kPi * kPi / 48.0 - kPi / 8.0;
  CHECK(f_quadrature({1.0, 2.0, 0, kPi / 2}) == doctest::Approx(exact).epsilon(1e-12));

  // vanishing integration range
  CHECK(std::abs(f_quadrature({2.0, 3.0, 4, 1e-8})) < 1e-40);

  CHECK(f_quadrature({1.0, 2.0, 4, 2.0}) == doctest::Approx(f_closed(1, 4, 2.0)).epsilon(1e-9));
}

TEST_CASE("f_closed against the displayed coefficient forms") {
  SUBCASE("lambda=2, n=1: e coefficients (4, -6, 2)") {
    const double t = 1.0;
    const double e[3] = {4.0, -6.0, 2.0};
    double s = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double m = 1.0 + 2 * k;
      s += e[k] / (m * m * m * m) * (std::cos(m * t) - (1.0 - m * m * t * t / 2.0));
    }
    CHECK(f_closed(2, 1, t) == doctest::Approx(0.75 * s).epsilon(1e-12));
  }

  SUBCASE("lambda=3 matches quadrature") {
    CHECK(f_closed(3, 2, 1.3) == doctest::Approx(f_quadrature({3.0, 4.0, 2, 1.3})).epsilon(1e-9));
  }

  SUBCASE("lambda=1, n=1, t=pi via I(t,1) - I(t,3)") {
    auto I = [](double t, double m) { return t * t * t * (m * t - std::sin(m * t)) / std::pow(m * t, 3); };
    CHECK(f_closed(1, 1, kPi) == doctest::Approx(I(kPi, 1.0) - I(kPi, 3.0)).epsilon(1e-12));
  }

  CHECK_THROWS_AS(f_closed(0, 1, 1.0), std::invalid_argument);
}

TEST_CASE("f_power generalizes f_closed and handles non-integer delta") {
  for (int lambda : {1, 2, 3})
    for (int n : {0, 1, 5, 17})
      for (double t : {0.3, 1.7, kPi})
        CHECK(f_power(lambda, lambda + 1.0, n, t) ==
              doctest::Approx(f_closed(lambda, n, t)).epsilon(1e-12));

  CHECK(f_power(2, 2.5, 3, 2.2) == doctest::Approx(f_quadrature({2.0, 2.5, 3, 2.2})).epsilon(1e-9));
  CHECK(f_power(1, 1.0, 5, 2.0) == doctest::Approx(f_quadrature({1.0, 1.0, 5, 2.0})).epsilon(1e-9));
}

TEST_CASE("lambda = 0 structure") {
  CHECK(std::abs(f_lambda0(2, kPi)) < 1e-12);   // zero at t = 2 pi / 2
  CHECK(f_lambda0(1, kPi) > 0.0);               // 2 pi / 1 > pi, no interior zero
  CHECK(f_lambda0(3, 1.0) == doctest::Approx((1.0 - std::cos(3.0)) / 9.0).epsilon(1e-14));
  // consistency with the generic lambda = 0 evaluator
  for (int n : {1, 2, 7})
    for (double t : {0.4, 2.0, kPi})
      CHECK(f_lambda0(n, t) == doctest::Approx(f_lambda0_delta(n, 1.0, t)).epsilon(1e-12));
}

TEST_CASE("g_normalized and its index convention") {
  // lambda = delta: C_n^lambda(1) G_n^{lambda,lambda} = F_n^lambda
  for (int lambda : {1, 2, 3})
    for (int n : {0, 2, 9}) {
      const double t = 1.9;
      const double g = g_normalized({static_cast<double>(lambda), static_cast<double>(lambda), n, t});
      CHECK(value_at_one({static_cast<double>(lambda), n}) * g ==
            doctest::Approx(f_closed(lambda, n, t)).epsilon(1e-11));
    }

  // n = 0: G = F (degree-zero polynomial is 1)
  CHECK(g_normalized({2.0, 1.0, 0, 1.1}) ==
        doctest::Approx(f_eval({2.0, 2.0, 0, 1.1})).epsilon(1e-12));

  // against quadrature with the shifted exponent
  CHECK(g_normalized({1.0, 2.0, 3, 2.0}) ==
        doctest::Approx(f_quadrature({1.0, 3.0, 3, 2.0}) / value_at_one({1.0, 3})).epsilon(1e-10));
}

TEST_CASE("h_delta evaluation") {
  CHECK(h_delta_eval(2.0, 0.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(h_delta_eval(2.0, 1e-12) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(h_delta_eval(1.0, 0.0) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(h_delta_eval(3.0, 0.0) == doctest::Approx(0.2).epsilon(1e-15));

  // d=8 proof display for h'' at u=5
  const double u = 5.0;
  const double expect = 24.0 * (u * (u * u - 20.0) - 10.0 * u * std::cos(u) - (u * u - 30.0) * std::sin(u)) /
                        std::pow(u, 7);
  CHECK(h_delta_eval(3.0, 5.0, 2) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(h_delta_eval(3.0, 5.0, 2) == doctest::Approx(0.0018500411454022639).epsilon(1e-13));

  // small-argument series keeps full precision where the closed form cancels
  CHECK(h_delta_eval(2.0, 0.001, 1) ==
        doctest::Approx(static_cast<double>(h_series_oracle(2.0, 0.001, 1))).epsilon(1e-14));

  SUBCASE("series/closed-form seam is continuous") {
    for (int d = 0; d <= 3; ++d)
      for (int r = 0; r <= 3; ++r) {
        const double lo = h_delta_eval(d, 0.5 - 1e-9, r);
        const double hi = h_delta_eval(d, 0.5 + 1e-9, r);
        CHECK(lo == doctest::Approx(hi).epsilon(1e-11));
        CHECK(h_delta_eval(d, 0.4, r) ==
              doctest::Approx(static_cast<double>(h_series_oracle(d, 0.4, r))).epsilon(1e-13));
        CHECK(h_delta_eval(d, 3.3, r) ==
              doctest::Approx(static_cast<double>(h_series_oracle(d, 3.3, r))).epsilon(1e-12));
      }
  }

  SUBCASE("non-integer delta via quadrature agrees with the series") {
    for (double u2 : {0.7, 1.9, 4.2})
      CHECK(h_delta_eval(2.5, u2) ==
            doctest::Approx(static_cast<double>(h_series_oracle(2.5, u2, 0))).epsilon(1e-11));
  }

  CHECK_THROWS_AS(h_delta_eval(2.5, 8.0, 1), std::invalid_argument);
}

TEST_CASE("reduction identity residuals") {
  CHECK(recursion_check(1, 1.0, 2, 1.5) < 1e-9);
  CHECK(recursion_check(2, 2.0, 0, kPi) < 1e-9);
  CHECK(recursion_check(3, 3.0, 5, 0.7) < 1e-9);
  for (int lambda : {1, 2, 3})
    for (double delta : {0.0, 1.0, 2.0, 3.0})
      for (int n : {0, 1, 8, 20})
        CHECK(recursion_check(lambda, delta, n, 1.1) < 1e-9);
}

TEST_CASE("sup norm decay") {
  CHECK(sup_norm_f(1, 1, 512) > 0.0);

  SUBCASE("doubling slope is about -3") {
    double slope_num = 0.0, slope_den = 0.0, xb = 0.0, yb = 0.0;
    const int ns[5] = {32, 64, 128, 256, 512};
    double xs[5], ys[5];
    for (int i = 0; i < 5; ++i) {
      xs[i] = std::log(ns[i]);
      ys[i] = std::log(sup_norm_f(1, ns[i], 512));
      xb += xs[i] / 5;
      yb += ys[i] / 5;
    }
    for (int i = 0; i < 5; ++i) {
      slope_num += (xs[i] - xb) * (ys[i] - yb);
      slope_den += (xs[i] - xb) * (xs[i] - xb);
    }
    CHECK(slope_num / slope_den == doctest::Approx(-3.0).epsilon(0.15));
  }

  SUBCASE("grid max consistent with quadrature-based max") {
    double mq = 0.0;
    for (int i = 1; i <= 256; ++i) {
      const double t = kPi * i / 256;
      mq = std::max(mq, std::abs(f_quadrature({2.0, 3.0, 64, t})));
    }
    CHECK(sup_norm_f(2, 64, 256) == doctest::Approx(mq).epsilon(1e-8));
  }
}

TEST_CASE("fractional-integral reduction") {
  CHECK(fractional_reduction_check(1.0, 1.0, 2.0, 3, 2.0) < 1e-8);
  CHECK(fractional_reduction_check(2.0, 2.0, 2.0, 1, kPi) == 0.0);  // mu = delta is the identity
  CHECK(fractional_reduction_check(2.0, 2.0, 3.0, 1, kPi) < 1e-8);
}

TEST_CASE("closed form vs quadrature, normalized cross-validation") {
  for (int lambda : {1, 2, 3}) {
    for (int n : {0, 1, 7, 23, 50}) {
      const double scale = sup_norm_f(lambda, n, 256);
      for (int i = 1; i <= 16; ++i) {
        const double t = kPi * i / 16;
        const double a = f_closed(lambda, n, t);
        const double b = f_quadrature({static_cast<double>(lambda), lambda + 1.0, n, t});
        CHECK(std::abs(a - b) <= 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("positivityywhere it is provable directly") {
  // F_0 > 0 on (0, pi]: the integrand is nonnegative
  for (int lambda : {1, 2, 3})
    for (int i = 1; i <= 64; ++i) CHECK(f_closed(lambda, 0, kPi * i / 64) > 0.0);

  // small-t positivity up to sin(t_n^*), t_n^* = arccos(largest-zero bound)
  for (int lambda : {1, 2, 3})
    for (int n : {2, 5, 12, 40}) {
      const double bound = largest_zero_bound(lambda, n, ZeroBoundMethod::elbert);
      const double t_star = std::acos(std::min(1.0, bound));
      const double cap = std::sin(t_star);
      for (int i = 1; i <= 32; ++i) {
        const double t = cap * i / 32;
        if (t < 1e-8) continue;
        CHECK(f_closed(lambda, n, t) > 0.0);
      }
    }
}

TEST_CASE("h derivative decay bound") {
  // |h^{(r)}(u)| * u^{r+2} stays bounded on [1, 1e4]
  for (int d = 1; d <= 3; ++d)
    for (int r = 0; r <= d; ++r) {
      double worst = 0.0;
      for (int i = 0; i <= 400; ++i) {
        const double u = std::pow(10.0, 4.0 * i / 400);
        worst = std::max(worst, std::abs(h_delta_eval(d, u, r)) * std::pow(u, r + 2));
      }
      CHECK(worst < 1e3);
      CHECK(std::isfinite(worst));
    }
}
