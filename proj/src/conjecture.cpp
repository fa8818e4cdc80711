#include "zonalpd/conjecture.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <stdexcept>

#include "zonalpd/io.hpp"
#include "zonalpd/roots.hpp"
#include "zonalpd/truncated_power.hpp"

namespace zonalpd {

namespace {

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

std::string pick_evaluator(double lambda, double delta) {
  if (lambda < 1e-12) return "cosine0";
  if (near_integer(lambda)) {
    if (near_integer(delta) && delta >= 1.0 - 1e-12 && delta <= 4.0 + 1e-12) return "closed";
    return "cosine-series";
  }
  return "quadrature";
}

struct NScanRow {
  double min_value = std::numeric_limits<double>::infinity();
  double argmin_t = 0.0;
  std::vector<Witness> witnesses;
};

// Leading grid points where |F| has not yet risen above the absolute noise
// 1e-13 are the series-accuracy floor: F ~ t^{delta+2 lambda+1} there, the
// integrand is positive before the first Gegenbauer zero, and the computed
// value carries no usable sign. They are excluded from minima and witnesses.
constexpr double kNoiseFloor = 1e-13;

NScanRow scan_one_n(double lambda, double delta, int n, int t_points, double t_floor) {
  NScanRow row;
  bool past_floor = false;
  for (int i = 1; i <= t_points; ++i) {
    const double t = std::numbers::pi * i / t_points;
    if (t < t_floor) continue;
    const double v = f_eval({lambda, delta, n, t});
    if (!past_floor) {
      if (std::abs(v) < kNoiseFloor) continue;
      past_floor = true;
    }
    if (v < row.min_value) {
      row.min_value = v;
      row.argmin_t = t;
    }
    if (v <= 0.0) row.witnesses.push_back({n, t, v});
  }
  return row;
}

}  // namespace

ScanReport scan_positivity(double lambda, double delta, int n_max, int t_points) {
  if (t_points < 1) throw std::invalid_argument("scan_positivity: t_points must be >= 1");
  ScanReport rep;
  rep.lambda = lambda;
  rep.delta = delta;
  rep.n_max = n_max;
  rep.t_points = t_points;
  rep.evaluator = pick_evaluator(lambda, delta);

  std::vector<NScanRow> rows(n_max + 1);
  parallel_for(n_max + 1, [&](int n) {
    rows[n] = scan_one_n(lambda, delta, n, t_points, rep.t_floor);
  });

  rep.min_value = std::numeric_limits<double>::infinity();
  for (int n = 0; n <= n_max; ++n) {
    const NScanRow& row = rows[n];
    if (row.min_value < rep.min_value) {
      rep.min_value = row.min_value;
      rep.argmin_n = n;
      rep.argmin_t = row.argmin_t;
    }
    rep.witness_count += static_cast<long>(row.witnesses.size());
    for (const Witness& w : row.witnesses)
      if (rep.witnesses.size() < ScanReport::kMaxStoredWitnesses) rep.witnesses.push_back(w);
  }
  rep.all_positive = rep.witness_count == 0;
  return rep;
}

WitnessSearchResult find_negativity_witness(double lambda, double delta, int n_max,
                                            int t_points) {
  WitnessSearchResult res;
  res.t_points = t_points;
  res.min_value_seen = std::numeric_limits<double>::infinity();
  for (int n = 0; n <= n_max; ++n) {
    const NScanRow row = scan_one_n(lambda, delta, n, t_points, 1e-6);
    res.n_searched = n;
    res.min_value_seen = std::min(res.min_value_seen, row.min_value);
    if (row.min_value < -1e-10) {
      res.witness = Witness{n, row.argmin_t, row.min_value};
      return res;
    }
  }
  return res;
}

double lambda_n_function(int n, double u) {
  if (n < 1) throw std::invalid_argument("lambda_n_function: n must be >= 1");
  const double h1 = h_delta_eval(3, u, 1);
  const double h2 = h_delta_eval(3, u, 2);
  const double h3 = h_delta_eval(3, u, 3);
  const double a = 3.0 - 1.0 / (n + 2.0);
  const double b = 1.0 - 1.0 / (n + 1.0);
  return u * u * h3 - a * b * (u * h2 - b * h1);
}

double h_n_kernel_d8(int n, double xi, double eta, double u) {
  if (!(xi > 0.0 && xi < 2.0 && eta > 0.0 && eta < 2.0))
    throw std::invalid_argument("h_n_kernel_d8: xi, eta must lie in (0, 2)");
  const double h1 = h_delta_eval(3, u, 1);
  const double h2 = h_delta_eval(3, u, 2);
  const double h3 = h_delta_eval(3, u, 3);
  const double c = (3.0 * n + 5.0 + eta) * (n + xi + eta) / ((n + 2.0) * (n + 1.0 + eta));
  return u * u * h3 - c * u * h2 + c * (n + xi + eta) / (n + 1.0 + eta) * h1;
}

std::vector<RootCertificate> reproduce_roots() {
  struct Named {
    const char* name;
    const char* target;
    double paper;
    std::function<double(double)> f;
  };
  const auto h = [](int d, double u, int r) { return h_delta_eval(d, u, r); };
  const std::vector<Named> targets = {
      {"u1", "k(u) = (4/3) u h2'' - h2'", 1.86321,
       [h](double u) { return 4.0 / 3.0 * u * h(2, u, 2) - h(2, u, 1); }},
      {"u0_d8", "u h3'' - h3'/2", 2.99521,
       [h](double u) { return u * h(3, u, 2) - 0.5 * h(3, u, 1); }},
      {"u_star", "Lambda_9(u)", 3.63661, [](double u) { return lambda_n_function(9, u); }},
      {"u0_d6", "h2''", 3.68542, [h](double u) { return h(2, u, 2); }},
      {"u2", "h3''", 4.23573, [h](double u) { return h(3, u, 2); }},
      {"u3", "h3'''", 7.15125, [h](double u) { return h(3, u, 3); }},
  };
  std::vector<RootCertificate> certs;
  for (const auto& tgt : targets) {
    auto r = bracket_and_bisect(tgt.f, 0.0, 20.0, 0.01, 1e-12);
    if (!r)
      throw std::runtime_error(std::string("reproduce_roots: no sign change of ") + tgt.target +
                               " in (0, 20]");
    certs.push_back({tgt.name, tgt.target, r->lo, r->hi, r->root, r->residual, tgt.paper});
  }
  return certs;
}

int lambda_n_monotonicity_violations(int n_max, double u_lo, double u_hi, int u_points) {
  int violations = 0;
  for (int i = 1; i <= u_points; ++i) {
    const double u = u_lo + (u_hi - u_lo) * i / u_points;
    double prev = lambda_n_function(1, u);
    for (int n = 2; n <= n_max; ++n) {
      const double cur = lambda_n_function(n, u);
      if (cur > prev + 1e-13) ++violations;
      prev = cur;
    }
  }
  return violations;
}

OverlapTable overlap_check_d8(int n_max) {
  if (n_max < 20) throw std::invalid_argument("overlap_check_d8: n_max must be >= 20");
  OverlapTable table;
  // sign-change point of Lambda_9, refined here rather than hard-coded
  auto r = bracket_and_bisect([](double u) { return lambda_n_function(9, u); }, 0.0, 20.0, 0.01,
                              1e-12);
  if (!r) throw std::runtime_error("overlap_check_d8: Lambda_9 sign change not found");
  table.u_star = r->root;

  table.rows.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const double cs = std::cos(std::numbers::pi / (n + 1.0));
    const double inside = 1.0 - (1.0 - 6.0 / ((n + 1.0) * (n + 2.0))) * cs * cs;
    const double bound = std::sqrt(std::max(0.0, inside));
    const double ratio = table.u_star / n;
    table.rows.push_back({n, bound, ratio, bound > ratio});
  }
  for (int n = n_max; n >= 1; --n) {
    if (!table.rows[n - 1].overlap) break;
    table.first_persistent_overlap_n = n;
  }
  return table;
}

std::vector<CurveResult> small_n_plots(int lambda, const std::vector<int>& n_set,
                                       const std::string& out_dir, int t_points) {
  if (lambda < 1) throw std::invalid_argument("small_n_plots: lambda must be >= 1");
  std::vector<CurveResult> results;
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  for (int n : n_set) {
    std::vector<double> ts(t_points), vs(t_points);
    CurveResult cr{n, std::numeric_limits<double>::infinity(), 0.0, ""};
    bool past_floor = false;
    for (int i = 1; i <= t_points; ++i) {
      const double t = std::numbers::pi * i / t_points;
      const double v = f_closed(lambda, n, t);
      ts[i - 1] = t;
      vs[i - 1] = v;
      if (!past_floor && std::abs(v) >= kNoiseFloor) past_floor = true;
      if (past_floor && t >= 1e-6 && v < cr.min_value) {
        cr.min_value = v;
        cr.argmin_t = t;
      }
    }
    if (!out_dir.empty()) {
      cr.path = out_dir + "/curve_lambda" + std::to_string(lambda) + "_n" + std::to_string(n) +
                ".csv";
      write_curve_csv(cr.path, "t,value", ts, vs);
    }
    results.push_back(cr);
  }
  return results;
}

}  // namespace zonalpd
