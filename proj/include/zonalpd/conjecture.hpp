#pragma once

#include <optional>
#include <string>
#include <vector>

namespace zonalpd {

struct Witness {
  int n;
  double t;
  double value;
};

/// Result of a positivity scan of F_n^{lambda,delta}(t) over n = 0..n_max and
/// a uniform t grid on (0, pi].
struct ScanReport {
  double lambda = 0.0;
  double delta = 0.0;
  int n_max = 0;
  int t_points = 0;
  double t_floor = 1e-6;          // grid points below this are excluded
  double min_value = 0.0;
  int argmin_n = 0;
  double argmin_t = 0.0;
  bool all_positive = true;
  long witness_count = 0;          // total non-positive hits
  std::vector<Witness> witnesses;  // at most kMaxStoredWitnesses of them
  std::string evaluator;

  static constexpr int kMaxStoredWitnesses = 1000;
};

ScanReport scan_positivity(double lambda, double delta, int n_max, int t_points);

struct WitnessSearchResult {
  std::optional<Witness> witness;  // empty: not found in range
  int n_searched = 0;
  int t_points = 0;
  double min_value_seen = 0.0;
};

/// Searches n = 0, 1, ... for the first grid negativity F < -1e-10 and
/// returns that n's most negative grid point. The search is honest about
/// absence: no witness in range is a result, not an error.
WitnessSearchResult find_negativity_witness(double lambda, double delta, int n_max, int t_points);

struct RootCertificate {
  std::string name;
  std::string target_function;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double root = 0.0;
  double residual = 0.0;
  double paper_value = 0.0;
};

/// Reproduces the six proof constants of the d = 6 and d = 8 cases by
/// bracket scan (step 0.01 on (0, 20]) and bisection.
std::vector<RootCertificate> reproduce_roots();

/// Lambda_n(u) = u^2 h_3'''(u)
///   - (3 - 1/(n+2)) (1 - 1/(n+1)) [u h_3''(u) - (1 - 1/(n+1)) h_3'(u)].
double lambda_n_function(int n, double u);

/// H_n(u) = u^2 h_3'''(u)
///   - (3n+5+eta)(n+xi+eta) / ((n+2)(n+1+eta)) u h_3''(u)
///   + (3n+5+eta)(n+xi+eta)^2 / ((n+2)(n+1+eta)^2) h_3'(u).
double h_n_kernel_d8(int n, double xi, double eta, double u);

/// Grid count of violations of "Lambda_n(u) is decreasing in n" on
/// u in (u_lo, u_hi]; reported, never assumed.
int lambda_n_monotonicity_violations(int n_max, double u_lo, double u_hi, int u_points);

struct OverlapRow {
  int n;
  double sin_t_star_lower_bound;
  double u_star_over_n;
  bool overlap;
};

struct OverlapTable {
  std::vector<OverlapRow> rows;          // n = 1..n_max
  int first_persistent_overlap_n = -1;   // first n from which overlap holds through n_max
  double u_star = 0.0;
};

/// Per-n comparison of the d = 8 lower bound on sin(t_n*) against u*/n.
OverlapTable overlap_check_d8(int n_max);

struct CurveResult {
  int n;
  double min_value;
  double argmin_t;
  std::string path;  // empty when no file was written
};

/// Emits (t, F_n^lambda(t)) curves as two-column CSV into out_dir (skipped if
/// empty) and returns each curve's minimum over the floored grid.
std::vector<CurveResult> small_n_plots(int lambda, const std::vector<int>& n_set,
                                       const std::string& out_dir, int t_points = 2048);

}  // namespace zonalpd
