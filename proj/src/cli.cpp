#include "zonalpd/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "zonalpd/conjecture.hpp"
#include "zonalpd/gegenbauer.hpp"
#include "zonalpd/io.hpp"
#include "zonalpd/polya.hpp"
#include "zonalpd/sphere.hpp"
#include "zonalpd/truncated_power.hpp"

namespace zonalpd::cli {

namespace {

using nlohmann::ordered_json;

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

void emit(const ordered_json& j, const std::string& path, std::ostream& out, bool to_stdout) {
  if (!path.empty()) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << j.dump(2) << "\n";
  } else if (to_stdout) {
    out << j.dump(2) << "\n";
  }
}

ordered_json scan_to_json(const ScanReport& rep) {
  ordered_json j;
  j["schema"] = "1";
  j["command"] = "scan";
  j["lambda"] = rep.lambda;
  j["delta"] = rep.delta;
  j["n_max"] = rep.n_max;
  j["t_points"] = rep.t_points;
  j["t_floor"] = rep.t_floor;
  j["evaluator"] = rep.evaluator;
  j["min_value"] = rep.min_value;
  j["argmin_n"] = rep.argmin_n;
  j["argmin_t"] = rep.argmin_t;
  j["all_positive"] = rep.all_positive;
  j["witness_count"] = rep.witness_count;
  ordered_json ws = ordered_json::array();
  for (const auto& w : rep.witnesses) ws.push_back({{"n", w.n}, {"t", w.t}, {"value", w.value}});
  j["witnesses"] = ws;
  return j;
}

ordered_json verdict_to_json(const PolyaVerdict& v, const std::string& kernel_name) {
  ordered_json j;
  j["schema"] = "1";
  j["command"] = "polya";
  j["kernel"] = kernel_name;
  j["lambda"] = v.lambda;
  j["checks"] = {{"smoothness", v.checks.smoothness_ok},
                 {"support", v.checks.support_ok},
                 {"derivative_at_zero_finite", v.checks.derivative_at_zero_finite},
                 {"convexity", v.checks.convexity_ok},
                 {"strictness", v.checks.strictness_ok}};
  j["details"] = {{"support_end", v.checks.support_end_detected},
                  {"one_sided_derivative_at_zero", v.checks.one_sided_derivative_at_zero},
                  {"convexity_worst_gap", v.checks.convexity_worst_gap},
                  {"affine_deviation", v.checks.affine_deviation}};
  j["classification"] = to_string(v.classification);
  j["evidence"] = {{"n_max", v.evidence_n_max}, {"a", v.coefficient_evidence}, {"caveat", v.caveat}};
  return j;
}

int cmd_eval(double lambda, int n, double t, double delta, bool have_delta, bool normalized,
             std::ostream& out) {
  if (!(t > 0.0 && t <= std::numbers::pi + 1e-12))
    throw std::invalid_argument("eval: t must lie in (0, pi]");
  if (!(lambda >= 0.0)) throw std::invalid_argument("eval: lambda must be >= 0");
  if (n < 0) throw std::invalid_argument("eval: n must be >= 0");
  if (normalized) {
    const double d = have_delta ? delta : lambda;  // G convention: exponent delta + 1
    out << format_g17(g_normalized({lambda, d, n, t})) << "\n";
    return 0;
  }
  double d = have_delta ? delta : lambda + 1.0;
  double v;
  if (lambda < 1e-12 && std::abs(d - 1.0) < 1e-12 && n >= 1)
    v = f_lambda0(n, t);
  else if (near_integer(lambda) && lambda >= 1.0 && std::abs(d - (lambda + 1.0)) < 1e-12)
    v = f_closed(static_cast<int>(std::llround(lambda)), n, t);
  else
    v = f_eval({lambda, d, n, t});
  out << format_g17(v) << "\n";
  return 0;
}

int cmd_scan(double lambda, double delta, int n_max, int t_points, const std::string& out_path,
             const std::string& csv_path, const std::string& curves_dir, bool expect_positive,
             std::ostream& out) {
  const ScanReport rep = scan_positivity(lambda, delta, n_max, t_points);
  const bool gate_failed = expect_positive && !rep.all_positive;
  emit(scan_to_json(rep), out_path, out, !gate_failed);
  if (!csv_path.empty()) {
    std::vector<double> ts, vs;
    for (const auto& w : rep.witnesses) {
      ts.push_back(w.t);
      vs.push_back(w.value);
    }
    write_curve_csv(csv_path, "witness t,value", ts, vs);
  }
  if (!curves_dir.empty()) {
    if (!(near_integer(lambda) && lambda >= 1.0 && lambda <= 3.0))
      throw std::invalid_argument("--emit-curves requires integer lambda in {1,2,3}");
    std::vector<int> ns;
    for (int i = 0; i <= std::min(n_max, 50); ++i) ns.push_back(i);
    small_n_plots(static_cast<int>(std::llround(lambda)), ns, curves_dir, t_points);
  }
  return gate_failed ? 1 : 0;
}

int cmd_roots(const std::string& only_name, bool as_json, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  auto certs = reproduce_roots();
  if (!only_name.empty()) {
    std::erase_if(certs, [&](const RootCertificate& c) { return c.name != only_name; });
    if (certs.empty()) throw std::invalid_argument("unknown root name: " + only_name);
  }
  bool ok = true;
  for (const auto& c : certs)
    if (std::abs(c.root - c.paper_value) > 1e-4) ok = false;

  ordered_json j;
  j["schema"] = "1";
  j["command"] = "roots";
  ordered_json arr = ordered_json::array();
  for (const auto& c : certs)
    arr.push_back({{"name", c.name},
                   {"target", c.target_function},
                   {"root", c.root},
                   {"paper_value", c.paper_value},
                   {"deviation", std::abs(c.root - c.paper_value)},
                   {"residual", c.residual},
                   {"bracket", {c.bracket_lo, c.bracket_hi}}});
  j["certificates"] = arr;

  if (!ok) {
    emit(j, out_path, out, false);
    err << "roots: at least one constant deviates from its reference by more than 1e-4\n";
    return 1;
  }
  if (as_json || !out_path.empty()) {
    emit(j, out_path, out, as_json);
    if (as_json) return 0;
  }
  if (!as_json) {
    out << "name      root                     reference   deviation    residual\n";
    for (const auto& c : certs) {
      std::ostringstream line;
      line << c.name;
      for (std::size_t i = c.name.size(); i < 10; ++i) line << ' ';
      line << format_g17(c.root) << "  " << c.paper_value << "     "
           << format_g17(std::abs(c.root - c.paper_value)) << "  " << format_g17(c.residual);
      out << line.str() << "\n";
    }
  }
  return 0;
}

SampledZonalFunction make_kernel_samples(const std::string& spec, double lambda, double t,
                                         double delta, bool have_delta, int power,
                                         bool have_power, const std::string& coeffs_arg,
                                         int samples, std::vector<double>* series_out) {
  if (spec == "trunc-power") {
    const double d = have_delta ? delta : lambda + 1.0;
    return sample_truncated_power(t, d, samples);
  }
  if (spec == "bump") {
    const int p = have_power ? power : static_cast<int>(lambda) + 3;
    return sample_smooth_bump(t, p, samples);
  }
  if (spec == "power-series") {
    std::vector<double> coeffs;
    std::stringstream ss(coeffs_arg);
    std::string cell;
    while (std::getline(ss, cell, ',')) coeffs.push_back(std::stod(cell));
    if (coeffs.empty()) throw std::invalid_argument("power-series kernel needs --coeffs");
    if (series_out) *series_out = coeffs;
    return sample_power_series(coeffs, samples);
  }
  if (spec.rfind("csv:", 0) == 0) {
    const auto [theta, values] = read_kernel_csv(spec.substr(4));
    return SampledZonalFunction::from_grid(theta, values, static_cast<int>(lambda) + 2);
  }
  throw std::invalid_argument("unknown kernel spec: " + spec +
                              " (expect trunc-power | bump | power-series | csv:PATH)");
}

int cmd_polya(const std::string& kernel_spec, int lambda, double t, double delta, bool have_delta,
              int power, bool have_power, const std::string& coeffs_arg, int samples,
              int n_evidence, const std::string& out_path, std::ostream& out) {
  std::vector<double> series;
  const auto g = make_kernel_samples(kernel_spec, lambda, t, delta, have_delta, power, have_power,
                                     coeffs_arg, samples, &series);
  const PolyaVerdict v = check_criterion(g, lambda, n_evidence);
  ordered_json j = verdict_to_json(v, kernel_spec);
  if (!series.empty()) {
    const auto asv = all_spheres_check(series);
    j["all_spheres"] = {{"positive_definite_all_spheres", asv.positive_definite_all_spheres},
                        {"first_negative_index", asv.first_negative_index},
                        {"coefficient_sum", asv.coefficient_sum}};
  }
  emit(j, out_path, out, true);
  switch (v.classification) {
    case PdClass::strictly_positive_definite: return 0;
    case PdClass::positive_definite: return 3;
    default: return 4;
  }
}

int cmd_interp(const std::string& points_path, const std::string& values_path,
               const std::string& kernel_spec, double t, double delta, bool have_delta,
               const std::string& weights_path, const std::string& report_path, bool force,
               std::ostream& out, std::ostream& err) {
  const Eigen::MatrixXd pts = read_points_csv(points_path);
  const Eigen::VectorXd y = read_values_csv(values_path);
  SpherePointSet set;
  set.d = static_cast<int>(pts.cols());
  set.points = pts;
  for (int i = 0; i < set.count(); ++i)
    if (std::abs(set.points.row(i).norm() - 1.0) > 1e-9)
      throw std::domain_error("interp: row " + std::to_string(i) + " is not a unit vector");
  if (y.size() != set.count())
    throw std::invalid_argument("interp: values length does not match point count");

  if (kernel_spec != "trunc-power")
    throw std::invalid_argument("interp supports the trunc-power kernel");
  const int lambda = static_cast<int>(std::ceil((set.d - 2) / 2.0));
  const double d = have_delta ? delta : lambda + 1.0;
  const ZonalKernel kernel = truncated_power_kernel(t, d);

  if (!force) {
    const auto g = sample_truncated_power(t, d, 8193);
    const auto v = check_criterion(g, lambda, 32);
    if (v.classification != PdClass::strictly_positive_definite) {
      err << "interp: kernel not certified strictly positive definite for S^" << set.d - 1
          << " (" << to_string(v.classification) << "); rerun with --force to override\n";
      return 1;
    }
  }

  InterpolationResult res;
  try {
    res = interpolate(set, y, kernel);
  } catch (const std::runtime_error& e) {
    err << e.what() << "\n";
    return 5;
  }

  write_values_csv(weights_path, res.weights);
  ordered_json rep;
  rep["schema"] = "1";
  rep["command"] = "interp";
  rep["d"] = set.d;
  rep["n_points"] = set.count();
  rep["kernel"] = kernel.name;
  rep["min_eigenvalue"] = res.min_eigenvalue;
  rep["residual_inf"] = res.residual_inf;
  rep["weights_file"] = weights_path;
  emit(rep, report_path, out, report_path.empty());
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"positive definiteness of zonal kernels on spheres"};
  app.require_subcommand(1);

  // eval
  double e_lambda = 1.0, e_t = 1.0, e_delta = 0.0, e_u = 0.0;
  int e_n = 0, e_order = 0;
  double e_hdelta = 0.0;
  bool e_normalized = false;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate F, G or h values");
  auto* opt_hd = eval_cmd->add_option("--h-delta", e_hdelta, "evaluate h_delta instead of F");
  auto* opt_u = eval_cmd->add_option("--u", e_u, "argument of h_delta");
  eval_cmd->add_option("--order", e_order, "derivative order of h_delta (0..3)");
  auto* opt_l = eval_cmd->add_option("--lambda", e_lambda, "Gegenbauer parameter");
  auto* opt_n = eval_cmd->add_option("--n", e_n, "degree");
  auto* opt_t = eval_cmd->add_option("--t", e_t, "cap radius in (0, pi]");
  auto* opt_d = eval_cmd->add_option("--delta", e_delta, "power (default lambda+1)");
  eval_cmd->add_flag("--normalized", e_normalized,
                     "G convention: F_n^{lambda,delta+1}/C_n^lambda(1)");
  opt_u->needs(opt_hd);

  // scan
  double s_lambda = 1.0, s_delta = 2.0;
  int s_nmax = 100, s_tpoints = 2048;
  std::string s_out, s_csv, s_curves;
  bool s_expect = false;
  auto* scan_cmd = app.add_subcommand("scan", "positivity scan of F_n^{lambda,delta}");
  scan_cmd->add_option("--lambda", s_lambda)->required();
  scan_cmd->add_option("--delta", s_delta)->required();
  scan_cmd->add_option("--n-max", s_nmax)->required();
  scan_cmd->add_option("--t-points", s_tpoints);
  scan_cmd->add_option("--out", s_out, "write the JSON report here");
  scan_cmd->add_option("--csv", s_csv, "write witnesses as CSV");
  scan_cmd->add_option("--emit-curves", s_curves, "write per-n curve CSVs into this directory");
  scan_cmd->add_flag("--expect-positive", s_expect, "exit 0 iff no non-positive value found");

  // roots
  std::string r_name, r_out;
  bool r_json = false;
  auto* roots_cmd = app.add_subcommand("roots", "reproduce the proof constants");
  roots_cmd->add_option("--name", r_name, "single constant to reproduce");
  roots_cmd->add_flag("--json", r_json);
  roots_cmd->add_option("--out", r_out, "write JSON certificates here");

  // polya
  std::string p_kernel, p_coeffs, p_out;
  int p_lambda = 1, p_samples = 8193, p_nev = 64, p_power = 0;
  double p_t = 2.0, p_delta = 0.0;
  auto* polya_cmd = app.add_subcommand("polya", "Polya-criterion verdict for a kernel");
  polya_cmd->add_option("--kernel", p_kernel)->required();
  polya_cmd->add_option("--lambda", p_lambda)->required();
  polya_cmd->add_option("--t", p_t, "support radius for parametric kernels");
  auto* p_opt_delta = polya_cmd->add_option("--delta", p_delta);
  auto* p_opt_power = polya_cmd->add_option("--power", p_power);
  polya_cmd->add_option("--coeffs", p_coeffs, "comma-separated power-series coefficients");
  polya_cmd->add_option("--samples", p_samples);
  polya_cmd->add_option("--n-evidence", p_nev);
  polya_cmd->add_option("--out", p_out);

  // interp
  std::string i_points, i_values, i_kernel = "trunc-power", i_weights, i_report;
  double i_t = 2.0, i_delta = 0.0;
  bool i_force = false;
  auto* interp_cmd = app.add_subcommand("interp", "kernel interpolation of scattered data");
  interp_cmd->add_option("--points", i_points)->required();
  interp_cmd->add_option("--values", i_values)->required();
  interp_cmd->add_option("--kernel", i_kernel);
  interp_cmd->add_option("--t", i_t)->required();
  auto* i_opt_delta = interp_cmd->add_option("--delta", i_delta);
  interp_cmd->add_option("--out-weights", i_weights)->required();
  interp_cmd->add_option("--report", i_report);
  interp_cmd->add_flag("--force", i_force, "skip the strict-PD certification of the kernel");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (eval_cmd->parsed()) {
      if (*opt_hd) {
        out << format_g17(h_delta_eval(e_hdelta, e_u, e_order)) << "\n";
        return 0;
      }
      if (!*opt_l || !*opt_n || !*opt_t) throw std::invalid_argument("eval needs --lambda, --n, --t");
      return cmd_eval(e_lambda, e_n, e_t, e_delta, static_cast<bool>(*opt_d), e_normalized, out);
    }
    if (scan_cmd->parsed())
      return cmd_scan(s_lambda, s_delta, s_nmax, s_tpoints, s_out, s_csv, s_curves, s_expect, out);
    if (roots_cmd->parsed()) return cmd_roots(r_name, r_json, r_out, out, err);
    if (polya_cmd->parsed())
      return cmd_polya(p_kernel, p_lambda, p_t, p_delta, static_cast<bool>(*p_opt_delta), p_power,
                       static_cast<bool>(*p_opt_power), p_coeffs, p_samples, p_nev, p_out, out);
    if (interp_cmd->parsed())
      return cmd_interp(i_points, i_values, i_kernel, i_t, i_delta,
                        static_cast<bool>(*i_opt_delta), i_weights, i_report, i_force, out, err);
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 1;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace zonalpd::cli
