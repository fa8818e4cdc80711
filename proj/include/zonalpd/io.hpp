#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace zonalpd {

/// Floats are emitted with 17 significant digits so every value round-trips.
std::string format_g17(double v);

/// Worker count for grid scans: hardware concurrency, capped by the
/// ZONALPD_THREADS environment variable when set.
int worker_count();

/// Runs fn(i) for i = 0..count-1, partitioned over workers in contiguous
/// blocks. Results must be written to per-index storage; the reduction order
/// is left to the caller, keeping outputs deterministic.
void parallel_for(int count, const std::function<void(int)>& fn);

// CSV: '.' decimal separator, ',' delimiter, '#' comment lines.
void write_curve_csv(const std::string& path, const std::string& header,
                     const std::vector<double>& x, const std::vector<double>& y);
void write_points_csv(const std::string& path, const Eigen::MatrixXd& points);
void write_values_csv(const std::string& path, const Eigen::VectorXd& values);
Eigen::MatrixXd read_points_csv(const std::string& path);
Eigen::VectorXd read_values_csv(const std::string& path);

/// Two-column (theta, g) CSV on a uniform grid containing 0 and pi.
/// Returns the columns; grid validation lives with SampledZonalFunction.
std::pair<Eigen::ArrayXd, Eigen::ArrayXd> read_kernel_csv(const std::string& path);

bool validate_scan_report_json(const nlohmann::ordered_json& j, std::string* why = nullptr);

}  // namespace zonalpd
