#include "zonalpd/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace zonalpd {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("ZONALPD_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_count(), std::max(1, count));
  if (workers == 1 || count < 4) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      const int lo = static_cast<int>(static_cast<long>(count) * w / workers);
      const int hi = static_cast<int>(static_cast<long>(count) * (w + 1) / workers);
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::vector<std::vector<double>> read_csv_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open for reading: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t pos = 0;
      double v;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed CSV cell '" + cell + "' in " + path);
      }
      while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
      if (pos != cell.size())
        throw std::invalid_argument("malformed CSV cell '" + cell + "' in " + path);
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void write_curve_csv(const std::string& path, const std::string& header,
                     const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("write_curve_csv: length mismatch");
  auto out = open_out(path);
  out << "# " << header << "\n";
  for (std::size_t i = 0; i < x.size(); ++i)
    out << format_g17(x[i]) << "," << format_g17(y[i]) << "\n";
}

void write_points_csv(const std::string& path, const Eigen::MatrixXd& points) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
      if (j) out << ",";
      out << format_g17(points(i, j));
    }
    out << "\n";
  }
}

void write_values_csv(const std::string& path, const Eigen::VectorXd& values) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < values.size(); ++i) out << format_g17(values(i)) << "\n";
}

Eigen::MatrixXd read_points_csv(const std::string& path) {
  const auto rows = read_csv_rows(path);
  if (rows.empty()) throw std::invalid_argument("empty points CSV: " + path);
  const std::size_t d = rows[0].size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) throw std::invalid_argument("ragged points CSV: " + path);
    for (std::size_t j = 0; j < d; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

Eigen::VectorXd read_values_csv(const std::string& path) {
  const auto rows = read_csv_rows(path);
  Eigen::VectorXd v(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 1) throw std::invalid_argument("values CSV must have one column: " + path);
    v(static_cast<Eigen::Index>(i)) = rows[i][0];
  }
  return v;
}

std::pair<Eigen::ArrayXd, Eigen::ArrayXd> read_kernel_csv(const std::string& path) {
  const auto rows = read_csv_rows(path);
  if (rows.size() < 3) throw std::invalid_argument("kernel CSV needs at least 3 rows: " + path);
  Eigen::ArrayXd theta(static_cast<Eigen::Index>(rows.size()));
  Eigen::ArrayXd values(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 2) throw std::invalid_argument("kernel CSV must have two columns: " + path);
    theta(static_cast<Eigen::Index>(i)) = rows[i][0];
    values(static_cast<Eigen::Index>(i)) = rows[i][1];
  }
  return {theta, values};
}

bool validate_scan_report_json(const nlohmann::ordered_json& j, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!j.is_object()) return fail("not an object");
  if (!j.contains("schema") || j["schema"] != "1") return fail("missing or wrong schema");
  for (const char* key : {"lambda", "delta", "min_value", "argmin_t"})
    if (!j.contains(key) || !j[key].is_number()) return fail(std::string("missing number ") + key);
  for (const char* key : {"n_max", "t_points", "argmin_n", "witness_count"})
    if (!j.contains(key) || !j[key].is_number_integer())
      return fail(std::string("missing integer ") + key);
  if (!j.contains("all_positive") || !j["all_positive"].is_boolean())
    return fail("missing boolean all_positive");
  if (!j.contains("witnesses") || !j["witnesses"].is_array()) return fail("missing witnesses");
  for (const auto& w : j["witnesses"]) {
    if (!w.is_object() || !w.contains("n") || !w.contains("t") || !w.contains("value"))
      return fail("malformed witness entry");
  }
  const bool all_positive = j["all_positive"].get<bool>();
  if (all_positive != (j["witness_count"].get<long>() == 0))
    return fail("all_positive inconsistent with witness_count");
  return true;
}

}  // namespace zonalpd
