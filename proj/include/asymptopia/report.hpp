#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asymptopia/quadrature.hpp"
#include "asymptopia/seqalg.hpp"

namespace asymptopia {

struct ReportRow {
  std::string check_id;
  std::string charge_pair;
  std::string cone_id;
  std::optional<double> radius;
  Complex value;
  double residual = 0.0;
  // +inf on intermediate sweep radii.
  double threshold = 0.0;
  bool pass = false;
};

struct Report {
  std::string suite;
  std::uint64_t config_hash = 0;
  std::uint64_t grid_checksum = 0;
  TailPolicy tail_policy;
  std::size_t planned_rows = 0;
  std::vector<ReportRow> rows;

  bool all_pass() const;
  // Sort by (check_id, radius); ties keep insertion order.
  void normalize();
};

// residual <= threshold.
ReportRow bounded_row(std::string check_id, std::string pair, std::string cone, std::optional<double> radius,
                      Complex value, double residual, double threshold);

std::string format_number(double v);
std::string to_csv(const Report& report);
std::string to_json(const Report& report);

enum class ReportFormat { Csv, Json };

// Writes <dir>/<suite>.csv or .json and returns the path. ConfigurationError if
// the directory cannot be created or the file cannot be written.
std::string emit_report(const Report& report, ReportFormat format, const std::string& dir);

}  // namespace asymptopia
