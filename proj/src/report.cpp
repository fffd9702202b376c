#include "asymptopia/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "asymptopia/errors.hpp"

namespace asymptopia {

bool Report::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
}

void Report::normalize() {
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.check_id != b.check_id) return a.check_id < b.check_id;
    const double ra = a.radius.value_or(-1.0);
    const double rb = b.radius.value_or(-1.0);
    return ra < rb;
  });
}

ReportRow bounded_row(std::string check_id, std::string pair, std::string cone, std::optional<double> radius,
                      Complex value, double residual, double threshold) {
  return {std::move(check_id), std::move(pair), std::move(cone), radius, value,
          residual,            threshold,       residual <= threshold};
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string to_csv(const Report& report) {
  std::string out = "check_id,charge_pair,cone_id,radius,value_re,value_im,residual,threshold,pass\n";
  for (const auto& r : report.rows) {
    out += r.check_id + "," + r.charge_pair + "," + r.cone_id + ",";
    out += (r.radius ? format_number(*r.radius) : std::string()) + ",";
    out += format_number(r.value.real()) + "," + format_number(r.value.imag()) + ",";
    out += format_number(r.residual) + "," + format_number(r.threshold) + ",";
    out += r.pass ? "true\n" : "false\n";
  }
  return out;
}

std::string to_json(const Report& report) {
  using nlohmann::json;
  // Numbers go through format_number so the text matches the CSV exactly.
  const auto num = [](double v) -> json {
    if (!std::isfinite(v)) return format_number(v);
    return json::parse(format_number(v));
  };
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"check_id", r.check_id},
                    {"charge_pair", r.charge_pair},
                    {"cone_id", r.cone_id},
                    {"radius", r.radius ? num(*r.radius) : json(nullptr)},
                    {"value_re", num(r.value.real())},
                    {"value_im", num(r.value.imag())},
                    {"residual", num(r.residual)},
                    {"threshold", num(r.threshold)},
                    {"pass", r.pass}});
  }
  char hash[32], checksum[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(report.config_hash));
  std::snprintf(checksum, sizeof checksum, "%016llx", static_cast<unsigned long long>(report.grid_checksum));
  json root = {{"suite", report.suite},
               {"config_hash", hash},
               {"grid_checksum", checksum},
               {"tail_policy",
                {{"window_start", report.tail_policy.window_start},
                 {"sample_count", report.tail_policy.sample_count},
                 {"tolerance", report.tail_policy.tolerance}}},
               {"planned_rows", report.planned_rows},
               {"all_pass", report.all_pass()},
               {"rows", rows}};
  return root.dump(2) + "\n";
}

std::string emit_report(const Report& report, ReportFormat format, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigurationError("cannot create output directory '" + dir + "'");
  const std::string path =
      (fs::path(dir) / (report.suite + (format == ReportFormat::Csv ? ".csv" : ".json"))).string();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigurationError("cannot write '" + path + "'");
  out << (format == ReportFormat::Csv ? to_csv(report) : to_json(report));
  out.close();
  if (!out) throw ConfigurationError("failed writing '" + path + "'");
  return path;
}

}  // namespace asymptopia
