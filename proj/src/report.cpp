#include <filesystem>
#include <fstream>
#include <sstream>

#include "cpl/errors.hpp"
#include "cpl/experiment.hpp"
#include "json.hpp"

namespace cpl {

namespace {

using Json = nlohmann::ordered_json;

// Doubles are written through format_double so that JSON and CSV agree to
// the last digit; non-finite values become null.
Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return Json::parse(format_double(v));
}

}  // namespace

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream out;
  if (!report.table_header.empty()) {
    for (std::size_t i = 0; i < report.table_header.size(); ++i) {
      out << (i ? "," : "") << report.table_header[i];
    }
    out << "\n";
    for (const auto& row : report.table_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << "\n";
    }
    return out.str();
  }
  out << "lambda,value,hs_norm,ratio\n";
  for (const auto& p : report.points) {
    out << format_double(p.lambda) << "," << format_double(p.value) << ","
        << format_double(p.hs_norm) << "," << format_double(p.ratio) << "\n";
  }
  return out.str();
}

std::string report_json(const ExperimentReport& report) {
  Json j;
  j["schema_version"] = 1;
  j["experiment"] = report.experiment;
  Json config = Json::object();
  for (const auto& [key, value] : report.config) config[key] = value;
  j["config"] = config;
  Json points = Json::array();
  for (const auto& p : report.points) {
    points.push_back({{"lambda", number(p.lambda)},
                      {"value", number(p.value)},
                      {"hs_norm", number(p.hs_norm)},
                      {"ratio", number(p.ratio)}});
  }
  j["points"] = points;
  if (report.fit) {
    j["fit"] = {{"slope", number(report.fit->slope)},
                {"intercept", number(report.fit->intercept)},
                {"r2", number(report.fit->r2)}};
  } else {
    j["fit"] = nullptr;
  }
  j["predicted_slope"] = report.predicted_slope ? number(*report.predicted_slope) : Json(nullptr);
  j["tolerance"] = number(report.tolerance);
  j["comparison"] = report.comparison;
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"value", number(c.value)},
                      {"target", number(c.target)},
                      {"tolerance", number(c.tolerance)},
                      {"comparison", c.comparison},
                      {"pass", c.pass}});
  }
  j["checks"] = checks;
  if (!report.table_header.empty()) {
    j["table"] = {{"header", report.table_header}, {"rows", report.table_rows}};
  }
  if (!report.extra_json.empty()) j["extra"] = Json::parse(report.extra_json);
  j["pass"] = report.pass();
  return j.dump(2) + "\n";
}

void write_report(const ExperimentReport& report, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir + ": " + ec.message());
  const auto write = [&](const std::string& ext, const std::string& body) {
    const fs::path path = fs::path(dir) / (report.experiment + ext);
    std::ofstream f(path);
    if (!f) throw Error("cannot open " + path.string());
    f << body;
    if (!f) throw Error("cannot write " + path.string());
  };
  write(".csv", report_csv(report));
  write(".json", report_json(report));
}

}  // namespace cpl
