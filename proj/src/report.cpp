#include "report.hpp"

#include <cstdio>

#include <json.hpp>

#include "error.hpp"

namespace mfmaps {

bool Report::compute_pass(double value, double bound, double tolerance,
                          std::optional<double> order_estimate, double order_required,
                          bool exact) {
  if (!(value <= bound + tolerance)) return false;
  if (order_required > 0.0 && !exact) {
    if (!order_estimate.has_value()) return false;
    if (!(*order_estimate >= order_required)) return false;
  }
  return true;
}

namespace {

// 17 significant digits round-trips any double; fixed format keeps the CSV
// byte-stable across runs.
std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string reports_to_json(const std::vector<Report>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Report& r : reports) {
    nlohmann::ordered_json j;
    j["check"] = r.check;
    j["scenario"] = r.scenario;
    nlohmann::ordered_json meas = nlohmann::ordered_json::array();
    for (const auto& [param, val] : r.measured) meas.push_back({{"parameter", param}, {"value", val}});
    j["measured"] = meas;
    j["value"] = r.value;
    j["bound"] = r.bound;
    j["tolerance"] = r.tolerance;
    if (r.order_estimate) j["order_estimate"] = *r.order_estimate;
    j["order_required"] = r.order_required;
    j["exact"] = r.exact;
    j["pass"] = r.pass;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<Report>& reports) {
  std::string out = "check,value,bound,tol,pass\n";
  for (const Report& r : reports) {
    out += r.check;
    out += ',';
    out += fmt_double(r.value);
    out += ',';
    out += fmt_double(r.bound);
    out += ',';
    out += fmt_double(r.tolerance);
    out += ',';
    out += r.pass ? "1" : "0";
    out += '\n';
  }
  return out;
}

std::vector<Report> reports_from_json(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Err::ConfigError, std::string("report parse: ") + e.what());
  }
  if (!arr.is_array()) throw Error(Err::ConfigError, "report file must hold an array");
  std::vector<Report> out;
  for (const auto& j : arr) {
    Report r;
    r.check = j.at("check").get<std::string>();
    r.scenario = j.at("scenario").get<std::string>();
    for (const auto& m : j.at("measured"))
      r.measured.emplace_back(m.at("parameter").get<std::string>(), m.at("value").get<double>());
    r.value = j.at("value").get<double>();
    r.bound = j.at("bound").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    if (j.contains("order_estimate")) r.order_estimate = j.at("order_estimate").get<double>();
    r.order_required = j.at("order_required").get<double>();
    r.exact = j.at("exact").get<bool>();
    r.pass = j.at("pass").get<bool>();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mfmaps
