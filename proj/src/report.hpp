#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mfmaps {

/// Outcome of one named check. The pass bit is a pure function of the stored
/// fields (see compute_pass), so reports can be re-audited from their
/// serialized form.
struct Report {
  std::string check;     // which identity or bound was checked
  std::string scenario;  // fixed scenario id; report arrays sort by it

  // (parameter, value) pairs, e.g. per-step FD errors.
  std::vector<std::pair<std::string, double>> measured;

  double value = 0.0;      // headline measurement (usually a sup error)
  double bound = 0.0;      // target it must stay below
  double tolerance = 0.0;  // slack granted on the bound

  std::optional<double> order_estimate;  // log-log slope when convergence is rated
  double order_required = 0.0;           // 0 disables the order gate
  bool exact = false;  // errors at the rounding floor; passes any order gate

  bool pass = false;

  static bool compute_pass(double value, double bound, double tolerance,
                           std::optional<double> order_estimate, double order_required,
                           bool exact);
  /// Set pass from the other fields.
  void finalize() { pass = compute_pass(value, bound, tolerance, order_estimate, order_required, exact); }
};

std::string reports_to_json(const std::vector<Report>& reports);
std::string reports_to_csv(const std::vector<Report>& reports);
std::vector<Report> reports_from_json(const std::string& text);

}  // namespace mfmaps
