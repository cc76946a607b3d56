#pragma once

#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace splab {

inline constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct GridMeta {
  double L = kUnset;
  int N = 0;
  double T = kUnset;
  int M = 0;
  int resolution = 0;
};

/// One harness row. Ratio rows carry the two sides of an inequality;
/// identity rows carry lhs = residual and rhs = tolerance, so ratio <= 1
/// means the identity holds.
struct RatioReport {
  std::string estimate_id;
  std::string member_id;
  std::string point;                     // parameter point, e.g. "tau=0.5"
  std::map<std::string, double> params;  // hypothesis parameters
  GridMeta grid;
  double lhs = 0.0;
  double rhs = 1.0;
  double ratio = 0.0;
  double tail_indicator = kUnset;
  double eta_at_sup = kUnset;
  double refinement_delta = kUnset;
  std::map<std::string, double> extra;

  void set_ratio(double l, double r) {
    lhs = l;
    rhs = r;
    ratio = l / r;
  }
};

// Hypothesis parameter columns, in CSV order.
const std::vector<std::string>& param_columns();

/// Header row, then one row per report; doubles in %.17g, unset fields
/// empty, extra as `key=value;...`. With a timestamp, a leading
/// `# generated <UTC>` comment line is written first.
void write_csv(std::ostream& os, const std::vector<RatioReport>& rows, bool timestamp = true);
std::string csv_header();

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool at_most = true;  // pass when value <= threshold, else value >= threshold
  bool gating = true;

  bool pass() const;
};

struct SweepOutcome {
  std::string estimate_id;
  std::string statement;
  std::string estimate_class;
  std::map<std::string, std::string> config;  // effective parameters
  std::vector<RatioReport> rows;
  std::vector<Check> checks;
  bool negative_control = false;
  std::vector<std::string> violations;

  double sup_ratio() const;  // NaN if any row ratio is not finite
  bool pass() const;         // all gating checks pass
};

/// Summary with schema_version 1: id, statement, class, config, row count,
/// sup ratio, checks, negative-control flag and violations, pass.
std::string summary_json(const SweepOutcome& outcome);

// Short human-readable summary, one line per check.
void print_summary(std::ostream& os, const SweepOutcome& outcome);

}  // namespace splab
