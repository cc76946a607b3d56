#include "splab/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>

#include <json.hpp>

namespace splab {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_int(int v) { return v > 0 ? std::to_string(v) : ""; }

// CSV field quoting for ids that might carry separators.
std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

nlohmann::ordered_json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

const std::vector<std::string>& param_columns() {
  static const std::vector<std::string> cols{"n",     "m",     "delta", "theta",
                                             "kappa", "alpha", "beta",  "gamma"};
  return cols;
}

std::string csv_header() {
  std::string h = "estimate_id,member_id,point";
  for (const std::string& c : param_columns()) h += "," + c;
  h += ",L,N,T,M,resolution,lhs,rhs,ratio,tail_indicator,eta_at_sup,refinement_delta,extra";
  return h;
}

void write_csv(std::ostream& os, const std::vector<RatioReport>& rows, bool timestamp) {
  if (timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# generated " << buf << '\n';
  }
  os << csv_header() << '\n';
  for (const RatioReport& r : rows) {
    os << quoted(r.estimate_id) << ',' << quoted(r.member_id) << ',' << quoted(r.point);
    for (const std::string& c : param_columns()) {
      const auto it = r.params.find(c);
      os << ',' << (it == r.params.end() ? "" : fmt(it->second));
    }
    os << ',' << fmt(r.grid.L) << ',' << fmt_int(r.grid.N) << ',' << fmt(r.grid.T) << ','
       << fmt_int(r.grid.M) << ',' << fmt_int(r.grid.resolution) << ',' << fmt(r.lhs) << ','
       << fmt(r.rhs) << ',' << fmt(r.ratio) << ',' << fmt(r.tail_indicator) << ','
       << fmt(r.eta_at_sup) << ',' << fmt(r.refinement_delta) << ',';
    bool first = true;
    for (const auto& [k, v] : r.extra) {
      os << (first ? "" : ";") << k << '=' << fmt(v);
      first = false;
    }
    os << '\n';
  }
}

bool Check::pass() const {
  if (!std::isfinite(value)) return false;
  return at_most ? value <= threshold : value >= threshold;
}

double SweepOutcome::sup_ratio() const {
  double sup = 0.0;
  for (const RatioReport& r : rows) {
    if (!std::isfinite(r.ratio)) return std::nan("");
    sup = std::max(sup, r.ratio);
  }
  return sup;
}

bool SweepOutcome::pass() const {
  for (const Check& c : checks) {
    if (c.gating && !negative_control && !c.pass()) return false;
  }
  return true;
}

std::string summary_json(const SweepOutcome& o) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["estimate_id"] = o.estimate_id;
  j["statement"] = o.statement;
  j["class"] = o.estimate_class;
  j["config"] = o.config;
  j["rows"] = o.rows.size();
  j["sup_ratio"] = number_or_null(o.sup_ratio());
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const Check& c : o.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["value"] = number_or_null(c.value);
    cj["threshold"] = c.threshold;
    cj["comparison"] = c.at_most ? "<=" : ">=";
    cj["gating"] = c.gating && !o.negative_control;
    cj["pass"] = c.pass();
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["negative_control"] = o.negative_control;
  j["violations"] = o.violations;
  j["pass"] = o.pass();
  return j.dump(2) + "\n";
}

void print_summary(std::ostream& os, const SweepOutcome& o) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s: %s  rows=%zu  sup_ratio=%.6g%s\n", o.estimate_id.c_str(),
                o.pass() ? "PASS" : "FAIL", o.rows.size(), o.sup_ratio(),
                o.negative_control ? "  [negative control]" : "");
  os << buf;
  for (const Check& c : o.checks) {
    std::snprintf(buf, sizeof buf, "  %-28s %.3e %s %.3e  %s%s\n", c.name.c_str(), c.value,
                  c.at_most ? "<=" : ">=", c.threshold, c.pass() ? "ok" : "FAILED",
                  c.gating ? "" : " (reported)");
    os << buf;
  }
  for (const std::string& v : o.violations) os << "  violated: " << v << '\n';
}

}  // namespace splab
