#include <string>

#include "estimates.hpp"
#include "splab/errors.hpp"
#include "splab/trace.hpp"

namespace splab::detail {

namespace {

struct GateCase {
  std::string name;
  std::string estimate;
  std::string overrides;  // key=value lines
  std::string expect;     // substring of the error message
};

const std::vector<GateCase>& gate_cases() {
  static const std::vector<GateCase> cases{
      {"smoothing TYPE-II m = n", "T11-II-homog", "n=2\nm=2", "1<m<n"},
      {"smoothing TYPE-II m > n", "T11-II-duhamel", "n=2\nm=3", "1<m<n"},
      {"resolvent TYPE-II m = n", "T12-II", "n=2\nm=2", "1<m<n"},
      {"low-frequency resolvent m = n", "L51", "n=2\nm=2", "1<m<n"},
      {"low-frequency trace theta = (n-1)/2", "L13-lowfreq", "n=2\ntheta=0.5", "0<theta<(n-1)/2"},
      {"low-frequency trace theta > (n-1)/2", "L13-lowfreq", "n=2\ntheta=0.8", "0<theta<(n-1)/2"},
      {"weight commutator delta = 1, n = 2", "L22", "n=2\ndelta=1", "0 < delta < 1"},
      {"weight commutator delta = 0", "L22", "n=2\ndelta=0", "0 < delta < 1"},
      {"frequency commutator kappa = 1, n = 2", "L23", "n=2\nkappa=1", "0 < kappa < 1"},
      {"frequency commutator kappa < 0", "L23", "n=2\nkappa=-0.2", "0 < kappa < 1"},
  };
  return cases;
}

RatioReport gate_row(const std::string& point, const std::string& outcome, bool ok) {
  RatioReport r;
  r.member_id = outcome;
  r.point = point;
  r.lhs = ok ? 0.0 : 1.0;
  r.rhs = 1.0;
  r.ratio = r.lhs;
  return r;
}

SweepOutcome gating(const Config&) {
  SweepOutcome out;
  int failures = 0;
  for (const GateCase& g : gate_cases()) {
    const AdoptedWaiver none(nullptr);
    std::string outcome = "no error";
    bool ok = false;
    try {
      run_estimate(g.estimate, Config::parse(g.overrides));
    } catch (const HypothesisError& e) {
      outcome = e.what();
      ok = outcome.find(g.expect) != std::string::npos;
    } catch (const std::exception& e) {
      outcome = std::string("wrong error: ") + e.what();
    }
    if (!ok) ++failures;
    out.rows.push_back(gate_row(g.estimate + ": " + g.name, outcome, ok));
  }

  // A waiver records the violation instead of throwing.
  std::vector<std::string> recorded;
  {
    HypothesisWaiver waiver;
    check_lowfreq_range(2, 0.75);
    recorded = waiver.violations();
  }
  const bool waived = recorded.size() == 1 && recorded.front().find("0<theta<(n-1)/2") != std::string::npos;
  if (!waived) ++failures;
  out.rows.push_back(gate_row("waiver records low-frequency theta violation",
                              waived ? recorded.front() : "not recorded", waived));
  out.checks.push_back({"failed_cases", static_cast<double>(failures), 0.0});
  return out;
}

}  // namespace

std::vector<EstimateInfo> gating_estimates() {
  return {
      {"hypothesis-gating",
       "Parameters outside a theorem's hypotheses are rejected with a usage error naming the hypothesis: "
       "TYPE-II with m >= n, low-frequency trace with theta >= (n-1)/2, weight commutator delta and "
       "frequency commutator kappa out of range",
       EstimateClass::gating, {}, gating},
  };
}

}  // namespace splab::detail
