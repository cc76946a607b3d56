#pragma once

#include <functional>
#include <string>
#include <vector>

#include "splab/config.hpp"
#include "splab/family.hpp"
#include "splab/report.hpp"

namespace splab {

enum class EstimateClass { identity, ratio, gating };

std::string to_string(EstimateClass c);

struct ParamSpec {
  std::string key;
  std::string fallback;  // used by `verify`; `sweep` requires physical keys explicitly
  std::string help;
  bool physical = false;
};

struct EstimateInfo {
  std::string id;
  std::string statement;  // the inequality or identity, in words and symbols
  EstimateClass cls = EstimateClass::ratio;
  std::vector<ParamSpec> params;
  std::function<SweepOutcome(const Config&)> run;
};

const std::vector<EstimateInfo>& estimates();

// Throws ConfigError listing the valid ids.
const EstimateInfo& find_estimate(const std::string& id);

/// Runs one estimate. Unknown keys are a ConfigError. With explicit_physical,
/// every physical parameter must be present in `given` (sweep configs).
/// `negative_control = true` runs under a HypothesisWaiver: violations are
/// recorded and no check gates.
SweepOutcome run_estimate(const std::string& id, const Config& given,
                          bool explicit_physical = false);

/// Members from the harness family keys (family, hermite_order, seed,
/// dilations, translations, modulations, grid, L, N) plus n. Missing family
/// keys take the registry defaults; n is required.
std::vector<FamilyMember> family_members(const Config& c);

// Keys every estimate accepts in addition to its own parameters.
const std::vector<ParamSpec>& common_params();

}  // namespace splab
