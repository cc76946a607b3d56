#pragma once

#include <functional>
#include <string>
#include <vector>

#include "splab/config.hpp"
#include "splab/family.hpp"
#include "splab/registry.hpp"
#include "splab/report.hpp"
#include "splab/symbol.hpp"

namespace splab::detail {

// symbol (euclid | lp4 | bump), epsilon, n, m
SymbolSpec symbol_from(const Config& c);
SymbolSpec symbol_from(const Config& c, double order);

FamilySpec family_from(const Config& c);

/// Members on grid = fixed (one box L, N) or fitted (L / lambda, N);
/// `factor` multiplies N for refinement runs.
std::vector<FamilyMember> members_from(const Config& c, int factor = 1);

// Per-member rows; members run in parallel, rows keep member order.
std::vector<RatioReport> over_members(
    const std::vector<FamilyMember>& members,
    const std::function<std::vector<RatioReport>(const FamilyMember&)>& fn);

/// Fills refinement_delta on `base` rows from the matching `fine` rows and
/// returns the relative change of the family-wide sup ratio.
double refinement_delta(std::vector<RatioReport>& base, const std::vector<RatioReport>& fine);

/// Rows over members_from(c); with refine set, also at 2N, adding the
/// refinement_delta_N check against max_delta.
SweepOutcome family_sweep(const Config& c,
                          const std::function<std::vector<RatioReport>(const FamilyMember&)>& measure);

double sup_ratio(const std::vector<RatioReport>& rows);

// Check that every ratio is finite (value = count of non-finite rows).
Check finite_check(const std::vector<RatioReport>& rows);

GridMeta grid_meta(const GridSpec& g, int resolution = 0);

// Sets the params map entries present in `keys` from the config.
void put_params(RatioReport& r, const Config& c, const std::vector<std::string>& keys);

std::vector<ParamSpec> family_param_specs(const std::string& dilations, const std::string& grid,
                                          const std::string& L, const std::string& N);
ParamSpec param(std::string key, std::string fallback, std::string help, bool physical = false);

std::vector<EstimateInfo> grid_estimates();
std::vector<EstimateInfo> evolution_estimates();
std::vector<EstimateInfo> resolvent_estimates();
std::vector<EstimateInfo> trace_estimates();
std::vector<EstimateInfo> multiplier_estimates();
std::vector<EstimateInfo> gating_estimates();

}  // namespace splab::detail
