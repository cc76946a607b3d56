#include "splab/registry.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "estimates.hpp"
#include "splab/errors.hpp"
#include "splab/parallel.hpp"

namespace splab {

std::string to_string(EstimateClass c) {
  switch (c) {
    case EstimateClass::identity: return "identity";
    case EstimateClass::ratio: return "ratio";
    case EstimateClass::gating: return "gating";
  }
  return "?";
}

const std::vector<ParamSpec>& common_params() {
  static const std::vector<ParamSpec> specs{
      {"negative_control", "false", "run under a hypothesis waiver; violations are reported, never gate", false},
  };
  return specs;
}

const std::vector<EstimateInfo>& estimates() {
  static const std::vector<EstimateInfo> all = [] {
    std::vector<EstimateInfo> v;
    for (auto group : {detail::grid_estimates, detail::evolution_estimates,
                       detail::resolvent_estimates, detail::trace_estimates,
                       detail::multiplier_estimates, detail::gating_estimates}) {
      for (EstimateInfo& e : group()) v.push_back(std::move(e));
    }
    return v;
  }();
  return all;
}

const EstimateInfo& find_estimate(const std::string& id) {
  for (const EstimateInfo& e : estimates()) {
    if (e.id == id) return e;
  }
  std::string valid;
  for (const EstimateInfo& e : estimates()) valid += (valid.empty() ? "" : ", ") + e.id;
  throw ConfigError("unknown estimate id '" + id + "'; valid ids: " + valid);
}

SweepOutcome run_estimate(const std::string& id, const Config& given, bool explicit_physical) {
  const EstimateInfo& info = find_estimate(id);
  Config cfg;
  std::set<std::string> known{"estimate"};
  for (const auto* specs : {&info.params, &common_params()}) {
    for (const ParamSpec& p : *specs) {
      known.insert(p.key);
      if (explicit_physical && p.physical && !given.has(p.key)) {
        throw ConfigError("sweep config for " + id + " must set '" + p.key + "' (" + p.help + ")");
      }
      if (!p.fallback.empty()) cfg.set(p.key, p.fallback);
    }
  }
  for (const auto& [k, v] : given.entries()) {
    if (!known.count(k)) {
      std::string keys;
      for (const std::string& kk : known) keys += (keys.empty() ? "" : ", ") + kk;
      throw ConfigError("estimate " + id + " has no parameter '" + k + "'; accepted: " + keys);
    }
    cfg.set(k, v);
  }
  cfg.erase("estimate");

  SweepOutcome out;
  const bool negative = cfg.flag("negative_control");
  if (negative) {
    HypothesisWaiver waiver;
    out = info.run(cfg);
    out.violations = waiver.violations();
  } else {
    out = info.run(cfg);
  }
  out.negative_control = negative;
  out.estimate_id = info.id;
  out.statement = info.statement;
  out.estimate_class = to_string(info.cls);
  out.config = cfg.entries();
  for (RatioReport& r : out.rows) r.estimate_id = info.id;
  return out;
}

std::vector<FamilyMember> family_members(const Config& c) {
  if (!c.has("n")) throw ConfigError("family export needs n");
  Config cfg;
  for (const ParamSpec& p : detail::family_param_specs("1", "fixed", "8", "64")) cfg.set(p.key, p.fallback);
  return detail::members_from(cfg.merged(c));
}

namespace detail {

ParamSpec param(std::string key, std::string fallback, std::string help, bool physical) {
  return ParamSpec{std::move(key), std::move(fallback), std::move(help), physical};
}

SymbolSpec symbol_from(const Config& c, double order) {
  const std::string kind = c.str("symbol");
  const int n = c.integer("n");
  if (n < 1 || n > 3) throw ConfigError("n must be 1, 2 or 3");
  if (kind == "euclid") return SymbolSpec::euclid(n, order);
  if (kind == "lp4") return SymbolSpec::lp4(n, order);
  if (kind == "bump") return SymbolSpec::bump(n, order, c.num("epsilon"));
  throw ConfigError("unknown symbol '" + kind + "' (valid: euclid, lp4, bump)");
}

SymbolSpec symbol_from(const Config& c) { return symbol_from(c, c.num("m")); }

FamilySpec family_from(const Config& c) {
  FamilySpec f;
  f.base = parse_family_base(c.str("family"));
  if (c.has("hermite_order")) f.hermite_order = c.integer("hermite_order");
  if (c.has("seed")) f.seed = static_cast<std::uint64_t>(c.num("seed"));
  f.dilations = c.list("dilations");
  f.translations = c.vectors("translations");
  f.modulations = c.vectors("modulations");
  return f;
}

std::vector<FamilyMember> members_from(const Config& c, int factor) {
  const FamilySpec spec = family_from(c);
  const int n = c.integer("n");
  const double L = c.num("L");
  const int N = c.integer("N") * factor;
  const std::string rule = c.str("grid");
  if (rule == "fixed") return make_family(spec, GridSpec(n, L, N));
  if (rule == "fitted") return make_fitted_family(spec, n, L, N);
  throw ConfigError("grid must be 'fixed' or 'fitted'");
}

std::vector<RatioReport> over_members(
    const std::vector<FamilyMember>& members,
    const std::function<std::vector<RatioReport>(const FamilyMember&)>& fn) {
  std::vector<std::vector<RatioReport>> parts(members.size());
  parallel_for(members.size(), [&](std::size_t i) {
    parts[i] = fn(members[i]);
    for (RatioReport& r : parts[i]) r.member_id = members[i].id;
  });
  std::vector<RatioReport> rows;
  for (auto& p : parts) rows.insert(rows.end(), p.begin(), p.end());
  return rows;
}

double sup_ratio(const std::vector<RatioReport>& rows) {
  double sup = 0.0;
  for (const RatioReport& r : rows) {
    if (!std::isfinite(r.ratio)) return std::nan("");
    sup = std::max(sup, r.ratio);
  }
  return sup;
}

double refinement_delta(std::vector<RatioReport>& base, const std::vector<RatioReport>& fine) {
  if (base.size() != fine.size()) throw NumericError("refined sweep produced a different row count");
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double d = std::abs(fine[i].ratio - base[i].ratio);
    base[i].refinement_delta = base[i].ratio > 0.0 ? d / base[i].ratio : d;
  }
  const double s0 = sup_ratio(base);
  const double s1 = sup_ratio(fine);
  return s0 > 0.0 ? std::abs(s1 - s0) / s0 : std::abs(s1 - s0);
}

Check finite_check(const std::vector<RatioReport>& rows) {
  double bad = 0.0;
  for (const RatioReport& r : rows) {
    if (!std::isfinite(r.ratio) || !std::isfinite(r.lhs) || !(r.rhs > 0.0)) bad += 1.0;
  }
  return Check{"non_finite_rows", bad, 0.0};
}

GridMeta grid_meta(const GridSpec& g, int resolution) {
  GridMeta m;
  m.L = g.half_width();
  m.N = g.points_per_axis();
  m.resolution = resolution;
  return m;
}

void put_params(RatioReport& r, const Config& c, const std::vector<std::string>& keys) {
  for (const std::string& k : keys) {
    if (c.has(k)) r.params[k] = c.num(k);
  }
}

std::vector<ParamSpec> family_param_specs(const std::string& dilations, const std::string& grid,
                                          const std::string& L, const std::string& N) {
  return {
      param("family", "gaussian", "gaussian | hermite | random_bandlimited"),
      param("hermite_order", "0", "k for hermite(k)"),
      param("seed", "7", "seed for random_bandlimited"),
      param("dilations", dilations, "dilation list lambda"),
      param("translations", "0 0 0", "translation vectors x0, `a b; c d`"),
      param("modulations", "0 0 0", "modulation vectors xi0"),
      param("grid", grid, "fixed (one box) | fitted (L / lambda per member)", true),
      param("L", L, "box half width (fitted: at lambda = 1)", true),
      param("N", N, "points per axis", true),
  };
}

SweepOutcome family_sweep(const Config& c,
                          const std::function<std::vector<RatioReport>(const FamilyMember&)>& measure) {
  SweepOutcome out;
  out.rows = over_members(members_from(c), measure);
  out.checks.push_back(finite_check(out.rows));
  if (c.flag("refine")) {
    const auto fine = over_members(members_from(c, 2), measure);
    out.checks.push_back({"refinement_delta_N", refinement_delta(out.rows, fine), c.num("max_delta")});
  }
  return out;
}

}  // namespace detail

}  // namespace splab
