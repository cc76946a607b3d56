#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>

#include "estimates.hpp"
#include "splab/errors.hpp"
#include "splab/trace.hpp"

namespace splab::detail {

namespace {

std::string point_text(const char* fmt, double a, double b = 0.0) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  return out;
}

SweepOutcome coarea(const Config& c) {
  const int n = c.integer("n");
  const GridSpec g(n, c.num("L"), c.integer("N"));
  const std::vector<double> tq = c.list("tau_quad");
  const std::vector<double> res = c.list("sphere_res");
  if (tq.size() != res.size()) throw ConfigError("tau_quad and sphere_res need equal lengths");
  auto F = [](const Vec& xi) { return std::exp(-dot(xi, xi)); };
  SweepOutcome out;
  for (const std::string& name : split_names(c.str("symbols"))) {
    Config sc = c;
    sc.set("symbol", name);
    const SymbolSpec spec = symbol_from(sc);
    const double tol = name == "euclid" ? c.num("tolerance_euclid") : c.num("tolerance_other");
    std::vector<double> levels;
    for (std::size_t k = 0; k < tq.size(); ++k) {
      const double r = coarea_residual(F, g, spec, static_cast<int>(tq[k]), static_cast<int>(res[k]));
      RatioReport row;
      row.member_id = "exp(-|xi|^2):" + name;
      row.point = point_text("tau_quad=%g:sphere_res=%g", tq[k], res[k]);
      put_params(row, c, {"n", "m"});
      row.grid = grid_meta(g, static_cast<int>(res[k]));
      row.set_ratio(r, tol);
      out.rows.push_back(row);
      levels.push_back(r);
    }
    out.checks.push_back({name + "_residual", *std::max_element(levels.begin(), levels.end()), tol});
    // Finest level no worse than the coarsest, up to roundoff.
    out.checks.push_back({name + "_refined_minus_coarse", levels.back() - levels.front(), 1e-12});
  }
  return out;
}

SweepOutcome trace_closed_form(const Config& c) {
  const GridSpec g(2, c.num("L"), c.integer("N"));
  const SymbolSpec spec = SymbolSpec::euclid(2, 2.0);
  const double tol = c.num("tolerance");
  const int res = c.integer("resolution");
  const Field f = Field::sample(g, Space::physical, [](const Vec& x) { return std::exp(-0.5 * dot(x, x)); });
  SweepOutcome out;
  double worst = 0.0;
  for (double tau : c.list("taus")) {
    const double v = trace_norm(f, build_quad(spec, tau, res));
    const double exact = 2.0 * kPi * tau * std::exp(-tau * tau);
    RatioReport r;
    r.member_id = "exp(-|x|^2/2)";
    r.point = point_text("tau=%g", tau);
    r.params["n"] = 2;
    r.grid = grid_meta(g, res);
    r.set_ratio(std::abs(v * v - exact) / exact, tol);
    r.extra["trace_norm_sq"] = v * v;
    r.extra["closed_form"] = exact;
    worst = std::max(worst, r.lhs);
    out.rows.push_back(r);
  }
  out.checks.push_back({"max_relative_error", worst, tol});
  return out;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> v(count);
  for (int k = 0; k < count; ++k) {
    v[k] = count == 1 ? lo : lo * std::pow(hi / lo, double(k) / (count - 1));
  }
  return v;
}

// Runs `measure` over the family at N and, when requested, at 2N.
SweepOutcome uniform_trace(const Config& c) {
  const SymbolSpec spec = symbol_from(c, 2.0);
  const double theta = c.num("theta");
  const int res = c.integer("resolution");
  require_hypothesis(spec.dimension() >= 2, "uniform trace estimate requires n >= 2");
  require_hypothesis(theta > 0.0, "uniform trace estimate requires theta > 0");
  const auto taus = log_spaced(c.num("tau_min"), c.num("tau_max"), c.integer("tau_count"));
  return family_sweep(c, [&](const FamilyMember& m) {
    std::vector<RatioReport> rows;
    const double rhs = weighted_norm(m.field, 0.5 + theta, WeightKind::japanese_bracket);
    for (double tau : taus) {
      RatioReport r;
      r.point = point_text("tau=%.6g", tau);
      put_params(r, c, {"n", "theta"});
      r.grid = grid_meta(m.field.grid(), res);
      r.set_ratio(trace_norm(m.field, build_quad(spec, tau, res)), rhs);
      rows.push_back(r);
    }
    return rows;
  });
}

SweepOutcome hoelder(const Config& c) {
  const SymbolSpec spec = symbol_from(c, 2.0);
  const double theta = c.num("theta");
  const int res = c.integer("resolution");
  check_hoelder_range(spec.dimension(), theta);
  const auto taus = c.list("taus");
  return family_sweep(c, [&](const FamilyMember& m) {
    std::vector<RatioReport> rows;
    const double rhs0 = weighted_norm(m.field, 0.5 + theta, WeightKind::japanese_bracket);
    for (double tau : taus) {
      for (double lam : taus) {
        if (tau == lam) continue;
        RatioReport r;
        r.point = point_text("tau=%g:lambda=%g", tau, lam);
        put_params(r, c, {"n", "theta"});
        r.grid = grid_meta(m.field.grid(), res);
        r.ratio = hoelder_ratio(m.field, spec, tau, lam, theta, res);
        r.rhs = std::pow(std::abs(tau - lam), theta) * rhs0;
        r.lhs = r.ratio * r.rhs;
        rows.push_back(r);
      }
    }
    return rows;
  });
}

SweepOutcome lowfreq(const Config& c) {
  const SymbolSpec spec = symbol_from(c, 2.0);
  const double theta = c.num("theta");
  const int res = c.integer("resolution");
  const int n = spec.dimension();
  check_lowfreq_range(n, theta);
  const auto taus = c.list("taus");
  std::vector<double> slopes;
  std::mutex mutex;
  auto measure = [&](const FamilyMember& m, bool record) {
    const LowFrequencyResult lf = lowfreq_slope(m.field, spec, taus, theta, res);
    std::vector<RatioReport> rows;
    for (std::size_t k = 0; k < taus.size(); ++k) {
      RatioReport r;
      r.point = point_text("tau=%g", taus[k]);
      put_params(r, c, {"n", "theta"});
      r.grid = grid_meta(m.field.grid(), res);
      r.lhs = lf.norms[k];
      r.ratio = lf.ratios[k];
      r.rhs = lf.ratios[k] > 0.0 ? lf.norms[k] / lf.ratios[k] : 1.0;
      r.extra["slope"] = lf.slope;
      rows.push_back(r);
    }
    if (record) {
      std::lock_guard lock(mutex);
      slopes.push_back(lf.slope);
    }
    return rows;
  };
  SweepOutcome out;
  const auto members = members_from(c);
  out.rows = over_members(members, [&](const FamilyMember& m) { return measure(m, true); });
  out.checks.push_back(finite_check(out.rows));
  if (c.flag("refine")) {
    const auto fine = over_members(members_from(c, 2), [&](const FamilyMember& m) { return measure(m, false); });
    out.checks.push_back({"refinement_delta_N", refinement_delta(out.rows, fine), c.num("max_delta")});
  }
  double worst = 0.0;
  for (double s : slopes) worst = std::max(worst, std::abs(s - 0.5 * (n - 1)));
  // The surface-measure slope (n-1)/2 needs f^(0) != 0, which the Gaussian guarantees.
  Check slope{"max_abs_slope_minus_(n-1)/2", worst, c.num("slope_tolerance")};
  slope.gating = c.str("family") == "gaussian";
  out.checks.push_back(slope);
  return out;
}

// Appends b to a; entries of b replace entries of a with the same key.
std::vector<ParamSpec> with(std::vector<ParamSpec> a, const std::vector<ParamSpec>& b) {
  for (const ParamSpec& p : b) {
    auto it = std::find_if(a.begin(), a.end(), [&](const ParamSpec& q) { return q.key == p.key; });
    if (it != a.end()) {
      *it = p;
    } else {
      a.push_back(p);
    }
  }
  return a;
}

}  // namespace

std::vector<EstimateInfo> trace_estimates() {
  const std::vector<ParamSpec> refine{param("refine", "true", "also run N -> 2N"),
                                      param("resolution", "64", "level-set quadrature nodes", true)};
  return {
      {"coarea",
       "Co-area identity: int F dxi = int_0^inf dtau int_{p = tau} F / |p'| dsigma (F = e^{-|xi|^2})",
       EstimateClass::identity,
       {param("n", "2", "dimension", true), param("m", "2", "order of p", true),
        param("symbols", "euclid,lp4", "symbols to test"), param("epsilon", "0.3", "bump epsilon"),
        param("L", "16", "box half width", true), param("N", "128", "points per axis", true),
        param("tau_quad", "64,128", "log-tau nodes per level"),
        param("sphere_res", "64,128", "level-set nodes per level"),
        param("tolerance_euclid", "1e-6", "relative residual bound, euclid"),
        param("tolerance_other", "1e-4", "relative residual bound, other symbols")},
       coarea},
      {"trace-closed-form",
       "Level-set trace of the Gaussian: ||f^||^2_{L2(Sigma(tau))} = 2 pi tau e^{-tau^2} for "
       "f = e^{-|x|^2/2}, euclid, n = 2",
       EstimateClass::identity,
       {param("L", "16", "box half width", true), param("N", "128", "points per axis", true),
        param("taus", "0.5,1,2", "levels"), param("resolution", "64", "circle nodes", true),
        param("tolerance", "1e-6", "relative error bound")},
       trace_closed_form},
      {"L13-uniform",
       "Uniform trace estimate: ||f^||_{L2(Sigma(tau))} <= C ||<x>^{1/2+theta} f||, uniformly in tau",
       EstimateClass::ratio,
       with(with({param("n", "2", "dimension", true), param("symbol", "euclid", "level-set symbol"),
                  param("epsilon", "0.3", "bump epsilon"), param("theta", "0.1", "theta > 0", true),
                  param("tau_min", "0.1", "smallest level"), param("tau_max", "10", "largest level"),
                  param("tau_count", "13", "log-spaced levels"),
                  param("max_delta", "0.05", "refinement bound")},
                 family_param_specs("0.5,0.7071067811865476,1,1.4142135623730951,2", "fixed", "18", "128")),
            with(refine, {param("translations", "0 0; 1 0; 0 1; -1 -1; 2 0", "translations")})),
       uniform_trace},
      {"L13-hoelder",
       "Hoelder continuity of the trace: ||tau^rho f^(tau.) - lambda^rho f^(lambda.)||_{L2(Sigma(1))} "
       "<= C |tau - lambda|^theta ||<x>^{1/2+theta} f||, rho = (n-1)/2",
       EstimateClass::ratio,
       with(with({param("n", "2", "dimension", true), param("symbol", "euclid", "level-set symbol"),
                  param("epsilon", "0.3", "bump epsilon"), param("theta", "0.5", "0 < theta <= 1/2 (n = 2)", true),
                  param("taus", "0.25,0.5,1,2,4", "levels; all ordered pairs"),
                  param("max_delta", "0.10", "refinement bound")},
                 family_param_specs("0.5,1,2", "fixed", "16", "128")),
            refine),
       hoelder},
      {"L13-lowfreq",
       "Low-frequency trace estimate: ||f^||_{L2(Sigma(tau))} <= C tau^theta ||<x>^{1/2+theta} f||, "
       "0 < theta < (n-1)/2",
       EstimateClass::ratio,
       with(with({param("n", "2", "dimension", true), param("symbol", "euclid", "level-set symbol"),
                  param("epsilon", "0.3", "bump epsilon"), param("theta", "0.25", "0 < theta < (n-1)/2", true),
                  param("taus", "0.2,0.1,0.05,0.025", "small levels"),
                  param("slope_tolerance", "0.05", "bound on |slope - (n-1)/2|"),
                  param("max_delta", "0.10", "refinement bound")},
                 family_param_specs("0.5,1,2", "fixed", "16", "128")),
            refine),
       lowfreq},
  };
}

}  // namespace splab::detail
