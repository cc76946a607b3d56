#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "estimates.hpp"
#include "splab/errors.hpp"
#include "splab/evolution.hpp"
#include "splab/parallel.hpp"

namespace splab::detail {

namespace {

SweepOutcome propagator(const Config& c) {
  const int n = c.integer("n");
  const GridSpec g(n, c.num("L"), c.integer("N"));
  const SymbolSpec spec = symbol_from(c);
  const double tol = c.num("tolerance");
  const double tol_closed = c.num("tolerance_closed_form");
  const auto seed = static_cast<std::uint64_t>(c.num("seed"));
  SweepOutcome out;
  auto add = [&](const std::string& member, const std::string& point, double v, double t) {
    RatioReport r;
    r.member_id = member;
    r.point = point;
    put_params(r, c, {"n", "m"});
    r.grid = grid_meta(g);
    r.set_ratio(v, t);
    out.rows.push_back(r);
  };

  double unitary = 0.0;
  double group = 0.0;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < c.integer("count"); ++k) {
    Field f(g, Space::physical);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double re = 2.0 * unit_uniform(rng()) - 1.0;
      f[i] = cplx(re, 2.0 * unit_uniform(rng()) - 1.0);
    }
    const double s = 4.0 * unit_uniform(rng()) - 2.0;
    const double t = 4.0 * unit_uniform(rng()) - 2.0;
    const double nf = f.norm();
    const double u = std::abs(propagate(f, spec, t).norm() - nf) / nf;
    const double gl = (propagate(propagate(f, spec, s), spec, t) - propagate(f, spec, s + t)).norm() / nf;
    const std::string id = "white_noise#" + std::to_string(k);
    add(id, "unitarity", u, tol);
    add(id, "group_law", gl, tol);
    unitary = std::max(unitary, u);
    group = std::max(group, gl);
  }
  out.checks.push_back({"unitarity", unitary, tol});
  out.checks.push_back({"group_law", group, tol});

  // Schroedinger Gaussian: beta^{-n/2} exp(-|x|^2 / (2 beta)), beta = 1 - 2it.
  const SymbolSpec schr = SymbolSpec::euclid(n, 2.0);
  const Field phi = Field::sample(g, Space::physical, [](const Vec& x) { return std::exp(-0.5 * dot(x, x)); });
  double closed = 0.0;
  for (double t : c.list("times")) {
    const Field u = propagate(phi, schr, t);
    const cplx beta(1.0, -2.0 * t);
    double err = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const Vec x = u.point(i);
      err = std::max(err, std::abs(u[i] - std::pow(beta, -0.5 * n) * std::exp(-dot(x, x) / (2.0 * beta))));
    }
    char pt[32];
    std::snprintf(pt, sizeof pt, "closed_form:t=%g", t);
    add("exp(-|x|^2/2)", pt, err, tol_closed);
    closed = std::max(closed, err);
  }
  out.checks.push_back({"schroedinger_closed_form", closed, tol_closed});
  return out;
}

SweepOutcome duhamel_order(const Config& c) {
  const int n = c.integer("n");
  const GridSpec g(n, c.num("L"), c.integer("N"));
  const SymbolSpec spec = symbol_from(c);
  const Field phi = Field::sample(g, Space::physical, [](const Vec& x) { return std::exp(-0.5 * dot(x, x)); });
  const double T = c.num("T");
  SweepOutcome out;
  std::vector<double> res;
  std::vector<int> steps;
  for (double Md : c.list("steps")) {
    const int M = static_cast<int>(Md);
    const TimeGrid tg(T, M);
    // Smooth, band-limited in space and time.
    const SpaceTimeField F = SpaceTimeField::sample(tg, g, [](double t, const Vec& x) {
      const Vec y{x[0] - 1.0, x[1], x[2]};
      return cplx(std::cos(1.3 * t), 0.5 * std::sin(t)) * std::exp(-0.5 * dot(y, y));
    });
    const double r = equation_residual(phi, F, spec);
    RatioReport row;
    row.member_id = "cos-sin forcing";
    row.point = "M=" + std::to_string(M);
    put_params(row, c, {"n", "m"});
    row.grid = grid_meta(g);
    row.grid.T = T;
    row.grid.M = M;
    row.set_ratio(r, 1.0);
    if (!res.empty()) row.extra["order"] = std::log2(res.back() / r);
    out.rows.push_back(row);
    res.push_back(r);
    steps.push_back(M);
  }
  double order = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < res.size(); ++k) {
    if (res[k] < c.num("roundoff_floor")) break;
    order = std::min(order, std::log2(res[k - 1] / res[k]));
  }
  if (!std::isfinite(order)) order = std::nan("");
  out.checks.push_back({"min_measured_order", order, c.num("min_order"), false});
  return out;
}

// --- smoothing estimates -------------------------------------------------

SmoothingEstimate estimate_of(bool type_one, bool homogeneous) {
  if (type_one) return homogeneous ? SmoothingEstimate::I_homog : SmoothingEstimate::I_duhamel;
  return homogeneous ? SmoothingEstimate::II_homog : SmoothingEstimate::II_duhamel;
}

std::vector<std::string> smoothing_param_names(bool type_one) {
  return type_one ? std::vector<std::string>{"n", "m", "delta"} : std::vector<std::string>{"n", "m"};
}

SweepOutcome smoothing_homog(const Config& c, bool type_one) {
  const SmoothingEstimate e = estimate_of(type_one, true);
  const SymbolSpec spec = symbol_from(c);
  const double delta = type_one ? c.num("delta") : 0.0;
  check_smoothing_hypotheses(spec.dimension(), spec.order(), e, delta);
  const int res = c.integer("resolution");
  const int tq = c.integer("tau_quad");
  auto measure = [&](const FamilyMember& m) {
    const SmoothingResult w = smoothing_ratio_global(m.field, spec, e, delta, res, tq);
    RatioReport r;
    r.point = "t in R";
    put_params(r, c, smoothing_param_names(type_one));
    r.grid = grid_meta(m.field.grid(), res);
    r.lhs = w.lhs;
    r.rhs = w.rhs;
    r.ratio = w.ratio;
    r.tail_indicator = w.tail_indicator;
    r.extra["tau_quad"] = tq;
    return std::vector<RatioReport>{r};
  };
  SweepOutcome out;
  out.rows = over_members(members_from(c), measure);
  out.checks.push_back(finite_check(out.rows));
  if (c.flag("refine")) {
    const auto fine = over_members(members_from(c, 2), measure);
    out.checks.push_back({"refinement_delta_N", refinement_delta(out.rows, fine), c.num("max_delta")});
  }
  double edge = 0.0;
  for (const RatioReport& r : out.rows) edge = std::max(edge, r.tail_indicator);
  out.checks.push_back({"max_spectral_edge", edge, c.num("tail_limit")});
  return out;
}

/// Forcing per member g. nonradiating: f = (D_t - p(D)) w with
/// w = t e^{-t^2/2} g, so that G f = -i w vanishes as |t| grows.
/// separable: f = e^{-t^2/2} g, which leaves a free wave behind.
FrameSource forcing(const Field& g, const SymbolSpec& spec, const std::string& kind) {
  if (kind == "separable") {
    return [g](double t) { return cplx(std::exp(-0.5 * t * t)) * g; };
  }
  if (kind != "nonradiating") throw ConfigError("forcing must be 'nonradiating' or 'separable'");
  const Field pg = apply_multiplier(g, SymbolPower{spec, spec.order()});
  return [g, pg](double t) {
    const double e = std::exp(-0.5 * t * t);
    Field f = cplx(0.0, -(1.0 - t * t) * e) * g;
    f -= cplx(t * e) * pg;
    return f;
  };
}

SweepOutcome smoothing_duhamel(const Config& c, bool type_one) {
  const SmoothingEstimate e = estimate_of(type_one, false);
  const SymbolSpec spec = symbol_from(c);
  const double delta = type_one ? c.num("delta") : 0.0;
  check_smoothing_hypotheses(spec.dimension(), spec.order(), e, delta);
  const std::string kind = c.str("forcing");
  const double tail_limit = c.num("tail_limit");
  const double T0 = c.num("T");
  const int M0 = c.integer("M");
  const int max_doublings = c.integer("max_doublings");

  struct Run {
    SmoothingResult w;
    double T;
    int M;
  };
  auto run = [&](const FamilyMember& m, double T, int M) {
    const FrameSource f = forcing(m.field, spec, kind);
    return Run{smoothing_ratio(f, TimeGrid(T, M), m.field.grid(), spec, e, delta), T, M};
  };
  // Window doubles (with M) until the edge share drops below the limit.
  // Steps grow with lambda^m so that dt p stays comparable across dilations.
  auto windowed = [&](const FamilyMember& m) {
    const double scale = std::max(1.0, std::pow(m.lambda, spec.order()));
    Run r = run(m, T0, 2 * static_cast<int>(std::ceil(0.5 * M0 * scale)));
    for (int k = 0; k < max_doublings && r.w.tail_indicator > tail_limit; ++k) {
      r = run(m, 2.0 * r.T, 2 * r.M);
    }
    return r;
  };
  auto row_of = [&](const FamilyMember& m, const Run& r) {
    RatioReport row;
    row.point = "window";
    put_params(row, c, smoothing_param_names(type_one));
    row.grid = grid_meta(m.field.grid());
    row.grid.T = r.T;
    row.grid.M = r.M;
    row.lhs = r.w.lhs;
    row.rhs = r.w.rhs;
    row.ratio = r.w.ratio;
    row.tail_indicator = r.w.tail_indicator;
    return row;
  };

  const auto members = members_from(c);
  SweepOutcome out;
  out.rows = over_members(members, [&](const FamilyMember& m) {
    const Run r = windowed(m);
    const Run r2 = run(m, 2.0 * r.T, 2 * r.M);
    RatioReport row = row_of(m, r);
    row.extra["ratio_2T"] = r2.w.ratio;
    row.extra["delta_T"] = std::abs(r2.w.ratio - r.w.ratio) / r.w.ratio;
    return std::vector<RatioReport>{row};
  });
  out.checks.push_back(finite_check(out.rows));
  double tail = 0.0;
  double s0 = 0.0;
  double s2 = 0.0;
  for (const RatioReport& r : out.rows) {
    tail = std::max(tail, r.tail_indicator);
    s0 = std::max(s0, r.ratio);
    s2 = std::max(s2, r.extra.at("ratio_2T"));
  }
  if (c.flag("refine")) {
    // Same windows as the base run, N doubled.
    const auto fine_members = members_from(c, 2);
    std::vector<RatioReport> fine(out.rows.size());
    parallel_for(fine_members.size(), [&](std::size_t i) {
      const Run r = run(fine_members[i], out.rows[i].grid.T, out.rows[i].grid.M);
      fine[i] = row_of(fine_members[i], r);
    });
    out.checks.push_back({"refinement_delta_N", refinement_delta(out.rows, fine), c.num("max_delta")});
  }
  out.checks.push_back({"refinement_delta_T", s0 > 0.0 ? std::abs(s2 - s0) / s0 : s2, c.num("max_delta")});
  out.checks.push_back({"max_tail_indicator", tail, tail_limit});
  return out;
}

std::vector<ParamSpec> smoothing_params(bool type_one, bool homogeneous) {
  std::vector<ParamSpec> p{
      param("n", "2", "dimension", true),
      param("m", type_one ? "2" : "1.5", type_one ? "order, m > 1" : "order, 1 < m < n", true),
      param("symbol", "euclid", "euclid | lp4 | bump"),
      param("epsilon", "0.3", "bump epsilon"),
  };
  if (type_one) p.push_back(param("delta", "0.6", "weight exponent, delta > 1/2", true));
  for (ParamSpec& f : family_param_specs("0.5,1,2", "fixed", "16", "128")) p.push_back(f);
  p.push_back(param("refine", "true", "also run N -> 2N"));
  p.push_back(param("max_delta", "0.05", "refinement bound"));
  if (homogeneous) {
    p.push_back(param("resolution", "128", "level-set nodes", true));
    p.push_back(param("tau_quad", "64", "log-tau nodes"));
    p.push_back(param("tail_limit", "1e-3", "bound on the spectral edge share"));
  } else {
    p.push_back(param("T", "8", "initial window half span", true));
    p.push_back(param("M", "128", "time steps over the initial window, times lambda^m for lambda > 1", true));
    p.push_back(param("forcing", "nonradiating", "nonradiating | separable"));
    p.push_back(param("max_doublings", "3", "window doublings allowed for the tail"));
    p.push_back(param("tail_limit", "1e-3", "bound on the window edge share"));
  }
  return p;
}

}  // namespace

std::vector<EstimateInfo> evolution_estimates() {
  return {
      {"propagator-group",
       "Propagator laws: ||e^{itp(D)} f|| = ||f||, e^{isp} e^{itp} = e^{i(s+t)p}, and the Schroedinger "
       "Gaussian (1 - 2it)^{-n/2} exp(-|x|^2 / (2(1 - 2it)))",
       EstimateClass::identity,
       {param("n", "2", "dimension", true), param("m", "2", "order", true),
        param("symbol", "euclid", "symbol for the unitary and group checks"),
        param("epsilon", "0.3", "bump epsilon"), param("L", "20", "box half width", true),
        param("N", "256", "points per axis", true), param("count", "10", "random fields"),
        param("seed", "3", "seed"), param("times", "0.5,1", "closed-form times"),
        param("tolerance", "1e-12", "unitarity and group-law bound"),
        param("tolerance_closed_form", "1e-8", "closed-form max error")},
       propagator},
      {"duhamel-order",
       "Equation residual of u = e^{itp} phi + i G f: D_t u - p(D) u - f = O(dt^4) under step halving",
       EstimateClass::identity,
       {param("n", "1", "dimension", true), param("m", "2", "order", true),
        param("symbol", "euclid", "symbol"), param("epsilon", "0.3", "bump epsilon"),
        param("L", "16", "box half width", true), param("N", "128", "points per axis", true),
        param("T", "2", "window half span", true), param("steps", "32,64,128,256,512", "time steps M", true),
        param("min_order", "3.5", "lower bound on the measured order"),
        param("roundoff_floor", "1e-11", "residuals below this are not used for the order")},
       duhamel_order},
      {"T11-I-homog",
       "TYPE-I homogeneous smoothing: ||<x>^{-delta} |D|^{(m-1)/2} e^{itp(D)} phi||_{L2(R^{1+n})} "
       "<= C ||phi||, m > 1, delta > 1/2",
       EstimateClass::ratio, smoothing_params(true, true),
       [](const Config& c) { return smoothing_homog(c, true); }},
      {"T11-I-duhamel",
       "TYPE-I inhomogeneous smoothing: ||<x>^{-delta} |D|^{m-1} G f|| <= C ||<x>^delta f||, "
       "m > 1, delta > 1/2",
       EstimateClass::ratio, smoothing_params(true, false),
       [](const Config& c) { return smoothing_duhamel(c, true); }},
      {"T11-II-homog",
       "TYPE-II homogeneous smoothing: ||<x>^{-m/2} <D>^{(m-1)/2} e^{itp(D)} phi||_{L2(R^{1+n})} "
       "<= C ||phi||, 1 < m < n",
       EstimateClass::ratio, smoothing_params(false, true),
       [](const Config& c) { return smoothing_homog(c, false); }},
      {"T11-II-duhamel",
       "TYPE-II inhomogeneous smoothing: ||<x>^{-m/2} <D>^{m-1} G f|| <= C ||<x>^{m/2} f||, 1 < m < n",
       EstimateClass::ratio, smoothing_params(false, false),
       [](const Config& c) { return smoothing_duhamel(c, false); }},
  };
}

}  // namespace splab::detail
