#include <algorithm>
#include <cmath>
#include <cstdio>

#include "estimates.hpp"
#include "splab/errors.hpp"
#include "splab/multiplier.hpp"

namespace splab::detail {

namespace {

SweepOutcome ratio_sweep(const Config& c, const std::vector<std::string>& keys,
                         const std::function<std::pair<double, double>(const Field&)>& sides) {
  return family_sweep(c, [&](const FamilyMember& m) {
    RatioReport r;
    r.point = "-";
    put_params(r, c, keys);
    r.grid = grid_meta(m.field.grid());
    const auto [lhs, rhs] = sides(m.field);
    r.set_ratio(lhs, rhs);
    return std::vector<RatioReport>{r};
  });
}

SweepOutcome stein_weiss(const Config& c) {
  const SymbolSpec spec = symbol_from(c, 2.0);
  const double alpha = c.num("alpha");
  const double beta = c.num("beta");
  const double gamma = c.num("gamma");
  return ratio_sweep(c, {"n", "alpha", "beta", "gamma"}, [&](const Field& f) {
    return std::pair{stein_weiss_ratio(f, spec, alpha, beta, gamma), 1.0};
  });
}

SweepOutcome stein_weiss_endpoint(const Config& c) {
  const SymbolSpec spec = symbol_from(c, 2.0);
  const double beta = c.num("beta");
  return ratio_sweep(c, {"n", "beta"}, [&](const Field& f) {
    const double rhs = weighted_norm(f, beta, WeightKind::pure_power);
    return std::pair{stein_weiss_endpoint_ratio(f, spec, beta) * rhs, rhs};
  });
}

SweepOutcome weight_commutator(const Config& c) {
  const double delta = c.num("delta");
  check_weight_commutator_range(c.integer("n"), delta);
  const DegreeZero q = DegreeZero::riesz(c.integer("riesz_axis"));
  return ratio_sweep(c, {"n", "delta"}, [&](const Field& f) {
    const double rhs = weighted_norm(f, delta, WeightKind::pure_power);
    return std::pair{weight_commutator_apply(f, delta, q).norm(), rhs};
  });
}

SweepOutcome freq_commutator(const Config& c) {
  const SymbolSpec spec = symbol_from(c, 2.0);
  const double kappa = c.num("kappa");
  check_frequency_commutator_range(spec.dimension(), kappa);
  return ratio_sweep(c, {"n", "kappa"}, [&](const Field& f) {
    const double rhs = weighted_norm(f, kappa, WeightKind::pure_power);
    return std::pair{freq_commutator_ratio(f, spec, kappa) * rhs, rhs};
  });
}

SweepOutcome case3(const Config& c) {
  const int n = c.integer("n");
  const GridSpec g(n, c.num("L"), c.integer("N"));
  const SymbolSpec spec = symbol_from(c, 2.0);
  const int k = c.integer("vanishing_order");
  const double tol = c.num("tolerance");
  // f^ = |xi|^{2k} e^{-|xi|^2/2}: the kappa = 1 sandwich needs f^ to vanish at
  // the origin, where a'/a is singular.
  const Field F = Field::sample(g, Space::frequency, [k](const Vec& xi) {
    const double r2 = dot(xi, xi);
    return std::pow(r2, k) * std::exp(-0.5 * r2);
  });
  const double res = commutator_reduction_residual(inverse_ft(F), spec);
  RatioReport r;
  char buf[48];
  std::snprintf(buf, sizeof buf, "|xi|^%d e^{-|xi|^2/2}", 2 * k);
  r.member_id = buf;
  r.point = "kappa=1";
  put_params(r, c, {"n"});
  r.grid = grid_meta(g);
  r.set_ratio(res, tol);
  SweepOutcome out;
  out.rows.push_back(r);
  out.checks.push_back({"relative_residual", res, tol});
  return out;
}

SweepOutcome cutoff_split(const Config& c) {
  const GridSpec g(c.integer("n"), c.num("L"), c.integer("N"));
  const double tol = c.num("tolerance");
  SweepOutcome out;
  double worst = 0.0;
  for (double m : c.list("orders")) {
    double e = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Vec xi = g.xi_point(i);
      const double target = std::pow(1.0 + dot(xi, xi), 0.5 * (m - 1.0));
      const double r = norm(xi);
      const double sum = split_low(xi, m) + (r > 0.0 ? std::pow(r, m - 1.0) * split_high(xi, m) : 0.0);
      e = std::max(e, std::abs(sum - target) / target);
    }
    RatioReport row;
    row.member_id = "lattice";
    char buf[32];
    std::snprintf(buf, sizeof buf, "m=%g", m);
    row.point = buf;
    row.params["n"] = g.dimension();
    row.params["m"] = m;
    row.grid = grid_meta(g);
    row.set_ratio(e, tol);
    out.rows.push_back(row);
    worst = std::max(worst, e);
  }
  out.checks.push_back({"max_relative_error", worst, tol});
  return out;
}

std::vector<ParamSpec> lemma_params(std::vector<ParamSpec> head) {
  const std::vector<ParamSpec> tail{param("symbol", "euclid", "symbol a"),
                                    param("epsilon", "0.3", "bump epsilon"),
                                    param("refine", "true", "also run N -> 2N"),
                                    param("max_delta", "0.10", "refinement bound")};
  head.insert(head.begin(), param("n", "2", "dimension", true));
  for (const ParamSpec& p : tail) head.push_back(p);
  for (const ParamSpec& p : family_param_specs("0.125,0.25,0.5,1,2,4,8", "fitted", "8", "128")) head.push_back(p);
  return head;
}

}  // namespace

std::vector<EstimateInfo> multiplier_estimates() {
  return {
      {"SW21",
       "Stein-Weiss inequality: ||a^{-beta} |D_xi|^{-alpha} f^|| <= C ||a^gamma f^||, "
       "0 < alpha < n, beta, gamma < n/2, alpha = beta + gamma",
       EstimateClass::ratio,
       lemma_params({param("alpha", "1", "alpha", true), param("beta", "0.5", "beta", true),
                     param("gamma", "0.5", "gamma", true)}),
       stein_weiss},
      {"SW22",
       "Stein-Weiss endpoint: ||a^{-beta} f^|| <= C || |x|^beta f ||, 0 <= beta < n/2",
       EstimateClass::ratio, lemma_params({param("beta", "0.5", "beta", true)}), stein_weiss_endpoint},
      {"L22",
       "Weight commutator: ||(|x|^delta q(D) - q(D) |x|^delta) f|| <= C || |x|^delta f ||, "
       "q homogeneous of degree zero, 0 < delta < 1 (n = 2), 0 < delta <= 1 (n >= 3)",
       EstimateClass::ratio,
       lemma_params({param("delta", "0.6", "delta", true),
                     param("riesz_axis", "0", "q(xi) = xi_axis / |xi|")}),
       weight_commutator},
      {"L23",
       "Frequency commutator: ||a^{-rho} r_kappa(D_xi) a^rho f^|| <= C || |x|^kappa f ||, rho = (n-1)/2, "
       "0 < kappa < 1 (n = 2), 0 < kappa < 3/2 (n >= 3)",
       EstimateClass::ratio, lemma_params({param("kappa", "0.5", "kappa", true)}), freq_commutator},
      {"case3-identity",
       "Sandwich reduction at kappa = 1: {a^{-rho} D_xi a^rho - D_xi} f^ = -i rho (a'/a) f^",
       EstimateClass::identity,
       {param("n", "3", "dimension", true), param("symbol", "euclid", "symbol a"),
        param("epsilon", "0.3", "bump epsilon"), param("L", "10", "box half width", true),
        param("N", "48", "points per axis", true),
        param("vanishing_order", "5", "f^ = |xi|^{2k} e^{-|xi|^2/2}"),
        param("tolerance", "1e-8", "relative residual bound")},
       case3},
      {"cutoff-split",
       "Low/high split of the bracket: b1(xi) + |xi|^{m-1} b2(xi) = <xi>^{m-1}",
       EstimateClass::identity,
       {param("n", "2", "dimension", true), param("L", "4", "box half width", true),
        param("N", "64", "points per axis", true), param("orders", "1.5,2,3", "orders m"),
        param("tolerance", "1e-14", "max relative error")},
       cutoff_split},
  };
}

}  // namespace splab::detail
