#include <algorithm>
#include <cmath>
#include <cstdio>

#include "estimates.hpp"
#include "splab/errors.hpp"
#include "splab/resolvent.hpp"

namespace splab::detail {

namespace {

std::string zeta_text(cplx z) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "zeta=%g%+gi", z.real(), z.imag());
  return buf;
}

SweepOutcome kato(const Config& c) {
  const int n = c.integer("n");
  const GridSpec g(n, c.num("L"), c.integer("N"));
  const SymbolSpec spec = symbol_from(c);
  const TimeGrid tg(c.num("T"), c.integer("M"));
  const double w = c.num("weight");
  const MultiplierKind q = HomogeneousPower{c.num("derivative")};
  const double tol = c.num("tolerance");
  // Band-limited in t and x.
  const SpaceTimeField F = SpaceTimeField::sample(tg, g, [](double t, const Vec& x) {
    return std::polar(1.0, 3.0 * t) * std::exp(-t * t / 8.0) * std::exp(-0.5 * dot(x, x));
  });
  const std::vector<double> etas = c.list("etas");
  const double eta_min = *std::min_element(etas.begin(), etas.end());
  const KatoResult base = kato_identity(w, q, F, spec, etas, +1, eta_min / 4.0);
  const KatoResult fine = kato_identity(w, q, F, spec, etas, +1, eta_min / 8.0);

  SweepOutcome out;
  auto add = [&](const std::string& point, const KatoResult& k) {
    RatioReport r;
    r.member_id = "e^{3it} e^{-t^2/8} e^{-|x|^2/2}";
    r.point = point;
    put_params(r, c, {"n", "m"});
    r.grid = grid_meta(g);
    r.grid.T = tg.half_span();
    r.grid.M = tg.steps();
    r.set_ratio(k.residual, tol);
    r.eta_at_sup = eta_min;
    r.extra["direct"] = k.direct;
    r.extra["extrapolated"] = k.extrapolated;
    r.extra["tau_step"] = k.tau_step;
    out.rows.push_back(r);
  };
  add("tau_step=eta_min/4", base);
  add("tau_step=eta_min/8", fine);
  out.checks.push_back({"relative_residual", base.residual, tol});
  const double shift = base.direct > 0.0 ? std::abs(fine.extrapolated - base.extrapolated) / base.direct : 0.0;
  out.checks.push_back({"tau_refinement_shift", shift, 0.1 * tol});
  return out;
}

const std::vector<std::pair<cplx, cplx>>& zeta_pairs() {
  static const std::vector<std::pair<cplx, cplx>> z{
      {{1.0, 0.5}, {2.0, 0.1}}, {{0.3, -0.2}, {-1.0, 1.0}}, {{5.0, 0.01}, {5.0, -0.01}}};
  return z;
}

SweepOutcome resolvent_identity(const Config& c) {
  const SymbolSpec spec = symbol_from(c);
  const double tol = c.num("tolerance");
  SweepOutcome out;
  out.rows = over_members(members_from(c), [&](const FamilyMember& m) {
    std::vector<RatioReport> rows;
    for (const auto& [z1, z2] : zeta_pairs()) {
      RatioReport r;
      r.point = zeta_text(z1) + ":" + zeta_text(z2);
      put_params(r, c, {"n", "m"});
      r.grid = grid_meta(m.field.grid());
      r.set_ratio(resolvent_identity_residual(m.field, spec, z1, z2), tol);
      rows.push_back(r);
    }
    return rows;
  });
  double worst = 0.0;
  for (const RatioReport& r : out.rows) worst = std::max(worst, r.lhs);
  out.checks.push_back({"max_residual", worst, tol});
  return out;
}

SweepOutcome polarization(const Config& c) {
  const SymbolSpec spec = symbol_from(c);
  const double m = spec.order();
  const double tol = c.num("tolerance");
  const auto members = members_from(c);
  const std::vector<std::pair<std::string, MultiplierKind>> kinds{
      {"b=1", BracketPower{0.0}},
      {"b=|xi|^{m-1}", HomogeneousPower{m - 1.0}},
      {"b=<xi>^{m-1}", BracketPower{m - 1.0}}};
  SweepOutcome out;
  double worst = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Field& f = members[i].field;
    const Field& g0 = members[(i + 1) % members.size()].field;
    if (!(g0.grid() == f.grid())) throw ConfigError("polarization needs one grid (grid = fixed)");
    const std::vector<std::pair<std::string, Field>> partners{
        {"g=next", g0}, {"g=f", f}, {"g=if", cplx(0.0, 1.0) * f}};
    for (const auto& [gname, g] : partners) {
      for (const auto& [bname, b] : kinds) {
        for (const auto& [z1, z2] : zeta_pairs()) {
          for (const cplx z : {z1, z2}) {
            RatioReport r;
            r.member_id = members[i].id;
            r.point = gname + ":" + bname + ":" + zeta_text(z);
            put_params(r, c, {"n", "m"});
            r.grid = grid_meta(f.grid());
            r.set_ratio(polarization_check(b, f, g, spec, z), tol);
            worst = std::max(worst, r.lhs);
            out.rows.push_back(r);
          }
        }
      }
    }
  }
  out.checks.push_back({"max_residual", worst, tol});
  return out;
}

SweepOutcome pv(const Config& c) {
  const double tol = c.num("tolerance");
  const int q = c.integer("quad_points");
  SweepOutcome out;
  double worst = 0.0;
  double control = std::numeric_limits<double>::infinity();
  for (double lambda : c.list("lambdas")) {
    for (double eta : c.list("etas")) {
      for (bool asym : {false, true}) {
        const double v = std::abs(pv_vanish(lambda, eta, q, asym));
        RatioReport r;
        r.member_id = asym ? "asymmetric rule" : "symmetric rule";
        char buf[48];
        std::snprintf(buf, sizeof buf, "lambda=%g:eta=%g", lambda, eta);
        r.point = buf;
        r.grid.resolution = q;
        r.set_ratio(v, tol);
        out.rows.push_back(r);
        if (asym) {
          control = std::min(control, v);
        } else {
          worst = std::max(worst, v);
        }
      }
    }
  }
  out.checks.push_back({"max_symmetric_value", worst, tol});
  Check ctl{"min_asymmetric_value", control, 1e-6, false};
  ctl.gating = false;
  out.checks.push_back(ctl);
  return out;
}

SweepOutcome resolvent_ratio(const Config& c, ResolventEstimate e) {
  const SymbolSpec spec = symbol_from(c);
  const double delta = e == ResolventEstimate::T12_I ? c.num("delta") : 0.0;
  check_resolvent_hypotheses(spec.dimension(), spec.order(), e, delta);
  ZetaGrid z = ZetaGrid::make(c.num("lambda_max"), c.integer("cluster"), c.integer("bulk"),
                              c.num("eta_max"), c.num("eta_min"), c.integer("eta_count"));
  z.relative = c.flag("relative");
  const int res = c.integer("resolution");
  const auto members = members_from(c);
  SweepOutcome out;
  out.rows = over_members(members, [&](const FamilyMember& m) {
    const ResolventMemberResult r = resolvent_sup_ratio({m.field}, spec, e, delta, z, res).front();
    RatioReport row;
    row.point = zeta_text(r.zeta_at_sup);
    put_params(row, c, e == ResolventEstimate::T12_I ? std::vector<std::string>{"n", "m", "delta"}
                                                     : std::vector<std::string>{"n", "m"});
    row.grid = grid_meta(m.field.grid(), res);
    row.lhs = r.lhs;
    row.rhs = r.rhs;
    row.ratio = r.ratio;
    row.eta_at_sup = std::abs(r.zeta_at_sup.imag());
    row.refinement_delta = r.halving_delta;
    row.extra["lambda_at_sup"] = r.zeta_at_sup.real();
    row.extra["sup_eta_min"] = r.sup_eta_min;
    row.extra["sup_2eta_min"] = r.sup_eta_2min;
    row.extra["boundary_ratio"] = r.boundary_ratio;
    row.extra["eta_floor"] = r.eta_floor;
    row.extra["lattice_check"] = r.lattice_check;
    return std::vector<RatioReport>{row};
  });
  out.checks.push_back(finite_check(out.rows));
  double halving = 0.0;
  double lattice = 0.0;
  for (const RatioReport& r : out.rows) {
    halving = std::max(halving, r.refinement_delta);
    lattice = std::max(lattice, r.extra.at("lattice_check"));
  }
  out.checks.push_back({"eta_halving_delta", halving, c.num("max_halving")});
  Check lat{"lattice_vs_spectral", lattice, 1e-3};
  lat.gating = false;
  out.checks.push_back(lat);
  return out;
}

std::vector<ParamSpec> resolvent_params(ResolventEstimate e) {
  const bool one = e == ResolventEstimate::T12_I;
  std::vector<ParamSpec> p{
      param("n", "2", "dimension", true),
      param("m", one ? "2" : "1.5", one ? "order, m > 1" : "order, 1 < m < n", true),
      param("symbol", "euclid", "euclid | lp4 | bump"),
      param("epsilon", "0.3", "bump epsilon"),
  };
  if (one) p.push_back(param("delta", "0.6", "weight exponent, delta > 1/2", true));
  for (ParamSpec& f : family_param_specs("0.25,0.5,1,2,4", "fitted", "12", "64")) p.push_back(f);
  for (ParamSpec& f : std::vector<ParamSpec>{
           param("relative", "true", "lambda and eta in units of each member's spectral scale"),
           param("lambda_max", "1", "largest lambda"), param("cluster", "6", "geometric lambdas near 0"),
           param("bulk", "16", "uniform lambdas"), param("eta_max", "0.1", "largest eta"),
           param("eta_min", "1e-4", "smallest eta"), param("eta_count", "4", "geometric etas"),
           param("resolution", "64", "level-set nodes", true),
           param("max_halving", "0.02", "bound on the eta_min halving change")}) {
    p.push_back(f);
  }
  return p;
}

std::vector<ParamSpec> fixed_family(std::vector<ParamSpec> head, const std::string& dilations,
                                    const std::string& L, const std::string& N) {
  for (ParamSpec& f : family_param_specs(dilations, "fixed", L, N)) head.push_back(f);
  return head;
}

}  // namespace

std::vector<EstimateInfo> resolvent_estimates() {
  const std::vector<ParamSpec> sym{param("n", "2", "dimension", true), param("m", "2", "order", true),
                                   param("symbol", "euclid", "symbol"), param("epsilon", "0.3", "bump epsilon")};
  std::vector<ParamSpec> ident = fixed_family(sym, "0.5,1,2", "16", "128");
  ident.push_back(param("tolerance", "1e-12", "residual bound"));
  std::vector<ParamSpec> polar = ident;
  for (ParamSpec& p : polar) {
    if (p.key == "family") p.fallback = "random_bandlimited";
    if (p.key == "dilations") p.fallback = "1,1.5";
    if (p.key == "L") p.fallback = "12";
    if (p.key == "N") p.fallback = "64";
  }
  return {
      {"kato-chain",
       "Space-time norm through the limiting absorption principle: "
       "||(Q e^{itp})^* F||^2 = lim_{eta -> 0} (1/pi) Im int ((tau + i eta - p(D))^{-1} Q^* F~(tau), Q^* F~(tau)) dtau",
       EstimateClass::identity,
       {param("n", "1", "dimension", true), param("m", "2", "order", true),
        param("symbol", "euclid", "symbol"), param("epsilon", "0.3", "bump epsilon"),
        param("L", "16", "box half width", true), param("N", "128", "points per axis", true),
        param("T", "12", "time half span", true), param("M", "96", "time steps", true),
        param("weight", "1", "Q = <x>^{-weight} |D|^{derivative}"), param("derivative", "0.5", "see weight"),
        param("etas", "0.04,0.02,0.01", "eta values for the extrapolation"),
        param("tolerance", "1e-3", "relative residual bound")},
       kato},
      {"resolvent-identity",
       "First resolvent identity R(z1) - R(z2) = (z2 - z1) R(z1) R(z2) in quadratic form",
       EstimateClass::identity, ident, resolvent_identity},
      {"polarization",
       "Polarization of the resolvent form: (b R(zeta) f, g) = 1/4 sum_k i^k (b R(zeta)(f + i^k g), f + i^k g)",
       EstimateClass::identity, polar, polarization},
      {"pv-vanish",
       "Odd-kernel cancellation: int_{lambda/2}^{3 lambda/2} (lambda - tau) / ((lambda - tau)^2 + eta^2) dtau = 0",
       EstimateClass::identity,
       {param("lambdas", "1,4", "lambda values"), param("etas", "0.1,0.01", "eta values"),
        param("quad_points", "64", "symmetric rule size (even)"),
        param("tolerance", "1e-14", "bound on the symmetric value")},
       pv},
      {"T12-I",
       "TYPE-I resolvent estimate: sup_{zeta not real} |(|D|^{m-1} (zeta - p(D))^{-1} f, f)| <= C ||<x>^delta f||^2",
       EstimateClass::ratio, resolvent_params(ResolventEstimate::T12_I),
       [](const Config& c) { return resolvent_ratio(c, ResolventEstimate::T12_I); }},
      {"T12-II",
       "TYPE-II resolvent estimate: sup_{zeta not real} |(<D>^{m-1} (zeta - p(D))^{-1} f, f)| <= C ||<x>^{m/2} f||^2",
       EstimateClass::ratio, resolvent_params(ResolventEstimate::T12_II),
       [](const Config& c) { return resolvent_ratio(c, ResolventEstimate::T12_II); }},
      {"L51",
       "TYPE-II low-frequency resolvent bound: sup_{zeta not real} |((zeta - p(D))^{-1} f, f)| <= C ||<x>^{m/2} f||^2, 1 < m < n",
       EstimateClass::ratio, resolvent_params(ResolventEstimate::L51),
       [](const Config& c) { return resolvent_ratio(c, ResolventEstimate::L51); }},
  };
}

}  // namespace splab::detail
