#include "splab/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "splab/errors.hpp"
#include "splab/trace.hpp"

namespace splab {

ZetaGrid ZetaGrid::make(double lambda_max, int cluster, int bulk, double eta_max, double eta_min,
                        int eta_count) {
  if (!(lambda_max > 0.0) || cluster < 1 || bulk < 2 || eta_count < 2) {
    throw UsageError("zeta grid needs lambda_max > 0, cluster >= 1, bulk >= 2, eta_count >= 2");
  }
  if (!(eta_max > eta_min && eta_min > 0.0)) throw UsageError("zeta grid needs eta_max > eta_min > 0");
  ZetaGrid z;
  const double knee = lambda_max / 8.0;
  z.lambdas.push_back(-knee);
  z.lambdas.push_back(-knee / 8.0);
  for (int i = cluster; i >= 1; --i) z.lambdas.push_back(knee * std::pow(0.5, i));
  for (int i = 0; i < bulk; ++i) z.lambdas.push_back(knee + (lambda_max - knee) * i / (bulk - 1));
  const double ratio = std::pow(eta_min / eta_max, 1.0 / (eta_count - 1));
  for (int i = 0; i < eta_count; ++i) z.etas.push_back(eta_max * std::pow(ratio, i));
  z.etas.back() = eta_min;
  return z;
}

void ZetaGrid::validate() const {
  if (lambdas.empty() || etas.empty() || signs.empty()) throw UsageError("zeta grid is empty");
  for (std::size_t i = 0; i < etas.size(); ++i) {
    if (!(etas[i] > 0.0)) throw UsageError("zeta grid requires eta > 0 (zeta off the real axis)");
    if (i > 0 && !(etas[i] < etas[i - 1])) throw UsageError("zeta grid etas must decrease");
  }
  for (int s : signs) {
    if (s != 1 && s != -1) throw UsageError("zeta grid signs must be +1 or -1");
  }
}

namespace {

Field to_frequency(const Field& f) {
  return f.space() == Space::physical ? forward_ft(f) : f;
}

}  // namespace

LatticeForm::LatticeForm(const MultiplierKind& b, const Field& f, const Field& g,
                         const SymbolSpec& spec) {
  const Field fh = to_frequency(f);
  const Field gh = to_frequency(g);
  if (!(fh.grid() == gh.grid())) throw UsageError("resolvent form fields must share a grid");
  const GridSpec& grid = fh.grid();
  if (spec.dimension() != grid.dimension()) throw UsageError("symbol and grid dimensions differ");
  const double dv = grid.freq_cell_volume();
  weight_.resize(grid.size());
  p_.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec xi = grid.xi_point(i);
    const SymbolSample sb = multiplier_symbol(b, xi);
    weight_[i] = sb.annihilated ? cplx{} : sb.value * fh[i] * std::conj(gh[i]) * dv;
    p_[i] = spec.p(xi);
  }
}

cplx LatticeForm::operator()(cplx zeta) const {
  if (zeta.imag() == 0.0) throw UsageError("resolvent form requires Im zeta != 0");
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    const double dr = zeta.real() - p_[i];
    const double inv = 1.0 / (dr * dr + zeta.imag() * zeta.imag());
    // w / (dr + i eta) = w (dr - i eta) / |.|^2
    const double wr = weight_[i].real(), wi = weight_[i].imag();
    re += (wr * dr + wi * zeta.imag()) * inv;
    im += (wi * dr - wr * zeta.imag()) * inv;
  }
  return {re, im};
}

cplx resolvent_form(const MultiplierKind& b, const Field& f, const Field& g,
                    const SymbolSpec& spec, cplx zeta) {
  if (zeta.imag() == 0.0) throw UsageError("resolvent form requires Im zeta != 0");
  return LatticeForm(b, f, g, spec)(zeta);
}

double polarization_check(const MultiplierKind& b, const Field& f, const Field& g,
                          const SymbolSpec& spec, cplx zeta) {
  const cplx i{0.0, 1.0};
  auto q = [&](const Field& h) { return resolvent_form(b, h, h, spec, zeta); };
  const Field ig = i * g;
  const cplx direct = resolvent_form(b, f, g, spec, zeta);
  const cplx combined = 0.25 * (q(f + g) - q(f - g)) + 0.25 * i * (q(f + ig) - q(f - ig));
  return std::abs(direct - combined) / (std::abs(direct) + 1.0);
}

double resolvent_identity_residual(const Field& f, const SymbolSpec& spec, cplx z1, cplx z2) {
  const MultiplierKind one = HomogeneousPower{0.0};
  const cplx lhs = resolvent_form(one, f, f, spec, z1) - resolvent_form(one, f, f, spec, z2);
  const Field fh = to_frequency(f);
  const GridSpec& grid = fh.grid();
  cplx acc{};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double p = spec.p(grid.xi_point(i));
    acc += std::norm(fh[i]) / ((z1 - p) * (z2 - p));
  }
  const cplx rhs = (z2 - z1) * acc * grid.freq_cell_volume();
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), std::numeric_limits<double>::min());
}

double eta_floor(const Field& f, const SymbolSpec& spec, double rel) {
  const Field fh = to_frequency(f);
  const GridSpec& grid = fh.grid();
  double peak = 0.0;
  for (std::size_t i = 0; i < fh.size(); ++i) peak = std::max(peak, std::norm(fh[i]));
  double gmax = 0.0;
  for (std::size_t i = 0; i < fh.size(); ++i) {
    if (i == grid.origin_index() || std::norm(fh[i]) < rel * peak) continue;
    gmax = std::max(gmax, spec.grad_p_norm(grid.xi_point(i)));
  }
  return 4.0 * gmax * grid.dxi();
}

namespace {

constexpr int kPanelPoints = 12;

}  // namespace

SpectralForm::SpectralForm(const MultiplierKind& b, const Field& f, const SymbolSpec& spec,
                           int resolution)
    : order_(spec.order()) {
  const Field phys = f.space() == Space::physical ? f : inverse_ft(f);
  const Field fh = to_frequency(f);
  const GridSpec& grid = fh.grid();
  const int n = grid.dimension();
  if (spec.dimension() != n) throw UsageError("symbol and grid dimensions differ");

  double peak = 0.0;
  for (std::size_t i = 0; i < fh.size(); ++i) peak = std::max(peak, std::norm(fh[i]));
  if (peak == 0.0) throw UsageError("spectral form rejects the zero field");
  double content = 0.0;
  for (std::size_t i = 0; i < fh.size(); ++i) {
    if (std::norm(fh[i]) >= 1e-24 * peak) content = std::max(content, spec.a(grid.xi_point(i)));
  }
  r_max_ = std::min(1.1 * content + grid.dxi(), max_level_in_box(spec, grid));

  const LevelSetQuad unit = build_quad(spec, 1.0, resolution);
  std::vector<double> inv_grad(unit.nodes.size());
  for (std::size_t q = 0; q < unit.nodes.size(); ++q) inv_grad[q] = 1.0 / norm(spec.grad_a(unit.nodes[q]));

  const std::vector<double> breaks = graded_breaks(0.0, r_max_, 24, 30);
  const std::vector<double> rs = PanelInterpolant::sample_points(breaks, kPanelPoints);
  std::vector<Vec> targets;
  targets.reserve(rs.size() * unit.nodes.size());
  for (double r : rs) {
    for (const Vec& x : unit.nodes) targets.push_back(scaled(x, r));
  }
  const auto vals = nuft_eval(phys, targets);
  std::vector<double> s(rs.size());
  std::size_t idx = 0;
  for (std::size_t k = 0; k < rs.size(); ++k) {
    double acc = 0.0;
    for (std::size_t q = 0; q < unit.nodes.size(); ++q, ++idx) {
      const cplx bv = multiplier_symbol(b, targets[idx]).value;
      if (std::abs(bv.imag()) > 1e-12 * std::abs(bv.real()) + 1e-300) {
        throw UsageError("spectral form requires a real multiplier");
      }
      acc += unit.weights[q] * bv.real() * std::norm(vals[idx]) * inv_grad[q];
    }
    s[k] = acc * std::pow(rs[k], n - 1);
  }
  radial_ = PanelInterpolant(breaks, kPanelPoints, std::move(s));
}

double SpectralForm::density(double tau) const {
  if (!(tau > 0.0)) return 0.0;
  const double r = std::pow(tau, 1.0 / order_);
  if (r > r_max_) return 0.0;
  return radial_(r) / (order_ * std::pow(r, order_ - 1.0));
}

cplx SpectralForm::integrate(double lambda, double eta, int sign) const {
  const double m = order_;
  const double top = std::pow(r_max_, m);
  const cplx zeta{lambda, sign * eta};
  const bool subtract = lambda > 0.0 && lambda < top;
  double s_lambda = 0.0;
  double focus = std::numeric_limits<double>::quiet_NaN();
  double width = 0.0;
  if (subtract) {
    focus = std::pow(lambda, 1.0 / m);
    s_lambda = density(lambda);
    width = std::max(eta / (m * std::pow(focus, m - 1.0)), 1e-9 * r_max_);
  }
  const QuadratureRule rule =
      composite_gauss_legendre(graded_breaks(0.0, r_max_, 24, 30, focus, width), kPanelPoints);
  cplx acc{};
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double r = rule.nodes[k];
    double num = radial_(r);
    if (subtract) num -= s_lambda * m * std::pow(r, m - 1.0);
    acc += rule.weights[k] * num / (zeta - std::pow(r, m));
  }
  if (subtract) {
    cplx logs;
    if (eta > 0.0) {
      logs = std::log(zeta) - std::log(zeta - top);
    } else {
      logs = cplx{std::log(lambda) - std::log(top - lambda), -sign * kPi};
    }
    acc += s_lambda * logs;
  }
  return acc;
}

cplx SpectralForm::operator()(cplx zeta) const {
  if (zeta.imag() == 0.0) throw UsageError("resolvent form requires Im zeta != 0");
  return integrate(zeta.real(), std::abs(zeta.imag()), zeta.imag() > 0.0 ? 1 : -1);
}

cplx SpectralForm::boundary_value(double lambda, int sign) const {
  if (sign != 1 && sign != -1) throw UsageError("boundary value sign must be +1 or -1");
  return integrate(lambda, 0.0, sign);
}

std::string to_string(ResolventEstimate e) {
  switch (e) {
    case ResolventEstimate::T12_I:
      return "T12_I";
    case ResolventEstimate::T12_II:
      return "T12_II";
    case ResolventEstimate::L51:
      return "L51";
  }
  return "unknown";
}

void check_resolvent_hypotheses(int dimension, double order, ResolventEstimate e, double delta) {
  require_hypothesis(dimension >= 2, "resolvent estimates require n >= 2");
  if (e == ResolventEstimate::T12_I) {
    require_hypothesis(order > 1.0, "TYPE-I resolvent estimate requires m > 1");
    require_hypothesis(delta > 0.5, "TYPE-I resolvent estimate requires delta > 1/2");
  } else {
    require_hypothesis(order > 1.0 && order < dimension,
                       e == ResolventEstimate::L51 ? "low-frequency resolvent estimate requires 1<m<n"
                                                   : "TYPE-II resolvent estimate requires 1<m<n");
  }
}

std::vector<ResolventMemberResult> resolvent_sup_ratio(const std::vector<Field>& family,
                                                       const SymbolSpec& spec,
                                                       ResolventEstimate e, double delta,
                                                       const ZetaGrid& zgrid, int resolution) {
  if (family.empty()) throw UsageError("resolvent sweep needs a nonempty family");
  check_resolvent_hypotheses(spec.dimension(), spec.order(), e, delta);
  zgrid.validate();
  const double m = spec.order();
  MultiplierKind b = HomogeneousPower{0.0};
  double weight_exp = 0.5 * m;
  if (e == ResolventEstimate::T12_I) {
    b = HomogeneousPower{m - 1.0};
    weight_exp = delta;
  } else if (e == ResolventEstimate::T12_II) {
    b = BracketPower{m - 1.0};
  }

  std::vector<ResolventMemberResult> out;
  for (const Field& f : family) {
    if (f.is_zero()) throw UsageError("resolvent sweep rejects the zero field");
    ResolventMemberResult r;
    const double rn = weighted_norm(f, weight_exp, WeightKind::japanese_bracket);
    r.rhs = rn * rn;
    const SpectralForm sf(b, f, spec, resolution);
    const double scale = zgrid.relative ? sf.spectral_scale() : 1.0;

    auto sup_at = [&](double eta, cplx* where) {
      double best = 0.0;
      for (double lam : zgrid.lambdas) {
        for (int s : zgrid.signs) {
          const cplx z{lam * scale, s * eta * scale};
          const double v = std::abs(sf(z));
          if (v > best) {
            best = v;
            if (where) *where = z;
          }
        }
      }
      return best;
    };
    for (double eta : zgrid.etas) {
      cplx where{};
      const double v = sup_at(eta, &where);
      if (v > r.lhs) {
        r.lhs = v;
        r.zeta_at_sup = where;
      }
    }
    r.ratio = r.lhs / r.rhs;
    r.sup_eta_min = sup_at(zgrid.eta_min(), nullptr) / r.rhs;
    r.sup_eta_2min = sup_at(2.0 * zgrid.eta_min(), nullptr) / r.rhs;
    const double half = std::max(r.lhs, sup_at(0.5 * zgrid.eta_min(), nullptr));
    r.halving_delta = (half - r.lhs) / r.lhs;
    double bsup = 0.0;
    for (double lam : zgrid.lambdas) {
      for (int s : zgrid.signs) bsup = std::max(bsup, std::abs(sf.boundary_value(lam * scale, s)));
    }
    r.boundary_ratio = bsup / r.rhs;

    r.eta_floor = eta_floor(f, spec);
    std::vector<double> checks;
    for (double eta : zgrid.etas) {
      if (eta * scale >= r.eta_floor) checks.push_back(eta * scale);
    }
    if (checks.empty()) checks.push_back(r.eta_floor);
    const LatticeForm lf(b, f, f, spec);
    for (double eta : checks) {
      for (double lam : zgrid.lambdas) {
        for (int s : zgrid.signs) {
          const cplx z{lam * scale, s * eta};
          r.lattice_check = std::max(r.lattice_check, std::abs(lf(z) - sf(z)) / r.lhs);
        }
      }
    }
    out.push_back(r);
  }
  return out;
}

KatoResult kato_identity(double q_weight_exp, const MultiplierKind& q_deriv,
                         const SpaceTimeField& F, const SymbolSpec& spec,
                         const std::vector<double>& eta_list, int sign, double tau_step) {
  if (eta_list.size() < 2) throw UsageError("Kato identity needs at least two eta values");
  for (std::size_t i = 0; i < eta_list.size(); ++i) {
    if (!(eta_list[i] > 0.0)) throw UsageError("Kato identity requires eta > 0");
    if (i > 0 && !(eta_list[i] < eta_list[i - 1])) throw UsageError("Kato eta list must decrease");
  }
  if (sign != 1 && sign != -1) throw UsageError("Kato sign must be +1 or -1");
  const TimeGrid& time = F.time;
  const GridSpec& grid = F.grid();
  const std::size_t count = grid.size();
  const double dv = grid.freq_cell_volume();

  // Frequency frames of Q* F(t_k) = conj(q)(D) <x>^{-w} F(t_k).
  std::vector<double> wx(count), p(count);
  std::vector<cplx> qc(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Vec x = grid.x_point(i);
    wx[i] = std::pow(1.0 + dot(x, x), -0.5 * q_weight_exp);
    const Vec xi = grid.xi_point(i);
    const SymbolSample s = multiplier_symbol(q_deriv, xi);
    qc[i] = s.annihilated ? cplx{} : std::conj(s.value);
    p[i] = spec.p(xi);
  }
  std::vector<std::vector<cplx>> frames;
  bool all_zero = true;
  for (const Field& fr : F.frames) {
    Field w = fr;
    for (std::size_t i = 0; i < count; ++i) w[i] *= wx[i];
    Field h = forward_ft(w);
    std::vector<cplx> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = qc[i] * h[i];
    if (!fr.is_zero()) all_zero = false;
    frames.push_back(std::move(v));
  }
  KatoResult res;
  res.etas = eta_list;
  if (all_zero) {
    res.limiting.assign(eta_list.size(), 0.0);
    return res;
  }
  const double norm_t = 1.0 / std::sqrt(2.0 * kPi);
  auto time_transform = [&](std::size_t i, double tau) {
    cplx acc{};
    for (std::size_t k = 0; k < frames.size(); ++k) {
      acc += time.weight(k) * std::polar(1.0, -time.t(k) * tau) * frames[k][i];
    }
    return norm_t * acc;
  };

  // Only p below the time Nyquist pi/dt is resolved; beyond it the discrete
  // time transform aliases back onto the band.
  const double tau_max = kPi / time.dt();
  for (std::size_t i = 0; i < count; ++i) {
    if (p[i] < tau_max) res.direct += std::norm(time_transform(i, p[i]));
  }
  res.direct *= dv;

  res.tau_step = tau_step > 0.0 ? tau_step : 0.25 * eta_list.back();
  const int nodes = static_cast<int>(std::ceil(tau_max / res.tau_step)) + 1;
  const QuadratureRule rule = trapezoid(nodes, 0.0, tau_max);
  res.limiting.assign(eta_list.size(), 0.0);
  std::vector<cplx> phase(frames.size()), step(frames.size());
  for (std::size_t k = 0; k < frames.size(); ++k) step[k] = std::polar(1.0, -time.t(k) * (rule.nodes[1] - rule.nodes[0]));
  std::vector<double> dens(count);
  for (int j = 0; j < nodes; ++j) {
    const double tau = rule.nodes[j];
    if (j % 64 == 0) {
      for (std::size_t k = 0; k < frames.size(); ++k) phase[k] = std::polar(1.0, -time.t(k) * tau);
    }
    for (std::size_t i = 0; i < count; ++i) {
      double re = 0.0, im = 0.0;
      for (std::size_t k = 0; k < frames.size(); ++k) {
        const cplx a = phase[k] * time.weight(k);
        const cplx b = frames[k][i];
        re += a.real() * b.real() - a.imag() * b.imag();
        im += a.real() * b.imag() + a.imag() * b.real();
      }
      dens[i] = (re * re + im * im) * norm_t * norm_t;
    }
    for (std::size_t e = 0; e < eta_list.size(); ++e) {
      const double eta = eta_list[e];
      // -sign/pi Im sum dens / (tau + sign i eta - p) = (1/pi) sum dens eta / ((tau-p)^2 + eta^2)
      double acc = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        const cplx form = dens[i] / cplx{tau - p[i], sign * eta};
        acc += -sign * form.imag();
      }
      res.limiting[e] += rule.weights[j] * acc * dv / kPi;
    }
    for (std::size_t k = 0; k < frames.size(); ++k) phase[k] *= step[k];
  }
  const std::size_t last = eta_list.size() - 1;
  const double e1 = eta_list[last - 1], e2 = eta_list[last];
  res.extrapolated = (e1 * res.limiting[last] - e2 * res.limiting[last - 1]) / (e1 - e2);
  res.residual = std::abs(res.direct - res.extrapolated) / res.direct;
  return res;
}

double kato_identity_residual(double q_weight_exp, const MultiplierKind& q_deriv,
                              const SpaceTimeField& F, const SymbolSpec& spec,
                              const std::vector<double>& eta_list) {
  return kato_identity(q_weight_exp, q_deriv, F, spec, eta_list).residual;
}

double pv_vanish(double lambda, double eta, int quad_points, bool asymmetric) {
  if (!(lambda > 0.0 && eta > 0.0)) throw UsageError("pv_vanish requires lambda > 0 and eta > 0");
  if (quad_points < 2 || quad_points % 2 != 0) throw UsageError("pv_vanish requires an even node count");
  const double h = lambda / quad_points;
  auto kernel = [&](double d) { return d / (d * d + eta * eta); };
  double total = 0.0;
  const int half = quad_points / 2;
  for (int j = 0; j < half; ++j) {
    const double d = (j + 0.5) * h;
    if (asymmetric) {
      // Shift both nodes the same way: the pair no longer cancels.
      total += h * (kernel(d + 0.3 * h) + kernel(-d + 0.3 * h));
    } else {
      total += h * (kernel(d) + kernel(-d));
    }
  }
  return total;
}

std::pair<SpaceTimeField, SpaceTimeField> heaviside_split(const SpaceTimeField& F) {
  std::vector<Field> plus, minus;
  for (std::size_t k = 0; k < F.frames.size(); ++k) {
    const Field zero(F.frames[k].grid(), F.frames[k].space());
    if (F.time.t(k) >= 0.0 || k == F.time.zero_index()) {
      plus.push_back(F.frames[k]);
      minus.push_back(zero);
    } else {
      plus.push_back(zero);
      minus.push_back(F.frames[k]);
    }
  }
  return {SpaceTimeField(F.time, std::move(plus)), SpaceTimeField(F.time, std::move(minus))};
}

}  // namespace splab
