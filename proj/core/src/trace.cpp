#include "splab/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "splab/errors.hpp"
#include "splab/multiplier.hpp"
#include "splab/quadrature.hpp"
#include "splab/resolvent.hpp"

namespace splab {

double LevelSetQuad::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

LevelSetQuad LevelSetQuad::dilated(double s) const {
  if (!(s > 0.0)) throw UsageError("level set dilation factor must be positive");
  LevelSetQuad out = *this;
  out.tau = tau * s;
  const double ws = std::pow(s, dimension - 1);
  for (auto& x : out.nodes) x = scaled(x, s);
  for (auto& w : out.weights) w *= ws;
  return out;
}

namespace {

// d/ds of tau w(s) / a(w(s)) for a unit-sphere curve w(s) with tangent dw.
Vec graph_derivative(const SymbolSpec& spec, double tau, const Vec& w, const Vec& dw) {
  const double a = spec.a(w);
  const Vec ga = spec.grad_a(w);
  return scaled(scaled(dw, 1.0 / a) - scaled(w, dot(ga, dw) / (a * a)), tau);
}

}  // namespace

LevelSetQuad build_quad(const SymbolSpec& spec, double tau, int resolution) {
  if (!(tau > 0.0)) throw UsageError("level set requires tau > 0 (Sigma(0) is the origin)");
  const int n = spec.dimension();
  LevelSetQuad q;
  q.dimension = n;
  q.tau = tau;
  q.resolution = resolution;
  if (n == 1) {
    q.rule = SphereRule::point_pair;
    for (double s : {-1.0, 1.0}) {
      const Vec w{s, 0.0, 0.0};
      q.nodes.push_back(scaled(w, tau / spec.a(w)));
      q.weights.push_back(1.0);
    }
    return q;
  }
  if (resolution < 8) throw UsageError("level set resolution must be >= 8");
  if (n == 2) {
    q.rule = SphereRule::trapezoid_angle;
    const double h = 2.0 * kPi / resolution;
    for (int k = 0; k < resolution; ++k) {
      const double th = k * h;
      const Vec w{std::cos(th), std::sin(th), 0.0};
      const Vec dw{-std::sin(th), std::cos(th), 0.0};
      q.nodes.push_back(scaled(w, tau / spec.a(w)));
      q.weights.push_back(norm(graph_derivative(spec, tau, w, dw)) * h);
    }
    return q;
  }
  q.rule = SphereRule::product_lat_long;
  const QuadratureRule lat = gauss_legendre(resolution / 2, -1.0, 1.0);
  const double h = 2.0 * kPi / resolution;
  for (std::size_t i = 0; i < lat.nodes.size(); ++i) {
    const double u = lat.nodes[i];
    const double s = std::sqrt(1.0 - u * u);
    for (int k = 0; k < resolution; ++k) {
      const double psi = k * h;
      const Vec w{s * std::cos(psi), s * std::sin(psi), u};
      const Vec wu{-u / s * std::cos(psi), -u / s * std::sin(psi), 1.0};
      const Vec wpsi{-s * std::sin(psi), s * std::cos(psi), 0.0};
      const Vec xu = graph_derivative(spec, tau, w, wu);
      const Vec xpsi = graph_derivative(spec, tau, w, wpsi);
      q.nodes.push_back(scaled(w, tau / spec.a(w)));
      q.weights.push_back(norm(cross(xu, xpsi)) * lat.weights[i] * h);
    }
  }
  return q;
}

void write_quad_csv(std::ostream& os, const LevelSetQuad& quad) {
  for (int d = 0; d < quad.dimension; ++d) os << "xi_" << (d + 1) << ',';
  os << "weight\n";
  os.precision(17);
  for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
    for (int d = 0; d < quad.dimension; ++d) os << quad.nodes[i][d] << ',';
    os << quad.weights[i] << '\n';
  }
}

double trace_norm(const Field& f, const LevelSetQuad& quad) {
  if (f.grid().dimension() != quad.dimension) throw UsageError("field and level set dimensions differ");
  const auto vals = nuft_eval(f, quad.nodes);
  double s = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) s += quad.weights[i] * std::norm(vals[i]);
  return std::sqrt(s);
}

double trace_norm_frequency(const Field& F, const LevelSetQuad& quad) {
  if (F.grid().dimension() != quad.dimension) throw UsageError("field and level set dimensions differ");
  const auto vals = interpolate_frequency(F, quad.nodes);
  double s = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) s += quad.weights[i] * std::norm(vals[i]);
  return std::sqrt(s);
}

namespace {

double trace_rhs(const Field& f, double theta) {
  const double rhs = weighted_norm(f, 0.5 + theta, WeightKind::japanese_bracket);
  if (rhs == 0.0) throw UsageError("trace estimates reject the zero field");
  return rhs;
}

}  // namespace

double trace_ratio(const Field& f, const SymbolSpec& spec, double tau, double theta,
                   int resolution) {
  require_hypothesis(spec.dimension() >= 2, "uniform trace estimate requires n >= 2");
  require_hypothesis(theta > 0.0, "uniform trace estimate requires theta > 0");
  const double rhs = trace_rhs(f, theta);
  return trace_norm(f, build_quad(spec, tau, resolution)) / rhs;
}

void check_hoelder_range(int dimension, double theta) {
  require_hypothesis(dimension >= 2, "Hoelder trace estimate requires n >= 2");
  require_hypothesis(dimension != 2 || (theta > 0.0 && theta <= 0.5),
                     "Hoelder trace estimate requires 0<theta<=1/2 for n=2");
  require_hypothesis(dimension < 3 || (theta > 0.0 && theta < 1.0),
                     "Hoelder trace estimate requires 0<theta<1 for n>=3");
}

void check_lowfreq_range(int dimension, double theta) {
  require_hypothesis(dimension >= 2, "low-frequency trace estimate requires n >= 2");
  require_hypothesis(theta > 0.0 && theta < 0.5 * (dimension - 1),
                     "low-frequency trace estimate requires 0<theta<(n-1)/2");
}

double hoelder_ratio(const Field& f, const SymbolSpec& spec, double tau, double lam, double theta,
                     int resolution) {
  check_hoelder_range(spec.dimension(), theta);
  if (!(tau > 0.0 && lam > 0.0)) throw UsageError("Hoelder ratio requires tau, lambda > 0");
  if (tau == lam) throw UsageError("Hoelder ratio requires tau != lambda");
  const double rhs = trace_rhs(f, theta);
  const LevelSetQuad unit = build_quad(spec, 1.0, resolution);
  const double rho = 0.5 * (spec.dimension() - 1);
  const auto ft = nuft_eval(f, unit.dilated(tau).nodes);
  const auto fl = nuft_eval(f, unit.dilated(lam).nodes);
  const double ct = std::pow(tau, rho);
  const double cl = std::pow(lam, rho);
  double s = 0.0;
  for (std::size_t i = 0; i < ft.size(); ++i) s += unit.weights[i] * std::norm(ct * ft[i] - cl * fl[i]);
  return std::sqrt(s) / (std::pow(std::abs(tau - lam), theta) * rhs);
}

LowFrequencyResult lowfreq_slope(const Field& f, const SymbolSpec& spec,
                                 const std::vector<double>& tau_list, double theta,
                                 int resolution) {
  check_lowfreq_range(spec.dimension(), theta);
  if (tau_list.size() < 2) throw UsageError("low-frequency slope needs at least two levels");
  for (std::size_t i = 0; i < tau_list.size(); ++i) {
    if (!(tau_list[i] > 0.0 && tau_list[i] <= 1.0)) throw UsageError("low-frequency levels must lie in (0, 1]");
    if (i > 0 && !(tau_list[i] < tau_list[i - 1])) throw UsageError("low-frequency levels must decrease");
  }
  const double rhs = trace_rhs(f, theta);
  const LevelSetQuad unit = build_quad(spec, 1.0, resolution);
  LowFrequencyResult r;
  std::vector<double> lx, ly;
  for (double tau : tau_list) {
    const double tn = trace_norm(f, unit.dilated(tau));
    r.norms.push_back(tn);
    r.ratios.push_back(tn / (std::pow(tau, theta) * rhs));
    lx.push_back(std::log(tau));
    ly.push_back(std::log(tn));
  }
  r.slope = least_squares_slope(lx, ly);
  return r;
}

namespace {

using BatchEval = std::function<std::vector<double>(const std::vector<Vec>&)>;

}  // namespace

double max_level_in_box(const SymbolSpec& spec, const GridSpec& grid) {
  const int n = spec.dimension();
  double gmin = std::min(spec.a(Vec{1.0, 0.0, 0.0}), spec.a(Vec{-1.0, 0.0, 0.0}));
  if (n >= 2) {
    const LevelSetQuad probe = build_quad(spec, 1.0, 256);
    for (const Vec& x : probe.nodes) gmin = std::min(gmin, 1.0 / norm(x));
  }
  // xi_k only reaches -nyquist on the negative side; keep a margin.
  return 0.98 * (grid.nyquist() - grid.dxi()) * gmin;
}

namespace {

double coarea_iterated(const BatchEval& F, const SymbolSpec& spec, double r_max, int tau_quad,
                       int sphere_res) {
  const int n = spec.dimension();
  const double m = spec.order();
  const LevelSetQuad unit = build_quad(spec, 1.0, sphere_res);
  // |p'| on Sigma(1); scales as r^{m-1} on Sigma(r).
  std::vector<double> gp(unit.nodes.size());
  for (std::size_t q = 0; q < gp.size(); ++q) gp[q] = spec.grad_p_norm(unit.nodes[q]);

  const double u_hi = m * std::log(r_max);
  const double u_lo = u_hi - 40.0 * m / n;
  const QuadratureRule ru = trapezoid(tau_quad, u_lo, u_hi);
  std::vector<Vec> targets;
  targets.reserve(ru.nodes.size() * unit.nodes.size());
  for (double u : ru.nodes) {
    const double r = std::exp(u / m);
    for (const Vec& x : unit.nodes) targets.push_back(scaled(x, r));
  }
  const auto vals = F(targets);
  double total = 0.0;
  std::size_t idx = 0;
  for (std::size_t k = 0; k < ru.nodes.size(); ++k) {
    const double tau = std::exp(ru.nodes[k]);
    const double r = std::exp(ru.nodes[k] / m);
    const double wscale = std::pow(r, n - 1);
    const double gscale = std::pow(r, m - 1.0);
    double level = 0.0;
    for (std::size_t q = 0; q < unit.nodes.size(); ++q, ++idx) {
      level += unit.weights[q] * wscale * vals[idx] / (gp[q] * gscale);
    }
    total += ru.weights[k] * tau * level;
  }
  return total;
}

double relative_gap(double lattice, double iterated) {
  if (lattice == 0.0 && iterated == 0.0) return 0.0;
  return std::abs(lattice - iterated) / std::max(std::abs(lattice), std::abs(iterated));
}

}  // namespace

double coarea_residual(const Field& F, const SymbolSpec& spec, int tau_quad, int sphere_res) {
  if (F.space() != Space::frequency) throw UsageError("coarea_residual expects a frequency field");
  const GridSpec& g = F.grid();
  double lattice = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) lattice += F[i].real();
  lattice *= g.freq_cell_volume();
  if (F.is_zero()) return 0.0;
  const Field phys = inverse_ft(F);
  BatchEval eval = [&](const std::vector<Vec>& pts) {
    const auto v = nuft_eval(phys, pts);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].real();
    return out;
  };
  return relative_gap(lattice, coarea_iterated(eval, spec, max_level_in_box(spec, g), tau_quad, sphere_res));
}

double coarea_residual(const std::function<double(const Vec&)>& F, const GridSpec& grid,
                       const SymbolSpec& spec, int tau_quad, int sphere_res) {
  double lattice = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) lattice += F(grid.xi_point(i));
  lattice *= grid.freq_cell_volume();
  BatchEval eval = [&](const std::vector<Vec>& pts) {
    std::vector<double> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = F(pts[i]);
    return out;
  };
  const double iterated = coarea_iterated(eval, spec, max_level_in_box(spec, grid), tau_quad, sphere_res);
  if (lattice == 0.0 && iterated == 0.0) return 0.0;
  return relative_gap(lattice, iterated);
}

double poisson_trace_integral(const Field& f, const SymbolSpec& spec, double lambda, double eta,
                              int resolution) {
  if (!(eta > 0.0)) throw UsageError("Poisson smoothing requires eta > 0");
  const double m = spec.order();
  const int n = spec.dimension();
  const double r_max = max_level_in_box(spec, f.grid());
  const LevelSetQuad unit = build_quad(spec, 1.0, resolution);
  double focus = std::numeric_limits<double>::quiet_NaN();
  double width = 0.0;
  if (lambda > 0.0) {
    focus = std::pow(lambda, 1.0 / m);
    width = 0.25 * eta / (m * std::pow(focus, m - 1.0));
  }
  const QuadratureRule rr =
      composite_gauss_legendre(graded_breaks(0.0, r_max, 32, 24, focus, width), 10);
  std::vector<Vec> targets;
  for (double r : rr.nodes) {
    for (const Vec& x : unit.nodes) targets.push_back(scaled(x, r));
  }
  const auto vals = nuft_eval(f, targets);
  double total = 0.0;
  std::size_t idx = 0;
  for (std::size_t k = 0; k < rr.nodes.size(); ++k) {
    const double r = rr.nodes[k];
    double level = 0.0;
    for (std::size_t q = 0; q < unit.nodes.size(); ++q, ++idx) level += unit.weights[q] * std::norm(vals[idx]);
    level *= std::pow(r, n - 1);
    const double tau = std::pow(r, m);
    const double kernel = eta / ((lambda - tau) * (lambda - tau) + eta * eta);
    total += rr.weights[k] * m * std::pow(r, m - 1.0) * kernel * level;
  }
  return total;
}

double poisson_trace_residual(const Field& f, const SymbolSpec& spec, double lambda,
                              const std::vector<double>& eta_list, int resolution) {
  if (eta_list.empty()) throw UsageError("poisson_trace_residual needs at least one eta");
  const SymbolSpec s = spec;
  const MultiplierKind gradient = ScalarFunction{[s](const Vec& xi) -> cplx {
    const double r = norm(xi);
    return r == 0.0 ? 0.0 : s.grad_p_norm(xi);
  }};
  double worst = 0.0;
  for (double eta : eta_list) {
    const double lhs = std::abs(resolvent_form(gradient, f, f, spec, cplx{lambda, eta}).imag());
    const double rhs = poisson_trace_integral(f, spec, lambda, eta, resolution);
    worst = std::max(worst, relative_gap(lhs, rhs));
  }
  return worst;
}

}  // namespace splab
