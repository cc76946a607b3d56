#include <algorithm>
#include <cmath>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "splab/errors.hpp"
#include "splab/evolution.hpp"
#include "splab/multiplier.hpp"
#include "splab/parallel.hpp"
#include "splab/quadrature.hpp"
#include "splab/trace.hpp"

namespace splab {

double bracket_weight_transform(int dimension, double s, double rho) {
  if (!(rho > 0.0)) throw DomainError("bracket weight transform is singular at zeta = 0");
  if (!(s > 0.0)) throw UsageError("bracket weight transform requires s > 0");
  const double nu = 0.5 * dimension - s;
  if (rho > 700.0) return 0.0;  // K_nu underflows
  return std::pow(2.0 * kPi, 0.5 * dimension) * std::pow(2.0, 1.0 - s) / std::tgamma(s) *
         std::pow(rho, -nu) * std::cyl_bessel_k(std::abs(nu), rho);
}

namespace {

constexpr double kEulerGamma = 0.57721566490153286;

// log K on a uniform grid in log rho^2; K(rho) for n = 2 is positive and
// decays like exp(-rho), so K is dropped past rho = 60.
class KernelTable {
 public:
  explicit KernelTable(double s) : s_(s) {
    std::vector<double> v(kCount);
    for (int i = 0; i < kCount; ++i) {
      const double rho = std::exp(0.5 * (kLo + i * kStep));
      v[i] = std::log(bracket_weight_transform(2, s, rho));
    }
    spline_ = boost::math::interpolators::cardinal_cubic_b_spline<double>(v.begin(), v.end(), kLo,
                                                                          kStep);
  }

  double operator()(double rho2) const {
    if (rho2 >= kHi) return 0.0;
    const double v = std::log(rho2);
    if (v <= kLo) return small(std::sqrt(rho2));
    return std::exp(spline_(v));
  }

 private:
  double small(double rho) const {
    if (std::abs(s_ - 1.0) < 1e-12) return 2.0 * kPi * (std::log(2.0 / rho) - kEulerGamma);
    if (s_ > 1.0) return kPi / (s_ - 1.0);
    const double c0 = 2.0 * kPi * std::pow(2.0, 1.0 - 2.0 * s_) * std::tgamma(1.0 - s_) / std::tgamma(s_);
    return c0 * std::pow(rho, 2.0 * s_ - 2.0) + kPi / (s_ - 1.0);
  }

  static constexpr double kLo = -55.0;  // rho ~ 1e-12
  static constexpr double kHi = 3600.0;
  static constexpr int kCount = 8192;
  static constexpr double kStep = (8.19 - kLo) / (kCount - 1);  // up to log(3600)
  double s_;
  boost::math::interpolators::cardinal_cubic_b_spline<double> spline_;
};

// Diagonal weight of the corrected angle trapezoid for
// int K(xi_i - xi(theta)) v(theta) dtheta, with |xi'(theta_i)| = speed:
// the missing node carries the singular part through the zeta function and
// the regular part through its limit at rho = 0.
double diagonal_weight(double s, double speed, double h) {
  if (std::abs(s - 1.0) < 1e-12) {
    // K = -2 pi log rho + 2 pi (log 2 - gamma) + o(1)
    return 2.0 * kPi * (h * std::log(2.0 * kPi / h) - h * std::log(speed)) +
           h * 2.0 * kPi * (std::log(2.0) - kEulerGamma);
  }
  const double regular = kPi / (s - 1.0);
  if (s > 1.0) return h * regular;
  // K = c0 rho^{-a} + pi/(s-1) + O(rho^{2s}), a = 2 - 2s; the punctured sum
  // exceeds the integral by 2 zeta(a) h^{1-a} times the singular coefficient.
  const double a = 2.0 - 2.0 * s;
  const double c0 = 2.0 * kPi * std::pow(2.0, 1.0 - 2.0 * s) * std::tgamma(1.0 - s) / std::tgamma(s);
  return -c0 * std::pow(speed, -a) * 2.0 * std::riemann_zeta(a) * std::pow(h, 1.0 - a) + h * regular;
}

}  // namespace

FreeWaveNorm free_wave_norm(const Field& psi, const SymbolSpec& spec, const MultiplierKind& b,
                            double s, int resolution, int tau_quad) {
  if (spec.dimension() != 2 || psi.grid().dimension() != 2) {
    throw UsageError("global smoothing norm is implemented for n = 2");
  }
  if (psi.space() != Space::physical) throw UsageError("free_wave_norm expects a physical field");
  if (!(s > 0.0)) throw UsageError("free_wave_norm requires a weight exponent s > 0");
  if (tau_quad < 8) throw UsageError("global smoothing norm needs tau_quad >= 8");
  const double m = spec.order();
  const KernelTable kernel(s);

  const LevelSetQuad unit = build_quad(spec, 1.0, resolution);
  const std::size_t nq = unit.nodes.size();
  const double h = 2.0 * kPi / resolution;
  std::vector<double> gp(nq), speed(nq);
  for (std::size_t q = 0; q < nq; ++q) {
    gp[q] = spec.grad_p_norm(unit.nodes[q]);
    speed[q] = unit.weights[q] / h;
  }
  std::vector<double> dist2(nq * nq);
  for (std::size_t i = 0; i < nq; ++i) {
    for (std::size_t j = 0; j < nq; ++j) {
      const Vec d = unit.nodes[i] - unit.nodes[j];
      dist2[i * nq + j] = dot(d, d);
    }
  }

  const double r_max = max_level_in_box(spec, psi.grid());
  const double u_hi = m * std::log(r_max);
  const double u_lo = u_hi - 20.0 * m;
  const QuadratureRule ru = trapezoid(tau_quad, u_lo, u_hi);
  const std::size_t nt = ru.nodes.size();
  std::vector<Vec> targets;
  targets.reserve(nt * nq);
  for (double u : ru.nodes) {
    const double r = std::exp(u / m);
    for (const Vec& x : unit.nodes) targets.push_back(scaled(x, r));
  }
  const auto fhat = nuft_eval(psi, targets);

  std::vector<double> level(nt);
  parallel_for(nt, [&](std::size_t k) {
    const double r = std::exp(ru.nodes[k] / m);
    // v = b psi^ / |p'| times the arc weight on Sigma(r^m).
    std::vector<cplx> v(nq);
    for (std::size_t q = 0; q < nq; ++q) {
      const SymbolSample bs = multiplier_symbol(b, targets[k * nq + q]);
      const cplx bv = bs.annihilated ? cplx{} : bs.value;
      v[q] = bv * fhat[k * nq + q] / (gp[q] * std::pow(r, m - 1.0)) * (unit.weights[q] * r);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < nq; ++i) {
      if (v[i] == cplx{}) continue;
      cplx inner = std::conj(v[i]) / h * diagonal_weight(s, speed[i] * r, h);
      for (std::size_t j = 0; j < nq; ++j) {
        if (j != i) inner += std::conj(v[j]) * kernel(r * r * dist2[i * nq + j]);
      }
      acc += (v[i] * inner).real();
    }
    level[k] = acc / (4.0 * kPi * kPi) * std::exp(ru.nodes[k]);  // dtau = tau du
  });
  FreeWaveNorm out;
  for (std::size_t k = 0; k < nt; ++k) out.value += ru.weights[k] * level[k];
  out.value *= 2.0 * kPi;
  const double ends = std::max(std::abs(level.front()), std::abs(level.back()));
  out.spectral_edge = out.value > 0.0 ? 2.0 * kPi * ru.weights[1] * ends / out.value : 0.0;
  return out;
}

SmoothingResult smoothing_ratio_global(const Field& phi, const SymbolSpec& spec,
                                       SmoothingEstimate e, double delta, int resolution,
                                       int tau_quad) {
  if (!is_homogeneous(e)) throw UsageError("global homogeneous smoothing ratio called with a Duhamel id");
  check_smoothing_hypotheses(phi.grid().dimension(), spec.order(), e, delta);
  if (phi.is_zero()) throw UsageError("smoothing ratio rejects the zero initial datum");
  const double m = spec.order();
  const double s = is_type_one(e) ? delta : 0.5 * m;
  const MultiplierKind b = is_type_one(e) ? MultiplierKind{HomogeneousPower{0.5 * (m - 1.0)}}
                                          : MultiplierKind{BracketPower{0.5 * (m - 1.0)}};
  const FreeWaveNorm w = free_wave_norm(phi, spec, b, s, resolution, tau_quad);
  SmoothingResult res;
  res.lhs = std::sqrt(std::max(w.value, 0.0));
  res.rhs = phi.norm();
  res.ratio = res.lhs / res.rhs;
  res.tail_indicator = w.spectral_edge;
  return res;
}

}  // namespace splab
