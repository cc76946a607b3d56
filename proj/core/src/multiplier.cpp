#include "splab/multiplier.hpp"

#include <cmath>
#include <sstream>

#include "splab/errors.hpp"

namespace splab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

SymbolSample power_sample(double base, double s) {
  if (base == 0.0) {
    if (s > 0.0) return {0.0, false};
    if (s == 0.0) return {1.0, false};
    return {0.0, true};
  }
  return {std::pow(base, s), false};
}

double physical_radius(const Vec& x) { return norm(x); }

}  // namespace

DegreeZero DegreeZero::constant(cplx c) {
  return DegreeZero{[c](const Vec&) { return c; }, true};
}

DegreeZero DegreeZero::riesz(int axis) {
  return DegreeZero{[axis](const Vec& xi) {
                      const double r = norm(xi);
                      return r == 0.0 ? cplx{} : cplx{xi[axis] / r, 0.0};
                    },
                    false};
}

std::string describe(const MultiplierKind& kind) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const HomogeneousPower& k) { os << "|xi|^" << k.s; },
                 [&](const BracketPower& k) { os << "<xi>^" << k.s; },
                 [&](const SymbolPower& k) { os << "a(xi)^" << k.s; },
                 [&](const DegreeZero&) { os << "degree_zero"; },
                 [&](const ScalarFunction&) { os << "scalar_function"; },
             },
             kind);
  return os.str();
}

SymbolSample multiplier_symbol(const MultiplierKind& kind, const Vec& xi) {
  return std::visit(
      overloaded{
          [&](const HomogeneousPower& k) { return power_sample(norm(xi), k.s); },
          [&](const BracketPower& k) {
            return SymbolSample{std::pow(1.0 + dot(xi, xi), 0.5 * k.s), false};
          },
          [&](const SymbolPower& k) { return power_sample(k.spec.a(xi), k.s); },
          [&](const DegreeZero& k) {
            if (dot(xi, xi) == 0.0 && !k.continuous_at_origin) return SymbolSample{0.0, true};
            return SymbolSample{k.q(xi), false};
          },
          [&](const ScalarFunction& k) { return SymbolSample{k.sigma(xi), false}; },
      },
      kind);
}

Field multiply_frequency(const Field& F, const MultiplierKind& kind) {
  if (F.space() != Space::frequency) throw UsageError("multiply_frequency expects a frequency field");
  Field out(F.grid(), Space::frequency);
  bool annihilated = F.zero_mode_annihilated();
  for (std::size_t i = 0; i < F.size(); ++i) {
    const Vec xi = F.point(i);
    const SymbolSample s = multiplier_symbol(kind, xi);
    if (!std::isfinite(s.value.real()) || !std::isfinite(s.value.imag())) {
      throw NumericError("multiplier symbol is not finite at a nonzero lattice frequency");
    }
    annihilated = annihilated || s.annihilated;
    out[i] = s.value * F[i];
  }
  out.set_zero_mode_annihilated(annihilated);
  return out;
}

Field apply_multiplier(const Field& f, const MultiplierKind& kind) {
  if (f.space() == Space::frequency) return multiply_frequency(f, kind);
  return inverse_ft(multiply_frequency(forward_ft(f), kind));
}

double smooth_cutoff(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  auto psi = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double up = psi(2.0 - r);
  const double down = psi(r - 1.0);
  return up / (up + down);
}

double split_low(const Vec& xi, double m) {
  return std::pow(1.0 + dot(xi, xi), 0.5 * (m - 1.0)) * smooth_cutoff(norm(xi));
}

double split_high(const Vec& xi, double m) {
  const double r = norm(xi);
  const double rest = 1.0 - smooth_cutoff(r);
  if (rest == 0.0) return 0.0;
  return std::pow(1.0 + r * r, 0.5 * (m - 1.0)) * rest / std::pow(r, m - 1.0);
}

MultiplierKind split_low_kind(double m) {
  return ScalarFunction{[m](const Vec& xi) { return cplx{split_low(xi, m), 0.0}; }};
}

MultiplierKind split_high_kind(double m) {
  return ScalarFunction{[m](const Vec& xi) { return cplx{split_high(xi, m), 0.0}; }};
}

namespace {

// sqrt(dxi^n sum |w(xi)|^2 |F|^2), skipping xi = 0 when the weight is singular there.
double frequency_weighted_norm(const Field& F, const std::function<double(const Vec&)>& weight,
                               bool skip_origin) {
  const std::size_t origin = F.grid().origin_index();
  double acc = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (skip_origin && i == origin) continue;
    const double w = weight(F.point(i));
    acc += w * w * std::norm(F[i]);
  }
  return std::sqrt(acc * F.cell_volume());
}

double power_norm_physical(const Field& f, double s) {
  return weighted_norm(f, s, WeightKind::pure_power);
}

}  // namespace

double stein_weiss_ratio(const Field& f, const SymbolSpec& spec, double alpha, double beta,
                         double gamma) {
  const int n = f.grid().dimension();
  if (spec.dimension() != n) throw UsageError("symbol and grid dimensions differ");
  const bool identity_case = alpha == 0.0 && beta == 0.0 && gamma == 0.0;
  if (!identity_case) {
    require_hypothesis(alpha > 0.0 && alpha < n, "Stein-Weiss requires 0 < alpha < n");
    require_hypothesis(beta < 0.5 * n, "Stein-Weiss requires beta < n/2");
    require_hypothesis(gamma < 0.5 * n, "Stein-Weiss requires gamma < n/2");
    require_hypothesis(std::abs(alpha - beta - gamma) <= 1e-12,
                       "Stein-Weiss requires alpha = beta + gamma");
  }
  if (f.is_zero()) throw UsageError("Stein-Weiss ratio needs a nonzero field");
  const Field fhat = forward_ft(f);
  const Field ghat = identity_case ? fhat : forward_ft(multiply_singular_power(f, alpha));
  const double lhs = frequency_weighted_norm(
      ghat, [&](const Vec& xi) { return beta == 0.0 ? 1.0 : std::pow(spec.a(xi), -beta); },
      beta > 0.0);
  const double rhs = frequency_weighted_norm(
      fhat, [&](const Vec& xi) { return gamma == 0.0 ? 1.0 : std::pow(spec.a(xi), gamma); },
      gamma < 0.0);
  return lhs / rhs;
}

double stein_weiss_endpoint_ratio(const Field& f, const SymbolSpec& spec, double beta) {
  const int n = f.grid().dimension();
  require_hypothesis(beta >= 0.0 && beta < 0.5 * n,
                     "Stein-Weiss endpoint requires 0 <= beta < n/2");
  if (f.is_zero()) throw UsageError("Stein-Weiss ratio needs a nonzero field");
  const Field fhat = forward_ft(f);
  const double lhs = frequency_weighted_norm(
      fhat, [&](const Vec& xi) { return beta == 0.0 ? 1.0 : std::pow(spec.a(xi), -beta); },
      beta > 0.0);
  return lhs / power_norm_physical(f, beta);
}

void check_weight_commutator_range(int dimension, double delta) {
  require_hypothesis(dimension >= 2, "weight commutator estimate requires n >= 2");
  require_hypothesis(dimension != 2 || (delta > 0.0 && delta < 1.0),
                     "weight commutator requires 0 < delta < 1 for n = 2");
  require_hypothesis(dimension < 3 || (delta > 0.0 && delta <= 1.0),
                     "weight commutator requires 0 < delta <= 1 for n >= 3");
}

namespace {

Field multiply_radial_power(const Field& f, double s) {
  Field out(f.grid(), Space::physical);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = physical_radius(f.point(i));
    out[i] = (r == 0.0 ? 0.0 : std::pow(r, s)) * f[i];
  }
  return out;
}

}  // namespace

Field weight_commutator_apply(const Field& f, double delta, const DegreeZero& q) {
  if (f.space() != Space::physical) throw UsageError("weight commutator acts on physical fields");
  check_weight_commutator_range(f.grid().dimension(), delta);
  const MultiplierKind kind = q;
  Field left = multiply_radial_power(apply_multiplier(f, kind), delta);
  Field right = apply_multiplier(multiply_radial_power(f, delta), kind);
  Field out = left - right;
  out.set_zero_mode_annihilated(!q.continuous_at_origin);
  return out;
}

double weight_commutator_ratio(const Field& f, double delta, const DegreeZero& q) {
  if (f.is_zero()) throw UsageError("weight commutator ratio needs a nonzero field");
  return weight_commutator_apply(f, delta, q).norm() / power_norm_physical(f, delta);
}

void check_frequency_commutator_range(int dimension, double kappa) {
  require_hypothesis(dimension >= 2, "frequency commutator estimate requires n >= 2");
  require_hypothesis(dimension != 2 || (kappa > 0.0 && kappa < 1.0),
                     "frequency commutator requires 0 < kappa < 1 for n = 2");
  require_hypothesis(dimension < 3 || (kappa > 0.0 && kappa < 1.5),
                     "frequency commutator requires 0 < kappa < 3/2 for n >= 3");
}

namespace {

// -|x|^{kappa-1} x_d g(x); vanishes at the origin for kappa > 0.
Field dual_derivative_component(const Field& g, double kappa, int axis) {
  Field out(g.grid(), Space::physical);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec x = g.point(i);
    const double r = norm(x);
    if (r == 0.0) continue;
    out[i] = -std::pow(r, kappa - 1.0) * x[axis] * g[i];
  }
  return out;
}

std::vector<Field> sandwich(const Field& f, const SymbolSpec& spec, double kappa) {
  const int n = f.grid().dimension();
  const double rho = 0.5 * (n - 1);
  const Field fhat = forward_ft(f);
  const Field lifted = inverse_ft(multiply_frequency(fhat, SymbolPower{spec, rho}));
  std::vector<Field> out;
  out.reserve(n);
  for (int d = 0; d < n; ++d) {
    Field comp = forward_ft(dual_derivative_component(lifted, kappa, d));
    out.push_back(multiply_frequency(comp, SymbolPower{spec, -rho}));
  }
  return out;
}

}  // namespace

std::vector<Field> frequency_commutator_apply(const Field& f, const SymbolSpec& spec,
                                              double kappa) {
  if (f.space() != Space::physical) throw UsageError("frequency commutator acts on physical fields");
  if (spec.dimension() != f.grid().dimension()) throw UsageError("symbol and grid dimensions differ");
  check_frequency_commutator_range(f.grid().dimension(), kappa);
  return sandwich(f, spec, kappa);
}

double freq_commutator_ratio(const Field& f, const SymbolSpec& spec, double kappa) {
  if (f.is_zero()) throw UsageError("frequency commutator ratio needs a nonzero field");
  const auto comps = frequency_commutator_apply(f, spec, kappa);
  double acc = 0.0;
  for (const auto& c : comps) acc += c.norm() * c.norm();
  return std::sqrt(acc) / power_norm_physical(f, kappa);
}

double commutator_reduction_residual(const Field& f, const SymbolSpec& spec) {
  const int n = f.grid().dimension();
  if (n < 3) throw UsageError("the kappa = 1 reduction requires n >= 3");
  if (f.is_zero()) throw UsageError("commutator reduction needs a nonzero field");
  const double rho = 0.5 * (n - 1);
  const auto sandwiched = frequency_commutator_apply(f, spec, 1.0);
  const Field fhat = forward_ft(f);
  const std::size_t origin = f.grid().origin_index();
  double diff2 = 0.0;
  double ref2 = 0.0;
  for (int d = 0; d < n; ++d) {
    const Field plain = forward_ft(dual_derivative_component(f, 1.0, d));
    for (std::size_t i = 0; i < fhat.size(); ++i) {
      if (i == origin) continue;
      const Vec xi = fhat.point(i);
      const cplx expected = cplx{0.0, -rho} * spec.grad_a(xi)[d] / spec.a(xi) * fhat[i];
      const cplx got = sandwiched[d][i] - plain[i];
      diff2 += std::norm(got - expected);
      ref2 += std::norm(expected);
    }
  }
  return std::sqrt(diff2 / ref2);
}

}  // namespace splab
