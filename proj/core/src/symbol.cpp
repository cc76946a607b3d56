#include "splab/symbol.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "splab/errors.hpp"

namespace splab {

namespace {

constexpr double kCustomStep = 1e-5;

double length(const Vec& xi, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += xi[i] * xi[i];
  return std::sqrt(s);
}

}  // namespace

std::string to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::euclid:
      return "euclid";
    case SymbolKind::lp4:
      return "lp4";
    case SymbolKind::bump:
      return "bump";
    case SymbolKind::custom:
      return "custom";
  }
  return "unknown";
}

SymbolSpec::SymbolSpec(int dimension, double order, SymbolKind kind)
    : dimension_(dimension), order_(order), kind_(kind) {
  if (dimension < 1 || dimension > kMaxDim) {
    throw UsageError("symbol dimension must be in 1..3");
  }
  if (!(order > 1.0)) {
    throw UsageError("symbol order requires m > 1");
  }
}

SymbolSpec SymbolSpec::euclid(int dimension, double order) {
  return SymbolSpec(dimension, order, SymbolKind::euclid);
}

SymbolSpec SymbolSpec::lp4(int dimension, double order) {
  return SymbolSpec(dimension, order, SymbolKind::lp4);
}

SymbolSpec SymbolSpec::bump(int dimension, double order, double epsilon) {
  if (!(epsilon > -1.0)) {
    throw UsageError("bump symbol requires epsilon > -1 for ellipticity");
  }
  SymbolSpec s(dimension, order, SymbolKind::bump);
  s.epsilon_ = epsilon;
  return s;
}

SymbolSpec SymbolSpec::custom(int dimension, double order, Profile profile,
                              std::optional<ProfileGradient> tangential_gradient) {
  if (!profile) throw UsageError("custom symbol needs a profile");
  SymbolSpec s(dimension, order, SymbolKind::custom);
  s.custom_profile_ = std::move(profile);
  s.custom_gradient_ = std::move(tangential_gradient);
  return s;
}

SymbolSpec SymbolSpec::with_order(double order) const {
  SymbolSpec s = *this;
  if (!(order > 1.0)) throw UsageError("symbol order requires m > 1");
  s.order_ = order;
  return s;
}

std::string SymbolSpec::describe() const {
  std::ostringstream os;
  os << to_string(kind_);
  if (kind_ == SymbolKind::bump) os << "(" << epsilon_ << ")";
  os << " n=" << dimension_ << " m=" << order_;
  return os.str();
}

double SymbolSpec::profile(const Vec& omega) const { return a(omega); }

double SymbolSpec::a(const Vec& xi) const {
  const int n = dimension_;
  switch (kind_) {
    case SymbolKind::euclid:
      return length(xi, n);
    case SymbolKind::lp4: {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += xi[i] * xi[i] * xi[i] * xi[i];
      return std::sqrt(std::sqrt(s));
    }
    case SymbolKind::bump: {
      const double r = length(xi, n);
      if (r == 0.0) return 0.0;
      return r + epsilon_ * xi[0] * xi[0] / r;
    }
    case SymbolKind::custom: {
      const double r = length(xi, n);
      if (r == 0.0) return 0.0;
      Vec omega{};
      for (int i = 0; i < n; ++i) omega[i] = xi[i] / r;
      return r * custom_profile_(omega);
    }
  }
  return 0.0;
}

Vec SymbolSpec::grad_a(const Vec& xi) const {
  const int n = dimension_;
  const double r = length(xi, n);
  if (r == 0.0) throw DomainError("a'(xi) is undefined at xi = 0");
  Vec g{};
  switch (kind_) {
    case SymbolKind::euclid:
      for (int i = 0; i < n; ++i) g[i] = xi[i] / r;
      return g;
    case SymbolKind::lp4: {
      // Work on xi/|xi| to keep the cubes well scaled; a' is degree zero.
      Vec w{};
      for (int i = 0; i < n; ++i) w[i] = xi[i] / r;
      const double av = a(w);
      const double a3 = av * av * av;
      for (int i = 0; i < n; ++i) g[i] = w[i] * w[i] * w[i] / a3;
      return g;
    }
    case SymbolKind::bump: {
      Vec w{};
      for (int i = 0; i < n; ++i) w[i] = xi[i] / r;
      for (int i = 0; i < n; ++i) g[i] = w[i] - epsilon_ * w[0] * w[0] * w[i];
      g[0] += 2.0 * epsilon_ * w[0];
      return g;
    }
    case SymbolKind::custom: {
      Vec w{};
      for (int i = 0; i < n; ++i) w[i] = xi[i] / r;
      const double gw = custom_profile_(w);
      Vec tangential{};
      if (custom_gradient_) {
        tangential = (*custom_gradient_)(w);
      } else {
        // Degree-zero extension G(x) = g(x/|x|); its Cartesian gradient at a
        // unit point is the tangential gradient of g.
        auto extension = [&](Vec x) {
          const double rx = length(x, n);
          for (int i = 0; i < n; ++i) x[i] /= rx;
          return custom_profile_(x);
        };
        for (int i = 0; i < n; ++i) {
          Vec plus = w;
          Vec minus = w;
          plus[i] += kCustomStep;
          minus[i] -= kCustomStep;
          tangential[i] = (extension(plus) - extension(minus)) / (2.0 * kCustomStep);
        }
      }
      for (int i = 0; i < n; ++i) g[i] = gw * w[i] + tangential[i];
      return g;
    }
  }
  return g;
}

double SymbolSpec::p(const Vec& xi) const {
  const double av = a(xi);
  return av == 0.0 ? 0.0 : std::pow(av, order_);
}

PValue SymbolSpec::eval_p(const Vec& xi, bool want_gradient) const {
  PValue out;
  const double av = a(xi);
  out.value = av == 0.0 ? 0.0 : std::pow(av, order_);
  if (want_gradient) {
    if (av == 0.0) throw DomainError("p'(xi) is undefined at xi = 0");
    const Vec ga = grad_a(xi);
    out.gradient = scaled(ga, order_ * std::pow(av, order_ - 1.0));
  }
  return out;
}

double SymbolSpec::grad_p_norm(const Vec& xi) const {
  const double av = a(xi);
  if (av == 0.0) throw DomainError("p'(xi) is undefined at xi = 0");
  return order_ * std::pow(av, order_ - 1.0) * norm(grad_a(xi));
}

double homogeneity_residual(const SymbolSpec& spec, int sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw UsageError("homogeneity_residual needs sample_count >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> log_scale(-3.0, 3.0);
  const int n = spec.dimension();
  double worst = 0.0;
  for (int s = 0; s < sample_count; ++s) {
    Vec xi{};
    double r = 0.0;
    while (r == 0.0) {
      for (int i = 0; i < n; ++i) xi[i] = gauss(rng);
      r = length(xi, n);
    }
    xi = scaled(xi, std::exp(log_scale(rng)) / r);
    const double a0 = spec.a(xi);
    for (double t : {0.5, 2.0, 7.0}) {
      const double at = spec.a(scaled(xi, t));
      worst = std::max(worst, std::abs(at - t * a0) / at);
    }
    const Vec g = spec.grad_a(xi);
    double euler = 0.0;
    for (int i = 0; i < n; ++i) euler += g[i] * xi[i];
    worst = std::max(worst, std::abs(a0 - euler) / a0);
  }
  return worst;
}

}  // namespace splab
