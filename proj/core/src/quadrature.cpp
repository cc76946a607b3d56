#include "splab/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "splab/errors.hpp"
#include "splab/vec.hpp"

namespace splab {

QuadratureRule gauss_legendre(int count, double lo, double hi) {
  if (count < 1) throw UsageError("gauss_legendre needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  for (int i = 0; i < (count + 1) / 2; ++i) {
    // Newton on P_count from the Chebyshev-like initial guess.
    double z = std::cos(kPi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= count; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = count * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= count; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = count * (z * p0 - p1) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = mid - half * z;
    rule.nodes[count - 1 - i] = mid + half * z;
    rule.weights[i] = half * w;
    rule.weights[count - 1 - i] = half * w;
  }
  return rule;
}

QuadratureRule trapezoid(int count, double lo, double hi) {
  if (count < 2) throw UsageError("trapezoid needs at least two nodes");
  QuadratureRule rule;
  const double h = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) {
    rule.nodes.push_back(lo + i * h);
    rule.weights.push_back((i == 0 || i == count - 1) ? 0.5 * h : h);
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(const std::vector<double>& breaks, int per_panel) {
  if (breaks.size() < 2) throw UsageError("composite rule needs at least one panel");
  const QuadratureRule unit = gauss_legendre(per_panel, 0.0, 1.0);
  QuadratureRule rule;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double w = breaks[i + 1] - breaks[i];
    for (int k = 0; k < per_panel; ++k) {
      rule.nodes.push_back(breaks[i] + w * unit.nodes[k]);
      rule.weights.push_back(w * unit.weights[k]);
    }
  }
  return rule;
}

std::vector<double> graded_breaks(double lo, double hi, int bulk, int depth, double focus,
                                  double width) {
  if (!(hi > lo) || bulk < 1) throw UsageError("graded_breaks needs hi > lo and bulk >= 1");
  std::vector<double> b;
  const double h = (hi - lo) / bulk;
  for (int i = 0; i <= bulk; ++i) b.push_back(lo + i * h);
  for (int k = 1; k <= depth; ++k) b.push_back(lo + h * std::ldexp(1.0, -k));
  if (std::isfinite(focus) && focus > lo && focus < hi && width > 0.0) {
    b.push_back(focus);
    for (double d = width; d < h; d *= 2.0) {
      b.push_back(focus - d);
      b.push_back(focus + d);
    }
  }
  std::sort(b.begin(), b.end());
  std::vector<double> out;
  for (double x : b) {
    if (x < lo || x > hi) continue;
    if (!out.empty() && x - out.back() <= 1e-14 * (hi - lo)) continue;
    out.push_back(x);
  }
  if (out.back() < hi) out.back() = hi;
  return out;
}

namespace {

std::vector<double> chebyshev_unit(int count) {
  std::vector<double> t(count);
  for (int k = 0; k < count; ++k) t[k] = -std::cos(kPi * (k + 0.5) / count);
  return t;
}

}  // namespace

std::vector<double> PanelInterpolant::sample_points(const std::vector<double>& breaks,
                                                    int per_panel) {
  const auto t = chebyshev_unit(per_panel);
  std::vector<double> x;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
    const double half = 0.5 * (breaks[i + 1] - breaks[i]);
    for (double tk : t) x.push_back(mid + half * tk);
  }
  return x;
}

PanelInterpolant::PanelInterpolant(std::vector<double> breaks, int per_panel,
                                   std::vector<double> values)
    : breaks_(std::move(breaks)), per_panel_(per_panel), values_(std::move(values)) {
  if (breaks_.size() < 2 || per_panel < 1 ||
      values_.size() != (breaks_.size() - 1) * static_cast<std::size_t>(per_panel)) {
    throw UsageError("panel interpolant: values do not match the panel layout");
  }
  // Barycentric weights for Chebyshev points of the first kind.
  bary_.resize(per_panel);
  for (int k = 0; k < per_panel; ++k) {
    bary_[k] = ((k % 2) ? -1.0 : 1.0) * std::sin(kPi * (k + 0.5) / per_panel);
  }
}

double PanelInterpolant::operator()(double x) const {
  if (breaks_.empty() || x < breaks_.front() || x > breaks_.back()) return 0.0;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  std::size_t panel = it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
  panel = std::min(panel, breaks_.size() - 2);
  const double mid = 0.5 * (breaks_[panel] + breaks_[panel + 1]);
  const double half = 0.5 * (breaks_[panel + 1] - breaks_[panel]);
  const double t = (x - mid) / half;
  const double* v = values_.data() + panel * per_panel_;
  double num = 0.0;
  double den = 0.0;
  for (int k = 0; k < per_panel_; ++k) {
    const double tk = -std::cos(kPi * (k + 0.5) / per_panel_);
    const double d = t - tk;
    if (d == 0.0) return v[k];
    const double w = bary_[k] / d;
    num += w * v[k];
    den += w;
  }
  return num / den;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw UsageError("slope needs >= 2 paired samples");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace splab
