#pragma once

#include <limits>
#include <vector>

namespace splab {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule with `count` points mapped to [lo, hi].
QuadratureRule gauss_legendre(int count, double lo = -1.0, double hi = 1.0);

// Trapezoid weights on a uniform grid of `count` points over [lo, hi].
QuadratureRule trapezoid(int count, double lo, double hi);

// Gauss-Legendre with per_panel nodes on every [breaks[i], breaks[i+1]].
QuadratureRule composite_gauss_legendre(const std::vector<double>& breaks, int per_panel);

/// Panel breakpoints on [lo, hi]: `bulk` uniform panels, halved `depth` times
/// toward lo, plus panels shrinking geometrically to `width` around `focus`
/// when focus lies inside (lo, hi).
std::vector<double> graded_breaks(double lo, double hi, int bulk, int depth,
                                  double focus = std::numeric_limits<double>::quiet_NaN(),
                                  double width = 0.0);

/// Piecewise polynomial interpolant through Chebyshev points of each panel
/// (barycentric form). Zero outside [breaks.front(), breaks.back()].
class PanelInterpolant {
 public:
  static std::vector<double> sample_points(const std::vector<double>& breaks, int per_panel);

  PanelInterpolant() = default;
  PanelInterpolant(std::vector<double> breaks, int per_panel, std::vector<double> values);

  double operator()(double x) const;
  const std::vector<double>& breaks() const { return breaks_; }

 private:
  std::vector<double> breaks_;
  int per_panel_ = 0;
  std::vector<double> values_;
  std::vector<double> bary_;
};

// Least-squares slope of y against x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace splab
