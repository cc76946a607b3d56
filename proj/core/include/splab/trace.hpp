#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "splab/grid.hpp"
#include "splab/symbol.hpp"

namespace splab {

enum class SphereRule { point_pair, trapezoid_angle, product_lat_long };

/// Surface quadrature on the level set Sigma(tau) = {a(xi) = tau}, built as
/// the radial graph xi = tau w / a(w) over the unit sphere. For n = 1 the
/// level set is two points with counting measure.
struct LevelSetQuad {
  int dimension = 0;
  double tau = 0.0;
  int resolution = 0;
  SphereRule rule = SphereRule::trapezoid_angle;
  std::vector<Vec> nodes;
  std::vector<double> weights;

  double total_weight() const;
  // Same rule on Sigma(s * tau): nodes scaled by s, weights by s^{n-1}.
  LevelSetQuad dilated(double s) const;
};

// Largest a-level set contained in the frequency box of the grid.
double max_level_in_box(const SymbolSpec& spec, const GridSpec& grid);

// resolution = angle count (n = 2) or longitude count with resolution/2
// colatitude nodes (n = 3); resolution >= 8.
LevelSetQuad build_quad(const SymbolSpec& spec, double tau, int resolution);

// CSV with columns xi_1..xi_n, weight.
void write_quad_csv(std::ostream& os, const LevelSetQuad& quad);

// ||f^||_{L2(Sigma)} from direct-sum transform values at the nodes.
double trace_norm(const Field& f, const LevelSetQuad& quad);

// (sum_q w_q |F(xi_q)|^2)^{1/2} for a frequency-tagged field, by trigonometric interpolation.
double trace_norm_frequency(const Field& F, const LevelSetQuad& quad);

/// ||f^||_{L2(Sigma(tau))} / ||<x>^{1/2+theta} f||; requires theta > 0 and n >= 2.
double trace_ratio(const Field& f, const SymbolSpec& spec, double tau, double theta,
                   int resolution);

void check_hoelder_range(int dimension, double theta);
void check_lowfreq_range(int dimension, double theta);

/// ||tau^rho f^(tau .) - lam^rho f^(lam .)||_{L2(Sigma(1))}
///   / (|tau - lam|^theta ||<x>^{1/2+theta} f||),  rho = (n-1)/2.
double hoelder_ratio(const Field& f, const SymbolSpec& spec, double tau, double lam, double theta,
                     int resolution);

struct LowFrequencyResult {
  double slope = 0.0;
  std::vector<double> norms;
  std::vector<double> ratios;
};

// Least-squares slope of log ||f^||_{L2(Sigma(tau))} against log tau, and the
// ratios ||f^||_{L2(Sigma(tau))} / (tau^theta ||<x>^{1/2+theta} f||).
LowFrequencyResult lowfreq_slope(const Field& f, const SymbolSpec& spec,
                                 const std::vector<double>& tau_list, double theta,
                                 int resolution = 64);

/// Relative mismatch between the lattice integral of F and
/// int_0^inf dtau int_{p = tau} F / |p'| dsigma, with the outer integral by the
/// trapezoid rule in log tau over tau_quad nodes.
double coarea_residual(const Field& F, const SymbolSpec& spec, int tau_quad, int sphere_res);
double coarea_residual(const std::function<double(const Vec&)>& F, const GridSpec& grid,
                       const SymbolSpec& spec, int tau_quad, int sphere_res);

/// Poisson-smoothed trace integral
/// int_0^inf eta / ((lambda - tau)^2 + eta^2) ||f^||^2_{L2(Sigma(tau^{1/m}))} dtau.
double poisson_trace_integral(const Field& f, const SymbolSpec& spec, double lambda, double eta,
                              int resolution);

/// |Im (|p'(D)| (lambda + i eta - p(D))^{-1} f, f)| from the lattice form
/// against poisson_trace_integral; relative residual, maximized over eta_list.
double poisson_trace_residual(const Field& f, const SymbolSpec& spec, double lambda,
                              const std::vector<double>& eta_list, int resolution);

}  // namespace splab
