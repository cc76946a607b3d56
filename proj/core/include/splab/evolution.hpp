#pragma once

#include <functional>
#include <string>
#include <vector>

#include "splab/grid.hpp"
#include "splab/multiplier.hpp"
#include "splab/symbol.hpp"

namespace splab {

/// Uniform samples t_k = -T + k (2T/M), k = 0..M, with M even so t = 0 is a sample.
class TimeGrid {
 public:
  TimeGrid(double half_span, int steps);

  double half_span() const { return half_span_; }
  int steps() const { return steps_; }
  std::size_t size() const { return static_cast<std::size_t>(steps_) + 1; }
  double dt() const { return 2.0 * half_span_ / steps_; }
  double t(std::size_t k) const { return -half_span_ + static_cast<double>(k) * dt(); }
  std::size_t zero_index() const { return static_cast<std::size_t>(steps_ / 2); }
  double weight(std::size_t k) const;
  // Same half span, twice the steps.
  TimeGrid halved_step() const { return TimeGrid(half_span_, 2 * steps_); }

 private:
  double half_span_;
  int steps_;
};

struct SpaceTimeField {
  TimeGrid time;
  std::vector<Field> frames;

  SpaceTimeField(TimeGrid time_grid, std::vector<Field> frame_values);
  static SpaceTimeField sample(const TimeGrid& time, const GridSpec& grid,
                               const std::function<cplx(double, const Vec&)>& fn);
  const GridSpec& grid() const { return frames.front().grid(); }
  // Space-time L2 norm with trapezoid weights in t.
  double norm() const;
};

// Physical frame at time t, for forcing terms too large to store.
using FrameSource = std::function<Field(double t)>;

Field propagate(const Field& phi, const SymbolSpec& spec, double t);

/// G f(t_k) = int_0^{t_k} e^{i(t_k - s) p(D)} f(s) ds, integrated in frequency
/// space with the trapezoid rule plus its first Euler-Maclaurin end correction,
/// so the quadrature error is O(dt^4) for smooth forcing.
SpaceTimeField duhamel(const SpaceTimeField& f, const SymbolSpec& spec);

// Streams frequency-space frames of G f to sink(k, Gf_hat(t_k)).
void duhamel_stream(const FrameSource& f, const TimeGrid& time, const GridSpec& grid,
                    const SymbolSpec& spec,
                    const std::function<void(std::size_t, const Field&)>& sink);

/// Relative space-time L2 size of D_t u - p(D) u - f for
/// u = e^{itp(D)} phi + i G f, with D_t = -i d/dt by fourth-order central
/// differences on interior frames.
double equation_residual(const Field& phi, const SpaceTimeField& f, const SymbolSpec& spec);

enum class SmoothingEstimate { I_homog, I_duhamel, II_homog, II_duhamel };

std::string to_string(SmoothingEstimate e);
bool is_type_one(SmoothingEstimate e);
bool is_homogeneous(SmoothingEstimate e);

// Throws UsageError naming the violated hypothesis (n >= 2; m > 1 and
// delta > 1/2 for TYPE-I; 1 < m < n for TYPE-II).
void check_smoothing_hypotheses(int dimension, double order, SmoothingEstimate e, double delta);

struct SmoothingResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  // Weighted integrand at the window edges relative to the window total.
  double tail_indicator = 0.0;
};

/// Homogeneous smoothing norms over the time window:
/// I:  || <x>^{-delta} |D|^{(m-1)/2} e^{itp} phi ||  vs ||phi||
/// II: || <x>^{-m/2}   <D>^{(m-1)/2} e^{itp} phi ||  vs ||phi||
SmoothingResult smoothing_ratio(const Field& phi, const SymbolSpec& spec, SmoothingEstimate e,
                                double delta, const TimeGrid& time);

/// Inhomogeneous smoothing norms:
/// I:  || <x>^{-delta} |D|^{m-1} G f || vs || <x>^{delta} f ||
/// II: || <x>^{-m/2}   <D>^{m-1} G f || vs || <x>^{m/2} f ||
SmoothingResult smoothing_ratio(const SpaceTimeField& f, const SymbolSpec& spec,
                                SmoothingEstimate e, double delta);
SmoothingResult smoothing_ratio(const FrameSource& f, const TimeGrid& time, const GridSpec& grid,
                                const SymbolSpec& spec, SmoothingEstimate e, double delta);

/// int e^{i x.zeta} <x>^{-2s} dx over R^n (Bessel potential kernel), for rho = |zeta| > 0.
double bracket_weight_transform(int dimension, double s, double rho);

struct FreeWaveNorm {
  double value = 0.0;          // int over R
  double spectral_edge = 0.0;  // end-node share of the tau integral
};

/// int_R || <x>^{-s} b(D) e^{itp} psi ||^2 dt with no time window:
///   2 pi int dtau (2 pi)^{-2} iint_{Sigma(tau)^2} u(xi) conj(u(eta)) K(xi - eta) dsigma dsigma'
/// with u = b psi^ / |p'| and K the transform of <x>^{-2s}. Trapezoid rule in
/// log tau over tau_quad nodes; angle trapezoid on each level set with a
/// zeta-corrected diagonal for the |zeta|^{2s-2} singularity. n = 2 only.
FreeWaveNorm free_wave_norm(const Field& psi, const SymbolSpec& spec, const MultiplierKind& b,
                            double s, int resolution = 256, int tau_quad = 96);

/// Homogeneous smoothing ratio over all t in R; tail_indicator is the
/// spectral edge share.
SmoothingResult smoothing_ratio_global(const Field& phi, const SymbolSpec& spec,
                                       SmoothingEstimate e, double delta, int resolution = 256,
                                       int tau_quad = 96);

}  // namespace splab
