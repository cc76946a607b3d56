#pragma once

#include <string>
#include <utility>
#include <vector>

#include "splab/evolution.hpp"
#include "splab/grid.hpp"
#include "splab/multiplier.hpp"
#include "splab/quadrature.hpp"
#include "splab/symbol.hpp"

namespace splab {

/// Spectral parameters zeta = lambda +- i eta. When `relative` is set, lambda
/// and eta are in units of the member's spectral scale (p at the radius where
/// its transform has decayed), so one grid serves a whole dilation family.
struct ZetaGrid {
  std::vector<double> lambdas;
  std::vector<double> etas;  // strictly decreasing, all > 0
  std::vector<int> signs{+1, -1};
  bool relative = false;

  /// `cluster` geometric points in (0, lambda_max / 8], `bulk` uniform points
  /// over [lambda_max / 8, lambda_max], two negative points, and `eta_count`
  /// geometric eta values from eta_max down to eta_min.
  static ZetaGrid make(double lambda_max, int cluster, int bulk, double eta_max, double eta_min,
                       int eta_count);

  void validate() const;
  double eta_min() const { return etas.back(); }
};

// (b(D) (zeta - p(D))^{-1} f, g) = sum b f^ conj(g^) / (zeta - p) dxi^n.
cplx resolvent_form(const MultiplierKind& b, const Field& f, const Field& g,
                    const SymbolSpec& spec, cplx zeta);

// Lattice weights b f^ conj(g^) dxi^n and p values, for repeated zeta.
class LatticeForm {
 public:
  LatticeForm(const MultiplierKind& b, const Field& f, const Field& g, const SymbolSpec& spec);
  cplx operator()(cplx zeta) const;

 private:
  std::vector<cplx> weight_;
  std::vector<double> p_;
};

/// |form(f,g) - Q(f,g)| / (|form(f,g)| + 1), where Q is the four-term
/// polarization combination with weights 1/4, -1/4, i/4, -i/4 on f+g, f-g,
/// f+ig, f-ig.
double polarization_check(const MultiplierKind& b, const Field& f, const Field& g,
                          const SymbolSpec& spec, cplx zeta);

/// form(1,f,f,z1) - form(1,f,f,z2) against (z2 - z1) sum |f^|^2 / ((z1-p)(z2-p)).
double resolvent_identity_residual(const Field& f, const SymbolSpec& spec, cplx z1, cplx z2);

// 4 max |p'| dxi over lattice points where |f^|^2 >= rel * max |f^|^2.
double eta_floor(const Field& f, const SymbolSpec& spec, double rel = 1e-8);

/// The continuum form int b |f^|^2 / (zeta - p) dxi through the co-area
/// density S(tau) = int_{p = tau} b |f^|^2 / |p'| dsigma:
///   form(zeta) = int_0^inf S(tau) / (zeta - tau) dtau.
/// The density is sampled on Chebyshev panels in r = tau^{1/m} from level-set
/// quadratures; the singular part is subtracted and integrated in closed form,
/// so eta may be arbitrarily small and the boundary values at eta = 0 are
/// available. b must be real.
class SpectralForm {
 public:
  SpectralForm(const MultiplierKind& b, const Field& f, const SymbolSpec& spec,
               int resolution = 64);

  double density(double tau) const;
  cplx operator()(cplx zeta) const;
  // lim_{eta -> 0+} form(lambda + sign i eta).
  cplx boundary_value(double lambda, int sign) const;
  double spectral_scale() const { return std::pow(r_max_, order_); }

 private:
  cplx integrate(double lambda, double eta, int sign) const;

  double order_;
  double r_max_;
  PanelInterpolant radial_;  // s(r) = S(r^m) m r^{m-1}
};

enum class ResolventEstimate { T12_I, T12_II, L51 };

std::string to_string(ResolventEstimate e);

// Throws UsageError naming the violated hypothesis.
void check_resolvent_hypotheses(int dimension, double order, ResolventEstimate e, double delta);

struct ResolventMemberResult {
  double lhs = 0.0;          // sup |form| over the zeta grid
  double rhs = 0.0;          // RHS weight norm squared
  double ratio = 0.0;
  cplx zeta_at_sup{};
  double sup_eta_min = 0.0;  // ratio sup restricted to eta_min
  double sup_eta_2min = 0.0; // ratio sup restricted to 2 eta_min
  double halving_delta = 0.0;  // relative change of the sup when eta_min/2 joins the grid
  double boundary_ratio = 0.0; // sup over lambda of |form(lambda +- i0)| / rhs
  double eta_floor = 0.0;
  double lattice_check = 0.0;  // max |lattice - spectral| / lhs at eta >= floor
};

/// Per-member sup over the zeta grid of |form(b, f, f, zeta)| / RHS^2 with
///   T12_I:  b = |xi|^{m-1}, RHS = ||<x>^delta f||
///   T12_II: b = <xi>^{m-1}, RHS = ||<x>^{m/2} f||
///   L51:    b = 1,          RHS = ||<x>^{m/2} f||
std::vector<ResolventMemberResult> resolvent_sup_ratio(const std::vector<Field>& family,
                                                       const SymbolSpec& spec,
                                                       ResolventEstimate e, double delta,
                                                       const ZetaGrid& zgrid,
                                                       int resolution = 64);

struct KatoResult {
  double direct = 0.0;  // || Q*F~(p(xi), xi) ||^2
  std::vector<double> etas;
  std::vector<double> limiting;  // B(eta)
  double extrapolated = 0.0;
  double residual = 0.0;
  double tau_step = 0.0;
};

/// Both sides of the Kato chain for Q = <x>^{-w} q(D):
///   A = int_{p < pi/dt} |(Q* F)~(p(xi), xi)|^2 dxi  (space-time transform at tau = p(xi)),
///   B(eta) = -+ (1/pi) Im int_0^inf ((tau +- i eta - p(D))^{-1} Phi(tau), Phi(tau)) dtau
/// with Phi(tau) the time transform of Q* F. B is extrapolated linearly in eta
/// from the two smallest values. tau_step = 0 selects eta_min / 4.
KatoResult kato_identity(double q_weight_exp, const MultiplierKind& q_deriv,
                         const SpaceTimeField& F, const SymbolSpec& spec,
                         const std::vector<double>& eta_list, int sign = +1,
                         double tau_step = 0.0);

double kato_identity_residual(double q_weight_exp, const MultiplierKind& q_deriv,
                              const SpaceTimeField& F, const SymbolSpec& spec,
                              const std::vector<double>& eta_list);

/// Trapezoid value of int (lambda - tau) / ((lambda - tau)^2 + eta^2) dtau over
/// [lambda/2, 3 lambda/2] on nodes lambda +- h_j paired about lambda. With
/// asymmetric set, the nodes are shifted by a fraction of a step (diagnostic).
double pv_vanish(double lambda, double eta, int quad_points, bool asymmetric = false);

/// F+ = Y(t) F and F- = Y(-t) F with Y(0) = 1.
std::pair<SpaceTimeField, SpaceTimeField> heaviside_split(const SpaceTimeField& F);

}  // namespace splab
