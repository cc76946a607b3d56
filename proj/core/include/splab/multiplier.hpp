#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "splab/grid.hpp"
#include "splab/symbol.hpp"

namespace splab {

struct HomogeneousPower {
  double s;
};

struct BracketPower {
  double s;
};

struct SymbolPower {
  SymbolSpec spec;
  double s;
};

// q homogeneous of degree zero. The zero mode is annihilated unless q is
// flagged continuous at the origin (constant symbols).
struct DegreeZero {
  std::function<cplx(const Vec&)> q;
  bool continuous_at_origin = false;

  static DegreeZero constant(cplx c);
  // q(xi) = xi_axis / |xi|
  static DegreeZero riesz(int axis);
};

struct ScalarFunction {
  std::function<cplx(const Vec&)> sigma;
};

using MultiplierKind =
    std::variant<HomogeneousPower, BracketPower, SymbolPower, DegreeZero, ScalarFunction>;

std::string describe(const MultiplierKind& kind);

struct SymbolSample {
  cplx value;
  bool annihilated = false;
};

// sigma(xi) with the zero-mode convention applied at xi = 0.
SymbolSample multiplier_symbol(const MultiplierKind& kind, const Vec& xi);

// Multiplies a frequency field by sigma; throws NumericError on a
// non-finite value at a nonzero lattice point.
Field multiply_frequency(const Field& F, const MultiplierKind& kind);

// sigma(D) f; the result keeps the space tag of the input.
Field apply_multiplier(const Field& f, const MultiplierKind& kind);

/// Smooth cutoff chi(r): 1 for r <= 1, 0 for r >= 2, C-infinity in between.
double smooth_cutoff(double r);
/// b1 = <xi>^{m-1} chi, b2 = <xi>^{m-1} (1 - chi) / |xi|^{m-1}.
double split_low(const Vec& xi, double m);
double split_high(const Vec& xi, double m);
MultiplierKind split_low_kind(double m);
MultiplierKind split_high_kind(double m);

/// ||a^{-beta} (|x|^{-alpha} f)^|| / ||a^{gamma} f^||: the fractional integral
/// |D_xi|^{-alpha} acting on f^ is realized as the transform of |x|^{-alpha} f.
/// Requires 0 < alpha < n, beta < n/2, gamma < n/2, alpha = beta + gamma, or
/// the identity case alpha = beta = gamma = 0.
double stein_weiss_ratio(const Field& f, const SymbolSpec& spec, double alpha, double beta,
                         double gamma);

/// ||a^{-beta} f^|| / || |x|^beta f ||, 0 <= beta < n/2.
double stein_weiss_endpoint_ratio(const Field& f, const SymbolSpec& spec, double beta);

// Admissible delta: 0 < delta <= 1 (n >= 3), 0 < delta < 1 (n = 2).
void check_weight_commutator_range(int dimension, double delta);

/// |x|^delta q(D) f - q(D)(|x|^delta f).
Field weight_commutator_apply(const Field& f, double delta, const DegreeZero& q);

// ||commutator f|| / || |x|^delta f ||.
double weight_commutator_ratio(const Field& f, double delta, const DegreeZero& q);

// Admissible kappa: 0 < kappa < 1 (n = 2), 0 < kappa < 3/2 (n >= 3).
void check_frequency_commutator_range(int dimension, double kappa);

/// Components of a^{-rho} r_kappa(D_xi) a^{rho} f^ (frequency fields), with
/// rho = (n-1)/2 and r_kappa(D_xi) = |D_xi|^{kappa-1} D_xi realized as
/// multiplication by -|x|^{kappa-1} x on the physical side.
std::vector<Field> frequency_commutator_apply(const Field& f, const SymbolSpec& spec,
                                              double kappa);

// Euclidean norm over components divided by || |x|^kappa f ||.
double freq_commutator_ratio(const Field& f, const SymbolSpec& spec, double kappa);

/// For kappa = 1 the sandwich reduces exactly:
/// {a^{-rho} D_xi a^{rho} - D_xi} f^ = -i rho (a'/a) f^.
/// Returns the relative L2 mismatch between both sides on the lattice.
double commutator_reduction_residual(const Field& f, const SymbolSpec& spec);

}  // namespace splab
