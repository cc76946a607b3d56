#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splab/grid.hpp"

namespace splab {

enum class FamilyBase { gaussian, hermite, random_bandlimited };

std::string to_string(FamilyBase base);
FamilyBase parse_family_base(const std::string& name);

/// Members are lambda^{n/2} base(lambda (x - x0)) e^{i xi0.x} for every
/// combination of dilation, translation and modulation, in that nesting
/// order, each normalized to unit lattice norm.
struct FamilySpec {
  FamilyBase base = FamilyBase::gaussian;
  int hermite_order = 0;     // hermite(k): psi_k(x_1) psi_0(x_2) ...
  std::uint64_t seed = 0;    // random_bandlimited(seed)
  std::vector<double> dilations{1.0};
  std::vector<Vec> translations{Vec{}};
  std::vector<Vec> modulations{Vec{}};

  std::size_t member_count() const;
};

struct FamilyMember {
  std::string id;
  double lambda = 1.0;
  Vec x0{};
  Vec xi0{};
  Field field;
};

inline constexpr double kFamilyTailLimit = 1e-12;

// Throws ConfigError naming the member on a boundary tail >= 1e-12 (with a
// larger-L hint), a modulation beyond half the Nyquist frequency, or a
// member the lattice cannot normalize.
std::vector<FamilyMember> make_family(const FamilySpec& spec, const GridSpec& grid);

/// Same members, each on its own box L = base_half_width / lambda with N
/// points per axis, so every dilation is resolved alike.
std::vector<FamilyMember> make_fitted_family(const FamilySpec& spec, int dimension,
                                             double base_half_width, int points);

// Unit-norm base profile at x (before dilation and shifts).
cplx family_base_value(const FamilySpec& spec, int dimension, const Vec& x);

// Uniform double in [0, 1) from 53 high bits; identical on every platform.
double unit_uniform(std::uint64_t bits);

}  // namespace splab
